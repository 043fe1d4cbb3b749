//! Exact-arithmetic engine and numerical validator for quantum Hall physics
//! on 2D complex orbifolds.
//!
//! The exact side computes, with rational arithmetic throughout:
//! fractional degrees of orbifold line bundles, Galois-cover topology,
//! orbifold Riemann-Roch multiplicities, Landau-level ladders with their
//! validity ranges, spectral-bundle invariants (rank and the fractional
//! first Chern coefficient `-1/|G|`), and mean transport coefficients as
//! exact multiples of `e` and `e^2/h`.
//!
//! The numerical side discretises the magnetic Laplacian on flux-threaded
//! lattice tori (Peierls phases, magnetic boundary conditions), solves for
//! the low end of the spectrum, detects Landau clusters, and splits them
//! into inversion-parity sectors — an independent check of the exact
//! predictions on the pillowcase, the orbifold quotient of the torus by
//! inversion.

pub mod covers;
pub mod divisor;
pub mod error;
pub mod numerics;
pub mod orbifold;
pub mod rational;
pub mod spectra;
pub mod transport;

pub use covers::{
    build_cover, elliptic_pullback_class, equivariant_degree, EllipticPoint, GaloisCoverData,
};
pub use divisor::FractionalDivisor;
pub use error::{Error, Result};
pub use orbifold::{MarkedPoint, Monodromy, OrbifoldLineBundle, OrbifoldSurface};
pub use rational::Rational;
pub use spectra::{
    landau_energy, landau_energy_value, level_multiplicity, spectral_bundle_invariants,
    spectral_ladder, spectral_ladder_with_cap, valid_q_max, valid_q_max_with_cap,
    SpectralBundleInvariants, SpectralLadder, SpectralLevel, DEFAULT_FLAT_LADDER_CAP,
};
pub use transport::{
    conductance_table, intersection_pairing, mean_transport, IntMatrix, SignConvention,
    TransportCoefficients, TransportSetup,
};
