//! Independent numerical oracle for the exact spectral predictions.
//!
//! Discretises the magnetic Laplacian on flux-threaded lattice tori,
//! extracts Landau clusters and their degeneracies, lifts the inversion
//! symmetry to split clusters into parity sectors, and compares everything
//! against the exact ladder of the [`crate::spectra`] module on the
//! pillowcase.

pub mod cluster;
pub mod eigen;
pub mod lattice;
pub mod symmetry;
pub mod validate;

pub use cluster::{landau_level_clusters, landau_level_clusters_default, LevelCluster};
pub use eigen::{dense_spectrum, lowest_eigenpairs, spectrum_lowest, EigenPairs};
pub use lattice::{
    build_magnetic_laplacian, free_spectrum, Gauge, HermitianOperator, LatticeModel, PointSymmetry,
};
pub use symmetry::{inversion_unitary, isotypic_multiplicities, InversionUnitary};
pub use validate::{
    eigenvalues_csv, validate_pillowcase, ClusterReport, PredictedSpectrum, ValidationReport,
};
