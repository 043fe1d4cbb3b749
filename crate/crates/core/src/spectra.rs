//! Landau-level ladders and spectral-bundle invariants.
//!
//! For a magnetic Schroedinger operator `nabla* nabla` on a line bundle of
//! degree `deg` over a genus-`g_X` constant-curvature surface of area
//! `vol(X)` (units `hbar^2/2m = 1`), the low-lying eigenvalues form the
//! ladder
//!
//! ```text
//! E_l = (2pi/vol(X)) * [ (2l + 1) deg - l(l+1)(2 g_X - 2) ] ,
//! ```
//!
//! valid as long as the twisted degree stays positive. The coefficient in
//! brackets is an exact integer; all energies here are reported as exact
//! rational multiples of `2pi/vol(X)` with a floating-point rendering on
//! the side. Level multiplicities come from the holomorphic Euler
//! characteristic of the canonical twists of the bundle downstairs, and the
//! spectral bundle over the family of flat twists has rank equal to the
//! ground multiplicity and fractional first Chern coefficient `-1/|G|`.
//!
//! The operator also carries a constant curvature shift `R/6`; energies are
//! reported for `nabla* nabla` alone and the shift is exposed separately as
//! [`SpectralLadder::curvature_offset_coeff`], again as an exact coefficient
//! of `2pi/vol(X)` (namely `chi(X)/3` by Gauss-Bonnet).

use std::f64::consts::TAU;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::covers::{equivariant_degree, GaloisCoverData};
use crate::error::{Error, Result};
use crate::orbifold::OrbifoldLineBundle;
use crate::rational::Rational;

/// Ladder length cap for flat covers (`g_X <= 1`), where the validity
/// conditions are vacuous and the ladder would be infinite.
pub const DEFAULT_FLAT_LADDER_CAP: u32 = 16;

/// One rung of the ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralLevel {
    /// Ladder index `l >= 0`.
    #[serde(rename = "l")]
    pub level: u32,
    /// Exact coefficient of `2pi/vol(X)`.
    pub energy_coeff: Rational,
    /// Floating-point rendering of the energy.
    pub energy: f64,
    /// Dimension of the invariant eigenspace; `None` beyond the certified
    /// range (serialised as `null`).
    pub multiplicity: Option<i64>,
    /// Whether the level lies in the certified validity range.
    pub valid: bool,
}

/// The predicted Landau spectrum for one bundle/cover pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLadder {
    cover: GaloisCoverData,
    bundle: OrbifoldLineBundle,
    levels: Vec<SpectralLevel>,
    q_max: i64,
    capped: bool,
}

impl SpectralLadder {
    pub fn cover(&self) -> &GaloisCoverData {
        &self.cover
    }

    pub fn bundle(&self) -> &OrbifoldLineBundle {
        &self.bundle
    }

    pub fn levels(&self) -> &[SpectralLevel] {
        &self.levels
    }

    /// Largest certified level index.
    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    /// True when `q_max` is an artificial cap (flat cover) rather than a
    /// genuine validity boundary.
    pub fn capped(&self) -> bool {
        self.capped
    }

    /// `-1/|G|`, the fractional first Chern coefficient of the spectral
    /// bundle.
    pub fn c1_coefficient(&self) -> Rational {
        Rational::new(-1, self.cover.group_order() as i64)
    }

    /// Constant curvature shift `R/6` of the full operator, as an exact
    /// coefficient of `2pi/vol(X)`: `chi(X)/3`.
    pub fn curvature_offset_coeff(&self) -> Rational {
        Rational::new(self.cover.cover_euler_characteristic(), 3)
    }

    /// Exact gap coefficients `E_{l+1} - E_l` between consecutive certified
    /// levels.
    pub fn gap_coeffs(&self) -> Vec<Rational> {
        let valid: Vec<&SpectralLevel> = self.levels.iter().filter(|l| l.valid).collect();
        valid
            .windows(2)
            .map(|w| w[1].energy_coeff - w[0].energy_coeff)
            .collect()
    }
}

impl Serialize for SpectralLadder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SpectralLadder", 3)?;
        s.serialize_field("levels", &self.levels)?;
        s.serialize_field("q_max", &self.q_max)?;
        s.serialize_field("c1_coefficient", &self.c1_coefficient())?;
        s.end()
    }
}

/// Invariants of the spectral bundle over the family of flat twists.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralBundleInvariants {
    /// `1 - g_Y + deg_smooth`, the ground-level multiplicity.
    pub rank: i64,
    /// Coefficient of the pulled-back theta class: exactly `-1/|G|`.
    pub c1_coefficient: Rational,
    /// The same fraction, read as the coefficient of `e^2/h` per unit
    /// intersection number in transport.
    pub conductance_prefactor: Rational,
}

/// Exact energy coefficient `(2l + 1) deg - l(l+1)(2 g_X - 2)` of the level
/// `l`, in units of `2pi/vol(X)`.
pub fn landau_energy(cover: &GaloisCoverData, deg_equivariant: i64, level: u32) -> Rational {
    let l = level as i64;
    let two_g_minus_2 = 2 * cover.cover_genus() as i64 - 2;
    Rational::from_integer((2 * l + 1) * deg_equivariant - l * (l + 1) * two_g_minus_2)
}

/// Floating-point energy `landau_energy * 2pi/vol(X)`.
pub fn landau_energy_value(cover: &GaloisCoverData, deg_equivariant: i64, level: u32) -> f64 {
    landau_energy(cover, deg_equivariant, level).to_f64() * TAU / cover.cover_volume()
}

/// Largest level index `q` with
/// `deg - q(2g_X - 2) > 2g_X - 2` and `deg - (q+1)(2g_X - 2) > 0`
/// (both strict); `-1` if even `q = 0` fails. On flat covers
/// (`2g_X - 2 <= 0`) every level passes, so the result is capped.
pub fn valid_q_max_with_cap(deg_equivariant: i64, cover_genus: u32, cap: u32) -> i64 {
    let k = 2 * cover_genus as i64 - 2;
    let passes = |q: i64| deg_equivariant - q * k > k && deg_equivariant - (q + 1) * k > 0;
    if !passes(0) {
        return -1;
    }
    if k <= 0 {
        return cap as i64;
    }
    // both inequalities say deg > (q+1) k, so scan until the first failure
    let mut q = 0;
    while passes(q + 1) {
        q += 1;
    }
    q
}

/// [`valid_q_max_with_cap`] with the default flat-cover cap.
pub fn valid_q_max(deg_equivariant: i64, cover_genus: u32) -> i64 {
    valid_q_max_with_cap(deg_equivariant, cover_genus, DEFAULT_FLAT_LADDER_CAP)
}

/// Dimension of the invariant eigenspace at level `q`:
/// `1 - g_Y + deg_smooth(L (x) K^{-q})`.
///
/// Errors with `OutOfValidRange` if `q` exceeds the certified range for the
/// pair.
pub fn level_multiplicity(
    bundle: &OrbifoldLineBundle,
    cover: &GaloisCoverData,
    q: u32,
) -> Result<i64> {
    let deg = equivariant_degree(bundle, cover)?;
    let q_max = valid_q_max(deg, cover.cover_genus());
    if (q as i64) > q_max {
        return Err(Error::OutOfValidRange { q: q as i64, q_max });
    }
    Ok(1 - bundle.base().genus() as i64 + bundle.twisted_smooth_degree(q))
}

/// Assembles the certified ladder for a bundle/cover pair.
///
/// Requires the degree hypothesis `deg_orb(L) > -chi_orb(Y)`; errors with
/// `HypothesisViolated` otherwise. On hyperbolic covers two trailing levels
/// beyond `q_max` are included, marked invalid, to show where the
/// certification stops.
pub fn spectral_ladder(
    bundle: &OrbifoldLineBundle,
    cover: &GaloisCoverData,
) -> Result<SpectralLadder> {
    spectral_ladder_with_cap(bundle, cover, DEFAULT_FLAT_LADDER_CAP)
}

/// [`spectral_ladder`] with an explicit flat-cover cap.
pub fn spectral_ladder_with_cap(
    bundle: &OrbifoldLineBundle,
    cover: &GaloisCoverData,
    cap: u32,
) -> Result<SpectralLadder> {
    check_degree_hypothesis(bundle)?;
    let deg = equivariant_degree(bundle, cover)?;
    let genus = cover.cover_genus();
    let flat = genus <= 1;
    let q_max = valid_q_max_with_cap(deg, genus, cap);
    debug_assert!(q_max >= 0, "hypothesis guarantees a valid ground level");

    let mut levels = Vec::new();
    let top = if flat { q_max } else { q_max + 2 };
    for l in 0..=top.max(0) as u32 {
        let valid = (l as i64) <= q_max;
        let coeff = landau_energy(cover, deg, l);
        let multiplicity = valid.then(|| {
            let m = 1 - bundle.base().genus() as i64 + bundle.twisted_smooth_degree(l);
            assert!(m >= 0, "certified levels have non-negative multiplicity");
            m
        });
        levels.push(SpectralLevel {
            level: l,
            energy_coeff: coeff,
            energy: coeff.to_f64() * TAU / cover.cover_volume(),
            multiplicity,
            valid,
        });
    }

    // gap positivity on the certified range
    for w in levels.windows(2) {
        if w[1].valid {
            assert!(
                w[1].energy_coeff > w[0].energy_coeff,
                "energies must increase strictly up to q_max"
            );
        }
    }

    Ok(SpectralLadder {
        cover: cover.clone(),
        bundle: bundle.clone(),
        levels,
        q_max,
        capped: flat,
    })
}

/// Rank and fractional first Chern coefficient of the spectral bundle.
///
/// Same degree hypothesis as [`spectral_ladder`].
pub fn spectral_bundle_invariants(
    bundle: &OrbifoldLineBundle,
    cover: &GaloisCoverData,
) -> Result<SpectralBundleInvariants> {
    check_degree_hypothesis(bundle)?;
    let fraction = Rational::new(-1, cover.group_order() as i64);
    Ok(SpectralBundleInvariants {
        rank: 1 - bundle.base().genus() as i64 + bundle.smooth_degree(),
        c1_coefficient: fraction,
        conductance_prefactor: fraction,
    })
}

fn check_degree_hypothesis(bundle: &OrbifoldLineBundle) -> Result<()> {
    let deg_orb = bundle.orbifold_degree();
    let bound = -bundle.base().euler_characteristic();
    if deg_orb <= bound {
        return Err(Error::HypothesisViolated {
            detail: format!("need deg_orb = {deg_orb} > -chi_orb = {bound}"),
        });
    }
    Ok(())
}
