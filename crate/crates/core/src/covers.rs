//! Galois cover bookkeeping and exact Jacobian pullback on elliptic curves.
//!
//! A degree-`|G|` Galois cover `X -> Y` branched over the marked points of
//! an orbifold surface is determined topologically by the orbifold data:
//! the cover genus comes from `chi(X) = |G| * chi_orb`, and over the cone
//! point `p_k` sit `l_k = |G|/m_k` sheets. Riemann-Hurwitz follows:
//!
//! ```text
//! 2 g_X - 2 = |G| (2 g_Y - 2) + sum_k l_k (m_k - 1) .
//! ```
//!
//! `EllipticPoint` implements exact divisor-class reduction on elliptic
//! curves `C/(a Z + tau Z)` for points that are rational combinations of the
//! periods. This is enough to exhibit, with exact arithmetic, that pulling
//! back degree-zero classes along a cyclic etale `n`-fold cover of elliptic
//! curves collapses the `n` classes `a + (l/n) tau` (`l = 0..n-1`) to the
//! single class `n a` upstairs, so the pullback on Jacobians fails to be
//! injective in the etale case.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::orbifold::{OrbifoldLineBundle, OrbifoldSurface};
use crate::rational::Rational;

/// Topological data of a Galois cover `X -> Y^orb` of degree `|G|`.
///
/// `cover_genus` and `sheet_counts` are derived from the base orbifold;
/// `cover_volume` is the only metric datum carried (total area of `X`), and
/// `cyclic_quotient_free` is a user assertion about the group action (no
/// cyclic quotient of `G` acts freely), recorded but never verified here.
#[derive(Debug, Clone, PartialEq)]
pub struct GaloisCoverData {
    base: OrbifoldSurface,
    group_order: u64,
    cover_genus: u32,
    sheet_counts: Vec<u64>,
    cover_volume: f64,
    cyclic_quotient_free: bool,
}

impl GaloisCoverData {
    /// Validates the data and derives the cover genus and sheet counts.
    pub fn build(
        base: OrbifoldSurface,
        group_order: u64,
        cover_volume: f64,
        cyclic_quotient_free: bool,
    ) -> Result<Self> {
        if !(cover_volume.is_finite() && cover_volume > 0.0) {
            return Err(Error::InvalidInput(format!(
                "cover volume must be positive and finite, got {cover_volume}"
            )));
        }
        let cover_genus = base.cover_genus(group_order)?;
        let sheet_counts = base
            .marked_points()
            .iter()
            .map(|p| group_order / p.isotropy() as u64)
            .collect();
        Ok(GaloisCoverData {
            base,
            group_order,
            cover_genus,
            sheet_counts,
            cover_volume,
            cyclic_quotient_free,
        })
    }

    pub fn base(&self) -> &OrbifoldSurface {
        &self.base
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn cover_genus(&self) -> u32 {
        self.cover_genus
    }

    /// `chi(X) = 2 - 2 g_X`.
    pub fn cover_euler_characteristic(&self) -> i64 {
        2 - 2 * self.cover_genus as i64
    }

    /// Sheets over each marked point, `l_k = |G| / m_k`, in base order.
    pub fn sheet_counts(&self) -> &[u64] {
        &self.sheet_counts
    }

    pub fn cover_volume(&self) -> f64 {
        self.cover_volume
    }

    pub fn cyclic_quotient_free(&self) -> bool {
        self.cyclic_quotient_free
    }
}

/// Builds a validated cover; convenience alias for [`GaloisCoverData::build`].
pub fn build_cover(
    base: OrbifoldSurface,
    group_order: u64,
    cover_volume: f64,
    cyclic_quotient_free: bool,
) -> Result<GaloisCoverData> {
    GaloisCoverData::build(base, group_order, cover_volume, cyclic_quotient_free)
}

/// Degree of the `G`-equivariant bundle on the cover associated to an
/// orbifold line bundle downstairs: `deg = |G| * deg_orb`.
///
/// Errors with `NonIntegralEquivariantDegree` when `|G| * deg_orb` is not an
/// integer (no equivariant lift exists with this data).
pub fn equivariant_degree(bundle: &OrbifoldLineBundle, cover: &GaloisCoverData) -> Result<i64> {
    let value = Rational::from_integer(cover.group_order as i64) * bundle.orbifold_degree();
    value
        .as_integer()
        .ok_or_else(|| Error::NonIntegralEquivariantDegree {
            value: value.to_string(),
        })
}

// ---------------------------------------------------------------------------
// Exact elliptic-curve divisor classes
// ---------------------------------------------------------------------------

/// A point of `C/(scale Z + tau Z)` of the form `r + s tau` with exact
/// rational `r`, `s`; `tau` stays symbolic (any period with nonzero
/// imaginary part). Stored reduced: `r in [0, scale)`, `s in [0, 1)`, so
/// equality of classes is plain field equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticPoint {
    coeff_one: Rational,
    coeff_tau: Rational,
    lattice_scale: Rational,
}

impl EllipticPoint {
    /// Class of `r + s tau` in `C/(scale Z + tau Z)`; reduces immediately.
    pub fn new(coeff_one: Rational, coeff_tau: Rational, lattice_scale: Rational) -> Result<Self> {
        if lattice_scale <= Rational::zero() {
            return Err(Error::InvalidInput(format!(
                "lattice scale must be positive, got {lattice_scale}"
            )));
        }
        Ok(EllipticPoint {
            coeff_one: coeff_one.rem_floor(lattice_scale),
            coeff_tau: coeff_tau.rem_floor(Rational::one()),
            lattice_scale,
        })
    }

    /// Class of `r + s tau` on the unit-scale curve `C/(Z + tau Z)`.
    pub fn on_unit_lattice(coeff_one: Rational, coeff_tau: Rational) -> Self {
        EllipticPoint::new(coeff_one, coeff_tau, Rational::one()).expect("scale 1 is positive")
    }

    pub fn coeff_one(&self) -> Rational {
        self.coeff_one
    }

    pub fn coeff_tau(&self) -> Rational {
        self.coeff_tau
    }

    pub fn lattice_scale(&self) -> Rational {
        self.lattice_scale
    }
}

/// Pullback of the degree-zero class `a + (l/n) tau` on `Y = C/(Z + tau Z)`
/// along the cyclic etale `n`-fold cover `X = C/(n Z + tau Z) -> Y`.
///
/// The pullback divisor sums the `n` preimages, so its class is
/// `n a + l tau ~ n a` in `J(X)`: the same point for every `l`, computed
/// here with exact lattice reduction. Requires `a` on the unit lattice and
/// `0 <= l < n`.
pub fn elliptic_pullback_class(a: &EllipticPoint, n: u32, l: u32) -> Result<EllipticPoint> {
    if a.lattice_scale != Rational::one() {
        return Err(Error::InvalidInput(
            "base point must live on the unit lattice C/(Z + tau Z)".into(),
        ));
    }
    if n == 0 || l >= n {
        return Err(Error::InvalidInput(format!(
            "need 0 <= l < n with n >= 1, got l = {l}, n = {n}"
        )));
    }
    let n_rat = Rational::from_integer(n as i64);
    // n (a + (l/n) tau) = n a + l tau; the l tau term dies in the X lattice.
    EllipticPoint::new(
        a.coeff_one * n_rat,
        a.coeff_tau * n_rat + Rational::from_integer(l as i64),
        n_rat,
    )
}

// ---------------------------------------------------------------------------
// JSON form: derived fields recomputed on load, never trusted from the file.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverRepr {
    base: OrbifoldSurface,
    group_order: u64,
    cover_volume: f64,
    cyclic_quotient_free: bool,
}

impl Serialize for GaloisCoverData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CoverRepr {
            base: self.base.clone(),
            group_order: self.group_order,
            cover_volume: self.cover_volume,
            cyclic_quotient_free: self.cyclic_quotient_free,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaloisCoverData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CoverRepr::deserialize(deserializer)?;
        GaloisCoverData::build(
            repr.base,
            repr.group_order,
            repr.cover_volume,
            repr.cyclic_quotient_free,
        )
        .map_err(D::Error::custom)
    }
}
