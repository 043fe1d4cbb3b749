//! Orbifold Riemann surfaces and orbifold line bundles.
//!
//! An orbifold surface here is a closed genus-`g` surface with `n` marked
//! points `p_k`, each carrying a cyclic isotropy group of order `m_k >= 2`
//! (cone angle `2*pi/m_k`). Its orbifold Euler characteristic is
//!
//! ```text
//! chi_orb = 2 - 2g - n + sum_k 1/m_k
//! ```
//!
//! An orbifold line bundle is described by the degree of its associated
//! smooth bundle together with one monodromy residue `d_k` per marked point,
//! canonicalised to `0 <= d_k < m_k`. The orbifold degree is
//!
//! ```text
//! deg_orb = deg_smooth + sum_k d_k/m_k ,
//! ```
//! an exact rational whose denominator divides `lcm(m_k)`. Tensor products
//! add residues with carry: each overflow `d_1 + d_2 >= m` contributes one
//! unit to the smooth degree, so `deg_orb` is additive on the nose.
//!
//! The holomorphic Euler characteristic of a bundle is `1 - g + deg_smooth`
//! (orbifold Riemann-Roch); when `deg_orb` exceeds `-chi_orb` the first
//! cohomology vanishes and this integer is the dimension of the space of
//! holomorphic sections.

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A cone point: label plus cyclic isotropy order `m >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPoint {
    label: String,
    isotropy: u32,
}

impl MarkedPoint {
    pub fn new(label: impl Into<String>, isotropy: u32) -> Result<Self> {
        let label = label.into();
        if isotropy < 2 {
            return Err(Error::InvalidInput(format!(
                "isotropy order at `{label}` must be at least 2, got {isotropy}"
            )));
        }
        Ok(MarkedPoint { label, isotropy })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn isotropy(&self) -> u32 {
        self.isotropy
    }
}

/// A closed surface of genus `g` with an ordered list of cone points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldSurface {
    genus: u32,
    marked_points: Vec<MarkedPoint>,
}

impl OrbifoldSurface {
    /// Labels must be pairwise distinct.
    pub fn new(genus: u32, marked_points: Vec<MarkedPoint>) -> Result<Self> {
        for (i, p) in marked_points.iter().enumerate() {
            if marked_points[..i].iter().any(|q| q.label == p.label) {
                return Err(Error::InvalidInput(format!(
                    "duplicate marked point label `{}`",
                    p.label
                )));
            }
        }
        Ok(OrbifoldSurface {
            genus,
            marked_points,
        })
    }

    /// Smooth surface of the given genus: no marked points.
    pub fn smooth(genus: u32) -> Self {
        OrbifoldSurface {
            genus,
            marked_points: Vec::new(),
        }
    }

    /// Genus-`g` surface with cone points `p1, p2, ...` of the given orders.
    pub fn with_orders(genus: u32, orders: &[u32]) -> Result<Self> {
        let points = orders
            .iter()
            .enumerate()
            .map(|(i, &m)| MarkedPoint::new(format!("p{}", i + 1), m))
            .collect::<Result<Vec<_>>>()?;
        OrbifoldSurface::new(genus, points)
    }

    /// The pillowcase: a sphere with four cone points of order 2, the
    /// quotient of a torus by the inversion involution.
    pub fn pillowcase() -> Self {
        OrbifoldSurface::with_orders(0, &[2, 2, 2, 2]).expect("static data is valid")
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn marked_points(&self) -> &[MarkedPoint] {
        &self.marked_points
    }

    /// lcm of the isotropy orders; 1 when there are no marked points.
    pub fn isotropy_lcm(&self) -> u64 {
        self.marked_points
            .iter()
            .fold(1u64, |l, p| l.lcm(&(p.isotropy as u64)))
    }

    /// Orbifold Euler characteristic `2 - 2g - n + sum 1/m_k`, exact.
    pub fn euler_characteristic(&self) -> Rational {
        let base =
            Rational::from_integer(2 - 2 * self.genus as i64 - self.marked_points.len() as i64);
        let cone_sum: Rational = self
            .marked_points
            .iter()
            .map(|p| Rational::new(1, p.isotropy as i64))
            .sum();
        base + cone_sum
    }

    /// Degree of the canonical orbifold bundle,
    /// `2g - 2 + n - sum 1/m_k = -chi_orb`.
    pub fn canonical_degree(&self) -> Rational {
        -self.euler_characteristic()
    }

    /// The canonical orbifold bundle: smooth degree `2g - 2` with monodromy
    /// residue `m_k - 1` at every cone point.
    pub fn canonical_bundle(&self) -> OrbifoldLineBundle {
        let residues = self.marked_points.iter().map(|p| p.isotropy - 1).collect();
        OrbifoldLineBundle::new(self.clone(), 2 * self.genus as i64 - 2, residues)
            .expect("canonical residues are in range")
    }

    /// Euler characteristic of a degree-`group_order` Galois cover,
    /// `chi(X) = |G| * chi_orb`.
    ///
    /// Errors with `IsotropyMismatch` if some isotropy order does not divide
    /// `group_order`, and with `NonIntegralCover` if `|G| * chi_orb` is not
    /// an even integer (no closed surface has odd Euler characteristic).
    pub fn cover_euler_characteristic(&self, group_order: u64) -> Result<i64> {
        if group_order == 0 {
            return Err(Error::InvalidInput("group order must be positive".into()));
        }
        for p in &self.marked_points {
            if !group_order.is_multiple_of(p.isotropy as u64) {
                return Err(Error::IsotropyMismatch {
                    label: p.label.clone(),
                    isotropy: p.isotropy,
                    group_order,
                });
            }
        }
        let chi = Rational::from_integer(group_order as i64) * self.euler_characteristic();
        let chi = chi.as_integer().ok_or_else(|| Error::NonIntegralCover {
            group_order,
            detail: format!("|G| * chi_orb = {} is not an integer", chi),
        })?;
        if chi.rem_euclid(2) != 0 {
            return Err(Error::NonIntegralCover {
                group_order,
                detail: format!("|G| * chi_orb = {chi} is odd"),
            });
        }
        Ok(chi)
    }

    /// Genus of the degree-`group_order` cover, `g_X = 1 - chi(X)/2`.
    pub fn cover_genus(&self, group_order: u64) -> Result<u32> {
        let chi = self.cover_euler_characteristic(group_order)?;
        let genus = 1 - chi / 2;
        u32::try_from(genus).map_err(|_| Error::NonIntegralCover {
            group_order,
            detail: format!("cover genus 1 - chi/2 = {genus} is negative"),
        })
    }
}

/// One monodromy datum: the residue `0 <= d < m` of the isotropy
/// representation on the fibre over a cone point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monodromy {
    pub point: MarkedPoint,
    pub residue: u32,
}

/// An orbifold line bundle: base orbifold, degree of the associated smooth
/// bundle, and one monodromy residue per marked point (in base order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldLineBundle {
    base: OrbifoldSurface,
    deg_smooth: i64,
    residues: Vec<u32>,
}

impl OrbifoldLineBundle {
    pub fn new(base: OrbifoldSurface, deg_smooth: i64, residues: Vec<u32>) -> Result<Self> {
        if residues.len() != base.marked_points.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} monodromy residues, got {}",
                base.marked_points.len(),
                residues.len()
            )));
        }
        for (p, &d) in base.marked_points.iter().zip(&residues) {
            if d >= p.isotropy {
                return Err(Error::InvalidInput(format!(
                    "residue {d} at `{}` must lie in [0, {})",
                    p.label, p.isotropy
                )));
            }
        }
        Ok(OrbifoldLineBundle {
            base,
            deg_smooth,
            residues,
        })
    }

    /// The trivial bundle: degree 0, all residues 0.
    pub fn trivial(base: OrbifoldSurface) -> Self {
        let residues = vec![0; base.marked_points.len()];
        OrbifoldLineBundle {
            base,
            deg_smooth: 0,
            residues,
        }
    }

    /// Build from a prescribed orbifold degree instead of a smooth degree.
    ///
    /// Errors with `NonIntegralSmoothDegree` if `deg_orb - sum d_k/m_k` is
    /// not an integer.
    pub fn from_orbifold_degree(
        base: OrbifoldSurface,
        deg_orb: Rational,
        residues: Vec<u32>,
    ) -> Result<Self> {
        if residues.len() != base.marked_points.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} monodromy residues, got {}",
                base.marked_points.len(),
                residues.len()
            )));
        }
        let monodromy_sum: Rational = base
            .marked_points
            .iter()
            .zip(&residues)
            .map(|(p, &d)| Rational::new(d as i64, p.isotropy as i64))
            .sum();
        let deg_smooth = (deg_orb - monodromy_sum).as_integer().ok_or_else(|| {
            Error::NonIntegralSmoothDegree {
                degree: deg_orb.to_string(),
            }
        })?;
        OrbifoldLineBundle::new(base, deg_smooth, residues)
    }

    pub fn base(&self) -> &OrbifoldSurface {
        &self.base
    }

    /// Degree of the associated smooth bundle (monodromies stripped off).
    pub fn smooth_degree(&self) -> i64 {
        self.deg_smooth
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn monodromies(&self) -> impl Iterator<Item = Monodromy> + '_ {
        self.base
            .marked_points
            .iter()
            .zip(&self.residues)
            .map(|(p, &d)| Monodromy {
                point: p.clone(),
                residue: d,
            })
    }

    /// Orbifold degree `deg_smooth + sum d_k/m_k`, exact.
    pub fn orbifold_degree(&self) -> Rational {
        let monodromy_sum: Rational = self
            .base
            .marked_points
            .iter()
            .zip(&self.residues)
            .map(|(p, &d)| Rational::new(d as i64, p.isotropy as i64))
            .sum();
        Rational::from_integer(self.deg_smooth) + monodromy_sum
    }

    /// Tensor product. Residues add with carry: `d = (d1 + d2) mod m`, and
    /// each overflow increments the smooth degree, so orbifold degrees add
    /// exactly.
    pub fn tensor(&self, other: &OrbifoldLineBundle) -> Result<OrbifoldLineBundle> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        let mut deg = self.deg_smooth + other.deg_smooth;
        let mut residues = Vec::with_capacity(self.residues.len());
        for ((p, &d1), &d2) in self
            .base
            .marked_points
            .iter()
            .zip(&self.residues)
            .zip(&other.residues)
        {
            let sum = d1 + d2;
            if sum >= p.isotropy {
                deg += 1;
                residues.push(sum - p.isotropy);
            } else {
                residues.push(sum);
            }
        }
        Ok(OrbifoldLineBundle {
            base: self.base.clone(),
            deg_smooth: deg,
            residues,
        })
    }

    /// Inverse in the Picard group: `L.tensor(L.inverse())` is trivial.
    pub fn inverse(&self) -> OrbifoldLineBundle {
        let mut deg = -self.deg_smooth;
        let mut residues = Vec::with_capacity(self.residues.len());
        for (p, &d) in self.base.marked_points.iter().zip(&self.residues) {
            if d > 0 {
                deg -= 1;
                residues.push(p.isotropy - d);
            } else {
                residues.push(0);
            }
        }
        OrbifoldLineBundle {
            base: self.base.clone(),
            deg_smooth: deg,
            residues,
        }
    }

    /// `self` tensored with itself `exponent` times (negative exponents via
    /// the inverse).
    pub fn power(&self, exponent: i64) -> OrbifoldLineBundle {
        let factor = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = OrbifoldLineBundle::trivial(self.base.clone());
        for _ in 0..exponent.unsigned_abs() {
            acc = acc.tensor(&factor).expect("same base by construction");
        }
        acc
    }

    /// `L (x) K^{-q}` for the canonical orbifold bundle `K` of the base.
    pub fn twist_by_canonical(&self, q: u32) -> OrbifoldLineBundle {
        let twist = self.base.canonical_bundle().power(-(q as i64));
        self.tensor(&twist).expect("same base by construction")
    }

    /// Smooth degree of `L (x) K^{-q}` by the closed floor formula
    ///
    /// ```text
    /// deg L - q(2g - 2) - qn + sum_k floor((d_k + q)/m_k) ,
    /// ```
    ///
    /// an independent route to `twist_by_canonical(q).smooth_degree()`.
    pub fn twisted_smooth_degree(&self, q: u32) -> i64 {
        let g = self.base.genus as i64;
        let n = self.base.marked_points.len() as i64;
        let q = q as i64;
        let floor_sum: i64 = self
            .base
            .marked_points
            .iter()
            .zip(&self.residues)
            .map(|(p, &d)| (d as i64 + q).div_euclid(p.isotropy as i64))
            .sum();
        self.deg_smooth - q * (2 * g - 2) - q * n + floor_sum
    }

    /// Holomorphic Euler characteristic `1 - g + deg_smooth`
    /// (orbifold Riemann-Roch). Equals `dim H^0` when
    /// `orbifold_degree() > -chi_orb` of the base.
    pub fn riemann_roch(&self) -> i64 {
        1 - self.base.genus as i64 + self.deg_smooth
    }
}

// ---------------------------------------------------------------------------
// JSON forms
//
// OrbifoldSurface:    {"genus": g, "marked_points": [{"label": .., "m": ..}]}
// OrbifoldLineBundle: {"genus": g, "marked_points": [{"label": .., "m": ..,
//                      "d": ..}], "deg_smooth": d}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfacePointRepr {
    label: String,
    m: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceRepr {
    genus: u32,
    marked_points: Vec<SurfacePointRepr>,
}

impl Serialize for OrbifoldSurface {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SurfaceRepr {
            genus: self.genus,
            marked_points: self
                .marked_points
                .iter()
                .map(|p| SurfacePointRepr {
                    label: p.label.clone(),
                    m: p.isotropy,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrbifoldSurface {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SurfaceRepr::deserialize(deserializer)?;
        let points = repr
            .marked_points
            .into_iter()
            .map(|p| MarkedPoint::new(p.label, p.m))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        OrbifoldSurface::new(repr.genus, points).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundlePointRepr {
    label: String,
    m: u32,
    d: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleRepr {
    genus: u32,
    marked_points: Vec<BundlePointRepr>,
    deg_smooth: i64,
}

impl Serialize for OrbifoldLineBundle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BundleRepr {
            genus: self.base.genus,
            marked_points: self
                .base
                .marked_points
                .iter()
                .zip(&self.residues)
                .map(|(p, &d)| BundlePointRepr {
                    label: p.label.clone(),
                    m: p.isotropy,
                    d,
                })
                .collect(),
            deg_smooth: self.deg_smooth,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrbifoldLineBundle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = BundleRepr::deserialize(deserializer)?;
        let mut points = Vec::with_capacity(repr.marked_points.len());
        let mut residues = Vec::with_capacity(repr.marked_points.len());
        for p in repr.marked_points {
            points.push(MarkedPoint::new(p.label, p.m).map_err(D::Error::custom)?);
            residues.push(p.d);
        }
        let base = OrbifoldSurface::new(repr.genus, points).map_err(D::Error::custom)?;
        OrbifoldLineBundle::new(base, repr.deg_smooth, residues).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hurwitz_triangle() -> OrbifoldSurface {
        OrbifoldSurface::with_orders(0, &[2, 3, 7]).unwrap()
    }

    #[test]
    fn euler_characteristic_of_smooth_torus_vanishes() {
        assert_eq!(
            OrbifoldSurface::smooth(1).euler_characteristic(),
            Rational::zero()
        );
    }

    #[test]
    fn euler_characteristic_of_pillowcase_vanishes() {
        assert_eq!(
            OrbifoldSurface::pillowcase().euler_characteristic(),
            Rational::zero()
        );
    }

    #[test]
    fn euler_characteristic_of_hurwitz_triangle() {
        assert_eq!(
            hurwitz_triangle().euler_characteristic(),
            Rational::new(-1, 42)
        );
    }

    #[test]
    fn canonical_degree_is_minus_euler_characteristic() {
        for surface in [
            OrbifoldSurface::smooth(2),
            OrbifoldSurface::pillowcase(),
            hurwitz_triangle(),
            OrbifoldSurface::with_orders(1, &[2, 2]).unwrap(),
            OrbifoldSurface::with_orders(3, &[5, 9, 2, 11]).unwrap(),
        ] {
            assert_eq!(surface.canonical_degree(), -surface.euler_characteristic());
        }
        assert_eq!(
            OrbifoldSurface::smooth(2).canonical_degree(),
            Rational::from_integer(2)
        );
        assert_eq!(hurwitz_triangle().canonical_degree(), Rational::new(1, 42));
        assert_eq!(
            OrbifoldSurface::with_orders(1, &[2, 2])
                .unwrap()
                .canonical_degree(),
            Rational::from_integer(1)
        );
    }

    #[test]
    fn cover_euler_characteristic_examples() {
        let pillow = OrbifoldSurface::pillowcase();
        assert_eq!(pillow.cover_euler_characteristic(2).unwrap(), 0);
        assert_eq!(pillow.cover_genus(2).unwrap(), 1);

        let tri = hurwitz_triangle();
        assert_eq!(tri.cover_euler_characteristic(168).unwrap(), -4);
        assert_eq!(tri.cover_genus(168).unwrap(), 3);
    }

    #[test]
    fn cover_rejects_isotropy_mismatch() {
        let surface = OrbifoldSurface::with_orders(0, &[3]).unwrap();
        assert!(matches!(
            surface.cover_euler_characteristic(4),
            Err(Error::IsotropyMismatch { .. })
        ));
    }

    #[test]
    fn cover_rejects_negative_genus() {
        // an unramified double cover of the sphere does not exist
        assert!(matches!(
            OrbifoldSurface::smooth(0).cover_genus(2),
            Err(Error::NonIntegralCover { .. })
        ));
    }

    #[test]
    fn cover_rejects_non_integral_chi() {
        // chi_orb = 2 - 1 + 1/2 = 3/2; |G| = 2 gives chi(X) = 3, odd
        let surface = OrbifoldSurface::with_orders(0, &[2]).unwrap();
        assert!(matches!(
            surface.cover_euler_characteristic(2),
            Err(Error::NonIntegralCover { .. })
        ));
    }

    #[test]
    fn marked_points_need_distinct_labels() {
        let p = MarkedPoint::new("p", 2).unwrap();
        let q = MarkedPoint::new("p", 3).unwrap();
        assert!(OrbifoldSurface::new(0, vec![p, q]).is_err());
    }

    #[test]
    fn isotropy_must_be_at_least_two() {
        assert!(MarkedPoint::new("p", 1).is_err());
        assert!(MarkedPoint::new("p", 0).is_err());
    }

    fn bundle(orders: &[u32], residues: &[u32], deg: i64) -> OrbifoldLineBundle {
        let base = OrbifoldSurface::with_orders(0, orders).unwrap();
        OrbifoldLineBundle::new(base, deg, residues.to_vec()).unwrap()
    }

    #[test]
    fn orbifold_degree_examples() {
        assert_eq!(
            bundle(&[2, 3], &[1, 2], 2).orbifold_degree(),
            Rational::new(19, 6)
        );
        assert_eq!(
            bundle(&[2, 3], &[0, 0], 5).orbifold_degree(),
            Rational::from_integer(5)
        );
        assert_eq!(
            bundle(&[2, 2, 2, 2], &[0, 0, 0, 0], 4).orbifold_degree(),
            Rational::from_integer(4)
        );
    }

    #[test]
    fn smooth_degree_inverts_orbifold_degree() {
        let l = bundle(&[2, 3], &[1, 2], 2);
        assert_eq!(l.smooth_degree(), 2);
        let rebuilt = OrbifoldLineBundle::from_orbifold_degree(
            l.base().clone(),
            l.orbifold_degree(),
            l.residues().to_vec(),
        )
        .unwrap();
        assert_eq!(rebuilt, l);

        let pillow = bundle(&[2, 2, 2, 2], &[1, 1, 1, 1], 2);
        assert_eq!(pillow.orbifold_degree(), Rational::from_integer(4));
        assert_eq!(pillow.smooth_degree(), 2);
    }

    #[test]
    fn from_orbifold_degree_rejects_non_integral_smooth_part() {
        let base = OrbifoldSurface::with_orders(0, &[2]).unwrap();
        assert!(matches!(
            OrbifoldLineBundle::from_orbifold_degree(base, Rational::new(1, 4), vec![0]),
            Err(Error::NonIntegralSmoothDegree { .. })
        ));
    }

    #[test]
    fn tensor_carries_overflowing_residues() {
        let l = bundle(&[2], &[1], 0);
        let sq = l.tensor(&l).unwrap();
        assert_eq!(sq.smooth_degree(), 1);
        assert_eq!(sq.residues(), &[0]);
    }

    #[test]
    fn trivial_bundle_is_tensor_identity() {
        let l = bundle(&[2, 3, 7], &[1, 2, 4], -3);
        let e = OrbifoldLineBundle::trivial(l.base().clone());
        assert_eq!(l.tensor(&e).unwrap(), l);
        assert_eq!(e.tensor(&l).unwrap(), l);
        assert_eq!(
            l.tensor(&l.inverse()).unwrap(),
            OrbifoldLineBundle::trivial(l.base().clone())
        );
    }

    #[test]
    fn tensor_rejects_different_bases() {
        let a = bundle(&[2], &[0], 0);
        let b = bundle(&[3], &[0], 0);
        assert!(matches!(a.tensor(&b), Err(Error::BaseMismatch)));
    }

    #[test]
    fn twist_by_zero_is_identity() {
        let l = bundle(&[2, 3, 7], &[1, 1, 1], 5);
        assert_eq!(l.twist_by_canonical(0), l);
    }

    #[test]
    fn twisted_smooth_degree_examples() {
        // floors vanish at q = 0
        let l = bundle(&[2, 3, 7], &[1, 1, 1], 5);
        assert_eq!(l.twisted_smooth_degree(0), 5);
        // 5 + 2 - 3 + (1 + 0 + 0)
        assert_eq!(l.twisted_smooth_degree(1), 5);
        // pillowcase with all residues 1: 2 + 2 - 4 + 4*floor(2/2)
        let p = bundle(&[2, 2, 2, 2], &[1, 1, 1, 1], 2);
        assert_eq!(p.twisted_smooth_degree(1), 4);
    }

    #[test]
    fn twist_and_floor_formula_agree() {
        let l = bundle(&[2, 3, 7], &[1, 1, 1], 5);
        for q in 0..8 {
            assert_eq!(
                l.twisted_smooth_degree(q),
                l.twist_by_canonical(q).smooth_degree()
            );
        }
    }

    #[test]
    fn pillowcase_twist_example() {
        let l = bundle(&[2, 2, 2, 2], &[0, 0, 0, 0], 4);
        // 4 + 2 - 4 + 4*floor(1/2) = 2 ... smooth degree of L (x) K^{-1}
        assert_eq!(l.twisted_smooth_degree(1), 2);
        assert_eq!(l.twist_by_canonical(1).smooth_degree(), 2);
        // orbifold degree drops by the canonical degree, here 0
        assert_eq!(
            l.twist_by_canonical(1).orbifold_degree(),
            l.orbifold_degree()
        );
    }

    #[test]
    fn riemann_roch_examples() {
        let g0 = bundle(&[], &[], 4);
        assert_eq!(g0.riemann_roch(), 5);
        assert_eq!(bundle(&[2, 2, 2, 2], &[0, 0, 0, 0], 4).riemann_roch(), 5);
        assert_eq!(bundle(&[2, 2, 2, 2], &[1, 1, 1, 1], 2).riemann_roch(), 3);
    }

    #[test]
    fn bundle_json_round_trip() {
        let l = bundle(&[2, 3], &[1, 2], 2);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(
            s,
            r#"{"genus":0,"marked_points":[{"label":"p1","m":2,"d":1},{"label":"p2","m":3,"d":2}],"deg_smooth":2}"#
        );
        let back: OrbifoldLineBundle = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn bundle_json_rejects_out_of_range_residue() {
        let s = r#"{"genus":0,"marked_points":[{"label":"p1","m":2,"d":2}],"deg_smooth":0}"#;
        assert!(serde_json::from_str::<OrbifoldLineBundle>(s).is_err());
    }

    #[test]
    fn surface_json_round_trip() {
        let y = OrbifoldSurface::with_orders(1, &[2, 5]).unwrap();
        let s = serde_json::to_string(&y).unwrap();
        assert_eq!(
            s,
            r#"{"genus":1,"marked_points":[{"label":"p1","m":2},{"label":"p2","m":5}]}"#
        );
        let back: OrbifoldSurface = serde_json::from_str(&s).unwrap();
        assert_eq!(back, y);
    }
}
