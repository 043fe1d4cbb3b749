//! Fractional divisors on orbifold surfaces.
//!
//! A fractional divisor is an integral divisor plus a formal sum of marked
//! points with rational coefficients whose denominators divide the local
//! isotropy orders. Divisor classes of this shape correspond to orbifold
//! line bundles: the bundle with monodromy residues `d_k` corresponds to
//! `D_int + sum_k (d_k/m_k) p_k` with `deg D_int` the smooth degree.
//!
//! This module carries the divisor-side arithmetic (addition, negation,
//! integer scaling, normal form) used to cross-check the monodromy-side
//! bundle arithmetic through a genuinely different code path.

use crate::error::{Error, Result};
use crate::orbifold::{MarkedPoint, OrbifoldLineBundle, OrbifoldSurface};
use crate::rational::Rational;

/// An integral degree plus rational point coefficients, kept sorted by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalDivisor {
    integral_degree: i64,
    fractional_part: Vec<(MarkedPoint, Rational)>,
}

impl FractionalDivisor {
    /// Coefficients must have denominators dividing the isotropy order of
    /// their point. Entries are sorted by label; duplicate labels are
    /// rejected.
    pub fn new(integral_degree: i64, parts: Vec<(MarkedPoint, Rational)>) -> Result<Self> {
        let mut fractional_part = parts;
        for (p, c) in &fractional_part {
            if p.isotropy() as i64 % c.denominator() != 0 {
                return Err(Error::InvalidInput(format!(
                    "coefficient {c} at `{}` has denominator not dividing isotropy {}",
                    p.label(),
                    p.isotropy()
                )));
            }
        }
        fractional_part.sort_by(|a, b| a.0.label().cmp(b.0.label()));
        for w in fractional_part.windows(2) {
            if w[0].0.label() == w[1].0.label() {
                return Err(Error::InvalidInput(format!(
                    "duplicate point `{}` in divisor",
                    w[0].0.label()
                )));
            }
        }
        Ok(FractionalDivisor {
            integral_degree,
            fractional_part,
        })
    }

    /// The divisor class of an orbifold line bundle:
    /// `deg_smooth` integrally plus `d_k/m_k` at each cone point.
    pub fn from_bundle(bundle: &OrbifoldLineBundle) -> Self {
        let parts = bundle
            .monodromies()
            .map(|m| {
                let coeff = Rational::new(m.residue as i64, m.point.isotropy() as i64);
                (m.point, coeff)
            })
            .collect();
        FractionalDivisor::new(bundle.smooth_degree(), parts).expect("bundle residues are in range")
    }

    /// The canonical divisor class: `2g - 2` integrally plus
    /// `(m_k - 1)/m_k` at each cone point.
    pub fn canonical(surface: &OrbifoldSurface) -> Self {
        let parts = surface
            .marked_points()
            .iter()
            .map(|p| {
                let m = p.isotropy() as i64;
                (p.clone(), Rational::new(m - 1, m))
            })
            .collect();
        FractionalDivisor::new(2 * surface.genus() as i64 - 2, parts)
            .expect("canonical coefficients are in range")
    }

    pub fn integral_degree(&self) -> i64 {
        self.integral_degree
    }

    pub fn fractional_part(&self) -> &[(MarkedPoint, Rational)] {
        &self.fractional_part
    }

    /// Total degree `deg D_int + sum of coefficients`, exact.
    pub fn degree(&self) -> Rational {
        Rational::from_integer(self.integral_degree)
            + self.fractional_part.iter().map(|(_, c)| *c).sum()
    }

    /// Pointwise sum; the supports must agree.
    pub fn add(&self, other: &FractionalDivisor) -> Result<FractionalDivisor> {
        self.combine(other, |a, b| a + b)
    }

    /// Pointwise difference; the supports must agree.
    pub fn sub(&self, other: &FractionalDivisor) -> Result<FractionalDivisor> {
        self.combine(other, |a, b| a - b)
    }

    /// Integer scalar multiple.
    pub fn scale(&self, k: i64) -> FractionalDivisor {
        FractionalDivisor {
            integral_degree: self.integral_degree * k,
            fractional_part: self
                .fractional_part
                .iter()
                .map(|(p, c)| (p.clone(), *c * Rational::from_integer(k)))
                .collect(),
        }
    }

    fn combine(
        &self,
        other: &FractionalDivisor,
        op: impl Fn(Rational, Rational) -> Rational,
    ) -> Result<FractionalDivisor> {
        if self.fractional_part.len() != other.fractional_part.len()
            || self
                .fractional_part
                .iter()
                .zip(&other.fractional_part)
                .any(|(a, b)| a.0 != b.0)
        {
            return Err(Error::BaseMismatch);
        }
        Ok(FractionalDivisor {
            integral_degree: op(
                Rational::from_integer(self.integral_degree),
                Rational::from_integer(other.integral_degree),
            )
            .as_integer()
            .expect("integral degrees stay integral"),
            fractional_part: self
                .fractional_part
                .iter()
                .zip(&other.fractional_part)
                .map(|((p, a), (_, b))| (p.clone(), op(*a, *b)))
                .collect(),
        })
    }

    /// Normal form: every coefficient reduced to `[0, 1)` with the integer
    /// floors absorbed into the integral degree. Degree is unchanged.
    pub fn normal_form(&self) -> FractionalDivisor {
        let mut integral = self.integral_degree;
        let fractional_part = self
            .fractional_part
            .iter()
            .map(|(p, c)| {
                let f = c.floor();
                integral += f;
                (p.clone(), *c - Rational::from_integer(f))
            })
            .collect();
        FractionalDivisor {
            integral_degree: integral,
            fractional_part,
        }
    }

    /// Reinterpret a normal-form divisor as an orbifold line bundle; errors
    /// if some coefficient is not of the form `d/m` for the point's `m`.
    pub fn to_bundle(&self, surface: &OrbifoldSurface) -> Result<OrbifoldLineBundle> {
        let normal = self.normal_form();
        if surface.marked_points().len() != normal.fractional_part.len() {
            return Err(Error::BaseMismatch);
        }
        let mut residues = vec![0u32; surface.marked_points().len()];
        for (p, c) in &normal.fractional_part {
            let idx = surface
                .marked_points()
                .iter()
                .position(|q| q == p)
                .ok_or(Error::BaseMismatch)?;
            let d = *c * Rational::from_integer(p.isotropy() as i64);
            residues[idx] = d
                .as_integer()
                .ok_or_else(|| Error::InvalidInput(format!("coefficient {c} is not d/m")))?
                as u32;
        }
        OrbifoldLineBundle::new(surface.clone(), normal.integral_degree, residues)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundle(orders: &[u32], residues: &[u32], deg: i64) -> OrbifoldLineBundle {
        let base = OrbifoldSurface::with_orders(0, orders).unwrap();
        OrbifoldLineBundle::new(base, deg, residues.to_vec()).unwrap()
    }

    #[test]
    fn degree_matches_bundle_degree() {
        let l = bundle(&[2, 3, 7], &[1, 2, 3], 4);
        let d = FractionalDivisor::from_bundle(&l);
        assert_eq!(d.degree(), l.orbifold_degree());
        assert_eq!(d.integral_degree(), 4);
    }

    #[test]
    fn canonical_divisor_degree() {
        let y = OrbifoldSurface::with_orders(0, &[2, 3, 7]).unwrap();
        assert_eq!(
            FractionalDivisor::canonical(&y).degree(),
            y.canonical_degree()
        );
    }

    #[test]
    fn round_trip_through_bundle() {
        let l = bundle(&[2, 3, 7], &[0, 2, 6], -2);
        let d = FractionalDivisor::from_bundle(&l);
        assert_eq!(d.to_bundle(l.base()).unwrap(), l);
    }

    #[test]
    fn normal_form_preserves_degree() {
        let y = OrbifoldSurface::with_orders(1, &[2, 4]).unwrap();
        let k = FractionalDivisor::canonical(&y);
        let stretched = k.scale(-3);
        assert_eq!(stretched.normal_form().degree(), stretched.degree());
        for (_, c) in stretched.normal_form().fractional_part() {
            assert!(*c >= Rational::zero() && *c < Rational::one());
        }
    }

    #[test]
    fn divisor_route_reproduces_canonical_twist() {
        // smooth degree of L (x) K^{-q} computed purely with divisors
        let l = bundle(&[2, 3, 7], &[1, 1, 1], 5);
        let d = FractionalDivisor::from_bundle(&l);
        let k = FractionalDivisor::canonical(l.base());
        for q in 0..6i64 {
            let twisted = d.sub(&k.scale(q)).unwrap();
            assert_eq!(
                twisted.normal_form().integral_degree(),
                l.twisted_smooth_degree(q as u32),
                "q = {q}"
            );
        }
    }

    #[test]
    fn rejects_coefficient_with_foreign_denominator() {
        let p = MarkedPoint::new("p", 4).unwrap();
        assert!(FractionalDivisor::new(0, vec![(p, Rational::new(1, 3))]).is_err());
    }
}
