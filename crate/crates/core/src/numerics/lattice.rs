//! Flux-threaded lattice tori and the discrete magnetic Laplacian.
//!
//! The continuum operator `nabla* nabla` for a uniform magnetic field on a
//! flat torus is discretised by finite differences with Peierls phases: on
//! an `N x N` periodic grid threaded by `N_phi` flux quanta, every
//! plaquette carries flux `phi = N_phi / N^2` and
//!
//! ```text
//! H = 4 I - sum of the four nearest-neighbour hops, each a unit-modulus
//!     phase fixed by the gauge.
//! ```
//!
//! In the gauge used here the phases depend on one coordinate only, and a
//! seam line of wrap-around hops carries the compensating boundary twist so
//! that *every* plaquette, seam and corner included, sees the same flux.
//! That consistency (and the integrality of the total flux) is verified on
//! every build; a violation is reported as `FluxInconsistency` rather than
//! silently patched.
//!
//! The spectrum of `H` collapses onto Landau levels `E_l ~ (2l+1) 2pi
//! N_phi/N^2` in the weak-field regime, which is what the exact ladder
//! upstairs predicts for the flat cover; the free (`N_phi = 0`) spectrum
//! `4 - 2cos(2pi j/N) - 2cos(2pi k/N)` is kept available as a closed-form
//! oracle.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Which coordinate carries the Peierls phases.
///
/// Both describe the same uniform flux; their spectra agree to rounding,
/// which is the gauge-invariance oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gauge {
    /// Phases on vertical hops grow with `x`; the `x`-wrap column carries
    /// the boundary twist.
    #[default]
    LandauX,
    /// Mirror convention: phases on horizontal hops grow with `y`; the
    /// `y`-wrap row carries the twist.
    LandauY,
}

/// Point symmetries of the flux-threaded torus implemented here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointSymmetry {
    /// `(x, y) -> (-x, -y) mod N`: the involution whose quotient is the
    /// pillowcase.
    Inversion,
}

/// An `N x N` torus threaded by an integer number of flux quanta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeModel {
    sites_per_side: usize,
    flux_quanta: i64,
    gauge: Gauge,
    symmetry: Option<PointSymmetry>,
}

impl LatticeModel {
    /// Weak-field model: requires `N >= 4` and `1 <= N_phi < N^2/4` so that
    /// Landau clusters are resolvable.
    pub fn new(sites_per_side: usize, flux_quanta: i64) -> Result<Self> {
        if sites_per_side < 4 {
            return Err(Error::InvalidInput(format!(
                "need at least 4 sites per side, got {sites_per_side}"
            )));
        }
        let n2 = (sites_per_side * sites_per_side) as i64;
        if flux_quanta < 1 || 4 * flux_quanta >= n2 {
            return Err(Error::InvalidInput(format!(
                "flux quanta must satisfy 1 <= N_phi < N^2/4, got {flux_quanta} on N = {sites_per_side}"
            )));
        }
        Ok(LatticeModel {
            sites_per_side,
            flux_quanta,
            gauge: Gauge::default(),
            symmetry: None,
        })
    }

    /// Zero-flux torus. Outside the weak-field contract; kept for the
    /// closed-form cosine oracle and symmetry fixtures.
    pub fn free(sites_per_side: usize) -> Result<Self> {
        LatticeModel::with_flux_unchecked(sites_per_side, 0)
    }

    /// Any integer flux, including strong fields outside the weak-field
    /// contract. Oracle use only (free case, the flux-1/2 Harper check);
    /// Landau clustering is not meaningful here.
    pub fn with_flux_unchecked(sites_per_side: usize, flux_quanta: i64) -> Result<Self> {
        if sites_per_side < 4 {
            return Err(Error::InvalidInput(format!(
                "need at least 4 sites per side, got {sites_per_side}"
            )));
        }
        Ok(LatticeModel {
            sites_per_side,
            flux_quanta,
            gauge: Gauge::default(),
            symmetry: None,
        })
    }

    pub fn with_gauge(mut self, gauge: Gauge) -> Self {
        self.gauge = gauge;
        self
    }

    pub fn with_inversion(mut self) -> Self {
        self.symmetry = Some(PointSymmetry::Inversion);
        self
    }

    pub fn sites_per_side(&self) -> usize {
        self.sites_per_side
    }

    pub fn flux_quanta(&self) -> i64 {
        self.flux_quanta
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    pub fn symmetry(&self) -> Option<PointSymmetry> {
        self.symmetry
    }

    /// Hilbert-space dimension `N^2`.
    pub fn dimension(&self) -> usize {
        self.sites_per_side * self.sites_per_side
    }

    /// Flux per plaquette `N_phi / N^2`, exact.
    pub fn flux_per_plaquette(&self) -> Rational {
        Rational::new(self.flux_quanta, (self.dimension()) as i64)
    }

    pub fn site_index(&self, x: usize, y: usize) -> usize {
        x + self.sites_per_side * y
    }

    pub fn site_coords(&self, index: usize) -> (usize, usize) {
        (index % self.sites_per_side, index / self.sites_per_side)
    }
}

/// Sparse Hermitian operator: per-row adjacency lists sorted by column.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl HermitianOperator {
    fn empty(dim: usize) -> Self {
        HermitianOperator {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    /// Diagonal test fixture.
    pub fn diagonal(values: &[f64]) -> Self {
        let mut h = HermitianOperator::empty(values.len());
        for (i, &v) in values.iter().enumerate() {
            h.rows[i].push((i, Complex64::new(v, 0.0)));
        }
        h
    }

    fn add_entry(&mut self, row: usize, col: usize, value: Complex64) {
        self.rows[row].push((col, value));
    }

    /// Inserts `value |to><from|` and its adjoint in one go.
    fn add_bond(&mut self, from: usize, to: usize, value: Complex64) {
        self.add_entry(to, from, value);
        self.add_entry(from, to, value.conj());
    }

    fn sort_rows(&mut self) {
        for row in &mut self.rows {
            row.sort_by_key(|&(col, _)| col);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<(usize, Complex64)>] {
        &self.rows
    }

    /// Entry `<row| H |col>`; zero if absent.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row]
            .iter()
            .find(|&&(c, _)| c == col)
            .map_or(Complex64::ZERO, |&(_, v)| v)
    }

    /// `y = H x` in a fixed deterministic order.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = Complex64::ZERO;
            for &(j, v) in row {
                acc += v * x[j];
            }
            y[i] = acc;
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// `max |H_ij - conj(H_ji)|` over stored entries; `0.0` for an operator
    /// assembled bond by bond.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                worst = worst.max((v - self.entry(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Upper bound on the spectrum by Gershgorin row sums.
    pub fn gershgorin_upper(&self) -> f64 {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .map(|&(j, v)| if i == j { v.re } else { v.norm() })
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Directed hopping phases of the two Landau gauges (the hop amplitude is
/// minus the phase). `x`-hop: `(x, y) -> (x+1 mod N, y)`; `y`-hop:
/// `(x, y) -> (x, y+1 mod N)`.
struct GaugePhases {
    n: usize,
    flux_quanta: f64,
    gauge: Gauge,
}

impl GaugePhases {
    fn unit(angle: f64) -> Complex64 {
        Complex64::from_polar(1.0, angle)
    }

    /// Flux per plaquette.
    fn phi(&self) -> f64 {
        self.flux_quanta / (self.n * self.n) as f64
    }

    fn x_hop(&self, x: usize, y: usize) -> Complex64 {
        match self.gauge {
            Gauge::LandauX => {
                if x + 1 == self.n {
                    // boundary twist column
                    Self::unit(-TAU * self.flux_quanta / self.n as f64 * y as f64)
                } else {
                    Complex64::ONE
                }
            }
            Gauge::LandauY => Self::unit(-TAU * self.phi() * y as f64),
        }
    }

    fn y_hop(&self, x: usize, y: usize) -> Complex64 {
        match self.gauge {
            Gauge::LandauX => Self::unit(TAU * self.phi() * x as f64),
            Gauge::LandauY => {
                if y + 1 == self.n {
                    // boundary twist row
                    Self::unit(TAU * self.flux_quanta / self.n as f64 * x as f64)
                } else {
                    Complex64::ONE
                }
            }
        }
    }

    /// Counter-clockwise product of hop phases around the plaquette with
    /// lower-left corner `(x, y)`.
    fn plaquette(&self, x: usize, y: usize) -> Complex64 {
        let xp = (x + 1) % self.n;
        let yp = (y + 1) % self.n;
        self.x_hop(x, y) * self.y_hop(xp, y) * self.x_hop(x, yp).conj() * self.y_hop(x, y).conj()
    }
}

/// Builds `H = 4 I - (phased nearest-neighbour hops)` for the model and
/// certifies the magnetic boundary conditions.
pub fn build_magnetic_laplacian(model: &LatticeModel) -> Result<HermitianOperator> {
    build_with_flux(model.sites_per_side, model.flux_quanta as f64, model.gauge)
}

/// Internal builder taking possibly non-integral flux quanta; the
/// consistency check is what rejects those.
pub(crate) fn build_with_flux(
    n: usize,
    flux_quanta: f64,
    gauge: Gauge,
) -> Result<HermitianOperator> {
    let phases = GaugePhases {
        n,
        flux_quanta,
        gauge,
    };
    verify_flux_consistency(&phases)?;

    let dim = n * n;
    let mut h = HermitianOperator::empty(dim);
    let idx = |x: usize, y: usize| x + n * y;
    for y in 0..n {
        for x in 0..n {
            h.add_entry(idx(x, y), idx(x, y), Complex64::new(4.0, 0.0));
            h.add_bond(idx(x, y), idx((x + 1) % n, y), -phases.x_hop(x, y));
            h.add_bond(idx(x, y), idx(x, (y + 1) % n), -phases.y_hop(x, y));
        }
    }
    h.sort_rows();
    debug_assert_eq!(h.hermiticity_defect(), 0.0);
    Ok(h)
}

fn verify_flux_consistency(phases: &GaugePhases) -> Result<()> {
    let n = phases.n;
    let target = Complex64::from_polar(1.0, TAU * phases.phi());
    let mut total = Complex64::ONE;
    for y in 0..n {
        for x in 0..n {
            let p = phases.plaquette(x, y);
            if (p - target).norm() > 1e-12 {
                return Err(Error::FluxInconsistency {
                    detail: format!("plaquette ({x}, {y}) carries phase {p} instead of {target}"),
                });
            }
            total *= p;
        }
    }
    // the total flux must be an integer number of quanta
    if (total - Complex64::ONE).norm() > 1e-9 {
        return Err(Error::FluxInconsistency {
            detail: format!("total flux exp(2 pi i N_phi) = {total} differs from 1"),
        });
    }
    Ok(())
}

/// Free tight-binding spectrum `{4 - 2cos(2pi j/N) - 2cos(2pi k/N)}`,
/// ascending: the zero-flux oracle.
pub fn free_spectrum(n: usize) -> Vec<f64> {
    let mut evals = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            evals.push(
                4.0 - 2.0 * (TAU * j as f64 / n as f64).cos()
                    - 2.0 * (TAU * k as f64 / n as f64).cos(),
            );
        }
    }
    evals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    evals
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn model_validation() {
        assert!(LatticeModel::new(3, 1).is_err());
        assert!(LatticeModel::new(8, 0).is_err());
        assert!(LatticeModel::new(8, 16).is_err()); // 4*16 = 256 = N^2
        assert!(LatticeModel::new(8, 15).is_ok());
        assert!(LatticeModel::free(8).is_ok());
    }

    #[test]
    fn flux_per_plaquette_is_exact() {
        let m = LatticeModel::new(64, 8).unwrap();
        assert_eq!(m.flux_per_plaquette(), Rational::new(1, 512));
    }

    #[test]
    fn operator_is_hermitian_with_unit_hops() {
        for gauge in [Gauge::LandauX, Gauge::LandauY] {
            let m = LatticeModel::new(6, 3).unwrap().with_gauge(gauge);
            let h = build_magnetic_laplacian(&m).unwrap();
            assert_eq!(h.hermiticity_defect(), 0.0);
            for (i, row) in h.rows().iter().enumerate() {
                let diag = h.entry(i, i);
                assert_eq!(diag, Complex64::new(4.0, 0.0));
                let off: Vec<_> = row.iter().filter(|&&(j, _)| j != i).collect();
                assert_eq!(off.len(), 4, "row {i} must have 4 neighbours");
                for &&(_, v) in &off {
                    assert!((v.norm() - 1.0).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn quadratic_form_is_nonnegative() {
        let m = LatticeModel::new(8, 3).unwrap();
        let h = build_magnetic_laplacian(&m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut y = vec![Complex64::ZERO; h.dim()];
        for _ in 0..1000 {
            let v: Vec<Complex64> = (0..h.dim())
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            h.matvec(&v, &mut y);
            let q: f64 = v.iter().zip(&y).map(|(a, b)| (a.conj() * b).re).sum();
            assert!(q >= -1e-12, "quadratic form dipped to {q}");
        }
    }

    #[test]
    fn fractional_total_flux_is_rejected() {
        let err = build_with_flux(8, 8.5, Gauge::LandauX);
        assert!(matches!(err, Err(Error::FluxInconsistency { .. })));
        let err = build_with_flux(8, 8.5, Gauge::LandauY);
        assert!(matches!(err, Err(Error::FluxInconsistency { .. })));
    }

    #[test]
    fn gershgorin_bound_is_eight() {
        let m = LatticeModel::new(10, 5).unwrap();
        let h = build_magnetic_laplacian(&m).unwrap();
        assert!((h.gershgorin_upper() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn free_spectrum_bounds() {
        let s = free_spectrum(8);
        assert_eq!(s.len(), 64);
        assert!(s[0].abs() < 1e-15);
        assert!((s[63] - 8.0).abs() < 1e-15);
    }
}
