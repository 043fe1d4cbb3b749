//! Mean charge transport and Hall conductance as exact fractions.
//!
//! The adiabatic transport pairing on a quotient surface reduces to an
//! integer bilinear form: push two 1-cycles of the base into the first
//! homology of the cover and evaluate the intersection form there. The mean
//! coefficients are then exact rational multiples of the physical units,
//!
//! ```text
//! <Q>(beta, delta)       = s * (e / |G|)     * (M beta)^T J (M delta)
//! <sigma_H>(beta, delta) = s * (e^2 / h|G|)  * (M beta)^T J (M delta) ,
//! ```
//!
//! with `J` the (antisymmetric, unimodular) intersection matrix on the
//! cover, `M` the pushforward on first homology, and `s` a global
//! orientation sign on which sources disagree: both `s = -1`
//! ([`SignConvention::Theorem`]) and `s = +1` ([`SignConvention::Proof`])
//! are in circulation, so both are exposed and nothing here guesses which
//! is intended — the toggle flips the sign only, never a magnitude.
//! `|G| * conductance` is an integer in either convention: fractional
//! quantisation with denominator `|G|`.
//!
//! Physical constants enter as unit tags only; every numeric value in this
//! module is an exact integer or `Rational`.

use serde::{Deserialize, Serialize};

use crate::covers::GaloisCoverData;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Global sign convention for the transport coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    /// `-1/|G| * e^2/h` per unit pairing.
    #[default]
    Theorem,
    /// `+1/|G| * e^2/h` per unit pairing.
    Proof,
}

impl SignConvention {
    pub fn sign(self) -> i64 {
        match self {
            SignConvention::Theorem => -1,
            SignConvention::Proof => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignConvention::Theorem => "theorem",
            SignConvention::Proof => "proof",
        }
    }
}

impl std::str::FromStr for SignConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(SignConvention::Theorem),
            "proof" => Ok(SignConvention::Proof),
            other => Err(Error::InvalidInput(format!(
                "unknown sign convention `{other}` (expected `theorem` or `proof`)"
            ))),
        }
    }
}

/// Dense integer matrix with exact (i128 internal) arithmetic; sizes here
/// are a few times the genus, so nothing clever is needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                detail: "ragged matrix rows".into(),
            });
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Block-diagonal standard symplectic form of size `2g`:
    /// blocks `[[0, 1], [-1, 0]]`.
    pub fn standard_symplectic(genus: usize) -> Self {
        let mut m = IntMatrix::zeros(2 * genus, 2 * genus);
        for i in 0..genus {
            m[(2 * i, 2 * i + 1)] = 1;
            m[(2 * i + 1, 2 * i)] = -1;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -self[(j, i)]))
    }

    /// Matrix-vector product, exact.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                detail: format!("matrix has {} columns, vector has {}", self.cols, v.len()),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)] as i128 * v[j] as i128)
                    .sum::<i128>() as i64
            })
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination, exact in i128.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut prev = 1i128;
        let mut sign = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] =
                        (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
                a[i * n + k] = 0;
            }
            prev = a[k * n + k];
        }
        sign * a[n * n - 1]
    }

    /// Rank over the rationals by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..m).find(|&i| a[i * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                a.swap(row * n + j, p * n + j);
            }
            for i in 0..m {
                if i != row && a[i * n + col] != 0 {
                    let (num, den) = (a[i * n + col], a[row * n + col]);
                    for j in 0..n {
                        a[i * n + j] = a[i * n + j] * den - a[row * n + j] * num;
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == m {
                break;
            }
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// The homological data feeding the transport pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportSetup {
    group_order: u64,
    intersection_matrix: IntMatrix,
    pushforward: IntMatrix,
}

impl TransportSetup {
    /// Validates: `J` square of even size, antisymmetric, `|det J| = 1`;
    /// `M` of shape `2g_X x 2g_Y` with full column rank and even column
    /// count.
    pub fn new(
        group_order: u64,
        intersection_matrix: IntMatrix,
        pushforward: IntMatrix,
    ) -> Result<Self> {
        if group_order == 0 {
            return Err(Error::InvalidInput("group order must be positive".into()));
        }
        let j = &intersection_matrix;
        if j.nrows() != j.ncols() || !j.nrows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "intersection matrix must be square of even size, got {}x{}",
                    j.nrows(),
                    j.ncols()
                ),
            });
        }
        if !j.is_antisymmetric() {
            return Err(Error::InvalidInput(
                "intersection matrix must be antisymmetric".into(),
            ));
        }
        if j.determinant().abs() != 1 {
            return Err(Error::InvalidInput(format!(
                "intersection matrix must be unimodular, |det| = {}",
                j.determinant().abs()
            )));
        }
        let m = &pushforward;
        if m.nrows() != j.nrows() || !m.ncols().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "pushforward must be {}x2g_Y, got {}x{}",
                    j.nrows(),
                    m.nrows(),
                    m.ncols()
                ),
            });
        }
        if m.rank() != m.ncols() {
            return Err(Error::InvalidInput(
                "pushforward must have full column rank".into(),
            ));
        }
        Ok(TransportSetup {
            group_order,
            intersection_matrix,
            pushforward,
        })
    }

    /// Builds the setup from cover data, checking that the matrices match
    /// the derived cover genus.
    pub fn with_cover(
        cover: &GaloisCoverData,
        intersection_matrix: IntMatrix,
        pushforward: IntMatrix,
    ) -> Result<Self> {
        if intersection_matrix.nrows() != 2 * cover.cover_genus() as usize {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "intersection matrix size {} does not match 2 g_X = {}",
                    intersection_matrix.nrows(),
                    2 * cover.cover_genus()
                ),
            });
        }
        TransportSetup::new(cover.group_order(), intersection_matrix, pushforward)
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn intersection_matrix(&self) -> &IntMatrix {
        &self.intersection_matrix
    }

    pub fn pushforward(&self) -> &IntMatrix {
        &self.pushforward
    }

    /// Base genus `g_Y` inferred from the pushforward shape.
    pub fn base_genus(&self) -> usize {
        self.pushforward.ncols() / 2
    }
}

/// Mean transport coefficients: exact fractions of `e` and `e^2/h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransportCoefficients {
    /// Coefficient of the electron charge `e`.
    pub charge_transport: Rational,
    /// Coefficient of the conductance quantum `e^2/h`; the same fraction.
    pub conductance: Rational,
    pub sign_convention: SignConvention,
}

/// `(M beta)^T J (M delta)`, the intersection number of the pushed cycles.
pub fn intersection_pairing(setup: &TransportSetup, beta: &[i64], delta: &[i64]) -> Result<i64> {
    let expected = 2 * setup.base_genus();
    if beta.len() != expected || delta.len() != expected {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "cycles must have length 2 g_Y = {expected}, got {} and {}",
                beta.len(),
                delta.len()
            ),
        });
    }
    let mb = setup.pushforward.apply(beta)?;
    let md = setup.pushforward.apply(delta)?;
    let jmd = setup.intersection_matrix.apply(&md)?;
    Ok(mb
        .iter()
        .zip(&jmd)
        .map(|(&a, &b)| a as i128 * b as i128)
        .sum::<i128>() as i64)
}

/// Mean adiabatic charge transport and Hall conductance for a pair of base
/// cycles: `s/|G|` times the intersection pairing, as one exact fraction
/// carried by both units.
pub fn mean_transport(
    setup: &TransportSetup,
    beta: &[i64],
    delta: &[i64],
    convention: SignConvention,
) -> Result<TransportCoefficients> {
    let pairing = intersection_pairing(setup, beta, delta)?;
    let value = Rational::new(convention.sign() * pairing, setup.group_order as i64);
    Ok(TransportCoefficients {
        charge_transport: value,
        conductance: value,
        sign_convention: convention,
    })
}

/// The full `2g_Y x 2g_Y` table of conductance fractions over the standard
/// basis cycles. Antisymmetric; every denominator divides `|G|`.
pub fn conductance_table(setup: &TransportSetup, convention: SignConvention) -> Vec<Vec<Rational>> {
    let dim = 2 * setup.base_genus();
    let basis: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect();
    (0..dim)
        .map(|k| {
            (0..dim)
                .map(|j| {
                    mean_transport(setup, &basis[k], &basis[j], convention)
                        .expect("basis vectors have the right length")
                        .conductance
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_identity_setup(group_order: u64) -> TransportSetup {
        TransportSetup::new(
            group_order,
            IntMatrix::standard_symplectic(1),
            IntMatrix::identity(2),
        )
        .unwrap()
    }

    #[test]
    fn pairing_on_standard_symplectic_basis() {
        let s = torus_identity_setup(1);
        assert_eq!(intersection_pairing(&s, &[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(intersection_pairing(&s, &[0, 1], &[1, 0]).unwrap(), -1);
        assert_eq!(intersection_pairing(&s, &[1, 0], &[1, 0]).unwrap(), 0);
    }

    #[test]
    fn pairing_vanishes_on_genus_zero_base() {
        // pillowcase cover: g_X = 1 upstairs, g_Y = 0 downstairs
        let s = TransportSetup::new(2, IntMatrix::standard_symplectic(1), IntMatrix::zeros(2, 0))
            .unwrap();
        assert_eq!(s.base_genus(), 0);
        assert_eq!(intersection_pairing(&s, &[], &[]).unwrap(), 0);
        assert!(conductance_table(&s, SignConvention::Theorem).is_empty());
    }

    #[test]
    fn half_conductance_under_both_conventions() {
        let s = torus_identity_setup(2);
        let theorem = mean_transport(&s, &[1, 0], &[0, 1], SignConvention::Theorem).unwrap();
        assert_eq!(theorem.conductance, Rational::new(-1, 2));
        assert_eq!(theorem.charge_transport, Rational::new(-1, 2));
        let proof = mean_transport(&s, &[1, 0], &[0, 1], SignConvention::Proof).unwrap();
        assert_eq!(proof.conductance, Rational::new(1, 2));
    }

    #[test]
    fn identity_group_gives_integer_quantisation() {
        let s = torus_identity_setup(1);
        let t = mean_transport(&s, &[1, 0], &[0, 1], SignConvention::Theorem).unwrap();
        assert_eq!(t.conductance, Rational::from_integer(-1));
    }

    #[test]
    fn zero_pairing_gives_zero_transport() {
        let s = torus_identity_setup(7);
        let t = mean_transport(&s, &[1, 0], &[1, 0], SignConvention::Theorem).unwrap();
        assert_eq!(t.conductance, Rational::zero());
    }

    #[test]
    fn table_matches_example() {
        let s = torus_identity_setup(1);
        let table = conductance_table(&s, SignConvention::Theorem);
        assert_eq!(
            table,
            vec![
                vec![Rational::zero(), Rational::from_integer(-1)],
                vec![Rational::from_integer(1), Rational::zero()],
            ]
        );
    }

    #[test]
    fn table_is_antisymmetric() {
        let j = IntMatrix::standard_symplectic(2);
        let m =
            IntMatrix::from_rows(vec![vec![1, 0], vec![2, 1], vec![0, 3], vec![1, -1]]).unwrap();
        let s = TransportSetup::new(6, j, m).unwrap();
        let table = conductance_table(&s, SignConvention::Theorem);
        for (k, row) in table.iter().enumerate() {
            for (l, value) in row.iter().enumerate() {
                assert_eq!(*value, -table[l][k]);
                assert!(6 % value.denominator() == 0);
            }
        }
    }

    #[test]
    fn rejects_bad_setups() {
        // not antisymmetric
        assert!(TransportSetup::new(1, IntMatrix::identity(2), IntMatrix::identity(2)).is_err());
        // not unimodular
        let j = IntMatrix::from_rows(vec![vec![0, 2], vec![-2, 0]]).unwrap();
        assert!(TransportSetup::new(1, j, IntMatrix::identity(2)).is_err());
        // rank-deficient pushforward
        let m = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(TransportSetup::new(1, IntMatrix::standard_symplectic(1), m).is_err());
        // odd-size intersection matrix
        let j = IntMatrix::from_rows(vec![vec![0]]).unwrap();
        assert!(TransportSetup::new(1, j, IntMatrix::zeros(1, 0)).is_err());
    }

    #[test]
    fn dimension_mismatch_in_pairing() {
        let s = torus_identity_setup(1);
        assert!(matches!(
            intersection_pairing(&s, &[1, 0, 0], &[0, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn determinant_and_rank_basics() {
        assert_eq!(IntMatrix::standard_symplectic(3).determinant(), 1);
        assert_eq!(IntMatrix::identity(4).determinant(), 1);
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(m.determinant(), 6);
        assert_eq!(m.rank(), 2);
        let singular = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(singular.determinant(), 0);
        assert_eq!(singular.rank(), 1);
    }
}
