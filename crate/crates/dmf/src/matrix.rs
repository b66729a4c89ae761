//! Small dense matrix algebra and Lie algebra structure constants.
//!
//! Everything here operates on tiny matrices (2x2 and 3x3 in practice): group
//! representations, rotation blocks, adjoint matrices, and the basis matrices
//! built from structure constants. Storage is a flat row-major array of `f64`.

use crate::error::{Error, Result};

/// Dense real square matrix, row-major.
///
/// ```
/// use dmf::matrix::SquareMatrix;
/// let a = SquareMatrix::identity(3);
/// let b = SquareMatrix::new(3, vec![1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 4.0]).unwrap();
/// assert_eq!(a.mul(&b).get(2, 2), 4.0);
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SquareMatrix {
    /// Builds a matrix from row-major entries. Rejects non-finite values and
    /// length mismatches.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Parameter(format!(
                "matrix needs {}x{} = {} entries, got {}",
                dim,
                dim,
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { dim, entries })
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1.0;
        }
        m
    }

    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![0.0; dim * dim] }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at `(row, col)`, zero-based.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    /// Sets the entry at `(row, col)`, zero-based.
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { dim: self.dim, entries }
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { dim: self.dim, entries }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Row vector times matrix: `v * self`.
    pub fn row_mul(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let d = self.dim;
        (0..d)
            .map(|j| (0..d).map(|i| v[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Matrix times column vector: `self * v`.
    pub fn col_mul(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// Maximum absolute row sum (operator infinity-norm).
    pub fn inf_norm(&self) -> f64 {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Determinant by partial-pivot elimination.
    pub fn det(&self) -> f64 {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut det = 1.0;
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&r, &s| {
                    a[r * d + col].abs().partial_cmp(&a[s * d + col].abs()).unwrap()
                })
                .unwrap();
            if a[pivot * d + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..d {
                    a.swap(pivot * d + j, col * d + j);
                }
                det = -det;
            }
            det *= a[col * d + col];
            for row in col + 1..d {
                let f = a[row * d + col] / a[col * d + col];
                for j in col..d {
                    a[row * d + j] -= f * a[col * d + j];
                }
            }
        }
        det
    }
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
///
/// Fails when `|det| <= 1e-14`; the threshold sits well above double rounding
/// for the O(1)-magnitude matrices this crate handles.
pub fn mat_inverse(m: &SquareMatrix) -> Result<SquareMatrix> {
    let det = m.det();
    if !(det.abs() > 1e-14) {
        return Err(Error::Singular { det });
    }
    let d = m.dim();
    let mut a = m.clone();
    let mut inv = SquareMatrix::identity(d);
    for col in 0..d {
        let pivot = (col..d)
            .max_by(|&r, &s| a.get(r, col).abs().partial_cmp(&a.get(s, col).abs()).unwrap())
            .unwrap();
        if pivot != col {
            for j in 0..d {
                let (x, y) = (a.get(pivot, j), a.get(col, j));
                a.set(pivot, j, y);
                a.set(col, j, x);
                let (x, y) = (inv.get(pivot, j), inv.get(col, j));
                inv.set(pivot, j, y);
                inv.set(col, j, x);
            }
        }
        let p = a.get(col, col);
        for j in 0..d {
            a.set(col, j, a.get(col, j) / p);
            inv.set(col, j, inv.get(col, j) / p);
        }
        for row in 0..d {
            if row == col {
                continue;
            }
            let f = a.get(row, col);
            if f == 0.0 {
                continue;
            }
            for j in 0..d {
                a.set(row, j, a.get(row, j) - f * a.get(col, j));
                inv.set(row, j, inv.get(row, j) - f * inv.get(col, j));
            }
        }
    }
    Ok(inv)
}

/// Matrix exponential by scaling-and-squaring over a fixed-order Taylor series.
///
/// Accurate to better than 1e-12 relative in operator norm for inputs with
/// norm up to 20; exact on the zero matrix.
///
/// ```
/// use dmf::matrix::{mat_exp, SquareMatrix};
/// let n = SquareMatrix::new(2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
/// let e = mat_exp(&n).unwrap();
/// assert!((e.get(0, 1) - 1.0).abs() < 1e-15);
/// ```
pub fn mat_exp(m: &SquareMatrix) -> Result<SquareMatrix> {
    if m.entries().iter().any(|e| !e.is_finite()) {
        return Err(Error::NonFinite("mat_exp input"));
    }
    let norm = m.inf_norm();
    // Squarings bring the series argument below 1/2, where 18 Taylor terms
    // leave a truncation error far under 1e-16.
    let squarings = if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as u32
    };
    let scaled = m.scale(0.5f64.powi(squarings as i32));
    let d = m.dim();
    let mut sum = SquareMatrix::identity(d);
    let mut term = SquareMatrix::identity(d);
    for k in 1..=18 {
        term = term.mul(&scaled).scale(1.0 / k as f64);
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    Ok(sum)
}

/// Structure constants of a finite-dimensional Lie algebra.
///
/// `c(i, j, k)` is the coefficient of the k-th basis vector in the bracket of
/// the i-th and j-th (all indices zero-based internally, but construction and
/// lookup use 1-based indices to match the usual basis labels).
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<f64>,
}

impl StructureConstants {
    /// Builds an all-zero tensor for an algebra of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self { dim, c: vec![0.0; dim * dim * dim] }
    }

    /// Algebra dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `c_{ij}^k` and its antisymmetric partner `c_{ji}^k = -c_{ij}^k`.
    /// Indices are 1-based.
    pub fn set_pair(&mut self, i: usize, j: usize, k: usize, value: f64) -> Result<()> {
        for idx in [i, j, k] {
            if idx == 0 || idx > self.dim {
                return Err(Error::BasisIndex { index: idx, dim: self.dim });
            }
        }
        let d = self.dim;
        self.c[(i - 1) * d * d + (j - 1) * d + (k - 1)] = value;
        self.c[(j - 1) * d * d + (i - 1) * d + (k - 1)] = -value;
        Ok(())
    }

    /// Looks up `c_{ij}^k` with 1-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        let d = self.dim;
        self.c[(i - 1) * d * d + (j - 1) * d + (k - 1)]
    }

    /// Basis matrix `C_j` with entry `c_{ij}^k` at row `k`, column `i`
    /// (1-based `j`). These are the factors in the exponential-product form
    /// of the adjoint representation.
    pub fn basis_matrix(&self, j: usize) -> Result<SquareMatrix> {
        if j == 0 || j > self.dim {
            return Err(Error::BasisIndex { index: j, dim: self.dim });
        }
        let d = self.dim;
        let mut m = SquareMatrix::zeros(d);
        for k in 1..=d {
            for i in 1..=d {
                m.set(k - 1, i - 1, self.get(i, j, k));
            }
        }
        Ok(m)
    }
}

/// Checks antisymmetry and the Jacobi identity to 1e-12 absolute.
pub fn validate_structure(sc: &StructureConstants) -> bool {
    let d = sc.dim();
    let tol = 1e-12;
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                if (sc.get(i, j, k) + sc.get(j, i, k)).abs() > tol {
                    return false;
                }
            }
        }
    }
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                for l in 1..=d {
                    let mut s = 0.0;
                    for m in 1..=d {
                        s += sc.get(i, j, m) * sc.get(m, k, l)
                            + sc.get(j, k, m) * sc.get(m, i, l)
                            + sc.get(k, i, m) * sc.get(m, j, l);
                    }
                    if s.abs() > tol {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Adjoint representation of a group element written as an ordered product of
/// one-parameter factors: returns the product over `factors` of
/// `exp(a * C_r)`, where `(r, a)` is a 1-based basis index and coordinate.
///
/// An empty factor list yields the identity.
pub fn adjoint_from_structure(
    sc: &StructureConstants,
    factors: &[(usize, f64)],
) -> Result<SquareMatrix> {
    let mut out = SquareMatrix::identity(sc.dim());
    for &(r, a) in factors {
        let c = sc.basis_matrix(r)?;
        out = out.mul(&mat_exp(&c.scale(a))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn max_diff(a: &SquareMatrix, b: &SquareMatrix) -> f64 {
        a.sub(b).max_norm()
    }

    /// Straight truncated-series exponential, the independent oracle for
    /// `mat_exp` on small-norm inputs.
    fn exp_series(m: &SquareMatrix, terms: usize) -> SquareMatrix {
        let mut sum = SquareMatrix::identity(m.dim());
        let mut t = SquareMatrix::identity(m.dim());
        for k in 1..=terms {
            t = t.mul(m).scale(1.0 / k as f64);
            sum = sum.add(&t);
        }
        sum
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = SquareMatrix::zeros(3);
        assert_eq!(mat_exp(&z).unwrap(), SquareMatrix::identity(3));
    }

    #[test]
    fn exp_of_diagonal() {
        // Diagonal (0, 3a, a) with a = 1 exponentiates entrywise.
        let mut m = SquareMatrix::zeros(3);
        m.set(1, 1, 3.0);
        m.set(2, 2, 1.0);
        let e = mat_exp(&m).unwrap();
        assert!((e.get(0, 0) - 1.0).abs() < 1e-14);
        assert!((e.get(1, 1) - 3.0f64.exp()).abs() < 1e-12 * 3.0f64.exp());
        assert!((e.get(2, 2) - 1.0f64.exp()).abs() < 1e-12 * 1.0f64.exp());
    }

    #[test]
    fn exp_of_nilpotent_is_i_plus_n() {
        let mut n = SquareMatrix::zeros(3);
        n.set(1, 0, -4.5);
        n.set(2, 0, 2.25);
        assert_eq!(n.mul(&n).max_norm(), 0.0);
        let e = mat_exp(&n).unwrap();
        let expected = SquareMatrix::identity(3).add(&n);
        assert!(max_diff(&e, &expected) < 1e-14);
    }

    #[test]
    fn exp_matches_series_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let entries: Vec<f64> = (0..9).map(|_| rng.gen_range(-0.3..0.3)).collect();
            let m = SquareMatrix::new(3, entries).unwrap();
            let oracle = exp_series(&m, 30);
            let got = mat_exp(&m).unwrap();
            assert!(max_diff(&got, &oracle) < 1e-14);
        }
    }

    #[test]
    fn exp_times_exp_of_negative_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let entries: Vec<f64> = (0..9).map(|_| rng.gen_range(-1.6..1.6)).collect();
            let m = SquareMatrix::new(3, entries).unwrap();
            let prod = mat_exp(&m).unwrap().mul(&mat_exp(&m.scale(-1.0)).unwrap());
            assert!(max_diff(&prod, &SquareMatrix::identity(3)) < 1e-10);
        }
    }

    #[test]
    fn exp_large_norm_accuracy_via_halving() {
        // exp(m) must equal exp(m/2)^2; checks the squaring phase at norm ~20.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let entries: Vec<f64> = (0..9).map(|_| rng.gen_range(-6.0..6.0)).collect();
        let m = SquareMatrix::new(3, entries).unwrap();
        let half = mat_exp(&m.scale(0.5)).unwrap();
        let whole = mat_exp(&m).unwrap();
        let rel = max_diff(&whole, &half.mul(&half)) / whole.inf_norm();
        assert!(rel < 1e-12, "rel = {rel:.3e}");
    }

    #[test]
    fn exp_rejects_non_finite() {
        let m = SquareMatrix { dim: 2, entries: vec![f64::NAN, 0.0, 0.0, 0.0] };
        assert!(matches!(mat_exp(&m), Err(Error::NonFinite(_))));
    }

    #[test]
    fn inverse_of_identity() {
        let i = SquareMatrix::identity(3);
        assert!(max_diff(&mat_inverse(&i).unwrap(), &i) < 1e-15);
    }

    #[test]
    fn inverse_of_diagonal() {
        let m = SquareMatrix::new(3, vec![8.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let inv = mat_inverse(&m).unwrap();
        assert!((inv.get(0, 0) - 0.125).abs() < 1e-15);
        assert!((inv.get(1, 1) - 0.5).abs() < 1e-15);
        assert!((inv.get(2, 2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_of_homogeneous_group_matrix() {
        // Upper-triangular representation with (lambda, a, b) = (2, 1, 3);
        // the inverse carries lambda^-3, -a/lambda^3, lambda^-1, -b/lambda.
        let (l, a, b) = (2.0f64, 1.0, 3.0);
        let m = SquareMatrix::new(
            3,
            vec![l.powi(3), 0.0, a, 0.0, l, b, 0.0, 0.0, 1.0],
        )
        .unwrap();
        let inv = mat_inverse(&m).unwrap();
        assert!((inv.get(0, 0) - 0.125).abs() < 1e-14);
        assert!((inv.get(0, 2) + 0.125).abs() < 1e-14);
        assert!((inv.get(1, 1) - 0.5).abs() < 1e-14);
        assert!((inv.get(1, 2) + 1.5).abs() < 1e-14);
        assert!(max_diff(&m.mul(&inv), &SquareMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn inverse_rejects_singular() {
        let m = SquareMatrix::new(2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(matches!(mat_inverse(&m), Err(Error::Singular { .. })));
    }

    fn scaling_structure() -> StructureConstants {
        let mut sc = StructureConstants::zeros(3);
        sc.set_pair(1, 2, 2, -3.0).unwrap();
        sc.set_pair(1, 3, 3, -1.0).unwrap();
        sc
    }

    fn twist_structure() -> StructureConstants {
        let mut sc = StructureConstants::zeros(3);
        sc.set_pair(1, 2, 3, -1.0).unwrap();
        sc.set_pair(1, 3, 2, -1.0).unwrap();
        sc
    }

    #[test]
    fn validate_structure_accepts_catalogue_algebras() {
        assert!(validate_structure(&scaling_structure()));
        assert!(validate_structure(&twist_structure()));
        assert!(validate_structure(&StructureConstants::zeros(3)));
    }

    #[test]
    fn validate_structure_rejects_symmetric_tensor() {
        let mut sc = StructureConstants::zeros(3);
        let d = 3;
        sc.c[(1 - 1) * d * d + (2 - 1) * d + (1 - 1)] = 1.0;
        sc.c[(2 - 1) * d * d + (1 - 1) * d + (1 - 1)] = 1.0;
        assert!(!validate_structure(&sc));
    }

    #[test]
    fn adjoint_from_structure_scaling_group() {
        let sc = scaling_structure();
        let (lambda, a, b) = (1.7f64, -0.4, 0.9);
        let ad = adjoint_from_structure(&sc, &[(3, b), (2, a), (1, lambda.ln())]).unwrap();
        let expected = SquareMatrix::new(
            3,
            vec![
                1.0, 0.0, 0.0,
                -3.0 * a, lambda.powi(3), 0.0,
                -b, 0.0, lambda,
            ],
        )
        .unwrap();
        assert!(max_diff(&ad, &expected) < 1e-13);
    }

    #[test]
    fn adjoint_from_structure_twist_boost() {
        let sc = twist_structure();
        let a1 = 0.8f64;
        let ad = adjoint_from_structure(&sc, &[(1, a1)]).unwrap();
        let expected = SquareMatrix::new(
            3,
            vec![
                1.0, 0.0, 0.0,
                0.0, a1.cosh(), a1.sinh(),
                0.0, a1.sinh(), a1.cosh(),
            ],
        )
        .unwrap();
        assert!(max_diff(&ad, &expected) < 1e-13);
    }

    #[test]
    fn adjoint_empty_factor_list_is_identity() {
        let sc = scaling_structure();
        let ad = adjoint_from_structure(&sc, &[]).unwrap();
        assert_eq!(ad, SquareMatrix::identity(3));
    }

    #[test]
    fn adjoint_rejects_out_of_range_index() {
        let sc = scaling_structure();
        assert!(matches!(
            adjoint_from_structure(&sc, &[(4, 1.0)]),
            Err(Error::BasisIndex { .. })
        ));
    }

    #[test]
    fn adjoint_is_homomorphism_under_factor_concatenation() {
        let sc = twist_structure();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let f1: Vec<(usize, f64)> =
                (1..=3).map(|r| (r, rng.gen_range(-1.0..1.0))).collect();
            let f2: Vec<(usize, f64)> =
                (1..=3).map(|r| (r, rng.gen_range(-1.0..1.0))).collect();
            let mut both = f1.clone();
            both.extend_from_slice(&f2);
            let lhs = adjoint_from_structure(&sc, &both).unwrap();
            let rhs = adjoint_from_structure(&sc, &f1)
                .unwrap()
                .mul(&adjoint_from_structure(&sc, &f2).unwrap());
            assert!(max_diff(&lhs, &rhs) < 1e-10);
            assert!(lhs.det().abs() > 1e-10);
        }
    }

    #[test]
    fn row_and_col_products() {
        let m = SquareMatrix::new(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.row_mul(&[1.0, 1.0]), vec![4.0, 6.0]);
        assert_eq!(m.col_mul(&[1.0, 1.0]), vec![3.0, 7.0]);
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = SquareMatrix::new(3, vec![0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        assert!((m.det() + 2.0).abs() < 1e-14);
    }
}
