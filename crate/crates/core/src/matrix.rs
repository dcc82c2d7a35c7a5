//! Dense complex square matrices used as finite-dimensional operator representatives.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::LinalgError;

/// Dense complex square matrix standing in for a closed operator on a
/// finite-dimensional truncation of the state space.
///
/// Invariants enforced at construction: the matrix is square and every
/// entry is finite. Values are immutable once built; all operations
/// return new matrices, so sharing across threads is safe.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    data: Array2<Complex64>,
}

impl OperatorMatrix {
    /// Wrap a dense array, checking squareness and finiteness.
    pub fn new(data: Array2<Complex64>) -> Result<Self, LinalgError> {
        let (rows, cols) = data.dim();
        if rows != cols {
            return Err(LinalgError::NonSquare { rows, cols });
        }
        if rows == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(Self { data })
    }

    /// Internal constructor for arithmetic results whose operands were
    /// already validated. Debug builds still check the invariants.
    pub(crate) fn from_valid(data: Array2<Complex64>) -> Self {
        debug_assert_eq!(data.nrows(), data.ncols());
        debug_assert!(data.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        Self { data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_valid(Array2::from_diag_elem(n, Complex64::new(1.0, 0.0)))
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_valid(Array2::zeros((n, n)))
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Array2::zeros((n, n));
        for (i, &d) in diag.iter().enumerate() {
            m[[i, i]] = d;
        }
        Self::from_valid(m)
    }

    /// Build an n-by-n matrix from an entry function (row, col) -> value.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self, LinalgError> {
        Self::new(Array2::from_shape_fn((n, n), |(i, j)| f(i, j)))
    }

    /// Build from row-major real/imaginary pairs.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::NonSquare {
                rows: n,
                cols: rows.iter().map(|r| r.len()).max().unwrap_or(0),
            });
        }
        let mut m = Array2::zeros((n, n));
        for (i, row) in rows.iter().enumerate() {
            for (j, &z) in row.iter().enumerate() {
                m[[i, j]] = z;
            }
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn array(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[[i, j]]
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        Self::from_valid(self.data.dot(&rhs.data))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_valid(&self.data + &rhs.data)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_valid(&self.data - &rhs.data)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_valid(self.data.mapv(|z| z * c))
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    /// Returns self + c·I.
    pub fn add_scaled_identity(&self, c: Complex64) -> Self {
        let mut m = self.data.clone();
        for i in 0..self.dim() {
            m[[i, i]] += c;
        }
        Self::from_valid(m)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_valid(self.data.t().mapv(|z| z.conj()))
    }

    pub fn trace(&self) -> Complex64 {
        self.data.diag().sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|i| self.data[[i, j]].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// ‖self − other‖_F.
    pub fn dist_fro(&self, other: &Self) -> f64 {
        self.sub(other).fro_norm()
    }

    /// ‖self − other‖_F / max(‖other‖_F, floor); the relative-error metric
    /// used throughout the checks.
    pub fn rel_dist_fro(&self, other: &Self) -> f64 {
        let denom = other.fro_norm().max(1e-300);
        self.dist_fro(other) / denom
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.data[[i, j]] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Adjoint-matrix-vector product, A^H x.
    pub fn apply_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                acc += self.data[[i, j]].conj() * x[i];
            }
            y[j] = acc;
        }
        y
    }

    /// Estimate of the spectral norm ‖A‖₂ by power iteration on A^H A.
    /// Deterministic start vector; adequate for certificates and bounds,
    /// not a certified value.
    pub fn two_norm_est(&self) -> f64 {
        let n = self.dim();
        let mut x: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(1.0 + 0.3 * ((i % 7) as f64), 0.1 * ((i % 3) as f64)))
            .collect();
        normalize(&mut x);
        let mut sigma = 0.0f64;
        for _ in 0..60 {
            let y = self.apply(&x);
            let mut z = self.apply_adjoint(&y);
            let norm_z = vec_norm(&z);
            if norm_z == 0.0 {
                return 0.0;
            }
            for v in z.iter_mut() {
                *v /= norm_z;
            }
            let new_sigma = vec_norm(&self.apply(&z));
            x = z;
            if (new_sigma - sigma).abs() <= 1e-12 * new_sigma.max(1e-300) {
                return new_sigma;
            }
            sigma = new_sigma;
        }
        sigma
    }
}

pub(crate) fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn normalize(x: &mut [Complex64]) {
    let n = vec_norm(x);
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
}

/// Shorthand constructor for a real complex number.
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_square() {
        let m = Array2::<Complex64>::zeros((2, 3));
        assert!(matches!(
            OperatorMatrix::new(m),
            Err(LinalgError::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = Array2::<Complex64>::zeros((2, 2));
        m[[0, 1]] = cx(f64::NAN, 0.0);
        assert!(matches!(OperatorMatrix::new(m), Err(LinalgError::NonFinite)));
    }

    #[test]
    fn norms_and_arithmetic() {
        let a = OperatorMatrix::from_diag(&[cx(3.0, 0.0), cx(0.0, 4.0)]);
        assert!((a.fro_norm() - 5.0).abs() < 1e-14);
        assert!((a.one_norm() - 4.0).abs() < 1e-14);
        let i = OperatorMatrix::identity(2);
        assert!((a.matmul(&i).dist_fro(&a)) < 1e-15);
        assert!((a.add(&a.neg()).fro_norm()) < 1e-15);
        let shifted = a.add_scaled_identity(cx(1.0, 0.0));
        assert_eq!(shifted.get(0, 0), cx(4.0, 0.0));
        assert_eq!(shifted.get(1, 1), cx(1.0, 4.0));
    }

    #[test]
    fn two_norm_of_diagonal() {
        let a = OperatorMatrix::from_diag(&[cx(2.0, 0.0), cx(-7.0, 0.0), cx(0.0, 3.0)]);
        assert!((a.two_norm_est() - 7.0).abs() < 1e-9);
    }

    #[test]
    fn adjoint_flips_and_conjugates() {
        let a = OperatorMatrix::from_rows(&[
            vec![cx(1.0, 2.0), cx(3.0, -1.0)],
            vec![cx(0.0, 0.5), cx(-2.0, 0.0)],
        ])
        .unwrap();
        let ah = a.adjoint();
        assert_eq!(ah.get(0, 1), cx(0.0, -0.5));
        assert_eq!(ah.get(1, 0), cx(3.0, 1.0));
    }
}
