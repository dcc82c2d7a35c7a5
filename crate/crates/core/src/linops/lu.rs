//! Complex LU factorization with partial pivoting, plus the norm and
//! condition estimators built on top of it.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::LinalgError;
use crate::matrix::{normalize, vec_norm, OperatorMatrix};

/// Pivot threshold below which the factorization reports SingularMatrix.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// In-place LU factors of PA = LU with row pivots.
pub struct LuFactors {
    lu: Array2<Complex64>,
    piv: Vec<usize>,
    n: usize,
}

pub fn lu_factor(a: &Array2<Complex64>) -> Result<LuFactors, LinalgError> {
    let n = a.nrows();
    let mut lu = a.clone();
    let mut piv = vec![0usize; n];
    for k in 0..n {
        let mut max_val = 0.0f64;
        let mut max_row = k;
        for i in k..n {
            let v = lu[[i, k]].norm();
            if v > max_val {
                max_val = v;
                max_row = i;
            }
        }
        piv[k] = max_row;
        if max_val < PIVOT_FLOOR {
            return Err(LinalgError::SingularMatrix { pivot: max_val });
        }
        if max_row != k {
            for j in 0..n {
                lu.swap([k, j], [max_row, j]);
            }
        }
        let pivot = lu[[k, k]];
        for i in (k + 1)..n {
            let factor = lu[[i, k]] / pivot;
            lu[[i, k]] = factor;
            for j in (k + 1)..n {
                let ukj = lu[[k, j]];
                lu[[i, j]] -= factor * ukj;
            }
        }
    }
    Ok(LuFactors { lu, piv, n })
}

impl LuFactors {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Solve A x = b in place.
    pub fn solve_vec(&self, b: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        for k in 0..n {
            b.swap(k, self.piv[k]);
        }
        // Ly = Pb, L unit lower triangular.
        for i in 1..n {
            let mut acc = b[i];
            for j in 0..i {
                acc -= self.lu[[i, j]] * b[j];
            }
            b[i] = acc;
        }
        // Ux = y.
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in (i + 1)..n {
                acc -= self.lu[[i, j]] * b[j];
            }
            b[i] = acc / self.lu[[i, i]];
        }
    }

    /// Solve A^H x = b in place. With PA = LU this is U^H L^H P x = b.
    pub fn solve_adjoint_vec(&self, b: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        // U^H y = b, U^H lower triangular with diagonal conj(u_ii).
        for i in 0..n {
            let mut acc = b[i];
            for j in 0..i {
                acc -= self.lu[[j, i]].conj() * b[j];
            }
            b[i] = acc / self.lu[[i, i]].conj();
        }
        // L^H z = y, upper triangular with unit diagonal.
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in (i + 1)..n {
                acc -= self.lu[[j, i]].conj() * b[j];
            }
            b[i] = acc;
        }
        // x = P^T z: undo the row swaps in reverse order.
        for k in (0..n).rev() {
            b.swap(k, self.piv[k]);
        }
    }

    /// Solve A X = B column by column.
    pub fn solve_mat(&self, b: &Array2<Complex64>) -> Array2<Complex64> {
        let n = self.n;
        assert_eq!(b.nrows(), n);
        let m = b.ncols();
        let mut x = Array2::zeros((n, m));
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..m {
            for i in 0..n {
                col[i] = b[[i, j]];
            }
            self.solve_vec(&mut col);
            for i in 0..n {
                x[[i, j]] = col[i];
            }
        }
        x
    }

    /// A^{-1} as a dense matrix (solve against the identity).
    pub fn inverse(&self) -> Array2<Complex64> {
        let eye = Array2::from_diag_elem(self.n, Complex64::new(1.0, 0.0));
        self.solve_mat(&eye)
    }

    /// Hager-style estimate of ||A^{-1}||_1 using a handful of solves.
    pub fn inv_one_norm_est(&self) -> f64 {
        let n = self.n;
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut best = 0.0f64;
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let mut y = x.clone();
            self.solve_vec(&mut y);
            let est = y.iter().map(|z| z.norm()).sum::<f64>();
            best = best.max(est);
            // xi_i = y_i / |y_i| (sign vector generalized to complex).
            let mut xi: Vec<Complex64> = y
                .iter()
                .map(|z| {
                    let r = z.norm();
                    if r > 0.0 {
                        z / r
                    } else {
                        Complex64::new(1.0, 0.0)
                    }
                })
                .collect();
            self.solve_adjoint_vec(&mut xi);
            let (j, zj) = xi
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                .map(|(j, z)| (j, z.norm()))
                .unwrap();
            let zx: f64 = xi
                .iter()
                .zip(x.iter())
                .map(|(a, b)| (a.conj() * b).re)
                .sum();
            if zj <= zx.abs() + 1e-15 || j == last_j {
                break;
            }
            last_j = j;
            x = vec![Complex64::new(0.0, 0.0); n];
            x[j] = Complex64::new(1.0, 0.0);
        }
        best
    }

    /// Estimate of the smallest singular value via inverse power iteration
    /// on A^H A (solves with A and A^H).
    pub fn sigma_min_est(&self) -> f64 {
        let n = self.n;
        let mut x: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(1.0 + 0.17 * ((i % 5) as f64), 0.07 * ((i % 4) as f64)))
            .collect();
        normalize(&mut x);
        let mut inv_sigma = 0.0f64;
        for _ in 0..30 {
            let mut y = x.clone();
            self.solve_vec(&mut y);
            self.solve_adjoint_vec(&mut y);
            let ny = vec_norm(&y);
            if !ny.is_finite() || ny == 0.0 {
                return 0.0;
            }
            for v in y.iter_mut() {
                *v /= ny;
            }
            x = y;
            let new_inv = ny.sqrt();
            if (new_inv - inv_sigma).abs() <= 1e-10 * new_inv.max(1e-300) {
                inv_sigma = new_inv;
                break;
            }
            inv_sigma = new_inv;
        }
        if inv_sigma == 0.0 {
            f64::INFINITY
        } else {
            1.0 / inv_sigma
        }
    }
}

/// Condition-number estimate in the 1-norm: ||A||_1 * est(||A^{-1}||_1).
pub fn cond_one_est(a: &OperatorMatrix, factors: &LuFactors) -> f64 {
    a.one_norm() * factors.inv_one_norm_est()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::cx;

    fn random_like(n: usize, k: u64) -> Array2<Complex64> {
        // Small deterministic pseudo-random fill, no external RNG needed here.
        let mut state = k.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        Array2::from_shape_fn((n, n), |_| Complex64::new(next(), next()))
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = random_like(8, 3).mapv(|z| z) + Array2::from_diag_elem(8, cx(4.0, 0.0));
        let f = lu_factor(&a).unwrap();
        let x_true: Vec<Complex64> = (0..8).map(|i| cx(i as f64 - 2.0, 0.5 * i as f64)).collect();
        let mut b = vec![cx(0.0, 0.0); 8];
        for i in 0..8 {
            for j in 0..8 {
                b[i] += a[[i, j]] * x_true[j];
            }
        }
        f.solve_vec(&mut b);
        let err: f64 = b
            .iter()
            .zip(x_true.iter())
            .map(|(a, b)| (a - b).norm())
            .sum();
        assert!(err < 1e-11, "solve error {err}");
    }

    #[test]
    fn adjoint_solve_matches_adjoint_system() {
        let a = random_like(6, 9) + Array2::from_diag_elem(6, cx(3.0, 1.0));
        let f = lu_factor(&a).unwrap();
        let b: Vec<Complex64> = (0..6).map(|i| cx(1.0 + i as f64, -0.3)).collect();
        let mut x = b.clone();
        f.solve_adjoint_vec(&mut x);
        // Verify A^H x = b directly.
        let mut r = vec![cx(0.0, 0.0); 6];
        for i in 0..6 {
            for j in 0..6 {
                r[j] += a[[i, j]].conj() * x[i];
            }
        }
        let err: f64 = r.iter().zip(b.iter()).map(|(a, b)| (a - b).norm()).sum();
        assert!(err < 1e-11, "adjoint solve error {err}");
    }

    #[test]
    fn singular_matrix_detected() {
        let mut a = Array2::<Complex64>::zeros((3, 3));
        a[[0, 0]] = cx(1.0, 0.0);
        a[[1, 1]] = cx(1.0, 0.0);
        // Third row identically zero.
        assert!(matches!(
            lu_factor(&a),
            Err(LinalgError::SingularMatrix { .. })
        ));
    }

    #[test]
    fn sigma_min_of_diagonal() {
        let a = Array2::from_diag(&ndarray::arr1(&[cx(5.0, 0.0), cx(0.01, 0.0), cx(2.0, 0.0)]));
        let f = lu_factor(&a).unwrap();
        let s = f.sigma_min_est();
        assert!((s - 0.01).abs() < 1e-6, "sigma_min estimate {s}");
    }

    #[test]
    fn cond_estimate_of_diagonal() {
        let m = OperatorMatrix::from_diag(&[cx(100.0, 0.0), cx(0.1, 0.0)]);
        let f = lu_factor(m.array()).unwrap();
        let c = cond_one_est(&m, &f);
        assert!((c - 1000.0).abs() / 1000.0 < 1e-10, "cond estimate {c}");
    }
}
