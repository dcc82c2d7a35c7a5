//! Matrix exponential via scaling-and-squaring with Padé approximants.
//!
//! Order selection and theta thresholds follow Higham (2005), "The Scaling
//! and Squaring Method for the Matrix Exponential Revisited".

use ndarray::Array2;
use num_complex::Complex64;

use super::lu::lu_factor;
use crate::error::LinalgError;
use crate::matrix::OperatorMatrix;

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

/// exp(||A||) must stay inside f64 range; ln(f64::MAX) ~ 709.78.
const EXP_NORM_LIMIT: f64 = 709.0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Matrix exponential e^A.
///
/// Relative accuracy ~1e-12 for ||A|| <= 10; returns Overflow when the
/// norm is large enough that exp(||A||) leaves f64 range.
pub fn mat_exp(a: &OperatorMatrix) -> Result<OperatorMatrix, LinalgError> {
    let norm = a.one_norm();
    if norm > EXP_NORM_LIMIT {
        return Err(LinalgError::Overflow { norm });
    }
    let n = a.dim();
    if n == 1 {
        let mut m = Array2::zeros((1, 1));
        m[[0, 0]] = a.get(0, 0).exp();
        return Ok(OperatorMatrix::from_valid(m));
    }

    let arr = a.array();
    let eye = Array2::from_diag_elem(n, re(1.0));

    let (u, v, squarings) = if norm <= THETA_3 {
        let a2 = arr.dot(arr);
        let (u, v) = pade_low(arr, &a2, None, None, &eye, &B3);
        (u, v, 0)
    } else if norm <= THETA_5 {
        let a2 = arr.dot(arr);
        let a4 = a2.dot(&a2);
        let (u, v) = pade_low(arr, &a2, Some(&a4), None, &eye, &B5);
        (u, v, 0)
    } else if norm <= THETA_7 || norm <= THETA_9 {
        let a2 = arr.dot(arr);
        let a4 = a2.dot(&a2);
        let a6 = a2.dot(&a4);
        if norm <= THETA_7 {
            let (u, v) = pade_low(arr, &a2, Some(&a4), Some(&a6), &eye, &B7);
            (u, v, 0)
        } else {
            let a8 = a4.dot(&a4);
            let (u, v) = pade9(arr, &a2, &a4, &a6, &a8, &eye);
            (u, v, 0)
        }
    } else {
        let s = ((norm / THETA_13).log2().ceil().max(0.0)) as u32;
        let scale = re(1.0 / (2f64.powi(s as i32)));
        let a_s = arr.mapv(|z| z * scale);
        let a2 = a_s.dot(&a_s);
        let a4 = a2.dot(&a2);
        let a6 = a2.dot(&a4);
        let (u, v) = pade13(&a_s, &a2, &a4, &a6, &eye);
        (u, v, s)
    };

    // exp(A) ~ (V - U)^{-1} (V + U).
    let num = &v + &u;
    let den = &v - &u;
    let f = lu_factor(&den)?;
    let mut r = f.solve_mat(&num);
    for _ in 0..squarings {
        r = r.dot(&r);
    }
    if !r.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(LinalgError::Overflow { norm });
    }
    Ok(OperatorMatrix::from_valid(r))
}

/// Padé orders 3, 5, 7: U = A * sum(b_{2k+1} A^{2k}), V = sum(b_{2k} A^{2k}).
fn pade_low(
    a: &Array2<Complex64>,
    a2: &Array2<Complex64>,
    a4: Option<&Array2<Complex64>>,
    a6: Option<&Array2<Complex64>>,
    eye: &Array2<Complex64>,
    b: &[f64],
) -> (Array2<Complex64>, Array2<Complex64>) {
    let mut odd = eye.mapv(|z| z * re(b[1]));
    let mut even = eye.mapv(|z| z * re(b[0]));
    odd = odd + a2.mapv(|z| z * re(b[3]));
    even = even + a2.mapv(|z| z * re(b[2]));
    if let Some(a4) = a4 {
        odd = odd + a4.mapv(|z| z * re(b[5]));
        even = even + a4.mapv(|z| z * re(b[4]));
    }
    if let Some(a6) = a6 {
        odd = odd + a6.mapv(|z| z * re(b[7]));
        even = even + a6.mapv(|z| z * re(b[6]));
    }
    (a.dot(&odd), even)
}

fn pade9(
    a: &Array2<Complex64>,
    a2: &Array2<Complex64>,
    a4: &Array2<Complex64>,
    a6: &Array2<Complex64>,
    a8: &Array2<Complex64>,
    eye: &Array2<Complex64>,
) -> (Array2<Complex64>, Array2<Complex64>) {
    let b = &B9;
    let odd = eye.mapv(|z| z * re(b[1]))
        + a2.mapv(|z| z * re(b[3]))
        + a4.mapv(|z| z * re(b[5]))
        + a6.mapv(|z| z * re(b[7]))
        + a8.mapv(|z| z * re(b[9]));
    let even = eye.mapv(|z| z * re(b[0]))
        + a2.mapv(|z| z * re(b[2]))
        + a4.mapv(|z| z * re(b[4]))
        + a6.mapv(|z| z * re(b[6]))
        + a8.mapv(|z| z * re(b[8]));
    (a.dot(&odd), even)
}

fn pade13(
    a: &Array2<Complex64>,
    a2: &Array2<Complex64>,
    a4: &Array2<Complex64>,
    a6: &Array2<Complex64>,
    eye: &Array2<Complex64>,
) -> (Array2<Complex64>, Array2<Complex64>) {
    let b = &B13;
    let w1 = a6.mapv(|z| z * re(b[13])) + a4.mapv(|z| z * re(b[11])) + a2.mapv(|z| z * re(b[9]));
    let w = w1.dot(a6)
        + a6.mapv(|z| z * re(b[7]))
        + a4.mapv(|z| z * re(b[5]))
        + a2.mapv(|z| z * re(b[3]))
        + eye.mapv(|z| z * re(b[1]));
    let u = a.dot(&w);
    let v1 = a6.mapv(|z| z * re(b[12])) + a4.mapv(|z| z * re(b[10])) + a2.mapv(|z| z * re(b[8]));
    let v = v1.dot(a6)
        + a6.mapv(|z| z * re(b[6]))
        + a4.mapv(|z| z * re(b[4]))
        + a2.mapv(|z| z * re(b[2]))
        + eye.mapv(|z| z * re(b[0]));
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::cx;

    #[test]
    fn exp_of_zero_is_identity() {
        let a = OperatorMatrix::zeros(4);
        let e = mat_exp(&a).unwrap();
        assert!(e.dist_fro(&OperatorMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn exp_of_diagonal() {
        let a = OperatorMatrix::from_diag(&[cx(2f64.ln(), 0.0), cx(3f64.ln(), 0.0)]);
        let e = mat_exp(&a).unwrap();
        let want = OperatorMatrix::from_diag(&[cx(2.0, 0.0), cx(3.0, 0.0)]);
        assert!(e.rel_dist_fro(&want) < 1e-14);
    }

    #[test]
    fn exp_of_nilpotent_terminates() {
        let a = OperatorMatrix::from_rows(&[vec![cx(0.0, 0.0), cx(1.0, 0.0)], vec![cx(0.0, 0.0), cx(0.0, 0.0)]])
            .unwrap();
        let e = mat_exp(&a).unwrap();
        let want =
            OperatorMatrix::from_rows(&[vec![cx(1.0, 0.0), cx(1.0, 0.0)], vec![cx(0.0, 0.0), cx(1.0, 0.0)]])
                .unwrap();
        assert!(e.dist_fro(&want) < 1e-14);
    }

    #[test]
    fn exp_inverse_property() {
        // mat_exp(A) * mat_exp(-A) = I for a moderately sized matrix.
        let a = OperatorMatrix::from_rows(&[
            vec![cx(0.3, 0.2), cx(-1.1, 0.4), cx(0.5, 0.0)],
            vec![cx(0.9, -0.3), cx(0.1, 0.0), cx(-0.2, 0.8)],
            vec![cx(0.0, 1.2), cx(0.4, 0.1), cx(-0.7, -0.2)],
        ])
        .unwrap();
        let e = mat_exp(&a).unwrap();
        let em = mat_exp(&a.neg()).unwrap();
        let prod = e.matmul(&em);
        assert!(prod.rel_dist_fro(&OperatorMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn exp_rotation_generator() {
        // exp(t*[[0,1],[-1,0]]) = [[cos t, sin t], [-sin t, cos t]].
        let t = 0.7;
        let a = OperatorMatrix::from_rows(&[vec![cx(0.0, 0.0), cx(t, 0.0)], vec![cx(-t, 0.0), cx(0.0, 0.0)]])
            .unwrap();
        let e = mat_exp(&a).unwrap();
        assert!((e.get(0, 0).re - t.cos()).abs() < 1e-13);
        assert!((e.get(0, 1).re - t.sin()).abs() < 1e-13);
        assert!((e.get(1, 0).re + t.sin()).abs() < 1e-13);
    }

    #[test]
    fn exp_needs_scaling() {
        let a = OperatorMatrix::from_diag(&[cx(10.0, 0.0), cx(-10.0, 0.0)]);
        let e = mat_exp(&a).unwrap();
        assert!((e.get(0, 0).re - 10f64.exp()).abs() / 10f64.exp() < 1e-12);
        assert!((e.get(1, 1).re - (-10f64).exp()).abs() / (-10f64).exp() < 1e-10);
    }

    #[test]
    fn exp_overflow_detected() {
        let a = OperatorMatrix::from_diag(&[cx(800.0, 0.0)]);
        assert!(matches!(mat_exp(&a), Err(LinalgError::Overflow { .. })));
    }
}
