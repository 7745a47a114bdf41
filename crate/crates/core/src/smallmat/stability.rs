use crate::error::{invalid, mismatch};
use crate::{Matrix, Real, Result};

/// Largest dimension accepted by [`is_hurwitz`].
pub const MAX_STABILITY_DIM: usize = 8;

/// True iff every eigenvalue of `m` has strictly negative real part.
///
/// 1x1 and 2x2 use sign tests directly (`tr < 0 ∧ det > 0` for 2x2).
/// Larger matrices run the Routh array on the characteristic polynomial.
pub fn is_hurwitz<T: Real>(m: &Matrix<T>) -> Result<bool> {
    if !m.is_square() {
        return Err(mismatch!("stability test on a {}x{} matrix", m.rows(), m.cols()));
    }
    if m.rows() > MAX_STABILITY_DIM {
        return Err(invalid!(
            "stability test supports n ≤ {MAX_STABILITY_DIM}, got {}",
            m.rows()
        ));
    }
    if !m.is_finite() {
        return Err(invalid!("non-finite matrix entry"));
    }
    Ok(match m.rows() {
        1 => m[(0, 0)] < T::zero(),
        2 => {
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            m.trace() < T::zero() && det > T::zero()
        }
        _ => routh_stable(&characteristic_polynomial(m), m.norm_one()),
    })
}

/// Monic characteristic polynomial `[1, c₁, …, cₙ]` of
/// `det(sI − M) = sⁿ + c₁ sⁿ⁻¹ + … + cₙ`, by Faddeev–LeVerrier.
pub fn characteristic_polynomial<T: Real>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows();
    let identity = Matrix::identity(n);
    let mut coeffs = vec![T::one()];
    let mut aux = Matrix::zeros(n, n);
    for k in 1..=n {
        let c_prev = *coeffs.last().unwrap();
        aux = &(m * &aux) + &identity.scale(c_prev);
        let c = -(m * &aux).trace() / T::lit(k as f64);
        coeffs.push(c);
    }
    coeffs
}

// Entries within round-off of zero count as non-positive, so marginal
// cases (eigenvalues on the imaginary axis) come out unstable.
fn routh_stable<T: Real>(coeffs: &[T], norm: T) -> bool {
    let n = coeffs.len() - 1;
    let eps = T::epsilon() * T::lit(64.0);
    let scale = T::one().max(norm);
    for (k, &c) in coeffs.iter().enumerate() {
        let binom = T::lit(binomial(n, k) as f64);
        if c <= eps * binom * scale.powi(k as i32) {
            return false;
        }
    }

    let mut upper: Vec<T> = coeffs.iter().step_by(2).copied().collect();
    let mut lower: Vec<T> = coeffs.iter().skip(1).step_by(2).copied().collect();
    for _ in 1..n {
        let p0 = lower[0];
        let q0 = upper[0];
        let width = upper.len().max(lower.len());
        let mut next = Vec::with_capacity(width);
        for i in 0..width.saturating_sub(1) {
            let q1 = upper.get(i + 1).copied().unwrap_or_else(T::zero);
            let p1 = lower.get(i + 1).copied().unwrap_or_else(T::zero);
            next.push((p0 * q1 - q0 * p1) / p0);
        }
        if next.is_empty() {
            return false;
        }
        let q1 = upper.get(1).copied().unwrap_or_else(T::zero);
        let p1 = lower.get(1).copied().unwrap_or_else(T::zero);
        let magnitude = ((p0 * q1).abs() + (q0 * p1).abs()) / p0.abs();
        if next[0] <= eps * magnitude {
            return false;
        }
        upper = lower;
        lower = next;
    }
    true
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[f64]) -> Matrix<f64> {
        Matrix::from_diagonal(d).unwrap()
    }

    #[test]
    fn two_by_two_examples() {
        assert!(is_hurwitz(&diag(&[-1.0, -2.0])).unwrap());
        let rot = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert!(!is_hurwitz(&rot).unwrap());
        // A + B K with B = I, K = diag(−4, −3)
        let closed = &diag(&[-1.0, -2.0]) + &diag(&[-4.0, -3.0]);
        assert!(is_hurwitz(&closed).unwrap());
    }

    #[test]
    fn sign_grid_exhaustive() {
        let grid = [-2.0, -1.0, 0.0, 1.0];
        for &a in &grid {
            for &b in &grid {
                assert_eq!(is_hurwitz(&diag(&[a, b])).unwrap(), a < 0.0 && b < 0.0, "{a} {b}");
                for &c in &grid {
                    let stable = a < 0.0 && b < 0.0 && c < 0.0;
                    assert_eq!(is_hurwitz(&diag(&[a, b, c])).unwrap(), stable, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn characteristic_polynomial_of_companion() {
        // (s+1)(s+2)(s+3) = s³ + 6s² + 11s + 6
        let m = Matrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [-6.0, -11.0, -6.0]]).unwrap();
        let p = characteristic_polynomial(&m);
        for (got, want) in p.iter().zip([1.0f64, 6.0, 11.0, 6.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(is_hurwitz(&m).unwrap());
    }

    #[test]
    fn routh_detects_complex_unstable_pair() {
        // s³ + s² + 2s + 8 has a right-half-plane pair although every coefficient is positive
        let m = Matrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [-8.0, -2.0, -1.0]]).unwrap();
        assert!(!is_hurwitz(&m).unwrap());
        // s³ + 3s² + 3s + 1 = (s+1)³
        let m = Matrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [-1.0, -3.0, -3.0]]).unwrap();
        assert!(is_hurwitz(&m).unwrap());
    }

    #[test]
    fn oscillator_blocks_are_marginal() {
        let m = Matrix::from_rows(&[
            [0.0, 1.0, 0.0, 0.0],
            [-4.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -2.0],
        ])
        .unwrap();
        assert!(!is_hurwitz(&m).unwrap());
        let damped = &m + &Matrix::from_diagonal(&[-0.1, -0.1, 0.0, 0.0]).unwrap();
        assert!(is_hurwitz(&damped).unwrap());
    }

    #[test]
    fn rejects_oversized_and_rectangular() {
        assert!(is_hurwitz(&Matrix::<f64>::identity(9)).is_err());
        assert!(is_hurwitz(&Matrix::<f64>::zeros(2, 3)).is_err());
    }
}
