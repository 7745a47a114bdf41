//! Matrix exponential and exact zero-order-hold discretization.
//!
//! Dense inputs go through scaling and squaring on a degree-13 Taylor
//! polynomial. The scaling exponent is the smallest `s` with
//! `‖A·t‖₁ / 2^s ≤ 1/2`, where the truncation term `0.5^14 / 14!` sits below
//! `f64` round-off. Diagonal inputs short-circuit to scalar exponentials.

use crate::error::{invalid, mismatch};
use crate::{Matrix, Real, Result};

const TAYLOR_ORDER: usize = 13;

/// `e^{A·t}` for square `A`. Negative `t` is allowed.
pub fn mat_exp<T: Real>(a: &Matrix<T>, t: T) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(mismatch!("exponential of a {}x{} matrix", a.rows(), a.cols()));
    }
    if !t.is_finite() {
        return Err(invalid!("non-finite time argument"));
    }
    if !a.is_finite() {
        return Err(invalid!("non-finite matrix entry"));
    }
    if a.is_diagonal() {
        let diag: Vec<T> = a.diagonal().into_iter().map(|d| (d * t).exp()).collect();
        return Matrix::from_diagonal(&diag).map_err(|_| invalid!("exponential overflowed"));
    }
    let result = expm_dense(&a.scale(t));
    if !result.is_finite() {
        return Err(invalid!("exponential overflowed"));
    }
    Ok(result)
}

/// Scaling and squaring without the diagonal shortcut.
pub(crate) fn expm_dense<T: Real>(x: &Matrix<T>) -> Matrix<T> {
    let n = x.rows();
    let norm = x.norm_one();
    let half = T::lit(0.5);
    let mut squarings = 0i32;
    if norm > half {
        squarings = (norm / half).log2().ceil().to_i32().unwrap_or(0).max(0);
    }
    let scaled = x.scale(T::lit(2.0).powi(-squarings));

    // Horner: I + X(I + X/2 (I + X/3 (...)))
    let identity = Matrix::identity(n);
    let mut poly = identity.clone();
    for k in (1..=TAYLOR_ORDER).rev() {
        let term = (&scaled * &poly).scale(T::one() / T::lit(k as f64));
        poly = &identity + &term;
    }
    for _ in 0..squarings {
        poly = &poly * &poly;
    }
    poly
}

/// Exact discretization of `ẋ = A x + B u` for input held constant over `dt`.
///
/// Returns `(Ad, Bd)` with `Ad = e^{A·dt}` and `Bd = ∫₀^dt e^{A s} ds · B`.
/// The integral comes from the exponential of the block matrix
/// `[[A, B], [0, 0]]`, so singular `A` is fine.
pub fn zoh_discretize<T: Real>(a: &Matrix<T>, b: &Matrix<T>, dt: T) -> Result<(Matrix<T>, Matrix<T>)> {
    check_zoh_args(a, b, dt)?;
    if a.is_diagonal() {
        return zoh_diagonal(a, b, dt);
    }
    zoh_augmented(a, b, dt)
}

fn check_zoh_args<T: Real>(a: &Matrix<T>, b: &Matrix<T>, dt: T) -> Result<()> {
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(invalid!("sample period must be positive and finite, got {dt}"));
    }
    if !a.is_square() || a.rows() != b.rows() {
        return Err(mismatch!(
            "state matrix {}x{} incompatible with input matrix {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        ));
    }
    Ok(())
}

pub(crate) fn zoh_augmented<T: Real>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    dt: T,
) -> Result<(Matrix<T>, Matrix<T>)> {
    check_zoh_args(a, b, dt)?;
    let n = a.rows();
    let m = b.cols();
    let aug = Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (true, false) => b[(i, j - n)],
        _ => T::zero(),
    });
    let e = mat_exp(&aug, dt)?;
    Ok((e.block(0, 0, n, n), e.block(0, n, n, m)))
}

// Row i of Bd is b_i·(e^{a_i dt} − 1)/a_i, evaluated through expm1.
fn zoh_diagonal<T: Real>(a: &Matrix<T>, b: &Matrix<T>, dt: T) -> Result<(Matrix<T>, Matrix<T>)> {
    let ad = mat_exp(a, dt)?;
    let weights: Vec<T> = a
        .diagonal()
        .into_iter()
        .map(|ai| {
            let x = ai * dt;
            if x == T::zero() {
                dt
            } else {
                x.exp_m1() / ai
            }
        })
        .collect();
    let bd = Matrix::from_fn(b.rows(), b.cols(), |i, j| weights[i] * b[(i, j)]);
    Ok((ad, bd))
}
