use crate::error::mismatch;
use crate::{Error, Matrix, Real, Result, Vector};

// Pivot threshold relative to the largest entry of the system matrix.
fn pivot_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(8.0))
}

/// Solves `M x = b` by Gaussian elimination with partial pivoting.
pub fn solve<T: Real>(m: &Matrix<T>, b: &Vector<T>) -> Result<Vector<T>> {
    if b.len() != m.rows() {
        return Err(mismatch!("right-hand side length {} for {} rows", b.len(), m.rows()));
    }
    let rhs = Matrix::from_fn(b.len(), 1, |i, _| b[i]);
    let x = solve_matrix(m, &rhs)?;
    Ok(Vector::from_vec_unchecked(x.as_slice().to_vec()))
}

/// Solves `M X = B` for every column of `B`.
pub fn solve_matrix<T: Real>(m: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(mismatch!("solve with a {}x{} matrix", m.rows(), m.cols()));
    }
    if b.rows() != m.rows() {
        return Err(mismatch!("right-hand side has {} rows for {} equations", b.rows(), m.rows()));
    }
    let n = m.rows();
    let k = b.cols();
    let scale = m.max_abs();
    if scale == T::zero() {
        return Err(Error::SingularMatrix);
    }
    let threshold = pivot_tolerance::<T>() * scale;

    let mut lhs: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect();
    let mut rhs: Vec<Vec<T>> = (0..n).map(|i| (0..k).map(|j| b[(i, j)]).collect()).collect();

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&x, &y| {
                lhs[x][col]
                    .abs()
                    .partial_cmp(&lhs[y][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if !(lhs[pivot_row][col].abs() >= threshold) {
            return Err(Error::SingularMatrix);
        }
        lhs.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let pivot = lhs[col][col];
        for r in col + 1..n {
            let factor = lhs[r][col] / pivot;
            if factor == T::zero() {
                continue;
            }
            for j in col..n {
                lhs[r][j] = lhs[r][j] - factor * lhs[col][j];
            }
            for j in 0..k {
                rhs[r][j] = rhs[r][j] - factor * rhs[col][j];
            }
        }
    }

    let mut x = Matrix::zeros(n, k);
    for j in 0..k {
        for i in (0..n).rev() {
            let tail: T = (i + 1..n).map(|c| lhs[i][c] * x[(c, j)]).sum();
            x.set(i, j, (rhs[i][j] - tail) / lhs[i][i]);
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector<f64> {
        Vector::from_slice(x).unwrap()
    }

    #[test]
    fn identity_and_diagonal() {
        assert_eq!(solve(&Matrix::identity(2), &v(&[3.0, 4.0])).unwrap(), v(&[3.0, 4.0]));
        let d = Matrix::from_diagonal(&[2.0, 4.0]).unwrap();
        assert_eq!(solve(&d, &v(&[1.0, 1.0])).unwrap(), v(&[0.5, 0.25]));
    }

    #[test]
    fn rank_one_is_singular() {
        let m = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert_eq!(solve(&m, &v(&[1.0, 2.0])), Err(Error::SingularMatrix));
        assert_eq!(solve(&Matrix::zeros(2, 2), &v(&[1.0, 2.0])), Err(Error::SingularMatrix));
    }

    #[test]
    fn needs_pivoting() {
        let m = Matrix::from_rows(&[[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]]).unwrap();
        let b = v(&[5.0, 3.0, 6.0]);
        let x = solve(&m, &b).unwrap();
        let residual = (&(&m * &x) - &b).norm_inf();
        assert!(residual <= 1e-10 * b.norm_inf());
    }
}
