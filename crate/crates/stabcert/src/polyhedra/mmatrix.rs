//! Nonsingular M-matrix test.
//!
//! A square matrix with nonpositive off-diagonal entries is a nonsingular
//! M-matrix iff every leading principal minor is strictly positive. Minors
//! are computed by LU with partial pivoting on a scratch copy; positivity is
//! judged against [`Real::TOL_DET`] times a Hadamard-style scale (product of
//! row sup-norms of the leading submatrix), so the verdict does not depend on
//! the matrix being O(1).

use crate::error::Error;
use crate::scalar::Real;

pub fn is_m_matrix<T: Real>(c: &[Vec<T>]) -> Result<bool, Error> {
    let n = c.len();
    if n == 0 {
        return Err(Error::DimensionMismatch {
            what: "m-matrix candidate".into(),
            expected: 1,
            got: 0,
        });
    }
    for row in c {
        if row.len() != n {
            return Err(Error::NotSquare {
                what: "m-matrix candidate",
                rows: n,
                cols: row.len(),
            });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "m-matrix candidate".into(),
            });
        }
    }

    for i in 0..n {
        for j in 0..n {
            if i != j && c[i][j] > T::zero() {
                return Ok(false);
            }
        }
    }

    for k in 1..=n {
        let mut scale = T::one();
        for row in c.iter().take(k) {
            let row_max = row
                .iter()
                .take(k)
                .fold(T::zero(), |acc, &v| acc.max(v.abs()));
            scale = scale * row_max;
        }
        if !(leading_minor(c, k) > T::TOL_DET * scale) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Determinant of the leading `k x k` submatrix via LU with partial pivoting.
fn leading_minor<T: Real>(c: &[Vec<T>], k: usize) -> T {
    let mut a: Vec<Vec<T>> = c.iter().take(k).map(|row| row[..k].to_vec()).collect();
    let mut det = T::one();
    for col in 0..k {
        let mut pivot_row = col;
        let mut pivot_abs = a[col][col].abs();
        for (r, row) in a.iter().enumerate().take(k).skip(col + 1) {
            if row[col].abs() > pivot_abs {
                pivot_abs = row[col].abs();
                pivot_row = r;
            }
        }
        if pivot_abs == T::zero() {
            return T::zero();
        }
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        det = det * a[col][col];
        for r in col + 1..k {
            let factor = a[r][col] / a[col][col];
            for j in col..k {
                let delta = factor * a[col][j];
                a[r][j] = a[r][j] - delta;
            }
        }
    }
    det
}
