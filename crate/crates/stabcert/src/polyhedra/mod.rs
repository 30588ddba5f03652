//! Positive solutions of `M x <= 0` (componentwise, strict) and M-matrix
//! checks.
//!
//! Strict feasibility of `M x < 0` over `x > 0` is scale-free, so it is
//! decided by one bounded LP:
//!
//! ```text
//! maximize s   s.t.   (M x)_i + s <= 0,   x_i >= 1,   s <= S_CAP
//! ```
//!
//! Any strictly feasible cone lets `x` scale up until `s` hits the cap, so
//! the raw optimum says only "strict direction exists". The returned point is
//! rescaled to `min_i x_i = 1` and its slack is recomputed by direct
//! substitution in plain arithmetic; the verdict never trusts the tableau.
//! Verdicts within [`Real::TOL_STRICT`] of zero are flagged as boundary.

mod mmatrix;
mod simplex;

pub use mmatrix::is_m_matrix;

use crate::error::Error;
use crate::scalar::Real;
use simplex::{maximize, LpStatus};

/// Cap on the slack variable; only the sign of the optimum matters.
const S_CAP: f64 = 1e6;

/// The system `M x <= 0` over `x > 0`, strict or not.
#[derive(Debug, Clone, PartialEq)]
pub struct IneqSystem<T> {
    m: Vec<Vec<T>>,
    strict: bool,
}

impl<T: Real> IneqSystem<T> {
    pub fn new(m: Vec<Vec<T>>, strict: bool) -> Result<Self, Error> {
        let n = m.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                what: "inequality system".into(),
                expected: 1,
                got: 0,
            });
        }
        for row in &m {
            if row.len() != n {
                return Err(Error::NotSquare {
                    what: "inequality system",
                    rows: n,
                    cols: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    what: "inequality system".into(),
                });
            }
        }
        Ok(IneqSystem { m, strict })
    }

    pub fn strict(m: Vec<Vec<T>>) -> Result<Self, Error> {
        Self::new(m, true)
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.m
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn transposed(&self) -> Self {
        IneqSystem {
            m: transpose(&self.m),
            strict: self.strict,
        }
    }
}

/// Outcome of a feasibility solve.
///
/// When `feasible`, `x` is normalized to `min_i x_i = 1` and `slack` is the
/// recomputed `-max_i (M x)_i`, strictly above [`Real::TOL_STRICT`] for strict
/// systems. When infeasible, `slack` is the LP optimum (how far the best
/// point stays from satisfying the system) and `x` is absent. `boundary`
/// marks optima within `TOL_STRICT` of zero, where no strict verdict is
/// numerically meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityResult<T> {
    pub feasible: bool,
    pub x: Option<Vec<T>>,
    pub slack: T,
    pub boundary: bool,
}

/// Decides `M x < 0, x > 0` (or the non-strict variant) as described in the
/// module docs.
pub fn solve_strict<T: Real>(sys: &IneqSystem<T>) -> Result<FeasibilityResult<T>, Error> {
    let n = sys.n();
    let m = &sys.m;
    let s_cap = T::lit(S_CAP);

    // Shift variables: y = x - 1 >= 0, t = s + t_shift >= 0. The shift makes
    // every rhs positive, so the LP starts from a basic feasible point.
    let row_sums: Vec<T> = m
        .iter()
        .map(|row| row.iter().fold(T::zero(), |acc, &v| acc + v))
        .collect();
    let mut t_shift = T::zero();
    for &rs in &row_sums {
        t_shift = t_shift.max(rs);
    }
    t_shift = t_shift + T::one();

    let mut constraints: Vec<(Vec<T>, T)> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut coeffs = m[i].clone();
        coeffs.push(T::one()); // the slack variable t
        constraints.push((coeffs, t_shift - row_sums[i]));
    }
    let mut cap = vec![T::zero(); n + 1];
    cap[n] = T::one();
    constraints.push((cap, s_cap + t_shift));

    let mut objective = vec![T::zero(); n + 1];
    objective[n] = T::one();

    let out = maximize(&objective, &constraints)?;
    if out.status != LpStatus::Optimal {
        // The origin (y = 0, t = 0) is always feasible and t is capped.
        return Err(Error::internal(format!(
            "feasibility LP ended {:?} on a problem that is always feasible and bounded",
            out.status
        )));
    }
    let s_star = out.objective - t_shift;

    let threshold = if sys.strict {
        T::TOL_STRICT
    } else {
        -T::TOL_STRICT
    };
    if s_star <= threshold {
        return Ok(FeasibilityResult {
            feasible: false,
            x: None,
            slack: s_star,
            boundary: s_star.abs() <= T::TOL_STRICT,
        });
    }

    let mut x: Vec<T> = out.x[..n].iter().map(|&y| y + T::one()).collect();
    let x_min = x.iter().fold(T::infinity(), |acc, &v| acc.min(v));
    for v in &mut x {
        *v = *v / x_min;
    }
    let slack = -mat_vec(m, &x)
        .into_iter()
        .fold(T::neg_infinity(), |acc, v| acc.max(v));
    if sys.strict && slack <= T::TOL_STRICT {
        // The LP cleared the cap only by inflating x along a nearly flat
        // direction; after normalization there is no usable strict margin.
        return Ok(FeasibilityResult {
            feasible: false,
            x: None,
            slack,
            boundary: true,
        });
    }
    Ok(FeasibilityResult {
        feasible: true,
        x: Some(x),
        slack,
        boundary: !sys.strict && slack.abs() <= T::TOL_STRICT,
    })
}

/// Solves the transposed system `M^T x <= 0`; same contract as
/// [`solve_strict`].
pub fn solve_transpose<T: Real>(sys: &IneqSystem<T>) -> Result<FeasibilityResult<T>, Error> {
    solve_strict(&sys.transposed())
}

pub(crate) fn mat_vec<T: Real>(m: &[Vec<T>], x: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
        })
        .collect()
}

pub(crate) fn transpose<T: Copy>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    let cols = if n == 0 { 0 } else { m[0].len() };
    (0..cols)
        .map(|j| (0..n).map(|i| m[i][j]).collect())
        .collect()
}
