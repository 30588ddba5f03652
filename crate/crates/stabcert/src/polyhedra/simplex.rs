//! Dense two-phase primal simplex.
//!
//! Solves `max c.x  s.t.  A x <= b, x >= 0` on a dense tableau. Rows with a
//! negative right-hand side are negated into `>=` rows and get surplus plus
//! artificial variables; phase one drives the artificials to zero. Pivoting
//! uses Bland's rule (lowest eligible variable index both for entering and
//! for leaving ties), so the iteration cannot cycle; the cap below is a
//! defensive bound, not a tuning knob. Problem sizes here are tiny (a handful
//! of variables), so no effort is spent on sparsity.

use crate::error::Error;
use crate::scalar::Real;

const MAX_PIVOTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub(crate) struct LpOutcome<T> {
    pub status: LpStatus,
    /// Structural variable values; meaningful only when `status == Optimal`.
    pub x: Vec<T>,
    pub objective: T,
}

struct Tableau<T> {
    /// `rows` constraint rows then one objective row; last column is the rhs.
    t: Vec<Vec<T>>,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
}

impl<T: Real> Tableau<T> {
    fn rhs(&self, i: usize) -> T {
        self.t[i][self.cols - 1]
    }

    /// Current objective value (the obj-row rhs is kept at its negative).
    fn objective(&self) -> T {
        -self.t[self.rows][self.cols - 1]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for v in self.t[row].iter_mut() {
            *v = *v * inv;
        }
        for i in 0..=self.rows {
            if i == row {
                continue;
            }
            let factor = self.t[i][col];
            if factor == T::zero() {
                continue;
            }
            for j in 0..self.cols {
                let delta = factor * self.t[row][j];
                self.t[i][j] = self.t[i][j] - delta;
            }
            self.t[i][col] = T::zero();
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations until no column improves the objective.
    /// `enterable` filters the entering candidates (used to lock artificials
    /// out of phase two). Returns false on an unbounded ray.
    fn iterate(&mut self, enterable: impl Fn(usize) -> bool) -> Result<bool, Error> {
        for _ in 0..MAX_PIVOTS {
            let mut entering = None;
            for j in 0..self.cols - 1 {
                if enterable(j) && self.t[self.rows][j] > T::TOL_PIVOT {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Ok(true);
            };
            let mut leaving: Option<(usize, T)> = None;
            for i in 0..self.rows {
                let coeff = self.t[i][col];
                if coeff > T::TOL_PIVOT {
                    let ratio = self.rhs(i) / coeff;
                    let better = match leaving {
                        None => true,
                        Some((prev, best)) => {
                            ratio < best - T::TOL_PIVOT
                                || (ratio < best + T::TOL_PIVOT && self.basis[i] < self.basis[prev])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Ok(false);
            };
            self.pivot(row, col);
        }
        Err(Error::internal("simplex exceeded its pivot budget"))
    }
}

/// Maximizes `objective . x` over `constraints` (each a `(coeffs, rhs)` pair
/// meaning `coeffs . x <= rhs`) with `x >= 0`.
pub(crate) fn maximize<T: Real>(
    objective: &[T],
    constraints: &[(Vec<T>, T)],
) -> Result<LpOutcome<T>, Error> {
    let n = objective.len();
    let m = constraints.len();
    for (coeffs, _) in constraints {
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                what: "constraint coefficients".into(),
                expected: n,
                got: coeffs.len(),
            });
        }
    }

    let needs_artificial: Vec<bool> = constraints.iter().map(|&(_, b)| b < T::zero()).collect();
    let n_art = needs_artificial.iter().filter(|&&x| x).count();
    let cols = n + m + n_art + 1;
    let mut t = vec![vec![T::zero(); cols]; m + 1];
    let mut basis = vec![0usize; m];

    let mut art_next = n + m;
    for (i, (coeffs, b)) in constraints.iter().enumerate() {
        let flip = if needs_artificial[i] {
            -T::one()
        } else {
            T::one()
        };
        for (j, &v) in coeffs.iter().enumerate() {
            t[i][j] = flip * v;
        }
        // slack for <= rows, surplus for flipped rows
        t[i][n + i] = flip;
        t[i][cols - 1] = flip * *b;
        if needs_artificial[i] {
            t[i][art_next] = T::one();
            basis[i] = art_next;
            art_next += 1;
        } else {
            basis[i] = n + i;
        }
    }

    let mut tab = Tableau {
        t,
        rows: m,
        cols,
        basis,
    };

    if n_art > 0 {
        // phase one: maximize minus the artificial sum
        for j in n + m..cols - 1 {
            tab.t[m][j] = -T::one();
        }
        // price out rows whose basic variable carries a phase-one cost
        for i in 0..m {
            if tab.basis[i] >= n + m {
                for j in 0..cols {
                    let add = tab.t[i][j];
                    tab.t[m][j] = tab.t[m][j] + add;
                }
            }
        }
        if !tab.iterate(|_| true)? {
            return Err(Error::internal("phase-one simplex reported unbounded"));
        }
        if tab.objective() < -T::TOL_PIVOT * T::lit(100.0) {
            return Ok(LpOutcome {
                status: LpStatus::Infeasible,
                x: vec![T::zero(); n],
                objective: T::zero(),
            });
        }
        // push any leftover basic artificial (at value zero) out of the basis
        for i in 0..m {
            if tab.basis[i] >= n + m {
                if let Some(col) = (0..n + m).find(|&j| tab.t[i][j].abs() > T::TOL_PIVOT) {
                    tab.pivot(i, col);
                }
            }
        }
    }

    // phase two objective, priced out against the current basis
    for j in 0..cols {
        tab.t[m][j] = T::zero();
    }
    for (j, &c) in objective.iter().enumerate() {
        tab.t[m][j] = c;
    }
    for i in 0..m {
        let b = tab.basis[i];
        let c_b = if b < n { objective[b] } else { T::zero() };
        if c_b != T::zero() {
            for j in 0..cols {
                let delta = c_b * tab.t[i][j];
                tab.t[m][j] = tab.t[m][j] - delta;
            }
        }
    }
    let bounded = tab.iterate(|j| j < n + m)?;
    if !bounded {
        return Ok(LpOutcome {
            status: LpStatus::Unbounded,
            x: vec![T::zero(); n],
            objective: T::infinity(),
        });
    }

    let mut x = vec![T::zero(); n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs(i);
        }
    }
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        x,
        objective: tab.objective(),
    })
}
