//! Initial history for the delay dynamics.
//!
//! A history defines `phi_i(s)` for `s` in `[-tau_max, 0]`. The sampled kind
//! stores per-coordinate values on a uniform grid over that interval and
//! interpolates with a C1 cubic (Catmull-Rom slopes, one-sided at the ends),
//! so any continuous initial condition can be supplied to machine-plotting
//! accuracy without the caller committing to a formula.

use crate::error::Error;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum History<T> {
    /// `phi_i(s) = v_i` for all `s`.
    Constant(Vec<T>),
    /// `samples[i]` holds `phi_i` on a uniform grid over `[-tau_max, 0]`,
    /// first entry at `-tau_max`, last at `0`; each coordinate needs at least
    /// two samples.
    SampledCubic(Vec<Vec<T>>),
}

impl<T: Real> History<T> {
    /// Checks shape and finiteness against a spec with `n` coordinates.
    pub fn validate(&self, n: usize) -> Result<(), Error> {
        match self {
            History::Constant(v) => {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        what: "history values".into(),
                        expected: n,
                        got: v.len(),
                    });
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::NonFinite {
                        what: "history values".into(),
                    });
                }
            }
            History::SampledCubic(rows) => {
                if rows.len() != n {
                    return Err(Error::DimensionMismatch {
                        what: "history coordinate count".into(),
                        expected: n,
                        got: rows.len(),
                    });
                }
                for (i, row) in rows.iter().enumerate() {
                    if row.len() < 2 {
                        return Err(Error::InvalidHistory {
                            what: format!("coordinate {i} has {} samples, need >= 2", row.len()),
                        });
                    }
                    if row.iter().any(|x| !x.is_finite()) {
                        return Err(Error::NonFinite {
                            what: format!("history samples for coordinate {i}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `phi_i(s)` with `s` in `[-tau_max, 0]`; `s` is clamped to the interval.
    pub fn eval(&self, i: usize, s: T, tau_max: T) -> T {
        match self {
            History::Constant(v) => v[i],
            History::SampledCubic(rows) => {
                let row = &rows[i];
                let m = row.len() - 1;
                if tau_max <= T::zero() {
                    return row[m];
                }
                // map s in [-tau_max, 0] onto the sample index range [0, m]
                let x = (s + tau_max) / tau_max * T::from_usize(m).unwrap();
                let x = x.max(T::zero()).min(T::from_usize(m).unwrap());
                let k = x.floor().to_usize().unwrap_or(0).min(m - 1);
                let theta = x - T::from_usize(k).unwrap();
                let dt = tau_max / T::from_usize(m).unwrap();
                let slope = |j: usize| -> T {
                    if j == 0 {
                        (row[1] - row[0]) / dt
                    } else if j == m {
                        (row[m] - row[m - 1]) / dt
                    } else {
                        (row[j + 1] - row[j - 1]) / (dt + dt)
                    }
                };
                hermite(row[k], slope(k) * dt, row[k + 1], slope(k + 1) * dt, theta)
            }
        }
    }
}

/// Cubic Hermite basis on `[0, 1]` with endpoint values and scaled slopes.
pub(crate) fn hermite<T: Real>(y0: T, d0: T, y1: T, d1: T, theta: T) -> T {
    let t2 = theta * theta;
    let t3 = t2 * theta;
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let h00 = two * t3 - three * t2 + T::one();
    let h10 = t3 - two * t2 + theta;
    let h01 = -two * t3 + three * t2;
    let h11 = t3 - t2;
    h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1
}
