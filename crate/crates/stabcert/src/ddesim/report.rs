//! Period-map contraction measurements.
//!
//! Under a valid certificate the shift `u(t) -> u(t + omega)` contracts at
//! least as fast as `e^{-eps omega}` per period. The report measures that
//! directly: per-period sup differences `D_j`, their successive ratios, and
//! an empirical rate `eps_hat` from the tail of the ratio sequence (the
//! decay statement is asymptotic, so early transients are discarded). The
//! last full period doubles as the periodic-orbit estimate.

use crate::error::Error;
use crate::scalar::Real;

use super::integrate::steps_on_grid;
use super::trajectory::Trajectory;

/// Below this, a period difference counts as converged-to-roundoff and
/// ratios of it are noise.
const SATURATION_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport<T> {
    /// `D_j = sup_{t in one period grid} max_i |u_i(t + (j+1) omega) - u_i(t + j omega)|`.
    pub diffs: Vec<T>,
    /// `D_{j+1} / D_j`; empty when saturated.
    pub ratios: Vec<T>,
    /// `-ln(geometric mean of the trailing half of ratios) / omega`.
    pub eps_hat: Option<T>,
    /// Set when some `D_j` fell below the roundoff floor; the trajectory has
    /// already converged and no meaningful rate can be read off.
    pub saturated: bool,
    /// States over the last full period, the periodic-orbit estimate.
    pub v_samples: Vec<Vec<T>>,
}

/// Measures the period map over `j_periods >= 3` periods of length `omega`
/// starting at the trajectory origin.
pub fn period_map_report<T: Real>(
    traj: &Trajectory<T>,
    omega: T,
    j_periods: usize,
) -> Result<SimReport<T>, Error> {
    if j_periods < 3 {
        return Err(Error::TooFewPeriods { j: j_periods });
    }
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(Error::InvalidPeriod {
            omega: omega.to_f64().unwrap_or(f64::NAN),
        });
    }
    let spp = steps_on_grid(omega, traj.h()).ok_or(Error::NotOnGrid {
        what: "omega",
        value: omega.to_f64().unwrap_or(f64::NAN),
        h: traj.h().to_f64().unwrap_or(f64::NAN),
    })?;
    let needed = (j_periods + 1) * spp + 1;
    if traj.samples().len() < needed {
        let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
        return Err(Error::SpanTooShort {
            t0: f(traj.t0()),
            t_end: f(traj.t_end()),
            need_lo: f(traj.t0()),
            need_hi: f(traj.t0()) + (j_periods + 1) as f64 * f(omega),
        });
    }

    let samples = traj.samples();
    let n = samples[0].len();
    let mut diffs = Vec::with_capacity(j_periods);
    for j in 0..j_periods {
        let mut d = T::zero();
        for k in 0..=spp {
            let (lo, hi) = (j * spp + k, (j + 1) * spp + k);
            for i in 0..n {
                d = d.max((samples[hi][i] - samples[lo][i]).abs());
            }
        }
        diffs.push(d);
    }

    let floor = T::lit(SATURATION_FLOOR);
    if diffs.iter().any(|&d| d < floor) {
        return Ok(SimReport {
            diffs,
            ratios: Vec::new(),
            eps_hat: None,
            saturated: true,
            v_samples: last_period(samples, spp),
        });
    }
    let ratios: Vec<T> = diffs.windows(2).map(|w| w[1] / w[0]).collect();
    let tail = ratios.len() - ratios.len() / 2; // trailing half, rounded up
    let mean_log = ratios[ratios.len() - tail..]
        .iter()
        .fold(T::zero(), |acc, &r| acc + r.ln())
        / T::from_usize(tail).unwrap();
    Ok(SimReport {
        eps_hat: Some(-mean_log / omega),
        diffs,
        ratios,
        saturated: false,
        v_samples: last_period(samples, spp),
    })
}

fn last_period<T: Clone>(samples: &[Vec<T>], spp: usize) -> Vec<Vec<T>> {
    samples[samples.len() - spp - 1..].to_vec()
}

/// Largest per-coordinate range over the sampled orbit; zero means the
/// "periodic solution" is a point.
pub fn orbit_variation<T: Real>(v_samples: &[Vec<T>]) -> T {
    if v_samples.is_empty() {
        return T::zero();
    }
    let n = v_samples[0].len();
    let mut worst = T::zero();
    for i in 0..n {
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for row in v_samples {
            lo = lo.min(row[i]);
            hi = hi.max(row[i]);
        }
        worst = worst.max(hi - lo);
    }
    worst
}
