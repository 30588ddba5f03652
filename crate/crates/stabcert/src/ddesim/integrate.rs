//! Fixed-step RK4 for the delay dynamics.
//!
//! The step is capped at the smallest positive delay, so every delayed
//! lookup lands in already-completed steps (or in the initial history) and
//! the scheme stays fully explicit. Zero delays are read from the current
//! stage state instead, which folds them into the undelayed term. Node
//! derivatives are stored alongside states for cubic Hermite dense output.
//!
//! No adaptivity and no discontinuity tracking: a fixed grid keeps runs
//! reproducible, and the target problems are smooth enough between the
//! delay-induced kinks at t0, t0 + tau, ... that fourth order is observed
//! where it matters.

use crate::error::Error;
use crate::model::{History, NetworkSpec};
use crate::scalar::Real;

use super::trajectory::{DenseGrid, Trajectory};

/// Number of grid steps in `span`, or `None` when `span` is not a multiple
/// of `h` within a relative 1e-12.
pub(crate) fn steps_on_grid<T: Real>(span: T, h: T) -> Option<usize> {
    let x = span / h;
    let r = x.round();
    if r < T::one() {
        return None;
    }
    let tol = T::lit(1e-12) * x.abs().max(T::one());
    if (x - r).abs() > tol {
        return None;
    }
    r.to_usize()
}

fn rhs<T: Real>(
    spec: &NetworkSpec<T>,
    t: T,
    u: &[T],
    delayed: &impl Fn(usize, T) -> Result<T, Error>,
) -> Result<Vec<T>, Error> {
    let n = spec.n();
    let mut out = vec![T::zero(); n];
    for i in 0..n {
        let mut acc = -spec.d()[i].value(t) * u[i] + spec.inputs()[i].value(t);
        for j in 0..n {
            acc = acc + spec.a()[i][j].value(t) * spec.g_act()[j].eval(u[j]);
            let tau = spec.tau()[i][j];
            let uj = if tau == T::zero() {
                u[j]
            } else {
                delayed(j, t - tau)?
            };
            acc = acc + spec.b()[i][j].value(t) * spec.f_act()[j].eval(uj);
        }
        out[i] = acc;
    }
    Ok(out)
}

/// Integrates the spec from its initial history over `[0, t_end]`.
///
/// `h` must be positive, at most the smallest positive delay, and divide
/// both the period and `t_end` (relative 1e-12), so period maps and delay
/// grids line up without interpolation at the endpoints.
pub fn simulate<T: Real>(
    spec: &NetworkSpec<T>,
    hist: &History<T>,
    t_end: T,
    h: T,
) -> Result<Trajectory<T>, Error> {
    let n = spec.n();
    hist.validate(n)?;
    let tau_max = spec.tau_max();
    let tau_min = spec.tau_min_positive();
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidStep {
            h: h.to_f64().unwrap_or(f64::NAN),
            tau_min: tau_min.and_then(|t| t.to_f64()).unwrap_or(f64::INFINITY),
        });
    }
    if let Some(tm) = tau_min {
        if h > tm * (T::one() + T::lit(1e-12)) {
            return Err(Error::InvalidStep {
                h: h.to_f64().unwrap_or(f64::NAN),
                tau_min: tm.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    if steps_on_grid(spec.omega(), h).is_none() {
        return Err(Error::NotOnGrid {
            what: "omega",
            value: spec.omega().to_f64().unwrap_or(f64::NAN),
            h: h.to_f64().unwrap_or(f64::NAN),
        });
    }
    let steps = steps_on_grid(t_end, h).ok_or(Error::NotOnGrid {
        what: "t_end",
        value: t_end.to_f64().unwrap_or(f64::NAN),
        h: h.to_f64().unwrap_or(f64::NAN),
    })?;

    let t0 = T::zero();
    let u0: Vec<T> = (0..n).map(|i| hist.eval(i, T::zero(), tau_max)).collect();
    let mut samples: Vec<Vec<T>> = Vec::with_capacity(steps + 1);
    let mut derivs: Vec<Vec<T>> = Vec::with_capacity(steps + 1);
    samples.push(u0);

    // delay lookup against the grid completed so far, falling back to the
    // initial history left of t0
    let lookup = |samples: &[Vec<T>], derivs: &[Vec<T>], j: usize, s: T| -> Result<T, Error> {
        if s <= t0 {
            Ok(hist.eval(j, s, tau_max))
        } else {
            DenseGrid {
                t0,
                h,
                samples,
                derivs,
            }
            .eval_coord(j, s)
        }
    };

    let half = T::lit(0.5);
    let sixth = T::lit(6.0).recip();
    let two = T::lit(2.0);
    for k in 0..=steps {
        let t = t0 + h * T::from_usize(k).unwrap();
        let u = samples[k].clone();
        let k1 = {
            let look = |j: usize, s: T| lookup(&samples, &derivs, j, s);
            rhs(spec, t, &u, &look)?
        };
        derivs.push(k1.clone());
        if k == steps {
            break;
        }
        // stage lookups may fall in [t_{k-1}, t_k], which needs derivs[k];
        // that is why the node derivative is pushed before the stages run
        let look = |j: usize, s: T| lookup(&samples, &derivs, j, s);
        let at = |base: &[T], dir: &[T], w: T| -> Vec<T> {
            base.iter().zip(dir).map(|(&b, &d)| b + w * d).collect()
        };
        let k2 = rhs(spec, t + half * h, &at(&u, &k1, half * h), &look)?;
        let k3 = rhs(spec, t + half * h, &at(&u, &k2, half * h), &look)?;
        let k4 = rhs(spec, t + h, &at(&u, &k3, h), &look)?;
        let u_next: Vec<T> = (0..n)
            .map(|i| u[i] + h * sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]))
            .collect();
        if u_next.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence {
                t: (t + h).to_f64().unwrap_or(f64::NAN),
            });
        }
        samples.push(u_next);
    }
    Trajectory::from_parts(spec.clone(), t0, h, samples, derivs)
}
