//! The certificate's Lyapunov functional, evaluated along a trajectory.
//!
//! For a certificate (weights xi, rate eps, exponent p) the functional over
//! the period-shifted deviation `w_i(y) = e^{eps y} (u_i(y + omega) - u_i(y))`
//! is
//!
//! ```text
//! L(t) = sum_i xi_i |w_i(t)|^p
//!      + p sum_{i,j} xi_i F_j b*_ij e^{eps tau_ij} int_{t - tau_ij}^t |w_j(y)|^p dy
//! ```
//!
//! Along any solution of a spec the certificate is valid for, L never
//! increases; watching it fall is an independent check that a certificate
//! means what it claims. The integral uses composite Simpson with an even
//! number of subintervals no wider than the trajectory step, so delays that
//! are not grid multiples cost nothing but a shifted quadrature grid.

use crate::criteria::Certificate;
use crate::error::Error;
use crate::scalar::Real;

use super::trajectory::Trajectory;

fn simpson<T: Real>(
    f: &impl Fn(T) -> Result<T, Error>,
    a: T,
    b: T,
    max_step: T,
) -> Result<T, Error> {
    let span = b - a;
    let mut m = (span / max_step).ceil().to_usize().unwrap_or(2).max(2);
    if m % 2 == 1 {
        m += 1;
    }
    let step = span / T::from_usize(m).unwrap();
    let mut acc = f(a)? + f(b)?;
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    for k in 1..m {
        let w = if k % 2 == 1 { four } else { two };
        acc = acc + w * f(a + step * T::from_usize(k).unwrap())?;
    }
    Ok(acc * step / T::lit(3.0))
}

/// Evaluates the functional at time `t`; the trajectory must cover
/// `[t - tau_max, t + omega]`.
pub fn lyapunov_value<T: Real>(
    traj: &Trajectory<T>,
    t: T,
    cert: &Certificate<T>,
) -> Result<T, Error> {
    let spec = traj.spec();
    let n = spec.n();
    if cert.weights.len() != n {
        return Err(Error::DimensionMismatch {
            what: "certificate weights".into(),
            expected: n,
            got: cert.weights.len(),
        });
    }
    let p = cert.exps.as_ref().map(|e| e.p).unwrap_or_else(T::one);
    let eps = cert.epsilon;
    let omega = spec.omega();
    let tau_max = spec.tau_max();
    let slop = traj.h() * T::lit(1e-9);
    if t - tau_max < traj.t0() - slop || t + omega > traj.t_end() + slop {
        let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
        return Err(Error::SpanTooShort {
            t0: f(traj.t0()),
            t_end: f(traj.t_end()),
            need_lo: f(t - tau_max),
            need_hi: f(t + omega),
        });
    }

    let wp = |j: usize, y: T| -> Result<T, Error> {
        let w = (eps * y).exp() * (traj.eval_coord(j, y + omega)? - traj.eval_coord(j, y)?);
        Ok(w.abs().powf(p))
    };

    let mut total = T::zero();
    for i in 0..n {
        total = total + cert.weights[i] * wp(i, t)?;
    }
    let sb = spec.star_bounds();
    for i in 0..n {
        for j in 0..n {
            let tau = spec.tau()[i][j];
            let gain = spec.f_bounds()[j] * sb.b_star[i][j];
            if tau == T::zero() || gain == T::zero() {
                continue;
            }
            let integral = simpson(&|y| wp(j, y), t - tau, t, traj.h())?;
            total = total + p * cert.weights[i] * gain * (eps * tau).exp() * integral;
        }
    }
    Ok(total)
}
