//! The network model.
//!
//! ```text
//! du_i/dt = -d_i(t) u_i(t) + sum_j a_ij(t) g_j(u_j(t))
//!                          + sum_j b_ij(t) f_j(u_j(t - tau_ij)) + I_i(t)
//! ```
//!
//! All coefficients share one period `omega`; delays `tau_ij` are constant and
//! nonnegative; `G_i`, `F_i` are the declared Lipschitz bounds of the
//! activations. The criteria consume only the "starred" data extracted here:
//! `a*_ij = sup_t |a_ij(t)|`, `b*_ij = sup_t |b_ij(t)|`, `I*_i = sup_t |I_i(t)|`
//! and `d_i = inf_t d_i(t)`. Simulation is defined for any spec; the criteria
//! additionally require every `inf_t d_i(t) > 0`.

use crate::error::Error;
use crate::scalar::Real;

use super::activation::Activation;
use super::periodic::PeriodicFn;

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec<T> {
    omega: T,
    d: Vec<PeriodicFn<T>>,
    a: Vec<Vec<PeriodicFn<T>>>,
    b: Vec<Vec<PeriodicFn<T>>>,
    inputs: Vec<PeriodicFn<T>>,
    tau: Vec<Vec<T>>,
    g_bounds: Vec<T>,
    f_bounds: Vec<T>,
    g_act: Vec<Activation<T>>,
    f_act: Vec<Activation<T>>,
}

/// Per-period extrema of the coefficients; everything the criteria need.
#[derive(Debug, Clone, PartialEq)]
pub struct StarBounds<T> {
    pub a_star: Vec<Vec<T>>,
    pub b_star: Vec<Vec<T>>,
    pub i_star: Vec<T>,
    pub d_lower: Vec<T>,
}

impl<T: Real> NetworkSpec<T> {
    /// Builds and validates a spec. Activations default to linear with gain
    /// `G_i` (resp. `F_i`), which meets the declared bounds with equality.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        omega: T,
        d: Vec<PeriodicFn<T>>,
        a: Vec<Vec<PeriodicFn<T>>>,
        b: Vec<Vec<PeriodicFn<T>>>,
        inputs: Vec<PeriodicFn<T>>,
        tau: Vec<Vec<T>>,
        g_bounds: Vec<T>,
        f_bounds: Vec<T>,
    ) -> Result<Self, Error> {
        let g_act = g_bounds
            .iter()
            .map(|&g| Activation::Linear { gain: g })
            .collect();
        let f_act = f_bounds
            .iter()
            .map(|&f| Activation::Linear { gain: f })
            .collect();
        let spec = NetworkSpec {
            omega,
            d,
            a,
            b,
            inputs,
            tau,
            g_bounds,
            f_bounds,
            g_act,
            f_act,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Replaces the activations; their Lipschitz constants must not exceed
    /// the declared bounds or the criteria would be unsound for the simulated
    /// dynamics.
    pub fn with_activations(
        mut self,
        g_act: Vec<Activation<T>>,
        f_act: Vec<Activation<T>>,
    ) -> Result<Self, Error> {
        self.g_act = g_act;
        self.f_act = f_act;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), Error> {
        let n = self.d.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                what: "spec dimension".into(),
                expected: 1,
                got: 0,
            });
        }
        if !(self.omega > T::zero()) || !self.omega.is_finite() {
            return Err(Error::InvalidPeriod {
                omega: self.omega.to_f64().unwrap_or(f64::NAN),
            });
        }
        let check_len = |what: &str, got: usize| -> Result<(), Error> {
            if got != n {
                return Err(Error::DimensionMismatch {
                    what: what.into(),
                    expected: n,
                    got,
                });
            }
            Ok(())
        };
        check_len("inputs", self.inputs.len())?;
        check_len("a rows", self.a.len())?;
        check_len("b rows", self.b.len())?;
        check_len("tau rows", self.tau.len())?;
        check_len("G", self.g_bounds.len())?;
        check_len("F", self.f_bounds.len())?;
        check_len("g activations", self.g_act.len())?;
        check_len("f activations", self.f_act.len())?;
        for (i, row) in self.a.iter().enumerate() {
            check_len(&format!("a row {i}"), row.len())?;
        }
        for (i, row) in self.b.iter().enumerate() {
            check_len(&format!("b row {i}"), row.len())?;
        }
        for (i, row) in self.tau.iter().enumerate() {
            check_len(&format!("tau row {i}"), row.len())?;
            for (j, &t) in row.iter().enumerate() {
                if !t.is_finite() {
                    return Err(Error::NonFinite {
                        what: format!("tau[{i}][{j}]"),
                    });
                }
                if t < T::zero() {
                    return Err(Error::NegativeDelay {
                        i,
                        j,
                        value: t.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }

        let check_period = |what: String, f: &PeriodicFn<T>| -> Result<(), Error> {
            let rel = (f.period() - self.omega).abs() / self.omega;
            if rel > T::TOL_GRID {
                return Err(Error::PeriodMismatch {
                    what,
                    got: f.period().to_f64().unwrap_or(f64::NAN),
                    expected: self.omega.to_f64().unwrap_or(f64::NAN),
                });
            }
            Ok(())
        };
        for (i, f) in self.d.iter().enumerate() {
            check_period(format!("d[{i}]"), f)?;
        }
        for (i, f) in self.inputs.iter().enumerate() {
            check_period(format!("I[{i}]"), f)?;
        }
        for (i, row) in self.a.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                check_period(format!("a[{i}][{j}]"), f)?;
            }
        }
        for (i, row) in self.b.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                check_period(format!("b[{i}][{j}]"), f)?;
            }
        }

        for (what, bounds) in [("G", &self.g_bounds), ("F", &self.f_bounds)] {
            for (i, &v) in bounds.iter().enumerate() {
                if !(v >= T::zero()) || !v.is_finite() {
                    return Err(Error::InvalidBound {
                        what,
                        i,
                        value: v.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        let tol = T::one() + T::TOL_GRID;
        for (acts, bounds) in [(&self.g_act, &self.g_bounds), (&self.f_act, &self.f_bounds)] {
            for (i, act) in acts.iter().enumerate() {
                if act.lipschitz() > bounds[i] * tol {
                    return Err(Error::ActivationExceedsBound {
                        i,
                        lipschitz: act.lipschitz().to_f64().unwrap_or(f64::NAN),
                        bound: bounds[i].to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn d(&self) -> &[PeriodicFn<T>] {
        &self.d
    }

    pub fn a(&self) -> &[Vec<PeriodicFn<T>>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<PeriodicFn<T>>] {
        &self.b
    }

    pub fn inputs(&self) -> &[PeriodicFn<T>] {
        &self.inputs
    }

    pub fn tau(&self) -> &[Vec<T>] {
        &self.tau
    }

    pub fn g_bounds(&self) -> &[T] {
        &self.g_bounds
    }

    pub fn f_bounds(&self) -> &[T] {
        &self.f_bounds
    }

    pub fn g_act(&self) -> &[Activation<T>] {
        &self.g_act
    }

    pub fn f_act(&self) -> &[Activation<T>] {
        &self.f_act
    }

    pub fn tau_max(&self) -> T {
        self.tau.iter().flatten().fold(T::zero(), |m, &t| m.max(t))
    }

    /// Smallest strictly positive delay, if any.
    pub fn tau_min_positive(&self) -> Option<T> {
        let mut best: Option<T> = None;
        for &t in self.tau.iter().flatten() {
            if t > T::zero() {
                best = Some(match best {
                    Some(b) => b.min(t),
                    None => t,
                });
            }
        }
        best
    }

    /// True when every coefficient is a constant function.
    pub fn is_constant(&self) -> bool {
        self.d.iter().all(PeriodicFn::is_constant)
            && self.inputs.iter().all(PeriodicFn::is_constant)
            && self.a.iter().flatten().all(PeriodicFn::is_constant)
            && self.b.iter().flatten().all(PeriodicFn::is_constant)
    }

    /// Extracts the per-period extrema the criteria work with.
    pub fn star_bounds(&self) -> StarBounds<T> {
        let n = self.n();
        let mut a_star = vec![vec![T::zero(); n]; n];
        let mut b_star = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                a_star[i][j] = self.a[i][j].sup_abs();
                b_star[i][j] = self.b[i][j].sup_abs();
            }
        }
        StarBounds {
            a_star,
            b_star,
            i_star: self.inputs.iter().map(PeriodicFn::sup_abs).collect(),
            d_lower: self.d.iter().map(PeriodicFn::inf_value).collect(),
        }
    }
}

/// Free-function form of [`NetworkSpec::star_bounds`].
pub fn star_bounds<T: Real>(spec: &NetworkSpec<T>) -> StarBounds<T> {
    spec.star_bounds()
}
