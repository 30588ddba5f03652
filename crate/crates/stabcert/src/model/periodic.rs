//! Periodic coefficients as finite Fourier series.
//!
//! ```text
//! f(t) = c0 + sum_k  a_k cos(2 pi k t / omega) + b_k sin(2 pi k t / omega)
//! ```
//!
//! Criteria never look at pointwise values, only at `sup_t |f(t)|` and
//! `inf_t f(t)` over one period. For zero or one harmonic both extrema have
//! closed forms (the single-harmonic part is a pure sinusoid of amplitude
//! `hypot(a_k, b_k)`). With two or more harmonics the extremum is found by
//! dense sampling (4096 points) followed by golden-section refinement of the
//! winning bracket; the refinement tolerance is far below the 1e-9 the
//! certificates rely on.

use crate::error::Error;
use crate::scalar::Real;

/// Samples per period when an extremum has no closed form.
const EXTREMUM_SAMPLES: usize = 4096;
/// Golden-section iterations; the bracket shrinks by 0.618 per step.
const GOLDEN_ITERS: usize = 90;

/// Real-valued periodic function given by a finite Fourier series.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFn<T> {
    c0: T,
    /// `(k, a_k, b_k)` triples; `k >= 1`. Duplicate `k` are summed.
    harmonics: Vec<(u32, T, T)>,
    period: T,
}

impl<T: Real> PeriodicFn<T> {
    pub fn new(c0: T, harmonics: Vec<(u32, T, T)>, period: T) -> Result<Self, Error> {
        if !(period > T::zero()) || !period.is_finite() {
            return Err(Error::InvalidPeriod {
                omega: period.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !c0.is_finite() {
            return Err(Error::NonFinite {
                what: "periodic coefficient c0".into(),
            });
        }
        for &(k, a, b) in &harmonics {
            if k == 0 {
                return Err(Error::ZeroHarmonic {
                    what: "periodic coefficient".into(),
                });
            }
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::NonFinite {
                    what: format!("harmonic {k}"),
                });
            }
        }
        Ok(PeriodicFn {
            c0,
            harmonics,
            period,
        })
    }

    /// Constant function, periodic with any `period`.
    pub fn constant(c0: T, period: T) -> Result<Self, Error> {
        Self::new(c0, Vec::new(), period)
    }

    pub fn c0(&self) -> T {
        self.c0
    }

    pub fn harmonics(&self) -> &[(u32, T, T)] {
        &self.harmonics
    }

    pub fn period(&self) -> T {
        self.period
    }

    /// True when the series has no oscillating part.
    pub fn is_constant(&self) -> bool {
        self.harmonics
            .iter()
            .all(|&(_, a, b)| a == T::zero() && b == T::zero())
    }

    pub fn value(&self, t: T) -> T {
        let two_pi = T::PI() + T::PI();
        let base = two_pi * t / self.period;
        let mut acc = self.c0;
        for &(k, a, b) in &self.harmonics {
            let arg = base * T::from_u32(k).unwrap();
            acc = acc + a * arg.cos() + b * arg.sin();
        }
        acc
    }

    /// `sup_t |f(t)|` over one period.
    pub fn sup_abs(&self) -> T {
        match self.closed_form_amplitude() {
            Some(r) => self.c0.abs() + r,
            None => self.refine_extremum(|x| x.abs(), true),
        }
    }

    /// `inf_t f(t)` over one period.
    pub fn inf_value(&self) -> T {
        match self.closed_form_amplitude() {
            Some(r) => self.c0 - r,
            None => self.refine_extremum(|x| x, false),
        }
    }

    /// Amplitude of the oscillating part when it is a single sinusoid.
    fn closed_form_amplitude(&self) -> Option<T> {
        let active: Vec<&(u32, T, T)> = self
            .harmonics
            .iter()
            .filter(|&&(_, a, b)| a != T::zero() || b != T::zero())
            .collect();
        match active.len() {
            0 => Some(T::zero()),
            1 => {
                let &(_, a, b) = active[0];
                Some(a.hypot(b))
            }
            _ => None,
        }
    }

    /// Dense scan plus golden-section polish of `g(f(t))`, maximizing or
    /// minimizing. The scan is fine enough that the winning bracket contains
    /// the global extremum of the low-degree trig polynomial.
    fn refine_extremum(&self, g: impl Fn(T) -> T, maximize: bool) -> T {
        let n = T::from_usize(EXTREMUM_SAMPLES).unwrap();
        let sign = if maximize { T::one() } else { -T::one() };
        let score = |t: T| sign * g(self.value(t));

        let mut best_i = 0usize;
        let mut best = score(T::zero());
        for i in 1..EXTREMUM_SAMPLES {
            let t = self.period * T::from_usize(i).unwrap() / n;
            let s = score(t);
            if s > best {
                best = s;
                best_i = i;
            }
        }

        let step = self.period / n;
        let mut lo = T::from_usize(best_i).unwrap() * step - step;
        let mut hi = lo + step + step;
        let inv_phi = T::lit(0.618_033_988_749_894_9);
        let mut m1 = hi - (hi - lo) * inv_phi;
        let mut m2 = lo + (hi - lo) * inv_phi;
        let mut s1 = score(m1);
        let mut s2 = score(m2);
        for _ in 0..GOLDEN_ITERS {
            if hi - lo < T::TOL_EXTREMUM * T::lit(1e-3) {
                break;
            }
            if s1 >= s2 {
                hi = m2;
                m2 = m1;
                s2 = s1;
                m1 = hi - (hi - lo) * inv_phi;
                s1 = score(m1);
            } else {
                lo = m1;
                m1 = m2;
                s1 = s2;
                m2 = lo + (hi - lo) * inv_phi;
                s2 = score(m2);
            }
        }
        sign * best.max(s1).max(s2)
    }
}
