//! Weighted p-norms used by the certificates.
//!
//! ```text
//! |u|_{xi,p} = ( (1/n) sum_i xi_i |u_i|^p )^(1/p)
//! ```

use crate::error::Error;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedNorm<T> {
    xi: Vec<T>,
    p: T,
}

impl<T: Real> WeightedNorm<T> {
    pub fn new(xi: Vec<T>, p: T) -> Result<Self, Error> {
        if !(p >= T::one()) || !p.is_finite() {
            return Err(Error::InvalidExponent {
                p: p.to_f64().unwrap_or(f64::NAN),
            });
        }
        if xi.is_empty() {
            return Err(Error::DimensionMismatch {
                what: "norm weights".into(),
                expected: 1,
                got: 0,
            });
        }
        for (i, &w) in xi.iter().enumerate() {
            if !(w > T::zero()) || !w.is_finite() {
                return Err(Error::NonPositiveWeight {
                    i,
                    value: w.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(WeightedNorm { xi, p })
    }

    pub fn xi(&self) -> &[T] {
        &self.xi
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn eval(&self, u: &[T]) -> Result<T, Error> {
        if u.len() != self.xi.len() {
            return Err(Error::DimensionMismatch {
                what: "norm argument".into(),
                expected: self.xi.len(),
                got: u.len(),
            });
        }
        let n = T::from_usize(self.xi.len()).unwrap();
        let mut acc = T::zero();
        for (w, x) in self.xi.iter().zip(u) {
            acc = acc + *w * x.abs().powf(self.p);
        }
        Ok((acc / n).powf(self.p.recip()))
    }
}

/// Free-function form of [`WeightedNorm::eval`].
pub fn weighted_norm<T: Real>(u: &[T], norm: &WeightedNorm<T>) -> Result<T, Error> {
    norm.eval(u)
}
