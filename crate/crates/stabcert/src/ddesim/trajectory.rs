//! Trajectory storage and dense output.
//!
//! A trajectory is the state and derivative of a solution on a uniform grid.
//! Between nodes it is read through cubic Hermite interpolation, which is
//! exact at the nodes and matches the integrator's O(h^4) accuracy between
//! them; everything downstream (delay lookups, period maps, quadrature)
//! evaluates the solution only through this interface.

use std::io::{self, Write};

use crate::error::Error;
use crate::model::{hermite, NetworkSpec};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    spec: NetworkSpec<T>,
    t0: T,
    h: T,
    samples: Vec<Vec<T>>,
    derivs: Vec<Vec<T>>,
}

impl<T: Real> Trajectory<T> {
    /// Wraps precomputed grid data; `samples[k]` and `derivs[k]` belong to
    /// time `t0 + k h`.
    pub fn from_parts(
        spec: NetworkSpec<T>,
        t0: T,
        h: T,
        samples: Vec<Vec<T>>,
        derivs: Vec<Vec<T>>,
    ) -> Result<Self, Error> {
        if !(h > T::zero()) || !h.is_finite() || !t0.is_finite() {
            return Err(Error::InvalidArgument {
                what: format!("trajectory grid needs finite t0 and h > 0, got t0 = {t0}, h = {h}"),
            });
        }
        if samples.len() < 2 {
            return Err(Error::InvalidArgument {
                what: format!(
                    "trajectory needs at least 2 grid points, got {}",
                    samples.len()
                ),
            });
        }
        if derivs.len() != samples.len() {
            return Err(Error::DimensionMismatch {
                what: "trajectory derivatives".into(),
                expected: samples.len(),
                got: derivs.len(),
            });
        }
        let n = spec.n();
        for row in samples.iter().chain(derivs.iter()) {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    what: "trajectory state".into(),
                    expected: n,
                    got: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    what: "trajectory data".into(),
                });
            }
        }
        Ok(Trajectory {
            spec,
            t0,
            h,
            samples,
            derivs,
        })
    }

    pub fn spec(&self) -> &NetworkSpec<T> {
        &self.spec
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn t_end(&self) -> T {
        self.t0 + self.h * T::from_usize(self.samples.len() - 1).unwrap()
    }

    pub fn samples(&self) -> &[Vec<T>] {
        &self.samples
    }

    pub fn derivs(&self) -> &[Vec<T>] {
        &self.derivs
    }

    /// Dense evaluation of coordinate `i` at time `t` in `[t0, t_end]`.
    pub fn eval_coord(&self, i: usize, t: T) -> Result<T, Error> {
        let grid = DenseGrid {
            t0: self.t0,
            h: self.h,
            samples: &self.samples,
            derivs: &self.derivs,
        };
        grid.eval_coord(i, t)
    }

    /// Dense evaluation of the full state at time `t`.
    pub fn eval(&self, t: T) -> Result<Vec<T>, Error> {
        (0..self.spec.n()).map(|i| self.eval_coord(i, t)).collect()
    }

    /// Writes `t,u1,...,un` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        write!(out, "t")?;
        for i in 1..=self.spec.n() {
            write!(out, ",u{i}")?;
        }
        writeln!(out)?;
        for (k, row) in self.samples.iter().enumerate() {
            let t = self.t0 + self.h * T::from_usize(k).unwrap();
            write!(out, "{t:.16e}")?;
            for v in row {
                write!(out, ",{v:.16e}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Borrowed view of (possibly still growing) grid data; the integrator uses
/// it for delay lookups before a [`Trajectory`] exists.
pub(crate) struct DenseGrid<'a, T> {
    pub t0: T,
    pub h: T,
    pub samples: &'a [Vec<T>],
    pub derivs: &'a [Vec<T>],
}

impl<T: Real> DenseGrid<'_, T> {
    /// Fractional steps a query may fall outside the grid and still snap in.
    fn slop() -> T {
        T::lit(1e-9)
    }

    pub fn eval_coord(&self, i: usize, t: T) -> Result<T, Error> {
        let last = T::from_usize(self.samples.len() - 1).unwrap();
        let x = (t - self.t0) / self.h;
        if x < -Self::slop() || x > last + Self::slop() {
            let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
            return Err(Error::SpanTooShort {
                t0: f(self.t0),
                t_end: f(self.t0 + self.h * last),
                need_lo: f(t),
                need_hi: f(t),
            });
        }
        // snap to the nearest node when within slop: exactness at grid
        // points is part of the contract and must not depend on rounding
        let r = x.round();
        if (x - r).abs() <= Self::slop() {
            return Ok(self.samples[r.to_usize().unwrap()][i]);
        }
        let k = x.floor().to_usize().unwrap();
        let theta = x - T::from_usize(k).unwrap();
        Ok(hermite(
            self.samples[k][i],
            self.derivs[k][i] * self.h,
            self.samples[k + 1][i],
            self.derivs[k + 1][i] * self.h,
            theta,
        ))
    }
}
