//! Scalar abstraction.
//!
//! Everything numeric in this crate is generic over [`Real`], implemented for
//! `f32` and `f64`. Tolerances that gate verdicts (strict feasibility, minor
//! positivity, certificate re-checks) live here as associated constants so
//! each precision gets thresholds it can actually resolve. The `f64` values
//! are the ones the CLI and the acceptance suite run with.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the engine operates on.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + 'static {
    /// Slack below which a linear system does not count as strictly feasible.
    const TOL_STRICT: Self;
    /// Absolute tolerance for periodic-coefficient extremum refinement.
    const TOL_EXTREMUM: Self;
    /// Relative tolerance on leading principal minors in the M-matrix test.
    const TOL_DET: Self;
    /// Margin used when re-validating a certificate by direct substitution.
    const TOL_CERT: Self;
    /// Absolute tolerance for the decay-rate bisection.
    const TOL_BISECT: Self;
    /// Pivot threshold for the dense simplex.
    const TOL_PIVOT: Self;
    /// Relative slop accepted when a duration must be a multiple of a step.
    const TOL_GRID: Self;

    /// Converts an `f64` literal; panics only if the target type cannot hold it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in scalar type")
    }
}

impl Real for f64 {
    const TOL_STRICT: Self = 1e-9;
    const TOL_EXTREMUM: Self = 1e-9;
    const TOL_DET: Self = 1e-12;
    const TOL_CERT: Self = 1e-12;
    const TOL_BISECT: Self = 1e-8;
    const TOL_PIVOT: Self = 1e-10;
    const TOL_GRID: Self = 1e-12;
}

impl Real for f32 {
    const TOL_STRICT: Self = 1e-4;
    const TOL_EXTREMUM: Self = 1e-5;
    const TOL_DET: Self = 1e-6;
    const TOL_CERT: Self = 1e-6;
    const TOL_BISECT: Self = 1e-4;
    const TOL_PIVOT: Self = 1e-5;
    const TOL_GRID: Self = 1e-6;
}
