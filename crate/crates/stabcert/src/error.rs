//! Crate-wide error type.
//!
//! Payload values are stored as `f64` regardless of the working scalar so the
//! enum stays object-simple; messages name the offending coefficient or index
//! so CLI users can fix their input files.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: expected length {expected}, got {got}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        got: usize,
    },

    #[error("matrix for {what} must be square, got {rows}x{cols}")]
    NotSquare {
        what: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("non-finite value in {what}")]
    NonFinite { what: String },

    #[error("period must be positive and finite, got {omega}")]
    InvalidPeriod { omega: f64 },

    #[error("{what} has period {got}, spec period is {expected}")]
    PeriodMismatch {
        what: String,
        got: f64,
        expected: f64,
    },

    #[error("harmonic index must be >= 1 in {what}")]
    ZeroHarmonic { what: String },

    #[error("tau[{i}][{j}] = {value} is negative; delays must be >= 0")]
    NegativeDelay { i: usize, j: usize, value: f64 },

    #[error("activation bound {what}[{i}] = {value} must be finite and >= 0")]
    InvalidBound {
        what: &'static str,
        i: usize,
        value: f64,
    },

    #[error(
        "activation for coordinate {i} has Lipschitz constant {lipschitz}, \
         exceeding the declared bound {bound}"
    )]
    ActivationExceedsBound {
        i: usize,
        lipschitz: f64,
        bound: f64,
    },

    #[error("inf_t d_{i}(t) = {inf} but the criteria require it to be > 0")]
    NonPositiveDamping { i: usize, inf: f64 },

    #[error("weights must be strictly positive; entry {i} is {value}")]
    NonPositiveWeight { i: usize, value: f64 },

    #[error("exponent p must be >= 1 and finite, got {p}")]
    InvalidExponent { p: f64 },

    #[error(
        "zero coefficient at ({i},{j}) raised to negative exponent {exponent}; adjust alpha/beta"
    )]
    ZeroToNegativePower { i: usize, j: usize, exponent: f64 },

    #[error("certificate kind {kind} requires a constant-coefficient spec")]
    KindNeedsConstantSpec { kind: &'static str },

    #[error("certificate kind {kind} requires exponent parameters")]
    MissingExponents { kind: &'static str },

    #[error("comparison problem needs c_{i} > 0, got {value}")]
    NonPositiveComparisonCoeff { i: usize, value: f64 },

    #[error("emat[{i}][{j}] = {value} must be >= 1")]
    InvalidDelayFactor { i: usize, j: usize, value: f64 },

    #[error(
        "supplied weights do not satisfy the source system: row {i} margin {margin} (need < 0)"
    )]
    PreconditionViolated { i: usize, margin: f64 },

    #[error("{what} (this contradicts a proven guarantee; please report it)")]
    Internal { what: String },

    #[error("step size {h} must be positive, at most the smallest positive delay {tau_min}, and divide the period")]
    InvalidStep { h: f64, tau_min: f64 },

    #[error("{what} = {value} must be a multiple of the step {h}")]
    NotOnGrid {
        what: &'static str,
        value: f64,
        h: f64,
    },

    #[error("history is invalid: {what}")]
    InvalidHistory { what: String },

    #[error("state became non-finite at t = {t} (blow-up)")]
    Divergence { t: f64 },

    #[error("trajectory spans [{t0}, {t_end}] but the operation needs [{need_lo}, {need_hi}]")]
    SpanTooShort {
        t0: f64,
        t_end: f64,
        need_lo: f64,
        need_hi: f64,
    },

    #[error("period count J = {j} is too small; need J >= 3")]
    TooFewPeriods { j: usize },

    #[error("inputs out of domain: {what}")]
    InvalidArgument { what: String },

    #[error("failed to parse JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn internal(what: impl Into<String>) -> Self {
        Error::Internal { what: what.into() }
    }
}
