//! Certificates and simulation for delayed recurrent networks with periodic
//! coefficients.
//!
//! The model is an n-unit network
//!
//! ```text
//! du_i/dt = -d_i(t) u_i(t) + sum_j a_ij(t) g_j(u_j(t))
//!                          + sum_j b_ij(t) f_j(u_j(t - tau_ij)) + I_i(t)
//! ```
//!
//! with omega-periodic coefficients and constant delays. The crate answers
//! one question about it from two independent directions:
//!
//! * [`criteria`] assembles weighted comparison matrices whose strict
//!   feasibility (decided in [`polyhedra`]) certifies that every solution
//!   converges exponentially to one periodic orbit, and searches the largest
//!   certifiable decay rate;
//! * [`ddesim`] integrates the delay equation directly and measures the
//!   contraction of the period map, so certified rates can be cross-checked
//!   against observed ones.
//!
//! [`transforms`] converts certificates between the L1 and Lp families, and
//! [`json`] fixes the wire formats the CLI reads and writes.
//!
//! Everything is generic over the scalar type through [`Real`]; the aliases
//! below pin the `f64` instantiations that the CLI and the test suite use.

// dense kernels index their matrices, and validations negate comparisons on
// purpose so NaN lands on the rejecting branch
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod criteria;
mod error;
pub mod json;
pub mod model;
pub mod polyhedra;
mod scalar;
pub mod transforms;

pub mod ddesim;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use scalar::Real;

pub type PeriodicFn64 = model::PeriodicFn<f64>;
pub type NetworkSpec64 = model::NetworkSpec<f64>;
pub type StarBounds64 = model::StarBounds<f64>;
pub type History64 = model::History<f64>;
pub type WeightedNorm64 = model::WeightedNorm<f64>;
pub type IneqSystem64 = polyhedra::IneqSystem<f64>;
pub type FeasibilityResult64 = polyhedra::FeasibilityResult<f64>;
pub type ExponentParams64 = criteria::ExponentParams<f64>;
pub type Certificate64 = criteria::Certificate<f64>;
pub type ComparisonProblem64 = transforms::ComparisonProblem<f64>;
pub type Trajectory64 = ddesim::Trajectory<f64>;
pub type SimReport64 = ddesim::SimReport<f64>;
