//! Direct integration of the delay dynamics and empirical convergence
//! measurements: the counterpart that keeps the certificates honest.

mod integrate;
mod lyapunov;
mod report;
mod trajectory;

pub use integrate::simulate;
pub use lyapunov::lyapunov_value;
pub use report::{orbit_variation, period_map_report, SimReport};
pub use trajectory::Trajectory;
