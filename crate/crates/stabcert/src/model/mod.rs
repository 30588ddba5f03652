//! Model layer: periodic coefficients, network specs, histories, activations
//! and the weighted norms the certificates are stated in.

mod activation;
mod history;
mod norm;
mod periodic;
mod spec;

pub use activation::Activation;
pub(crate) use history::hermite;
pub use history::History;
pub use norm::{weighted_norm, WeightedNorm};
pub use periodic::PeriodicFn;
pub use spec::{star_bounds, NetworkSpec, StarBounds};
