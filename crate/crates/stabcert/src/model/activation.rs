//! Activation catalog.
//!
//! The criteria only consume the Lipschitz bounds `G_i`, `F_i`; concrete
//! activations exist so the simulator can integrate the dynamics. Both shipped
//! shapes satisfy `|g(x+u) - g(x)| <= lipschitz() * |u|` globally.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Activation<T> {
    /// `g(x) = gain * x`
    Linear { gain: T },
    /// `g(x) = gain * min(1, max(-1, x))`
    Saturation { gain: T },
}

impl<T: Real> Activation<T> {
    pub fn identity() -> Self {
        Activation::Linear { gain: T::one() }
    }

    pub fn eval(&self, x: T) -> T {
        match *self {
            Activation::Linear { gain } => gain * x,
            Activation::Saturation { gain } => gain * x.max(-T::one()).min(T::one()),
        }
    }

    /// Smallest global Lipschitz constant.
    pub fn lipschitz(&self) -> T {
        match *self {
            Activation::Linear { gain } | Activation::Saturation { gain } => gain.abs(),
        }
    }
}
