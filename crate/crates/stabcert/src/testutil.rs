//! Fixtures shared across module tests.

use crate::model::{NetworkSpec, PeriodicFn};

pub(crate) fn c(v: f64) -> PeriodicFn<f64> {
    PeriodicFn::constant(v, 1.0).unwrap()
}

/// Two coupled units, d = (2, 11), a = [[1,3],[3,1]], no delayed part,
/// zero input. The L1 matrix at rate 0 is [[-1, 3], [3, -10]].
pub(crate) fn two_unit_spec() -> NetworkSpec<f64> {
    NetworkSpec::new(
        1.0,
        vec![c(2.0), c(11.0)],
        vec![vec![c(1.0), c(3.0)], vec![c(3.0), c(1.0)]],
        vec![vec![c(0.0), c(0.0)], vec![c(0.0), c(0.0)]],
        vec![c(0.0), c(0.0)],
        vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        vec![1.0, 1.0],
        vec![1.0, 1.0],
    )
    .unwrap()
}

/// Same units driven by I = (sin 2 pi t, cos 2 pi t); genuinely periodic.
pub(crate) fn two_unit_forced() -> NetworkSpec<f64> {
    NetworkSpec::new(
        1.0,
        vec![c(2.0), c(11.0)],
        vec![vec![c(1.0), c(3.0)], vec![c(3.0), c(1.0)]],
        vec![vec![c(0.0), c(0.0)], vec![c(0.0), c(0.0)]],
        vec![
            PeriodicFn::new(0.0, vec![(1, 0.0, 1.0)], 1.0).unwrap(),
            PeriodicFn::new(0.0, vec![(1, 1.0, 0.0)], 1.0).unwrap(),
        ],
        vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        vec![1.0, 1.0],
        vec![1.0, 1.0],
    )
    .unwrap()
}

/// Same units with constant input I = (1, 1); the equilibrium is (13, 4).
pub(crate) fn two_unit_constant_input() -> NetworkSpec<f64> {
    NetworkSpec::new(
        1.0,
        vec![c(2.0), c(11.0)],
        vec![vec![c(1.0), c(3.0)], vec![c(3.0), c(1.0)]],
        vec![vec![c(0.0), c(0.0)], vec![c(0.0), c(0.0)]],
        vec![c(1.0), c(1.0)],
        vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        vec![1.0, 1.0],
        vec![1.0, 1.0],
    )
    .unwrap()
}

/// One unit with constant coefficients: damping `d`, instantaneous gain
/// `a11`, delayed gain `b11` acting over delay `tau`. Unit period, no input.
pub(crate) fn scalar_spec(d: f64, a11: f64, b11: f64, tau: f64) -> NetworkSpec<f64> {
    NetworkSpec::new(
        1.0,
        vec![c(d)],
        vec![vec![c(a11)]],
        vec![vec![c(b11)]],
        vec![c(0.0)],
        vec![vec![tau]],
        vec![1.0],
        vec![1.0],
    )
    .unwrap()
}
