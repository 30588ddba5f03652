//! Stability criteria.
//!
//! A certificate is a positive weight vector making every row of an assembled
//! comparison matrix strictly negative. With starred bounds `a*`, `b*`,
//! lower damping `d_i = inf_t d_i(t)` and a decay rate `eps >= 0`, the row
//! systems are, over weights `x > 0`:
//!
//! L1 (row i):
//! ```text
//! (eps - d_i) x_i + G_i [ a*_ii x_i + sum_{j!=i} a*_ji x_j ]
//!                 + F_i sum_j b*_ji e^{eps tau_ji} x_j  < 0
//! ```
//!
//! Lp, p > 1, q = p/(p-1), with exponent splittings `alpha`, `beta`:
//! ```text
//! (eps - d_i) x_i + G_i [ a*_ii x_i + (1/p) sum_{j!=i} (a*_ji)^{alpha_ji p} x_j ]
//!   + (1/q) x_i sum_{j!=i} G_j (a*_ij)^{(1-alpha_ij) q}
//!   + (1/p) F_i sum_j (b*_ji)^{beta_ji p} e^{eps tau_ji} x_j
//!   + (1/q) x_i sum_j F_j (b*_ij)^{(1-beta_ij) q} e^{eps tau_ij}  < 0
//! ```
//!
//! A feasible x certifies global exponential convergence (rate `eps` in the
//! matching weighted norm) of every solution to one periodic solution, or to
//! an equilibrium for the constant-coefficient kinds. `p = 1` collapses the
//! Lp form onto the L1 form, and the balanced choice `alpha = beta = 1/p`
//! needs no exponent tuning at all. Zero coefficients follow the convention
//! `0^e = 0` for `e >= 0` (a vanishing coefficient contributes nothing);
//! raising a zero coefficient to a negative exponent is a domain error since
//! the term would blow up as the coefficient goes to zero.

use crate::error::Error;
use crate::model::{NetworkSpec, StarBounds};
use crate::polyhedra::{mat_vec, solve_strict, FeasibilityResult, IneqSystem};
use crate::scalar::Real;

/// Maximum bisection steps for [`max_epsilon`]; the interval halves each
/// step, so this is never the binding limit at sane tolerances.
const MAX_BISECT_ITERS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriterionKind {
    L1,
    LpBalanced,
    LpGeneral,
    ConstantL1,
    ConstantLpBalanced,
    ConstantLpGeneral,
}

impl CriterionKind {
    pub fn name(self) -> &'static str {
        match self {
            CriterionKind::L1 => "L1",
            CriterionKind::LpBalanced => "LpBalanced",
            CriterionKind::LpGeneral => "LpGeneral",
            CriterionKind::ConstantL1 => "ConstantL1",
            CriterionKind::ConstantLpBalanced => "ConstantLpBalanced",
            CriterionKind::ConstantLpGeneral => "ConstantLpGeneral",
        }
    }

    /// Kinds that claim convergence to an equilibrium and therefore require
    /// a constant-coefficient spec.
    pub fn requires_constant(self) -> bool {
        matches!(
            self,
            CriterionKind::ConstantL1
                | CriterionKind::ConstantLpBalanced
                | CriterionKind::ConstantLpGeneral
        )
    }

    pub fn is_l1(self) -> bool {
        matches!(self, CriterionKind::L1 | CriterionKind::ConstantL1)
    }

    pub fn is_balanced(self) -> bool {
        matches!(
            self,
            CriterionKind::LpBalanced | CriterionKind::ConstantLpBalanced
        )
    }
}

/// Exponent data `(p, alpha, beta)` for the Lp criteria.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentParams<T> {
    pub p: T,
    pub alpha: Vec<Vec<T>>,
    pub beta: Vec<Vec<T>>,
}

impl<T: Real> ExponentParams<T> {
    pub fn new(p: T, alpha: Vec<Vec<T>>, beta: Vec<Vec<T>>) -> Result<Self, Error> {
        let e = ExponentParams { p, alpha, beta };
        e.validate(None)?;
        Ok(e)
    }

    /// The tuning-free splitting `alpha = beta = 1/p`.
    pub fn balanced(p: T, n: usize) -> Result<Self, Error> {
        if !(p >= T::one()) || !p.is_finite() {
            return Err(Error::InvalidExponent {
                p: p.to_f64().unwrap_or(f64::NAN),
            });
        }
        let v = vec![vec![p.recip(); n]; n];
        Ok(ExponentParams {
            p,
            alpha: v.clone(),
            beta: v,
        })
    }

    /// Conjugate exponent; `None` at `p = 1` (the L1 form applies instead).
    pub fn q(&self) -> Option<T> {
        if self.p == T::one() {
            None
        } else {
            Some(self.p / (self.p - T::one()))
        }
    }

    pub(crate) fn validate(&self, n: Option<usize>) -> Result<(), Error> {
        if !(self.p >= T::one()) || !self.p.is_finite() {
            return Err(Error::InvalidExponent {
                p: self.p.to_f64().unwrap_or(f64::NAN),
            });
        }
        let rows = self.alpha.len();
        let expect = n.unwrap_or(rows);
        for (what, m) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            if m.len() != expect {
                return Err(Error::DimensionMismatch {
                    what: what.into(),
                    expected: expect,
                    got: m.len(),
                });
            }
            for row in m.iter() {
                if row.len() != expect {
                    return Err(Error::DimensionMismatch {
                        what: format!("{what} row"),
                        expected: expect,
                        got: row.len(),
                    });
                }
                if row.iter().any(|v| !v.is_finite()) {
                    return Err(Error::NonFinite { what: what.into() });
                }
            }
        }
        Ok(())
    }
}

/// A verified stability certificate: positive weights, the exponent data the
/// matrix was assembled with (absent for L1 kinds), the certified decay rate
/// and the strict margin every row clears.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<T> {
    pub kind: CriterionKind,
    pub weights: Vec<T>,
    pub exps: Option<ExponentParams<T>>,
    pub epsilon: T,
    pub slack: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport<T> {
    pub valid: bool,
    pub row_margins: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightSearch<T> {
    Found(Certificate<T>),
    Infeasible { slack: T, boundary: bool },
}

impl<T> WeightSearch<T> {
    pub fn certificate(&self) -> Option<&Certificate<T>> {
        match self {
            WeightSearch::Found(c) => Some(c),
            WeightSearch::Infeasible { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MaxEpsilon<T> {
    Certified {
        epsilon_star: T,
        certificate: Certificate<T>,
    },
    /// Not even `eps = 0` admits weights.
    Infeasible { slack: T, boundary: bool },
}

/// `base^e` under the zero-coefficient convention (see module docs).
pub(crate) fn pow_star<T: Real>(base: T, e: T, i: usize, j: usize) -> Result<T, Error> {
    if base == T::zero() {
        if e < T::zero() {
            return Err(Error::ZeroToNegativePower {
                i,
                j,
                exponent: e.to_f64().unwrap_or(f64::NAN),
            });
        }
        return Ok(T::zero());
    }
    Ok(base.powf(e))
}

fn validate_for_criteria<T: Real>(
    spec: &NetworkSpec<T>,
    kind: CriterionKind,
    epsilon: T,
) -> Result<StarBounds<T>, Error> {
    if kind.requires_constant() && !spec.is_constant() {
        return Err(Error::KindNeedsConstantSpec { kind: kind.name() });
    }
    if !(epsilon >= T::zero()) || !epsilon.is_finite() {
        return Err(Error::InvalidArgument {
            what: format!("epsilon must be finite and >= 0, got {epsilon}"),
        });
    }
    let sb = spec.star_bounds();
    for (i, &dl) in sb.d_lower.iter().enumerate() {
        if !(dl > T::zero()) {
            return Err(Error::NonPositiveDamping {
                i,
                inf: dl.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(sb)
}

/// Assembles the L1 row system at rate `epsilon`.
pub fn assemble_l1<T: Real>(spec: &NetworkSpec<T>, epsilon: T) -> Result<IneqSystem<T>, Error> {
    let sb = validate_for_criteria(spec, CriterionKind::L1, epsilon)?;
    l1_matrix(spec, &sb, epsilon)
}

fn l1_matrix<T: Real>(
    spec: &NetworkSpec<T>,
    sb: &StarBounds<T>,
    epsilon: T,
) -> Result<IneqSystem<T>, Error> {
    let n = spec.n();
    let g = spec.g_bounds();
    let f = spec.f_bounds();
    let tau = spec.tau();
    let mut m = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let delay_gain = (epsilon * tau[j][i]).exp();
            if i == j {
                m[i][i] = (epsilon - sb.d_lower[i])
                    + g[i] * sb.a_star[i][i]
                    + f[i] * sb.b_star[i][i] * delay_gain;
            } else {
                m[i][j] = g[i] * sb.a_star[j][i] + f[i] * sb.b_star[j][i] * delay_gain;
            }
        }
    }
    IneqSystem::strict(m)
}

/// Assembles the Lp row system; `p = 1` collapses onto [`assemble_l1`].
pub fn assemble_lp<T: Real>(
    spec: &NetworkSpec<T>,
    exps: &ExponentParams<T>,
    epsilon: T,
) -> Result<IneqSystem<T>, Error> {
    let sb = validate_for_criteria(spec, CriterionKind::LpGeneral, epsilon)?;
    exps.validate(Some(spec.n()))?;
    match exps.q() {
        None => l1_matrix(spec, &sb, epsilon),
        Some(q) => lp_matrix(spec, &sb, exps, q, epsilon),
    }
}

fn lp_matrix<T: Real>(
    spec: &NetworkSpec<T>,
    sb: &StarBounds<T>,
    exps: &ExponentParams<T>,
    q: T,
    epsilon: T,
) -> Result<IneqSystem<T>, Error> {
    let n = spec.n();
    let g = spec.g_bounds();
    let f = spec.f_bounds();
    let tau = spec.tau();
    let p = exps.p;
    let (alpha, beta) = (&exps.alpha, &exps.beta);
    let one = T::one();
    let mut m = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        let mut diag = (epsilon - sb.d_lower[i]) + g[i] * sb.a_star[i][i];
        for j in 0..n {
            if j != i {
                diag = diag + g[j] * pow_star(sb.a_star[i][j], (one - alpha[i][j]) * q, i, j)? / q;
            }
            diag = diag
                + f[j]
                    * pow_star(sb.b_star[i][j], (one - beta[i][j]) * q, i, j)?
                    * (epsilon * tau[i][j]).exp()
                    / q;
        }
        diag = diag
            + f[i] * pow_star(sb.b_star[i][i], beta[i][i] * p, i, i)? * (epsilon * tau[i][i]).exp()
                / p;
        m[i][i] = diag;
        for j in 0..n {
            if j == i {
                continue;
            }
            m[i][j] = g[i] * pow_star(sb.a_star[j][i], alpha[j][i] * p, j, i)? / p
                + f[i]
                    * pow_star(sb.b_star[j][i], beta[j][i] * p, j, i)?
                    * (epsilon * tau[j][i]).exp()
                    / p;
        }
    }
    IneqSystem::strict(m)
}

/// Assembles the system matching `kind`. Balanced kinds rebuild
/// `alpha = beta = 1/p` from `exps.p`; L1 kinds ignore `exps`.
pub fn assemble<T: Real>(
    spec: &NetworkSpec<T>,
    kind: CriterionKind,
    exps: Option<&ExponentParams<T>>,
    epsilon: T,
) -> Result<IneqSystem<T>, Error> {
    // constant kinds get their spec check here; the row formulas coincide
    // because starred bounds of constants are the magnitudes themselves
    if kind.requires_constant() && !spec.is_constant() {
        return Err(Error::KindNeedsConstantSpec { kind: kind.name() });
    }
    if kind.is_l1() {
        return assemble_l1(spec, epsilon);
    }
    let exps = exps.ok_or(Error::MissingExponents { kind: kind.name() })?;
    if kind.is_balanced() {
        let balanced = ExponentParams::balanced(exps.p, spec.n())?;
        assemble_lp(spec, &balanced, epsilon)
    } else {
        assemble_lp(spec, exps, epsilon)
    }
}

/// Re-validates a certificate by direct substitution into the assembled
/// matrix. Valid iff every row margin clears `-TOL_CERT`.
pub fn check_certificate<T: Real>(
    spec: &NetworkSpec<T>,
    cert: &Certificate<T>,
) -> Result<CheckReport<T>, Error> {
    let n = spec.n();
    if cert.weights.len() != n {
        return Err(Error::DimensionMismatch {
            what: "certificate weights".into(),
            expected: n,
            got: cert.weights.len(),
        });
    }
    for (i, &w) in cert.weights.iter().enumerate() {
        if !(w > T::zero()) || !w.is_finite() {
            return Err(Error::NonPositiveWeight {
                i,
                value: w.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    if !cert.kind.is_l1() && cert.exps.is_none() {
        return Err(Error::MissingExponents {
            kind: cert.kind.name(),
        });
    }
    let sys = assemble(spec, cert.kind, cert.exps.as_ref(), cert.epsilon)?;
    let row_margins = mat_vec(sys.matrix(), &cert.weights);
    let valid = row_margins.iter().all(|&v| v <= -T::TOL_CERT);
    Ok(CheckReport { valid, row_margins })
}

/// Searches for certificate weights at the given rate. Infeasibility is an
/// outcome, not an error; every found certificate is re-verified by
/// substitution before being returned.
pub fn find_weights<T: Real>(
    spec: &NetworkSpec<T>,
    kind: CriterionKind,
    exps: Option<&ExponentParams<T>>,
    epsilon: T,
) -> Result<WeightSearch<T>, Error> {
    let sys = assemble(spec, kind, exps, epsilon)?;
    let r: FeasibilityResult<T> = solve_strict(&sys)?;
    if !r.feasible {
        return Ok(WeightSearch::Infeasible {
            slack: r.slack,
            boundary: r.boundary,
        });
    }
    let stored_exps = if kind.is_l1() {
        None
    } else if kind.is_balanced() {
        Some(ExponentParams::balanced(
            exps.expect("assemble checked this").p,
            spec.n(),
        )?)
    } else {
        exps.cloned()
    };
    let cert = Certificate {
        kind,
        weights: r.x.expect("feasible result carries a point"),
        exps: stored_exps,
        epsilon,
        slack: r.slack,
    };
    let report = check_certificate(spec, &cert)?;
    if !report.valid {
        return Err(Error::internal(
            "LP-produced certificate failed its substitution re-check",
        ));
    }
    Ok(WeightSearch::Found(cert))
}

/// Largest certifiable decay rate for the given kind, by bisection over
/// `[0, min_i inf_t d_i(t)]`. Feasibility is monotone in `epsilon` (raising
/// it only grows every row), so bisection is exact up to `TOL_BISECT`; the
/// reported certificate is the one found at the largest feasible probe.
pub fn max_epsilon<T: Real>(
    spec: &NetworkSpec<T>,
    kind: CriterionKind,
    exps: Option<&ExponentParams<T>>,
) -> Result<MaxEpsilon<T>, Error> {
    let sb = validate_for_criteria(spec, kind, T::zero())?;
    let mut hi = sb.d_lower.iter().fold(T::infinity(), |acc, &v| acc.min(v));

    let at_zero = find_weights(spec, kind, exps, T::zero())?;
    let mut best = match at_zero {
        WeightSearch::Found(c) => c,
        WeightSearch::Infeasible { slack, boundary } => {
            return Ok(MaxEpsilon::Infeasible { slack, boundary })
        }
    };
    // at eps = hi the weakest row is already nonnegative, so hi is infeasible
    let mut lo = T::zero();
    for _ in 0..MAX_BISECT_ITERS {
        if hi - lo <= T::TOL_BISECT {
            break;
        }
        let mid = (lo + hi) * T::lit(0.5);
        match find_weights(spec, kind, exps, mid)? {
            WeightSearch::Found(c) => {
                best = c;
                lo = mid;
            }
            WeightSearch::Infeasible { .. } => hi = mid,
        }
    }
    Ok(MaxEpsilon::Certified {
        epsilon_star: lo,
        certificate: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{scalar_spec, two_unit_spec};

    fn l1_m(spec: &NetworkSpec<f64>, eps: f64) -> Vec<Vec<f64>> {
        assemble_l1(spec, eps).unwrap().matrix().to_vec()
    }

    #[test]
    fn two_unit_l1_matrix() {
        let m = l1_m(&two_unit_spec(), 0.0);
        assert_eq!(m, vec![vec![-1.0, 3.0], vec![3.0, -10.0]]);
    }

    #[test]
    fn decoupled_l1_matrix() {
        let spec = scalar_spec(2.0, 1.0, 0.0, 0.0);
        assert_eq!(l1_m(&spec, 0.0), vec![vec![-1.0]]);
    }

    #[test]
    fn delayed_self_coupling_carries_the_rate_factor() {
        // d = 2, b11 = 1, tau = 1 at eps = 0.4: row is -2 + 0.4 + e^{0.4}
        let spec = scalar_spec(2.0, 0.0, 1.0, 1.0);
        let m = l1_m(&spec, 0.4);
        let oracle = -2.0 + 0.4 + 0.4f64.exp();
        assert!((m[0][0] - oracle).abs() <= 1e-12);
        assert!((oracle - (-0.10818)).abs() <= 1e-5);
    }

    #[test]
    fn general_lp_matrix_reproduces_the_tuned_example() {
        // alpha*_12 = (1/2) log_3(19/2), alpha*_21 = (1/2) log_3(18/19)
        let spec = two_unit_spec();
        let a12 = 0.5 * (19.0f64 / 2.0).ln() / 3.0f64.ln();
        let a21 = 0.5 * (18.0f64 / 19.0).ln() / 3.0f64.ln();
        let alpha = vec![vec![0.5, a12], vec![a21, 0.5]];
        let beta = vec![vec![0.5; 2]; 2];
        let exps = ExponentParams::new(2.0, alpha, beta).unwrap();
        let m = assemble_lp(&spec, &exps, 0.0).unwrap();
        let expect = [[-10.0 / 19.0, 9.0 / 19.0], [19.0 / 4.0, -21.0 / 4.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (m.matrix()[i][j] - expect[i][j]).abs() <= 1e-12,
                    "entry ({i},{j}): {} vs {}",
                    m.matrix()[i][j],
                    expect[i][j]
                );
            }
        }
    }

    #[test]
    fn balanced_lp_matrix() {
        let spec = two_unit_spec();
        let exps = ExponentParams::balanced(2.0, 2).unwrap();
        let m = assemble_lp(&spec, &exps, 0.0).unwrap();
        assert_eq!(m.matrix(), &[vec![0.5, 1.5], vec![1.5, -8.5]]);
    }

    #[test]
    fn p_one_collapses_to_l1() {
        let spec = two_unit_spec();
        let exps = ExponentParams::balanced(1.0, 2).unwrap();
        let lp = assemble_lp(&spec, &exps, 0.0).unwrap();
        let l1 = assemble_l1(&spec, 0.0).unwrap();
        assert_eq!(lp.matrix(), l1.matrix());
    }

    #[test]
    fn check_certificate_examples() {
        let spec = two_unit_spec();
        let good = Certificate {
            kind: CriterionKind::L1,
            weights: vec![19.0, 6.0],
            exps: None,
            epsilon: 0.0,
            slack: 1.0,
        };
        let rep = check_certificate(&spec, &good).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.row_margins, vec![-1.0, -3.0]);

        let bad = Certificate {
            weights: vec![1.0, 1.0],
            ..good.clone()
        };
        let rep = check_certificate(&spec, &bad).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.row_margins, vec![2.0, -7.0]);
    }

    #[test]
    fn boundary_ratio_weights_are_rejected() {
        let spec = two_unit_spec();
        for weights in [vec![3.0, 1.0], vec![10.0, 3.0]] {
            let cert = Certificate {
                kind: CriterionKind::L1,
                weights,
                exps: None,
                epsilon: 0.0,
                slack: 0.0,
            };
            let rep = check_certificate(&spec, &cert).unwrap();
            assert!(!rep.valid);
            let worst = rep.row_margins.iter().cloned().fold(f64::MIN, f64::max);
            assert!(worst >= -1e-9, "boundary weights must not clear the margin");
        }
    }

    #[test]
    fn constant_kind_demands_constant_spec() {
        let spec = crate::testutil::two_unit_forced();
        let r = find_weights(&spec, CriterionKind::ConstantL1, None, 0.0);
        assert!(matches!(r, Err(Error::KindNeedsConstantSpec { .. })));
        // the periodic kind is fine on the same spec
        let r = find_weights(&spec, CriterionKind::L1, None, 0.0).unwrap();
        assert!(r.certificate().is_some());
    }

    #[test]
    fn find_weights_two_unit_window() {
        let spec = two_unit_spec();
        let found = find_weights(&spec, CriterionKind::L1, None, 0.0).unwrap();
        let cert = found.certificate().expect("feasible");
        let ratio = cert.weights[0] / cert.weights[1];
        assert!(ratio > 3.0 && ratio < 10.0 / 3.0);
        assert!(cert.slack > 1e-9);
    }

    #[test]
    fn find_weights_scalar_certificate() {
        // d = 2, a11 = 1 at eps = 0.5: row -0.5, so theta = (1), slack 0.5
        let spec = scalar_spec(2.0, 1.0, 0.0, 0.0);
        let found = find_weights(&spec, CriterionKind::L1, None, 0.5).unwrap();
        let cert = found.certificate().unwrap();
        assert_eq!(cert.weights, vec![1.0]);
        assert!((cert.slack - 0.5).abs() <= 1e-9);
    }

    #[test]
    fn balanced_p2_is_infeasible_for_the_two_unit_spec() {
        let spec = two_unit_spec();
        let exps = ExponentParams::balanced(2.0, 2).unwrap();
        let r = find_weights(&spec, CriterionKind::LpBalanced, Some(&exps), 0.0).unwrap();
        match r {
            WeightSearch::Infeasible { slack, .. } => assert!(slack <= -2.0 + 1e-9),
            WeightSearch::Found(_) => panic!("balanced p=2 must be infeasible here"),
        }
    }

    #[test]
    fn max_epsilon_hits_the_damping_wall() {
        // d = 1, no coupling: feasibility iff eps < 1
        let spec = scalar_spec(1.0, 0.0, 0.0, 0.0);
        match max_epsilon(&spec, CriterionKind::L1, None).unwrap() {
            MaxEpsilon::Certified {
                epsilon_star,
                certificate,
            } => {
                assert!((epsilon_star - 1.0).abs() <= 1e-7);
                assert!(certificate.slack > 1e-9);
            }
            MaxEpsilon::Infeasible { .. } => panic!("trivially feasible at eps = 0"),
        }
    }

    #[test]
    fn max_epsilon_linear_coupling() {
        // d = 2, a11 = 1: row eps - 1, so eps* = 1
        let spec = scalar_spec(2.0, 1.0, 0.0, 0.0);
        match max_epsilon(&spec, CriterionKind::L1, None).unwrap() {
            MaxEpsilon::Certified { epsilon_star, .. } => {
                assert!((epsilon_star - 1.0).abs() <= 1e-7);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn max_epsilon_transcendental_root() {
        // d = 2, b11 = 1, tau = 1: boundary at eps + e^eps = 2
        let spec = scalar_spec(2.0, 0.0, 1.0, 1.0);
        // oracle: bisection on the scalar equation, written independently
        let (mut lo, mut hi) = (0.0f64, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid + mid.exp() < 2.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((root - 0.44285).abs() <= 1e-5);
        match max_epsilon(&spec, CriterionKind::L1, None).unwrap() {
            MaxEpsilon::Certified { epsilon_star, .. } => {
                assert!(
                    (epsilon_star - root).abs() <= 1e-6,
                    "eps* {epsilon_star} vs root {root}"
                );
            }
            _ => panic!(),
        }
    }

    #[test]
    fn max_epsilon_reports_infeasible_at_zero() {
        // d = 1, a11 = 2: row at eps = 0 is +1
        let spec = scalar_spec(1.0, 2.0, 0.0, 0.0);
        match max_epsilon(&spec, CriterionKind::L1, None).unwrap() {
            MaxEpsilon::Infeasible { slack, .. } => assert!(slack <= -1.0 + 1e-9),
            _ => panic!("must be infeasible"),
        }
    }

    #[test]
    fn weak_damping_is_a_criteria_error() {
        let spec = scalar_spec(0.0, 0.0, 1.0, 1.0);
        let r = assemble_l1(&spec, 0.0);
        assert!(matches!(r, Err(Error::NonPositiveDamping { i: 0, .. })));
    }

    #[test]
    fn zero_coefficient_with_negative_exponent_is_a_domain_error() {
        let spec = two_unit_spec(); // b = 0 everywhere
                                    // beta chosen so (1 - beta) q < 0 on the zero b entries
        let exps = ExponentParams::new(2.0, vec![vec![0.5; 2]; 2], vec![vec![2.0; 2]; 2]).unwrap();
        let r = assemble_lp(&spec, &exps, 0.0);
        assert!(matches!(r, Err(Error::ZeroToNegativePower { .. })));
    }

    #[test]
    fn missing_exponents_error() {
        let spec = two_unit_spec();
        let r = find_weights(&spec, CriterionKind::LpBalanced, None, 0.0);
        assert!(matches!(r, Err(Error::MissingExponents { .. })));
    }
}
