//! Conversions between the L1 and Lp certificate families.
//!
//! Both families are feasibility statements about one abstract comparison
//! problem: positive self-rates `c_i`, nonnegative couplings `c_ij` (direct)
//! and `d_ij` (delayed, amplified by factors `e_ij >= 1`), and gain bounds
//! `G`, `F`. Self-couplings are absorbed into `c_i`, so `cmat`/`dmat` carry
//! zero diagonals. The L1 statement asks for `theta > 0` with
//!
//! ```text
//! -c_i theta_i + G_i sum_j theta_j c_ji + F_i sum_j theta_j d_ji e_ji < 0
//! ```
//!
//! and the Lp statement is the analogous row system of [`lp_system`]. The
//! two are interconvertible, and constructively so:
//!
//! * [`lp_to_l1`]: a weighted-row positive vector for the Lp matrix M yields
//!   one for the L1 system. The bridge is `zeta_i = eta_i^{1/p}` where
//!   `M^T eta < 0`; Young's inequality makes `zeta` satisfy the column-form
//!   L1 system, and the row form follows.
//! * [`l1_to_lp`]: an L1 vector `theta` yields exponents `alpha*`, `beta*`
//!   that make every Young split exact, plus Lp weights `xi`. With
//!   `eta_i = zeta_i^p` the exponents are
//!
//!   ```text
//!   alpha*_ij = (1/p) [ 1 + log_{c_ij}( eta_i^{1/q} eta_j^{-1/q} ) ]
//!   ```
//!
//!   and `beta*` likewise over `d_ij`. Bases 0 and 1 make the logarithm
//!   degenerate; those entries fall back to the balanced exponent `1/p`
//!   (the term either vanishes or is exponent-independent).
//!
//! Every conversion re-verifies its output by plain substitution before
//! returning; a failed LP in a direction the theory guarantees is reported
//! as an internal error rather than masked.

use crate::criteria::{pow_star, ExponentParams};
use crate::error::Error;
use crate::model::NetworkSpec;
use crate::polyhedra::{mat_vec, solve_strict, solve_transpose, IneqSystem};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonProblem<T> {
    c: Vec<T>,
    cmat: Vec<Vec<T>>,
    dmat: Vec<Vec<T>>,
    emat: Vec<Vec<T>>,
    g: Vec<T>,
    f: Vec<T>,
}

impl<T: Real> ComparisonProblem<T> {
    pub fn new(
        c: Vec<T>,
        cmat: Vec<Vec<T>>,
        dmat: Vec<Vec<T>>,
        emat: Vec<Vec<T>>,
        g: Vec<T>,
        f: Vec<T>,
    ) -> Result<Self, Error> {
        let n = c.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                what: "comparison problem".into(),
                expected: 1,
                got: 0,
            });
        }
        for (i, &v) in c.iter().enumerate() {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::NonPositiveComparisonCoeff {
                    i,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let check_square = |what: &'static str, m: &[Vec<T>]| -> Result<(), Error> {
            if m.len() != n {
                return Err(Error::DimensionMismatch {
                    what: what.into(),
                    expected: n,
                    got: m.len(),
                });
            }
            for row in m {
                if row.len() != n {
                    return Err(Error::NotSquare {
                        what,
                        rows: n,
                        cols: row.len(),
                    });
                }
                if row.iter().any(|v| !v.is_finite()) {
                    return Err(Error::NonFinite { what: what.into() });
                }
            }
            Ok(())
        };
        check_square("cmat", &cmat)?;
        check_square("dmat", &dmat)?;
        check_square("emat", &emat)?;
        for (what, m) in [("cmat", &cmat), ("dmat", &dmat)] {
            for (i, row) in m.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if i == j && v != T::zero() {
                        return Err(Error::InvalidArgument {
                            what: format!(
                                "{what}[{i}][{i}] = {v}; self couplings belong in c, diagonals must be zero"
                            ),
                        });
                    }
                    if v < T::zero() {
                        return Err(Error::InvalidArgument {
                            what: format!("{what}[{i}][{j}] = {v} must be >= 0"),
                        });
                    }
                }
            }
        }
        for (i, row) in emat.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(v >= T::one()) {
                    return Err(Error::InvalidDelayFactor {
                        i,
                        j,
                        value: v.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        for (what, v) in [("G", &g), ("F", &f)] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    what: what.into(),
                    expected: n,
                    got: v.len(),
                });
            }
            for (i, &x) in v.iter().enumerate() {
                if !(x > T::zero()) || !x.is_finite() {
                    return Err(Error::InvalidBound {
                        what,
                        i,
                        value: x.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        Ok(ComparisonProblem {
            c,
            cmat,
            dmat,
            emat,
            g,
            f,
        })
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn c(&self) -> &[T] {
        &self.c
    }

    pub fn cmat(&self) -> &[Vec<T>] {
        &self.cmat
    }

    pub fn dmat(&self) -> &[Vec<T>] {
        &self.dmat
    }

    pub fn emat(&self) -> &[Vec<T>] {
        &self.emat
    }

    pub fn g(&self) -> &[T] {
        &self.g
    }

    pub fn f(&self) -> &[T] {
        &self.f
    }
}

/// Weighted Young inequality: for `a, b, eps > 0` and conjugate `p, q`,
/// returns `(ab, (a eps)^p / p + (b / eps)^q / q)`; the first is never above
/// the second, with equality iff `(a eps)^p = (b / eps)^q`.
pub fn young<T: Real>(a: T, b: T, eps: T, p: T) -> Result<(T, T), Error> {
    for (name, v) in [("a", a), ("b", b), ("eps", eps)] {
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::InvalidArgument {
                what: format!("young: {name} must be positive and finite, got {v}"),
            });
        }
    }
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::InvalidExponent {
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let q = p / (p - T::one());
    let lhs = a * b;
    let rhs = (a * eps).powf(p) / p + (b / eps).powf(q) / q;
    debug_assert!(lhs <= rhs * (T::one() + T::TOL_CERT));
    Ok((lhs, rhs))
}

/// Row-form L1 system P: `p_ii = -c_i`, `p_ij = G_i c_ji + F_i d_ji e_ji`.
pub fn l1_row_system<T: Real>(prob: &ComparisonProblem<T>) -> Result<IneqSystem<T>, Error> {
    let n = prob.n();
    let mut m = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        m[i][i] = -prob.c[i];
        for j in 0..n {
            if j != i {
                m[i][j] =
                    prob.g[i] * prob.cmat[j][i] + prob.f[i] * prob.dmat[j][i] * prob.emat[j][i];
            }
        }
    }
    IneqSystem::strict(m)
}

/// Column-form L1 system N, the transpose of [`l1_row_system`]:
/// `n_ij = c_ij G_j + d_ij e_ij F_j` off the diagonal.
pub fn l1_column_system<T: Real>(prob: &ComparisonProblem<T>) -> Result<IneqSystem<T>, Error> {
    Ok(l1_row_system(prob)?.transposed())
}

/// The Lp comparison matrix M for the exponent data `exps`; `p = 1`
/// collapses onto [`l1_row_system`].
pub fn lp_system<T: Real>(
    prob: &ComparisonProblem<T>,
    exps: &ExponentParams<T>,
) -> Result<IneqSystem<T>, Error> {
    let n = prob.n();
    exps.validate(Some(n))?;
    let q = match exps.q() {
        None => return l1_row_system(prob),
        Some(q) => q,
    };
    let p = exps.p;
    let one = T::one();
    let mut m = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        let mut diag = -prob.c[i];
        for j in 0..n {
            if j == i {
                continue;
            }
            diag = diag
                + prob.g[j] * pow_star(prob.cmat[i][j], (one - exps.alpha[i][j]) * q, i, j)? / q
                + prob.f[j]
                    * pow_star(prob.dmat[i][j], (one - exps.beta[i][j]) * q, i, j)?
                    * prob.emat[i][j]
                    / q;
        }
        m[i][i] = diag;
        for j in 0..n {
            if j == i {
                continue;
            }
            m[i][j] = prob.g[i] * pow_star(prob.cmat[j][i], exps.alpha[j][i] * p, j, i)? / p
                + prob.f[i]
                    * pow_star(prob.dmat[j][i], exps.beta[j][i] * p, j, i)?
                    * prob.emat[j][i]
                    / p;
        }
    }
    IneqSystem::strict(m)
}

fn check_positive_vector<T: Real>(what: &str, v: &[T], n: usize) -> Result<(), Error> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            what: what.into(),
            expected: n,
            got: v.len(),
        });
    }
    for (i, &x) in v.iter().enumerate() {
        if !(x > T::zero()) || !x.is_finite() {
            return Err(Error::NonPositiveWeight {
                i,
                value: x.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

fn check_precondition<T: Real>(margins: &[T]) -> Result<(), Error> {
    for (i, &m) in margins.iter().enumerate() {
        if m > T::TOL_CERT {
            return Err(Error::PreconditionViolated {
                i,
                margin: m.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

/// Converts an Lp certificate `xi` (for the matrix of [`lp_system`] at
/// `exps`) into an L1 certificate `theta` for the row system.
///
/// The conversion cannot fail on valid input: feasibility of M forces
/// feasibility of the L1 system. A failing LP step therefore reports an
/// internal error.
pub fn lp_to_l1<T: Real>(
    prob: &ComparisonProblem<T>,
    xi: &[T],
    exps: &ExponentParams<T>,
) -> Result<Vec<T>, Error> {
    let n = prob.n();
    check_positive_vector("xi", xi, n)?;
    let m = lp_system(prob, exps)?;
    check_precondition(&mat_vec(m.matrix(), xi))?;

    let eta =
        match solve_transpose(&m)? {
            r if r.feasible => r.x.expect("feasible result carries a point"),
            _ => return Err(Error::internal(
                "transposed Lp system infeasible although the row system admits a positive vector",
            )),
        };
    // zeta_i = eta_i^{1/p} satisfies the column-form L1 system: each split
    // coupling recombines under Young's inequality. Checked, not assumed.
    let zeta: Vec<T> = eta.iter().map(|&e| e.powf(exps.p.recip())).collect();
    let col = l1_column_system(prob)?;
    for (i, &v) in mat_vec(col.matrix(), &zeta).iter().enumerate() {
        if v > T::TOL_STRICT {
            return Err(Error::internal(format!(
                "Young bridge failed: column row {i} has margin {v} at zeta"
            )));
        }
    }
    let theta = match solve_transpose(&col)? {
        r if r.feasible => r.x.expect("feasible result carries a point"),
        _ => {
            return Err(Error::internal(
                "L1 row system infeasible although a column-form vector exists",
            ))
        }
    };
    let row = l1_row_system(prob)?;
    for (i, &v) in mat_vec(row.matrix(), &theta).iter().enumerate() {
        if v >= -T::TOL_CERT {
            return Err(Error::internal(format!(
                "converted theta failed its substitution re-check on row {i} (margin {v})"
            )));
        }
    }
    Ok(theta)
}

/// Result of [`l1_to_lp`]: Lp weights, the exactness-achieving exponents,
/// and which entries fell back to the balanced `1/p` because their base
/// made the defining logarithm degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct L1ToLp<T> {
    pub xi: Vec<T>,
    pub alpha_star: Vec<Vec<T>>,
    pub beta_star: Vec<Vec<T>>,
    pub defaulted_alpha: Vec<(usize, usize)>,
    pub defaulted_beta: Vec<(usize, usize)>,
}

fn exponents_for<T: Real>(
    base: &[Vec<T>],
    eta: &[T],
    p: T,
    q: T,
    defaulted: &mut Vec<(usize, usize)>,
) -> Vec<Vec<T>> {
    let n = eta.len();
    let balanced = p.recip();
    let mut out = vec![vec![balanced; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue; // structurally absent from every row sum
            }
            let b = base[i][j];
            if b == T::zero() || b == T::one() {
                defaulted.push((i, j));
                continue;
            }
            // alpha*_ij = (1/p) [1 + log_b(eta_i^{1/q} eta_j^{-1/q})]
            let ratio_log = (eta[i] / eta[j]).ln() / q;
            out[i][j] = (T::one() + ratio_log / b.ln()) / p;
        }
    }
    out
}

/// Converts an L1 certificate `theta` into Lp data `(xi, alpha*, beta*)`
/// whose Young splits hold with equality, so no slack is lost in the move.
///
/// `theta` itself is tried as the column-form vector first (it works
/// whenever the coupling pattern is symmetric enough, and keeps the
/// exponents a human would compute by hand); otherwise a fresh column
/// vector is solved for.
pub fn l1_to_lp<T: Real>(
    prob: &ComparisonProblem<T>,
    theta: &[T],
    p: T,
) -> Result<L1ToLp<T>, Error> {
    let n = prob.n();
    check_positive_vector("theta", theta, n)?;
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::InvalidExponent {
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let q = p / (p - T::one());
    let row = l1_row_system(prob)?;
    check_precondition(&mat_vec(row.matrix(), theta))?;

    let col = l1_column_system(prob)?;
    let theta_col_margins = mat_vec(col.matrix(), theta);
    let zeta: Vec<T> =
        if theta_col_margins.iter().all(|&v| v <= -T::TOL_STRICT) {
            theta.to_vec()
        } else {
            match solve_strict(&col)? {
                r if r.feasible => r.x.expect("feasible result carries a point"),
                _ => return Err(Error::internal(
                    "column-form L1 system infeasible although the row form is strictly feasible",
                )),
            }
        };
    let eta: Vec<T> = zeta.iter().map(|&z| z.powf(p)).collect();

    let mut defaulted_alpha = Vec::new();
    let mut defaulted_beta = Vec::new();
    let alpha_star = exponents_for(&prob.cmat, &eta, p, q, &mut defaulted_alpha);
    let beta_star = exponents_for(&prob.dmat, &eta, p, q, &mut defaulted_beta);

    let exps = ExponentParams::new(p, alpha_star, beta_star)?;
    let m = lp_system(prob, &exps)?;
    let xi = match solve_strict(&m)? {
        r if r.feasible => r.x.expect("feasible result carries a point"),
        _ => {
            return Err(Error::internal(
                "exactness exponents produced an infeasible Lp system; this contradicts the conversion theory",
            ))
        }
    };
    for (i, &v) in mat_vec(m.matrix(), &xi).iter().enumerate() {
        if v >= -T::TOL_CERT {
            return Err(Error::internal(format!(
                "converted xi failed its substitution re-check on row {i} (margin {v})"
            )));
        }
    }
    Ok(L1ToLp {
        xi,
        alpha_star: exps.alpha,
        beta_star: exps.beta,
        defaulted_alpha,
        defaulted_beta,
    })
}

/// Whether the diagonal delayed gain survives the balanced Young split,
/// evaluated at `beta_ii = 1/p`. Always satisfied (Young again), recorded
/// per row for the analysis report rather than enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct SideCondition<T> {
    pub i: usize,
    pub beta: T,
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instantiation<T> {
    pub problem: ComparisonProblem<T>,
    pub side_conditions: Vec<SideCondition<T>>,
}

/// Builds the comparison problem of a network spec at rate `epsilon`:
/// `c_i = d_i - eps - G_i a*_ii - F_i b*_ii`, couplings `c_ij = a*_ij`,
/// `d_ij = b*_ij` (diagonals zeroed, self terms absorbed), delay factors
/// `e_ij = e^{eps tau_ij}`. Errors when some `c_i` is not positive; the
/// network is then outside the regime this reduction covers.
pub fn instantiate<T: Real>(
    spec: &NetworkSpec<T>,
    epsilon: T,
    p: T,
) -> Result<Instantiation<T>, Error> {
    if !(epsilon >= T::zero()) || !epsilon.is_finite() {
        return Err(Error::InvalidArgument {
            what: format!("epsilon must be finite and >= 0, got {epsilon}"),
        });
    }
    if !(p >= T::one()) || !p.is_finite() {
        return Err(Error::InvalidExponent {
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = spec.n();
    let sb = spec.star_bounds();
    let g = spec.g_bounds().to_vec();
    let f = spec.f_bounds().to_vec();
    let mut c = vec![T::zero(); n];
    for i in 0..n {
        c[i] = sb.d_lower[i] - epsilon - g[i] * sb.a_star[i][i] - f[i] * sb.b_star[i][i];
        if !(c[i] > T::zero()) {
            return Err(Error::NonPositiveComparisonCoeff {
                i,
                value: c[i].to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let mut cmat = sb.a_star.clone();
    let mut dmat = sb.b_star.clone();
    let mut emat = vec![vec![T::one(); n]; n];
    for i in 0..n {
        cmat[i][i] = T::zero();
        dmat[i][i] = T::zero();
        for j in 0..n {
            emat[i][j] = (epsilon * spec.tau()[i][j]).exp();
        }
    }

    let balanced = p.recip();
    let side_conditions = (0..n)
        .map(|i| {
            let x = sb.b_star[i][i];
            let lhs = if p == T::one() {
                x
            } else {
                let q = p / (p - T::one());
                let split = |e: T| if x == T::zero() { T::zero() } else { x.powf(e) };
                split(balanced * p) / p + split((T::one() - balanced) * q) / q
            };
            SideCondition {
                i,
                beta: balanced,
                lhs,
                rhs: x,
                holds: lhs >= x * (T::one() - T::TOL_CERT) - T::TOL_CERT,
            }
        })
        .collect();

    Ok(Instantiation {
        problem: ComparisonProblem::new(c, cmat, dmat, emat, g, f)?,
        side_conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{scalar_spec, two_unit_spec};

    fn two_unit_problem() -> ComparisonProblem<f64> {
        instantiate(&two_unit_spec(), 0.0, 2.0).unwrap().problem
    }

    fn eq47_alpha(theta1: f64, theta2: f64) -> (f64, f64) {
        // closed forms for the symmetric 2x2 pattern with base 3 couplings
        let a12 = 0.5 * (1.0 + (theta1 / theta2).ln() / 3.0f64.ln());
        let a21 = 0.5 * (1.0 + (theta2 / theta1).ln() / 3.0f64.ln());
        (a12, a21)
    }

    #[test]
    fn young_examples() {
        let (l, r) = young(1.0, 1.0, 1.0, 2.0).unwrap();
        assert_eq!((l, r), (1.0, 1.0));
        let (l, r) = young(2.0, 3.0, 1.0, 2.0).unwrap();
        assert_eq!((l, r), (6.0, 6.5));
        // equality when (a eps)^p = (b / eps)^q
        let eps = 0.5f64.sqrt();
        let (l, r) = young(4.0, 2.0, eps, 2.0).unwrap();
        assert!((l - 8.0).abs() <= 1e-12 && (r - 8.0).abs() <= 1e-12);
    }

    #[test]
    fn young_rejects_bad_domains() {
        assert!(young(0.0, 1.0, 1.0, 2.0).is_err());
        assert!(young(1.0, -1.0, 1.0, 2.0).is_err());
        assert!(young(1.0, 1.0, 0.0, 2.0).is_err());
        assert!(matches!(
            young(1.0, 1.0, 1.0, 1.0),
            Err(Error::InvalidExponent { .. })
        ));
    }

    #[test]
    fn young_never_exceeds_on_a_sweep() {
        let mut k = 1u32;
        for _ in 0..200 {
            // cheap LCG; only spread matters
            k = k.wrapping_mul(1664525).wrapping_add(1013904223);
            let u = |s: u32| (s % 1000) as f64 / 1000.0 + 1e-3;
            let (a, b, eps) = (u(k) * 5.0, u(k >> 10) * 5.0, u(k >> 20) * 3.0);
            let p = 1.0 + u(k >> 5) * 6.0;
            let (l, r) = young(a, b, eps, p).unwrap();
            assert!(l <= r * (1.0 + 1e-14), "{l} > {r}");
        }
    }

    #[test]
    fn instantiate_two_unit() {
        let inst = instantiate(&two_unit_spec(), 0.0, 2.0).unwrap();
        let prob = &inst.problem;
        assert_eq!(prob.c(), &[1.0, 10.0]);
        assert_eq!(prob.cmat(), &[vec![0.0, 3.0], vec![3.0, 0.0]]);
        assert_eq!(prob.dmat(), &[vec![0.0, 0.0], vec![0.0, 0.0]]);
        assert_eq!(prob.emat(), &[vec![1.0, 1.0], vec![1.0, 1.0]]);
        // b_ii = 0: the balanced split holds as 0 >= 0
        assert!(inst.side_conditions.iter().all(|s| s.holds));
    }

    #[test]
    fn instantiate_delay_factor() {
        let inst = instantiate(&scalar_spec(2.0, 0.0, 1.0, 1.0), 0.4, 2.0).unwrap();
        assert!((inst.problem.emat()[0][0] - 1.49182).abs() <= 1e-5);
        assert_eq!(inst.problem.c(), &[2.0 - 0.4 - 1.0]);
        // |b_11| = 1: balanced split is exactly 1
        let sc = &inst.side_conditions[0];
        assert!((sc.lhs - 1.0).abs() <= 1e-12 && sc.holds);
    }

    #[test]
    fn instantiate_rejects_nonpositive_self_rate() {
        let r = instantiate(&scalar_spec(2.0, 0.0, 1.0, 1.0), 1.5, 2.0);
        assert!(matches!(
            r,
            Err(Error::NonPositiveComparisonCoeff { i: 0, .. })
        ));
    }

    #[test]
    fn row_system_matches_the_l1_criterion_matrix() {
        // with no delayed part the instantiated row system must equal the
        // network-level L1 matrix
        let p = two_unit_problem();
        let row = l1_row_system(&p).unwrap();
        let net = crate::criteria::assemble_l1(&two_unit_spec(), 0.0).unwrap();
        assert_eq!(row.matrix(), net.matrix());
        assert_eq!(
            l1_column_system(&p).unwrap().matrix(),
            &[vec![-1.0, 3.0], vec![3.0, -10.0]]
        );
    }

    #[test]
    fn lp_system_matches_the_network_criterion_when_undelayed() {
        let prob = two_unit_problem();
        let exps = ExponentParams::balanced(2.0, 2).unwrap();
        let a = lp_system(&prob, &exps).unwrap();
        let b = crate::criteria::assemble_lp(&two_unit_spec(), &exps, 0.0).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(a.matrix(), &[vec![0.5, 1.5], vec![1.5, -8.5]]);
    }

    #[test]
    fn lp_to_l1_two_unit() {
        let prob = two_unit_problem();
        let (a12, a21) = eq47_alpha(19.0, 6.0);
        let exps = ExponentParams::new(
            2.0,
            vec![vec![0.5, a12], vec![a21, 0.5]],
            vec![vec![0.5; 2]; 2],
        )
        .unwrap();
        let theta = lp_to_l1(&prob, &[1.0, 1.0], &exps).unwrap();
        let ratio = theta[0] / theta[1];
        assert!(ratio > 3.0 && ratio < 10.0 / 3.0, "ratio {ratio}");
        let margins = mat_vec(l1_row_system(&prob).unwrap().matrix(), &theta);
        assert!(margins.iter().all(|&v| v < 0.0));
    }

    #[test]
    fn lp_to_l1_decoupled_equalizes_row_slack() {
        // no coupling: row i of P is just -c_i theta_i, so the slack LP makes
        // all c_i theta_i equal and min-normalization gives max(c) / c_i
        let prob = ComparisonProblem::new(
            vec![1.0f64, 2.0, 0.5],
            vec![vec![0.0; 3]; 3],
            vec![vec![0.0; 3]; 3],
            vec![vec![1.0; 3]; 3],
            vec![1.0; 3],
            vec![1.0; 3],
        )
        .unwrap();
        let exps = ExponentParams::balanced(2.0, 3).unwrap();
        let theta = lp_to_l1(&prob, &[1.0; 3], &exps).unwrap();
        for (i, &th) in theta.iter().enumerate() {
            assert!((th - 2.0 / prob.c()[i]).abs() <= 1e-9, "theta {theta:?}");
        }
    }

    #[test]
    fn lp_to_l1_rejects_an_unsatisfied_source() {
        // balanced p = 2 is infeasible on this instance and (1,1) in
        // particular violates row 0
        let prob = two_unit_problem();
        let exps = ExponentParams::balanced(2.0, 2).unwrap();
        let r = lp_to_l1(&prob, &[1.0, 1.0], &exps);
        assert!(matches!(r, Err(Error::PreconditionViolated { i: 0, .. })));
    }

    #[test]
    fn l1_to_lp_two_unit_reproduces_the_hand_computation() {
        let prob = two_unit_problem();
        let out = l1_to_lp(&prob, &[19.0, 6.0], 2.0).unwrap();
        let a12 = 0.5 * (19.0f64 / 2.0).ln() / 3.0f64.ln();
        let a21 = 0.5 * (18.0f64 / 19.0).ln() / 3.0f64.ln();
        assert!((out.alpha_star[0][1] - a12).abs() <= 1e-12);
        assert!((out.alpha_star[1][0] - a21).abs() <= 1e-12);
        assert!((a12 - 1.02460).abs() <= 1e-5);
        assert!((a21 + 0.02460).abs() <= 1e-5);

        let exps = ExponentParams::new(2.0, out.alpha_star.clone(), out.beta_star.clone()).unwrap();
        let m = lp_system(&prob, &exps).unwrap();
        let expect = [[-10.0 / 19.0, 9.0 / 19.0], [19.0 / 4.0, -21.0 / 4.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((m.matrix()[i][j] - expect[i][j]).abs() <= 1e-12);
            }
        }
        let ratio = out.xi[0] / out.xi[1];
        assert!(ratio > 9.0 / 10.0 && ratio < 21.0 / 19.0, "ratio {ratio}");

        // zero delayed couplings: every beta entry defaulted, alpha none
        assert!(out.defaulted_alpha.is_empty());
        assert_eq!(out.defaulted_beta, vec![(0, 1), (1, 0)]);
        assert_eq!(out.beta_star, vec![vec![0.5; 2]; 2]);
    }

    #[test]
    fn eq47_exponents_depend_only_on_theta_ratios() {
        let prob = two_unit_problem();
        let a = l1_to_lp(&prob, &[19.0, 6.0], 2.0).unwrap();
        let b = l1_to_lp(&prob, &[38.0, 12.0], 2.0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((a.alpha_star[i][j] - b.alpha_star[i][j]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn exactness_of_the_young_split_at_the_starred_exponents() {
        let prob = two_unit_problem();
        let out = l1_to_lp(&prob, &[19.0, 6.0], 2.0).unwrap();
        let eta = [19.0f64 * 19.0, 36.0]; // zeta = theta here, eta = theta^p
        let (p, q) = (2.0f64, 2.0f64);
        for (i, j) in [(0, 1), (1, 0)] {
            let c: f64 = prob.cmat()[i][j];
            let split = c.powf((1.0 - out.alpha_star[i][j]) * q) * eta[i] / q
                + c.powf(out.alpha_star[i][j] * p) * eta[j] / p;
            let exact = c * eta[i].powf(1.0 / q) * eta[j].powf(1.0 / p);
            assert!(
                (split - exact).abs() <= 1e-10 * exact.abs(),
                "split {split} vs exact {exact}"
            );
        }
    }

    #[test]
    fn l1_to_lp_rejects_an_unsatisfied_theta() {
        let prob = two_unit_problem();
        let r = l1_to_lp(&prob, &[1.0, 1.0], 2.0);
        assert!(matches!(r, Err(Error::PreconditionViolated { i: 0, .. })));
    }

    #[test]
    fn round_trip_preserves_l1_feasibility() {
        // an asymmetric 3x3 instance with delayed couplings
        let prob = ComparisonProblem::new(
            vec![4.0, 5.0, 6.0],
            vec![
                vec![0.0, 0.8, 0.3],
                vec![1.1, 0.0, 0.4],
                vec![0.2, 0.9, 0.0],
            ],
            vec![
                vec![0.0, 0.2, 0.1],
                vec![0.3, 0.0, 0.2],
                vec![0.1, 0.1, 0.0],
            ],
            vec![vec![1.2; 3]; 3],
            vec![1.0, 0.5, 2.0],
            vec![1.0, 1.0, 0.5],
        )
        .unwrap();
        let row = l1_row_system(&prob).unwrap();
        let theta = solve_strict(&row).unwrap().x.expect("feasible instance");
        let out = l1_to_lp(&prob, &theta, 3.0).unwrap();
        let exps = ExponentParams::new(3.0, out.alpha_star.clone(), out.beta_star.clone()).unwrap();
        let theta2 = lp_to_l1(&prob, &out.xi, &exps).unwrap();
        let margins = mat_vec(row.matrix(), &theta2);
        assert!(margins.iter().all(|&v| v < 0.0), "margins {margins:?}");
    }

    #[test]
    fn rejects_malformed_problems() {
        let ok3 = vec![vec![0.0; 3]; 3];
        // nonzero diagonal
        let mut bad = ok3.clone();
        bad[1][1] = 0.5;
        assert!(ComparisonProblem::new(
            vec![1.0; 3],
            bad,
            ok3.clone(),
            vec![vec![1.0; 3]; 3],
            vec![1.0; 3],
            vec![1.0; 3],
        )
        .is_err());
        // delay factor below 1
        assert!(matches!(
            ComparisonProblem::new(
                vec![1.0; 3],
                ok3.clone(),
                ok3.clone(),
                vec![vec![0.9; 3]; 3],
                vec![1.0; 3],
                vec![1.0; 3],
            ),
            Err(Error::InvalidDelayFactor { .. })
        ));
        // nonpositive self rate
        assert!(matches!(
            ComparisonProblem::new(
                vec![1.0, 0.0, 1.0],
                ok3.clone(),
                ok3.clone(),
                vec![vec![1.0; 3]; 3],
                vec![1.0; 3],
                vec![1.0; 3],
            ),
            Err(Error::NonPositiveComparisonCoeff { i: 1, .. })
        ));
    }
}
