//! Command implementations behind the `stabcert` binary.
//!
//! Every command emits one JSON document: a fixed `meta` envelope (tool name
//! and version, never timestamps) around a `report` payload, so identical
//! inputs produce byte-identical output. Exit codes: 0 when the requested
//! outcome holds (certificate found, verification passed, reproduction
//! passed), 2 when the engine ran but found no certificate, 1 on input
//! errors.

// negated comparison on purpose: NaN must land on the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use stabcert::criteria::{
    assemble, check_certificate, find_weights, max_epsilon, CriterionKind, ExponentParams,
    MaxEpsilon, WeightSearch,
};
use stabcert::ddesim::{orbit_variation, period_map_report, simulate};
use stabcert::model::{History, NetworkSpec, PeriodicFn};
use stabcert::polyhedra::solve_strict;
use stabcert::transforms::{instantiate, l1_to_lp, lp_to_l1, SideCondition};

pub const TOOL: &str = "stabcert";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
struct Meta {
    tool: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Doc<R: Serialize> {
    meta: Meta,
    report: R,
}

fn render<R: Serialize>(report: R) -> String {
    let doc = Doc {
        meta: Meta {
            tool: TOOL,
            version: VERSION,
        },
        report,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn read_spec(path: &Path) -> Result<(NetworkSpec<f64>, String)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone())
        .with_context(|| format!("{} is not UTF-8", path.display()))?;
    let spec = stabcert::json::spec_from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok((spec, digest(&bytes)))
}

// ---------------------------------------------------------------- analyze --

#[derive(Serialize)]
struct StarBoundsOut {
    a_star: Vec<Vec<f64>>,
    b_star: Vec<Vec<f64>>,
    i_star: Vec<f64>,
    d_lower: Vec<f64>,
}

#[derive(Serialize)]
struct CriterionOutcome {
    label: String,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    epsilon: f64,
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    slack: f64,
}

#[derive(Serialize)]
struct SideConditionOut {
    i: usize,
    beta: f64,
    lhs: f64,
    rhs: f64,
    holds: bool,
}

impl From<&SideCondition<f64>> for SideConditionOut {
    fn from(s: &SideCondition<f64>) -> Self {
        SideConditionOut {
            i: s.i,
            beta: s.beta,
            lhs: s.lhs,
            rhs: s.rhs,
            holds: s.holds,
        }
    }
}

#[derive(Serialize)]
struct TransformOutcome {
    p: f64,
    alpha_star: Vec<Vec<f64>>,
    beta_star: Vec<Vec<f64>>,
    defaulted_alpha: Vec<(usize, usize)>,
    defaulted_beta: Vec<(usize, usize)>,
    xi: Vec<f64>,
    theta_back: Vec<f64>,
    side_conditions: Vec<SideConditionOut>,
}

#[derive(Serialize)]
struct SimCheck {
    history: &'static str,
    h: f64,
    periods: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps_hat: Option<f64>,
    diffs: Vec<f64>,
    saturated: bool,
    consistency: &'static str,
}

#[derive(Serialize)]
struct AnalysisReport {
    spec_digest: String,
    n: usize,
    omega: f64,
    star_bounds: StarBoundsOut,
    criteria: Vec<CriterionOutcome>,
    transforms: Vec<TransformOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simulation: Option<SimCheck>,
}

fn outcome(
    label: String,
    kind: CriterionKind,
    p: Option<f64>,
    epsilon: f64,
    search: &WeightSearch<f64>,
) -> CriterionOutcome {
    match search {
        WeightSearch::Found(cert) => CriterionOutcome {
            label,
            kind: kind.name(),
            p,
            epsilon,
            feasible: true,
            weights: Some(cert.weights.clone()),
            slack: cert.slack,
        },
        WeightSearch::Infeasible { slack, .. } => CriterionOutcome {
            label,
            kind: kind.name(),
            p,
            epsilon,
            feasible: false,
            weights: None,
            slack: *slack,
        },
    }
}

/// Full analysis: L1 at rate zero, maximal certified rate, balanced Lp for
/// the requested exponents, the constructive L1-to-Lp transform from the L1
/// certificate, and a simulation cross-check of the certified rate.
pub fn run_analyze(spec_path: &Path, extra_p: &[f64]) -> Result<(String, i32)> {
    let (spec, spec_digest) = read_spec(spec_path)?;
    let n = spec.n();
    let sb = spec.star_bounds();

    let constant = spec.is_constant();
    let l1_kind = if constant {
        CriterionKind::ConstantL1
    } else {
        CriterionKind::L1
    };
    let bal_kind = if constant {
        CriterionKind::ConstantLpBalanced
    } else {
        CriterionKind::LpBalanced
    };

    let mut ps: Vec<f64> = [2.0, 3.0].iter().chain(extra_p).copied().collect();
    ps.sort_by(|a, b| a.partial_cmp(b).expect("finite p values"));
    ps.dedup();

    let mut criteria = Vec::new();

    let l1_zero = find_weights(&spec, l1_kind, None, 0.0)?;
    criteria.push(outcome("l1".into(), l1_kind, None, 0.0, &l1_zero));

    let eps_star = match max_epsilon(&spec, l1_kind, None)? {
        MaxEpsilon::Certified {
            epsilon_star,
            certificate,
        } => {
            criteria.push(outcome(
                "l1_max_rate".into(),
                l1_kind,
                None,
                epsilon_star,
                &WeightSearch::Found(certificate),
            ));
            Some(epsilon_star)
        }
        MaxEpsilon::Infeasible { slack, boundary } => {
            criteria.push(outcome(
                "l1_max_rate".into(),
                l1_kind,
                None,
                0.0,
                &WeightSearch::Infeasible { slack, boundary },
            ));
            None
        }
    };

    for &p in &ps {
        let exps = ExponentParams::balanced(p, n)?;
        let search = find_weights(&spec, bal_kind, Some(&exps), 0.0)?;
        criteria.push(outcome(
            format!("balanced_p{p}"),
            bal_kind,
            Some(p),
            0.0,
            &search,
        ));
    }

    // the constructive transform applies whenever the L1 form certifies
    let mut transforms = Vec::new();
    if let WeightSearch::Found(l1_cert) = &l1_zero {
        for &p in ps.iter().filter(|&&p| p > 1.0) {
            let inst = instantiate(&spec, 0.0, p)?;
            let out = l1_to_lp(&inst.problem, &l1_cert.weights, p)?;
            let exps = ExponentParams::new(p, out.alpha_star.clone(), out.beta_star.clone())?;
            let theta_back = lp_to_l1(&inst.problem, &out.xi, &exps)?;
            transforms.push(TransformOutcome {
                p,
                alpha_star: out.alpha_star,
                beta_star: out.beta_star,
                defaulted_alpha: out.defaulted_alpha,
                defaulted_beta: out.defaulted_beta,
                xi: out.xi,
                theta_back,
                side_conditions: inst.side_conditions.iter().map(Into::into).collect(),
            });
        }
    }

    // simulation cross-check: only meaningful against a certified rate
    let simulation = match eps_star {
        Some(star) => {
            let periods = 12usize;
            let m = spec
                .tau_min_positive()
                .map_or(0, |tm| (spec.omega() / tm).ceil() as usize)
                .max(400);
            let h = spec.omega() / m as f64;
            let t_end = (periods + 1) as f64 * spec.omega();
            let tr = simulate(&spec, &History::Constant(vec![1.0; n]), t_end, h)?;
            let rep = period_map_report(&tr, spec.omega(), periods)?;
            let consistency = match rep.eps_hat {
                Some(hat) if hat >= 0.95 * star => "pass",
                Some(_) => "fail",
                None => "not-checked",
            };
            Some(SimCheck {
                history: "constant-ones",
                h,
                periods,
                eps_hat: rep.eps_hat,
                diffs: rep.diffs,
                saturated: rep.saturated,
                consistency,
            })
        }
        None => None,
    };

    let certified = criteria.iter().any(|c| c.feasible);
    let report = AnalysisReport {
        spec_digest,
        n,
        omega: spec.omega(),
        star_bounds: StarBoundsOut {
            a_star: sb.a_star,
            b_star: sb.b_star,
            i_star: sb.i_star,
            d_lower: sb.d_lower,
        },
        criteria,
        transforms,
        simulation,
    };
    Ok((render(report), if certified { 0 } else { 2 }))
}

// --------------------------------------------------------------- simulate --

#[derive(Serialize)]
struct PeriodMapOut {
    periods: usize,
    diffs: Vec<f64>,
    ratios: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps_hat: Option<f64>,
    saturated: bool,
    orbit_variation: f64,
    v_samples: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct SimulateReport {
    spec_digest: String,
    history_digest: String,
    t_end: f64,
    h: f64,
    csv: String,
    final_state: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    period_map: Option<PeriodMapOut>,
}

/// Integrates the network and writes `<prefix>.csv` (trajectory) and
/// `<prefix>.report.json`. A period-map report is included whenever the span
/// covers at least four periods.
pub fn run_simulate(
    spec_path: &Path,
    hist_path: &Path,
    t_end: f64,
    h: f64,
    out_prefix: &Path,
) -> Result<(String, i32)> {
    let (spec, spec_digest) = read_spec(spec_path)?;
    let hist_bytes =
        fs::read(hist_path).with_context(|| format!("reading {}", hist_path.display()))?;
    let hist_text = String::from_utf8(hist_bytes.clone())
        .with_context(|| format!("{} is not UTF-8", hist_path.display()))?;
    let hist = stabcert::json::history_from_str(&hist_text)
        .with_context(|| format!("parsing {}", hist_path.display()))?;

    let tr = simulate(&spec, &hist, t_end, h)?;

    let csv_path = format!("{}.csv", out_prefix.display());
    let mut csv = Vec::new();
    tr.write_csv(&mut csv)?;
    fs::write(&csv_path, &csv).with_context(|| format!("writing {csv_path}"))?;

    let periods = (t_end / spec.omega()).floor() as usize;
    let period_map = if periods >= 4 {
        let rep = period_map_report(&tr, spec.omega(), periods - 1)?;
        Some(PeriodMapOut {
            periods: periods - 1,
            orbit_variation: orbit_variation(&rep.v_samples),
            diffs: rep.diffs,
            ratios: rep.ratios,
            eps_hat: rep.eps_hat,
            saturated: rep.saturated,
            v_samples: rep.v_samples,
        })
    } else {
        None
    };

    let report = SimulateReport {
        spec_digest,
        history_digest: digest(&hist_bytes),
        t_end,
        h,
        csv: csv_path,
        final_state: tr.samples().last().expect("nonempty trajectory").clone(),
        period_map,
    };
    let doc = render(report);
    let report_path = format!("{}.report.json", out_prefix.display());
    fs::write(&report_path, &doc).with_context(|| format!("writing {report_path}"))?;
    Ok((doc, 0))
}

// ----------------------------------------------------------------- verify --

#[derive(Serialize)]
struct VerifyReport {
    spec_digest: String,
    certificate_digest: String,
    kind: &'static str,
    epsilon: f64,
    valid: bool,
    row_margins: Vec<f64>,
}

pub fn run_verify(spec_path: &Path, cert_path: &Path) -> Result<(String, i32)> {
    let (spec, spec_digest) = read_spec(spec_path)?;
    let cert_bytes =
        fs::read(cert_path).with_context(|| format!("reading {}", cert_path.display()))?;
    let cert_text = String::from_utf8(cert_bytes.clone())
        .with_context(|| format!("{} is not UTF-8", cert_path.display()))?;
    let cert = stabcert::json::certificate_from_str(&cert_text)
        .with_context(|| format!("parsing {}", cert_path.display()))?;

    let check = check_certificate(&spec, &cert)?;
    let report = VerifyReport {
        spec_digest,
        certificate_digest: digest(&cert_bytes),
        kind: cert.kind.name(),
        epsilon: cert.epsilon,
        valid: check.valid,
        row_margins: check.row_margins,
    };
    let code = if check.valid { 0 } else { 2 };
    Ok((render(report), code))
}

// -------------------------------------------------------------- transform --

#[derive(Serialize)]
struct TransformReport {
    spec_digest: String,
    from: String,
    to: String,
    p: f64,
    source_weights: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_star: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_star: Option<Vec<Vec<f64>>>,
    result_weights: Vec<f64>,
}

pub fn run_transform(spec_path: &Path, from: &str, to: &str, p: f64) -> Result<(String, i32)> {
    let (spec, spec_digest) = read_spec(spec_path)?;
    let n = spec.n();
    if !(p > 1.0) || !p.is_finite() {
        bail!("transform requires a finite p > 1, got {p}");
    }

    let report = match (from, to) {
        ("l1", "lp") => {
            let theta = match find_weights(&spec, CriterionKind::L1, None, 0.0)? {
                WeightSearch::Found(cert) => cert.weights,
                WeightSearch::Infeasible { slack, .. } => {
                    return Ok((
                        render(json!({
                            "spec_digest": spec_digest,
                            "from": from, "to": to, "p": p,
                            "feasible": false, "slack": slack,
                        })),
                        2,
                    ))
                }
            };
            let inst = instantiate(&spec, 0.0, p)?;
            let out = l1_to_lp(&inst.problem, &theta, p)?;
            TransformReport {
                spec_digest,
                from: from.into(),
                to: to.into(),
                p,
                source_weights: theta,
                alpha_star: Some(out.alpha_star),
                beta_star: Some(out.beta_star),
                result_weights: out.xi,
            }
        }
        ("lp", "l1") => {
            let exps = ExponentParams::balanced(p, n)?;
            let xi = match find_weights(&spec, CriterionKind::LpBalanced, Some(&exps), 0.0)? {
                WeightSearch::Found(cert) => cert.weights,
                WeightSearch::Infeasible { slack, .. } => {
                    return Ok((
                        render(json!({
                            "spec_digest": spec_digest,
                            "from": from, "to": to, "p": p,
                            "feasible": false, "slack": slack,
                        })),
                        2,
                    ))
                }
            };
            let inst = instantiate(&spec, 0.0, p)?;
            let theta = lp_to_l1(&inst.problem, &xi, &exps)?;
            TransformReport {
                spec_digest,
                from: from.into(),
                to: to.into(),
                p,
                source_weights: xi,
                alpha_star: None,
                beta_star: None,
                result_weights: theta,
            }
        }
        _ => bail!("unsupported transform direction {from} -> {to}"),
    };
    Ok((render(report), 0))
}

// ------------------------------------------------------------------ repro --

#[derive(Serialize)]
struct Assertion {
    name: &'static str,
    expected: serde_json::Value,
    computed: serde_json::Value,
    pass: bool,
}

#[derive(Serialize)]
struct ReproReport {
    target: &'static str,
    assertions: Vec<Assertion>,
    all_pass: bool,
}

fn pf(v: f64) -> PeriodicFn<f64> {
    PeriodicFn::constant(v, 1.0).expect("constant coefficient")
}

fn two_unit(d2: f64, a21: f64) -> NetworkSpec<f64> {
    NetworkSpec::new(
        1.0,
        vec![pf(2.0), pf(d2)],
        vec![vec![pf(1.0), pf(3.0)], vec![pf(a21), pf(1.0)]],
        vec![vec![pf(0.0), pf(0.0)], vec![pf(0.0), pf(0.0)]],
        vec![pf(0.0), pf(0.0)],
        vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        vec![1.0, 1.0],
        vec![1.0, 1.0],
    )
    .expect("two-unit spec is valid")
}

/// Ratio window of a 2x2 row system with negative diagonal and positive
/// off-diagonal entries: lo < x1/x2 < hi.
fn ratio_window(m: &[Vec<f64>]) -> (f64, f64) {
    (m[0][1] / -m[0][0], -m[1][1] / m[1][0])
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Reproduces the worked two-unit example end to end. Exit 0 iff every
/// recorded value matches within 1e-9.
pub fn run_repro(target: &str) -> Result<(String, i32)> {
    if target != "example1" {
        bail!("unknown reproduction target {target:?} (expected \"example1\")");
    }
    let tol = 1e-9;
    let spec = two_unit(11.0, 3.0);
    let mut assertions = Vec::new();

    // 1: the L1 matrix and its ratio window
    let l1 = assemble(&spec, CriterionKind::ConstantL1, None, 0.0)?;
    let m = l1.matrix().to_vec();
    assertions.push(Assertion {
        name: "l1_matrix",
        expected: json!([[-1.0, 3.0], [3.0, -10.0]]),
        computed: json!(m),
        pass: m == [[-1.0, 3.0], [3.0, -10.0]],
    });
    let (lo, hi) = ratio_window(&m);
    let theta = solve_strict(&l1)?.x.context("L1 form must be feasible")?;
    let ratio = theta[0] / theta[1];
    assertions.push(Assertion {
        name: "l1_window",
        expected: json!({"lo": 3.0, "hi": 10.0 / 3.0}),
        computed: json!({"lo": lo, "hi": hi, "lp_ratio": ratio}),
        pass: close(lo, 3.0, tol) && close(hi, 10.0 / 3.0, tol) && ratio > lo && ratio < hi,
    });

    // 2 and 3: transform exponents at theta = (19, 6), p = 2
    let inst = instantiate(&spec, 0.0, 2.0)?;
    let out = l1_to_lp(&inst.problem, &[19.0, 6.0], 2.0)?;
    let a12 = 0.5 * (19.0f64 / 2.0).ln() / 3.0f64.ln();
    let a21 = 0.5 * (18.0f64 / 19.0).ln() / 3.0f64.ln();
    assertions.push(Assertion {
        name: "alpha_star_12",
        expected: json!(a12),
        computed: json!(out.alpha_star[0][1]),
        pass: close(out.alpha_star[0][1], a12, tol),
    });
    assertions.push(Assertion {
        name: "alpha_star_21",
        expected: json!(a21),
        computed: json!(out.alpha_star[1][0]),
        pass: close(out.alpha_star[1][0], a21, tol),
    });

    // 4: the resulting p = 2 matrix and its xi window
    let exps = ExponentParams::new(2.0, out.alpha_star, out.beta_star)?;
    let lp = assemble(&spec, CriterionKind::ConstantLpGeneral, Some(&exps), 0.0)?;
    let want = [[-10.0 / 19.0, 9.0 / 19.0], [19.0 / 4.0, -21.0 / 4.0]];
    let got = lp.matrix().to_vec();
    let matrix_pass = got
        .iter()
        .zip(&want)
        .all(|(g, w)| g.iter().zip(w).all(|(&x, &y)| close(x, y, tol)));
    assertions.push(Assertion {
        name: "lp_matrix",
        expected: json!(want),
        computed: json!(got),
        pass: matrix_pass,
    });
    let (xlo, xhi) = ratio_window(&got);
    let xi = solve_strict(&lp)?.x.context("Lp form must be feasible")?;
    let xi_ratio = xi[0] / xi[1];
    assertions.push(Assertion {
        name: "xi_window",
        expected: json!({"lo": 0.9, "hi": 21.0 / 19.0}),
        computed: json!({"lo": xlo, "hi": xhi, "lp_ratio": xi_ratio}),
        pass: close(xlo, 0.9, tol)
            && close(xhi, 21.0 / 19.0, tol)
            && xi_ratio > xlo
            && xi_ratio < xhi,
    });

    // 5: the balanced p = 2 form has no solution
    let bal = ExponentParams::balanced(2.0, 2)?;
    let search = find_weights(&spec, CriterionKind::ConstantLpBalanced, Some(&bal), 0.0)?;
    assertions.push(Assertion {
        name: "balanced_p2_infeasible",
        expected: json!(false),
        computed: json!(matches!(search, WeightSearch::Found(_))),
        pass: matches!(search, WeightSearch::Infeasible { .. }),
    });

    // negative controls: each perturbation empties the L1 ratio window
    for (name, spec, expect_lo, expect_hi) in [
        ("control_d2_3.9", two_unit(3.9, 3.0), 3.0, 2.9 / 3.0),
        ("control_a21_11", two_unit(11.0, 11.0), 11.0, 10.0 / 3.0),
    ] {
        let sys = assemble(&spec, CriterionKind::ConstantL1, None, 0.0)?;
        let (lo, hi) = ratio_window(sys.matrix());
        let r = solve_strict(&sys)?;
        assertions.push(Assertion {
            name,
            expected: json!({"feasible": false, "lo": expect_lo, "hi": expect_hi}),
            computed: json!({"feasible": r.feasible, "lo": lo, "hi": hi}),
            pass: !r.feasible && close(lo, expect_lo, tol) && close(hi, expect_hi, tol),
        });
    }

    let all_pass = assertions.iter().all(|a| a.pass);
    let report = ReproReport {
        target: "example1",
        assertions,
        all_pass,
    };
    Ok((render(report), if all_pass { 0 } else { 2 }))
}
