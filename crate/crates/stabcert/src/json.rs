//! Wire formats for specs, histories and certificates.
//!
//! Everything on disk is IEEE-754 doubles. A spec file carries one shared
//! period and periodic coefficients as truncated Fourier series:
//!
//! ```json
//! {
//!   "n": 2, "omega": 1.0,
//!   "d": [{"c0": 2.0, "harmonics": []}, ...],
//!   "a": [[{"c0": 1.0, "harmonics": []}, ...], ...],
//!   "b": [[...], ...],
//!   "inputs": [{"c0": 0.0, "harmonics": [[1, 0.0, 1.0]]}, ...],
//!   "tau": [[0.0, 0.0], [0.0, 0.0]],
//!   "G": [1.0, 1.0], "F": [1.0, 1.0]
//! }
//! ```
//!
//! A harmonic `[k, ak, bk]` means `ak cos(2 pi k t / omega) + bk sin(...)`.
//! Periodic functions carry no period of their own; the spec's `omega` is
//! injected on parse, making period mismatches unrepresentable in files.

use serde::{Deserialize, Serialize};

use crate::criteria::{Certificate, CriterionKind, ExponentParams};
use crate::error::Error;
use crate::model::{History, NetworkSpec, PeriodicFn};

#[derive(Debug, Serialize, Deserialize)]
struct PeriodicWire {
    c0: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    harmonics: Vec<(u32, f64, f64)>,
}

impl PeriodicWire {
    fn to_fn(&self, omega: f64) -> Result<PeriodicFn<f64>, Error> {
        PeriodicFn::new(self.c0, self.harmonics.clone(), omega)
    }

    fn from_fn(f: &PeriodicFn<f64>) -> Self {
        PeriodicWire {
            c0: f.c0(),
            harmonics: f.harmonics().to_vec(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SpecWire {
    n: usize,
    omega: f64,
    d: Vec<PeriodicWire>,
    a: Vec<Vec<PeriodicWire>>,
    b: Vec<Vec<PeriodicWire>>,
    inputs: Vec<PeriodicWire>,
    tau: Vec<Vec<f64>>,
    #[serde(rename = "G")]
    g: Vec<f64>,
    #[serde(rename = "F")]
    f: Vec<f64>,
}

pub fn spec_from_str(s: &str) -> Result<NetworkSpec<f64>, Error> {
    let wire: SpecWire = serde_json::from_str(s)?;
    let conv = |fs: &[PeriodicWire]| -> Result<Vec<PeriodicFn<f64>>, Error> {
        fs.iter().map(|f| f.to_fn(wire.omega)).collect()
    };
    let conv2 = |m: &[Vec<PeriodicWire>]| -> Result<Vec<Vec<PeriodicFn<f64>>>, Error> {
        m.iter().map(|row| conv(row)).collect()
    };
    let spec = NetworkSpec::new(
        wire.omega,
        conv(&wire.d)?,
        conv2(&wire.a)?,
        conv2(&wire.b)?,
        conv(&wire.inputs)?,
        wire.tau,
        wire.g,
        wire.f,
    )?;
    if spec.n() != wire.n {
        return Err(Error::DimensionMismatch {
            what: "declared n".into(),
            expected: spec.n(),
            got: wire.n,
        });
    }
    Ok(spec)
}

pub fn spec_to_string_pretty(spec: &NetworkSpec<f64>) -> String {
    let wire = SpecWire {
        n: spec.n(),
        omega: spec.omega(),
        d: spec.d().iter().map(PeriodicWire::from_fn).collect(),
        a: spec
            .a()
            .iter()
            .map(|row| row.iter().map(PeriodicWire::from_fn).collect())
            .collect(),
        b: spec
            .b()
            .iter()
            .map(|row| row.iter().map(PeriodicWire::from_fn).collect())
            .collect(),
        inputs: spec.inputs().iter().map(PeriodicWire::from_fn).collect(),
        tau: spec.tau().to_vec(),
        g: spec.g_bounds().to_vec(),
        f: spec.f_bounds().to_vec(),
    };
    serde_json::to_string_pretty(&wire).expect("spec wire form serializes")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum HistoryWire {
    Constant { values: Vec<f64> },
    SampledCubic { values: Vec<Vec<f64>> },
}

pub fn history_from_str(s: &str) -> Result<History<f64>, Error> {
    Ok(match serde_json::from_str(s)? {
        HistoryWire::Constant { values } => History::Constant(values),
        HistoryWire::SampledCubic { values } => History::SampledCubic(values),
    })
}

pub fn history_to_string_pretty(hist: &History<f64>) -> String {
    let wire = match hist {
        History::Constant(values) => HistoryWire::Constant {
            values: values.clone(),
        },
        History::SampledCubic(values) => HistoryWire::SampledCubic {
            values: values.clone(),
        },
    };
    serde_json::to_string_pretty(&wire).expect("history wire form serializes")
}

#[derive(Debug, Serialize, Deserialize)]
struct ExponentsWire {
    p: f64,
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CertificateWire {
    kind: String,
    weights: Vec<f64>,
    epsilon: f64,
    slack: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exponents: Option<ExponentsWire>,
}

fn kind_from_name(name: &str) -> Result<CriterionKind, Error> {
    Ok(match name {
        "L1" => CriterionKind::L1,
        "LpBalanced" => CriterionKind::LpBalanced,
        "LpGeneral" => CriterionKind::LpGeneral,
        "ConstantL1" => CriterionKind::ConstantL1,
        "ConstantLpBalanced" => CriterionKind::ConstantLpBalanced,
        "ConstantLpGeneral" => CriterionKind::ConstantLpGeneral,
        other => {
            return Err(Error::InvalidArgument {
                what: format!("unknown certificate kind {other:?}"),
            })
        }
    })
}

pub fn certificate_from_str(s: &str) -> Result<Certificate<f64>, Error> {
    let wire: CertificateWire = serde_json::from_str(s)?;
    let exps = wire
        .exponents
        .map(|e| ExponentParams::new(e.p, e.alpha, e.beta))
        .transpose()?;
    Ok(Certificate {
        kind: kind_from_name(&wire.kind)?,
        weights: wire.weights,
        exps,
        epsilon: wire.epsilon,
        slack: wire.slack,
    })
}

pub fn certificate_to_string_pretty(cert: &Certificate<f64>) -> String {
    let wire = CertificateWire {
        kind: cert.kind.name().to_string(),
        weights: cert.weights.clone(),
        epsilon: cert.epsilon,
        slack: cert.slack,
        exponents: cert.exps.as_ref().map(|e| ExponentsWire {
            p: e.p,
            alpha: e.alpha.clone(),
            beta: e.beta.clone(),
        }),
    };
    serde_json::to_string_pretty(&wire).expect("certificate wire form serializes")
}
