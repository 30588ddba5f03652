use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "stabcert",
    version,
    about = "Stability certificates for delayed periodic networks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full certificate analysis on a network spec
    Analyze {
        spec: PathBuf,
        /// Extra Lp exponents to sweep, e.g. --p 1.5,4
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        /// Also write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the network and write trajectory CSV plus report JSON
    Simulate {
        spec: PathBuf,
        hist: PathBuf,
        #[arg(long = "t-end")]
        t_end: f64,
        #[arg(long)]
        h: f64,
        #[arg(long = "out-prefix")]
        out_prefix: PathBuf,
    },
    /// Re-check a certificate against a spec by direct substitution
    Verify { spec: PathBuf, cert: PathBuf },
    /// Convert a certificate between the L1 and Lp forms
    Transform {
        spec: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// Reproduce a recorded worked example end to end
    Repro { target: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> anyhow::Result<(String, i32)> {
        match cli.cmd {
            Cmd::Analyze { spec, p, out } => {
                let (doc, code) = stabcert_cli::run_analyze(&spec, &p)?;
                if let Some(path) = out {
                    fs::write(&path, &doc)?;
                }
                Ok((doc, code))
            }
            Cmd::Simulate {
                spec,
                hist,
                t_end,
                h,
                out_prefix,
            } => stabcert_cli::run_simulate(&spec, &hist, t_end, h, &out_prefix),
            Cmd::Verify { spec, cert } => stabcert_cli::run_verify(&spec, &cert),
            Cmd::Transform { spec, from, to, p } => {
                stabcert_cli::run_transform(&spec, &from, &to, p)
            }
            Cmd::Repro { target } => stabcert_cli::run_repro(&target),
        }
    };
    match run() {
        Ok((doc, code)) => {
            print!("{doc}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
