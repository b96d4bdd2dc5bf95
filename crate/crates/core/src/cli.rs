//! Command-line front end. Every subcommand parses JSON inputs, calls one
//! library operation and prints its result.
//!
//! Exit codes: 0 success, 1 invalid input (a JSON error object on stderr),
//! 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::distfn::{levy_metric, StepDF};
use crate::error::Error;
use crate::operator::{open_mapping_delta, verify_open_mapping, LinearOperator};
use crate::pnspace::PNSpace;
use crate::testkit::{run_suite, Suite};
use crate::triangle::{tau_inf_conv, tau_sup_conv, TNormKind};

#[derive(Debug, Parser)]
#[command(name = "probnorm", version, about = "Exact computations in probabilistic normed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a step d.f. at one or more points.
    DfEval {
        #[arg(long)]
        f: PathBuf,
        /// Abscissae; `inf` is accepted.
        #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true)]
        x: Vec<f64>,
        #[arg(long)]
        csv: bool,
    },
    /// Triangle function of two step d.f.'s.
    DfConv {
        #[arg(long)]
        tnorm: TNormKind,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        /// Use the inf-convolution with the dual t-conorm.
        #[arg(long)]
        inf: bool,
    },
    /// Modified Lévy distance of two step d.f.'s.
    DfLevy {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Quasi-inverse of a step d.f.
    DfQinv {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Probabilistic norm of a vector.
    SpaceNu {
        #[command(flatten)]
        v: SpaceVector,
    },
    /// Norm `‖x‖_w` (and the seminorm `p(x, w)`) of a vector.
    SpaceNorm {
        #[command(flatten)]
        v: SpaceVector,
        #[arg(long)]
        w: f64,
    },
    /// Operator norm `‖T‖_{(w,w')}`.
    OpNorm {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        w: f64,
        #[arg(long)]
        wp: f64,
        /// Also report a Monte-Carlo lower bound from this many samples.
        #[arg(long)]
        mc: Option<usize>,
        #[arg(long, env = "PROBNORM_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Operator norms at every band pair.
    OpProfile {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Open-mapping radius of an invertible operator.
    OpDelta {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        w: f64,
        /// Verify the ball inclusion on this many sampled points.
        #[arg(long)]
        verify: Option<usize>,
        #[arg(long, env = "PROBNORM_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Run the seeded property suites.
    Check {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, env = "PROBNORM_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Args)]
struct SpaceVector {
    #[arg(long)]
    space: PathBuf,
    /// Comma-separated coordinates.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
}

enum Failure {
    Parse {
        path: String,
        message: String,
        line: usize,
        column: usize,
    },
    Io {
        path: String,
        message: String,
    },
    Validation(Error),
}

impl Failure {
    fn to_json(&self) -> serde_json::Value {
        let body = match self {
            Failure::Parse {
                path,
                message,
                line,
                column,
            } => json!({"kind": "parse", "path": path, "message": message, "line": line, "column": column}),
            Failure::Io { path, message } => json!({"kind": "io", "path": path, "message": message}),
            Failure::Validation(e) => json!({"kind": "validation", "message": e.to_string()}),
        };
        json!({ "error": body })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e)
    }
}

/// Reads inputs from files, `-` meaning standard input (read at most once).
struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn load<T: DeserializeOwned>(&mut self, path: &PathBuf) -> Result<T, Failure> {
        let name = path.display().to_string();
        let text = if name == "-" {
            if self.stdin_used {
                return Err(Failure::Io {
                    path: name,
                    message: "standard input can supply only one input".into(),
                });
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| Failure::Io {
                path: name.clone(),
                message: e.to_string(),
            })?;
            s
        } else {
            fs::read_to_string(path).map_err(|e| Failure::Io {
                path: name.clone(),
                message: e.to_string(),
            })?
        };
        serde_json::from_str(&text).map_err(|e| Failure::Parse {
            path: name,
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
        })
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
}

/// Output text and whether the command's own verdict was a pass.
fn execute(cmd: Command, inputs: &mut Inputs) -> Result<(String, bool), Failure> {
    let out = match cmd {
        Command::DfEval { f, x, csv } => {
            let f: StepDF = inputs.load(&f)?;
            let values: Vec<f64> = x.iter().map(|&t| f.eval(t)).collect();
            if csv {
                let mut s = String::from("x,value\n");
                for (t, v) in x.iter().zip(&values) {
                    s.push_str(&format!("{t},{v}\n"));
                }
                s
            } else {
                // JSON has no infinities
                let xs: Vec<serde_json::Value> = x
                    .iter()
                    .map(|&t| if t.is_finite() { json!(t) } else { json!(t.to_string()) })
                    .collect();
                to_json(&json!({ "x": xs, "values": values }))
            }
        }
        Command::DfConv { tnorm, f, g, inf } => {
            let f: StepDF = inputs.load(&f)?;
            let g: StepDF = inputs.load(&g)?;
            let conv = if inf { tau_inf_conv } else { tau_sup_conv };
            to_json(&conv(tnorm, &f, &g))
        }
        Command::DfLevy { f, g } => {
            let f: StepDF = inputs.load(&f)?;
            let g: StepDF = inputs.load(&g)?;
            to_json(&levy_metric(&f, &g))
        }
        Command::DfQinv { f, csv } => {
            let f: StepDF = inputs.load(&f)?;
            let q = f.quasi_inverse();
            if csv {
                let mut s = String::from("w_upper,q\n");
                for (w, v) in q.wbreaks().iter().zip(q.qvalues()) {
                    s.push_str(&format!("{w},{v}\n"));
                }
                s
            } else {
                to_json(&q)
            }
        }
        Command::SpaceNu { v } => {
            let p: PNSpace = inputs.load(&v.space)?;
            to_json(&p.prob_norm(&v.x)?)
        }
        Command::SpaceNorm { v, w } => {
            let p: PNSpace = inputs.load(&v.space)?;
            let norm = p.norm_at(&v.x, w)?;
            let seminorm = p.seminorm(&v.x, w)?;
            to_json(&json!({ "w": w, "norm": norm, "seminorm": seminorm }))
        }
        Command::OpNorm { op, w, wp, mc, seed } => {
            let t: LinearOperator = inputs.load(&op)?;
            let (norm, witness) = t.norm_with_witness(w, wp)?;
            let mut out = json!({ "w": w, "wp": wp, "norm": norm, "witness": witness });
            if let Some(samples) = mc {
                out["mc"] = json!(t.norm_monte_carlo(w, wp, samples, seed)?);
                out["mc_samples"] = json!(samples);
            }
            to_json(&out)
        }
        Command::OpProfile { op, csv } => {
            let t: LinearOperator = inputs.load(&op)?;
            let prof = t.norm_profile()?;
            if csv {
                prof.to_csv()
            } else {
                to_json(&prof)
            }
        }
        Command::OpDelta { op, w, verify, seed } => {
            let t: LinearOperator = inputs.load(&op)?;
            let ball = open_mapping_delta(&t, w)?;
            let mut out = serde_json::to_value(&ball).expect("outputs serialize");
            if let Some(samples) = verify {
                let chk = verify_open_mapping(&t, &ball, samples, 1e-9, seed)?;
                let passed = chk.passed;
                out["verification"] = serde_json::to_value(&chk).expect("outputs serialize");
                return Ok((to_json(&out), passed));
            }
            to_json(&out)
        }
        Command::Check {
            suite,
            seed,
            cases,
            csv,
        } => {
            let report = run_suite(suite, seed, cases);
            let text = if csv { report.to_csv() } else { report.to_json() + "\n" };
            return Ok((text, report.passed));
        }
    };
    Ok((out, true))
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
    };
    match execute(cli.command, &mut inputs) {
        Ok((text, passed)) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(err, "{}", f.to_json());
            1
        }
    }
}
