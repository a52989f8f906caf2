//! Command-line front end. Every subcommand prints one JSON document; input errors print
//! `{"error": "..."}` and exit with status 2.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, parse_rational_list, Rational};
use crate::genpoly::GenPoly;
use crate::io::read_instance;
use crate::mlp::{Analysis, MlpInstance};
use crate::oracle::examples::{bilevel_example, buchheim};
use crate::oracle::{naive_trilevel_demo, random_instance, Require};
use crate::transforms::{forward_constraints, scale_rhs, unboundedness_gadget};

#[derive(Parser, Debug)]
#[command(name = "klevel", version, about = "Exact solver for optimistic k-level linear programs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Optimal value, attainment and a witness.
    Solve { file: PathBuf },
    /// Is there a feasible point with leader objective at most T?
    DecideVal {
        file: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        t: Rational,
    },
    /// Is the leader's problem unbounded below?
    DecideUnb { file: PathBuf },
    /// Is the leader's feasible set nonempty?
    Feasible { file: PathBuf },
    /// Feasibility and optimality of a point, given as comma-separated rationals.
    CheckPoint {
        file: PathBuf,
        #[arg(long, value_parser = rational_list_arg, allow_hyphen_values = true)]
        point: Point,
    },
    /// Value functions of levels k down to 2.
    ValueFunctions { file: PathBuf },
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, value_parser = rational_arg)]
        lambda: Option<Rational>,
    },
    /// Projects a polyhedron file onto the listed 0-based coordinates.
    Project {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        keep: Vec<usize>,
    },
    /// Exact solve of the three-level counterexample next to its naive basis reformulation.
    DemoBuchheim {
        #[arg(long, value_parser = rational_arg, default_value = "0")]
        t: Rational,
    },
    /// Random instance, or a bundled fixture with --fixture.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Comma-separated subset of C1,C2,C3.
        #[arg(long, default_value = "")]
        require: String,
        #[arg(long, value_enum, conflicts_with_all = ["dims", "rows"])]
        fixture: Option<Fixture>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Scale,
    Forward,
    Gadget,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fixture {
    Buchheim,
    Bilevel,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
struct Point(Vec<Rational>);

fn rational_list_arg(s: &str) -> std::result::Result<Point, String> {
    parse_rational_list(s).map(Point).map_err(|e| e.to_string())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports always serialize")
}

fn execute(cmd: Cmd) -> Result<Value> {
    Ok(match cmd {
        Cmd::Solve { file } => to_value(&crate::mlp::solve(&read_instance(&file)?)),
        Cmd::DecideVal { file, t } => {
            json!({ "answer": crate::mlp::decide_val(&read_instance(&file)?, &t) })
        }
        Cmd::DecideUnb { file } => {
            json!({ "answer": crate::mlp::decide_unbounded(&read_instance(&file)?) })
        }
        Cmd::Feasible { file } => {
            json!({ "answer": Analysis::new(&read_instance(&file)?).is_feasible() })
        }
        Cmd::CheckPoint { file, point } => {
            let a = Analysis::new(&read_instance(&file)?);
            json!({
                "feasible": a.check_feasible_point(&point.0)?,
                "optimal": a.check_optimal_point(&point.0)?,
            })
        }
        Cmd::ValueFunctions { file } => {
            let inst = read_instance(&file)?;
            let a = Analysis::new(&inst);
            let list: Vec<Value> = (1..inst.k())
                .rev()
                .map(|l| json!({ "level": l + 1, "function": to_value(a.value_function(l)) }))
                .collect();
            Value::Array(list)
        }
        Cmd::Transform { file, op, lambda } => {
            let inst = read_instance(&file)?;
            let out: MlpInstance = match op {
                Op::Scale => {
                    let lambda = lambda.ok_or_else(|| {
                        Error::Precondition("--op scale needs --lambda".into())
                    })?;
                    scale_rhs(&inst, &lambda)?
                }
                Op::Forward => forward_constraints(&inst).instance,
                Op::Gadget => unboundedness_gadget(&inst)?,
            };
            to_value(&out)
        }
        Cmd::Project { file, keep } => {
            let p: GenPoly = serde_json::from_str(&std::fs::read_to_string(file)?)?;
            if let Some(&bad) = keep.iter().find(|&&j| j >= p.dim()) {
                return Err(Error::Precondition(format!(
                    "coordinate {bad} out of range for dimension {}",
                    p.dim()
                )));
            }
            to_value(&p.project(&keep))
        }
        Cmd::DemoBuchheim { t } => to_value(&naive_trilevel_demo(&t)?),
        Cmd::Gen {
            seed,
            k,
            dims,
            rows,
            bound,
            require,
            fixture,
        } => {
            let inst = match fixture {
                Some(Fixture::Buchheim) => buchheim(),
                Some(Fixture::Bilevel) => bilevel_example(),
                None => {
                    let dims = dims.unwrap_or_else(|| vec![1; k]);
                    let rows = rows.unwrap_or_else(|| vec![2; k]);
                    random_instance(seed, k, &dims, &rows, bound, Require::parse(&require)?)?
                }
            };
            to_value(&inst)
        }
    })
}

fn error_json(msg: &str) -> String {
    serde_json::to_string_pretty(&json!({ "error": msg })).expect("string map")
}

/// Runs the CLI on `argv` (program name first) and returns the exit status and the text to
/// print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, error_json(e.render().to_string().trim_end())),
            };
        }
    };
    match execute(cli.cmd) {
        Ok(v) => (0, serde_json::to_string_pretty(&v).expect("values serialize")),
        Err(e) => (2, error_json(&e.to_string())),
    }
}
