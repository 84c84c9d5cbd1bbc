//! The `predeg` command line.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error,
//! 3 integrality failure inside a computation.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::chow::ProductSpace;
use crate::error::Error;
use crate::quadric::{self, Coefficient, ProjMatrix, Table1Row};
use crate::{json as enc, predegree, segre, tangent, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTEGRALITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "predeg", version, about = "Predegree polynomials of smooth quadrics, computed exactly")]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Predegree polynomial of a smooth quadric.
    Predegree {
        #[command(subcommand)]
        target: PredegreeTarget,
    },
    /// Pushforward of the Segre class of a Segre-embedded product.
    SegreClass {
        /// Factor dimensions, e.g. 1,7.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<usize>,
    },
    /// Degree of the closure of SO(m).
    DegSo {
        #[arg(long)]
        m: u32,
    },
    /// Degree of the closure of PO(m).
    DegPo {
        #[arg(long)]
        m: u32,
    },
    /// Print one of the tables.
    Table {
        #[arg(long)]
        which: Which,
    },
    /// Run exact verification suites.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Decide whether a 4x4 matrix lies in the base locus.
    Member {
        /// Sixteen rationals, row-major, comma separated ("p/q" or integers).
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        matrix: Vec<String>,
    },
    /// A single predegree coefficient e_{i,S}.
    Coeff(CoeffArgs),
}

#[derive(Debug, Subcommand)]
enum PredegreeTarget {
    Quadric {
        /// Dimension of the ambient projective space.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Subcommand)]
enum VerifySuite {
    Tangents {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
struct CoeffArgs {
    #[arg(long)]
    i: usize,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    d: i64,
    #[arg(long, value_delimiter = ',', default_value = "1,7")]
    segre_factors: Vec<usize>,
    /// Use twice the Segre class (two components with the same class).
    #[arg(long)]
    double: bool,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::NonInteger { .. } => EXIT_INTEGRALITY,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output::ok(text),
                _ => Output::fail(EXIT_USAGE, text),
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Output::fail(error_code(&e), format!("error: {e}\n")),
    }
}

fn emit(json_mode: bool, command: &str, inputs: Value, result: Value, text: String) -> String {
    if json_mode {
        let Value::Object(inputs) = inputs else {
            unreachable!("inputs are always an object")
        };
        format!("{}\n", enc::envelope(command, inputs, result))
    } else {
        format!("{text}\n")
    }
}

fn coefficient_json(c: &Coefficient) -> Value {
    match c {
        Coefficient::Known(v) => enc::integer(v),
        Coefficient::Unknown => Value::String("*".into()),
    }
}

fn table1_json(row: &Table1Row) -> Value {
    json!({
        "n": row.n,
        "dim_forms": row.dim_forms,
        "dim_component": row.dim_component,
        "coefficients": row.coefficients.iter().map(coefficient_json).collect::<Vec<_>>(),
        "polynomial": row.polynomial_string(),
    })
}

fn dispatch(cli: &Cli) -> crate::Result<Output> {
    let j = cli.json;
    let out = match &cli.command {
        Command::Predegree {
            target: PredegreeTarget::Quadric { n },
        } => {
            let row = quadric::table1_row(*n)?;
            emit(
                j,
                "predegree quadric",
                json!({ "n": n }),
                table1_json(&row),
                row.polynomial_string(),
            )
        }
        Command::SegreClass { factors } => {
            let p = ProductSpace::new(factors.clone())?;
            let s = segre::segre_class_pushforward(&p)?;
            let result = json!({
                "ambient_dim": segre::ambient_dim(&p),
                "terms": enc::chow_class(&s),
            });
            emit(j, "segre-class", json!({ "factors": factors }), result, s.to_string())
        }
        Command::DegSo { m } => {
            let d = predegree::deg_so(*m)?;
            emit(j, "deg-so", json!({ "m": m }), json!({ "degree": enc::integer(&d) }), d.to_string())
        }
        Command::DegPo { m } => {
            let d = predegree::deg_po(*m)?;
            emit(j, "deg-po", json!({ "m": m }), json!({ "degree": enc::integer(&d) }), d.to_string())
        }
        Command::Table { which: Which::One } => {
            let rows = (1..=4).map(quadric::table1_row).collect::<crate::Result<Vec<_>>>()?;
            let mut text = String::from("n\tdim P Sym^2\tdim F\tpredegree polynomial");
            for r in &rows {
                write!(
                    text,
                    "\n{}\t{}\t{}\t{}",
                    r.n,
                    r.dim_forms,
                    r.dim_component,
                    r.polynomial_string()
                )
                .expect("writing to a String");
            }
            let result = json!({ "rows": rows.iter().map(table1_json).collect::<Vec<_>>() });
            emit(j, "table", json!({ "which": 1 }), result, text)
        }
        Command::Table { which: Which::Two } => {
            let rows = quadric::table2()?;
            let mut text = String::from("dim L\tcount");
            for (dim, count) in &rows {
                write!(text, "\n{dim}\t{count}").expect("writing to a String");
            }
            let result = json!({
                "rows": rows
                    .iter()
                    .map(|(dim, count)| json!({ "dim_l": dim, "count": enc::integer(count) }))
                    .collect::<Vec<_>>(),
            });
            emit(j, "table", json!({ "which": 2 }), result, text)
        }
        Command::Verify {
            suite: VerifySuite::Tangents { seed, samples },
        } => {
            let report = tangent::verify_tangents(*seed, *samples)?;
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "total": c.total, "ok": c.ok() }))
                .collect();
            let doc = enc::envelope(
                "verify tangents",
                Map::from_iter([
                    ("seed".to_string(), json!(seed)),
                    ("samples".to_string(), json!(samples)),
                ]),
                json!({ "passed": report.all_passed(), "checks": checks }),
            );
            let stdout = format!("{doc}\n");
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            return Ok(Output {
                code,
                stdout,
                stderr: String::new(),
            });
        }
        Command::Member { matrix } => {
            let values = matrix
                .iter()
                .map(|s| {
                    Rational::from_str(s.trim())
                        .map_err(|_| Error::InvalidInput(format!("not a rational: {s:?}")))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            let phi = ProjMatrix::from_row_major(&values)?;
            let member = quadric::base_scheme_member(&phi);
            let inputs = json!({ "matrix": values.iter().map(enc::rational).collect::<Vec<_>>() });
            emit(j, "member", inputs, json!({ "member": member }), member.to_string())
        }
        Command::Coeff(args) => {
            let p = ProductSpace::new(args.segre_factors.clone())?;
            let n = segre::ambient_dim(&p);
            let mut s = segre::segre_class_pushforward(&p)?;
            if args.double {
                s = s.scale(&Rational::from_integer(2.into()));
            }
            let v = predegree::predegree_coefficient(n, args.d, &s, args.i)?;
            let inputs = json!({
                "i": args.i,
                "d": args.d,
                "segre_factors": args.segre_factors,
                "double": args.double,
            });
            emit(j, "coeff", inputs, json!({ "value": enc::integer(&v) }), v.to_string())
        }
    };
    Ok(Output::ok(out))
}
