//! The `zqcodes` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 state budget exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{verify, BoundReport, Limits, TheoremId, Verdict, VerifyParams};
use crate::code::{CodeSummary, LinearCode, DEFAULT_ENUMERATION_LIMIT};
use crate::construct::{
    extend_d, full_repetition_generator, macdonald_generator, repetition_generator,
    simplex_generator,
};
use crate::error::Error;
use crate::matrix_file::{read_matrix, write_matrix};
use crate::radius::{
    covering_radius_bfs, covering_radius_exhaustive, sampled_lower_bound, RadiusResult,
    DEFAULT_BFS_LIMIT, DEFAULT_EXHAUSTIVE_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "zqcodes",
    version,
    about = "Z_q-linear Simplex/MacDonald codes: parameters, covering radii, bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Simplex,
    Macdonald,
    Repetition,
    FullRepetition,
    Extend,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Exhaustive,
    Bfs,
    Sample,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a generator matrix and write it to a matrix file.
    Construct {
        family: Family,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        u: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        v: Option<u32>,
        /// Input matrix (for `extend`).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print n, k, M, d and the weight distribution of a code.
    Params {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the covering radius of a code.
    Radius {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// State budget, as an integer or `2^E`.
        #[arg(long, value_parser = parse_limit)]
        limit: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a formula or bound against computed ground truth.
    Verify {
        theorem: String,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Budget for the exact radius engines, as an integer or `2^E`.
        #[arg(long, value_parser = parse_limit)]
        limit: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

/// Accepts `123` or `2^E`.
pub fn parse_limit(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        let base: u64 = base
            .trim()
            .parse()
            .map_err(|_| format!("bad limit base in '{s}'"))?;
        let exp: u32 = exp
            .trim()
            .parse()
            .map_err(|_| format!("bad limit exponent in '{s}'"))?;
        base.checked_pow(exp)
            .ok_or_else(|| format!("limit '{s}' overflows 64 bits"))
    } else {
        s.parse()
            .map_err(|_| format!("limit must be an integer or 2^E, got '{s}'"))
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum Record {
    Summary(CodeSummary),
    Radius(RadiusResult),
    Bound(BoundReport),
}

/// The JSON document printed under `--json`.
#[derive(Debug, Serialize)]
struct ReportDocument {
    tool: &'static str,
    version: &'static str,
    command: Vec<String>,
    records: Vec<Record>,
    pass: bool,
}

impl ReportDocument {
    fn new(command: &[String], records: Vec<Record>) -> Self {
        let pass = records.iter().all(|r| match r {
            Record::Bound(b) => b.verdict == Verdict::Pass,
            _ => true,
        });
        ReportDocument {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_vec(),
            records,
            pass,
        }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("`construct {family}` needs --{flag}")))
}

/// Runs one command. `args[0]` is the program name.
pub fn run(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let echo = &args[1.min(args.len())..];
    match dispatch(cli.command, echo, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn print_json(out: &mut impl Write, doc: &ReportDocument) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("report serializes");
    writeln!(out, "{text}")?;
    Ok(())
}

fn dispatch(
    command: Command,
    echo: &[String],
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<i32, Failure> {
    match command {
        Command::Construct {
            family,
            q,
            k,
            u,
            n,
            v,
            input,
            out: path,
        } => {
            let name = family
                .to_possible_value()
                .map(|p| p.get_name().to_string())
                .unwrap_or_default();
            let g = match family {
                Family::Simplex => {
                    let q = require(q, "q", &name)?;
                    simplex_generator(q, require(k, "k", &name)?)?
                }
                Family::Macdonald => {
                    let q = require(q, "q", &name)?;
                    macdonald_generator(q, require(k, "k", &name)?, require(u, "u", &name)?)?
                }
                Family::Repetition => {
                    let q = require(q, "q", &name)?;
                    repetition_generator(q, require(n, "n", &name)?, require(v, "v", &name)?)?
                }
                Family::FullRepetition => {
                    let q = require(q, "q", &name)?;
                    full_repetition_generator(q, require(n, "n", &name)?)?
                }
                Family::Extend => {
                    let base = read_matrix(require(input, "in", &name)?)?;
                    if let Some(q) = q.filter(|&q| q != base.q()) {
                        return Err(Failure::Usage(format!(
                            "--q {q} does not match the input matrix modulus {}",
                            base.q()
                        )));
                    }
                    extend_d(&base)?
                }
            };
            if g.q() % 2 == 1 && !matches!(family, Family::Repetition) {
                writeln!(
                    err,
                    "warning: q = {} is odd; the distance formulas for this family assume even q",
                    g.q()
                )?;
            }
            write_matrix(&g, &path)?;
            writeln!(
                out,
                "wrote {}x{} matrix over Z_{} to {}",
                g.k(),
                g.n(),
                g.q(),
                path.display()
            )?;
            Ok(EXIT_OK)
        }
        Command::Params { file, json } => {
            let code = LinearCode::enumerate(read_matrix(&file)?, DEFAULT_ENUMERATION_LIMIT)?;
            let s = code.summary().clone();
            if json {
                print_json(out, &ReportDocument::new(echo, vec![Record::Summary(s)]))?;
            } else {
                let d = s
                    .min_distance
                    .map_or("undefined".to_string(), |d| d.to_string());
                writeln!(out, "[{}, {}] M={} d={}", s.n, s.k, s.cardinality, d)?;
                let wd: Vec<String> = s
                    .weight_distribution
                    .iter()
                    .map(|(w, c)| format!("{w}:{c}"))
                    .collect();
                writeln!(out, "weights {}", wd.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        Command::Radius {
            file,
            method,
            limit,
            samples,
            seed,
            json,
        } => {
            let code = LinearCode::enumerate(read_matrix(&file)?, DEFAULT_ENUMERATION_LIMIT)?;
            let result = match method {
                Method::Exhaustive => {
                    covering_radius_exhaustive(&code, limit.unwrap_or(DEFAULT_EXHAUSTIVE_LIMIT))?
                }
                Method::Bfs => covering_radius_bfs(&code, limit.unwrap_or(DEFAULT_BFS_LIMIT))?,
                Method::Sample => {
                    if samples == 0 {
                        return Err(Failure::Usage("--samples must be at least 1".into()));
                    }
                    sampled_lower_bound(&code, samples, seed)
                }
            };
            if json {
                print_json(
                    out,
                    &ReportDocument::new(echo, vec![Record::Radius(result)]),
                )?;
            } else if result.exact {
                writeln!(out, "R = {} (exact)", result.value)?;
                writeln!(out, "states visited: {}", result.states_visited)?;
            } else {
                writeln!(out, "R >= {} (sampled lower bound)", result.value)?;
                writeln!(out, "samples: {} seed: {seed}", result.states_visited)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            theorem,
            q,
            kmax,
            nmax,
            samples,
            seed,
            limit,
            json,
        } => {
            let id: TheoremId = theorem.parse().map_err(Failure::Usage)?;
            let mut limits = Limits::default();
            if let Some(l) = limit {
                limits.bfs = l;
                limits.exhaustive = l;
            }
            let params = VerifyParams {
                q,
                kmax,
                nmax,
                samples: samples.max(1),
                seed,
                limits,
            };
            let reports = verify(id, &params)?;
            let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
            let incomplete = reports.iter().any(|r| r.verdict == Verdict::NotComputable);
            if json {
                let records = reports.into_iter().map(Record::Bound).collect();
                print_json(out, &ReportDocument::new(echo, records))?;
            } else {
                for r in &reports {
                    let inputs: Vec<String> =
                        r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let verdict = match r.verdict {
                        Verdict::Pass => "PASS",
                        Verdict::Fail => "FAIL",
                        Verdict::NotComputable => "N/C ",
                    };
                    writeln!(
                        out,
                        "{verdict} {} {} formula={}/{} computed={} | {}",
                        r.theorem_id,
                        inputs.join(" "),
                        r.formula_value.numer(),
                        r.formula_value.denom(),
                        serde_json::to_string(&r.computed_value).expect("serializes"),
                        r.notes
                    )?;
                }
                let overall = if failed {
                    "fail"
                } else if incomplete || reports.is_empty() {
                    "incomplete"
                } else {
                    "pass"
                };
                writeln!(out, "overall: {overall} ({} checks)", reports.len())?;
            }
            Ok(if failed {
                EXIT_VERIFY_FAILED
            } else if incomplete {
                EXIT_BUDGET
            } else {
                EXIT_OK
            })
        }
    }
}
