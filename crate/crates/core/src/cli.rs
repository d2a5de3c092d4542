//! Command-line front end. Codes and patterns are read from JSON files and
//! every command produces a deterministic JSON report.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::code::LinearCode;
use crate::derived::{derived_equal, separating_pattern, DerivedRep};
use crate::equiv::{check_compromised, is_t_equivalent, standing_assumptions};
use crate::error::Error;
use crate::lift::{lift, lift_oracle, LiftResult};
use crate::matroid::circuits;
use crate::pattern::CollusionPattern;

#[derive(Debug, Parser)]
#[command(
    name = "codelift",
    version,
    about = "Lifts of linear codes over collusion patterns"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lift a code over a pattern.
    Lift(Inputs),
    /// Compare the algebraic lift against brute-force enumeration.
    OracleCheck(Inputs),
    /// Circuit vectors of a code and its derived matroid.
    Derived(Inputs),
    /// Find a pattern whose lifts tell two codes apart.
    Separate(Inputs),
    /// Decide whether the lift over a pattern gives back the code.
    Equiv(Inputs),
    /// Check the standing assumptions on a code and pattern.
    Assumptions(Inputs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lift(_) => "lift",
            Command::OracleCheck(_) => "oracle-check",
            Command::Derived(_) => "derived",
            Command::Separate(_) => "separate",
            Command::Equiv(_) => "equiv",
            Command::Assumptions(_) => "assumptions",
        }
    }

    fn inputs(&self) -> &Inputs {
        match self {
            Command::Lift(i)
            | Command::OracleCheck(i)
            | Command::Derived(i)
            | Command::Separate(i)
            | Command::Equiv(i)
            | Command::Assumptions(i) => i,
        }
    }
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Code file; give twice for `separate`.
    #[arg(long = "code", value_name = "PATH")]
    pub codes: Vec<PathBuf>,
    #[command(flatten)]
    pub pattern: PatternArgs,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also run the brute-force lift when the enumeration guard allows.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct PatternArgs {
    #[arg(long, value_name = "PATH")]
    pub pattern: Option<PathBuf>,
    /// All `T`-subsets of the code's ground set.
    #[arg(long, value_name = "T")]
    pub t_collusion: Option<usize>,
    /// The cyclic windows of length `T`.
    #[arg(long, value_name = "T")]
    pub cyclic: Option<usize>,
    /// The circuits through element `E`.
    #[arg(long, value_name = "E")]
    pub compromised: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(Error::GuardExceeded { .. }) => 3,
            CliError::Library(Error::InvariantViolation(_)) => 4,
            _ => 2,
        }
    }
}

/// On-disk form of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub field: u64,
    pub n: usize,
    pub generator: Vec<Vec<i64>>,
}

impl CodeFile {
    pub fn to_code(&self) -> Result<LinearCode, Error> {
        LinearCode::new(self.field, self.n, &self.generator)
    }

    /// The row-reduced generator of `q`, with positions in label order.
    pub fn from_code(q: &LinearCode) -> Self {
        Self {
            field: q.field().modulus() as u64,
            n: q.len(),
            generator: q
                .generator_rows()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect(),
        }
    }
}

/// On-disk form of a pattern; facets are 1-based element lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl PatternFile {
    pub fn to_pattern(&self) -> Result<CollusionPattern, Error> {
        CollusionPattern::from_lists(self.n, &self.facets)
    }
}

#[derive(Debug, Serialize)]
struct InputDigest {
    source: String,
    sha256: Option<String>,
}

/// A finished report.
#[derive(Debug, Serialize)]
pub struct Report {
    command: &'static str,
    inputs: Vec<InputDigest>,
    result: Value,
    #[serde(skip)]
    summary: Option<String>,
}

impl Report {
    /// Indented JSON with arrays of scalars kept on one line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        write_value(
            &mut s,
            &serde_json::to_value(self).expect("report serializes"),
            0,
        );
        s.push('\n');
        s
    }

    /// A one-line verdict for the terminal, if the command has one.
    pub fn summary(&self) -> Option<&str> {
        self.summary.as_deref()
    }

    pub fn result(&self) -> &Value {
        &self.result
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalars serialize"));
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("scalars serialize")),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(
    path: &Path,
    digests: &mut Vec<InputDigest>,
) -> Result<T, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    digests.push(InputDigest {
        source: path.display().to_string(),
        sha256: Some(hex::encode(Sha256::digest(&bytes))),
    });
    serde_json::from_slice(&bytes).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn load_codes(
    inputs: &Inputs,
    want: usize,
    digests: &mut Vec<InputDigest>,
) -> Result<Vec<LinearCode>, CliError> {
    if inputs.codes.len() != want {
        return Err(CliError::Usage(format!(
            "expected {want} --code argument(s), got {}",
            inputs.codes.len()
        )));
    }
    inputs
        .codes
        .iter()
        .map(|p| Ok(read_json::<CodeFile>(p, digests)?.to_code()?))
        .collect()
}

fn load_pattern(
    args: &PatternArgs,
    q: &LinearCode,
    digests: &mut Vec<InputDigest>,
) -> Result<Option<CollusionPattern>, CliError> {
    let n = q.len();
    let (source, pattern) = if let Some(path) = &args.pattern {
        let file: PatternFile = read_json(path, digests)?;
        return Ok(Some(file.to_pattern()?));
    } else if let Some(t) = args.t_collusion {
        (
            format!("t-collusion {n} {t}"),
            CollusionPattern::t_collusion(n, t)?,
        )
    } else if let Some(t) = args.cyclic {
        (format!("cyclic {n} {t}"), CollusionPattern::cyclic(n, t)?)
    } else if let Some(e) = args.compromised {
        (
            format!("compromised {e}"),
            CollusionPattern::compromised(q, e)?,
        )
    } else {
        return Ok(None);
    };
    digests.push(InputDigest {
        source,
        sha256: None,
    });
    Ok(Some(pattern))
}

fn require_pattern(p: Option<CollusionPattern>) -> Result<CollusionPattern, CliError> {
    p.ok_or_else(|| {
        CliError::Usage(
            "a pattern is required: --pattern, --t-collusion, --cyclic or --compromised".into(),
        )
    })
}

fn rational(r: Ratio<usize>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn oracle_verdict(equal: bool) -> String {
    format!(
        "algebraic == brute-force: {}",
        if equal { "PASS" } else { "FAIL" }
    )
}

fn lift_json(r: &LiftResult) -> Value {
    json!({
        "base_dim": r.base.dim(),
        "lifted_dim": r.lifted.dim(),
        "secrecy_rate": rational(r.secrecy_rate),
        "observed_circuits": r.observed,
        "lifted": CodeFile::from_code(&r.lifted),
    })
}

/// Runs one command and returns its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let inputs = cli.command.inputs();
    let mut digests = Vec::new();
    let mut summary = None;
    let result = match &cli.command {
        Command::Lift(_) => {
            let q = load_codes(inputs, 1, &mut digests)?.remove(0);
            let tau = require_pattern(load_pattern(&inputs.pattern, &q, &mut digests)?)?;
            let r = lift(&q, &tau)?;
            let mut out = lift_json(&r);
            if inputs.oracle {
                out["oracle"] = match lift_oracle(&q, &tau) {
                    Ok(o) => {
                        let verdict = oracle_verdict(o.lifted == r.lifted);
                        summary = Some(verdict.clone());
                        Value::String(verdict)
                    }
                    Err(Error::GuardExceeded {
                        guard,
                        limit,
                        actual,
                    }) => Value::String(format!("skipped: {guard} needs {actual} > {limit}")),
                    Err(e) => return Err(e.into()),
                };
            }
            out
        }
        Command::OracleCheck(_) => {
            let q = load_codes(inputs, 1, &mut digests)?.remove(0);
            let tau = require_pattern(load_pattern(&inputs.pattern, &q, &mut digests)?)?;
            let r = lift(&q, &tau)?;
            let o = lift_oracle(&q, &tau)?;
            let equal = o.lifted == r.lifted;
            let verdict = oracle_verdict(equal);
            summary = Some(verdict.clone());
            if !equal {
                return Err(Error::InvariantViolation(verdict).into());
            }
            let mut out = lift_json(&r);
            out["oracle"] = Value::String(verdict);
            out
        }
        Command::Derived(_) => {
            let q = load_codes(inputs, 1, &mut digests)?.remove(0);
            let d = DerivedRep::new(&q)?;
            let derived_circuits = match d.circuits() {
                Ok(cs) => json!(cs),
                Err(Error::GuardExceeded { .. }) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let vectors: Vec<Value> = d
                .ground()
                .iter()
                .zip(d.rep_matrix().rows())
                .map(|(c, v)| json!({ "circuit": c, "vector": v }))
                .collect();
            json!({
                "n": q.len(),
                "dim": q.dim(),
                "circuits": d.ground(),
                "circuit_vectors": vectors,
                "derived_rank": d.rank(),
                "derived_circuits": derived_circuits,
            })
        }
        Command::Separate(_) => {
            let codes = load_codes(inputs, 2, &mut digests)?;
            let (q1, q2) = (&codes[0], &codes[1]);
            let equal = derived_equal(q1, q2)?;
            match separating_pattern(q1, q2)? {
                Some(tau) => {
                    let l1 = lift(q1, &tau)?.lifted;
                    let l2 = lift(q2, &tau)?.lifted;
                    json!({
                        "derived_equal": equal,
                        "pattern": PatternFile { n: tau.n(), facets: tau.facet_lists() },
                        "lifted_dims": [l1.dim(), l2.dim()],
                        "lifted_circuits": [circuits(&l1)?, circuits(&l2)?],
                    })
                }
                None => json!({ "derived_equal": equal, "pattern": null }),
            }
        }
        Command::Equiv(_) => {
            let q = load_codes(inputs, 1, &mut digests)?.remove(0);
            let report = if let Some(e) = inputs.pattern.compromised {
                load_pattern(&inputs.pattern, &q, &mut digests)?;
                check_compromised(&q, e)?
            } else {
                let tau = require_pattern(load_pattern(&inputs.pattern, &q, &mut digests)?)?;
                is_t_equivalent(&q, &tau)?
            };
            summary = Some(format!("t-collusion equivalent: {}", report.is_equivalent));
            json!(report)
        }
        Command::Assumptions(_) => {
            let q = load_codes(inputs, 1, &mut digests)?.remove(0);
            let tau = require_pattern(load_pattern(&inputs.pattern, &q, &mut digests)?)?;
            let r = standing_assumptions(&q, &tau);
            json!({
                "connected": r.connected,
                "no_isolated": r.no_isolated(),
                "isolated": r.isolated,
                "facet_bound": r.facet_bound(),
                "oversized_facets": r.oversized_facets,
                "all_hold": r.all_hold(),
            })
        }
    };
    Ok(Report {
        command: cli.command.name(),
        inputs: digests,
        result,
        summary,
    })
}

/// Runs the command and writes the report; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let report = match execute(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let text = report.render();
    match &cli.command.inputs().out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
            if let Some(s) = report.summary() {
                println!("{s}");
            }
        }
        None => {
            if let Some(s) = report.summary() {
                eprintln!("{s}");
            }
            print!("{text}");
        }
    }
    0
}
