//! `petrie` — expansions, transition matrices, matrix counts, Petrie
//! coefficients, and the verification suites, as deterministic JSON.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a failure,
//! 2 on usage or parse errors.

mod verify;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use petrie_core::bases::{transition_hd, BasisTag, SymFunc};
use petrie_core::petrie::{
    petrie_coefficient_det, petrie_coefficient_rule, CountMode, MatrixCountQuery,
};
use petrie_core::partition::enumerate_partitions;
use petrie_core::{rat_to_string, Error, Partition, Truncation};

#[derive(Parser)]
#[command(
    name = "petrie",
    version,
    about = "Exact arithmetic for truncated homogeneous (Petrie) symmetric functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of n in canonical order
    Partitions {
        #[arg(long)]
        n: u32,
    },
    /// Expand h_λ^[d] in a classical basis
    Expand {
        /// Truncation: a positive integer or "inf"
        #[arg(long)]
        d: Truncation,
        /// Partition as comma-separated decreasing parts, e.g. "2,2"
        #[arg(long)]
        lambda: Partition,
        /// Target basis: one of m, e, h, p, s
        #[arg(long)]
        basis: BasisTag,
    },
    /// Print the transition matrix from h^[d] to a classical basis
    Matrix {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: Truncation,
        /// Target basis: one of m, e, h, p, s
        #[arg(long)]
        target: BasisTag,
    },
    /// Count matrices with prescribed row and column sums
    Count {
        #[arg(long)]
        d: Truncation,
        #[arg(long)]
        row: Partition,
        #[arg(long)]
        col: Partition,
        /// bounded: entries in [0,d]; congruent: entries ≡ 0 or 1 mod d+1
        #[arg(long, value_enum, default_value_t = ModeArg::Bounded)]
        mode: ModeArg,
    },
    /// Petrie coefficient of s_λ in Σ_n h_n^[d]
    Petrie {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long)]
        lambda: Partition,
        #[arg(long, value_enum, default_value_t = MethodArg::Det)]
        method: MethodArg,
    },
    /// Run a verification suite
    Verify {
        /// One of: table, symmetry, factorization, petrie, main2, commute,
        /// nmatrix, kernel, triple, rootsofunity, identity, all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[arg(long, default_value_t = 3)]
        max_d: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Bounded,
    Congruent,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Det,
    Rule,
    Both,
}

#[derive(Serialize)]
struct Envelope {
    command: &'static str,
    parameters: Map<String, Value>,
    result: Value,
    elapsed_ms: u128,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, Error> {
    let start = Instant::now();
    let (name, parameters, result, all_pass) = match command {
        Command::Partitions { n } => {
            let list: Vec<Value> = enumerate_partitions(n)
                .iter()
                .map(|p| Value::String(p.to_string()))
                .collect();
            let mut params = Map::new();
            params.insert("n".into(), json!(n));
            ("partitions", params, Value::Array(list), true)
        }
        Command::Expand { d, lambda, basis } => {
            let basis = classical_basis(basis)?;
            let hd = SymFunc::basis_element(BasisTag::Hd(d), &lambda);
            let row = petrie_core::bases::convert(&hd, basis);
            let mut params = Map::new();
            params.insert("d".into(), json!(d.to_string()));
            params.insert("lambda".into(), json!(lambda.to_string()));
            params.insert("basis".into(), json!(basis.to_string()));
            ("expand", params, coeff_table(&row), true)
        }
        Command::Matrix { n, d, target } => {
            let target = classical_basis(target)?;
            let matrix = transition_hd(n, d, target)?;
            let mut params = Map::new();
            params.insert("n".into(), json!(n));
            params.insert("d".into(), json!(d.to_string()));
            params.insert("target".into(), json!(target.to_string()));
            let value = serde_json::to_value(&*matrix).expect("matrix serializes");
            ("matrix", params, value, true)
        }
        Command::Count { d, row, col, mode } => {
            let query = MatrixCountQuery {
                d,
                row: row.clone(),
                col: col.clone(),
                mode: match mode {
                    ModeArg::Bounded => CountMode::Bounded,
                    ModeArg::Congruent => CountMode::Congruent,
                },
            };
            let count = query.count()?;
            let mut params = Map::new();
            params.insert("d".into(), json!(d.to_string()));
            params.insert("row".into(), json!(row.to_string()));
            params.insert("col".into(), json!(col.to_string()));
            params.insert(
                "mode".into(),
                json!(match mode {
                    ModeArg::Bounded => "bounded",
                    ModeArg::Congruent => "congruent",
                }),
            );
            ("count", params, json!(count), true)
        }
        Command::Petrie { d, lambda, method } => {
            let value = match method {
                MethodArg::Det => petrie_coefficient_det(d, &lambda),
                MethodArg::Rule => petrie_coefficient_rule(d, &lambda),
                MethodArg::Both => {
                    let det = petrie_coefficient_det(d, &lambda);
                    let rule = petrie_coefficient_rule(d, &lambda);
                    assert_eq!(det, rule, "Petrie determinant and rule diverged");
                    det
                }
            };
            let mut params = Map::new();
            params.insert("d".into(), json!(d));
            params.insert("lambda".into(), json!(lambda.to_string()));
            params.insert(
                "method".into(),
                json!(match method {
                    MethodArg::Det => "det",
                    MethodArg::Rule => "rule",
                    MethodArg::Both => "both",
                }),
            );
            ("petrie", params, json!(value), true)
        }
        Command::Verify {
            suite,
            max_n,
            max_d,
        } => {
            let checks = verify::run_suite(&suite, max_n, max_d)
                .ok_or_else(|| Error::Parse(format!("unknown suite: {suite:?}")))?;
            let all_pass = checks.iter().all(|c| c.pass);
            let list: Vec<Value> = checks
                .iter()
                .map(|c| {
                    let mut entry = Map::new();
                    entry.insert("name".into(), json!(c.name));
                    entry.insert("pass".into(), json!(c.pass));
                    entry.insert("elapsed_ms".into(), json!(c.elapsed_ms));
                    Value::Object(entry)
                })
                .collect();
            let mut params = Map::new();
            params.insert("suite".into(), json!(suite));
            params.insert("max_n".into(), json!(max_n));
            params.insert("max_d".into(), json!(max_d));
            let mut result = Map::new();
            result.insert("checks".into(), Value::Array(list));
            result.insert("pass".into(), json!(all_pass));
            ("verify", params, Value::Object(result), all_pass)
        }
    };
    let envelope = Envelope {
        command: name,
        parameters,
        result,
        elapsed_ms: start.elapsed().as_millis(),
    };
    println!(
        "{}",
        serde_json::to_string(&envelope).expect("envelope serializes")
    );
    Ok(all_pass)
}

fn classical_basis(tag: BasisTag) -> Result<BasisTag, Error> {
    if matches!(tag, BasisTag::Hd(_)) {
        return Err(Error::Parse("basis must be one of m, e, h, p, s".into()));
    }
    Ok(tag)
}

/// Nonzero coefficients as a JSON object in canonical partition order.
fn coeff_table(f: &SymFunc) -> Value {
    let mut table = Map::new();
    for (lambda, coeff) in f.ordered_coeffs() {
        table.insert(lambda.to_string(), Value::String(rat_to_string(&coeff)));
    }
    Value::Object(table)
}
