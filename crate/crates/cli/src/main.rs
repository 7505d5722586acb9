//! `lrc`: construct, analyze and certify punctured simplex LRCs.
//!
//! Exit codes: 0 when every claim checks out, 1 on a verification mismatch,
//! 2 on invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use lrc_core::certify::{
    certify_locality, cm_certify, BoundError, BoundReport, KOptimal, LocalityCertificate,
    LocalityError,
};
use lrc_core::code::{enumeration_budget, CodeError, LinearCode};
use lrc_core::constructions::{ConstructionSpec, Family};
use lrc_core::field::{Elem, Field};
use lrc_core::krawtchouk::{char_sum_oracle, kraw_eval};
use lrc_core::matrix_file::{parse_matrix, write_matrix};
use lrc_core::report::{run, VerifiedParams};
use lrc_core::sweep::{example_specs, run_row, subspace_union_grid, weight2_grid};

#[derive(Parser)]
#[command(name = "lrc", version, about = "Punctured simplex codes with (2, delta) locality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member, verify its claims and print a JSON run report.
    Construct(ConstructArgs),
    /// Exact [n, k, d] and weight distribution of a generator matrix file.
    Analyze {
        matrix: PathBuf,
    },
    /// Locality certificate and optimality bounds for a generator matrix file.
    Certify(CertifyArgs),
    /// Evaluate a Krawtchouk polynomial, optionally against the character-sum oracle.
    Kraw(KrawArgs),
    /// Rerun both worked examples and the parameter sweeps.
    Repro(ReproArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long)]
    m: usize,
    /// Coordinate sets, 1-indexed: groups split by ';', elements by ','.
    #[arg(long, default_value = "", value_parser = parse_sets)]
    sets: Sets,
    /// Write the generator matrix here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    matrix: PathBuf,
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, conflicts_with = "best", required_unless_present = "best")]
    delta: Option<u32>,
    /// Certify the largest delta every coordinate supports.
    #[arg(long)]
    best: bool,
    /// Fail unless the C-M bound certifies k-optimality.
    #[arg(long)]
    expect_optimal: bool,
}

#[derive(Args)]
struct KrawArgs {
    #[arg(long)]
    k: u64,
    /// Evaluation point, i.e. the weight of x.
    #[arg(long, alias = "a")]
    x: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    q: u64,
    /// Also evaluate the character sum over the weight-k shell.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct ReproArgs {
    /// Largest q^m included in the sweeps.
    #[arg(long, default_value_t = 1 << 20)]
    grid_max_qm: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone)]
struct Sets(Vec<Vec<usize>>);

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| {
        "expected one of simplex, subspace-union, weight2-single, weight2-multi".to_string()
    })
}

fn parse_sets(s: &str) -> Result<Sets, String> {
    if s.trim().is_empty() {
        return Ok(Sets(Vec::new()));
    }
    s.split(';')
        .map(|group| {
            group
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| format!("bad coordinate {:?} in {group:?}", t.trim()))
                })
                .collect()
        })
        .collect::<Result<_, _>>()
        .map(Sets)
}

enum Failure {
    Mismatch(String),
    Invalid(String),
}

impl Failure {
    fn invalid(e: impl std::fmt::Display) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::BudgetExceeded { .. } => Failure::invalid(format!("{e} (raise LRC_MAX_ENUM)")),
            e => Failure::invalid(e),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &PathBuf) -> Result<LinearCode, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn cmd_construct(args: ConstructArgs) -> Outcome {
    let spec = ConstructionSpec {
        family: args.family,
        p: args.p,
        e: args.e,
        m: args.m,
        sets: args.sets.0,
    };
    let (construction, report) = run(&spec, enumeration_budget()).map_err(|e| {
        if e.is_invalid_input() {
            Failure::invalid(e)
        } else {
            Failure::Mismatch(e.to_string())
        }
    })?;
    if let Some(out) = &args.out {
        write_file(out, &write_matrix(&construction.code))?;
    }
    let json = to_json(&report);
    match &args.report {
        Some(path) => write_file(path, &json)?,
        None => print!("{json}"),
    }
    Ok(report.agreement.all())
}

fn cmd_analyze(matrix: PathBuf) -> Outcome {
    let code = read_matrix(&matrix)?;
    let params = code.analyze(enumeration_budget())?;
    print!("{}", to_json(&VerifiedParams::from(&params)));
    Ok(true)
}

#[derive(Serialize)]
struct CertifyReport {
    certificate: Option<LocalityCertificate>,
    bounds: Option<BoundReport>,
    /// Set when the requested delta is out of reach.
    unachievable: Option<Vec<(usize, u32)>>,
}

fn cmd_certify(args: CertifyArgs) -> Outcome {
    if args.r != 2 {
        return Err(Failure::invalid(format!("only r = 2 is supported, got {}", args.r)));
    }
    let code = read_matrix(&args.matrix)?;
    let budget = enumeration_budget();
    let params = code.analyze(budget)?;
    let target = if args.best { None } else { args.delta };
    let certificate = match certify_locality(&code, target, budget) {
        Ok(c) => c,
        Err(LocalityError::Unachievable { delta, offending }) => {
            eprintln!("delta = {delta} is not achievable at {} coordinate(s)", offending.len());
            print!(
                "{}",
                to_json(&CertifyReport {
                    certificate: None,
                    bounds: None,
                    unachievable: Some(offending),
                })
            );
            return Ok(false);
        }
        Err(LocalityError::Code(e)) => return Err(e.into()),
        Err(e @ LocalityError::RepairSetMismatch { .. }) => return Err(Failure::Mismatch(e.to_string())),
        Err(e) => return Err(Failure::invalid(e)),
    };
    let q = code.field().q() as u64;
    let bounds = if certificate.delta >= 2 && params.k > 0 {
        match cm_certify(&params, args.r, certificate.delta, q, Some(&certificate)) {
            Ok(b) => Some(b),
            Err(e @ BoundError::Inconsistent { .. }) => return Err(Failure::Mismatch(e.to_string())),
            Err(e) => return Err(Failure::invalid(e)),
        }
    } else {
        None
    };
    let optimal = bounds
        .as_ref()
        .is_some_and(|b| b.verdicts.k_optimal == KOptimal::Certified);
    print!(
        "{}",
        to_json(&CertifyReport {
            certificate: Some(certificate),
            bounds,
            unachievable: None,
        })
    );
    Ok(!args.expect_optimal || optimal)
}

#[derive(Serialize)]
struct KrawReport {
    k: u64,
    x: u64,
    n: u64,
    q: u64,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleReport>,
}

#[derive(Serialize)]
struct OracleReport {
    counts: Vec<u64>,
    value: String,
    agree: bool,
}

fn cmd_kraw(args: KrawArgs) -> Outcome {
    let value = kraw_eval(args.k, args.x, args.n, args.q).map_err(Failure::invalid)?;
    let oracle = if args.oracle {
        let field = Field::with_order(args.q).map_err(Failure::invalid)?;
        let x: Vec<Elem> = (0..args.n)
            .map(|i| if i < args.x { Elem::ONE } else { Elem::ZERO })
            .collect();
        let cs = char_sum_oracle(&field, &x, args.k as usize, enumeration_budget()).map_err(Failure::invalid)?;
        Some(OracleReport {
            agree: cs.value == value,
            counts: cs.counts,
            value: cs.value.to_string(),
        })
    } else {
        None
    };
    let agree = oracle.as_ref().is_none_or(|o| o.agree);
    // i128 values go out as decimal strings; JSON numbers would lose precision.
    print!(
        "{}",
        to_json(&KrawReport {
            k: args.k,
            x: args.x,
            n: args.n,
            q: args.q,
            value: value.to_string(),
            oracle,
        })
    );
    Ok(agree)
}

fn cmd_repro(args: ReproArgs) -> Outcome {
    let budget = enumeration_budget();
    let mut specs = example_specs();
    specs.extend(subspace_union_grid(args.grid_max_qm));
    specs.extend(weight2_grid(args.grid_max_qm));
    let rows: Vec<_> = specs.iter().map(|s| run_row(s, budget)).collect();
    let passed = rows.iter().filter(|r| r.pass).count();
    if args.json {
        print!("{}", to_json(&rows));
    } else {
        for row in &rows {
            println!("{}", row.to_line());
        }
        println!("{passed}/{} rows pass", rows.len());
    }
    Ok(passed == rows.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Analyze { matrix } => cmd_analyze(matrix),
        Command::Certify(a) => cmd_certify(a),
        Command::Kraw(a) => cmd_kraw(a),
        Command::Repro(a) => cmd_repro(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: verification mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
