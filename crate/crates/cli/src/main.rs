//! `coulomb`: batch front end for the coulomb-core library.
//!
//! Exit codes: 0 success, 1 malformed input, 2 a verification found a
//! mismatch, 3 cancelled or a resource bound was exceeded.

mod commands;
mod input;
mod output;

use std::io::Read;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coulomb_core::{CancelToken, Error, HalfInt};

use commands::{Bounds, Failure, Kind};

#[derive(Parser, Debug)]
#[command(name = "coulomb", version, about = "Exact Coulomb-branch and Kac-Moody computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Input document path, or `-` for standard input.
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "json")]
    input: Option<String>,
    /// Inline input document.
    #[arg(long, global = true, value_name = "TEXT")]
    json: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Degree bound for Hilbert series, e.g. `4` or `7/2`.
    #[arg(long, global = true, value_name = "Q", value_parser = parse_max_deg)]
    max_deg: Option<HalfInt>,
    /// Depth bound for weight supports and affine strata.
    #[arg(long, global = true, value_name = "N")]
    depth: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long, global = true, value_name = "SECONDS", value_parser = parse_timeout)]
    timeout: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kac-Moody weight combinatorics.
    Km {
        #[command(subcommand)]
        op: KmOp,
    },
    /// Quiver gauge theories.
    Quiver {
        #[command(subcommand)]
        op: QuiverOp,
    },
    /// Abelian Coulomb branches.
    Abelian {
        #[command(subcommand)]
        op: AbelianOp,
    },
    /// Coulomb/Higgs comparison for torus gauge theories.
    Hypertoric {
        #[command(subcommand)]
        op: HypertoricOp,
    },
    /// Symmetric products of type-A surfaces.
    Jordan {
        #[command(subcommand)]
        op: JordanOp,
    },
    /// Check a document against an input schema.
    Validate {
        /// Schema name, e.g. `quiver-slice` or `km-mult`.
        schema: String,
    },
}

#[derive(Subcommand, Debug)]
enum KmOp {
    /// Weight multiplicity, or the whole weight system when `mu` is absent.
    Mult,
    /// Tensor-product weight multiplicity or decomposition.
    Tensor,
    /// Langlands dual Cartan matrix.
    Dual,
}

#[derive(Subcommand, Debug)]
enum QuiverOp {
    /// Gauge data and slice parameters.
    Slice,
    /// Strata of a slice.
    Strata,
    /// Fixed-point and tensor-component checks on the dual side.
    Satake,
}

#[derive(Subcommand, Debug)]
enum AbelianOp {
    Ring,
    Quantize,
    Poisson,
    Hilbert,
}

#[derive(Subcommand, Debug)]
enum HypertoricOp {
    Compare,
}

#[derive(Subcommand, Debug)]
enum JordanOp {
    Hilbert,
}

fn parse_max_deg(s: &str) -> Result<HalfInt, String> {
    let d: HalfInt = s.parse().map_err(|_| format!("{s:?} is not an integer or half-integer"))?;
    if d.twice() < 0 {
        return Err("must be ≥ 0".into());
    }
    Ok(d)
}

fn parse_timeout(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("{s:?} is not a positive number of seconds")),
    }
}

fn kind_of(cmd: &Command) -> Option<Kind> {
    Some(match cmd {
        Command::Km { op: KmOp::Mult } => Kind::KmMult,
        Command::Km { op: KmOp::Tensor } => Kind::KmTensor,
        Command::Km { op: KmOp::Dual } => Kind::KmDual,
        Command::Quiver { op: QuiverOp::Slice } => Kind::QuiverSlice,
        Command::Quiver { op: QuiverOp::Strata } => Kind::QuiverStrata,
        Command::Quiver { op: QuiverOp::Satake } => Kind::QuiverSatake,
        Command::Abelian { op: AbelianOp::Ring } => Kind::AbelianRing,
        Command::Abelian { op: AbelianOp::Quantize } => Kind::AbelianQuantize,
        Command::Abelian { op: AbelianOp::Poisson } => Kind::AbelianPoisson,
        Command::Abelian { op: AbelianOp::Hilbert } => Kind::AbelianHilbert,
        Command::Hypertoric { op: HypertoricOp::Compare } => Kind::HypertoricCompare,
        Command::Jordan { op: JordanOp::Hilbert } => Kind::JordanHilbert,
        Command::Validate { .. } => return None,
    })
}

fn read_document(common: &Common) -> Result<Value, String> {
    let text = match (&common.json, common.input.as_deref()) {
        (Some(t), _) => t.clone(),
        (None, None | Some("-")) => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            s
        }
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?,
    };
    serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}"))
}

fn emit(common: &Common, v: &Value) {
    let s = match common.format {
        Format::Json => output::json(v),
        Format::Table => output::table(v),
    };
    print!("{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let doc = match read_document(&cli.common) {
        Ok(doc) => doc,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };

    if let Command::Validate { schema } = &cli.command {
        let Some(kind) = Kind::from_name(schema) else {
            let names: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
            eprintln!("error: unknown schema {schema:?}; expected one of {}", names.join(", "));
            return ExitCode::from(1);
        };
        let diags = commands::validate(kind, &doc);
        let list: Vec<Value> = diags
            .iter()
            .map(|d| json!({"pointer": d.pointer, "message": d.message}))
            .collect();
        emit(&cli.common, &json!({"valid": diags.is_empty(), "diagnostics": list}));
        return ExitCode::from(if diags.is_empty() { 0 } else { 1 });
    }

    let kind = kind_of(&cli.command).expect("non-validate command");
    let cancel = match cli.common.timeout {
        Some(t) => CancelToken::with_timeout(Duration::from_secs_f64(t)),
        None => CancelToken::new(),
    };
    let bounds = Bounds {
        max_deg: cli.common.max_deg,
        depth: cli.common.depth,
    };
    match commands::run(kind, &doc, bounds, &cancel) {
        Ok(outcome) => {
            emit(&cli.common, &outcome.value);
            ExitCode::from(if outcome.mismatch { 2 } else { 0 })
        }
        Err(Failure::Input(diags)) => {
            for d in diags {
                eprintln!("error: {d}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Compute(Error::Cancelled)) => {
            eprintln!("error: computation cancelled (time limit reached)");
            ExitCode::from(3)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
