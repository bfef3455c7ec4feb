//! `cy-smoother`: smoothing invariants of two-component normal crossing
//! Calabi-Yau threefolds, Fano pair searches and cubic-form invariants.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input (schema
//! violation, unknown family id, unreadable file), 3 a smoothing hypothesis
//! fails.

mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use cy_smoother_core::catalog::{delta_profile, hilbert_scheme_groups, mixed_rank_pairs};
use cy_smoother_core::{
    aronhold_st, cy_invariants, forms_distinguishable, load_catalog, move_top_center, rr_dimension, search_pairs,
    smooth, Catalog, CubicTensor, CyInvariantTriple, DegenerationSpec, Error,
};

#[derive(Parser, Debug)]
#[command(name = "cy-smoother", version, about = "Invariants of smoothed normal crossing Calabi-Yau threefolds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Fano catalog (CSV or JSON); defaults to the bundled catalog.
    #[arg(long, env = "CY_SMOOTHER_CATALOG", global = true)]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the smoothing hypotheses and compute all invariants.
    Smooth { file: PathBuf },
    /// Move the last blow-up center of one component to the other.
    MoveTop {
        /// Component to take the center from (1 or 2).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        from: u8,
        file: PathBuf,
    },
    /// Fano pair searches and closed-form invariants.
    #[command(subcommand)]
    Fano(FanoCommand),
    /// Invariants of cubic forms and Riemann-Roch counts.
    #[command(subcommand)]
    Invariants(InvariantsCommand),
}

#[derive(Subcommand, Debug)]
enum FanoCommand {
    /// List pairs of families with equal -K^3/r^2.
    Search {
        /// Only pairs of Picard-rank-one families.
        #[arg(long)]
        rank_one: bool,
    },
    /// Invariants of the Calabi-Yau built from a pair of families.
    Cy {
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
    },
    /// Group the Xi examples and known Calabi-Yau threefolds by (rho^3, rho.c2).
    Groups {
        /// Also include X(8) and X(6).
        #[arg(long)]
        include_all: bool,
    },
}

#[derive(Subcommand, Debug)]
enum InvariantsCommand {
    /// Aronhold S and T of a ternary cubic form.
    Cubic(CubicArgs),
    /// chi(O(n rho)) on a Calabi-Yau threefold.
    Rr {
        #[arg(long)]
        rho3: BigInt,
        #[arg(long)]
        rhoc2: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        n: BigInt,
    },
}

#[derive(Args, Debug)]
struct CubicArgs {
    /// Tensor JSON file.
    #[arg(long)]
    file: PathBuf,
    /// Second tensor to compare against.
    #[arg(long)]
    against: Option<PathBuf>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistent(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn load_tensor(path: &Path) -> Result<CubicTensor, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure {
        code: 2,
        message: format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()),
    })
}

fn catalog(cli: &Cli) -> Result<Catalog, Failure> {
    match &cli.catalog {
        Some(p) => load_catalog(p).map_err(|e| Failure { code: 2, message: format!("{}: {e}", p.display()) }),
        None => Ok(Catalog::bundled()),
    }
}

fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) {
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Table => table(),
    };
    // A closed pipe (`| head`) is not an error.
    let _ = io::stdout().write_all(text.as_bytes());
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Smooth { file } => {
            let spec = DegenerationSpec::parse(&read(file)?)?;
            let model = spec.build(&catalog(cli)?)?;
            let report = smooth(&model)?;
            emit(cli.format, &report, || render::smoothing_report(&model, &report));
            if let Some(v) = report.hypotheses.iter().find(|v| !v.holds()) {
                return Err(Failure { code: 3, message: format!("hypothesis failed: {}: {}", v.hypothesis, v.note) });
            }
        }
        Command::MoveTop { from, file } => {
            let spec = DegenerationSpec::parse(&read(file)?)?;
            let model = spec.build(&catalog(cli)?)?;
            let moved = move_top_center(&model, usize::from(*from))?;
            let out = DegenerationSpec::from_model(&moved)?;
            emit(cli.format, &out, || render::degeneration(&out));
        }
        Command::Fano(cmd) => fano(cli, cmd)?,
        Command::Invariants(cmd) => invariants(cli.format, cmd)?,
    }
    Ok(())
}

fn fano(cli: &Cli, cmd: &FanoCommand) -> Result<(), Failure> {
    let cat = catalog(cli)?;
    match cmd {
        FanoCommand::Search { rank_one } => {
            let pairs = search_pairs(&cat, *rank_one);
            let profile = delta_profile(&pairs);
            let mixed = if *rank_one { None } else { Some(mixed_rank_pairs(&cat)?.len()) };
            let value = json!({
                "rank_one_only": rank_one,
                "count": pairs.len(),
                "delta_profile": profile,
                "mixed_rank_count": mixed,
                "pairs": pairs,
            });
            emit(cli.format, &value, || render::pairs(&pairs, mixed));
        }
        FanoCommand::Cy { v1, v2 } => {
            let p = cy_invariants(cat.get(v1)?, cat.get(v2)?)?;
            emit(cli.format, &p, || render::prediction(&p));
        }
        FanoCommand::Groups { include_all } => {
            let groups = hilbert_scheme_groups(&cat, *include_all)?;
            emit(cli.format, &groups, || render::groups(&groups));
        }
    }
    Ok(())
}

fn invariants(format: Format, cmd: &InvariantsCommand) -> Result<(), Failure> {
    match cmd {
        InvariantsCommand::Cubic(args) => {
            let t = load_tensor(&args.file)?;
            let st = if t.rank() == 3 || args.against.is_none() { Some(aronhold_st(&t)?) } else { None };
            let comparison = match &args.against {
                Some(p) => Some(forms_distinguishable(&t, &load_tensor(p)?)?),
                None => None,
            };
            let value = json!({
                "rank": t.rank(),
                "aronhold": st,
                "s_is_zero": st.as_ref().map(|x| x.s == BigInt::from(0)),
                "normalization": render::ARONHOLD_NOTE,
                "comparison": comparison,
            });
            emit(format, &value, || render::cubic(&t, st.as_ref(), comparison.as_ref()));
        }
        InvariantsCommand::Rr { rho3, rhoc2, n } => {
            let inv = CyInvariantTriple { rho_cubed: rho3.clone(), rho_c2: rhoc2.clone(), h12: None };
            let chi = rr_dimension(&inv, n)?;
            let value = json!({
                "rho_cubed": render::num(rho3),
                "rho_c2": render::num(rhoc2),
                "n": render::num(n),
                "chi": render::num(&chi),
                "projective_dimension": render::num(&(&chi - 1)),
            });
            emit(format, &value, || render::rr(&inv, n, &chi));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
