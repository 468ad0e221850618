mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use output::{emit, CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "homstab", version, about = "Exact computations for homological stability")]
struct Cli {
    /// Print tables as CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology and connectivity of W^RW for a range of degrees.
    WrwHomology(WrwArgs),
    /// Degree of a preset coefficient system on a window.
    CoeffDegree(DegreeArgs),
    /// Multiplicity of V_{λ[n]} in H_i of the ordered configuration space of the disc.
    Multiplicity(MultiplicityArgs),
    /// Stability ranges, single queries or sweeps.
    Ranges(RangesArgs),
    /// Twisted homology H_i of a presented group via Fox calculus.
    FoxH(FoxArgs),
    /// Genus and stable genus of every object of a module.
    Genus(GenusArgs),
    /// Injectivity and local cancellation checks for a module.
    CheckModule(CheckArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct WrwArgs {
    /// Module preset name or path to a descriptor file.
    #[arg(long, default_value = "sym")]
    pub module: String,
    /// Degrees, e.g. `2..6`, `4` or `2,4,6`.
    #[arg(long)]
    pub n: String,
    /// Slope of the connectivity bound ⌊(n−a)/k⌋ − 1.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Offset of the connectivity bound.
    #[arg(long, default_value_t = 1)]
    pub a: i64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct DegreeArgs {
    /// `constant[:dim]`, `burau`, `sign-zero` or `specht:<partition>`.
    pub system: String,
    #[arg(long, default_value_t = 8)]
    pub window: usize,
    #[arg(long, default_value_t = 3)]
    pub r_max: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct MultiplicityArgs {
    /// Partition such as `2,1`; empty for the trivial one.
    #[arg(long, default_value = "")]
    pub lambda: String,
    #[arg(long, default_value_t = 0)]
    pub i: usize,
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct RangesArgs {
    /// One of A-constant, A-abelian, B-twisted, B-split, C-config, D-oriented, F-manifold.
    pub selector: String,
    /// Each numeric parameter takes a value or a list/range, which makes a sweep.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: Option<String>,
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub coefficients: Option<String>,
    #[arg(long)]
    pub improved: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct FoxArgs {
    /// `braid`, `sym` or `pure-braid`.
    #[arg(long, default_value = "braid")]
    pub presentation: String,
    #[arg(long)]
    pub n: usize,
    /// `trivial`, `sign`, `burau:<t>` or `specht:<partition>`.
    #[arg(long, default_value = "trivial")]
    pub coefficients: String,
    #[arg(long, default_value_t = 1)]
    pub i: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct GenusArgs {
    #[arg(long, default_value = "sym")]
    pub module: String,
    #[arg(long, default_value_t = 6)]
    pub window: usize,
    #[arg(long, default_value_t = 8)]
    pub bound: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckArgs {
    #[arg(long, default_value = "sym")]
    pub module: String,
    /// Largest degree checked.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Random elements per degree for infinite groups.
    #[arg(long, default_value_t = 200)]
    pub budget: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

fn run(command: &Command) -> (&'static str, serde_json::Value, Result<Outcome, CliError>) {
    let params = |a: &dyn erased::ToJson| a.to_json();
    match command {
        Command::WrwHomology(a) => ("wrw-homology", params(a), commands::wrw_homology(a)),
        Command::CoeffDegree(a) => ("coeff-degree", params(a), commands::coeff_degree(a)),
        Command::Multiplicity(a) => ("multiplicity", params(a), commands::multiplicity(a)),
        Command::Ranges(a) => ("ranges", params(a), commands::ranges(a)),
        Command::FoxH(a) => ("fox-h", params(a), commands::fox_h(a)),
        Command::Genus(a) => ("genus", params(a), commands::genus(a)),
        Command::CheckModule(a) => ("check-module", params(a), commands::check_module(a)),
    }
}

mod erased {
    pub trait ToJson {
        fn to_json(&self) -> serde_json::Value;
    }

    impl<T: serde::Serialize> ToJson for T {
        fn to_json(&self) -> serde_json::Value {
            serde_json::to_value(self).unwrap_or(serde_json::Value::Null)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprint!("{}", e);
            let code = emit(None, serde_json::Value::Null, Err(CliError::Usage(e.kind().to_string())), false);
            return ExitCode::from(code);
        }
    };
    let csv = cli.csv;
    let result = std::panic::catch_unwind(|| run(&cli.command));
    let code = match result {
        Ok((name, params, outcome)) => emit(Some(name), params, outcome, csv),
        Err(_) => emit(None, serde_json::Value::Null, Err(CliError::Internal("unexpected panic".into())), false),
    };
    ExitCode::from(code)
}
