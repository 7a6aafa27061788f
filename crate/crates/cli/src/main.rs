//! `sumfree`: bounds tables, stripe sweeps and exact searches for sumfree
//! subsets of hypercubes.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sumfree_core::bounds::{EquationVariant, Setting};

use report::FormatKind;

#[derive(Debug, Parser)]
#[command(
    name = "sumfree",
    version,
    about = "Density bounds for sumfree subsets of hypercubes"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatKind::Text, global = true)]
    format: FormatKind,
    /// Decimal places for rounded values (1..=15, ties to even).
    #[arg(long, default_value_t = 6, global = true)]
    decimals: usize,
    /// Root-finding tolerance.
    #[arg(long, default_value_t = 1e-12, global = true)]
    tolerance: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SettingArg {
    Discrete,
    Continuous,
}

impl From<SettingArg> for Setting {
    fn from(s: SettingArg) -> Self {
        match s {
            SettingArg::Discrete => Setting::Discrete,
            SettingArg::Continuous => Setting::Continuous,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Statement,
    Proof,
}

impl From<VariantArg> for EquationVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Statement => EquationVariant::TheoremStatement,
            VariantArg::Proof => EquationVariant::ProofForm,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower and upper bounds for a range of dimensions.
    Bounds {
        #[arg(long, default_value_t = 2)]
        k_min: u32,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        #[arg(long, default_value_t = 2)]
        l: u32,
        #[arg(long, value_enum, default_value_t = SettingArg::Discrete)]
        setting: SettingArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Statement)]
        equation_variant: VariantArg,
    },
    /// Best stripe offset for one dimension.
    Sweep {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        l: u32,
    },
    /// The sequence a_{i+1} = 1/3 - a_i^{a_i} (1-a_i)^{1-a_i} / e.
    Sequence {
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Exact maximum l-fold-sumfree subset of {1..n}^k.
    Exact {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        l: u32,
        #[arg(long, default_value_t = sumfree_core::search::DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Lattice count of the stripe a <= sum < l*a against its volume.
    StripeCount {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        a_numer: i64,
        #[arg(long, default_value_t = 1)]
        a_denom: i64,
        #[arg(long, default_value_t = 2)]
        l: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            for line in &out.diagnostics {
                eprintln!("sumfree: {line}");
            }
            print!("{}", out.text);
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("sumfree: error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
