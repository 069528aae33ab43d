use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "valuadef", version, about = "Exact Hahn-series valued fields and checks of definable valuations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe an ordered abelian group and its distinguished convex subgroups.
    Group {
        #[arg(long)]
        group: String,
        /// Positive element for `Delta_gamma` (needs --p).
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Evaluate a series expression (with --field) or a rational function (with --weights).
    Eval {
        #[arg(long, conflicts_with = "weights", required_unless_present = "weights")]
        field: Option<String>,
        #[arg(long)]
        weights: Option<String>,
        /// Relative precision of quotients, in unit steps of the value group.
        #[arg(long)]
        precision: Option<i64>,
        expr: String,
    },
    /// Run a checker and emit its report.
    #[command(subcommand)]
    Check(Check),
    /// Re-render a saved JSON report; the exit code follows its verdict.
    Report {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// The discrete-case formula `|x^2/b| < 1`.
    ThmI {
        #[command(flatten)]
        spec: SpecArgs,
        /// Parameter of least positive value (default `t^(eps)`).
        #[arg(long)]
        b: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The set `S_b` defining the ring in the dense, not-closed-in-hull case.
    ThmIi {
        #[command(flatten)]
        spec: SpecArgs,
        /// Parameter with value outside `nG` (default chosen from the group).
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The residue-field sign construction for a monic integer quadratic.
    ThmIii {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "X^2-2")]
        f: String,
        #[arg(long, default_value = "1")]
        a: String,
        /// Right end of the interval.
        #[arg(long, default_value = "2")]
        b0: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Structural `Delta_gamma` against its defining interval formula.
    DeltaGamma {
        #[arg(long)]
        group: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The coarsening by the maximal p-divisible convex subgroup.
    Vp {
        #[arg(long)]
        field: String,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Convexity of the valuation ring on sampled triples.
    Convexity {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The 4th-power formula over `Rmodel((lex[Q]))`, or its collapse over `Q((lex[Q]))`.
    Density {
        #[arg(long, default_value = "Rmodel((lex[Q]))")]
        field: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Which sufficient condition for definability applies.
    Cor32 {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The automorphism moving a weighted valuation ring.
    Undefinable {
        #[arg(long, default_value = "ex1")]
        weights: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
pub struct SpecArgs {
    #[arg(long, default_value = "Q((lex[Z]))")]
    pub field: String,
    /// Coarsen by the convex subgroup of coordinates from this index on.
    #[arg(long)]
    pub coarsen: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, env = "VALUADEF_SEED", default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}
