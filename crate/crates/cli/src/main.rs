use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphknot::generate::GenConfig;
use graphknot_cli::{parse_bounds, run, Command, Input, Output, RunConfig, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "graphknot", version, about = "Jones slopes and boundary slopes of graph knots")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Largest color sampled by oracle-check
    #[arg(long, global = true, default_value_t = 8)]
    max_color: u32,

    /// Add the meridian slope to boundary slopes of connected sums
    #[arg(long, global = true)]
    include_meridian: bool,

    /// Seed for batch generation
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Maximum expression depth for batch
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,

    /// Number of batch expressions
    #[arg(long, global = true, default_value_t = 200)]
    count: usize,

    /// Parameter bounds for batch, as PMAX,QMAX
    #[arg(long, global = true, default_value = "50,7")]
    bounds: String,
}

#[derive(Args)]
struct Source {
    /// Expression, e.g. "C(13,2; T(2,3)) # mirror(T(2,5))"
    expr: Option<String>,

    /// Read expressions from a file, one per line
    #[arg(long, short, conflicts_with = "expr")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Slope profile of an expression
    Analyze(Source),
    /// Slope-conjecture verdict with membership table
    Verify(Source),
    /// Compare oracle degrees with the degree quasi-polynomials
    OracleCheck(Source),
    /// Verify a batch of seeded random expressions
    Batch,
    /// Derivation trace with homology arithmetic per node
    Explain(Source),
}

fn input_of(src: Source) -> Input {
    match (src.expr, src.file) {
        (Some(e), _) => Input::Text(e),
        (None, Some(f)) => Input::File(f),
        (None, None) => Input::None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, input) = match cli.command {
        Cmd::Analyze(s) => (Command::Analyze, input_of(s)),
        Cmd::Verify(s) => (Command::Verify, input_of(s)),
        Cmd::OracleCheck(s) => (Command::OracleCheck, input_of(s)),
        Cmd::Batch => (Command::Batch, Input::None),
        Cmd::Explain(s) => (Command::Explain, input_of(s)),
    };
    let (max_abs_p, max_q) = match parse_bounds(&cli.flags.bounds) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: --bounds: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let cfg = RunConfig {
        command,
        input,
        max_color: cli.flags.max_color,
        include_meridian: cli.flags.include_meridian,
        output: if cli.flags.json { Output::Json } else { Output::Text },
        seed: cli.flags.seed,
        count: cli.flags.count,
        gen: GenConfig {
            max_depth: cli.flags.depth,
            max_abs_p,
            max_q,
        },
    };
    let stdout = std::io::stdout();
    match run(&cfg, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
