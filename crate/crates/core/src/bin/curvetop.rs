use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use curvetop::cli::{run, InputSource, OutputFormat, RunConfig};
use curvetop::ShearMode;

#[derive(Parser)]
#[command(name = "curvetop", version, about = "Topology of real plane algebraic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the topology graph of the curve F(x, y) = 0.
    Analyze(AnalyzeArgs),
}

#[derive(clap::Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "expr"])))]
struct AnalyzeArgs {
    /// File containing the polynomial.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Polynomial given inline, e.g. "x^2 + y^2 - 1".
    #[arg(long, allow_hyphen_values = true)]
    expr: Option<String>,
    #[arg(long, value_enum, default_value_t = ShearArg::Deterministic)]
    shear: ShearArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Check graph invariants and fail on any violation.
    #[arg(long)]
    verify: bool,
    /// Print pipeline diagnostics to stderr.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShearArg {
    Deterministic,
    Random,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
    Svg,
}

fn main() -> ExitCode {
    let Command::Analyze(args) = Cli::parse().command;
    let cfg = RunConfig {
        input: match (args.input, args.expr) {
            (Some(p), _) => InputSource::File(p),
            (None, Some(e)) => InputSource::Expr(e),
            (None, None) => unreachable!("clap enforces one source"),
        },
        shear: match args.shear {
            ShearArg::Deterministic => ShearMode::Deterministic,
            ShearArg::Random => ShearMode::Random,
            ShearArg::None => ShearMode::None,
        },
        seed: args.seed,
        format: match args.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Dot => OutputFormat::Dot,
            FormatArg::Svg => OutputFormat::Svg,
        },
        verify: args.verify,
        trace: args.trace,
    };
    match run(&cfg) {
        Ok(out) => {
            if let Some(t) = out.trace {
                eprint!("{}", t);
            }
            print!("{}", out.stdout);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
