use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motrop_cli::{run, CliError, Format, Invocation};

/// Exact motivic invariants of non-archimedean semialgebraic data.
#[derive(Parser)]
#[command(name = "motrop", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tropicalize a plane curve and report the dual subdivision.
    Trop(CommonArgs),
    /// Motivic volume of a tropicalized plane curve.
    Volume(CommonArgs),
    /// Volume of a strictly semistable model from its strata file.
    Semistable(CommonArgs),
    /// Volume of an explicit Theta-class combination.
    Vfvol(CommonArgs),
    /// Extract refined invariants from a Hilbert-type series file.
    ZetaExtract(CommonArgs),
    /// Extract and reconstruct a series, verifying exactness.
    ZetaRoundtrip(CommonArgs),
    /// Mikhalkin and refined multiplicities of a simple tropical curve.
    Bg(CommonArgs),
    /// Realizations of a motivic class file.
    Chi(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input file (JSON, schema depends on the subcommand).
    #[arg(long)]
    input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Arithmetic genus override for the zeta commands.
    #[arg(long)]
    genus: Option<usize>,
    /// Truncation override for the zeta commands.
    #[arg(long)]
    truncation: Option<usize>,
    /// Proceed even when the non-degeneracy report is FAIL or UNKNOWN.
    #[arg(long)]
    assume_schoen: bool,
    /// Worker threads (results are independent of this knob).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Document)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Document,
    Human,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Trop(a) => ("trop", a),
        Command::Volume(a) => ("volume", a),
        Command::Semistable(a) => ("semistable", a),
        Command::Vfvol(a) => ("vfvol", a),
        Command::ZetaExtract(a) => ("zeta-extract", a),
        Command::ZetaRoundtrip(a) => ("zeta-roundtrip", a),
        Command::Bg(a) => ("bg", a),
        Command::Chi(a) => ("chi", a),
    };
    if args.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(1);
    }
    let invocation = Invocation {
        command: name.to_string(),
        input: args.input.clone(),
        genus: args.genus,
        truncation: args.truncation,
        assume_schoen: args.assume_schoen,
        threads: args.threads,
        format: match args.format {
            FormatArg::Document => Format::Document,
            FormatArg::Human => Format::Human,
        },
    };
    match run(&invocation) {
        Ok(outcome) => {
            let text = outcome.rendered(invocation.format);
            match &args.output {
                Some(path) => {
                    if let Err(source) = std::fs::write(path, text) {
                        let err = CliError::Write { path: path.clone(), source };
                        eprintln!("error: {err}");
                        return ExitCode::from(err.exit_status() as u8);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_status() as u8)
        }
    }
}
