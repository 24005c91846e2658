use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod evolve;
mod report;
mod verify;

/// Exact calculus of pedal and wave-front unfoldings.
#[derive(Parser)]
#[command(name = "pedalfront", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the germ in a germ file.
    Classify(ClassifyArgs),
    /// Print the integration of a pedal-type germ as a germ file.
    Integrate { path: PathBuf },
    /// Print the x-derivative of a germ as a germ file.
    Differentiate { path: PathBuf },
    /// Run a verification suite.
    Verify(verify::VerifyArgs),
    /// Sample pedal curves and wave fronts of a plane curve.
    Evolve(evolve::EvolveArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    path: PathBuf,
    #[command(flatten)]
    mode: ModeFlags,
}

#[derive(Args)]
#[group(multiple = false)]
struct ModeFlags {
    /// Treat the germ as pedal type `(n p, p, y)`.
    #[arg(long)]
    as_pedal: bool,
    /// Treat the germ as a normalized Legendrian germ.
    #[arg(long)]
    as_legendrian: bool,
    /// Try pedal type first, then Legendrian (default).
    #[arg(long)]
    auto: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Pedal,
    Legendrian,
    Auto,
}

impl ModeFlags {
    fn mode(&self) -> Mode {
        if self.as_pedal {
            Mode::Pedal
        } else if self.as_legendrian {
            Mode::Legendrian
        } else {
            Mode::Auto
        }
    }
}

/// Outcome classes of the exit-code contract.
pub enum Failure {
    Check(String),
    Usage(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        match self {
            Failure::Check(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

fn load(path: &Path) -> Result<pedalfront::germfile::GermFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    pedalfront::germfile::parse_germ_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify(args) => {
            let file = load(&args.path)?;
            let out = report::classify(&file.germ, args.mode.mode())?;
            print!("{out}");
            Ok(())
        }
        Command::Integrate { path } => {
            let file = load(&path)?;
            let g = pedalfront::germ::integrate(&file.germ).map_err(|e| Failure::Check(e.to_string()))?;
            print!("{}", pedalfront::germfile::emit_germ_file(&g));
            Ok(())
        }
        Command::Differentiate { path } => {
            let file = load(&path)?;
            let g = pedalfront::germ::differentiate(&file.germ, false).map_err(|e| Failure::Check(e.to_string()))?;
            print!("{}", pedalfront::germfile::emit_germ_file(&g));
            Ok(())
        }
        Command::Verify(args) => verify::run(&args),
        Command::Evolve(args) => evolve::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
