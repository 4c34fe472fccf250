use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spinfringe_cli::commands::{run_compare, run_geometry, run_simulate, Emitted};
use spinfringe_cli::{load_config, run_verify, CliError, Overrides, VerifyOptions, OUTPUT_DIR_ENV};

/// Spin-coupling model of multi-slit interference.
#[derive(Debug, Parser)]
#[command(name = "spinfringe", version)]
struct Cli {
    /// Directory that relative output paths are written under.
    #[arg(long, global = true, env = OUTPUT_DIR_ENV)]
    output_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a fringe profile and write it as CSV or JSON.
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run the identity and oracle checks; exit status 1 if any fails.
    Verify {
        #[arg(long, default_value_t = spinfringe_cli::verify::DEFAULT_SEED)]
        seed: u64,
        /// Multiplies every tolerance (for testing the checker itself).
        #[arg(long, default_value_t = 1.0, hide = true)]
        tolerance_scale: f64,
    },
    /// Tabulate the model against the classical wave oracle.
    Compare {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Dump incidence angles and pair phases for each screen angle.
    Geometry {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
}

fn report(emitted: &Emitted, what: &str) {
    match emitted {
        Emitted::File(path) => eprintln!("wrote {what} to {}", path.display()),
        Emitted::Stdout(text) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out_dir = cli.output_dir.as_deref();
    match cli.command {
        Command::Simulate { config, overrides } => {
            let cfg = load_config(config.as_deref(), &overrides)?;
            let (profile, emitted) = run_simulate(&cfg, out_dir)?;
            report(&emitted, &format!("{} samples", profile.samples.len()));
        }
        Command::Compare { config, overrides } => {
            let cfg = load_config(config.as_deref(), &overrides)?;
            let (cmp, emitted) = run_compare(&cfg, out_dir)?;
            report(&emitted, &format!("{} comparison rows", cmp.rows.len()));
            eprintln!("max_abs_diff {:.6e}", cmp.max_abs_diff);
        }
        Command::Geometry { config, overrides } => {
            let cfg = load_config(config.as_deref(), &overrides)?;
            let (rows, emitted) = run_geometry(&cfg, out_dir)?;
            report(&emitted, &format!("{} geometry rows", rows.len()));
        }
        Command::Verify { seed, tolerance_scale } => {
            let rep = run_verify(VerifyOptions { seed, tolerance_scale });
            println!("{rep}");
            if !rep.passed() {
                return Err(CliError::Verification { failed: rep.failures(), total: rep.laws.len() });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
