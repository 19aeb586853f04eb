//! Thin command-line front end; all behavior lives in the library's [`liebau::cli`] module.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use liebau::cli::{
    cmd_certify, cmd_green, cmd_reproduce_example, cmd_solve, CliError, CmdOutcome, RunConfig,
};
use liebau::config::ConfigFile;

#[derive(Parser)]
#[command(
    name = "liebau",
    version,
    about = "Periodic kernels, existence certificates, and guaranteed solvers for valveless pumping models"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify existence or non-existence of a positive periodic solution
    Certify(CommonArgs),
    /// Compute a periodic solution and verify its localization
    Solve(CommonArgs),
    /// Report periodic kernel constants and sample the kernel on a grid
    Green(CommonArgs),
    /// Re-run the built-in pipe-tank example against its published values
    ReproduceExample(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Problem config file with [problem]/[model]/[certify]/[solve] sections
    #[arg(long)]
    config: Option<PathBuf>,
    /// Shift parameter m (overrides [certify] m)
    #[arg(long)]
    m: Option<f64>,
    /// Localization slab lower radius (overrides [certify] r1)
    #[arg(long)]
    r1: Option<f64>,
    /// Localization slab upper radius (overrides [certify] r2)
    #[arg(long)]
    r2: Option<f64>,
    /// Grid size override (certification scan, solver grid, kernel samples)
    #[arg(long)]
    grid: Option<usize>,
    /// Solver tolerance override
    #[arg(long)]
    tol: Option<f64>,
    /// Directory to write report and CSV files into
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the effective config in canonical form and exit
    #[arg(long)]
    dump_config: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, runner): (&CommonArgs, fn(&RunConfig) -> Result<CmdOutcome, CliError>) =
        match &cli.cmd {
            Cmd::Certify(a) => (a, cmd_certify),
            Cmd::Solve(a) => (a, cmd_solve),
            Cmd::Green(a) => (a, cmd_green),
            Cmd::ReproduceExample(a) => (a, cmd_reproduce_example),
        };
    match execute(args, runner) {
        Ok(code) => ExitCode::from(code.clamp(0, 255) as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn execute(
    args: &CommonArgs,
    runner: fn(&RunConfig) -> Result<CmdOutcome, CliError>,
) -> Result<i32, Box<dyn std::error::Error>> {
    let config = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let run = RunConfig {
        config,
        m: args.m,
        r1: args.r1,
        r2: args.r2,
        grid: args.grid,
        tol: args.tol,
    };
    if args.dump_config {
        print!("{}", run.folded_config().dump());
        return Ok(0);
    }
    let outcome = runner(&run)?;
    print!("{}", outcome.text);
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        for (name, contents) in &outcome.files {
            std::fs::write(dir.join(name), contents)?;
        }
    }
    Ok(outcome.exit_code)
}
