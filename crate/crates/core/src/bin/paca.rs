use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use paca::pipeline::{cmd_eval, cmd_hough, cmd_match, MatchInputs, Mode, RunConfig};
use paca::Result;

#[derive(Parser)]
#[command(name = "paca", version, about = "Attention-map object matching for tabletop rearrangement")]
struct Cli {
    /// JSON run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured mode.
    #[arg(long, global = true, value_parser = ["3dof", "6dof"])]
    mode: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect dominant lines and write the control raster (`<out>.png`) and line list (`<out>.json`).
    Hough {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Match goal and real attention dumps and write the plan JSON.
    Match {
        #[arg(long)]
        goal: PathBuf,
        #[arg(long)]
        real: PathBuf,
        /// Estimated goal depth, 16-bit millimeter PNG (6dof).
        #[arg(long)]
        goal_depth: Option<PathBuf>,
        /// Measured real depth, 16-bit millimeter PNG (6dof).
        #[arg(long)]
        real_depth: Option<PathBuf>,
        /// Real color frame for the overlay.
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long)]
        overlay: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score matching accuracy over a labeled dataset directory.
    Eval {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_config(path: Option<&Path>, mode: Option<&str>) -> Result<RunConfig> {
    let mut config = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(m) = mode {
        config.mode = m.parse::<Mode>()?;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<()> {
    let config = load_config(cli.config.as_deref(), cli.mode.as_deref())?;
    match cli.command {
        Command::Hough { image, out } => {
            cmd_hough(&image, &config.hough, &out)?;
        }
        Command::Match {
            goal,
            real,
            goal_depth,
            real_depth,
            frame,
            overlay,
            out,
        } => {
            let inputs = MatchInputs {
                goal_dump: goal,
                real_dump: real,
                goal_depth,
                real_depth,
                frame,
            };
            cmd_match(&inputs, &config, &out, overlay.as_deref())?;
        }
        Command::Eval { dataset, out } => {
            let report = cmd_eval(&dataset, &config, &out)?;
            println!("overall matching accuracy {:.4}", report.overall);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("paca: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
