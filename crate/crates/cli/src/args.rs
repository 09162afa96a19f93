use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "estgame", version, about = "Stackelberg solver and simulator for remote estimation games")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance, given in walk parameters or in K constants.
    Solve(SolveArgs),
    /// Tabulate the leader's reduced objective over a p1 grid.
    Sweep(SweepArgs),
    /// Run the sampling protocol and compare against closed forms.
    Simulate(SimulateArgs),
    /// Check the analytic solver against the brute-force grid oracle.
    Verify(VerifyArgs),
    /// Regenerate the four reference objective plots.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SolveArgs {
    #[arg(long)]
    pub alpha1: Option<f64>,
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub k1: Option<f64>,
    #[arg(long)]
    pub k2: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c2: f64,
    /// Let player 2 lead and player 1 follow.
    #[arg(long)]
    pub swap_roles: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long)]
    pub k1: f64,
    #[arg(long)]
    pub k2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub p1_step: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write a line plot of the objective.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 0.25)]
    pub alpha1: f64,
    #[arg(long, default_value_t = 0.25)]
    pub alpha2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c2: f64,
    #[arg(long)]
    pub p1: f64,
    #[arg(long)]
    pub p2: f64,
    #[arg(short = 'T', long, default_value_t = 1_000_000)]
    pub horizon: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = estgame_core::simulator::DEFAULT_AGE_CAP)]
    pub age_cap: usize,
    /// Write the age histogram and conditional error table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = estgame_core::oracle::SE_GRID_STEP)]
    pub grid_step: f64,
    /// Append the reference instances to the random ones.
    #[arg(long)]
    pub include_fixed: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 1e-3)]
    pub p1_step: f64,
}
