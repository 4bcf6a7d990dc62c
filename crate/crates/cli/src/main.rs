// SPDX-License-Identifier: Apache-2.0

//! `scalemetric` command-line front end.

mod commands;
mod instance;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{AxiomsArgs, MetrizeArgs, PlotArgs, WitnessArgs};

#[derive(Parser)]
#[command(name = "scalemetric", version, about = "Audit scale-indexed distance families")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every sampled point, pair and triple.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the family axiom audits on sampled points of an instance.
    Axioms {
        instance: PathBuf,
        /// Comma-separated scale grid.
        #[arg(long)]
        r: Option<String>,
        /// Translation search bound for tilings.
        #[arg(long)]
        rho: Option<String>,
        /// Margin added to d_r when searching for the upper-semicontinuity δ.
        #[arg(long)]
        eps: Option<String>,
        /// δ grid depth: δ ∈ {1, 1/2, …, 2^-grid}.
        #[arg(long, default_value_t = 20)]
        grid: u32,
        #[arg(long, default_value_t = 40)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        triples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build the chain metric on a sample and verify its bounds.
    Metrize {
        instance: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long)]
        rho: Option<String>,
        #[arg(long, default_value_t = 30)]
        samples: usize,
        /// Write one level relation in `i j` dump format.
        #[arg(long)]
        dump_relation: Option<PathBuf>,
        /// Level for `--dump-relation` (default: n_max).
        #[arg(long)]
        level: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact d_r between two tilings.
    TilingDist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        r: String,
        #[arg(long)]
        rho: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Two-sided orbit metric between two tilings.
    OrbitDist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Neighborhood/ball witnesses between d_r and the native topology.
    Witness {
        instance: PathBuf,
        #[arg(long, default_value = "5")]
        r: String,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Continuity and smoothness checks for a plot described in TOML.
    PlotCheck {
        config: PathBuf,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        t0: String,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Write the recovered translation table as `t,u` CSV.
        #[arg(long)]
        u_table: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact sup distance between two PL maps on [-r, r].
    MappingDist {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        r: String,
        #[command(flatten)]
        common: Common,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Axioms { instance, r, rho, eps, grid, samples, triples, common } => {
            commands::axioms(&AxiomsArgs {
                instance,
                r,
                rho,
                eps,
                grid,
                samples,
                triples,
                seed: common.seed,
                out: common.out,
            })
        }
        Cmd::Metrize { instance, nmax, rho, samples, dump_relation, level, common } => {
            commands::metrize(&MetrizeArgs {
                instance,
                nmax,
                rho,
                samples,
                seed: common.seed,
                dump_relation,
                level,
                out: common.out,
            })
        }
        Cmd::TilingDist { a, b, r, rho, common } => commands::tiling_dist(
            &a,
            &b,
            &r,
            rho.as_deref(),
            common.seed,
            common.out.as_deref(),
        ),
        Cmd::OrbitDist { a, b, tol, common } => {
            commands::orbit_dist(&a, &b, tol, common.seed, common.out.as_deref())
        }
        Cmd::Witness { instance, r, eps, samples, tol, common } => {
            commands::witness(&WitnessArgs {
                instance,
                r,
                eps,
                samples,
                tol,
                seed: common.seed,
                out: common.out,
            })
        }
        Cmd::PlotCheck { config, t0, r, grid, tol, u_table, common } => {
            commands::plot_check(&PlotArgs {
                config,
                t0,
                r,
                grid,
                tol,
                u_table,
                seed: common.seed,
                out: common.out,
            })
        }
        Cmd::MappingDist { f, g, r, common } => {
            commands::mapping_dist(&f, &g, &r, common.seed, common.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
