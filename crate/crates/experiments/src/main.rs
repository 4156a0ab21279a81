use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use torus_wigner_experiments::config::*;
use torus_wigner_experiments::{
    execute, rerun, Experiment, ExperimentError, RunManifest, RunOptions,
};

/// Wigner function value statistics of the quantized sawtooth map.
#[derive(Parser)]
#[command(name = "torus-wigner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (0 = all cores). Does not change any output.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Also write a gnuplot script next to the CSVs.
    #[arg(long)]
    emit_plot_script: bool,
}

#[derive(Args)]
struct Packet {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    q0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    p0: f64,
}

#[derive(Args)]
struct Estimator {
    /// |excess| level defining the relaxation time.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Consecutive steps the criterion must hold.
    #[arg(long, default_value_t = DEFAULT_HOLD)]
    hold: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Value distribution snapshots of an evolving coherent packet.
    Snapshots {
        #[arg(long = "K", default_value_t = DEFAULT_KICK, allow_negative_numbers = true)]
        kick: f64,
        #[arg(long = "N", default_value_t = DEFAULT_DIM)]
        dim: usize,
        /// Snapshot times; defaults to 0,1,2,4,8,ceil(4 ln N).
        #[arg(long, value_delimiter = ',')]
        times: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[command(flatten)]
        packet: Packet,
        #[command(flatten)]
        common: Common,
    },
    /// Excess against t / ln N for several N.
    ExcessN {
        #[arg(long = "K", default_value_t = DEFAULT_KICK, allow_negative_numbers = true)]
        kick: f64,
        #[arg(long = "N", value_delimiter = ',', default_value = "243,729,2187")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_T_MAX_FACTOR)]
        t_max_factor: f64,
        #[command(flatten)]
        packet: Packet,
        #[command(flatten)]
        estimator: Estimator,
        #[command(flatten)]
        common: Common,
    },
    /// Excess at fixed N for several K.
    ExcessK {
        #[arg(long = "K", value_delimiter = ',', default_value = "0.5,1,2")]
        kicks: Vec<f64>,
        #[arg(long = "N", default_value_t = DEFAULT_DIM)]
        dim: usize,
        /// Last map time; defaults to ceil(6 ln N).
        #[arg(long)]
        t_max: Option<usize>,
        #[command(flatten)]
        packet: Packet,
        #[command(flatten)]
        estimator: Estimator,
        #[command(flatten)]
        common: Common,
    },
    /// Fraction of negative values against t / ln N for several N.
    Negativity {
        #[arg(long = "K", default_value_t = DEFAULT_KICK, allow_negative_numbers = true)]
        kick: f64,
        #[arg(long = "N", value_delimiter = ',', default_value = "243,729,2187")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_T_MAX_FACTOR)]
        t_max_factor: f64,
        /// P- level defining the negativity time.
        #[arg(long, default_value_t = DEFAULT_LEVEL)]
        level: f64,
        #[command(flatten)]
        packet: Packet,
        #[command(flatten)]
        estimator: Estimator,
        #[command(flatten)]
        common: Common,
    },
    /// Gaussianity of an ensemble of random states.
    Ensemble {
        #[arg(long = "N", default_value_t = DEFAULT_DIM)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Dump the full grid of one state.
    Wigner {
        #[arg(long = "N", default_value_t = 27)]
        dim: usize,
        /// coherent, random or position.
        #[arg(long, default_value = "coherent")]
        state: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Position index for --state position.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n0: i64,
        #[arg(long = "K", default_value_t = DEFAULT_KICK, allow_negative_numbers = true)]
        kick: f64,
        /// Map steps applied before the dump.
        #[arg(long, default_value_t = 0)]
        steps: usize,
        #[command(flatten)]
        packet: Packet,
        #[command(flatten)]
        common: Common,
    },
    /// Repeat a run from its manifest.json.
    Rerun {
        manifest: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the recorded thread count.
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn options(c: &Common) -> RunOptions {
    RunOptions {
        threads: c.threads,
        emit_plot_script: c.emit_plot_script,
    }
}

fn run(cli: Cli) -> Result<PathBuf, ExperimentError> {
    let (experiment, common) = match cli.command {
        Command::Snapshots {
            kick,
            dim,
            times,
            bins,
            packet,
            common,
        } => {
            let times = if times.is_empty() && dim > 1 {
                default_snapshot_times(dim)
            } else {
                times
            };
            let c = SnapshotsConfig {
                kick,
                dim,
                q0: packet.q0,
                p0: packet.p0,
                times,
                bins,
            };
            (Experiment::Snapshots(c), common)
        }
        Command::ExcessN {
            kick,
            dims,
            t_max_factor,
            packet,
            estimator,
            common,
        } => {
            let c = ExcessNConfig {
                kick,
                dims,
                t_max_factor,
                q0: packet.q0,
                p0: packet.p0,
                threshold: estimator.threshold,
                hold: estimator.hold,
            };
            (Experiment::ExcessN(c), common)
        }
        Command::ExcessK {
            kicks,
            dim,
            t_max,
            packet,
            estimator,
            common,
        } => {
            let c = ExcessKConfig {
                kicks,
                dim,
                t_max: t_max.unwrap_or_else(|| time_horizon(dim.max(1), DEFAULT_T_MAX_FACTOR)),
                q0: packet.q0,
                p0: packet.p0,
                threshold: estimator.threshold,
                hold: estimator.hold,
            };
            (Experiment::ExcessK(c), common)
        }
        Command::Negativity {
            kick,
            dims,
            t_max_factor,
            level,
            packet,
            estimator,
            common,
        } => {
            let c = NegativityConfig {
                kick,
                dims,
                t_max_factor,
                q0: packet.q0,
                p0: packet.p0,
                level,
                threshold: estimator.threshold,
                hold: estimator.hold,
            };
            (Experiment::Negativity(c), common)
        }
        Command::Ensemble {
            dim,
            samples,
            seed,
            bins,
            common,
        } => (
            Experiment::Ensemble(EnsembleConfig {
                dim,
                samples,
                seed,
                bins,
            }),
            common,
        ),
        Command::Wigner {
            dim,
            state,
            seed,
            n0,
            kick,
            steps,
            packet,
            common,
        } => {
            let state = match state.as_str() {
                "coherent" => InitialState::Coherent {
                    q0: packet.q0,
                    p0: packet.p0,
                },
                "random" => InitialState::Random { seed },
                "position" => InitialState::Position { n0 },
                other => {
                    return Err(ExperimentError::Validation(format!(
                        "unknown state '{other}', expected coherent, random or position"
                    )))
                }
            };
            (
                Experiment::Wigner(WignerConfig {
                    dim,
                    state,
                    kick,
                    steps,
                }),
                common,
            )
        }
        Command::Rerun {
            manifest,
            out,
            threads,
        } => {
            let m = RunManifest::read(&manifest)?;
            rerun(&m, &out, threads)?;
            return Ok(out);
        }
    };
    execute(&experiment, &common.out, options(&common))?;
    Ok(common.out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("wrote {}", out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
