//! Command-line front end: instance generation, one-shot solves,
//! equilibrium reports, dynamics, learning, and the sweep harness.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 profile space too
//! large to enumerate. Every command that consumes randomness prints the
//! effective seed, so any run can be replayed exactly.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use hetsnet_core::dynamics::{brd_multi, BrdConfig};
use hetsnet_core::equilibria::{poa_pos, DEFAULT_ENUMERATION_CAP};
use hetsnet_core::experiments::{run_experiment, ExperimentConfig, ExperimentId};
use hetsnet_core::games::{make_oracle, GameKind};
use hetsnet_core::instance::{
    counterexample_instance, generate_instance, GeometryConfig, Instance, Seed,
};
use hetsnet_core::learning::{mwsls_run, LearningConfig};
use hetsnet_core::optimal::solve_optimal;
use hetsnet_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "hetsnet",
    version,
    about = "Simulate user association games in interference-limited small-cell networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameArg {
    /// Mandatory transmission, SINR-only payoffs.
    G1,
    /// Mandatory transmission, collisions priced at -2.
    G2,
    /// Silence allowed.
    G,
}

impl From<GameArg> for GameKind {
    fn from(arg: GameArg) -> GameKind {
        match arg {
            GameArg::G1 => GameKind::G1,
            GameArg::G2 => GameKind::G2,
            GameArg::G => GameKind::G,
        }
    }
}

#[derive(Args)]
struct ChannelArgs {
    /// Transmit power in dB.
    #[arg(long = "power-db", default_value_t = 10.0)]
    power_db: f64,
    /// SINR threshold in dB.
    #[arg(long = "beta-db", default_value_t = 0.0)]
    beta_db: f64,
    /// Path-loss exponent.
    #[arg(long, default_value_t = 4.0)]
    alpha: f64,
}

impl ChannelArgs {
    fn geometry(&self) -> GeometryConfig {
        GeometryConfig {
            path_loss_exponent: self.alpha,
            ..GeometryConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance and write it as JSON.
    Gen {
        /// Number of stations.
        #[arg(long)]
        n: usize,
        /// Number of users.
        #[arg(long)]
        m: usize,
        /// Master seed (random when omitted; always echoed).
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Output path for the instance JSON.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the maximum number of simultaneously served users.
    Solve {
        /// Instance JSON path.
        #[arg(long)]
        input: PathBuf,
    },
    /// Enumerate pure Nash equilibria and report efficiency ratios.
    Pne {
        /// Instance JSON path.
        #[arg(long)]
        input: PathBuf,
        /// Which game to analyze.
        #[arg(long, value_enum)]
        game: GameArg,
        /// Enumeration cap on the number of profiles.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Run best-response dynamics with restarts.
    Brd {
        /// Instance JSON path.
        #[arg(long)]
        input: PathBuf,
        /// Which game to play.
        #[arg(long, value_enum)]
        game: GameArg,
        /// Master seed (random when omitted; always echoed).
        #[arg(long)]
        seed: Option<u64>,
        /// Restart budget.
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Round cap per run.
        #[arg(long, default_value_t = 10)]
        rounds: usize,
    },
    /// Run the decentralized win-stay lose-shift learner.
    Mwsls {
        /// Instance JSON path.
        #[arg(long)]
        input: PathBuf,
        /// Master seed (random when omitted; always echoed).
        #[arg(long)]
        seed: Option<u64>,
        /// Winning increment factor.
        #[arg(long, default_value_t = 0.1)]
        tau: f64,
        /// Losing decrement factor.
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        /// Number of learning iterations.
        #[arg(long, default_value_t = 100)]
        iters: usize,
        /// Print every iteration of the trace.
        #[arg(long)]
        trace: bool,
    },
    /// Run a named sweep and write its CSV.
    Experiment {
        /// One of: poa_pos, brd_g1_g2, brd_vs_q, tau_sweep, iter_trace,
        /// epsilon_sweep, pne_percentage, algo_comparison.
        id: String,
        /// Master seed (random when omitted; always echoed).
        #[arg(long)]
        seed: Option<u64>,
        /// Channel realizations per grid point.
        #[arg(long, default_value_t = 200)]
        realizations: usize,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Output CSV path.
        #[arg(long)]
        csv: PathBuf,
    },
    /// Emit the built-in three-station instance with no pure equilibrium.
    Counterexample {
        /// Write the instance JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // Clap renders help to stdout and errors to stderr on its own.
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let capacity = matches!(
                err.downcast_ref::<CoreError>(),
                Some(CoreError::CapExceeded { .. })
            );
            ExitCode::from(if capacity { 2 } else { 1 })
        }
    }
}

/// Picks the effective master seed and announces it, so stochastic output is
/// always replayable.
fn announce_seed(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or_else(rand::random);
    println!("seed: {seed}");
    seed
}

fn load_instance(path: &PathBuf) -> Result<Instance> {
    Instance::load(path).with_context(|| format!("reading instance {}", path.display()))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Gen {
            n,
            m,
            seed,
            channel,
            out,
        } => {
            let seed = announce_seed(seed);
            let instance = generate_instance(
                &channel.geometry(),
                n,
                m,
                channel.power_db,
                channel.beta_db,
                Seed::new(seed),
            )?;
            instance
                .save(&out)
                .with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {} ({} stations, {} users)", out.display(), n, m);
            Ok(())
        }
        Command::Solve { input } => {
            let instance = load_instance(&input)?;
            let solution = solve_optimal(&instance);
            println!("optimal = {}", solution.count);
            for (m, n) in solution.assignment.links() {
                println!("station {n} -> user {m}");
            }
            Ok(())
        }
        Command::Pne { input, game, cap } => {
            let instance = load_instance(&input)?;
            let oracle = make_oracle(game.into(), &instance);
            let report = poa_pos(&oracle, cap)?;
            println!("{} PNE found", report.pne_profiles.len());
            for (profile, welfare) in report.pne_profiles.iter().zip(&report.welfare_per_pne) {
                println!("pne: {profile} welfare = {welfare}");
            }
            println!(
                "max welfare = {} at {}",
                report.max_welfare, report.best_profile
            );
            match (report.poa, report.pos) {
                (Some(poa), Some(pos)) => {
                    println!("poa = {poa}");
                    println!("pos = {pos}");
                }
                _ => println!("poa/pos undefined (no equilibrium)"),
            }
            Ok(())
        }
        Command::Brd {
            input,
            game,
            seed,
            q,
            rounds,
        } => {
            let instance = load_instance(&input)?;
            if q == 0 || rounds == 0 {
                return Err(CoreError::Config(
                    "restarts and rounds must be at least 1".into(),
                )
                .into());
            }
            let seed = announce_seed(seed);
            let oracle = make_oracle(game.into(), &instance);
            let config = BrdConfig {
                max_rounds: rounds,
                restarts: q,
                first_round: None,
                seed: Seed::new(seed),
            };
            let outcome = brd_multi(&oracle, &config);
            println!("profile: {}", outcome.profile);
            println!("welfare = {}", outcome.welfare);
            println!("converged = {}", outcome.converged);
            println!("rounds used = {}", outcome.rounds_used);
            Ok(())
        }
        Command::Mwsls {
            input,
            seed,
            tau,
            epsilon,
            iters,
            trace,
        } => {
            let instance = load_instance(&input)?;
            let config = LearningConfig {
                tau,
                epsilon,
                iterations: iters,
                seed: Seed::new(0),
            };
            config.validate()?;
            let seed = announce_seed(seed);
            let config = LearningConfig {
                seed: Seed::new(seed),
                ..config
            };
            let result = mwsls_run(&instance, &config);
            if trace {
                for (t, record) in result.records.iter().enumerate() {
                    println!(
                        "t={t} profile={} welfare={} pne={}",
                        record.profile, record.welfare, record.is_pne
                    );
                }
            }
            println!("final profile: {}", result.final_profile);
            println!(
                "equilibrium play: full = {:.4}, late half = {:.4}",
                result.pne_fraction(),
                result.late_pne_fraction()
            );
            let oracle = make_oracle(GameKind::G, &instance);
            println!(
                "extracted profile is an equilibrium: {}",
                hetsnet_core::equilibria::is_pne(&oracle, &result.final_profile)
            );
            Ok(())
        }
        Command::Experiment {
            id,
            seed,
            realizations,
            channel,
            csv,
        } => {
            let id = ExperimentId::from_name(&id).ok_or_else(|| {
                CoreError::Config(format!(
                    "unknown experiment '{id}'; expected one of {}",
                    ExperimentId::ALL
                        .iter()
                        .map(|e| e.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })?;
            let seed = announce_seed(seed);
            let config = ExperimentConfig {
                realizations,
                geometry: channel.geometry(),
                power_db: channel.power_db,
                threshold_db: channel.beta_db,
                master_seed: seed,
            };
            let result = run_experiment(id, &config)?;
            result
                .write_csv(&csv)
                .with_context(|| format!("writing {}", csv.display()))?;
            println!(
                "wrote {} ({} data rows)",
                csv.display(),
                result.series.len()
            );
            Ok(())
        }
        Command::Counterexample { out } => {
            let instance = counterexample_instance();
            match &out {
                Some(path) => {
                    instance
                        .save(path)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{}", instance.to_json()),
            }
            let oracle = make_oracle(GameKind::G, &instance);
            let report = poa_pos(&oracle, DEFAULT_ENUMERATION_CAP)?;
            println!("{} PNE found", report.pne_profiles.len());
            println!("max welfare = {}", report.max_welfare);
            Ok(())
        }
    }
}
