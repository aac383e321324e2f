//! Seeded Monte-Carlo sweeps over random channel ensembles, with CSV output.
//!
//! Every experiment draws its instances and its algorithm randomness from
//! streams derived off one master seed, with the instance stream independent
//! of any swept parameter. Two consequences:
//!
//! * sweeps are *paired* — every parameter value and every algorithm sees
//!   the exact same channel realizations, so differences between rows are
//!   differences between algorithms, not between samples;
//! * re-running with the same master seed reproduces every CSV byte, no
//!   matter how the realizations were scheduled across threads (parallel
//!   results are collected by realization index and aggregated serially).
//!
//! Raw per-realization values stay available on [`SweepResult`] for paired
//! significance tests; missing values (for example the anarchy ratio on an
//! instance with no equilibrium) are carried as NaN and skipped by the
//! aggregation.

use std::path::Path;

use rayon::prelude::*;

use crate::dynamics::{brd_multi, brd_run, BrdConfig};
use crate::equilibria::{is_pne, poa_pos, DEFAULT_ENUMERATION_CAP};
use crate::error::Result;
use crate::games::{make_oracle, GameKind, PayoffOracle};
use crate::instance::{generate_instance, GeometryConfig, Instance, Seed};
use crate::learning::{mwsls_run, IterationRecord, LearningConfig};
use crate::optimal::solve_optimal;
use crate::sinr::ActionProfile;

/// The available sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentId {
    /// Anarchy/stability ratios and equilibrium existence over N and M.
    PoaPos,
    /// Best-response outcomes in the two mandatory-transmission games vs N.
    BrdG1G2,
    /// Best-response quality as a function of the restart budget Q.
    BrdVsQ,
    /// Learner quality as a function of the winning increment tau.
    TauSweep,
    /// Per-iteration learning curves for several tau values.
    IterTrace,
    /// Learner quality as a function of the losing decrement epsilon.
    EpsilonSweep,
    /// Fraction of learner iterations spent at an equilibrium, vs N.
    PnePercentage,
    /// Optimal vs restarted best response vs learner, on shared instances.
    AlgoComparison,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 8] = [
        ExperimentId::PoaPos,
        ExperimentId::BrdG1G2,
        ExperimentId::BrdVsQ,
        ExperimentId::TauSweep,
        ExperimentId::IterTrace,
        ExperimentId::EpsilonSweep,
        ExperimentId::PnePercentage,
        ExperimentId::AlgoComparison,
    ];

    /// Stable identifier used in CSV rows and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::PoaPos => "poa_pos",
            ExperimentId::BrdG1G2 => "brd_g1_g2",
            ExperimentId::BrdVsQ => "brd_vs_q",
            ExperimentId::TauSweep => "tau_sweep",
            ExperimentId::IterTrace => "iter_trace",
            ExperimentId::EpsilonSweep => "epsilon_sweep",
            ExperimentId::PnePercentage => "pne_percentage",
            ExperimentId::AlgoComparison => "algo_comparison",
        }
    }

    pub fn from_name(name: &str) -> Option<ExperimentId> {
        ExperimentId::ALL.into_iter().find(|id| id.name() == name)
    }

    /// Seed-stream tag of this experiment (keeps experiments' randomness
    /// disjoint under one master seed).
    fn code(self) -> u64 {
        match self {
            ExperimentId::PoaPos => 1,
            ExperimentId::BrdG1G2 => 2,
            ExperimentId::BrdVsQ => 3,
            ExperimentId::TauSweep => 4,
            ExperimentId::IterTrace => 5,
            ExperimentId::EpsilonSweep => 6,
            ExperimentId::PnePercentage => 7,
            ExperimentId::AlgoComparison => 8,
        }
    }
}

/// Ensemble parameters shared by all experiments. Grids are fixed per
/// experiment; this configures the sampling around them.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Channel realizations per grid point.
    pub realizations: usize,
    /// Channel geometry for instance generation.
    pub geometry: GeometryConfig,
    /// Transmit power in dB (converted once, at generation).
    pub power_db: f64,
    /// SINR threshold in dB.
    pub threshold_db: f64,
    /// Root of every derived stream in the run.
    pub master_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            realizations: 200,
            geometry: GeometryConfig::default(),
            power_db: 10.0,
            threshold_db: 0.0,
            master_seed: 0,
        }
    }
}

/// One metric at one grid point: the raw per-realization values.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub metric: String,
    pub n: usize,
    pub m: usize,
    /// Name of the swept parameter ("none" when the grid point is fully
    /// described by N and M).
    pub param_name: &'static str,
    pub param_value: f64,
    /// One value per realization, in realization order; NaN marks a missing
    /// value (skipped by aggregation).
    pub values: Vec<f64>,
}

impl Series {
    fn finite(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied().filter(|v| v.is_finite())
    }

    /// Mean over the non-missing values (NaN when all are missing).
    pub fn mean(&self) -> f64 {
        let (sum, k) = self.finite().fold((0.0, 0usize), |(s, k), v| (s + v, k + 1));
        if k == 0 {
            f64::NAN
        } else {
            sum / k as f64
        }
    }

    /// Sample standard deviation over the non-missing values (NaN below two
    /// samples).
    pub fn stddev(&self) -> f64 {
        let mean = self.mean();
        let (sq, k) = self
            .finite()
            .fold((0.0, 0usize), |(s, k), v| (s + (v - mean) * (v - mean), k + 1));
        if k < 2 {
            f64::NAN
        } else {
            (sq / (k - 1) as f64).sqrt()
        }
    }

    /// Number of non-missing values.
    pub fn count(&self) -> usize {
        self.finite().count()
    }
}

/// A finished sweep: identification plus every series it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub experiment: ExperimentId,
    pub master_seed: u64,
    /// Realizations attempted per grid point (individual series may hold
    /// fewer non-missing values).
    pub realizations: usize,
    pub series: Vec<Series>,
}

/// Formats with 9 significant digits; zero stays `0` and missing values
/// become `nan`.
pub fn fmt_sig9(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.8e}")
    }
}

impl SweepResult {
    /// The series for `metric` at a grid point, if the sweep produced one.
    pub fn series_at(
        &self,
        metric: &str,
        n: usize,
        m: usize,
        param_value: f64,
    ) -> Option<&Series> {
        self.series.iter().find(|s| {
            s.metric == metric && s.n == n && s.m == m && s.param_value == param_value
        })
    }

    /// Mean of a series located like [`SweepResult::series_at`].
    pub fn mean_at(&self, metric: &str, n: usize, m: usize, param_value: f64) -> Option<f64> {
        self.series_at(metric, n, m, param_value).map(Series::mean)
    }

    /// Renders the aggregate table. One line per series:
    /// `experiment,N,M,param_name,param_value,metric,mean,stddev,realizations,seed`.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("experiment,N,M,param_name,param_value,metric,mean,stddev,realizations,seed\n");
        for s in &self.series {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                self.experiment.name(),
                s.n,
                s.m,
                s.param_name,
                fmt_sig9(s.param_value),
                s.metric,
                fmt_sig9(s.mean()),
                fmt_sig9(s.stddev()),
                s.count(),
                self.master_seed,
            ));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

/// Mean and standard error of the paired differences `a[i] - b[i]`,
/// skipping pairs where either side is missing. `None` without any complete
/// pair; the standard error is NaN below two pairs.
pub fn paired_diff_stats(a: &[f64], b: &[f64]) -> Option<(f64, f64)> {
    assert_eq!(a.len(), b.len(), "paired samples must align");
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(x, y)| x - y)
        .collect();
    let k = diffs.len();
    if k == 0 {
        return None;
    }
    let mean = diffs.iter().sum::<f64>() / k as f64;
    if k == 1 {
        return Some((mean, f64::NAN));
    }
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (k - 1) as f64;
    Some((mean, (var / k as f64).sqrt()))
}

/// Number of users actually served in `profile`: distinct targets of the
/// players earning payoff 1. Players in failed or colliding states count
/// zero, and a user counts once however many stations aim at it.
pub fn associated_count<O: PayoffOracle + ?Sized>(oracle: &O, profile: &ActionProfile) -> usize {
    let mut users: Vec<usize> = (0..oracle.num_players())
        .filter(|&n| oracle.payoff(profile, n) == 1)
        .filter_map(|n| profile[n].user())
        .collect();
    users.sort_unstable();
    users.dedup();
    users.len()
}

fn assoc_from_record(record: &IterationRecord) -> usize {
    let mut users: Vec<usize> = record
        .profile
        .iter()
        .zip(&record.rewards)
        .filter(|(_, &reward)| reward == 1)
        .filter_map(|(action, _)| action.user())
        .collect();
    users.sort_unstable();
    users.dedup();
    users.len()
}

// ---------------------------------------------------------------------------
// Stream plumbing
// ---------------------------------------------------------------------------

fn instance_stream(exp: Seed, n: usize, m: usize, r: u64) -> Seed {
    exp.derive(0).derive(n as u64).derive(m as u64).derive(r)
}

/// Algorithm randomness: tag 1 = best response, tag 2 = learner. Keeping the
/// channel stream (tag 0) parameter-free is what makes sweeps paired.
fn algo_stream(exp: Seed, tag: u64, n: usize, m: usize, r: u64) -> Seed {
    exp.derive(tag).derive(n as u64).derive(m as u64).derive(r)
}

fn draw_instance(config: &ExperimentConfig, exp: Seed, n: usize, m: usize, r: u64) -> Instance {
    generate_instance(
        &config.geometry,
        n,
        m,
        config.power_db,
        config.threshold_db,
        instance_stream(exp, n, m, r),
    )
    .expect("geometry was validated at experiment entry")
}

fn per_realization<T: Send, F: Fn(u64) -> T + Sync + Send>(realizations: usize, f: F) -> Vec<T> {
    (0..realizations as u64).into_par_iter().map(f).collect()
}

fn column<T, F: Fn(&T) -> f64>(rows: &[T], get: F) -> Vec<f64> {
    rows.iter().map(get).collect()
}

/// Runs one experiment. Grids are fixed per experiment (documented on each
/// runner); the config chooses ensemble size, channel model and master seed.
pub fn run_experiment(id: ExperimentId, config: &ExperimentConfig) -> Result<SweepResult> {
    config.geometry.validate()?;
    if config.realizations == 0 {
        return Err(crate::error::Error::Config(
            "realizations must be at least 1".into(),
        ));
    }
    let result = match id {
        ExperimentId::PoaPos => run_poa_pos(config),
        ExperimentId::BrdG1G2 => run_brd_games(config),
        ExperimentId::BrdVsQ => run_brd_vs_q(config),
        ExperimentId::TauSweep => run_tau_sweep(config),
        ExperimentId::IterTrace => run_iter_trace(config),
        ExperimentId::EpsilonSweep => run_epsilon_sweep(config),
        ExperimentId::PnePercentage => run_pne_percentage(config),
        ExperimentId::AlgoComparison => run_algo_comparison(config),
    };
    Ok(result)
}

/// Anarchy/stability ratios of the silence-enabled game and the equilibrium
/// existence rate, on N in 2..=5 crossed with M in {6, 8}.
///
/// Ratio series carry NaN on realizations without an equilibrium, so their
/// means condition on existence; `pne_exists` reports that rate separately.
fn run_poa_pos(config: &ExperimentConfig) -> SweepResult {
    let exp = Seed::new(config.master_seed).derive(ExperimentId::PoaPos.code());
    let mut series = Vec::new();
    for n in 2..=5usize {
        for m in [6usize, 8] {
            let rows = per_realization(config.realizations, |r| {
                let inst = draw_instance(config, exp, n, m, r);
                let oracle = make_oracle(GameKind::G, &inst);
                match poa_pos(&oracle, DEFAULT_ENUMERATION_CAP) {
                    Ok(report) => (
                        report.poa.unwrap_or(f64::NAN),
                        report.pos.unwrap_or(f64::NAN),
                        if report.pne_profiles.is_empty() { 0.0 } else { 1.0 },
                    ),
                    // Oversized profile space: record the whole point as
                    // missing and keep the sweep going.
                    Err(_) => (f64::NAN, f64::NAN, f64::NAN),
                }
            });
            for (metric, get) in [
                ("poa", 0usize),
                ("pos", 1),
                ("pne_exists", 2),
            ] {
                series.push(Series {
                    metric: metric.to_string(),
                    n,
                    m,
                    param_name: "none",
                    param_value: 0.0,
                    values: column(&rows, |row: &(f64, f64, f64)| match get {
                        0 => row.0,
                        1 => row.1,
                        _ => row.2,
                    }),
                });
            }
        }
    }
    SweepResult {
        experiment: ExperimentId::PoaPos,
        master_seed: config.master_seed,
        realizations: config.realizations,
        series,
    }
}

/// Served-user counts reached by one best-response run in each mandatory
/// game, against the optimum, for N in 2..=10 at M = 10. The round budget is
/// N*M, comfortably above the convergence guarantee.
fn run_brd_games(config: &ExperimentConfig) -> SweepResult {
    let exp = Seed::new(config.master_seed).derive(ExperimentId::BrdG1G2.code());
    let m = 10usize;
    let mut series = Vec::new();
    for n in 2..=10usize {
        let rows = per_realization(config.realizations, |r| {
            let inst = draw_instance(config, exp, n, m, r);
            let base = algo_stream(exp, 1, n, m, r);
            let cfg = BrdConfig {
                max_rounds: n * m,
                ..BrdConfig::default()
            };
            let assoc = |kind: GameKind, stream: Seed| {
                let oracle = make_oracle(kind, &inst);
                let outcome = brd_run(&oracle, &cfg, stream);
                associated_count(&oracle, &outcome.profile) as f64
            };
            (
                assoc(GameKind::G1, base.derive(1)),
                assoc(GameKind::G2, base.derive(2)),
                solve_optimal(&inst).count as f64,
            )
        });
        for (metric, pick) in [("assoc_g1", 0usize), ("assoc_g2", 1), ("assoc_optimal", 2)] {
            series.push(Series {
                metric: metric.to_string(),
                n,
                m,
                param_name: "none",
                param_value: 0.0,
                values: column(&rows, |row: &(f64, f64, f64)| match pick {
                    0 => row.0,
                    1 => row.1,
                    _ => row.2,
                }),
            });
        }
    }
    SweepResult {
        experiment: ExperimentId::BrdG1G2,
        master_seed: config.master_seed,
        realizations: config.realizations,
        series,
    }
}

const Q_GRID: [usize; 9] = [1, 2, 5, 10, 20, 30, 50, 75, 100];

/// Served users after Q best-response restarts, for N = 10 and M in
/// {6, 10}, with the learner and the optimum as reference rows at Q = 0.
///
/// All Q values share one restart stream, so the runs behind Q = 10 are a
/// prefix of the runs behind Q = 20 — the restart budget is the only moving
/// part.
fn run_brd_vs_q(config: &ExperimentConfig) -> SweepResult {
    let exp = Seed::new(config.master_seed).derive(ExperimentId::BrdVsQ.code());
    let n = 10usize;
    let mut series = Vec::new();
    for m in [6usize, 10] {
        let rows = per_realization(config.realizations, |r| {
            let inst = draw_instance(config, exp, n, m, r);
            let oracle = make_oracle(GameKind::G, &inst);
            let brd_seed = algo_stream(exp, 1, n, m, r);
            let per_q: Vec<f64> = Q_GRID
                .iter()
                .map(|&q| {
                    let cfg = BrdConfig {
                        restarts: q,
                        seed: brd_seed,
                        ..BrdConfig::default()
                    };
                    let outcome = brd_multi(&oracle, &cfg);
                    associated_count(&oracle, &outcome.profile) as f64
                })
                .collect();
            let learner = LearningConfig {
                seed: algo_stream(exp, 2, n, m, r),
                ..LearningConfig::default()
            };
            let trace = mwsls_run(&inst, &learner);
            let mwsls = associated_count(&oracle, &trace.final_profile) as f64;
            (per_q, mwsls, solve_optimal(&inst).count as f64)
        });
        for (i, &q) in Q_GRID.iter().enumerate() {
            series.push(Series {
                metric: "assoc_brd".to_string(),
                n,
                m,
                param_name: "Q",
                param_value: q as f64,
                values: column(&rows, |row: &(Vec<f64>, f64, f64)| row.0[i]),
            });
        }
        series.push(Series {
            metric: "assoc_mwsls".to_string(),
            n,
            m,
            param_name: "Q",
            param_value: 0.0,
            values: column(&rows, |row: &(Vec<f64>, f64, f64)| row.1),
        });
        series.push(Series {
            metric: "assoc_optimal".to_string(),
            n,
            m,
            param_name: "Q",
            param_value: 0.0,
            values: column(&rows, |row: &(Vec<f64>, f64, f64)| row.2),
        });
    }
    SweepResult {
        experiment: ExperimentId::BrdVsQ,
        master_seed: config.master_seed,
        realizations: config.realizations,
        series,
    }
}

const MWSLS_SCENARIOS: [(usize, usize); 3] = [(4, 6), (8, 10), (12, 14)];

/// Learner quality across the winning increment grid, on three network
/// sizes. Instances and sampling streams are shared across the grid.
fn run_tau_sweep(config: &ExperimentConfig) -> SweepResult {
    let exp = Seed::new(config.master_seed).derive(ExperimentId::TauSweep.code());
    let taus = [0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5];
    let mut series = Vec::new();
    for (n, m) in MWSLS_SCENARIOS {
        let rows = per_realization(config.realizations, |r| {
            let inst = draw_instance(config, exp, n, m, r);
            let oracle = make_oracle(GameKind::G, &inst);
            let seed = algo_stream(exp, 2, n, m, r);
            taus.map(|tau| {
                let cfg = LearningConfig {
                    tau,
                    seed,
                    ..LearningConfig::default()
                };
                let trace = mwsls_run(&inst, &cfg);
                associated_count(&oracle, &trace.final_profile) as f64
            })
        });
        for (i, &tau) in taus.iter().enumerate() {
            series.push(Series {
                metric: "assoc_mwsls".to_string(),
                n,
                m,
                param_name: "tau",
                param_value: tau,
                values: column(&rows, |row: &[f64; 7]| row[i]),
            });
        }
    }
    SweepResult {
        experiment: ExperimentId::TauSweep,
        master_seed: config.master_seed,
        realizations: config.realizations,
        series,
    }
}

/// Per-iteration learning curves (mean welfare and mean served users) for
/// three winning increments at N = 10, M = 12.
fn run_iter_trace(config: &ExperimentConfig) -> SweepResult {
    let exp = Seed::new(config.master_seed).derive(ExperimentId::IterTrace.code());
    let (n, m) = (10usize, 12usize);
    let taus = [0.05, 0.1, 0.3];
    let iterations = 100usize;
    let rows = per_realization(config.realizations, |r| {
        let inst = draw_instance(config, exp, n, m, r);
        let seed = algo_stream(exp, 2, n, m, r);
        taus.map(|tau| {
            let cfg = LearningConfig {
                tau,
                iterations,
                seed,
                ..LearningConfig::default()
            };
            let trace = mwsls_run(&inst, &cfg);
            let welfare: Vec<f64> = trace.records.iter().map(|rec| rec.welfare as f64).collect();
            let assoc: Vec<f64> = trace
                .records
                .iter()
                .map(|rec| assoc_from_record(rec) as f64)
                .collect();
            (welfare, assoc)
        })
    });
    let mut series = Vec::new();
    for (i, &tau) in taus.iter().enumerate() {
        for t in 0..iterations {
            series.push(Series {
                metric: format!("welfare_tau_{tau}"),
                n,
                m,
                param_name: "iter",
                param_value: t as f64,
                values: column(&rows, |row: &[(Vec<f64>, Vec<f64>); 3]| row[i].0[t]),
            });
        }
        for t in 0..iterations {
            series.push(Series {
                metric: format!("assoc_tau_{tau}"),
                n,
                m,
                param_name: "iter",
                param_value: t as f64,
                values: column(&rows, |row: &[(Vec<f64>, Vec<f64>); 3]| row[i].1[t]),
            });
        }
    }
    SweepResult {
        experiment: ExperimentId::IterTrace,
        master_seed: config.master_seed,
        realizations: config.realizations,
        series,
    }
}

/// Learner quality across the losing decrement grid, for N in {4, 8} at
/// M = 10.
fn run_epsilon_sweep(config: &ExperimentConfig) -> SweepResult {
    let exp = Seed::new(config.master_seed).derive(ExperimentId::EpsilonSweep.code());
    let epsilons = [0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2];
    let m = 10usize;
    let mut series = Vec::new();
    for n in [4usize, 8] {
        let rows = per_realization(config.realizations, |r| {
            let inst = draw_instance(config, exp, n, m, r);
            let oracle = make_oracle(GameKind::G, &inst);
            let seed = algo_stream(exp, 2, n, m, r);
            epsilons.map(|epsilon| {
                let cfg = LearningConfig {
                    epsilon,
                    seed,
                    ..LearningConfig::default()
                };
                let trace = mwsls_run(&inst, &cfg);
                associated_count(&oracle, &trace.final_profile) as f64
            })
        });
        for (i, &epsilon) in epsilons.iter().enumerate() {
            series.push(Series {
                metric: "assoc_mwsls".to_string(),
                n,
                m,
                param_name: "epsilon",
                param_value: epsilon,
                values: column(&rows, |row: &[f64; 7]| row[i]),
            });
        }
    }
    SweepResult {
        experiment: ExperimentId::EpsilonSweep,
        master_seed: config.master_seed,
        realizations: config.realizations,
        series,
    }
}

/// How often the learner's played profile is an equilibrium, for N in 2..=10
/// at M = N + 2: full-trace fraction, last-half fraction, and whether the
/// final deterministic readout is an equilibrium.
fn run_pne_percentage(config: &ExperimentConfig) -> SweepResult {
    let exp = Seed::new(config.master_seed).derive(ExperimentId::PnePercentage.code());
    let mut series = Vec::new();
    for n in 2..=10usize {
        let m = n + 2;
        let rows = per_realization(config.realizations, |r| {
            let inst = draw_instance(config, exp, n, m, r);
            let oracle = make_oracle(GameKind::G, &inst);
            let cfg = LearningConfig {
                seed: algo_stream(exp, 2, n, m, r),
                ..LearningConfig::default()
            };
            let trace = mwsls_run(&inst, &cfg);
            (
                trace.pne_fraction(),
                trace.late_pne_fraction(),
                if is_pne(&oracle, &trace.final_profile) { 1.0 } else { 0.0 },
            )
        });
        for (metric, pick) in [
            ("pne_full", 0usize),
            ("pne_late", 1),
            ("extracted_pne", 2),
        ] {
            series.push(Series {
                metric: metric.to_string(),
                n,
                m,
                param_name: "none",
                param_value: 0.0,
                values: column(&rows, |row: &(f64, f64, f64)| match pick {
                    0 => row.0,
                    1 => row.1,
                    _ => row.2,
                }),
            });
        }
    }
    SweepResult {
        experiment: ExperimentId::PnePercentage,
        master_seed: config.master_seed,
        realizations: config.realizations,
        series,
    }
}

/// Optimum vs best response with a 30-restart budget vs the learner, on
/// shared instances, for N in 2..=8 at M = 10.
fn run_algo_comparison(config: &ExperimentConfig) -> SweepResult {
    let exp = Seed::new(config.master_seed).derive(ExperimentId::AlgoComparison.code());
    let m = 10usize;
    let mut series = Vec::new();
    for n in 2..=8usize {
        let rows = per_realization(config.realizations, |r| {
            let inst = draw_instance(config, exp, n, m, r);
            let oracle = make_oracle(GameKind::G, &inst);
            let brd_cfg = BrdConfig {
                restarts: 30,
                seed: algo_stream(exp, 1, n, m, r),
                ..BrdConfig::default()
            };
            let brd = brd_multi(&oracle, &brd_cfg);
            let learner = LearningConfig {
                seed: algo_stream(exp, 2, n, m, r),
                ..LearningConfig::default()
            };
            let trace = mwsls_run(&inst, &learner);
            (
                solve_optimal(&inst).count as f64,
                associated_count(&oracle, &brd.profile) as f64,
                associated_count(&oracle, &trace.final_profile) as f64,
            )
        });
        for (metric, pick) in [
            ("assoc_optimal", 0usize),
            ("assoc_brd_q30", 1),
            ("assoc_mwsls", 2),
        ] {
            series.push(Series {
                metric: metric.to_string(),
                n,
                m,
                param_name: "none",
                param_value: 0.0,
                values: column(&rows, |row: &(f64, f64, f64)| match pick {
                    0 => row.0,
                    1 => row.1,
                    _ => row.2,
                }),
            });
        }
    }
    SweepResult {
        experiment: ExperimentId::AlgoComparison,
        master_seed: config.master_seed,
        realizations: config.realizations,
        series,
    }
}
