//! Sequential best-response dynamics with random restarts.
//!
//! One run starts from a randomly sampled profile and lets stations revise
//! in index order, each moving to a best response against the others' current
//! actions. A station already playing a best response stays put, which makes
//! the fixed points of the dynamics exactly the pure Nash equilibria and lets
//! a no-change round double as a convergence check. Ties among several best
//! responses are broken uniformly at random.
//!
//! [`brd_multi`] repeats this from independent random starts and keeps the
//! most valuable outcome, preferring converged runs.

use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::equilibria::is_pne;
use crate::games::{social_welfare, PayoffOracle};
use crate::instance::Seed;
use crate::sinr::ActionProfile;

/// Tuning for one best-response run (and its restarts).
#[derive(Debug, Clone, PartialEq)]
pub struct BrdConfig {
    /// Hard cap on revision rounds per run.
    pub max_rounds: usize,
    /// How many independent runs [`brd_multi`] launches.
    pub restarts: usize,
    /// Distribution of each player's first-round action over its action set,
    /// in oracle order. `None` means uniform.
    pub first_round: Option<Vec<f64>>,
    /// Root of all randomness in the run.
    pub seed: Seed,
}

impl Default for BrdConfig {
    fn default() -> Self {
        BrdConfig {
            max_rounds: 10,
            restarts: 1,
            first_round: None,
            seed: Seed::new(0),
        }
    }
}

impl BrdConfig {
    /// Panics when the configuration violates its contract: at least one
    /// round and one restart, and a stochastic first-round distribution.
    fn assert_valid(&self, action_count: usize) {
        assert!(self.max_rounds >= 1, "max_rounds must be at least 1");
        assert!(self.restarts >= 1, "restarts must be at least 1");
        if let Some(dist) = &self.first_round {
            assert_eq!(
                dist.len(),
                action_count,
                "first-round distribution must cover every action"
            );
            assert!(
                dist.iter().all(|&p| (0.0..=1.0).contains(&p)),
                "first-round probabilities must lie in [0, 1]"
            );
            let sum: f64 = dist.iter().sum();
            assert!(
                (sum - 1.0).abs() <= 1e-12,
                "first-round probabilities sum to {sum}, not 1"
            );
        }
    }
}

/// What one best-response run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct BrdOutcome {
    /// The final profile after the run stopped.
    pub profile: ActionProfile,
    /// Whether the final profile verified as a pure Nash equilibrium.
    pub converged: bool,
    /// Revision rounds actually executed.
    pub rounds_used: usize,
    /// Social welfare of the final profile.
    pub welfare: i64,
}

/// The set of player `n`'s payoff-maximizing actions against the rest of
/// `profile`, in action-set order.
pub fn best_responses<O: PayoffOracle + ?Sized>(
    oracle: &O,
    profile: &ActionProfile,
    n: usize,
) -> Vec<crate::sinr::Action> {
    let mut scratch = profile.clone();
    let mut best = i64::MIN;
    let mut set = Vec::new();
    for &action in oracle.actions(n) {
        scratch.set(n, action);
        let pay = oracle.payoff(&scratch, n);
        if pay > best {
            best = pay;
            set.clear();
        }
        if pay == best {
            set.push(action);
        }
    }
    set
}

fn sample_index(dist: &[f64], rng: &mut ChaCha12Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in dist.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    dist.len() - 1
}

/// Runs the dynamics from `start` with the given revision randomness.
///
/// Rounds revise stations in index order; a station keeps its action when it
/// is already a best response, otherwise it jumps to a uniformly random
/// member of its best-response set. The run stops after a full round without
/// change (checking the fixed point really is an equilibrium) or after
/// `max_rounds` rounds.
pub fn brd_from<O: PayoffOracle + ?Sized>(
    oracle: &O,
    start: ActionProfile,
    config: &BrdConfig,
    rng: &mut ChaCha12Rng,
) -> BrdOutcome {
    assert_eq!(
        start.len(),
        oracle.num_players(),
        "start profile arity does not match the game"
    );
    let mut profile = start;
    let mut rounds_used = 0;
    while rounds_used < config.max_rounds {
        rounds_used += 1;
        let mut changed = false;
        for n in 0..oracle.num_players() {
            let set = best_responses(oracle, &profile, n);
            if set.contains(&profile[n]) {
                continue;
            }
            let pick = if set.len() == 1 {
                set[0]
            } else {
                set[rng.gen_range(0..set.len())]
            };
            profile.set(n, pick);
            changed = true;
        }
        // Stay-if-best makes "nobody moved" equivalent to "everyone is
        // already best-responding", i.e. the profile is an equilibrium.
        if !changed {
            break;
        }
    }
    let converged = is_pne(oracle, &profile);
    let welfare = social_welfare(oracle, &profile);
    BrdOutcome {
        profile,
        converged,
        rounds_used,
        welfare,
    }
}

/// One full run: samples every player's first-round action i.i.d. from the
/// configured distribution (uniform by default) on the `stream`-derived
/// random stream, then revises via [`brd_from`].
pub fn brd_run<O: PayoffOracle + ?Sized>(
    oracle: &O,
    config: &BrdConfig,
    stream: Seed,
) -> BrdOutcome {
    let players = oracle.num_players();
    assert!(players > 0, "a game needs players");
    config.assert_valid(oracle.actions(0).len());
    let mut rng = stream.rng();
    let actions: Vec<_> = (0..players)
        .map(|n| {
            let set = oracle.actions(n);
            let idx = match &config.first_round {
                Some(dist) => {
                    assert_eq!(dist.len(), set.len(), "distribution arity for player {n}");
                    sample_index(dist, &mut rng)
                }
                None => rng.gen_range(0..set.len()),
            };
            set[idx]
        })
        .collect();
    brd_from(oracle, ActionProfile::new(actions), config, &mut rng)
}

/// Runs the dynamics `config.restarts` times on independent sub-streams of
/// `config.seed` and keeps the best outcome: converged runs beat unconverged
/// ones, then higher welfare wins, then the earliest run.
///
/// Because restart `q` always uses sub-stream `q`, enlarging the restart
/// budget never changes what the shared prefix of runs produces.
pub fn brd_multi<O: PayoffOracle + ?Sized>(oracle: &O, config: &BrdConfig) -> BrdOutcome {
    assert!(config.restarts >= 1, "restarts must be at least 1");
    let mut best: Option<BrdOutcome> = None;
    for q in 0..config.restarts {
        let outcome = brd_run(oracle, config, config.seed.derive(q as u64));
        let replace = match &best {
            None => true,
            Some(champ) => {
                (outcome.converged, outcome.welfare) > (champ.converged, champ.welfare)
            }
        };
        if replace {
            best = Some(outcome);
        }
    }
    best.expect("at least one restart ran")
}
