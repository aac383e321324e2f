//! Decentralized win-stay lose-shift learning over mixed strategies.
//!
//! Each station keeps a probability row over its `M + 1` actions (the users,
//! then silence last) and plays by sampling it. After every joint round a
//! station learns only three things: what it played, one feedback bit from
//! its chosen user (did the link clear the threshold?), and the broadcast
//! list of everyone's actions. Wins sharpen the row toward the played user,
//! losses bleed probability mass from it to silence, silence changes
//! nothing. That information barrier is enforced structurally: the update
//! path consumes [`Observation`] records and never touches the channel
//! matrix.

use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::equilibria::is_pne;
use crate::games::{make_oracle, GameKind};
use crate::instance::{Instance, Seed};
use crate::sinr::{sinr_of_player, Action, ActionProfile};

/// How far a row may drift from summing to exactly 1 before it stops being
/// accepted as a probability vector.
pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// Per-station mixed strategies: one row per station over `num_su + 1`
/// actions, silence in the last column.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyMatrix {
    num_su: usize,
    rows: Vec<Vec<f64>>,
}

impl PolicyMatrix {
    /// Uniform initialization: every entry `1 / (num_su + 1)`.
    pub fn uniform(num_sbs: usize, num_su: usize) -> Self {
        assert!(num_sbs > 0 && num_su > 0, "empty policy matrix");
        let p = 1.0 / (num_su + 1) as f64;
        PolicyMatrix {
            num_su,
            rows: vec![vec![p; num_su + 1]; num_sbs],
        }
    }

    pub fn num_stations(&self) -> usize {
        self.rows.len()
    }

    pub fn num_su(&self) -> usize {
        self.num_su
    }

    /// Column index of the silent action.
    pub fn silent_column(&self) -> usize {
        self.num_su
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.rows[n]
    }

    /// The action a column index stands for.
    pub fn action_of(&self, column: usize) -> Action {
        assert!(column <= self.num_su, "column {column} out of range");
        if column == self.num_su {
            Action::Silent
        } else {
            Action::User(column)
        }
    }

    /// The column index of an action.
    pub fn column_of(&self, action: Action) -> usize {
        match action {
            Action::User(m) => {
                assert!(m < self.num_su, "user {m} out of range");
                m
            }
            Action::Silent => self.num_su,
        }
    }

    fn assert_stochastic(&self) {
        for (n, row) in self.rows.iter().enumerate() {
            assert!(
                row.iter().all(|&p| (0.0..=1.0).contains(&p)),
                "row {n} has an entry outside [0, 1]"
            );
            let sum: f64 = row.iter().sum();
            assert!(
                (sum - 1.0).abs() <= ROW_SUM_TOLERANCE,
                "row {n} sums to {sum}"
            );
        }
    }
}

/// Learner tuning.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningConfig {
    /// Winning increment factor in (0, 1): how hard a win pulls the row
    /// toward the played action.
    pub tau: f64,
    /// Losing decrement factor in (0, 1): how much mass a loss moves from
    /// the played action to silence.
    pub epsilon: f64,
    /// Number of joint play-and-update rounds.
    pub iterations: usize,
    /// Root of all sampling randomness.
    pub seed: Seed,
}

impl Default for LearningConfig {
    fn default() -> Self {
        LearningConfig {
            tau: 0.1,
            epsilon: 0.01,
            iterations: 100,
            seed: Seed::new(0),
        }
    }
}

impl LearningConfig {
    /// Checks the numeric ranges; used by callers that take user input.
    pub fn validate(&self) -> crate::error::Result<()> {
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(crate::error::Error::Config(format!(
                "tau must lie in (0, 1), got {}",
                self.tau
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(crate::error::Error::Config(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.iterations == 0 {
            return Err(crate::error::Error::Config(
                "iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Everything one station is allowed to see after a joint round.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    /// The action this station played.
    pub own_action: Action,
    /// One bit from the chosen user: did the link clear the threshold?
    /// `None` when the station stayed silent (nobody to ask).
    pub feedback: Option<bool>,
    /// The broadcast list of all stations' actions this round.
    pub broadcast: Vec<Action>,
}

/// Runs the joint measurement round: every station's observation under
/// `profile`.
pub fn observe_all(instance: &Instance, profile: &ActionProfile) -> Vec<Observation> {
    assert_eq!(profile.len(), instance.num_sbs, "profile arity");
    let broadcast: Vec<Action> = profile.iter().copied().collect();
    (0..instance.num_sbs)
        .map(|n| {
            let own_action = profile[n];
            let feedback = if own_action.is_silent() {
                None
            } else {
                Some(sinr_of_player(instance, profile, n) >= instance.threshold)
            };
            Observation {
                own_action,
                feedback,
                broadcast: broadcast.clone(),
            }
        })
        .collect()
}

/// The reward a station reads off its own observation: 0 when silent, -1 on
/// a collision (its user appears twice in the broadcast) or failed feedback,
/// +1 on an undisturbed win.
pub fn reward_from_observation(observation: &Observation, station: usize) -> i64 {
    let m = match observation.own_action.user() {
        None => return 0,
        Some(m) => m,
    };
    let collided = observation
        .broadcast
        .iter()
        .enumerate()
        .any(|(j, a)| j != station && a.user() == Some(m));
    if collided {
        return -1;
    }
    match observation.feedback {
        Some(true) => 1,
        Some(false) => -1,
        None => unreachable!("a transmitting station always has feedback"),
    }
}

/// Joint-round reward of station `n`; numerically identical to the
/// silence-enabled game's payoff for every profile.
pub fn reward(instance: &Instance, profile: &ActionProfile, n: usize) -> i64 {
    reward_from_observation(&observe_all(instance, profile)[n], n)
}

/// One win-stay lose-shift row update.
///
/// Win (+1): the played entry moves toward 1 by factor `tau`, everything
/// else shrinks by `1 - tau`. Loss (-1): `min(epsilon, entry)` of mass moves
/// from the played entry to the silent (last) entry, so nothing ever leaves
/// `[0, 1]`. Silence (0): no change. The input row must be stochastic within
/// [`ROW_SUM_TOLERANCE`]; the output sums to 1 within `1e-12` of the input
/// sum.
pub fn update_policy(
    row: &[f64],
    action_column: usize,
    reward: i64,
    tau: f64,
    epsilon: f64,
) -> Vec<f64> {
    assert!(action_column < row.len(), "action column out of range");
    assert!(tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    assert!(
        row.iter().all(|&p| (0.0..=1.0).contains(&p)),
        "row entry outside [0, 1]"
    );
    let sum: f64 = row.iter().sum();
    assert!(
        (sum - 1.0).abs() <= ROW_SUM_TOLERANCE,
        "input row sums to {sum}, not 1"
    );

    let mut out = row.to_vec();
    match reward {
        1 => {
            for (i, p) in out.iter_mut().enumerate() {
                if i == action_column {
                    *p += tau * (1.0 - *p);
                } else {
                    *p *= 1.0 - tau;
                }
            }
        }
        -1 => {
            let transfer = epsilon.min(out[action_column]);
            out[action_column] -= transfer;
            let silent = out.len() - 1;
            out[silent] = (out[silent] + transfer).min(1.0);
        }
        0 => {}
        other => panic!("reward must be -1, 0 or 1, got {other}"),
    }
    out
}

/// One recorded joint round.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// What everyone played.
    pub profile: ActionProfile,
    /// Per-station rewards for that round.
    pub rewards: Vec<i64>,
    /// Sum of the rewards.
    pub welfare: i64,
    /// Whether the played profile is a pure Nash equilibrium of the
    /// silence-enabled game.
    pub is_pne: bool,
}

/// Full record of one learning run.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningTrace {
    /// One record per iteration, in play order.
    pub records: Vec<IterationRecord>,
    /// The policy matrix after the last update.
    pub final_policy: PolicyMatrix,
    /// Deterministic readout of `final_policy` via [`extract_assignment`].
    pub final_profile: ActionProfile,
}

impl LearningTrace {
    /// Fraction of all iterations whose played profile was an equilibrium.
    pub fn pne_fraction(&self) -> f64 {
        let hits = self.records.iter().filter(|r| r.is_pne).count();
        hits as f64 / self.records.len() as f64
    }

    /// Same fraction over the last half of the trace (the window that
    /// matters once the rows have sharpened).
    pub fn late_pne_fraction(&self) -> f64 {
        let from = self.records.len() / 2;
        let window = &self.records[from..];
        let hits = window.iter().filter(|r| r.is_pne).count();
        hits as f64 / window.len() as f64
    }
}

fn sample_row(row: &[f64], rng: &mut ChaCha12Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in row.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    row.len() - 1
}

/// Runs the learner for `config.iterations` joint rounds and records the
/// full trace.
pub fn mwsls_run(instance: &Instance, config: &LearningConfig) -> LearningTrace {
    config
        .validate()
        .expect("learning configuration violates its contract");
    let n_stations = instance.num_sbs;
    let mut policy = PolicyMatrix::uniform(n_stations, instance.num_su);
    let oracle = make_oracle(GameKind::G, instance);
    let mut rng = config.seed.rng();
    let mut records = Vec::with_capacity(config.iterations);

    for _ in 0..config.iterations {
        let actions: Vec<Action> = (0..n_stations)
            .map(|n| policy.action_of(sample_row(policy.row(n), &mut rng)))
            .collect();
        let profile = ActionProfile::new(actions);
        let observations = observe_all(instance, &profile);
        let rewards: Vec<i64> = observations
            .iter()
            .enumerate()
            .map(|(n, obs)| reward_from_observation(obs, n))
            .collect();
        for (n, obs) in observations.iter().enumerate() {
            if obs.own_action.is_silent() {
                continue;
            }
            let column = policy.column_of(obs.own_action);
            policy.rows[n] =
                update_policy(policy.row(n), column, rewards[n], config.tau, config.epsilon);
        }
        let welfare = rewards.iter().sum();
        let is_pne = is_pne(&oracle, &profile);
        records.push(IterationRecord {
            profile,
            rewards,
            welfare,
            is_pne,
        });
    }

    policy.assert_stochastic();
    let final_profile = extract_assignment(&policy);
    LearningTrace {
        records,
        final_policy: policy,
        final_profile,
    }
}

/// Deterministic readout of a policy matrix: each station takes its row's
/// first argmax (users before silence on ties); if two stations pick the
/// same user, the one with the higher row maximum keeps it (lowest station
/// index on a tie) and the rest are silenced.
pub fn extract_assignment(policy: &PolicyMatrix) -> ActionProfile {
    let picks: Vec<(usize, f64)> = (0..policy.num_stations())
        .map(|n| {
            let row = policy.row(n);
            let mut best = 0;
            for (i, &p) in row.iter().enumerate() {
                if p > row[best] {
                    best = i;
                }
            }
            (best, row[best])
        })
        .collect();

    let mut actions: Vec<Action> = picks
        .iter()
        .map(|&(column, _)| policy.action_of(column))
        .collect();
    for m in 0..policy.num_su() {
        let column = policy.column_of(Action::User(m));
        let contenders: Vec<usize> = (0..actions.len())
            .filter(|&n| picks[n].0 == column)
            .collect();
        if contenders.len() < 2 {
            continue;
        }
        let keeper = *contenders
            .iter()
            .max_by(|&&a, &&b| {
                picks[a]
                    .1
                    .partial_cmp(&picks[b].1)
                    .expect("row maxima are never NaN")
                    .then(b.cmp(&a))
            })
            .expect("non-empty contender list");
        for &n in &contenders {
            if n != keeper {
                actions[n] = Action::Silent;
            }
        }
    }
    ActionProfile::new(actions)
}
