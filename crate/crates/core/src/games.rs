//! One-shot association games over an instance, plus table-backed games.
//!
//! All three instance-backed games share the players (the stations) and pay
//! in exact integers; they differ in the action sets and in how failures are
//! priced:
//!
//! * [`GameKind::G1`] — every station must pick a user; the payoff is `1`
//!   when the station's own SINR meets the threshold and `-1` otherwise.
//!   Collisions are not priced, so payoffs depend only on a station's own
//!   action, which makes the welfare sum an exact potential.
//! * [`GameKind::G2`] — like `G1`, but targeting a user someone else also
//!   targets costs `-2`, below every other outcome.
//! * [`GameKind::G`] — stations may also stay [`Action::Silent`] for payoff
//!   `0`; transmitting pays `1` when the link clears the threshold and is
//!   collision-free, `-1` otherwise. Silent stations do not interfere.
//!
//! [`PayoffOracle`] abstracts over these and over explicit payoff tables so
//! equilibrium search and dynamics can run on either.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::sinr::{sinr_of_player, Action, ActionProfile};

/// Which payoff rule an instance-backed game uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameKind {
    /// Mandatory transmission, SINR-only payoffs.
    G1,
    /// Mandatory transmission, collisions priced at -2.
    G2,
    /// Silence allowed; collisions and SINR failures both price at -1.
    G,
}

impl GameKind {
    /// Whether the action set includes [`Action::Silent`].
    pub fn allows_silence(self) -> bool {
        matches!(self, GameKind::G)
    }
}

fn assert_profile_shape(instance: &Instance, profile: &ActionProfile, n: usize) {
    assert_eq!(
        profile.len(),
        instance.num_sbs,
        "profile covers {} stations but the instance has {}",
        profile.len(),
        instance.num_sbs
    );
    assert!(n < instance.num_sbs, "station index {n} out of range");
}

fn has_collision(profile: &ActionProfile, n: usize) -> bool {
    if let Some(m) = profile[n].user() {
        profile
            .iter()
            .enumerate()
            .any(|(j, a)| j != n && a.user() == Some(m))
    } else {
        false
    }
}

/// Payoff of station `n` in the mandatory-transmission game without
/// collision pricing. Panics if any station in `profile` is silent.
pub fn payoff_g1(instance: &Instance, profile: &ActionProfile, n: usize) -> i64 {
    assert_profile_shape(instance, profile, n);
    assert!(
        profile.iter().all(|a| !a.is_silent()),
        "this game has no silent action"
    );
    if sinr_of_player(instance, profile, n) >= instance.threshold {
        1
    } else {
        -1
    }
}

/// Payoff of station `n` in the mandatory-transmission game where targeting
/// an already-targeted user costs -2. Panics if any station is silent.
pub fn payoff_g2(instance: &Instance, profile: &ActionProfile, n: usize) -> i64 {
    assert_profile_shape(instance, profile, n);
    assert!(
        profile.iter().all(|a| !a.is_silent()),
        "this game has no silent action"
    );
    if has_collision(profile, n) {
        -2
    } else if sinr_of_player(instance, profile, n) >= instance.threshold {
        1
    } else {
        -1
    }
}

/// Payoff of station `n` in the silence-enabled game: `0` when silent, `1`
/// for a collision-free link meeting the threshold, `-1` otherwise.
pub fn payoff_g(instance: &Instance, profile: &ActionProfile, n: usize) -> i64 {
    assert_profile_shape(instance, profile, n);
    if profile[n].is_silent() {
        return 0;
    }
    if has_collision(profile, n) {
        return -1;
    }
    if sinr_of_player(instance, profile, n) >= instance.threshold {
        1
    } else {
        -1
    }
}

/// Dispatch on [`GameKind`].
pub fn payoff(kind: GameKind, instance: &Instance, profile: &ActionProfile, n: usize) -> i64 {
    match kind {
        GameKind::G1 => payoff_g1(instance, profile, n),
        GameKind::G2 => payoff_g2(instance, profile, n),
        GameKind::G => payoff_g(instance, profile, n),
    }
}

/// Exact potential of the SINR-only game: the sum of all payoffs.
///
/// Because a station's `G1` payoff depends only on its own action (everyone
/// else transmits no matter what), a unilateral deviation changes this sum by
/// exactly the deviator's payoff change.
pub fn potential_g1(instance: &Instance, profile: &ActionProfile) -> i64 {
    (0..instance.num_sbs)
        .map(|n| payoff_g1(instance, profile, n))
        .sum()
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Uniform interface over game forms: players, ordered action sets, payoffs.
///
/// The order of [`PayoffOracle::actions`] defines the lexicographic order
/// used by enumeration and the sampling order used by dynamics, so it must be
/// stable.
pub trait PayoffOracle {
    fn num_players(&self) -> usize;

    /// Ordered action set of `player`; non-empty.
    fn actions(&self, player: usize) -> &[Action];

    /// Exact integer payoff of `player` under `profile`.
    fn payoff(&self, profile: &ActionProfile, player: usize) -> i64;
}

/// Total welfare: the sum of all players' payoffs.
pub fn social_welfare<O: PayoffOracle + ?Sized>(oracle: &O, profile: &ActionProfile) -> i64 {
    (0..oracle.num_players())
        .map(|n| oracle.payoff(profile, n))
        .sum()
}

/// A [`PayoffOracle`] view of one instance-backed game.
#[derive(Debug, Clone)]
pub struct InstanceOracle<'a> {
    kind: GameKind,
    instance: &'a Instance,
    actions: Vec<Action>,
}

impl<'a> InstanceOracle<'a> {
    pub fn new(kind: GameKind, instance: &'a Instance) -> Self {
        let mut actions: Vec<Action> = (0..instance.num_su).map(Action::User).collect();
        if kind.allows_silence() {
            actions.push(Action::Silent);
        }
        InstanceOracle {
            kind,
            instance,
            actions,
        }
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }
}

impl PayoffOracle for InstanceOracle<'_> {
    fn num_players(&self) -> usize {
        self.instance.num_sbs
    }

    fn actions(&self, _player: usize) -> &[Action] {
        &self.actions
    }

    fn payoff(&self, profile: &ActionProfile, player: usize) -> i64 {
        payoff(self.kind, self.instance, profile, player)
    }
}

/// Convenience constructor matching the other module-level operations.
pub fn make_oracle(kind: GameKind, instance: &Instance) -> InstanceOracle<'_> {
    InstanceOracle::new(kind, instance)
}

/// A game given by explicit per-profile payoff rows.
///
/// `payoffs` is indexed by the flat profile index (row-major over the action
/// sets, player 0 most significant) and holds one payoff per player.
#[derive(Debug, Clone)]
pub struct TableOracle {
    action_sets: Vec<Vec<Action>>,
    payoffs: Vec<Vec<i64>>,
}

impl TableOracle {
    pub fn new(action_sets: Vec<Vec<Action>>, payoffs: Vec<Vec<i64>>) -> Result<Self> {
        if action_sets.is_empty() {
            return Err(Error::Config("a game needs at least one player".into()));
        }
        let mut expected: usize = 1;
        for (p, set) in action_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::Config(format!("player {p} has an empty action set")));
            }
            for (i, a) in set.iter().enumerate() {
                if set[..i].contains(a) {
                    return Err(Error::Config(format!(
                        "player {p} lists action {a} twice"
                    )));
                }
            }
            expected = expected.checked_mul(set.len()).ok_or_else(|| {
                Error::Config("profile space overflows a usize".into())
            })?;
        }
        if payoffs.len() != expected {
            return Err(Error::Dimension(format!(
                "{} payoff rows for {} profiles",
                payoffs.len(),
                expected
            )));
        }
        let players = action_sets.len();
        for (i, row) in payoffs.iter().enumerate() {
            if row.len() != players {
                return Err(Error::Dimension(format!(
                    "payoff row {i} has {} entries for {players} players",
                    row.len()
                )));
            }
        }
        Ok(TableOracle {
            action_sets,
            payoffs,
        })
    }

    fn flat_index(&self, profile: &ActionProfile) -> usize {
        assert_eq!(profile.len(), self.action_sets.len(), "profile arity");
        let mut idx = 0;
        for (p, set) in self.action_sets.iter().enumerate() {
            let pos = set
                .iter()
                .position(|a| *a == profile[p])
                .unwrap_or_else(|| {
                    panic!("action {} is not in player {p}'s action set", profile[p])
                });
            idx = idx * set.len() + pos;
        }
        idx
    }
}

impl PayoffOracle for TableOracle {
    fn num_players(&self) -> usize {
        self.action_sets.len()
    }

    fn actions(&self, player: usize) -> &[Action] {
        &self.action_sets[player]
    }

    fn payoff(&self, profile: &ActionProfile, player: usize) -> i64 {
        self.payoffs[self.flat_index(profile)][player]
    }
}
