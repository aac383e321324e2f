//! Exhaustive pure-equilibrium enumeration and efficiency ratios.
//!
//! Profiles are indexed lexicographically (player 0 most significant, each
//! player's actions in oracle order), so every result here is reproducible:
//! [`find_all_pne`] returns the equilibrium set in that order, and
//! [`poa_pos`] breaks welfare ties toward the lowest profile index. The
//! enumeration work is partitioned across threads, but the only shared
//! writes are commutative bit-clears, so parallel and serial runs produce
//! identical output.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::games::PayoffOracle;
use crate::sinr::ActionProfile;

pub use crate::games::social_welfare;

/// Default ceiling on the number of profiles exhaustive search will visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// The outcome of enumerating a game: its pure equilibria and how their
/// welfare compares to the best any profile achieves.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    /// All pure Nash equilibria, in lexicographic profile order.
    pub pne_profiles: Vec<ActionProfile>,
    /// Social welfare of each equilibrium, aligned with `pne_profiles`.
    pub welfare_per_pne: Vec<i64>,
    /// The highest social welfare any profile achieves.
    pub max_welfare: i64,
    /// The lexicographically first profile attaining `max_welfare`.
    pub best_profile: ActionProfile,
    /// Worst equilibrium welfare over best profile welfare; `None` when no
    /// equilibrium exists.
    pub poa: Option<f64>,
    /// Best equilibrium welfare over best profile welfare; `None` when no
    /// equilibrium exists.
    pub pos: Option<f64>,
}

/// Mixed-radix view of a game's profile space.
struct ProfileSpace<'o, O: ?Sized> {
    oracle: &'o O,
    counts: Vec<usize>,
    /// `strides[p]` = number of profiles between consecutive actions of
    /// player `p` at fixed other coordinates.
    strides: Vec<usize>,
    total: usize,
}

impl<'o, O: PayoffOracle + ?Sized> ProfileSpace<'o, O> {
    fn new(oracle: &'o O, cap: u64) -> Result<Self> {
        let players = oracle.num_players();
        let counts: Vec<usize> = (0..players).map(|p| oracle.actions(p).len()).collect();
        assert!(
            counts.iter().all(|&c| c > 0),
            "every player needs at least one action"
        );
        let mut total: u128 = 1;
        for &c in &counts {
            total *= c as u128;
            if total > cap as u128 {
                // Keep multiplying in u128 would be pointless; report the
                // bound check with the honest (possibly partial) product.
                let full: u128 = counts.iter().map(|&c| c as u128).product();
                return Err(Error::CapExceeded {
                    profiles: full,
                    cap,
                });
            }
        }
        let total = total as usize;
        let mut strides = vec![1usize; players];
        for p in (0..players.saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * counts[p + 1];
        }
        Ok(ProfileSpace {
            oracle,
            counts,
            strides,
            total,
        })
    }

    fn decode(&self, index: usize) -> ActionProfile {
        let actions = self
            .counts
            .iter()
            .enumerate()
            .map(|(p, &c)| self.oracle.actions(p)[(index / self.strides[p]) % c])
            .collect();
        ActionProfile::new(actions)
    }
}

/// Whether `profile` is a pure Nash equilibrium: no player can strictly
/// improve its payoff by switching actions while everyone else stays put.
pub fn is_pne<O: PayoffOracle + ?Sized>(oracle: &O, profile: &ActionProfile) -> bool {
    assert_eq!(
        profile.len(),
        oracle.num_players(),
        "profile arity does not match the game"
    );
    let mut scratch = profile.clone();
    for p in 0..oracle.num_players() {
        let current = oracle.payoff(profile, p);
        for &alt in oracle.actions(p) {
            if alt == profile[p] {
                continue;
            }
            scratch.set(p, alt);
            let improved = oracle.payoff(&scratch, p) > current;
            scratch.set(p, profile[p]);
            if improved {
                return false;
            }
        }
    }
    true
}

/// Every pure Nash equilibrium of the game, in lexicographic profile order.
///
/// Visits each player's deviation fibers once, so the total work is one
/// payoff evaluation per (profile, player) pair. Fails with
/// [`Error::CapExceeded`] when the profile space is larger than `cap`.
pub fn find_all_pne<O: PayoffOracle + Sync + ?Sized>(
    oracle: &O,
    cap: u64,
) -> Result<Vec<ActionProfile>> {
    let space = ProfileSpace::new(oracle, cap)?;
    let total = space.total;

    // One bit per profile; a set bit means "still possibly an equilibrium".
    let words: Vec<AtomicU64> = (0..total.div_ceil(64)).map(|_| AtomicU64::new(!0)).collect();

    for p in 0..oracle.num_players() {
        let count = space.counts[p];
        let stride = space.strides[p];
        let fibers = total / count;
        (0..fibers).into_par_iter().for_each(|outer| {
            let hi = outer / stride;
            let lo = outer % stride;
            let base = hi * stride * count + lo;
            let mut profile = space.decode(base);
            let mut payoffs = Vec::with_capacity(count);
            for k in 0..count {
                profile.set(p, oracle.actions(p)[k]);
                payoffs.push(oracle.payoff(&profile, p));
            }
            let best = *payoffs.iter().max().expect("non-empty action set");
            for (k, &pay) in payoffs.iter().enumerate() {
                if pay < best {
                    // Player p would deviate here; this profile is out. The
                    // clears commute, so thread scheduling cannot matter.
                    let idx = base + k * stride;
                    words[idx / 64].fetch_and(!(1u64 << (idx % 64)), Ordering::Relaxed);
                }
            }
        });
    }

    let mut out = Vec::new();
    for idx in 0..total {
        if words[idx / 64].load(Ordering::Relaxed) & (1u64 << (idx % 64)) != 0 {
            out.push(space.decode(idx));
        }
    }
    Ok(out)
}

/// Enumerates the game and reports its equilibria together with the price of
/// anarchy and price of stability.
///
/// Ratios are `None` when no equilibrium exists. When the best achievable
/// welfare is zero and equilibria do exist, both ratios are reported as `1`:
/// every profile is then socially optimal, so no efficiency is lost.
pub fn poa_pos<O: PayoffOracle + Sync + ?Sized>(oracle: &O, cap: u64) -> Result<EquilibriumReport> {
    let pne_profiles = find_all_pne(oracle, cap)?;
    let welfare_per_pne: Vec<i64> = pne_profiles
        .iter()
        .map(|profile| social_welfare(oracle, profile))
        .collect();

    let space = ProfileSpace::new(oracle, cap)?;
    let (max_welfare, best_index) = (0..space.total)
        .into_par_iter()
        .map(|idx| (social_welfare(oracle, &space.decode(idx)), idx))
        .reduce(
            || (i64::MIN, usize::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let best_profile = space.decode(best_index);

    let (poa, pos) = if pne_profiles.is_empty() {
        (None, None)
    } else if max_welfare == 0 {
        (Some(1.0), Some(1.0))
    } else {
        let worst = *welfare_per_pne.iter().min().expect("non-empty") as f64;
        let best = *welfare_per_pne.iter().max().expect("non-empty") as f64;
        (
            Some(worst / max_welfare as f64),
            Some(best / max_welfare as f64),
        )
    };

    Ok(EquilibriumReport {
        pne_profiles,
        welfare_per_pne,
        max_welfare,
        best_profile,
        poa,
        pos,
    })
}
