//! Exact maximization of the number of simultaneously served users.
//!
//! [`solve_optimal`] runs a depth-first branch-and-bound over stations in
//! index order and is the production solver; [`exhaustive_optimal`] is a
//! deliberately naive enumeration kept as an independent cross-check. Both
//! break ties the same way — users in ascending order before silence, so the
//! reported argmax is the lexicographically first optimum and the two
//! solvers agree exactly.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::sinr::{is_feasible, sinr_of_player, Action, ActionProfile, AssociationMatrix};

/// Profile-count ceiling for the naive cross-check solver.
pub const EXHAUSTIVE_CAP: u64 = 1_000_000;

/// A maximum-cardinality feasible association.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalSolution {
    /// How many users are served simultaneously.
    pub count: usize,
    /// A feasible association attaining `count` links.
    pub assignment: AssociationMatrix,
}

struct Search<'a> {
    instance: &'a Instance,
    /// Working profile; stations at depth >= current are `Silent`.
    profile: ActionProfile,
    used: Vec<bool>,
    best_count: usize,
    best: Vec<Option<usize>>,
}

impl Search<'_> {
    /// All links committed so far still clear the threshold. Adding
    /// transmitters later only shrinks these SINRs, so a failure here dooms
    /// the whole subtree.
    fn committed_links_hold(&self, depth: usize) -> bool {
        (0..=depth).all(|j| {
            self.profile[j].is_silent()
                || sinr_of_player(self.instance, &self.profile, j) >= self.instance.threshold
        })
    }

    fn dfs(&mut self, depth: usize, count: usize) {
        let n_stations = self.instance.num_sbs;
        if depth == n_stations {
            let assignment: Vec<Option<usize>> =
                self.profile.iter().map(|a| a.user()).collect();
            let matrix = AssociationMatrix::from_assignment(&assignment, self.instance.num_su);
            if count > self.best_count && is_feasible(self.instance, &matrix) {
                self.best_count = count;
                self.best = assignment;
            }
            return;
        }
        // Even serving a user from every remaining station cannot beat the
        // incumbent: prune.
        if count + (n_stations - depth) <= self.best_count {
            return;
        }
        for m in 0..self.instance.num_su {
            if self.used[m] {
                continue;
            }
            self.used[m] = true;
            self.profile.set(depth, Action::User(m));
            if self.committed_links_hold(depth) {
                self.dfs(depth + 1, count + 1);
            }
            self.profile.set(depth, Action::Silent);
            self.used[m] = false;
        }
        self.dfs(depth + 1, count);
    }
}

/// Globally maximal number of users servable at once, with an association
/// attaining it.
///
/// Exponential in the worst case; sized for desk-scale inputs (roughly 12
/// stations by 12 users).
pub fn solve_optimal(instance: &Instance) -> OptimalSolution {
    let mut search = Search {
        instance,
        profile: ActionProfile::all_silent(instance.num_sbs),
        used: vec![false; instance.num_su],
        best_count: 0,
        best: vec![None; instance.num_sbs],
    };
    search.dfs(0, 0);
    let assignment = AssociationMatrix::from_assignment(&search.best, instance.num_su);
    debug_assert!(is_feasible(instance, &assignment));
    OptimalSolution {
        count: search.best_count,
        assignment,
    }
}

/// Brute-force reference: walk every collision-free profile, keep the first
/// feasible one of maximal cardinality. Errors when the profile space
/// exceeds [`EXHAUSTIVE_CAP`].
pub fn exhaustive_optimal(instance: &Instance) -> Result<OptimalSolution> {
    let n = instance.num_sbs;
    let m = instance.num_su;
    let space: u128 = ((m + 1) as u128).pow(n as u32);
    if space > EXHAUSTIVE_CAP as u128 {
        return Err(Error::CapExceeded {
            profiles: space,
            cap: EXHAUSTIVE_CAP,
        });
    }

    let mut best_count = 0usize;
    let mut best: Vec<Option<usize>> = vec![None; n];
    // Odometer over per-station choices, users first and silence last, so
    // the scan order matches the branch-and-bound's tie-breaking.
    let mut digits = vec![0usize; n];
    loop {
        let assignment: Vec<Option<usize>> = digits
            .iter()
            .map(|&d| if d < m { Some(d) } else { None })
            .collect();
        let collision_free = {
            let mut seen = vec![false; m];
            assignment.iter().flatten().all(|&u| {
                let fresh = !seen[u];
                seen[u] = true;
                fresh
            })
        };
        if collision_free {
            let count = assignment.iter().flatten().count();
            if count > best_count {
                let matrix = AssociationMatrix::from_assignment(&assignment, m);
                if is_feasible(instance, &matrix) {
                    best_count = count;
                    best = assignment;
                }
            }
        }
        // Advance, last station fastest.
        let mut p = n;
        loop {
            if p == 0 {
                return Ok(OptimalSolution {
                    count: best_count,
                    assignment: AssociationMatrix::from_assignment(&best, m),
                });
            }
            p -= 1;
            digits[p] += 1;
            if digits[p] <= m {
                break;
            }
            digits[p] = 0;
        }
    }
}
