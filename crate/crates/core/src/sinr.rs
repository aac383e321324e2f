//! Link quality under a choice profile or an association matrix.
//!
//! A station's action is either a user index or silence. The SINR of station
//! `n` serving user `m` divides its received power `p_n * gain[m][n]` by the
//! noise floor at `m` plus the interference from every other station that is
//! currently transmitting — regardless of which user that station serves,
//! since all transmissions share the channel.
//!
//! The same quantity can be read off an [`AssociationMatrix`], the 0/1 matrix
//! `x` with `x[m][n] = 1` when station `n` serves user `m`, at most one entry
//! per row and per column. Both views are kept arithmetically identical
//! (same terms, same summation order), so threshold comparisons never
//! disagree between them.

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// What one station does in a one-shot play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// Serve the user with this index.
    User(usize),
    /// Stay off the channel.
    Silent,
}

impl Action {
    /// The targeted user, if any.
    pub fn user(self) -> Option<usize> {
        match self {
            Action::User(m) => Some(m),
            Action::Silent => None,
        }
    }

    pub fn is_silent(self) -> bool {
        matches!(self, Action::Silent)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::User(m) => write!(f, "u{m}"),
            Action::Silent => write!(f, "s"),
        }
    }
}

/// One action per station, indexed by station.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionProfile {
    pub actions: Vec<Action>,
}

impl ActionProfile {
    pub fn new(actions: Vec<Action>) -> Self {
        ActionProfile { actions }
    }

    /// Profile in which station `i` serves `users[i]`.
    pub fn from_users(users: &[usize]) -> Self {
        ActionProfile {
            actions: users.iter().map(|&m| Action::User(m)).collect(),
        }
    }

    /// Profile in which every station is silent.
    pub fn all_silent(num_sbs: usize) -> Self {
        ActionProfile {
            actions: vec![Action::Silent; num_sbs],
        }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Action> {
        self.actions.iter()
    }

    pub fn set(&mut self, station: usize, action: Action) {
        self.actions[station] = action;
    }
}

impl std::ops::Index<usize> for ActionProfile {
    type Output = Action;
    fn index(&self, station: usize) -> &Action {
        &self.actions[station]
    }
}

impl From<Vec<Action>> for ActionProfile {
    fn from(actions: Vec<Action>) -> Self {
        ActionProfile { actions }
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.actions.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// SINR seen by station `n` under `profile`.
///
/// # Panics
///
/// If dimensions disagree with `instance`, if any targeted user index is out
/// of range, or if station `n` is silent (a silent station has no link, so
/// the query is a contract violation).
pub fn sinr_of_player(instance: &Instance, profile: &ActionProfile, n: usize) -> f64 {
    assert_eq!(
        profile.len(),
        instance.num_sbs,
        "profile covers {} stations but the instance has {}",
        profile.len(),
        instance.num_sbs
    );
    assert!(n < instance.num_sbs, "station index {n} out of range");
    let m = profile[n]
        .user()
        .unwrap_or_else(|| panic!("station {n} is silent and has no SINR"));
    assert!(m < instance.num_su, "user index {m} out of range");

    let signal = instance.power[n] * instance.gain[m][n];
    let mut denom = instance.noise[m];
    for (j, action) in profile.iter().enumerate() {
        if j != n {
            if let Some(target) = action.user() {
                assert!(target < instance.num_su, "user index {target} out of range");
                denom += instance.power[j] * instance.gain[m][j];
            }
        }
    }
    signal / denom
}

/// Boolean association matrix: `num_su` rows, `num_sbs` columns, at most one
/// set cell per row and per column. Construction enforces the invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationMatrix {
    num_su: usize,
    num_sbs: usize,
    cells: Vec<bool>, // row-major, index m * num_sbs + n
}

impl AssociationMatrix {
    /// The empty association.
    pub fn zeros(num_su: usize, num_sbs: usize) -> Self {
        AssociationMatrix {
            num_su,
            num_sbs,
            cells: vec![false; num_su * num_sbs],
        }
    }

    /// Validate and wrap an explicit 0/1 matrix (rows indexed by user).
    pub fn try_new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let num_su = rows.len();
        let num_sbs = rows.first().map_or(0, Vec::len);
        for (m, row) in rows.iter().enumerate() {
            if row.len() != num_sbs {
                return Err(Error::Dimension(format!(
                    "row {m} has {} entries, expected {num_sbs}",
                    row.len()
                )));
            }
            if row.iter().filter(|&&v| v).count() > 1 {
                return Err(Error::Instance(format!(
                    "user {m} is served by more than one station"
                )));
            }
        }
        for n in 0..num_sbs {
            if rows.iter().filter(|row| row[n]).count() > 1 {
                return Err(Error::Instance(format!(
                    "station {n} serves more than one user"
                )));
            }
        }
        Ok(AssociationMatrix {
            num_su,
            num_sbs,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from a per-station assignment (`assigned[n]` is the user served
    /// by station `n`). Used by solvers that already guarantee distinctness.
    pub(crate) fn from_assignment(assigned: &[Option<usize>], num_su: usize) -> Self {
        let num_sbs = assigned.len();
        let mut x = AssociationMatrix::zeros(num_su, num_sbs);
        for (n, slot) in assigned.iter().enumerate() {
            if let Some(m) = *slot {
                debug_assert!(!x.cells[m * num_sbs + n]);
                x.cells[m * num_sbs + n] = true;
            }
        }
        debug_assert!(x.check_sums());
        x
    }

    fn check_sums(&self) -> bool {
        (0..self.num_su).all(|m| self.row_count(m) <= 1)
            && (0..self.num_sbs).all(|n| self.col_count(n) <= 1)
    }

    fn row_count(&self, m: usize) -> usize {
        (0..self.num_sbs).filter(|&n| self.get(m, n)).count()
    }

    fn col_count(&self, n: usize) -> usize {
        (0..self.num_su).filter(|&m| self.get(m, n)).count()
    }

    pub fn num_su(&self) -> usize {
        self.num_su
    }

    pub fn num_sbs(&self) -> usize {
        self.num_sbs
    }

    pub fn get(&self, m: usize, n: usize) -> bool {
        self.cells[m * self.num_sbs + n]
    }

    /// User served by station `n`, if any.
    pub fn user_of(&self, n: usize) -> Option<usize> {
        (0..self.num_su).find(|&m| self.get(m, n))
    }

    /// All set cells as `(user, station)` pairs, in station order.
    pub fn links(&self) -> Vec<(usize, usize)> {
        (0..self.num_sbs)
            .filter_map(|n| self.user_of(n).map(|m| (m, n)))
            .collect()
    }

    /// Number of served users (the objective of the association problem).
    pub fn count_links(&self) -> usize {
        self.cells.iter().filter(|&&v| v).count()
    }
}

/// SINR of the link `(m, n)` under matrix `x`; zero when the link is unset.
///
/// Interference sums over every other set link, i.e. over all stations
/// transmitting to some user other than via cell `(m, n)` itself.
///
/// # Panics
///
/// If `x`'s dimensions disagree with `instance` or indices are out of range.
pub fn sinr_of_link(instance: &Instance, x: &AssociationMatrix, m: usize, n: usize) -> f64 {
    assert_eq!(x.num_sbs(), instance.num_sbs, "matrix/instance station count");
    assert_eq!(x.num_su(), instance.num_su, "matrix/instance user count");
    assert!(m < instance.num_su, "user index {m} out of range");
    assert!(n < instance.num_sbs, "station index {n} out of range");

    if !x.get(m, n) {
        return 0.0;
    }
    let signal = instance.power[n] * instance.gain[m][n];
    // Each column holds at most one set cell, so scanning stations in index
    // order visits the same interference terms, in the same order, as the
    // profile-based view above.
    let mut denom = instance.noise[m];
    for j in 0..instance.num_sbs {
        if j != n && x.user_of(j).is_some_and(|target| target != m) {
            denom += instance.power[j] * instance.gain[m][j];
        }
    }
    signal / denom
}

/// Does `x` serve every one of its links at or above the instance threshold?
///
/// Checks the row/column uniqueness constraints (already guaranteed for any
/// constructed [`AssociationMatrix`], re-verified defensively) and then the
/// SINR of every set link. Threshold comparisons are `>=` with no slack, so a
/// link exactly at the threshold counts as served.
pub fn is_feasible(instance: &Instance, x: &AssociationMatrix) -> bool {
    assert_eq!(x.num_sbs(), instance.num_sbs, "matrix/instance station count");
    assert_eq!(x.num_su(), instance.num_su, "matrix/instance user count");
    if !x.check_sums() {
        return false;
    }
    x.links()
        .into_iter()
        .all(|(m, n)| sinr_of_link(instance, x, m, n) >= instance.threshold)
}

/// Convert a collision-free profile into the equivalent matrix.
///
/// Silent stations contribute empty columns. If two stations target the same
/// user the profile has no matrix representation and the lowest-index
/// colliding pair is reported.
pub fn profile_to_matrix(profile: &ActionProfile, num_su: usize) -> Result<AssociationMatrix> {
    let num_sbs = profile.len();
    let mut owner: Vec<Option<usize>> = vec![None; num_su];
    let mut assigned: Vec<Option<usize>> = vec![None; num_sbs];
    for (n, action) in profile.iter().enumerate() {
        if let Some(m) = action.user() {
            if m >= num_su {
                return Err(Error::Dimension(format!(
                    "station {n} targets user {m} but only {num_su} users exist"
                )));
            }
            if let Some(first) = owner[m] {
                return Err(Error::Collision {
                    first,
                    second: n,
                    user: m,
                });
            }
            owner[m] = Some(n);
            assigned[n] = Some(m);
        }
    }
    Ok(AssociationMatrix::from_assignment(&assigned, num_su))
}

/// Inverse of [`profile_to_matrix`]: empty columns become [`Action::Silent`].
pub fn matrix_to_profile(x: &AssociationMatrix) -> ActionProfile {
    ActionProfile {
        actions: (0..x.num_sbs())
            .map(|n| x.user_of(n).map_or(Action::Silent, Action::User))
            .collect(),
    }
}
