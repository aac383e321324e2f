//! Interference-aware user association for dense small-cell networks.
//!
//! The crate models `N` small-cell stations that each pick at most one of `M`
//! users to serve on a shared channel, where simultaneous transmissions
//! interfere. It provides:
//!
//! * [`instance`] — problem data, a random channel generator, JSON IO and
//!   reproducible seeding;
//! * [`sinr`] — link quality under a given choice profile or association
//!   matrix, and feasibility checks;
//! * [`games`] — three one-shot association games over an instance plus
//!   table-backed toy games;
//! * [`equilibria`] — exhaustive pure-equilibrium enumeration and
//!   price-of-anarchy/stability reports;
//! * [`optimal`] — an exact branch-and-bound solver for the maximum number of
//!   simultaneously served users;
//! * [`dynamics`] — randomized best-response dynamics with restarts;
//! * [`learning`] — a fully decentralized win-stay/lose-shift learner;
//! * [`experiments`] — a deterministic sweep harness with CSV output.
//!
//! ```
//! use hetsnet_core::{games, equilibria, instance};
//!
//! let inst = instance::counterexample_instance();
//! let oracle = games::make_oracle(games::GameKind::G, &inst);
//! let report = equilibria::poa_pos(&oracle, equilibria::DEFAULT_ENUMERATION_CAP).unwrap();
//! assert!(report.pne_profiles.is_empty()); // this instance has no pure equilibrium
//! assert_eq!(report.max_welfare, 1);       // yet one link can always be served
//! ```

pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod experiments;
pub mod games;
pub mod instance;
pub mod learning;
pub mod optimal;
pub mod sinr;

pub use dynamics::{best_responses, brd_from, brd_multi, brd_run, BrdConfig, BrdOutcome};
pub use experiments::{
    associated_count, fmt_sig9, paired_diff_stats, run_experiment, ExperimentConfig,
    ExperimentId, Series, SweepResult,
};
pub use equilibria::{find_all_pne, is_pne, poa_pos, EquilibriumReport, DEFAULT_ENUMERATION_CAP};
pub use error::{Error, Result};
pub use games::{
    make_oracle, payoff, payoff_g, payoff_g1, payoff_g2, potential_g1, social_welfare, GameKind,
    InstanceOracle, PayoffOracle, TableOracle,
};
pub use instance::{
    counterexample_instance, db_to_linear, generate_instance, linear_to_db, GeometryConfig,
    Instance, Seed,
};
pub use learning::{
    extract_assignment, mwsls_run, observe_all, reward, reward_from_observation, update_policy,
    IterationRecord, LearningConfig, LearningTrace, Observation, PolicyMatrix,
};
pub use optimal::{exhaustive_optimal, solve_optimal, OptimalSolution, EXHAUSTIVE_CAP};
pub use sinr::{
    is_feasible, matrix_to_profile, profile_to_matrix, sinr_of_link, sinr_of_player, Action,
    ActionProfile, AssociationMatrix,
};
