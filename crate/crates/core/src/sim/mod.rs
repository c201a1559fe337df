//! Directed bond-percolation Monte-Carlo on generated networks, plus an exact
//! enumeration oracle for tiny graphs.

mod oracle;
mod spread;
mod trials;

pub use oracle::{
    exact_small_graph_oracle, Fixture, MonteCarloEstimate, OracleComparison, OracleResult, ORACLE_MAX_ARCS,
};
pub use spread::{
    assign_masks, epidemic_cutoff, infected_set, slot_uniform, spread_from_seed, MaskAssignment, OutbreakOutcome,
};
pub use trials::{run_trial, run_trials, TrialSeeds, TrialSummary};
