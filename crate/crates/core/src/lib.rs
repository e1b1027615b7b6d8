//! Consensus formation among agents whose beliefs are both vague and
//! uncertain.
//!
//! Beliefs are vectors of `(lower, upper)` pairs over a three-valued truth
//! model. [`consensus_belief`] merges two beliefs, [`measures`] scores them,
//! and [`sim`] runs populations of agents that merge under bounded confidence,
//! optionally receiving evidence about a hidden Boolean world or choosing
//! partners by belief quality.

pub mod belief;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod sim;
pub mod truth;
pub mod verify;

pub use belief::{consensus_belief, BeliefPair, BeliefState};
pub use error::{Error, Result};
pub use measures::{entropy, inconsistency, payoff, vagueness};
pub use oracle::{consensus_belief_enum_oracle, ds_union_combine_oracle, MassFunction};
pub use truth::{consensus_truth, consensus_valuation, TruthValue, Valuation};
