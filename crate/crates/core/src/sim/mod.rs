//! Agent-based simulation: population state, pair selection, the
//! bounded-confidence and evidence rules, and metric snapshots.

pub mod engine;
pub mod metrics;
pub mod population;
pub mod rng;
pub mod run;
pub mod selection;

pub use engine::{attempt_consensus, evidence_update, step, Mode, RegimeConfig, StepReport};
pub use metrics::{snapshot, MetricsSnapshot, PairSample};
pub use population::Population;
pub use run::{run, RunConfig, RunOutput};
pub use selection::{select_pair, SelectionStrategy};
