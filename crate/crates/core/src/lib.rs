//! Mining of frequent gradual patterns ("the more X, the more/less Y") from
//! numerical datasets, with per-attribute gradualness thresholds so that only
//! variations of sufficient magnitude count as an increase or decrease.
//!
//! Two support semantics are provided:
//! - [`Semantics::Graph`]: precedence matrices per gradual item, AND-joined
//!   across a pattern; support is the longest path over the object count.
//! - [`Semantics::Temporal`]: the dataset is recoded into a sign table over
//!   consecutive transitions; support is the fraction of matching
//!   transitions.

pub mod dataset;
pub mod error;
pub mod graph;
pub mod miner;
pub mod pattern;
pub mod support;
pub mod synth;
pub mod temporal;
pub mod thresholds;

pub use dataset::{CsvOptions, Dataset};
pub use error::{Error, Result};
pub use graph::{item_matrix, support_graph, PrecedenceMatrix};
pub use miner::{mine, mine_with_thresholds, MinedPattern, MiningConfig, MiningResult, Semantics};
pub use pattern::{Direction, GradualItem, GradualPattern};
pub use support::Support;
pub use synth::{generate, SynthConfig};
pub use temporal::{
    f_intent, g_extent, is_closed, num2cat, property1_prunable, support_temporal, Sign, SignTable,
    TransitionSet,
};
pub use thresholds::{
    cv_threshold, gap_threshold, sd_threshold, set_thresholds, GapAggregator, ThresholdMode,
    ThresholdVector, UserThresholds,
};
