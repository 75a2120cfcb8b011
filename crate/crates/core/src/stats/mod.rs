//! Exact enumeration for small orders, Monte Carlo estimation for large ones,
//! and bound reports over both.

pub mod enumerate;
pub mod mc;
pub mod plug_stats;
pub mod report;

pub use enumerate::{enumerate_diagrams, enumerate_partial_diagrams, exact_stats, ExactStats};
pub use mc::{mc_accumulate, mc_stats, sample_seed, Estimate, McAccumulator, McStats};
pub use plug_stats::{plug_mc_stats, PlugRow, PlugStats};
pub use report::{
    exact_report, growth_report, plug_report, sample_report, BoundReport, BoundRow, Status,
};
