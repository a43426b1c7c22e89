//! Throughput maximization over spectrum share, SBS cache size and SBS power.
//!
//! The SBS always spends its whole power budget, so the cache size fixes the
//! transmit power. The spectrum share is optimized in closed form for a given
//! cache, the cache by a genetic search for a given share, and the two steps
//! alternate until the throughput stops improving.

mod bcd;
mod ga;
mod problem;

pub use bcd::{baseline, baseline_with, jcspa, jcspa_with, BaselineKind, JcspaOptions, OptimizationState, SolveResult};
pub use ga::{exhaustive_cache, gcdpa, GaOutcome, GaParams};
pub use problem::{Evaluator, SpectrumBounds};
