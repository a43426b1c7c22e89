//! Coverage, area throughput and joint cache/spectrum/power optimization for
//! two-tier mmWave networks whose small cells cache popular files and reach the
//! macro tier over in-band wireless backhaul.
//!
//! Base stations of both tiers form independent Poisson point processes with
//! LOS/NLOS blockage, sectored antennas and Rayleigh fading. [`analytic`]
//! evaluates coverage by numerical integration, [`montecarlo`] estimates the
//! same quantities from sampled networks, and [`optimize`] chooses the spectrum
//! share and cache size that maximize throughput.
//!
//! ```
//! use iabcache::analytic::apt;
//! use iabcache::Config64;
//!
//! let cfg = Config64::default();
//! let b = apt(0.9, 200, &cfg).unwrap();
//! assert!(b.total > 0.0);
//! ```

pub mod analytic;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod optimize;
pub mod quadrature;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Config64 = model::SystemConfig<f64>;
pub type Config32 = model::SystemConfig<f32>;
pub type Coverage64 = analytic::CoverageResult<f64>;
pub type Coverage32 = analytic::CoverageResult<f32>;
