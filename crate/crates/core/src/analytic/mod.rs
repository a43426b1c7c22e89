//! Stochastic-geometry evaluation of association, interference, coverage and throughput.
//!
//! Distances are in metres and every density is per metre of link distance.
//! All integrals are computed by adaptive Gauss–Kronrod quadrature; coverage
//! values carry the quadrature error estimate and evaluation count.

mod apt;
mod association;
mod coverage;
mod distance;
mod dump;
mod laplace;
mod memo;
mod noise_limited;

pub use apt::{apt, apt_from_parts, AptBreakdown, BindingSide, CoverageTriple, RateCoefficients};
pub use association::{
    association_density, association_probability, exclusion_radius, void_exponent, Destination, LinkBudget,
};
pub use coverage::{
    coverage, coverage_backhaul, coverage_mbs, coverage_sbs, CoverageOptions, CoverageResult,
};
pub use distance::nearest_distance_pdf;
pub use dump::{integrand_samples, write_integrand_samples, IntegrandSample};
pub use laplace::{laplace_interference, laplace_tier_exponents, TierExponent};
pub use memo::{CoverageKind, CoverageMemo};
pub use noise_limited::{coverage_noise_limited, coverage_noise_limited_direct};
