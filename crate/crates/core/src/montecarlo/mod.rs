//! System-level simulation of the network, used as an independent oracle.
//!
//! BS locations are Poisson in a disc centred on the probe; every link to the
//! probe draws its own path state, Rayleigh fading and antenna gain class.
//! Association uses mean biased power; SINR uses the sampled fading.

mod estimate;
mod realization;

pub use estimate::{
    empirical_apt, empirical_apt_from_run, empirical_association, empirical_coverage, empirical_noise_limited,
    simulate, EmpiricalEstimate, LinkOutcome, SimulationRun, Z_99,
};
pub use realization::{
    associate, max_snr, realization_rng, sample_realization, sinr, Association, BsPoint, NetworkRealization,
    ProbeKind,
};
