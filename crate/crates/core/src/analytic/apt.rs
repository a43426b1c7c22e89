use crate::analytic::coverage::{coverage_backhaul, coverage_mbs, coverage_sbs};
use crate::error::{Error, Result};
use crate::model::{check_cache, hit_ratio, SystemConfig};
use crate::scalar::Real;

/// Which side of the SBS access/backhaul minimum is smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BindingSide {
    Access,
    Backhaul,
}

/// Coverage probabilities at the rate threshold `γ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageTriple<T> {
    pub sbs: T,
    pub mbs: T,
    pub backhaul: T,
}

/// `λ W log₂(1+γ₀)` for each tier, bits/s/m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateCoefficients<T> {
    /// MBS tier, used for both backhaul and MBS access.
    pub mbs: T,
    pub sbs: T,
}

impl<T: Real> RateCoefficients<T> {
    pub fn new(cfg: &SystemConfig<T>) -> Self {
        let spectral = cfg.bandwidth * (T::one() + cfg.gamma0).log2();
        RateCoefficients {
            mbs: cfg.lambda_m * spectral,
            sbs: cfg.lambda_s * spectral,
        }
    }
}

/// Area throughput split into its terms, bits/s/m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AptBreakdown<T> {
    pub access_sbs_uncached: T,
    pub backhaul_uncached: T,
    pub cached_sbs: T,
    pub mbs_term: T,
    pub total: T,
    pub binding_side: BindingSide,
}

impl<T: Real> AptBreakdown<T> {
    /// SBS-tier throughput.
    pub fn sbs_total(&self) -> T {
        self.access_sbs_uncached.min(self.backhaul_uncached) + self.cached_sbs
    }
}

/// Assembles the throughput terms from coverage values and a hit ratio.
pub fn apt_from_parts<T: Real>(eta: T, hit: T, cov: &CoverageTriple<T>, rates: &RateCoefficients<T>) -> AptBreakdown<T> {
    let miss = T::one() - hit;
    let backhaul_share = T::one() - eta;
    let access_sbs_uncached = miss * rates.sbs * eta * cov.sbs;
    let backhaul_uncached = miss * rates.mbs * backhaul_share * cov.backhaul;
    let cached_sbs = hit * rates.sbs * eta * cov.sbs;
    let mbs_term = rates.mbs * eta * cov.mbs;
    let binding_side = if access_sbs_uncached <= backhaul_uncached {
        BindingSide::Access
    } else {
        BindingSide::Backhaul
    };
    let total = access_sbs_uncached.min(backhaul_uncached) + cached_sbs + mbs_term;
    AptBreakdown {
        access_sbs_uncached,
        backhaul_uncached,
        cached_sbs,
        mbs_term,
        total,
        binding_side,
    }
}

/// Area throughput at spectrum share `eta` and SBS cache size `c`.
pub fn apt<T: Real>(eta: T, c: usize, cfg: &SystemConfig<T>) -> Result<AptBreakdown<T>> {
    if !(eta >= T::zero() && eta <= T::one()) {
        return Err(Error::domain("apt", format!("spectrum share {eta} outside [0, 1]")));
    }
    check_cache(c, cfg)?;
    let cov = CoverageTriple {
        sbs: coverage_sbs(cfg.gamma0, c, cfg)?.value,
        mbs: coverage_mbs(cfg.gamma0, c, cfg)?.value,
        backhaul: coverage_backhaul(cfg.gamma0, cfg)?.value,
    };
    Ok(apt_from_parts(eta, hit_ratio(c, cfg)?, &cov, &RateCoefficients::new(cfg)))
}
