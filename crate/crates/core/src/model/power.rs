//! Power budgets of the two tiers.

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::scalar::Real;

/// Power spent caching `c` files, W.
pub fn cache_power<T: Real>(c: usize, cfg: &SystemConfig<T>) -> T {
    cfg.omega_ca * cfg.file_bits * T::from_usize_lossy(c)
}

/// SBS transmit power when the whole budget is spent: `(P_max - P_fc - ω s C) / ρ`.
pub fn transmit_power_sbs<T: Real>(c: usize, cfg: &SystemConfig<T>) -> Result<T> {
    let p = (cfg.p_s_max - cfg.p_s_fc - cache_power(c, cfg)) / cfg.rho_s;
    if p > T::zero() {
        Ok(p)
    } else {
        Err(Error::InfeasibleCache {
            cache: c,
            detail: format!("SBS transmit power would be {p} W"),
        })
    }
}

/// MBS transmit power; the MBS always stores the full library.
pub fn transmit_power_mbs<T: Real>(cfg: &SystemConfig<T>) -> T {
    (cfg.p_m_max - cfg.p_m_fc - cache_power(cfg.library_size, cfg)) / cfg.rho_m
}

/// Largest cache size allowed by `C_max` that keeps the SBS transmit power positive.
pub fn max_feasible_cache<T: Real>(cfg: &SystemConfig<T>) -> usize {
    let per_file = cfg.omega_ca * cfg.file_bits;
    if per_file <= T::zero() {
        return cfg.c_max;
    }
    let budget = cfg.p_s_max - cfg.p_s_fc;
    if budget <= T::zero() {
        return 0;
    }
    let bound = (budget / per_file).floor();
    let mut c = if bound >= T::from_usize_lossy(cfg.c_max) {
        cfg.c_max
    } else {
        bound.to_usize().unwrap_or(0)
    };
    while c > 0 && transmit_power_sbs(c, cfg).is_err() {
        c -= 1;
    }
    c
}

/// Checks that `c` is within `0..=max_feasible_cache`.
pub fn check_cache<T: Real>(c: usize, cfg: &SystemConfig<T>) -> Result<()> {
    if c > cfg.c_max {
        return Err(Error::InfeasibleCache {
            cache: c,
            detail: format!("exceeds C_max = {}", cfg.c_max),
        });
    }
    transmit_power_sbs(c, cfg).map(|_| ())
}
