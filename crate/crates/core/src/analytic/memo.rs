use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use parking_lot::RwLock;
use rayon::prelude::*;

use crate::analytic::apt::CoverageTriple;
use crate::analytic::association::{Destination, LinkBudget};
use crate::analytic::coverage::{coverage, CoverageOptions, CoverageResult};
use crate::error::Result;
use crate::model::{check_cache, SystemConfig};
use crate::scalar::Real;

/// Coverage kinds share the association destinations.
pub type CoverageKind = Destination;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct MemoKey {
    fingerprint: u64,
    dest: Destination,
    gamma_bits: u64,
    cache: usize,
}

/// Hash of every field that coverage depends on; bandwidth, skewness, `C_max`
/// and `γ₀` are left out so sweeps over them reuse entries.
fn fingerprint<T: Real>(cfg: &SystemConfig<T>) -> u64 {
    let mut h = DefaultHasher::new();
    let n = &cfg.numeric;
    for v in [
        cfg.lambda_m,
        cfg.lambda_s,
        cfg.p_m_max,
        cfg.p_s_max,
        cfg.p_m_fc,
        cfg.p_s_fc,
        cfg.rho_m,
        cfg.rho_s,
        cfg.bias_m,
        cfg.bias_s,
        cfg.main_gain,
        cfg.side_gain,
        cfg.theta,
        cfg.a_los,
        cfg.a_nlos,
        cfg.alpha_los,
        cfg.alpha_nlos,
        cfg.beta,
        cfg.noise,
        cfg.file_bits,
        cfg.omega_ca,
        n.quad_rel_tol,
        n.quad_abs_tol,
        n.tail_cutoff,
        n.void_cutoff,
    ] {
        v.as_f64().to_bits().hash(&mut h);
    }
    cfg.library_size.hash(&mut h);
    n.max_subdivisions.hash(&mut h);
    h.finish()
}

/// Thread-safe memo of coverage values keyed by configuration, destination, threshold and cache size.
///
/// Concurrent misses on the same key may compute it twice; both results are identical.
#[derive(Debug, Default)]
pub struct CoverageMemo<T> {
    map: RwLock<HashMap<MemoKey, CoverageResult<T>>>,
}

impl<T: Real> CoverageMemo<T> {
    pub fn new() -> Self {
        CoverageMemo {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coverage(&self, dest: Destination, gamma: T, c: usize, cfg: &SystemConfig<T>) -> Result<CoverageResult<T>> {
        check_cache(c, cfg)?;
        let key = MemoKey {
            fingerprint: fingerprint(cfg),
            dest,
            gamma_bits: gamma.as_f64().to_bits(),
            // backhaul coverage does not involve the SBS cache
            cache: if dest == Destination::SbsToMbsBackhaul { 0 } else { c },
        };
        if let Some(hit) = self.map.read().get(&key) {
            return Ok(*hit);
        }
        let budget = LinkBudget::for_cache(key.cache, cfg)?;
        let value = coverage(dest, gamma, &budget, cfg, CoverageOptions::default())?;
        self.map.write().insert(key, value);
        Ok(value)
    }

    /// SBS, MBS and backhaul coverage at `gamma` for cache size `c`.
    pub fn triple(&self, gamma: T, c: usize, cfg: &SystemConfig<T>) -> Result<CoverageTriple<T>> {
        Ok(CoverageTriple {
            sbs: self.coverage(Destination::UserToSbs, gamma, c, cfg)?.value,
            mbs: self.coverage(Destination::UserToMbs, gamma, c, cfg)?.value,
            backhaul: self.coverage(Destination::SbsToMbsBackhaul, gamma, c, cfg)?.value,
        })
    }

    /// Fills the memo for every cache size in `caches` in parallel.
    pub fn precompute(&self, gamma: T, caches: &[usize], cfg: &SystemConfig<T>) -> Result<()> {
        self.coverage(Destination::SbsToMbsBackhaul, gamma, 0, cfg)?;
        let jobs: Vec<(Destination, usize)> = caches
            .iter()
            .flat_map(|&c| [(Destination::UserToSbs, c), (Destination::UserToMbs, c)])
            .collect();
        jobs.par_iter()
            .try_for_each(|&(dest, c)| self.coverage(dest, gamma, c, cfg).map(|_| ()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memo_returns_direct_values_and_reuses_entries() {
        let cfg = SystemConfig::<f64>::default();
        let memo = CoverageMemo::new();
        let a = memo.coverage(Destination::SbsToMbsBackhaul, 10.0, 0, &cfg).unwrap();
        let b = memo.coverage(Destination::SbsToMbsBackhaul, 10.0, 300, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(memo.len(), 1);
        let direct = crate::analytic::coverage_backhaul(10.0, &cfg).unwrap();
        assert_eq!(a, direct);

        let mut other = cfg.clone();
        other.gamma_p = 1.4;
        other.bandwidth = 1e9;
        memo.coverage(Destination::SbsToMbsBackhaul, 10.0, 0, &other).unwrap();
        assert_eq!(memo.len(), 1);
        other.beta = 3e-3;
        memo.coverage(Destination::SbsToMbsBackhaul, 10.0, 0, &other).unwrap();
        assert_eq!(memo.len(), 2);
    }

    #[test]
    fn parallel_precompute_matches_sequential() {
        let mut cfg = SystemConfig::<f64>::default();
        cfg.numeric.quad_rel_tol = 1e-6;
        let memo = CoverageMemo::new();
        memo.precompute(10.0, &[0, 400, 800], &cfg).unwrap();
        assert_eq!(memo.len(), 7);
        let fresh = CoverageMemo::new();
        for c in [800, 0, 400] {
            assert_eq!(memo.triple(10.0, c, &cfg).unwrap(), fresh.triple(10.0, c, &cfg).unwrap());
        }
    }
}
