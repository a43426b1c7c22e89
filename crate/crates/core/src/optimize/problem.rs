use crate::analytic::{apt_from_parts, AptBreakdown, CoverageMemo, CoverageTriple, RateCoefficients};
use crate::error::{Error, Result};
use crate::model::{max_feasible_cache, CachePolicy, HitRatioModel, SystemConfig};

/// Throughput evaluator over the feasible cache sizes, with coverage precomputed.
#[derive(Debug, Clone)]
pub struct Evaluator {
    cfg: SystemConfig<f64>,
    hits: HitRatioModel<f64>,
    rates: RateCoefficients<f64>,
    coverage: Vec<CoverageTriple<f64>>,
}

impl Evaluator {
    /// Computes (or reuses from `memo`) the coverage of every cache size in `0..=max_feasible_cache`.
    pub fn new(cfg: &SystemConfig<f64>, policy: CachePolicy, memo: &CoverageMemo<f64>) -> Result<Self> {
        let caches: Vec<usize> = (0..=max_feasible_cache(cfg)).collect();
        memo.precompute(cfg.gamma0, &caches, cfg)?;
        let coverage = caches
            .iter()
            .map(|&c| memo.triple(cfg.gamma0, c, cfg))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coverage(cfg, policy, coverage))
    }

    /// Builds an evaluator from externally supplied coverage values, indexed by cache size.
    pub fn from_coverage(cfg: &SystemConfig<f64>, policy: CachePolicy, coverage: Vec<CoverageTriple<f64>>) -> Self {
        Evaluator {
            cfg: cfg.clone(),
            hits: HitRatioModel::new(cfg, policy),
            rates: RateCoefficients::new(cfg),
            coverage,
        }
    }

    pub fn config(&self) -> &SystemConfig<f64> {
        &self.cfg
    }

    pub fn policy(&self) -> CachePolicy {
        self.hits.policy()
    }

    /// Largest cache size the evaluator covers.
    pub fn max_cache(&self) -> usize {
        self.coverage.len() - 1
    }

    pub fn rates(&self) -> &RateCoefficients<f64> {
        &self.rates
    }

    fn check(&self, c: usize) -> Result<()> {
        if c > self.max_cache() {
            return Err(Error::InfeasibleCache {
                cache: c,
                detail: format!("largest feasible cache is {}", self.max_cache()),
            });
        }
        Ok(())
    }

    pub fn coverage(&self, c: usize) -> Result<CoverageTriple<f64>> {
        self.check(c)?;
        Ok(self.coverage[c])
    }

    pub fn hit_ratio(&self, c: usize) -> Result<f64> {
        self.hits.hit_ratio(c)
    }

    pub fn breakdown(&self, eta: f64, c: usize) -> Result<AptBreakdown<f64>> {
        self.check(c)?;
        Ok(apt_from_parts(eta, self.hit_ratio(c)?, &self.coverage[c], &self.rates))
    }

    pub fn apt(&self, eta: f64, c: usize) -> Result<f64> {
        Ok(self.breakdown(eta, c)?.total)
    }

    /// The two linear bounds whose minimum is the throughput.
    pub fn fitness_terms(&self, c: usize, eta: f64) -> Result<(f64, f64)> {
        self.check(c)?;
        let bounds = SpectrumBounds::new(self.hit_ratio(c)?, &self.coverage[c], &self.rates);
        Ok((bounds.f1(eta), bounds.f2(eta)))
    }

    /// Optimal spectrum share for cache size `c`; returns `(η*, Y*)`.
    pub fn solve_spectrum_partition(&self, c: usize) -> Result<(f64, f64)> {
        self.check(c)?;
        Ok(SpectrumBounds::new(self.hit_ratio(c)?, &self.coverage[c], &self.rates).solve())
    }
}

/// `f1(η) = A₁(1-h)(1-η)P_bh + A₂hηP_s + A₃ηP_m` and `f2(η) = A₂ηP_s + A₃ηP_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumBounds {
    /// `f1(η) = f1_0 + f1_slope·η`.
    pub f1_0: f64,
    pub f1_slope: f64,
    /// `f2(η) = f2_slope·η`.
    pub f2_slope: f64,
}

impl SpectrumBounds {
    pub fn new(hit: f64, cov: &CoverageTriple<f64>, rates: &RateCoefficients<f64>) -> Self {
        let backhaul = rates.mbs * (1.0 - hit) * cov.backhaul;
        let cached = rates.sbs * hit * cov.sbs;
        let mbs = rates.mbs * cov.mbs;
        SpectrumBounds {
            f1_0: backhaul,
            f1_slope: cached + mbs - backhaul,
            f2_slope: rates.sbs * cov.sbs + mbs,
        }
    }

    pub fn f1(&self, eta: f64) -> f64 {
        self.f1_0 + self.f1_slope * eta
    }

    pub fn f2(&self, eta: f64) -> f64 {
        self.f2_slope * eta
    }

    pub fn objective(&self, eta: f64) -> f64 {
        self.f1(eta).min(self.f2(eta))
    }

    /// Maximizes `min(f1, f2)` over `[0, 1]` from the endpoints and the crossing; ties go to the smaller η.
    pub fn solve(&self) -> (f64, f64) {
        let mut candidates = vec![0.0, 1.0];
        let denom = self.f2_slope - self.f1_slope;
        if denom != 0.0 {
            let x = self.f1_0 / denom;
            if x > 0.0 && x < 1.0 {
                candidates.push(x);
            }
        }
        candidates.sort_by(f64::total_cmp);
        let mut best = (candidates[0], self.objective(candidates[0]));
        for &eta in &candidates[1..] {
            let y = self.objective(eta);
            if y > best.1 {
                best = (eta, y);
            }
        }
        best
    }
}
