use std::cell::RefCell;

use crate::analytic::association::{association_density, outer_panel_width, Destination, LinkBudget};
use crate::analytic::laplace::laplace_interference;
use crate::error::{Error, Result};
use crate::model::{LinkState, SystemConfig};
use crate::quadrature::integrate_half_line;
use crate::scalar::Real;

/// A coverage probability with its quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageResult<T> {
    pub value: T,
    pub est_abs_error: T,
    /// Integrand evaluations, inner integrals included.
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverageOptions {
    /// When false the interference Laplace factors are replaced by one.
    pub interference: bool,
}

impl Default for CoverageOptions {
    fn default() -> Self {
        CoverageOptions { interference: true }
    }
}

/// Probability of associating with `dest` and having SINR above `gamma`.
pub fn coverage<T: Real>(
    dest: Destination,
    gamma: T,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
    options: CoverageOptions,
) -> Result<CoverageResult<T>> {
    if !(gamma > T::zero()) {
        return Err(Error::domain("coverage", format!("threshold {gamma} must be positive")));
    }
    let tier = dest.serving_tier();
    let lambda = tier.density(cfg);
    if lambda <= T::zero() || gamma.is_infinite() {
        return Ok(CoverageResult {
            value: T::zero(),
            est_abs_error: T::zero(),
            evaluations: 0,
        });
    }
    let q0 = budget.biased_power(tier, cfg);
    let serving_gain = cfg.main_gain * cfg.main_gain;
    let noise_scale = gamma * cfg.noise / (q0 * serving_gain);

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner_evals = RefCell::new(0usize);
    let integrand = |r: T| {
        let mut total = T::zero();
        for link in LinkState::ALL {
            let density = association_density(dest, link, r, budget, cfg);
            if density == T::zero() {
                continue;
            }
            let (a, alpha) = cfg.path_params(link);
            let weight = density * (-noise_scale * r.powf(alpha) / a).exp();
            if weight == T::zero() {
                continue;
            }
            let lt = if options.interference {
                match laplace_interference(dest, link, r, gamma, budget, cfg) {
                    Ok(l) => {
                        *inner_evals.borrow_mut() += l.evaluations;
                        l.value
                    }
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        T::zero()
                    }
                }
            } else {
                T::one()
            };
            total = total + weight * lt;
        }
        total
    };
    let outer = integrate_half_line(
        integrand,
        outer_panel_width(lambda, cfg),
        &cfg.numeric.tolerance(),
        cfg.numeric.tail_cutoff,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer.require(|| format!("coverage of {dest:?} at threshold {gamma}"))?;
    Ok(CoverageResult {
        value: outer.value.max(T::zero()),
        est_abs_error: outer.abs_error,
        evaluations: outer.evaluations + inner_evals.into_inner(),
    })
}

/// User coverage through the SBS tier with cache size `c`.
pub fn coverage_sbs<T: Real>(gamma: T, c: usize, cfg: &SystemConfig<T>) -> Result<CoverageResult<T>> {
    let budget = LinkBudget::for_cache(c, cfg)?;
    coverage(Destination::UserToSbs, gamma, &budget, cfg, CoverageOptions::default())
}

/// User coverage through the MBS tier with SBS cache size `c`.
pub fn coverage_mbs<T: Real>(gamma: T, c: usize, cfg: &SystemConfig<T>) -> Result<CoverageResult<T>> {
    let budget = LinkBudget::for_cache(c, cfg)?;
    coverage(Destination::UserToMbs, gamma, &budget, cfg, CoverageOptions::default())
}

/// Backhaul coverage of a typical SBS.
pub fn coverage_backhaul<T: Real>(gamma: T, cfg: &SystemConfig<T>) -> Result<CoverageResult<T>> {
    let budget = LinkBudget::for_cache(0, cfg)?;
    coverage(Destination::SbsToMbsBackhaul, gamma, &budget, cfg, CoverageOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::association::association_probability;

    #[test]
    fn huge_threshold_gives_zero() {
        let cfg = SystemConfig::<f64>::default();
        assert!(coverage_sbs(1e12, 0, &cfg).unwrap().value < 1e-9);
        assert!(coverage_mbs(1e12, 0, &cfg).unwrap().value < 1e-9);
        assert!(coverage_backhaul(1e12, &cfg).unwrap().value < 1e-9);
        assert_eq!(coverage_backhaul(f64::INFINITY, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn tiny_threshold_gives_association_probability() {
        let cfg = SystemConfig::<f64>::default();
        let b = LinkBudget::for_cache(0, &cfg).unwrap();
        for dest in Destination::ALL {
            let c = coverage(dest, 1e-9, &b, &cfg, CoverageOptions::default()).unwrap().value;
            let a = association_probability(dest, &b, &cfg).unwrap().value;
            assert!((c - a).abs() < 1e-6, "{dest:?}: {c} vs {a}");
        }
    }

    #[test]
    fn no_serving_tier_gives_zero() {
        let cfg = SystemConfig::<f64> {
            lambda_m: 0.0,
            ..SystemConfig::default()
        };
        assert_eq!(coverage_backhaul(10.0, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn rejects_non_positive_threshold_and_infeasible_cache() {
        let cfg = SystemConfig::<f64>::default();
        assert!(matches!(coverage_sbs(0.0, 0, &cfg), Err(Error::Domain { .. })));
        assert!(matches!(coverage_sbs(10.0, 801, &cfg), Err(Error::InfeasibleCache { .. })));
    }

    #[test]
    fn interference_only_lowers_coverage() {
        let cfg = SystemConfig::<f64>::default();
        let b = LinkBudget::for_cache(100, &cfg).unwrap();
        for dest in Destination::ALL {
            let with = coverage(dest, 10.0, &b, &cfg, CoverageOptions::default()).unwrap().value;
            let without = coverage(dest, 10.0, &b, &cfg, CoverageOptions { interference: false })
                .unwrap()
                .value;
            assert!(with <= without + 1e-12, "{dest:?}");
        }
    }

    #[test]
    fn works_in_f32() {
        let cfg = SystemConfig::<f32>::default();
        let v = coverage_backhaul(10.0f32, &cfg).unwrap().value;
        let w = coverage_backhaul(10.0f64, &SystemConfig::default()).unwrap().value;
        assert!((v as f64 - w).abs() < 1e-4, "{v} vs {w}");
    }
}
