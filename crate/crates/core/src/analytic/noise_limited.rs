//! Coverage when interference is negligible: the strongest fading-SNR over a whole tier.

use crate::analytic::laplace::inner_tolerance;
use crate::error::{Error, Result};
use crate::model::{state_probability, transmit_power_mbs, transmit_power_sbs, LinkState, SystemConfig, Tier};
use crate::quadrature::{integrate, integrate_half_line, integrate_to_infinity};
use crate::scalar::Real;
use crate::special::gamma as gamma_fn;

/// `ξ₀ = P B G / (N₀ γ)` for the serving tier.
fn snr_scale<T: Real>(tier: Tier, gamma: T, c: usize, cfg: &SystemConfig<T>) -> Result<T> {
    if !(gamma > T::zero()) {
        return Err(Error::domain("coverage_noise_limited", format!("threshold {gamma} must be positive")));
    }
    let p = match tier {
        Tier::Sbs => {
            crate::model::check_cache(c, cfg)?;
            transmit_power_sbs(c, cfg)?
        }
        Tier::Mbs => transmit_power_mbs(cfg),
    };
    Ok(p * tier.bias(cfg) * cfg.main_gain * cfg.main_gain / (cfg.noise * gamma))
}

/// `∫₀¹ w J(ξ₀ w^α) dw` with `J(ξ) = ∫₀^∞ t^{2/α} exp(-β (A ξ t)^{1/α} - t) dt`.
fn blockage_integral<T: Real>(link: LinkState, xi0: T, cfg: &SystemConfig<T>) -> Result<T> {
    let (a, alpha) = cfg.path_params(link);
    let tol = inner_tolerance(cfg);
    let two_over_alpha = T::lit(2.0) / alpha;
    let inv_alpha = alpha.recip();
    let failure = std::cell::Cell::new(None);
    let outer = integrate(
        |w: T| {
            let xi = xi0 * w.powf(alpha);
            let c = cfg.beta * (a * xi).powf(inv_alpha);
            let j = integrate_to_infinity(
                |t: T| t.powf(two_over_alpha) * (-c * t.powf(inv_alpha) - t).exp(),
                T::zero(),
                T::one(),
                &tol,
                cfg.numeric.tail_cutoff,
            );
            if !j.converged && failure.get().is_none() {
                failure.set(Some(j));
            }
            w * j.value
        },
        T::zero(),
        T::one(),
        &cfg.numeric.tolerance(),
    );
    if let Some(j) = failure.get() {
        j.require(|| format!("inner blockage integral ({link:?})"))?;
    }
    Ok(outer.require(|| format!("outer blockage integral ({link:?})"))?.value)
}

/// Closed-form probability that some BS of `tier` delivers SNR above `gamma`.
///
/// `1 - exp(-πλ A_NL^{2/α_NL} Γ(2/α_NL + 1) ξ₀^{2/α_NL} - 2πλ (Y_L - Y_NL))` with
/// `Y_i = (A_i ξ₀)^{2/α_i} ∫₀¹ w J_i(ξ₀ w^{α_i}) dw`.
pub fn coverage_noise_limited<T: Real>(tier: Tier, gamma: T, c: usize, cfg: &SystemConfig<T>) -> Result<T> {
    let xi0 = snr_scale(tier, gamma, c, cfg)?;
    let lambda = tier.density(cfg);
    if lambda <= T::zero() || xi0 == T::zero() {
        return Ok(T::zero());
    }
    let pi = T::PI();
    let two = T::lit(2.0);
    let y = |link: LinkState| -> Result<T> {
        let (a, alpha) = cfg.path_params(link);
        if cfg.beta == T::zero() {
            // J reduces to Γ(2/α + 1) and the outer integral to 1/2
            return Ok((a * xi0).powf(two / alpha) * gamma_fn(two / alpha + T::one()) / two);
        }
        Ok((a * xi0).powf(two / alpha) * blockage_integral(link, xi0, cfg)?)
    };
    let (a_nl, alpha_nl) = cfg.path_params(LinkState::Nlos);
    let nlos_full = pi * lambda * (a_nl * xi0).powf(two / alpha_nl) * gamma_fn(two / alpha_nl + T::one());
    let exponent = nlos_full + two * pi * lambda * (y(LinkState::Los)? - y(LinkState::Nlos)?);
    Ok(-(-exponent).exp_m1())
}

/// The same probability from the void probability of the SNR-covering sub-process:
/// `1 - exp(-∫ 2πλr Σ_k P_k(r) exp(-r^{α_k}/(A_k ξ₀)) dr)`.
pub fn coverage_noise_limited_direct<T: Real>(tier: Tier, gamma: T, c: usize, cfg: &SystemConfig<T>) -> Result<T> {
    let xi0 = snr_scale(tier, gamma, c, cfg)?;
    let lambda = tier.density(cfg);
    if lambda <= T::zero() || xi0 == T::zero() {
        return Ok(T::zero());
    }
    let two_pi = T::lit(2.0) * T::PI();
    let f = |r: T| {
        let mut s = T::zero();
        for link in LinkState::ALL {
            let (a, alpha) = cfg.path_params(link);
            s = s + state_probability(link, r, cfg) * (-r.powf(alpha) / (a * xi0)).exp();
        }
        two_pi * lambda * r * s
    };
    let (a_nl, alpha_nl) = cfg.path_params(LinkState::Nlos);
    let width = (a_nl * xi0).powf(alpha_nl.recip()).max(T::min_positive_value());
    let i = integrate_half_line(f, width, &cfg.numeric.tolerance(), cfg.numeric.tail_cutoff)
        .require(|| format!("noise-limited void integral for {tier:?}"))?;
    Ok(-(-i.value).exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn db(x: f64) -> f64 {
        10f64.powf(x / 10.0)
    }

    #[test]
    fn closed_form_matches_void_integral() {
        let mut cfg = SystemConfig::<f64>::default();
        // small densities keep the probabilities away from 1
        cfg.lambda_s = 1e-7;
        cfg.lambda_m = 4e-8;
        for tier in Tier::ALL {
            for g in [0.0, 5.0, 10.0, 15.0, 40.0] {
                let a = coverage_noise_limited(tier, db(g), 0, &cfg).unwrap();
                let b = coverage_noise_limited_direct(tier, db(g), 0, &cfg).unwrap();
                assert!((a - b).abs() < 1e-7 * b.max(1e-3), "{tier:?} {g} dB: {a} vs {b}");
                assert!((0.0..=1.0).contains(&a));
            }
        }
    }

    #[test]
    fn no_blockage_reduces_to_gamma_terms() {
        let mut cfg = SystemConfig::<f64>::default();
        cfg.beta = 0.0;
        cfg.lambda_s = 1e-8;
        let a = coverage_noise_limited(Tier::Sbs, db(10.0), 0, &cfg).unwrap();
        let b = coverage_noise_limited_direct(Tier::Sbs, db(10.0), 0, &cfg).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn limits() {
        let cfg = SystemConfig::<f64>::default();
        assert!(coverage_noise_limited(Tier::Sbs, 1e40, 0, &cfg).unwrap() < 1e-6);
        let empty = SystemConfig::<f64> {
            lambda_s: 0.0,
            ..SystemConfig::default()
        };
        assert_eq!(coverage_noise_limited(Tier::Sbs, 10.0, 0, &empty).unwrap(), 0.0);
        assert!(coverage_noise_limited(Tier::Sbs, -1.0, 0, &cfg).is_err());
    }

    #[test]
    fn non_increasing_in_threshold() {
        let mut cfg = SystemConfig::<f64>::default();
        cfg.lambda_m = 4e-8;
        let mut prev = 1.0;
        for g in [-5.0, 0.0, 10.0, 20.0, 40.0, 60.0] {
            let p = coverage_noise_limited(Tier::Mbs, db(g), 0, &cfg).unwrap();
            assert!(p <= prev + 1e-12);
            prev = p;
        }
    }
}
