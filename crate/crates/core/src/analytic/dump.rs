use std::io::Write;

use crate::analytic::association::{association_density, Destination, LinkBudget};
use crate::analytic::laplace::laplace_interference;
use crate::error::Result;
use crate::model::{LinkState, SystemConfig};
use crate::scalar::Real;

/// Factors of the coverage integrand at one distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandSample<T> {
    pub r: T,
    pub link: LinkState,
    pub association_density: T,
    pub noise_factor: T,
    pub laplace: T,
    pub contribution: T,
}

/// Evaluates the coverage integrand factors of `dest` at every distance in `radii`.
pub fn integrand_samples<T: Real>(
    dest: Destination,
    gamma: T,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
    radii: &[T],
) -> Result<Vec<IntegrandSample<T>>> {
    let tier = dest.serving_tier();
    let noise_scale =
        gamma * cfg.noise / (budget.biased_power(tier, cfg) * cfg.main_gain * cfg.main_gain);
    let mut out = Vec::with_capacity(radii.len() * 2);
    for &r in radii {
        for link in LinkState::ALL {
            let (a, alpha) = cfg.path_params(link);
            let density = association_density(dest, link, r, budget, cfg);
            let noise_factor = (-noise_scale * r.powf(alpha) / a).exp();
            let laplace = laplace_interference(dest, link, r, gamma, budget, cfg)?.value;
            out.push(IntegrandSample {
                r,
                link,
                association_density: density,
                noise_factor,
                laplace,
                contribution: density * noise_factor * laplace,
            });
        }
    }
    Ok(out)
}

/// Writes integrand samples as CSV with a header row.
pub fn write_integrand_samples<T: Real, W: Write>(
    dest: Destination,
    gamma: T,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
    radii: &[T],
    out: &mut W,
) -> Result<()> {
    let samples = integrand_samples(dest, gamma, budget, cfg, radii)?;
    let io = |e: std::io::Error| crate::error::Error::Io(e.to_string());
    writeln!(out, "r,link,association_density,noise_factor,laplace,contribution").map_err(io)?;
    for s in samples {
        let link = match s.link {
            LinkState::Los => "LOS",
            LinkState::Nlos => "NLOS",
        };
        writeln!(
            out,
            "{:.16e},{link},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.r.as_f64(),
            s.association_density.as_f64(),
            s.noise_factor.as_f64(),
            s.laplace.as_f64(),
            s.contribution.as_f64()
        )
        .map_err(io)?;
    }
    Ok(())
}
