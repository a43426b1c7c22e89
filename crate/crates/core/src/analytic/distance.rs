use crate::model::{state_probability, LinkState, SystemConfig, Tier};
use crate::scalar::Real;

/// Density of the nearest BS of `tier` lying at distance `r` with a `link` path.
///
/// `P_k(r) e^{-πλr²} 2πλr`; the LOS and NLOS densities together integrate to one.
pub fn nearest_distance_pdf<T: Real>(r: T, tier: Tier, link: LinkState, cfg: &SystemConfig<T>) -> T {
    if !(r > T::zero()) {
        return T::zero();
    }
    let lambda = tier.density(cfg);
    let pi = T::PI();
    state_probability(link, r, cfg) * (-pi * lambda * r * r).exp() * T::lit(2.0) * pi * lambda * r
}
