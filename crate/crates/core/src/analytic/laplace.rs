use crate::analytic::association::{exclusion_radius, Destination, LinkBudget};
use crate::error::Result;
use crate::model::{gain_distribution, state_probability, LinkState, SystemConfig, Tier};
use crate::quadrature::{integrate_to_infinity, Integral, Tolerance};
use crate::scalar::Real;

/// Interference exponent contributed by one interfering tier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TierExponent<T> {
    pub tier: Tier,
    pub exponent: Integral<T>,
}

/// Tolerance for inner integrals, tighter than the outer one so their error stays below it.
pub(crate) fn inner_tolerance<T: Real>(cfg: &SystemConfig<T>) -> Tolerance<T> {
    let mut tol = cfg.numeric.tolerance();
    tol.rel = tol.rel * T::lit(1e-2);
    tol.abs = tol.abs * T::lit(1e-2);
    tol
}

/// Per-tier exponents of the interference Laplace transform at threshold `gamma`.
///
/// For every interfering tier the exponent sums, over interferer path states and
/// gain classes, `2πλ p_G ∫_x^∞ P_j(u) u q/(1+q) du` with
/// `q = γ (Q_t/Q_0)(G/G_0) A_j u^{-α_j} / (A_k r^{-α_k})`.
pub fn laplace_tier_exponents<T: Real>(
    dest: Destination,
    link: LinkState,
    r: T,
    gamma: T,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
) -> Vec<TierExponent<T>> {
    let tol = inner_tolerance(cfg);
    let gains = gain_distribution(cfg);
    let serving_gain = cfg.main_gain * cfg.main_gain;
    let (a0, alpha0) = cfg.path_params(link);
    let rx = a0 * r.powf(-alpha0);
    let two_pi = T::lit(2.0) * T::PI();

    let mut out = Vec::with_capacity(2);
    for &tier in dest.candidate_tiers() {
        let lambda = tier.density(cfg);
        let mut acc = Integral {
            value: T::zero(),
            abs_error: T::zero(),
            evaluations: 0,
            converged: true,
        };
        if lambda > T::zero() && gamma > T::zero() {
            let ratio = budget.relative_power(tier, dest, cfg);
            for state in LinkState::ALL {
                let (a, alpha) = cfg.path_params(state);
                // q_G = scale · G · u^{-α}
                let scale = gamma * ratio * a / (serving_gain * rx);
                let x = exclusion_radius(dest, link, r, tier, state, budget, cfg);
                let integrand = |u: T| {
                    let ua = u.powf(alpha) / scale;
                    let mut s = T::zero();
                    for class in &gains.classes {
                        if class.probability > T::zero() {
                            s = s + class.probability / (T::one() + ua / class.gain);
                        }
                    }
                    state_probability(state, u, cfg) * u * s
                };
                let width = if x > T::zero() { x } else { T::one() };
                let part = integrate_to_infinity(integrand, x, width, &tol, cfg.numeric.tail_cutoff);
                acc.value = acc.value + two_pi * lambda * part.value;
                acc.abs_error = acc.abs_error + two_pi * lambda * part.abs_error;
                acc.evaluations += part.evaluations;
                acc.converged &= part.converged;
            }
        }
        out.push(TierExponent { tier, exponent: acc });
    }
    out
}

/// Laplace transform of the aggregate interference, evaluated at the normalized
/// threshold, for a receiver served over `link` at distance `r`.
pub fn laplace_interference<T: Real>(
    dest: Destination,
    link: LinkState,
    r: T,
    gamma: T,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
) -> Result<Integral<T>> {
    let terms = laplace_tier_exponents(dest, link, r, gamma, budget, cfg);
    let mut exponent = T::zero();
    let mut abs_error = T::zero();
    let mut evaluations = 0;
    let mut converged = true;
    for t in &terms {
        exponent = exponent + t.exponent.value;
        abs_error = abs_error + t.exponent.abs_error;
        evaluations += t.exponent.evaluations;
        converged &= t.exponent.converged;
    }
    let value = (-exponent).exp();
    Integral {
        value,
        // first-order propagation of the exponent error
        abs_error: value * abs_error,
        evaluations,
        converged,
    }
    .require(|| format!("interference Laplace transform of {dest:?} {link:?} at r = {r}"))
}
