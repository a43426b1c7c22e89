use crate::error::Result;
use crate::model::{state_probability, transmit_power_mbs, transmit_power_sbs, LinkState, SystemConfig, Tier};
use crate::quadrature::{integrate_half_line, Integral};
use crate::scalar::Real;
use crate::special::one_minus_exp_poly;

/// Link whose coverage is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Destination {
    /// Typical user served by an SBS.
    UserToSbs,
    /// Typical user served by the MBS tier.
    UserToMbs,
    /// Typical SBS served by an MBS over the wireless backhaul.
    SbsToMbsBackhaul,
}

impl Destination {
    pub const ALL: [Destination; 3] = [
        Destination::UserToSbs,
        Destination::UserToMbs,
        Destination::SbsToMbsBackhaul,
    ];

    pub fn serving_tier(self) -> Tier {
        match self {
            Destination::UserToSbs => Tier::Sbs,
            Destination::UserToMbs | Destination::SbsToMbsBackhaul => Tier::Mbs,
        }
    }

    /// Tiers competing for association; these are also the interfering tiers.
    pub fn candidate_tiers(self) -> &'static [Tier] {
        match self {
            Destination::UserToSbs => &[Tier::Sbs, Tier::Mbs],
            Destination::UserToMbs => &[Tier::Mbs, Tier::Sbs],
            Destination::SbsToMbsBackhaul => &[Tier::Mbs],
        }
    }
}

/// Transmit powers of both tiers for a given SBS cache size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget<T> {
    pub p_sbs: T,
    pub p_mbs: T,
}

impl<T: Real> LinkBudget<T> {
    pub fn for_cache(c: usize, cfg: &SystemConfig<T>) -> Result<Self> {
        crate::model::check_cache(c, cfg)?;
        Ok(LinkBudget {
            p_sbs: transmit_power_sbs(c, cfg)?,
            p_mbs: transmit_power_mbs(cfg),
        })
    }

    pub fn power(&self, tier: Tier) -> T {
        match tier {
            Tier::Mbs => self.p_mbs,
            Tier::Sbs => self.p_sbs,
        }
    }

    /// Transmit power times association bias.
    pub fn biased_power(&self, tier: Tier, cfg: &SystemConfig<T>) -> T {
        self.power(tier) * tier.bias(cfg)
    }

    /// Biased power of `tier` relative to the serving tier of `dest`.
    pub fn relative_power(&self, tier: Tier, dest: Destination, cfg: &SystemConfig<T>) -> T {
        self.biased_power(tier, cfg) / self.biased_power(dest.serving_tier(), cfg)
    }
}

/// Radius around the receiver that must be free of `(tier, state)` BSs for the
/// serving BS at distance `r` in state `link` to win the biased-power comparison.
pub fn exclusion_radius<T: Real>(
    dest: Destination,
    link: LinkState,
    r: T,
    tier: Tier,
    state: LinkState,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
) -> T {
    if tier == dest.serving_tier() && state == link {
        return r;
    }
    let (a0, alpha0) = cfg.path_params(link);
    let (a, alpha) = cfg.path_params(state);
    let serving_gain = a0 * r.powf(-alpha0);
    (budget.relative_power(tier, dest, cfg) * a / serving_gain).powf(alpha.recip())
}

/// Mean number of `(tier, state)` BSs within distance `x`.
pub(crate) fn cumulative_intensity<T: Real>(tier: Tier, state: LinkState, x: T, cfg: &SystemConfig<T>) -> T {
    let lambda = tier.density(cfg);
    let pi = T::PI();
    let disc = pi * lambda * x * x;
    if !disc.is_finite() {
        return disc;
    }
    let los = if cfg.beta > T::zero() {
        T::lit(2.0) * pi * lambda / (cfg.beta * cfg.beta) * one_minus_exp_poly(cfg.beta * x)
    } else {
        disc
    };
    match state {
        LinkState::Los => los,
        LinkState::Nlos => (disc - los).max(T::zero()),
    }
}

/// Sum over candidate tiers and states of the mean number of BSs inside the exclusion radii.
pub fn void_exponent<T: Real>(
    dest: Destination,
    link: LinkState,
    r: T,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
) -> T {
    let mut total = T::zero();
    for &tier in dest.candidate_tiers() {
        if tier.density(cfg) <= T::zero() {
            continue;
        }
        for state in LinkState::ALL {
            let x = exclusion_radius(dest, link, r, tier, state, budget, cfg);
            total = total + cumulative_intensity(tier, state, x, cfg);
        }
    }
    total
}

/// Density of associating with `dest` via a `link` path at distance `r`.
///
/// Thinned nearest-BS density times the void probabilities of every competing
/// `(tier, state)` sub-process inside its exclusion radius.
pub fn association_density<T: Real>(
    dest: Destination,
    link: LinkState,
    r: T,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
) -> T {
    if !(r > T::zero()) {
        return T::zero();
    }
    let lambda = dest.serving_tier().density(cfg);
    if lambda <= T::zero() {
        return T::zero();
    }
    let two_pi = T::lit(2.0) * T::PI();
    two_pi * lambda * r * state_probability(link, r, cfg) * (-void_exponent(dest, link, r, budget, cfg)).exp()
}

/// First outer panel width: the radius where `exp(-πλr²)` reaches the void cutoff.
pub(crate) fn outer_panel_width<T: Real>(lambda: T, cfg: &SystemConfig<T>) -> T {
    ((cfg.numeric.void_cutoff.recip()).ln() / (T::PI() * lambda)).sqrt()
}

/// Probability of associating with `dest` through either path state.
pub fn association_probability<T: Real>(
    dest: Destination,
    budget: &LinkBudget<T>,
    cfg: &SystemConfig<T>,
) -> Result<Integral<T>> {
    let lambda = dest.serving_tier().density(cfg);
    if lambda <= T::zero() {
        return Ok(Integral {
            value: T::zero(),
            abs_error: T::zero(),
            evaluations: 0,
            converged: true,
        });
    }
    let f = |r: T| {
        association_density(dest, LinkState::Los, r, budget, cfg)
            + association_density(dest, LinkState::Nlos, r, budget, cfg)
    };
    integrate_half_line(
        f,
        outer_panel_width(lambda, cfg),
        &cfg.numeric.tolerance(),
        cfg.numeric.tail_cutoff,
    )
    .require(|| format!("association probability of {dest:?}"))
}
