//! Blockage, path loss and sectorial antenna gains.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    Mbs,
    Sbs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkState {
    Los,
    Nlos,
}

impl LinkState {
    pub const ALL: [LinkState; 2] = [LinkState::Los, LinkState::Nlos];
}

impl Tier {
    pub const ALL: [Tier; 2] = [Tier::Mbs, Tier::Sbs];

    pub fn density<T: Real>(self, cfg: &SystemConfig<T>) -> T {
        match self {
            Tier::Mbs => cfg.lambda_m,
            Tier::Sbs => cfg.lambda_s,
        }
    }

    pub fn bias<T: Real>(self, cfg: &SystemConfig<T>) -> T {
        match self {
            Tier::Mbs => cfg.bias_m,
            Tier::Sbs => cfg.bias_s,
        }
    }
}

impl<T: Real> SystemConfig<T> {
    /// Path-loss intercept and exponent of a link state.
    pub fn path_params(&self, link: LinkState) -> (T, T) {
        match link {
            LinkState::Los => (self.a_los, self.alpha_los),
            LinkState::Nlos => (self.a_nlos, self.alpha_nlos),
        }
    }
}

/// `e^{-βr}`.
pub fn los_probability<T: Real>(r: T, cfg: &SystemConfig<T>) -> Result<T> {
    if !(r >= T::zero()) {
        return Err(Error::domain("los_probability", format!("distance {r} is negative")));
    }
    Ok(state_probability(LinkState::Los, r, cfg))
}

/// Probability of `link` at distance `r >= 0`, unchecked.
#[inline]
pub(crate) fn state_probability<T: Real>(link: LinkState, r: T, cfg: &SystemConfig<T>) -> T {
    match link {
        LinkState::Los => (-cfg.beta * r).exp(),
        LinkState::Nlos => -(-cfg.beta * r).exp_m1(),
    }
}

/// `A_k r^{-α_k}`.
pub fn path_loss<T: Real>(r: T, link: LinkState, cfg: &SystemConfig<T>) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::domain("path_loss", format!("distance {r} must be positive")));
    }
    let (a, alpha) = cfg.path_params(link);
    Ok(a * r.powf(-alpha))
}

/// Distance beyond which LOS attenuation is at least NLOS attenuation.
pub fn los_nlos_crossover<T: Real>(cfg: &SystemConfig<T>) -> Option<T> {
    let d = cfg.alpha_nlos - cfg.alpha_los;
    if d <= T::zero() {
        return None;
    }
    Some((cfg.a_los / cfg.a_nlos).powf(d.recip()).recip())
}

/// Antenna gain of a link with its probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainClass<T> {
    pub gain: T,
    pub probability: T,
}

/// Main-main, main-side and side-side gain classes, in that order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainDistribution<T> {
    pub classes: [GainClass<T>; 3],
}

impl<T: Real> GainDistribution<T> {
    pub fn mean(&self) -> T {
        self.classes
            .iter()
            .fold(T::zero(), |s, c| s + c.gain * c.probability)
    }
}

/// Gain classes for beams of width θ aligned uniformly at random.
pub fn gain_distribution<T: Real>(cfg: &SystemConfig<T>) -> GainDistribution<T> {
    let two_pi = T::lit(2.0) * T::PI();
    let main = cfg.theta / two_pi;
    let side = (two_pi - cfg.theta) / two_pi;
    let (mg, sg) = (cfg.main_gain, cfg.side_gain);
    GainDistribution {
        classes: [
            GainClass {
                gain: mg * mg,
                probability: main * main,
            },
            GainClass {
                gain: mg * sg,
                probability: T::lit(2.0) * main * side,
            },
            GainClass {
                gain: sg * sg,
                probability: side * side,
            },
        ],
    }
}

/// Exact gain-class probabilities for `θ = fraction · π`.
pub fn gain_probabilities_exact(fraction: Ratio<i64>) -> Result<[Ratio<i64>; 3]> {
    let zero = Ratio::from_integer(0);
    let two = Ratio::from_integer(2);
    if fraction <= zero || fraction > two {
        return Err(Error::domain("gain_probabilities_exact", format!("θ/π = {fraction} outside (0, 2]")));
    }
    let main = fraction / two;
    let side = Ratio::from_integer(1) - main;
    Ok([main * main, two * main * side, side * side])
}
