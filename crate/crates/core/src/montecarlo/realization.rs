use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson};

use crate::analytic::{Destination, LinkBudget};
use crate::model::{gain_distribution, LinkState, SystemConfig, Tier};

/// One BS of a sampled deployment with the attributes of its link to the probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsPoint {
    pub position: [f64; 2],
    /// Distance to the probe at the origin, m.
    pub distance: f64,
    pub link: LinkState,
    /// Rayleigh power fading, `exp(1)`.
    pub fading: f64,
    /// Index into the gain classes: main-main, main-side, side-side.
    pub gain_class: usize,
}

/// Receiver placed at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbeKind {
    User,
    BackhaulSbs,
}

/// A sampled PPP deployment around a probe.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkRealization {
    pub sbs_points: Vec<BsPoint>,
    pub mbs_points: Vec<BsPoint>,
    pub probe: ProbeKind,
    pub window_radius: f64,
}

impl NetworkRealization {
    pub fn points(&self, tier: Tier) -> &[BsPoint] {
        match tier {
            Tier::Mbs => &self.mbs_points,
            Tier::Sbs => &self.sbs_points,
        }
    }
}

/// Serving BS chosen by maximum biased mean received power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Association {
    pub tier: Tier,
    pub index: usize,
    pub link: LinkState,
}

impl Association {
    pub fn destination(&self, probe: ProbeKind) -> Destination {
        match (probe, self.tier) {
            (ProbeKind::BackhaulSbs, _) => Destination::SbsToMbsBackhaul,
            (ProbeKind::User, Tier::Sbs) => Destination::UserToSbs,
            (ProbeKind::User, Tier::Mbs) => Destination::UserToMbs,
        }
    }
}

/// Generator for realization `index`: ChaCha8 keyed by `seed`, stream `index`.
pub fn realization_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn sample_tier<R: Rng>(lambda: f64, cfg: &SystemConfig<f64>, cumulative_gain: &[f64; 3], rng: &mut R) -> Vec<BsPoint> {
    let radius = cfg.numeric.window_radius;
    let mean = lambda * std::f64::consts::PI * radius * radius;
    if mean <= 0.0 {
        return Vec::new();
    }
    let count = Poisson::new(mean).map(|d| d.sample(rng)).unwrap_or(0.0) as usize;
    let mut pts = Vec::with_capacity(count);
    for _ in 0..count {
        let distance = radius * rng.random::<f64>().sqrt();
        let angle = 2.0 * std::f64::consts::PI * rng.random::<f64>();
        let link = if rng.random::<f64>() < (-cfg.beta * distance).exp() {
            LinkState::Los
        } else {
            LinkState::Nlos
        };
        let fading: f64 = Exp1.sample(rng);
        let u: f64 = rng.random();
        let gain_class = cumulative_gain.iter().position(|&c| u < c).unwrap_or(2);
        pts.push(BsPoint {
            position: [distance * angle.cos(), distance * angle.sin()],
            distance,
            link,
            fading,
            gain_class,
        });
    }
    pts
}

/// Samples both tiers in the disc window centred on the probe.
pub fn sample_realization<R: Rng>(cfg: &SystemConfig<f64>, probe: ProbeKind, rng: &mut R) -> NetworkRealization {
    let g = gain_distribution(cfg);
    let p = [g.classes[0].probability, g.classes[1].probability];
    let cumulative = [p[0], p[0] + p[1], f64::INFINITY];
    let sbs_points = match probe {
        ProbeKind::User => sample_tier(cfg.lambda_s, cfg, &cumulative, rng),
        // SBSs neither serve nor interfere on the backhaul
        ProbeKind::BackhaulSbs => Vec::new(),
    };
    let mbs_points = sample_tier(cfg.lambda_m, cfg, &cumulative, rng);
    NetworkRealization {
        sbs_points,
        mbs_points,
        probe,
        window_radius: cfg.numeric.window_radius,
    }
}

fn mean_gain(p: &BsPoint, cfg: &SystemConfig<f64>) -> f64 {
    let (a, alpha) = cfg.path_params(p.link);
    a * p.distance.powf(-alpha)
}

/// Maximum biased mean received power over the candidate BSs; `None` when there is none.
pub fn associate(real: &NetworkRealization, budget: &LinkBudget<f64>, cfg: &SystemConfig<f64>) -> Option<Association> {
    let tiers: &[Tier] = match real.probe {
        ProbeKind::User => &[Tier::Sbs, Tier::Mbs],
        ProbeKind::BackhaulSbs => &[Tier::Mbs],
    };
    let mut best: Option<(f64, Association)> = None;
    for &tier in tiers {
        let q = budget.biased_power(tier, cfg);
        for (index, p) in real.points(tier).iter().enumerate() {
            let s = q * mean_gain(p, cfg);
            if best.as_ref().is_none_or(|(b, _)| s > *b) {
                best = Some((
                    s,
                    Association {
                        tier,
                        index,
                        link: p.link,
                    },
                ));
            }
        }
    }
    best.map(|(_, a)| a)
}

/// SINR at the probe for a resolved association.
///
/// The serving link uses the main-lobe gain on both ends; interferers use their
/// sampled gain classes. User probes see both tiers, backhaul probes only MBSs.
pub fn sinr(
    real: &NetworkRealization,
    assoc: &Association,
    budget: &LinkBudget<f64>,
    cfg: &SystemConfig<f64>,
) -> f64 {
    let gains = gain_distribution(cfg);
    let serving = &real.points(assoc.tier)[assoc.index];
    let q0 = budget.biased_power(assoc.tier, cfg);
    let desired = q0 * cfg.main_gain * cfg.main_gain * serving.fading * mean_gain(serving, cfg);
    let tiers: &[Tier] = match real.probe {
        ProbeKind::User => &[Tier::Sbs, Tier::Mbs],
        ProbeKind::BackhaulSbs => &[Tier::Mbs],
    };
    let mut interference = 0.0;
    for &tier in tiers {
        let q = budget.biased_power(tier, cfg);
        for (index, p) in real.points(tier).iter().enumerate() {
            if tier == assoc.tier && index == assoc.index {
                continue;
            }
            interference += q * gains.classes[p.gain_class].gain * p.fading * mean_gain(p, cfg);
        }
    }
    desired / (interference + cfg.noise)
}

/// Largest fading SNR over all BSs of `tier`, each with main-lobe gains.
pub fn max_snr(real: &NetworkRealization, tier: Tier, budget: &LinkBudget<f64>, cfg: &SystemConfig<f64>) -> f64 {
    let scale = budget.biased_power(tier, cfg) * cfg.main_gain * cfg.main_gain / cfg.noise;
    real.points(tier)
        .iter()
        .map(|p| scale * p.fading * mean_gain(p, cfg))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(distance: f64, link: LinkState) -> BsPoint {
        BsPoint {
            position: [distance, 0.0],
            distance,
            link,
            fading: 1.0,
            gain_class: 2,
        }
    }

    fn setup() -> (SystemConfig<f64>, LinkBudget<f64>) {
        let cfg = SystemConfig::default();
        let b = LinkBudget::for_cache(0, &cfg).unwrap();
        (cfg, b)
    }

    #[test]
    fn empty_sbs_tier_when_density_is_zero() {
        let (mut cfg, _) = setup();
        cfg.lambda_s = 0.0;
        let mut rng = realization_rng(1, 0);
        for _ in 0..20 {
            assert!(sample_realization(&cfg, ProbeKind::User, &mut rng).sbs_points.is_empty());
        }
    }

    #[test]
    fn repeat_draws_are_identical() {
        let (cfg, _) = setup();
        let a = sample_realization(&cfg, ProbeKind::User, &mut realization_rng(9, 3));
        let b = sample_realization(&cfg, ProbeKind::User, &mut realization_rng(9, 3));
        assert_eq!(a, b);
        let c = sample_realization(&cfg, ProbeKind::User, &mut realization_rng(9, 4));
        assert_ne!(a, c);
    }

    #[test]
    fn points_stay_inside_window() {
        let (cfg, _) = setup();
        let r = sample_realization(&cfg, ProbeKind::User, &mut realization_rng(2, 0));
        for p in r.sbs_points.iter().chain(&r.mbs_points) {
            assert!(p.distance <= cfg.numeric.window_radius);
            let d = (p.position[0].powi(2) + p.position[1].powi(2)).sqrt();
            assert!((d - p.distance).abs() < 1e-9);
        }
    }

    #[test]
    fn two_point_association() {
        let (cfg, b) = setup();
        let real = NetworkRealization {
            sbs_points: vec![point(20.0, LinkState::Los)],
            mbs_points: vec![point(200.0, LinkState::Los)],
            probe: ProbeKind::User,
            window_radius: 2000.0,
        };
        // biased received power: SBS 65·10⁻¹⁰/400 against MBS 3184·10⁻¹⁰/40000
        let a = associate(&real, &b, &cfg).unwrap();
        assert_eq!((a.tier, a.index), (Tier::Sbs, 0));
        let scaled = LinkBudget {
            p_sbs: b.p_sbs * 7.0,
            p_mbs: b.p_mbs * 7.0,
        };
        assert_eq!(associate(&real, &scaled, &cfg), Some(a));
        let bh = NetworkRealization {
            probe: ProbeKind::BackhaulSbs,
            ..real
        };
        assert_eq!(associate(&bh, &b, &cfg).unwrap().tier, Tier::Mbs);
    }

    #[test]
    fn empty_window_has_no_association() {
        let (cfg, b) = setup();
        let real = NetworkRealization {
            sbs_points: vec![],
            mbs_points: vec![],
            probe: ProbeKind::User,
            window_radius: 2000.0,
        };
        assert_eq!(associate(&real, &b, &cfg), None);
    }

    #[test]
    fn single_link_sinr_is_snr() {
        let (cfg, b) = setup();
        let real = NetworkRealization {
            sbs_points: vec![point(40.0, LinkState::Los)],
            mbs_points: vec![],
            probe: ProbeKind::User,
            window_radius: 2000.0,
        };
        let a = associate(&real, &b, &cfg).unwrap();
        let want = b.p_sbs * cfg.bias_s * 100.0 * 1e-10 * 40f64.powi(-2) / cfg.noise;
        let got = sinr(&real, &a, &b, &cfg);
        assert!(((got - want) / want).abs() < 1e-14);
        let mut noisy = cfg.clone();
        noisy.noise *= 2.0;
        assert!((sinr(&real, &a, &b, &noisy) - got / 2.0).abs() < 1e-12 * got);
    }

    #[test]
    fn serving_link_is_not_interference() {
        let (cfg, b) = setup();
        let real = NetworkRealization {
            sbs_points: vec![point(40.0, LinkState::Los), point(90.0, LinkState::Nlos)],
            mbs_points: vec![point(500.0, LinkState::Los)],
            probe: ProbeKind::User,
            window_radius: 2000.0,
        };
        let a = associate(&real, &b, &cfg).unwrap();
        assert_eq!(a.index, 0);
        let side = gain_distribution(&cfg).classes[2].gain;
        let interference = b.biased_power(Tier::Sbs, &cfg) * side * 1e-14 * 90f64.powi(-4)
            + b.biased_power(Tier::Mbs, &cfg) * side * 1e-10 * 500f64.powi(-2);
        let desired = b.biased_power(Tier::Sbs, &cfg) * 100.0 * 1e-10 / 1600.0;
        let want = desired / (interference + cfg.noise);
        assert!(((sinr(&real, &a, &b, &cfg) - want) / want).abs() < 1e-13);
    }
}
