use std::io::Write;

use rayon::prelude::*;

use crate::analytic::{apt_from_parts, CoverageTriple, Destination, LinkBudget, RateCoefficients};
use crate::error::{Error, Result};
use crate::model::{hit_ratio, LinkState, SystemConfig, Tier};
use crate::montecarlo::realization::{associate, max_snr, realization_rng, sample_realization, sinr, ProbeKind};

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;

/// A Monte Carlo estimate with its 99% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalEstimate {
    pub mean: f64,
    pub ci_half_width_99: f64,
    /// Realizations the estimate is based on.
    pub n: usize,
    pub seed: u64,
}

impl EmpiricalEstimate {
    fn proportion(hits: usize, n: usize, seed: u64) -> Self {
        let p = if n == 0 { 0.0 } else { hits as f64 / n as f64 };
        let half = if n == 0 { 0.0 } else { Z_99 * (p * (1.0 - p) / n as f64).sqrt() };
        EmpiricalEstimate {
            mean: p,
            ci_half_width_99: half,
            n,
            seed,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.mean).abs() <= self.ci_half_width_99
    }
}

/// What one pair of user and backhaul realizations produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkOutcome {
    pub index: u64,
    /// Serving destination, path state and SINR of the typical user.
    pub user: Option<(Destination, LinkState, f64)>,
    /// SINR of the typical SBS on the backhaul.
    pub backhaul_sinr: Option<f64>,
    /// Strongest fading SNR over all SBSs and over all MBSs, seen by the user.
    pub max_snr_sbs: f64,
    pub max_snr_mbs: f64,
}

/// Outcomes of `n` independent realizations.
///
/// Realization `i` draws the user deployment from ChaCha8 stream `2i` and the
/// backhaul deployment from stream `2i + 1` of the generator keyed by `seed`,
/// so results do not depend on the number of worker threads.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRun {
    pub outcomes: Vec<LinkOutcome>,
    pub seed: u64,
    pub cache: usize,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("monte carlo", "at least one realization is required"));
    }
    Ok(())
}

/// Runs `n` realizations with SBS cache size `c`.
pub fn simulate(cfg: &SystemConfig<f64>, c: usize, n: usize, seed: u64) -> Result<SimulationRun> {
    check_n(n)?;
    let budget = LinkBudget::for_cache(c, cfg)?;
    let outcomes = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = realization_rng(seed, 2 * i);
            let real = sample_realization(cfg, ProbeKind::User, &mut rng);
            let user = associate(&real, &budget, cfg).map(|a| {
                (a.destination(ProbeKind::User), a.link, sinr(&real, &a, &budget, cfg))
            });
            let max_snr_sbs = max_snr(&real, Tier::Sbs, &budget, cfg);
            let max_snr_mbs = max_snr(&real, Tier::Mbs, &budget, cfg);

            let mut rng = realization_rng(seed, 2 * i + 1);
            let bh = sample_realization(cfg, ProbeKind::BackhaulSbs, &mut rng);
            let backhaul_sinr = associate(&bh, &budget, cfg).map(|a| sinr(&bh, &a, &budget, cfg));
            LinkOutcome {
                index: i,
                user,
                backhaul_sinr,
                max_snr_sbs,
                max_snr_mbs,
            }
        })
        .collect();
    Ok(SimulationRun {
        outcomes,
        seed,
        cache: c,
    })
}

impl SimulationRun {
    pub fn n(&self) -> usize {
        self.outcomes.len()
    }

    fn sinr_of(o: &LinkOutcome, dest: Destination) -> Option<f64> {
        match dest {
            Destination::SbsToMbsBackhaul => o.backhaul_sinr,
            _ => o.user.and_then(|(d, _, s)| (d == dest).then_some(s)),
        }
    }

    /// Fraction of realizations associated with `dest` and with SINR above `gamma`.
    pub fn joint_coverage(&self, dest: Destination, gamma: f64) -> EmpiricalEstimate {
        let hits = self
            .outcomes
            .iter()
            .filter(|o| Self::sinr_of(o, dest).is_some_and(|s| s > gamma))
            .count();
        EmpiricalEstimate::proportion(hits, self.n(), self.seed)
    }

    /// Coverage among the realizations associated with `dest`.
    pub fn conditional_coverage(&self, dest: Destination, gamma: f64) -> EmpiricalEstimate {
        let served: Vec<f64> = self.outcomes.iter().filter_map(|o| Self::sinr_of(o, dest)).collect();
        let hits = served.iter().filter(|&&s| s > gamma).count();
        EmpiricalEstimate::proportion(hits, served.len(), self.seed)
    }

    /// Fraction of realizations associated with `dest`.
    pub fn association_frequency(&self, dest: Destination) -> EmpiricalEstimate {
        let hits = self.outcomes.iter().filter(|o| Self::sinr_of(o, dest).is_some()).count();
        EmpiricalEstimate::proportion(hits, self.n(), self.seed)
    }

    /// Fraction of realizations where some BS of `tier` alone gives SNR above `gamma`.
    pub fn noise_limited_coverage(&self, tier: Tier, gamma: f64) -> EmpiricalEstimate {
        let hits = self
            .outcomes
            .iter()
            .filter(|o| match tier {
                Tier::Sbs => o.max_snr_sbs > gamma,
                Tier::Mbs => o.max_snr_mbs > gamma,
            })
            .count();
        EmpiricalEstimate::proportion(hits, self.n(), self.seed)
    }

    /// Per-realization CSV trace: id, user association, path state, SINR and backhaul SINR.
    pub fn write_trace<W: Write>(&self, out: &mut W) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(e.to_string());
        writeln!(out, "realization,association,link,sinr,backhaul_sinr").map_err(io)?;
        for o in &self.outcomes {
            let (assoc, link, s) = match o.user {
                Some((d, l, s)) => (
                    match d {
                        Destination::UserToSbs => "SBS",
                        _ => "MBS",
                    },
                    match l {
                        LinkState::Los => "LOS",
                        LinkState::Nlos => "NLOS",
                    },
                    format!("{s:.16e}"),
                ),
                None => ("none", "", String::new()),
            };
            let bh = o.backhaul_sinr.map(|s| format!("{s:.16e}")).unwrap_or_default();
            writeln!(out, "{},{assoc},{link},{s},{bh}", o.index).map_err(io)?;
        }
        Ok(())
    }
}

/// Joint coverage estimate for `dest` from `n` realizations.
pub fn empirical_coverage(
    dest: Destination,
    gamma: f64,
    c: usize,
    n: usize,
    seed: u64,
    cfg: &SystemConfig<f64>,
) -> Result<EmpiricalEstimate> {
    Ok(simulate(cfg, c, n, seed)?.joint_coverage(dest, gamma))
}

/// Association frequency estimate for `dest`.
pub fn empirical_association(
    dest: Destination,
    c: usize,
    n: usize,
    seed: u64,
    cfg: &SystemConfig<f64>,
) -> Result<EmpiricalEstimate> {
    Ok(simulate(cfg, c, n, seed)?.association_frequency(dest))
}

/// Estimate of the probability that the strongest fading SNR of `tier` exceeds `gamma`.
pub fn empirical_noise_limited(
    tier: Tier,
    gamma: f64,
    c: usize,
    n: usize,
    seed: u64,
    cfg: &SystemConfig<f64>,
) -> Result<EmpiricalEstimate> {
    Ok(simulate(cfg, c, n, seed)?.noise_limited_coverage(tier, gamma))
}

/// Area throughput with empirical coverage plugged into the throughput expression.
///
/// The half-width propagates the three coverage half-widths linearly with the
/// absolute partial derivatives.
pub fn empirical_apt_from_run(run: &SimulationRun, eta: f64, gamma0: f64, cfg: &SystemConfig<f64>) -> Result<EmpiricalEstimate> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::domain("empirical_apt", format!("spectrum share {eta} outside [0, 1]")));
    }
    let s = run.joint_coverage(Destination::UserToSbs, gamma0);
    let m = run.joint_coverage(Destination::UserToMbs, gamma0);
    let bh = run.joint_coverage(Destination::SbsToMbsBackhaul, gamma0);
    let h = hit_ratio(run.cache, cfg)?;
    let mut rate_cfg = cfg.clone();
    rate_cfg.gamma0 = gamma0;
    let rates = RateCoefficients::new(&rate_cfg);
    let cov = CoverageTriple {
        sbs: s.mean,
        mbs: m.mean,
        backhaul: bh.mean,
    };
    let b = apt_from_parts(eta, h, &cov, &rates);
    let (d_s, d_bh) = match b.binding_side {
        crate::analytic::BindingSide::Access => ((1.0 - h) * rates.sbs * eta + h * rates.sbs * eta, 0.0),
        crate::analytic::BindingSide::Backhaul => (h * rates.sbs * eta, (1.0 - h) * rates.mbs * (1.0 - eta)),
    };
    let d_m = rates.mbs * eta;
    Ok(EmpiricalEstimate {
        mean: b.total,
        ci_half_width_99: d_s * s.ci_half_width_99 + d_bh * bh.ci_half_width_99 + d_m * m.ci_half_width_99,
        n: run.n(),
        seed: run.seed,
    })
}

/// Empirical area throughput at spectrum share `eta`, cache `c` and rate threshold `gamma0` (linear).
pub fn empirical_apt(
    eta: f64,
    c: usize,
    gamma0: f64,
    n: usize,
    seed: u64,
    cfg: &SystemConfig<f64>,
) -> Result<EmpiricalEstimate> {
    let run = simulate(cfg, c, n, seed)?;
    empirical_apt_from_run(&run, eta, gamma0, cfg)
}
