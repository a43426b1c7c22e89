use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytic::CoverageMemo;
use crate::error::{Error, Result};
use crate::model::{transmit_power_sbs, CachePolicy, SystemConfig};
use crate::optimize::ga::{exhaustive_cache, gcdpa, GaParams};
use crate::optimize::problem::Evaluator;

/// One alternating iteration: spectrum step then cache step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationState {
    pub iteration: usize,
    pub eta: f64,
    pub cache: usize,
    /// Throughput after the spectrum step (previous cache, new share).
    pub apt1: f64,
    /// Throughput after the cache step.
    pub apt2: f64,
}

/// Final cache size, spectrum share, SBS transmit power and throughput.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub c_star: usize,
    pub eta_star: f64,
    pub p_s_tr_star: f64,
    pub apt_star: f64,
    pub trace: Vec<OptimizationState>,
    pub converged: bool,
    /// Final throughput of every start, the first being `C⁽⁰⁾ = 0`.
    pub restart_apts: Vec<f64>,
    /// True when the starts end more than 1% apart.
    pub restarts_disagree: bool,
}

impl SolveResult {
    fn single(eval: &Evaluator, eta: f64, c: usize) -> Result<Self> {
        let apt = eval.apt(eta, c)?;
        Ok(SolveResult {
            c_star: c,
            eta_star: eta,
            p_s_tr_star: transmit_power_sbs(c, eval.config())?,
            apt_star: apt,
            trace: vec![OptimizationState {
                iteration: 1,
                eta,
                cache: c,
                apt1: apt,
                apt2: apt,
            }],
            converged: true,
            restart_apts: vec![apt],
            restarts_disagree: false,
        })
    }
}

/// Stopping rule and search settings of the alternating optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcspaOptions {
    /// Relative tolerance on the per-iteration throughput gain.
    pub epsilon: f64,
    pub iter_max: usize,
    pub ga: GaParams,
    /// Random initial cache sizes tried besides `C⁽⁰⁾ = 0`.
    pub restarts: usize,
}

impl Default for JcspaOptions {
    fn default() -> Self {
        JcspaOptions {
            epsilon: 1e-5,
            iter_max: 20,
            ga: GaParams::default(),
            restarts: 3,
        }
    }
}

struct Run {
    trace: Vec<OptimizationState>,
    converged: bool,
}

fn alternate(eval: &Evaluator, c0: usize, start: usize, opts: &JcspaOptions) -> Result<Run> {
    let mut c = c0;
    let mut trace = Vec::new();
    for t in 1..=opts.iter_max {
        let (eta, _) = eval.solve_spectrum_partition(c)?;
        let apt1 = eval.apt(eta, c)?;
        let mut ga = opts.ga;
        ga.seed = opts
            .ga
            .seed
            .wrapping_add((start as u64) << 32)
            .wrapping_add(t as u64);
        let found = gcdpa(eval, eta, &ga, Some(c))?;
        c = found.cache;
        let apt2 = found.fitness;
        trace.push(OptimizationState {
            iteration: t,
            eta,
            cache: c,
            apt1,
            apt2,
        });
        if (apt2 - apt1).abs() <= opts.epsilon * apt2.abs().max(1.0) {
            return Ok(Run { trace, converged: true });
        }
    }
    Ok(Run {
        trace,
        converged: false,
    })
}

/// Alternates the closed-form spectrum step and the genetic cache step from
/// `C⁽⁰⁾ = 0` and from `restarts` random starts; the best final point wins.
pub fn jcspa_with(eval: &Evaluator, opts: &JcspaOptions) -> Result<SolveResult> {
    if !(opts.epsilon > 0.0) || opts.iter_max == 0 {
        return Err(Error::domain("jcspa", "epsilon must be positive and iter_max at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.ga.seed ^ 0x005E_ED0F_C0DE);
    let mut starts = vec![0usize];
    for _ in 0..opts.restarts {
        starts.push(rng.random_range(0..=eval.max_cache()));
    }
    let mut best: Option<Run> = None;
    let mut restart_apts = Vec::with_capacity(starts.len());
    for (i, &c0) in starts.iter().enumerate() {
        let run = alternate(eval, c0, i, opts)?;
        let apt = run.trace.last().map(|s| s.apt2).unwrap_or(f64::NEG_INFINITY);
        restart_apts.push(apt);
        let improves = match &best {
            None => true,
            Some(b) => apt > b.trace.last().map(|s| s.apt2).unwrap_or(f64::NEG_INFINITY),
        };
        if improves {
            best = Some(run);
        }
    }
    let best = best.expect("at least one start");
    let last = *best.trace.last().expect("non-empty trace");
    let hi = restart_apts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = restart_apts.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(SolveResult {
        c_star: last.cache,
        eta_star: last.eta,
        p_s_tr_star: transmit_power_sbs(last.cache, eval.config())?,
        apt_star: last.apt2,
        trace: best.trace,
        converged: best.converged,
        restart_apts,
        restarts_disagree: hi > 0.0 && (hi - lo) > 0.01 * hi,
    })
}

/// Joint cache, spectrum and power optimization with default search settings.
pub fn jcspa(cfg: &SystemConfig<f64>, epsilon: f64, iter_max: usize) -> Result<SolveResult> {
    let memo = CoverageMemo::new();
    let eval = Evaluator::new(cfg, CachePolicy::MostPopular, &memo)?;
    let opts = JcspaOptions {
        epsilon,
        iter_max,
        ga: GaParams {
            seed: cfg.numeric.seed,
            ..GaParams::default()
        },
        ..JcspaOptions::default()
    };
    jcspa_with(&eval, &opts)
}

/// Reference schemes the joint optimizer is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineKind {
    /// No caching, optimized spectrum share.
    NoCacheDsa,
    /// Even spectrum split, best cache size.
    OptCacheFsa,
    /// Largest feasible cache, optimized spectrum share.
    FullCacheDsa,
    /// Files cached with identical probability, share and size optimized jointly.
    UniformCacheDsa,
}

impl BaselineKind {
    pub const ALL: [BaselineKind; 4] = [
        BaselineKind::NoCacheDsa,
        BaselineKind::OptCacheFsa,
        BaselineKind::FullCacheDsa,
        BaselineKind::UniformCacheDsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::NoCacheDsa => "no_cache_dsa",
            BaselineKind::OptCacheFsa => "opt_cache_fsa",
            BaselineKind::FullCacheDsa => "full_cache_dsa",
            BaselineKind::UniformCacheDsa => "uniform_cache_dsa",
        }
    }
}

/// Runs a baseline. `zipf` must use most-popular placement and `uniform` uniform placement.
pub fn baseline_with(
    kind: BaselineKind,
    zipf: &Evaluator,
    uniform: &Evaluator,
    opts: &JcspaOptions,
) -> Result<SolveResult> {
    match kind {
        BaselineKind::NoCacheDsa => {
            let (eta, _) = zipf.solve_spectrum_partition(0)?;
            SolveResult::single(zipf, eta, 0)
        }
        BaselineKind::OptCacheFsa => {
            let (c, _) = exhaustive_cache(zipf, 0.5)?;
            SolveResult::single(zipf, 0.5, c)
        }
        BaselineKind::FullCacheDsa => {
            let c = zipf.max_cache();
            let (eta, _) = zipf.solve_spectrum_partition(c)?;
            SolveResult::single(zipf, eta, c)
        }
        BaselineKind::UniformCacheDsa => jcspa_with(uniform, opts),
    }
}

/// Runs a baseline with default search settings.
pub fn baseline(kind: BaselineKind, cfg: &SystemConfig<f64>) -> Result<SolveResult> {
    let memo = CoverageMemo::new();
    let zipf = Evaluator::new(cfg, CachePolicy::MostPopular, &memo)?;
    let uniform = Evaluator::new(cfg, CachePolicy::Uniform, &memo)?;
    let opts = JcspaOptions {
        ga: GaParams {
            seed: cfg.numeric.seed,
            ..GaParams::default()
        },
        ..JcspaOptions::default()
    };
    baseline_with(kind, &zipf, &uniform, &opts)
}
