use rayon::prelude::*;

use iabcache::analytic::{apt_from_parts, CoverageMemo, RateCoefficients};
use iabcache::model::{check_cache, hit_ratio, transmit_power_sbs, CachePolicy, SystemConfig};
use iabcache::optimize::{jcspa_with, Evaluator, GaParams, JcspaOptions};

use super::{binding_name, check_eta, sorted, Context};
use crate::args::{Axis, Solver, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::output::num;

/// Grid values of `start:stop:step`, stop included when hit.
pub fn parse_range(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Usage(format!("range `{spec}` is not start:stop:step"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(bad());
    }
    if stop < start || step <= 0.0 {
        return Err(CliError::Usage(format!("range `{spec}` is empty")));
    }
    let count = ((stop - start) / step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(CliError::Usage(format!("range `{spec}` has more than 10^6 points")));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

struct Point {
    values: Vec<f64>,
    cfg: SystemConfig<f64>,
    cache: usize,
    eta: f64,
}

fn apply(axis: Axis, v: f64, p: &mut Point) -> CliResult<()> {
    match axis {
        Axis::Cache => {
            if v < 0.0 || v.fract() != 0.0 {
                return Err(CliError::Usage(format!("cache size must be a whole number, got {v}")));
            }
            p.cache = v as usize;
        }
        Axis::Eta => p.eta = v,
        Axis::Gamma0 => p.cfg.set_boundary_value("gamma0", v)?,
        Axis::GammaP => p.cfg.set_boundary_value("gamma_p", v)?,
        Axis::OmegaCa => p.cfg.set_boundary_value("omega_ca", v)?,
    }
    p.values.push(v);
    Ok(())
}

pub fn run(ctx: &mut Context, args: &SweepArgs) -> CliResult<()> {
    let outer = match &args.range {
        Some(r) => parse_range(r)?,
        None => sorted(args.values.clone())?,
    };
    if outer.is_empty() {
        return Err(CliError::Usage("empty range".into()));
    }
    let inner = match (args.inner_axis, &args.inner_range) {
        (Some(a), _) if a == args.axis => return Err(CliError::Usage("inner axis repeats the outer axis".into())),
        (Some(_), Some(r)) => Some(parse_range(r)?),
        _ => None,
    };
    let mut axes = vec![args.axis];
    axes.extend(args.inner_axis);
    if args.solver == Solver::Jcspa && axes.iter().any(|a| matches!(a, Axis::Cache | Axis::Eta)) {
        return Err(CliError::Usage("the joint optimizer chooses C and eta itself; sweep another axis".into()));
    }

    let mut points = Vec::new();
    for &v in &outer {
        for w in inner.clone().unwrap_or_else(|| vec![f64::NAN]) {
            let mut p = Point {
                values: Vec::new(),
                cfg: ctx.cfg.clone(),
                cache: args.cache,
                eta: args.eta,
            };
            apply(args.axis, v, &mut p)?;
            if let Some(a) = args.inner_axis {
                apply(a, w, &mut p)?;
            }
            p.cfg.validate()?;
            check_eta(p.eta)?;
            if args.solver == Solver::Apt {
                check_cache(p.cache, &p.cfg)?;
            }
            points.push(p);
        }
    }

    let mut header: Vec<&str> = axes.iter().map(|a| a.column()).collect();
    let memo = CoverageMemo::new();
    let rows = match args.solver {
        Solver::Apt => {
            for fixed in [Axis::Cache, Axis::Eta] {
                if !axes.contains(&fixed) {
                    header.push(fixed.column());
                }
            }
            header.extend(["cov_sbs", "cov_mbs", "cov_bh", "hit_ratio", "p_s_tr", "apt_total", "binding_side"]);
            points
                .par_iter()
                .map(|p| -> CliResult<Vec<String>> {
                    let cov = memo.triple(p.cfg.gamma0, p.cache, &p.cfg)?;
                    let hit = hit_ratio(p.cache, &p.cfg)?;
                    let b = apt_from_parts(p.eta, hit, &cov, &RateCoefficients::new(&p.cfg));
                    let mut row: Vec<String> = p.values.iter().map(|&v| num(v)).collect();
                    if !axes.contains(&Axis::Cache) {
                        row.push(p.cache.to_string());
                    }
                    if !axes.contains(&Axis::Eta) {
                        row.push(num(p.eta));
                    }
                    row.extend([
                        num(cov.sbs),
                        num(cov.mbs),
                        num(cov.backhaul),
                        num(hit),
                        num(transmit_power_sbs(p.cache, &p.cfg)?),
                        num(b.total),
                        binding_name(b.binding_side).to_string(),
                    ]);
                    Ok(row)
                })
                .collect::<CliResult<Vec<_>>>()?
        }
        Solver::Jcspa => {
            header.extend([
                "c_star",
                "eta_star",
                "p_s_tr_star",
                "apt_star",
                "converged",
                "iterations",
                "restarts_disagree",
            ]);
            let opts = JcspaOptions {
                ga: GaParams {
                    seed: ctx.seed,
                    ..GaParams::default()
                },
                ..JcspaOptions::default()
            };
            points
                .iter()
                .map(|p| -> CliResult<Vec<String>> {
                    let eval = Evaluator::new(&p.cfg, CachePolicy::MostPopular, &memo)?;
                    let r = jcspa_with(&eval, &opts)?;
                    let mut row: Vec<String> = p.values.iter().map(|&v| num(v)).collect();
                    row.extend([
                        r.c_star.to_string(),
                        num(r.eta_star),
                        num(r.p_s_tr_star),
                        num(r.apt_star),
                        r.converged.to_string(),
                        r.trace.len().to_string(),
                        r.restarts_disagree.to_string(),
                    ]);
                    Ok(row)
                })
                .collect::<CliResult<Vec<_>>>()?
        }
    };

    let name = match args.inner_axis {
        Some(a) => format!("sweep_{}_{}.csv", args.axis.column(), a.column()),
        None => format!("sweep_{}.csv", args.axis.column()),
    };
    ctx.out.write_csv(&name, &header, &rows)?;
    println!("sweep: {} point(s) written to {name}", rows.len());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_includes_stop() {
        assert_eq!(parse_range("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_range("0:800:100").unwrap().len(), 9);
        assert_eq!(parse_range("0.1:0.3:0.1").unwrap().len(), 3);
        assert_eq!(parse_range("5:5:1").unwrap(), vec![5.0]);
    }

    #[test]
    fn empty_or_malformed_ranges_are_usage_errors() {
        for spec in ["1:0:1", "0:1:0", "0:1:-1", "0:1", "a:b:c", "0:inf:1"] {
            assert!(matches!(parse_range(spec), Err(CliError::Usage(_))), "{spec}");
        }
    }
}
