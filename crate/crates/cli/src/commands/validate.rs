use rayon::prelude::*;

use iabcache::analytic::{coverage_backhaul, coverage_mbs, coverage_noise_limited, coverage_sbs, Destination};
use iabcache::model::{check_cache, db_to_linear, Tier};
use iabcache::montecarlo::simulate;

use super::{sorted, Context};
use crate::args::ValidateArgs;
use crate::error::{CliError, CliResult};
use crate::output::num;

pub const HEADER: [&str; 10] = [
    "kind",
    "link",
    "C",
    "gamma_dB",
    "analytic",
    "empirical",
    "ci_half_width_99",
    "abs_diff",
    "tolerance",
    "pass",
];

struct Pair {
    kind: &'static str,
    link: &'static str,
    cache: usize,
    gamma_db: f64,
    analytic: f64,
    empirical: f64,
    ci: f64,
    tolerance: f64,
}

impl Pair {
    fn pass(&self) -> bool {
        (self.analytic - self.empirical).abs() <= self.tolerance
    }
}

pub fn run(ctx: &mut Context, args: &ValidateArgs) -> CliResult<()> {
    if args.n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let gammas = sorted(args.gamma_db.clone())?;
    let mut caches = args.caches.clone();
    caches.sort_unstable();
    caches.dedup();
    if gammas.is_empty() || caches.is_empty() {
        return Err(CliError::Usage("empty threshold or cache grid".into()));
    }
    for &c in &caches {
        check_cache(c, &ctx.cfg)?;
    }
    let cfg = &ctx.cfg;

    let mut pairs = Vec::new();
    for &c in &caches {
        let run = simulate(cfg, c, args.n, ctx.seed)?;
        if ctx.trace {
            let mut w = ctx.out.create_file(&format!("realizations_C{c}.csv"))?;
            run.write_trace(&mut w)?;
        }
        let analytic = gammas
            .par_iter()
            .map(|&g| -> CliResult<[f64; 5]> {
                let x = db_to_linear(g);
                Ok([
                    coverage_sbs(x, c, cfg)?.value,
                    coverage_mbs(x, c, cfg)?.value,
                    coverage_backhaul(x, cfg)?.value,
                    coverage_noise_limited(Tier::Sbs, x, c, cfg)?,
                    coverage_noise_limited(Tier::Mbs, x, c, cfg)?,
                ])
            })
            .collect::<CliResult<Vec<_>>>()?;
        for (&g, a) in gammas.iter().zip(&analytic) {
            let x = db_to_linear(g);
            let coverage = [
                ("sbs", Destination::UserToSbs),
                ("mbs", Destination::UserToMbs),
                ("backhaul", Destination::SbsToMbsBackhaul),
            ];
            for (i, (link, dest)) in coverage.into_iter().enumerate() {
                let e = run.joint_coverage(dest, x);
                pairs.push(Pair {
                    kind: "coverage",
                    link,
                    cache: c,
                    gamma_db: g,
                    analytic: a[i],
                    empirical: e.mean,
                    ci: e.ci_half_width_99,
                    tolerance: args.tolerance,
                });
            }
            for (i, (link, tier)) in [("sbs", Tier::Sbs), ("mbs", Tier::Mbs)].into_iter().enumerate() {
                let e = run.noise_limited_coverage(tier, x);
                pairs.push(Pair {
                    kind: "noise_limited",
                    link,
                    cache: c,
                    gamma_db: g,
                    analytic: a[3 + i],
                    empirical: e.mean,
                    ci: e.ci_half_width_99,
                    tolerance: args.noise_limited_tolerance,
                });
            }
        }
    }
    pairs.sort_by(|a, b| {
        (a.kind, a.link, a.cache)
            .cmp(&(b.kind, b.link, b.cache))
            .then(a.gamma_db.total_cmp(&b.gamma_db))
    });

    let rows: Vec<Vec<String>> = pairs
        .iter()
        .map(|p| {
            vec![
                p.kind.to_string(),
                p.link.to_string(),
                p.cache.to_string(),
                num(p.gamma_db),
                num(p.analytic),
                num(p.empirical),
                num(p.ci),
                num((p.analytic - p.empirical).abs()),
                num(p.tolerance),
                p.pass().to_string(),
            ]
        })
        .collect();
    ctx.out.write_csv("validate.csv", &HEADER, &rows)?;

    let failed: Vec<&Pair> = pairs.iter().filter(|p| !p.pass()).collect();
    println!("validate: {}/{} pairs within tolerance", pairs.len() - failed.len(), pairs.len());
    for p in &failed {
        println!(
            "  FAIL {} {} C={} gamma={} dB: analytic {:.6} vs empirical {:.6}",
            p.kind, p.link, p.cache, p.gamma_db, p.analytic, p.empirical
        );
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{} pair(s) outside tolerance", failed.len())))
    }
}
