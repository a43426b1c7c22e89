use rayon::prelude::*;

use iabcache::analytic::{
    apt_from_parts, coverage_backhaul, coverage_mbs, coverage_sbs, write_integrand_samples, CoverageTriple,
    Destination, LinkBudget, RateCoefficients,
};
use iabcache::model::{check_cache, db_to_linear, hit_ratio};

use super::{binding_name, check_eta, sorted, Context};
use crate::args::AnalyzeArgs;
use crate::error::{CliError, CliResult};
use crate::output::num;

pub const HEADER: [&str; 6] = ["gamma_dB", "cov_sbs", "cov_mbs", "cov_bh", "apt_total", "binding_side"];

pub fn run(ctx: &mut Context, args: &AnalyzeArgs) -> CliResult<()> {
    check_eta(args.eta)?;
    check_cache(args.cache, &ctx.cfg)?;
    let gammas = sorted(args.gamma_db.clone())?;
    if gammas.is_empty() {
        return Err(CliError::Usage("no thresholds given".into()));
    }
    let rows = gammas
        .par_iter()
        .map(|&g| -> CliResult<Vec<String>> {
            let mut cfg = ctx.cfg.clone();
            cfg.gamma0 = db_to_linear(g);
            let cov = CoverageTriple {
                sbs: coverage_sbs(cfg.gamma0, args.cache, &cfg)?.value,
                mbs: coverage_mbs(cfg.gamma0, args.cache, &cfg)?.value,
                backhaul: coverage_backhaul(cfg.gamma0, &cfg)?.value,
            };
            let b = apt_from_parts(args.eta, hit_ratio(args.cache, &cfg)?, &cov, &RateCoefficients::new(&cfg));
            Ok(vec![
                num(g),
                num(cov.sbs),
                num(cov.mbs),
                num(cov.backhaul),
                num(b.total),
                binding_name(b.binding_side).to_string(),
            ])
        })
        .collect::<CliResult<Vec<_>>>()?;
    ctx.out.write_csv("analyze.csv", &HEADER, &rows)?;

    if ctx.trace {
        let budget = LinkBudget::for_cache(args.cache, &ctx.cfg)?;
        let radii: Vec<f64> = (0..=240).map(|i| 10f64.powf(-1.0 + i as f64 / 60.0)).collect();
        for (i, &g) in gammas.iter().enumerate() {
            for (dest, tag) in [
                (Destination::UserToSbs, "sbs"),
                (Destination::UserToMbs, "mbs"),
                (Destination::SbsToMbsBackhaul, "backhaul"),
            ] {
                let mut w = ctx.out.create_file(&format!("integrand_{tag}_{i}.csv"))?;
                write_integrand_samples(dest, db_to_linear(g), &budget, &ctx.cfg, &radii, &mut w)?;
            }
        }
    }
    println!("analyze: {} threshold(s), C = {}, eta = {}", rows.len(), args.cache, args.eta);
    Ok(())
}
