use iabcache::model::SystemConfig;

use crate::error::{CliError, CliResult};
use crate::output::OutDir;

pub mod analyze;
pub mod optimize;
pub mod sweep;
pub mod validate;

/// State shared by every subcommand.
pub struct Context {
    pub cfg: SystemConfig<f64>,
    pub seed: u64,
    pub trace: bool,
    pub out: OutDir,
}

pub(crate) fn binding_name(b: iabcache::analytic::BindingSide) -> &'static str {
    match b {
        iabcache::analytic::BindingSide::Access => "access",
        iabcache::analytic::BindingSide::Backhaul => "backhaul",
    }
}

pub(crate) fn check_eta(eta: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("eta must lie in [0, 1], got {eta}")))
    }
}

pub(crate) fn sorted(mut v: Vec<f64>) -> CliResult<Vec<f64>> {
    if let Some(x) = v.iter().find(|x| x.is_nan()) {
        return Err(CliError::Usage(format!("invalid value {x}")));
    }
    v.sort_by(f64::total_cmp);
    Ok(v)
}
