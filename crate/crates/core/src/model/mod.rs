//! Network, caching, power and channel parameters and their closed-form sub-models.

mod cache;
mod channel;
mod config;
mod power;

pub use cache::{hit_ratio, uniform_hit_ratio, zipf_popularity, CachePolicy, HitRatioModel, Popularity};
pub use channel::{
    gain_distribution, gain_probabilities_exact, los_nlos_crossover, los_probability, path_loss, GainClass,
    GainDistribution, LinkState, Tier,
};
pub(crate) use channel::state_probability;
pub use config::{
    db_to_linear, dbm_to_watts, linear_to_db, watts_to_dbm, NumericSettings, SystemConfig, CONFIG_KEYS,
    DEFAULT_CONFIG_TEXT,
};
pub use power::{cache_power, check_cache, max_feasible_cache, transmit_power_mbs, transmit_power_sbs};
