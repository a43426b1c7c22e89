//! File popularity and SBS cache hit ratio.

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::scalar::Real;

/// Placement policy deciding which files an SBS of capacity `C` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CachePolicy {
    /// The `C` most popular files.
    MostPopular,
    /// Every file cached with identical probability `C/F`.
    Uniform,
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Default)]
struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// Zipf popularity with prefix sums, so hit ratios are `O(1)` lookups.
#[derive(Debug, Clone)]
pub struct Popularity<T> {
    /// `prefix[c] = Σ_{f ≤ c} f^{-γ}`, `prefix[0] = 0`.
    prefix: Vec<T>,
}

impl<T: Real> Popularity<T> {
    pub fn new(library_size: usize, skewness: T) -> Self {
        let mut prefix = Vec::with_capacity(library_size + 1);
        prefix.push(T::zero());
        let mut acc = CompensatedSum::default();
        for f in 1..=library_size {
            acc.add(T::from_usize_lossy(f).powf(-skewness));
            prefix.push(acc.value());
        }
        Popularity { prefix }
    }

    pub fn from_config(cfg: &SystemConfig<T>) -> Self {
        Self::new(cfg.library_size, cfg.gamma_p)
    }

    pub fn library_size(&self) -> usize {
        self.prefix.len() - 1
    }

    /// Request probability of the `f`-th most popular file (1-based).
    pub fn probability(&self, f: usize) -> Result<T> {
        let n = self.library_size();
        if f == 0 || f > n {
            return Err(Error::domain("zipf_popularity", format!("file index {f} outside 1..={n}")));
        }
        let weight = self.prefix[f] - self.prefix[f - 1];
        Ok(weight / self.prefix[n])
    }

    /// Hit ratio when the `c` most popular files are cached.
    pub fn hit_ratio(&self, c: usize) -> Result<T> {
        let n = self.library_size();
        if c > n {
            return Err(Error::domain("hit_ratio", format!("cache size {c} exceeds library size {n}")));
        }
        if c == n {
            return Ok(T::one());
        }
        Ok(self.prefix[c] / self.prefix[n])
    }
}

/// Request probability of file `f` under Zipf popularity.
pub fn zipf_popularity<T: Real>(f: usize, cfg: &SystemConfig<T>) -> Result<T> {
    Popularity::from_config(cfg).probability(f)
}

/// Hit ratio of an SBS caching the `c` most popular files.
pub fn hit_ratio<T: Real>(c: usize, cfg: &SystemConfig<T>) -> Result<T> {
    Popularity::from_config(cfg).hit_ratio(c)
}

/// Expected hit ratio when each file is cached with identical probability.
pub fn uniform_hit_ratio<T: Real>(c: usize, cfg: &SystemConfig<T>) -> Result<T> {
    let n = cfg.library_size;
    if c > n {
        return Err(Error::domain("uniform_hit_ratio", format!("cache size {c} exceeds library size {n}")));
    }
    if n == 0 {
        return Ok(T::one());
    }
    Ok(T::from_usize_lossy(c) / T::from_usize_lossy(n))
}

/// Hit-ratio lookup for a placement policy.
#[derive(Debug, Clone)]
pub struct HitRatioModel<T> {
    policy: CachePolicy,
    popularity: Popularity<T>,
}

impl<T: Real> HitRatioModel<T> {
    pub fn new(cfg: &SystemConfig<T>, policy: CachePolicy) -> Self {
        HitRatioModel {
            policy,
            popularity: Popularity::from_config(cfg),
        }
    }

    pub fn policy(&self) -> CachePolicy {
        self.policy
    }

    pub fn hit_ratio(&self, c: usize) -> Result<T> {
        match self.policy {
            CachePolicy::MostPopular => self.popularity.hit_ratio(c),
            CachePolicy::Uniform => {
                let n = self.popularity.library_size();
                if c > n {
                    return Err(Error::domain("uniform_hit_ratio", format!("cache size {c} exceeds {n}")));
                }
                Ok(if n == 0 {
                    T::one()
                } else {
                    T::from_usize_lossy(c) / T::from_usize_lossy(n)
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(f: usize, gamma_p: f64) -> SystemConfig<f64> {
        SystemConfig {
            library_size: f,
            c_max: f.min(800),
            gamma_p,
            ..SystemConfig::default()
        }
    }

    fn harmonic(n: usize, s: f64) -> f64 {
        // summed smallest-first for accuracy
        (1..=n).rev().map(|k| (k as f64).powf(-s)).sum()
    }

    #[test]
    fn single_file_library() {
        for g in [0.3, 1.0, 2.5] {
            assert_eq!(zipf_popularity(1, &cfg(1, g)).unwrap(), 1.0);
        }
    }

    #[test]
    fn zero_skewness_is_uniform() {
        let p = zipf_popularity(7, &cfg(1000, 0.0)).unwrap();
        assert!((p - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn harmonic_head_probability() {
        let p = zipf_popularity(1, &cfg(1000, 1.0)).unwrap();
        assert!((p - 1.0 / harmonic(1000, 1.0)).abs() < 1e-15);
        assert!((p - 0.133_59).abs() < 5e-6);
    }

    #[test]
    fn hit_ratio_examples() {
        let c = cfg(1000, 1.0);
        assert_eq!(hit_ratio(0, &c).unwrap(), 0.0);
        assert_eq!(hit_ratio(1000, &c).unwrap(), 1.0);
        let h = hit_ratio(100, &c).unwrap();
        assert!((h - harmonic(100, 1.0) / harmonic(1000, 1.0)).abs() < 1e-14);
        assert!((h - 0.693_00).abs() < 1e-5);
    }

    #[test]
    fn uniform_examples() {
        let c = cfg(1000, 1.0);
        assert_eq!(uniform_hit_ratio(0, &c).unwrap(), 0.0);
        assert_eq!(uniform_hit_ratio(1000, &c).unwrap(), 1.0);
        assert_eq!(uniform_hit_ratio(200, &c).unwrap(), 0.2);
    }

    #[test]
    fn out_of_range_is_domain_error() {
        let c = cfg(10, 1.0);
        assert!(matches!(zipf_popularity(0, &c), Err(Error::Domain { .. })));
        assert!(matches!(zipf_popularity(11, &c), Err(Error::Domain { .. })));
        assert!(matches!(hit_ratio(11, &c), Err(Error::Domain { .. })));
        assert!(matches!(uniform_hit_ratio(11, &c), Err(Error::Domain { .. })));
    }

    #[test]
    fn hit_ratio_strictly_increases_with_skewness() {
        let grid = [0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
        for c in [1, 10, 200, 999] {
            let hs: Vec<f64> = grid.iter().map(|&g| hit_ratio(c, &cfg(1000, g)).unwrap()).collect();
            assert!(hs.windows(2).all(|w| w[1] > w[0]), "C={c}: {hs:?}");
        }
    }

    proptest! {
        #[test]
        fn popularity_sums_to_one(f in 1usize..3000, g in 0.0f64..3.0) {
            let pop = Popularity::new(f, g);
            let total: f64 = (1..=f).map(|i| pop.probability(i).unwrap()).sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
        }

        #[test]
        fn hit_ratio_non_decreasing(f in 1usize..2000, g in 0.0f64..3.0) {
            let pop = Popularity::new(f, g);
            let mut prev = 0.0;
            for c in 0..=f {
                let h = pop.hit_ratio(c).unwrap();
                prop_assert!(h >= prev);
                prev = h;
            }
            prop_assert_eq!(prev, 1.0);
        }
    }
}
