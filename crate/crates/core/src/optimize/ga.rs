use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::optimize::problem::Evaluator;

/// Genetic search settings for the cache size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population_size: usize,
    pub generations: usize,
    /// Bits per chromosome; decoded values above the feasible range are clamped.
    pub chromosome_bits: u32,
    pub crossover_rate: f64,
    /// Per-bit flip probability.
    pub mutation_rate: f64,
    pub elitism_count: usize,
    pub tournament_size: usize,
    pub seed: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population_size: 40,
            generations: 50,
            chromosome_bits: 10,
            crossover_rate: 0.8,
            mutation_rate: 0.02,
            elitism_count: 2,
            tournament_size: 2,
            seed: 20_200_525,
        }
    }
}

impl GaParams {
    pub fn validate(&self, c_max: usize) -> Result<()> {
        let bad = |what: &str| Err(Error::domain("gcdpa", what.to_string()));
        if self.population_size == 0 || self.generations == 0 || self.tournament_size == 0 {
            return bad("population, generations and tournament size must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) || !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("rates must lie in [0, 1]");
        }
        if self.elitism_count > self.population_size {
            return bad("elitism exceeds the population");
        }
        if self.chromosome_bits == 0 || self.chromosome_bits > 32 || (1u64 << self.chromosome_bits) <= c_max as u64 {
            return bad("chromosome cannot encode every cache size");
        }
        Ok(())
    }
}

/// Outcome of one genetic search.
#[derive(Debug, Clone, PartialEq)]
pub struct GaOutcome {
    pub cache: usize,
    pub fitness: f64,
    /// Best-so-far fitness after each generation.
    pub history: Vec<f64>,
}

#[derive(Clone, Copy)]
struct Individual {
    genes: u32,
    cache: usize,
    fitness: f64,
}

/// Higher fitness first, smaller cache on ties.
fn better(a: &Individual, b: &Individual) -> bool {
    a.fitness > b.fitness || (a.fitness == b.fitness && a.cache < b.cache)
}

/// Genetic search for the cache size maximizing throughput at spectrum share `eta`.
///
/// `incumbent`, when given, is placed in the initial population.
pub fn gcdpa(eval: &Evaluator, eta: f64, ga: &GaParams, incumbent: Option<usize>) -> Result<GaOutcome> {
    let c_max = eval.max_cache();
    ga.validate(c_max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ga.seed);
    let mask = if ga.chromosome_bits == 32 {
        u32::MAX
    } else {
        (1u32 << ga.chromosome_bits) - 1
    };
    let evaluate = |genes: u32| -> Result<Individual> {
        let cache = (genes as usize).min(c_max);
        Ok(Individual {
            genes,
            cache,
            fitness: eval.apt(eta, cache)?,
        })
    };

    let mut population = Vec::with_capacity(ga.population_size);
    if let Some(c) = incumbent {
        population.push(evaluate(c.min(c_max) as u32)?);
    }
    while population.len() < ga.population_size {
        population.push(evaluate(rng.random::<u32>() & mask)?);
    }

    let mut best = population[0];
    for ind in &population {
        if better(ind, &best) {
            best = *ind;
        }
    }
    let mut history = Vec::with_capacity(ga.generations);

    for _ in 0..ga.generations {
        let mut ranked = population.clone();
        ranked.sort_by(|a, b| {
            b.fitness
                .total_cmp(&a.fitness)
                .then(a.cache.cmp(&b.cache))
        });
        let mut next: Vec<Individual> = ranked.iter().take(ga.elitism_count).copied().collect();

        let tournament = |rng: &mut ChaCha8Rng| {
            let mut pick = population[rng.random_range(0..population.len())];
            for _ in 1..ga.tournament_size {
                let other = population[rng.random_range(0..population.len())];
                if better(&other, &pick) {
                    pick = other;
                }
            }
            pick
        };

        while next.len() < ga.population_size {
            let a = tournament(&mut rng);
            let b = tournament(&mut rng);
            let (mut x, mut y) = (a.genes, b.genes);
            if rng.random::<f64>() < ga.crossover_rate && ga.chromosome_bits > 1 {
                let point = rng.random_range(1..ga.chromosome_bits);
                let low = (1u32 << point) - 1;
                x = (a.genes & !low) | (b.genes & low);
                y = (b.genes & !low) | (a.genes & low);
            }
            for child in [x, y] {
                if next.len() == ga.population_size {
                    break;
                }
                let mut genes = child;
                for bit in 0..ga.chromosome_bits {
                    if rng.random::<f64>() < ga.mutation_rate {
                        genes ^= 1 << bit;
                    }
                }
                next.push(evaluate(genes & mask)?);
            }
        }
        population = next;
        for ind in &population {
            if better(ind, &best) {
                best = *ind;
            }
        }
        history.push(best.fitness);
    }

    Ok(GaOutcome {
        cache: best.cache,
        fitness: best.fitness,
        history,
    })
}

/// Evaluates every feasible cache size; ties go to the smaller cache.
pub fn exhaustive_cache(eval: &Evaluator, eta: f64) -> Result<(usize, f64)> {
    let mut best = (0, eval.apt(eta, 0)?);
    for c in 1..=eval.max_cache() {
        let v = eval.apt(eta, c)?;
        if v > best.1 {
            best = (c, v);
        }
    }
    Ok(best)
}
