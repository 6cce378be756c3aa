//! Genetic-algorithm itemset miner.
//!
//! Chromosomes are bitstrings over the item universe, decoded directly as
//! itemsets. A generational loop applies roulette-wheel selection,
//! single-point crossover and per-bit mutation; every frequent itemset any
//! evaluated individual decodes to is accumulated in an archive, so the
//! run's output is the union of everything the population ever visited.
//!
//! The archive is sound by construction — fitness is evaluated against the
//! real database, so nothing infrequent is ever archived. Runs are
//! reproducible bit-for-bit from the seed: all randomness comes from one
//! ChaCha8 stream.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::database::{MiningParams, TransactionDatabase};
use crate::error::{Error, Result};
use crate::itemset::Itemset;

/// GA hyperparameters. Defaults: population 20, mutation 0.05 per bit,
/// crossover applied to every pair, generation gap 0.9, one elite,
/// 200 generations with a 50-generation archive-stall cutoff, diversity
/// restarts after 3 stagnant generations, and initial chromosomes drawn
/// with each bit set at probability 0.5.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaConfig {
    pub population_size: usize,
    /// Per-bit flip probability during mutation.
    pub mutation_rate: f64,
    /// Per-pair probability that crossover is applied at all.
    pub crossover_rate: f64,
    /// Fraction of the non-elite population replaced each generation.
    pub generation_gap: f64,
    pub elitism_count: usize,
    pub max_generations: u64,
    /// Stop after this many generations without archive growth; 0 disables
    /// the stall cutoff.
    pub stall_generations: u64,
    /// Reseed every non-elite individual after this many generations
    /// without archive growth, keeping the archive; 0 disables restarts.
    /// A converged population stops visiting new itemsets long before the
    /// generation budget is spent; periodic restarts keep the run
    /// exploring while the elite and the archive carry all progress.
    pub restart_generations: u64,
    /// Probability that each bit of an initial chromosome is set.
    pub init_bit_probability: f64,
    pub rng_seed: u64,
    pub min_support: f64,
}

impl GaConfig {
    pub fn new(min_support: f64, rng_seed: u64) -> Self {
        GaConfig {
            population_size: 20,
            mutation_rate: 0.05,
            crossover_rate: 1.0,
            generation_gap: 0.9,
            elitism_count: 1,
            max_generations: 200,
            stall_generations: 50,
            restart_generations: 3,
            init_bit_probability: 0.5,
            rng_seed,
            min_support,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::usage("population size must be at least 2"));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::usage("mutation rate must be in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::usage("crossover rate must be in [0, 1]"));
        }
        if !(self.generation_gap > 0.0 && self.generation_gap <= 1.0) {
            return Err(Error::usage("generation gap must be in (0, 1]"));
        }
        if self.elitism_count >= self.population_size {
            return Err(Error::usage(
                "elitism count must be smaller than the population size",
            ));
        }
        if !(0.0..=1.0).contains(&self.init_bit_probability) {
            return Err(Error::usage("initial bit probability must be in [0, 1]"));
        }
        if !self.min_support.is_finite() || self.min_support <= 0.0 || self.min_support > 1.0 {
            return Err(Error::usage(format!(
                "minimum support must be in (0, 1], got {}",
                self.min_support
            )));
        }
        Ok(())
    }

    /// Offspring bred per generation: `round(gap * (population - elites))`,
    /// never less than one.
    pub(crate) fn offspring_count(&self) -> usize {
        let replaceable = (self.population_size - self.elitism_count) as f64;
        ((self.generation_gap * replaceable).round() as usize).max(1)
    }
}

/// One individual: a bitstring over the item universe plus its cached score.
#[derive(Clone, Debug, PartialEq)]
pub struct Chromosome {
    pub genes: Itemset,
    cached_fitness: Option<f64>,
}

impl Chromosome {
    pub fn new(genes: Itemset) -> Self {
        Chromosome {
            genes,
            cached_fitness: None,
        }
    }

    pub fn fitness(&self) -> Option<f64> {
        self.cached_fitness
    }
}

/// Scores a chromosome against the database.
///
/// The empty itemset scores 0; an infrequent itemset scores its support
/// fraction (below 1); a frequent itemset scores `1 + |X| / d` (above 1).
/// Every frequent individual therefore outranks every infrequent one, and
/// larger frequent itemsets outrank smaller ones.
pub fn fitness(db: &TransactionDatabase, genes: &Itemset, params: &MiningParams) -> Result<f64> {
    if genes.width() != db.item_count() {
        return Err(Error::usage(format!(
            "chromosome width {} does not match database item count {}",
            genes.width(),
            db.item_count()
        )));
    }
    Ok(score(db, genes, params).0)
}

/// (fitness, support count) without re-validating widths.
fn score(db: &TransactionDatabase, genes: &Itemset, params: &MiningParams) -> (f64, u64) {
    if genes.is_empty() {
        return (0.0, db.transaction_count() as u64);
    }
    let count = db.count_rows_containing(genes);
    let value = if count >= params.min_count() {
        1.0 + genes.cardinality() as f64 / db.item_count() as f64
    } else {
        count as f64 / db.transaction_count() as f64
    };
    (value, count)
}

/// Fitness-proportional (roulette-wheel) sampling with replacement,
/// returning indices into the population. When every fitness is zero the
/// draw falls back to uniform sampling. The population must be evaluated.
pub fn select_parents<R: Rng>(
    population: &[Chromosome],
    count: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if population.is_empty() {
        return Err(Error::usage("cannot select from an empty population"));
    }
    let weights: Vec<f64> = population
        .iter()
        .map(|c| {
            c.fitness()
                .ok_or_else(|| Error::usage("population must be evaluated before selection"))
        })
        .collect::<Result<_>>()?;
    Ok(roulette_indices(&weights, count, rng))
}

fn roulette_indices<R: Rng>(weights: &[f64], count: usize, rng: &mut R) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    let mut picks = Vec::with_capacity(count);
    for _ in 0..count {
        if total > 0.0 {
            let mut ticket = rng.random::<f64>() * total;
            let mut chosen = weights.len() - 1;
            for (index, weight) in weights.iter().enumerate() {
                if ticket < *weight {
                    chosen = index;
                    break;
                }
                ticket -= weight;
            }
            picks.push(chosen);
        } else {
            picks.push(rng.random_range(0..weights.len()));
        }
    }
    picks
}

/// Single-point crossover at a fixed locus `1..=d-1`: the first `locus`
/// positions come from one parent, the rest from the other.
pub fn crossover_at(a: &Itemset, b: &Itemset, locus: usize) -> Result<(Itemset, Itemset)> {
    if a.width() != b.width() {
        return Err(Error::usage("crossover parents must share a width"));
    }
    let d = a.width();
    if locus == 0 || locus >= d {
        return Err(Error::usage(format!(
            "crossover locus must be in 1..={}, got {locus}",
            d - 1
        )));
    }
    let head = Itemset::prefix_mask(d, locus);
    let tail = head.complement();
    let child_a = a.intersection(&head).union(&b.intersection(&tail));
    let child_b = b.intersection(&head).union(&a.intersection(&tail));
    Ok((child_a, child_b))
}

/// Single-point crossover at a uniformly random locus. One-item universes
/// have no valid locus; the children are copies of the parents.
pub fn crossover<R: Rng>(a: &Itemset, b: &Itemset, rng: &mut R) -> Result<(Itemset, Itemset)> {
    if a.width() != b.width() {
        return Err(Error::usage("crossover parents must share a width"));
    }
    let d = a.width();
    if d < 2 {
        return Ok((*a, *b));
    }
    crossover_at(a, b, rng.random_range(1..d))
}

/// Flips each bit independently with probability `rate`.
pub fn mutate<R: Rng>(genes: &Itemset, rate: f64, rng: &mut R) -> Result<Itemset> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::usage(format!(
            "mutation rate must be in [0, 1], got {rate}"
        )));
    }
    let mut out = *genes;
    for bit in 0..genes.width() {
        if rng.random::<f64>() < rate {
            out.toggle_bit(bit);
        }
    }
    Ok(out)
}

/// Snapshot of one generation, taken after its population was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenerationStats {
    pub generation: u64,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub archive_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    /// The configured generation budget was exhausted.
    MaxGenerations,
    /// The archive stopped growing for `stall_generations` generations.
    ArchiveStall,
    /// An external caller stopped the run.
    Manual,
}

/// Outcome of a GA run: the archive of discovered frequent itemsets plus
/// per-generation statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct GaRunResult {
    /// Discovered frequent itemsets with support counts, smallest first,
    /// lexicographic within a size.
    pub archive: Vec<(Itemset, u64)>,
    pub generations_run: u64,
    pub stats: Vec<GenerationStats>,
    pub termination: TerminationReason,
    pub seed: u64,
}

/// Mutable run state: the population, the accumulated archive and the RNG
/// stream. Populations held here are always evaluated.
pub struct GaState {
    population: Vec<Chromosome>,
    archive: BTreeMap<Itemset, u64>,
    stats: Vec<GenerationStats>,
    rng: ChaCha8Rng,
    generation: u64,
    last_growth_generation: u64,
}

impl GaState {
    pub fn population(&self) -> &[Chromosome] {
        &self.population
    }

    pub fn archive(&self) -> &BTreeMap<Itemset, u64> {
        &self.archive
    }

    pub fn stats(&self) -> &[GenerationStats] {
        &self.stats
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    fn evaluate_and_archive(&mut self, db: &TransactionDatabase, params: &MiningParams) {
        for individual in &mut self.population {
            let (value, count) = score(db, &individual.genes, params);
            individual.cached_fitness = Some(value);
            if !individual.genes.is_empty() && count >= params.min_count() {
                if self
                    .archive
                    .insert(individual.genes, count)
                    .is_none()
                {
                    self.last_growth_generation = self.generation;
                }
            }
        }
    }

    fn record_stats(&mut self) {
        let best = self
            .population
            .iter()
            .map(|c| c.cached_fitness.unwrap_or(0.0))
            .fold(0.0f64, f64::max);
        let mean = self
            .population
            .iter()
            .map(|c| c.cached_fitness.unwrap_or(0.0))
            .sum::<f64>()
            / self.population.len() as f64;
        self.stats.push(GenerationStats {
            generation: self.generation,
            best_fitness: best,
            mean_fitness: mean,
            archive_size: self.archive.len(),
        });
    }

    /// Ranks the population best-first for replacement: fitness descending,
    /// with repeated genotypes ranked below every distinct one (a duplicate
    /// adds no information, so it is the first to go), ties then broken by
    /// the genes for determinism.
    fn rank_for_replacement(&mut self) {
        self.population.sort_unstable_by(|a, b| {
            let fa = a.cached_fitness.unwrap_or(0.0);
            let fb = b.cached_fitness.unwrap_or(0.0);
            fb.partial_cmp(&fa)
                .expect("fitness is never NaN")
                .then_with(|| a.genes.cmp(&b.genes))
        });
        let mut seen = std::collections::BTreeSet::new();
        let (unique, duplicates): (Vec<Chromosome>, Vec<Chromosome>) = self
            .population
            .drain(..)
            .partition(|c| seen.insert(c.genes));
        self.population = unique;
        self.population.extend(duplicates);
    }

    /// Replaces every non-elite individual with fresh random genes, keeping
    /// the archive and the RNG stream. Used by [`mine`] when the archive
    /// stagnates.
    fn reseed_non_elite(
        &mut self,
        db: &TransactionDatabase,
        config: &GaConfig,
        params: &MiningParams,
    ) {
        self.rank_for_replacement();
        let d = db.item_count();
        for individual in self.population.iter_mut().skip(config.elitism_count) {
            let mut genes = Itemset::empty(d).expect("validated width");
            for bit in 0..d {
                if self.rng.random::<f64>() < config.init_bit_probability {
                    genes.set_bit(bit);
                }
            }
            *individual = Chromosome::new(genes);
        }
        self.evaluate_and_archive(db, params);
    }
}

/// Draws the initial population, evaluates it and records generation 0.
pub fn init(db: &TransactionDatabase, config: &GaConfig) -> Result<GaState> {
    config.validate()?;
    let params = MiningParams::new(config.min_support, db.transaction_count())?;
    let d = db.item_count();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);

    let mut population = Vec::with_capacity(config.population_size);
    for _ in 0..config.population_size {
        let mut genes = Itemset::empty(d)?;
        for bit in 0..d {
            if rng.random::<f64>() < config.init_bit_probability {
                genes.set_bit(bit);
            }
        }
        population.push(Chromosome::new(genes));
    }

    let mut state = GaState {
        population,
        archive: BTreeMap::new(),
        stats: Vec::new(),
        rng,
        generation: 0,
        last_growth_generation: 0,
    };
    state.evaluate_and_archive(db, &params);
    state.record_stats();
    Ok(state)
}

/// Advances the state by one generation: breeds offspring from the current
/// population, replaces the worst-ranked non-elite individuals, then
/// evaluates and archives the new population.
///
/// The elite individuals survive unchanged; the number of offspring is
/// `round(generation_gap * (population_size - elitism_count))`, floored at
/// one; the population size never changes.
pub fn evolve_generation(
    state: &mut GaState,
    db: &TransactionDatabase,
    config: &GaConfig,
) -> Result<()> {
    config.validate()?;
    let params = MiningParams::new(config.min_support, db.transaction_count())?;
    if state.population.len() != config.population_size {
        return Err(Error::usage(
            "state population does not match the configured population size",
        ));
    }

    state.rank_for_replacement();

    let offspring_count = config.offspring_count();
    let weights: Vec<f64> = state
        .population
        .iter()
        .map(|c| c.cached_fitness.unwrap_or(0.0))
        .collect();

    let mut offspring = Vec::with_capacity(offspring_count);
    while offspring.len() < offspring_count {
        let parents = roulette_indices(&weights, 2, &mut state.rng);
        let first = state.population[parents[0]].genes;
        let second = state.population[parents[1]].genes;
        let (child_a, child_b) = if state.rng.random::<f64>() < config.crossover_rate {
            crossover(&first, &second, &mut state.rng)?
        } else {
            (first, second)
        };
        offspring.push(Chromosome::new(mutate(
            &child_a,
            config.mutation_rate,
            &mut state.rng,
        )?));
        if offspring.len() < offspring_count {
            offspring.push(Chromosome::new(mutate(
                &child_b,
                config.mutation_rate,
                &mut state.rng,
            )?));
        }
    }

    state.population.truncate(config.population_size - offspring_count);
    state.population.append(&mut offspring);
    state.generation += 1;
    state.evaluate_and_archive(db, &params);
    state.record_stats();
    Ok(())
}

/// Runs the full GA: random initial population, then generations until the
/// budget is exhausted or the archive stalls. When the archive has been
/// stagnant for a multiple of `restart_generations`, the non-elite
/// population is reseeded before the next generation. Reproducible
/// bit-for-bit from `config.rng_seed`.
pub fn mine(db: &TransactionDatabase, config: &GaConfig) -> Result<GaRunResult> {
    let mut state = init(db, config)?;
    let params = MiningParams::new(config.min_support, db.transaction_count())?;
    let mut termination = TerminationReason::MaxGenerations;
    while state.generation < config.max_generations {
        let stagnant = state.generation - state.last_growth_generation;
        if config.restart_generations > 0
            && stagnant > 0
            && stagnant % config.restart_generations == 0
        {
            state.reseed_non_elite(db, config, &params);
        }
        evolve_generation(&mut state, db, config)?;
        if config.stall_generations > 0
            && state.generation - state.last_growth_generation >= config.stall_generations
        {
            termination = TerminationReason::ArchiveStall;
            break;
        }
    }

    let mut archive: Vec<(Itemset, u64)> = state.archive.into_iter().collect();
    crate::apriori::sort_by_size_then_lex(&mut archive);
    Ok(GaRunResult {
        archive,
        generations_run: state.generation,
        stats: state.stats,
        termination,
        seed: config.rng_seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::load_binary_matrix;

    const DEMO: &str = include_str!("../../../data/demo_transactions.csv");

    fn demo_db() -> TransactionDatabase {
        load_binary_matrix(DEMO, "demo").unwrap()
    }

    fn demo_params() -> MiningParams {
        MiningParams::new(0.20, 15).unwrap()
    }

    fn set(items: &[u16]) -> Itemset {
        Itemset::from_items(9, items).unwrap()
    }

    #[test]
    fn fitness_tiers() {
        let db = demo_db();
        let params = demo_params();
        // Frequent: above 1, growing with size.
        assert_eq!(
            fitness(&db, &set(&[3, 5, 7]), &params).unwrap(),
            1.0 + 3.0 / 9.0
        );
        assert_eq!(fitness(&db, &set(&[5]), &params).unwrap(), 1.0 + 1.0 / 9.0);
        // Infrequent: the raw support fraction.
        assert_eq!(fitness(&db, &set(&[1]), &params).unwrap(), 2.0 / 15.0);
        // Empty: zero, despite full support.
        assert_eq!(
            fitness(&db, &Itemset::empty(9).unwrap(), &params).unwrap(),
            0.0
        );
    }

    #[test]
    fn fitness_width_mismatch() {
        let db = demo_db();
        let narrow = Itemset::single(3, 1).unwrap();
        assert!(fitness(&db, &narrow, &demo_params()).is_err());
    }

    #[test]
    fn selection_single_individual() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut only = Chromosome::new(set(&[2]));
        only.cached_fitness = Some(0.5);
        let picks = select_parents(&[only], 5, &mut rng).unwrap();
        assert_eq!(picks, vec![0, 0, 0, 0, 0]);
    }

    #[test]
    fn selection_is_fitness_proportional() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let picks = roulette_indices(&[3.0, 1.0], 10_000, &mut rng);
        let first = picks.iter().filter(|&&p| p == 0).count() as f64 / 10_000.0;
        assert!((first - 0.75).abs() <= 0.02, "observed {first}");
    }

    #[test]
    fn selection_zero_fitness_falls_back_to_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let picks = roulette_indices(&[0.0, 0.0], 10_000, &mut rng);
        let first = picks.iter().filter(|&&p| p == 0).count() as f64 / 10_000.0;
        assert!((first - 0.5).abs() <= 0.02, "observed {first}");
    }

    #[test]
    fn selection_requires_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let raw = Chromosome::new(set(&[2]));
        assert!(select_parents(&[raw], 1, &mut rng).is_err());
        assert!(select_parents(&[], 1, &mut rng).is_err());
    }

    #[test]
    fn crossover_swaps_the_tail() {
        let a = set(&[1, 3, 5, 7, 9]); // 101010101
        let b = set(&[2, 4, 6, 8]); // 010101010
        let (c1, c2) = crossover_at(&a, &b, 4).unwrap();
        assert_eq!(c1, set(&[1, 3, 6, 8])); // 101001010
        assert_eq!(c2, set(&[2, 4, 5, 7, 9])); // 010110101
    }

    #[test]
    fn crossover_identical_parents() {
        let a = set(&[2, 5, 8]);
        for locus in 1..9 {
            let (c1, c2) = crossover_at(&a, &a, locus).unwrap();
            assert_eq!(c1, a);
            assert_eq!(c2, a);
        }
    }

    #[test]
    fn crossover_two_item_universe() {
        let a = Itemset::from_items(2, &[1, 2]).unwrap();
        let b = Itemset::empty(2).unwrap();
        let (c1, c2) = crossover_at(&a, &b, 1).unwrap();
        assert_eq!(c1.items(), vec![1]);
        assert_eq!(c2.items(), vec![2]);
        assert!(crossover_at(&a, &b, 2).is_err());
        assert!(crossover_at(&a, &b, 0).is_err());
    }

    #[test]
    fn crossover_single_item_universe_copies() {
        let a = Itemset::single(1, 1).unwrap();
        let b = Itemset::empty(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (c1, c2) = crossover(&a, &b, &mut rng).unwrap();
        assert_eq!((c1, c2), (a, b));
    }

    #[test]
    fn mutation_extremes() {
        let genes = set(&[2, 5, 8]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(mutate(&genes, 0.0, &mut rng).unwrap(), genes);
        assert_eq!(mutate(&genes, 1.0, &mut rng).unwrap(), genes.complement());
        assert!(mutate(&genes, 1.5, &mut rng).is_err());
    }

    #[test]
    fn mutation_flip_rate_matches_expectation() {
        let genes = Itemset::empty(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let trials = 100_000u32;
        let mut flips = 0u64;
        for _ in 0..trials {
            flips += mutate(&genes, 0.05, &mut rng).unwrap().cardinality() as u64;
        }
        let mean = flips as f64 / trials as f64;
        let expected = 0.05 * 9.0;
        assert!(
            (mean - expected).abs() <= expected * 0.10,
            "observed {mean}, expected {expected} +/- 10%"
        );
    }

    #[test]
    fn offspring_count_formula() {
        let mut config = GaConfig::new(0.2, 0);
        assert_eq!(config.offspring_count(), 17); // round(0.9 * 19)
        config.generation_gap = 1.0;
        config.elitism_count = 0;
        assert_eq!(config.offspring_count(), 20);
        config.generation_gap = 0.001;
        config.elitism_count = 1;
        assert_eq!(config.offspring_count(), 1); // floored at one
    }

    #[test]
    fn population_size_is_conserved() {
        let db = demo_db();
        let config = GaConfig::new(0.20, 5);
        let mut state = init(&db, &config).unwrap();
        for _ in 0..5 {
            evolve_generation(&mut state, &db, &config).unwrap();
            assert_eq!(state.population().len(), config.population_size);
        }
    }

    #[test]
    fn archive_only_grows() {
        let db = demo_db();
        let config = GaConfig::new(0.20, 13);
        let mut state = init(&db, &config).unwrap();
        let mut previous = state.archive().clone();
        for _ in 0..10 {
            evolve_generation(&mut state, &db, &config).unwrap();
            assert!(previous.keys().all(|k| state.archive().contains_key(k)));
            previous = state.archive().clone();
        }
    }

    #[test]
    fn zero_generation_budget_keeps_initial_archive() {
        let db = demo_db();
        let mut config = GaConfig::new(0.20, 21);
        config.max_generations = 0;
        let result = mine(&db, &config).unwrap();
        assert_eq!(result.generations_run, 0);
        assert_eq!(result.stats.len(), 1);
        assert_eq!(result.termination, TerminationReason::MaxGenerations);
        assert_eq!(result.archive.len(), result.stats[0].archive_size);
    }

    #[test]
    fn equal_seeds_reproduce_runs() {
        let db = demo_db();
        let config = GaConfig::new(0.20, 1234);
        let a = mine(&db, &config).unwrap();
        let b = mine(&db, &config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn archived_itemsets_are_frequent() {
        let db = demo_db();
        let params = demo_params();
        let config = GaConfig::new(0.20, 77);
        let result = mine(&db, &config).unwrap();
        assert!(!result.archive.is_empty());
        for (set, count) in &result.archive {
            assert!(!set.is_empty());
            assert_eq!(db.support_count(set).unwrap(), *count);
            assert!(*count >= params.min_count());
        }
    }

    #[test]
    fn stall_cutoff_fires() {
        // One item, sigma tiny: the only frequent itemset is found at once,
        // so the archive stalls immediately after.
        let db = load_binary_matrix("1\n1\n", "tiny").unwrap();
        let mut config = GaConfig::new(0.5, 3);
        config.stall_generations = 5;
        config.max_generations = 1000;
        let result = mine(&db, &config).unwrap();
        assert_eq!(result.termination, TerminationReason::ArchiveStall);
        assert!(result.generations_run <= 20);
    }

    #[test]
    fn config_validation() {
        let mut config = GaConfig::new(0.2, 0);
        config.population_size = 1;
        assert!(config.validate().is_err());
        let mut config = GaConfig::new(0.2, 0);
        config.elitism_count = 20;
        assert!(config.validate().is_err());
        let mut config = GaConfig::new(0.2, 0);
        config.generation_gap = 0.0;
        assert!(config.validate().is_err());
        let config = GaConfig::new(1.2, 0);
        assert!(config.validate().is_err());
    }
}
