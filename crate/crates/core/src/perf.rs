//! Repeated-run GA measurement and level-wise scaling benchmarks.
//!
//! A campaign executes `runs` independent seeded GA runs, each to the same
//! generation budget, and summarizes them as three curves over the budget
//! `k`: the fraction of runs that reached the optimality criterion within k
//! generations, the mean best fitness at generation k, and the fraction of
//! runs that saw a best-fitness jump of at least `leap_delta` by generation
//! k. Cutoff planning then trades the per-run budget against the number of
//! runs: with `runs` repetitions of a `k`-generation run the chance that
//! all of them miss is `(1 - success(k))^runs`.

use rayon::prelude::*;

use std::time::Instant;

use crate::apriori;
use crate::database::{MiningParams, TransactionDatabase};
use crate::error::{Error, Result};
use crate::ga::{self, GaConfig};
use crate::synth::{generate_synthetic, SyntheticModel};

/// Mixes a base seed and a run index into an independent per-run seed.
/// This is the splitmix64 finalizer over `base XOR (index + 1) * phi`.
pub fn derive_run_seed(base_seed: u64, run_index: u64) -> u64 {
    splitmix64(base_seed ^ (run_index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// When a run counts as successful.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OptimalityCriterion {
    /// The archive holds every frequent itemset of the exact miner. Because
    /// the archive is always a subset of that family, reaching the family's
    /// size is equivalent to full recall.
    FullRecallVsApriori,
    /// The generation's best fitness reaches the threshold.
    ReachTargetFitness(f64),
}

/// Campaign shape: how many runs, how long each, and how success and leaps
/// are judged.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureCampaign {
    pub runs: usize,
    /// Generation budget per run (the largest cutoff examined).
    pub max_generations: u64,
    pub base_seed: u64,
    pub criterion: OptimalityCriterion,
    /// Smallest best-fitness jump between consecutive generations that
    /// counts as a leap.
    pub leap_delta: f64,
    /// Failure probability target for the per-budget cutoff table; `None`
    /// omits the table.
    pub failure_target: Option<f64>,
    /// Worker threads for the runs: 0 uses the default pool, 1 runs
    /// sequentially.
    pub threads: usize,
}

impl MeasureCampaign {
    pub fn new(runs: usize, max_generations: u64, base_seed: u64) -> Self {
        MeasureCampaign {
            runs,
            max_generations,
            base_seed,
            criterion: OptimalityCriterion::FullRecallVsApriori,
            leap_delta: 0.5,
            failure_target: None,
            threads: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::usage("a campaign needs at least one run"));
        }
        if self.max_generations == 0 {
            return Err(Error::usage("a campaign needs at least one generation"));
        }
        if !self.leap_delta.is_finite() || self.leap_delta <= 0.0 {
            return Err(Error::usage("leap delta must be positive"));
        }
        if let Some(eps) = self.failure_target {
            if !eps.is_finite() || eps <= 0.0 {
                return Err(Error::usage("failure target must be positive"));
            }
        }
        if let OptimalityCriterion::ReachTargetFitness(t) = self.criterion {
            if !t.is_finite() && t != f64::INFINITY {
                return Err(Error::usage("target fitness must not be NaN"));
            }
        }
        Ok(())
    }
}

/// One row of the cutoff table: the cheapest number of runs at a given
/// per-run budget that pushes the failure probability under the target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffRow {
    pub generations: u64,
    pub runs_needed: u64,
    /// generations x runs.
    pub total_cost: u64,
    pub failure_probability: f64,
}

/// Campaign summary. All curves are indexed by `k - 1` for budgets
/// `k = 1..=max_generations`.
#[derive(Clone, Debug, PartialEq)]
pub struct CampaignReport {
    pub runs: usize,
    pub max_generations: u64,
    pub base_seed: u64,
    pub leap_delta: f64,
    /// Size of the exact family under full-recall criteria.
    pub target_family_size: Option<usize>,
    /// Fraction of runs that reached the criterion within k generations.
    pub success_fraction: Vec<f64>,
    /// Mean over runs of the best fitness at generation k.
    pub mean_best_fitness: Vec<f64>,
    /// Fraction of runs with at least one leap by generation k.
    pub leap_fraction: Vec<f64>,
    /// First successful generation per run (0 = initial population).
    pub first_success: Vec<Option<u64>>,
    pub run_seeds: Vec<u64>,
    pub cutoff_table: Vec<CutoffRow>,
    /// Wall-clock of the whole campaign, in seconds.
    pub elapsed_seconds: f64,
}

/// Runs the campaign: `runs` GA runs with derived seeds, each taken to the
/// full generation budget (the stall cutoff is disabled so every run yields
/// a complete trace). Deterministic given `(base_seed, base_config)` up to
/// the timing field.
pub fn run_campaign(
    db: &TransactionDatabase,
    base_config: &GaConfig,
    campaign: &MeasureCampaign,
) -> Result<CampaignReport> {
    campaign.validate()?;
    base_config.validate()?;
    let started = Instant::now();

    let target_family_size = match campaign.criterion {
        OptimalityCriterion::FullRecallVsApriori => {
            let params = MiningParams::new(base_config.min_support, db.transaction_count())?;
            Some(apriori::mine(db, &params).family().len())
        }
        OptimalityCriterion::ReachTargetFitness(_) => None,
    };

    let run_seeds: Vec<u64> = (0..campaign.runs as u64)
        .map(|i| derive_run_seed(campaign.base_seed, i))
        .collect();

    let run_one = |seed: &u64| -> Result<ga::GaRunResult> {
        let mut config = base_config.clone();
        config.rng_seed = *seed;
        config.max_generations = campaign.max_generations;
        config.stall_generations = 0;
        ga::mine(db, &config)
    };

    let results: Vec<ga::GaRunResult> = match campaign.threads {
        1 => run_seeds.iter().map(run_one).collect::<Result<_>>()?,
        0 => run_seeds.par_iter().map(run_one).collect::<Result<_>>()?,
        threads => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::usage(format!("cannot build thread pool: {e}")))?;
            pool.install(|| run_seeds.par_iter().map(run_one).collect::<Result<_>>())?
        }
    };

    let k_max = campaign.max_generations;
    let first_success: Vec<Option<u64>> = results
        .iter()
        .map(|run| match campaign.criterion {
            OptimalityCriterion::FullRecallVsApriori => {
                let target = target_family_size.expect("set for full recall");
                run.stats
                    .iter()
                    .find(|s| s.archive_size == target)
                    .map(|s| s.generation)
            }
            OptimalityCriterion::ReachTargetFitness(threshold) => run
                .stats
                .iter()
                .find(|s| s.best_fitness >= threshold)
                .map(|s| s.generation),
        })
        .collect();

    let mut success_fraction = Vec::with_capacity(k_max as usize);
    let mut mean_best_fitness = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let successes = first_success
            .iter()
            .filter(|f| matches!(f, Some(g) if *g <= k))
            .count();
        success_fraction.push(successes as f64 / campaign.runs as f64);
        let sum: f64 = results
            .iter()
            .map(|run| run.stats[k as usize].best_fitness)
            .sum();
        mean_best_fitness.push(sum / campaign.runs as f64);
    }

    let traces: Vec<Vec<f64>> = results
        .iter()
        .map(|run| run.stats.iter().map(|s| s.best_fitness).collect())
        .collect();
    let leap_fraction = leap_likelihood(&traces, campaign.leap_delta)?;

    let cutoff_table = match campaign.failure_target {
        Some(eps) => build_cutoff_table(&success_fraction, eps),
        None => Vec::new(),
    };

    Ok(CampaignReport {
        runs: campaign.runs,
        max_generations: k_max,
        base_seed: campaign.base_seed,
        leap_delta: campaign.leap_delta,
        target_family_size,
        success_fraction,
        mean_best_fitness,
        leap_fraction,
        first_success,
        run_seeds,
        cutoff_table,
        elapsed_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Fraction of runs with at least one best-fitness jump of `delta` by
/// generation k, for k = 1..trace length. All traces must have the same
/// length; index 0 is the initial population.
pub fn leap_likelihood(traces: &[Vec<f64>], delta: f64) -> Result<Vec<f64>> {
    if traces.is_empty() {
        return Err(Error::usage("leap likelihood needs at least one trace"));
    }
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::usage("leap delta must be positive"));
    }
    let len = traces[0].len();
    if len == 0 || traces.iter().any(|t| t.len() != len) {
        return Err(Error::usage("traces must share a nonzero length"));
    }

    let first_leap: Vec<Option<usize>> = traces
        .iter()
        .map(|trace| (1..len).find(|&g| trace[g] - trace[g - 1] >= delta))
        .collect();
    let mut curve = Vec::with_capacity(len - 1);
    for k in 1..len {
        let leapt = first_leap
            .iter()
            .filter(|f| matches!(f, Some(g) if *g <= k))
            .count();
        curve.push(leapt as f64 / traces.len() as f64);
    }
    Ok(curve)
}

/// `(1 - p)^runs`: the probability that every one of `runs` independent
/// attempts misses.
pub fn failure_probability(success: f64, runs: u64) -> f64 {
    (1.0 - success).powi(runs as i32)
}

const MAX_RUNS: u64 = 1_000_000;

/// Smallest number of runs pushing the failure probability to `eps` or
/// below, or `None` when no count up to [`MAX_RUNS`] does.
fn minimal_runs(success: f64, eps: f64) -> Option<u64> {
    if eps >= 1.0 || success >= 1.0 {
        return Some(1);
    }
    if success <= 0.0 {
        return None;
    }
    let approx = (eps.ln() / (1.0 - success).ln()).ceil();
    let mut runs = if approx.is_finite() && approx >= 1.0 {
        (approx as u64).min(MAX_RUNS)
    } else {
        1
    };
    while runs > 1 && failure_probability(success, runs - 1) <= eps {
        runs -= 1;
    }
    while failure_probability(success, runs) > eps {
        runs += 1;
        if runs > MAX_RUNS {
            return None;
        }
    }
    Some(runs)
}

fn build_cutoff_table(success_fraction: &[f64], eps: f64) -> Vec<CutoffRow> {
    let mut table = Vec::new();
    for (index, &p) in success_fraction.iter().enumerate() {
        let generations = index as u64 + 1;
        if let Some(runs_needed) = minimal_runs(p, eps) {
            table.push(CutoffRow {
                generations,
                runs_needed,
                total_cost: generations * runs_needed,
                failure_probability: failure_probability(p, runs_needed),
            });
        }
    }
    table
}

/// How a cutoff plan is optimized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CutoffMode {
    /// Spend at most this total cost (generations x runs) and minimize the
    /// failure probability.
    FixedBudget(u64),
    /// Keep the failure probability at or below this value and minimize the
    /// total cost.
    FixedFailure(f64),
}

/// A chosen trade-off between per-run generations and repeated runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffPlan {
    pub generations: u64,
    pub runs: u64,
    pub total_cost: u64,
    pub failure_probability: f64,
}

const MAX_BUDGET: u64 = 1_000_000_000;

/// Picks the best (generations, runs) pair for the report's success curve.
/// Ties break toward fewer generations, then fewer runs.
pub fn best_cutoff(report: &CampaignReport, mode: CutoffMode) -> Result<CutoffPlan> {
    let curve = &report.success_fraction;
    if curve.is_empty() {
        return Err(Error::usage("report has an empty success curve"));
    }

    match mode {
        CutoffMode::FixedBudget(budget) => {
            if budget == 0 || budget > MAX_BUDGET {
                return Err(Error::usage(format!(
                    "budget must be in 1..={MAX_BUDGET}, got {budget}"
                )));
            }
            if !curve.iter().any(|&p| p > 0.0) {
                return Err(Error::Infeasible(
                    "the optimality criterion was never reached; no budget split can help"
                        .to_string(),
                ));
            }
            let mut best: Option<CutoffPlan> = None;
            for (index, &p) in curve.iter().enumerate() {
                let generations = index as u64 + 1;
                if generations > budget {
                    break;
                }
                // Failure shrinks with more runs unless p is 0 or 1, where
                // every run count ties and one run is the smallest.
                let runs = if p == 0.0 || p >= 1.0 {
                    1
                } else {
                    budget / generations
                };
                let plan = CutoffPlan {
                    generations,
                    runs,
                    total_cost: generations * runs,
                    failure_probability: failure_probability(p, runs),
                };
                best = Some(match best {
                    None => plan,
                    Some(current) if better_budget_plan(&plan, &current) => plan,
                    Some(current) => current,
                });
            }
            Ok(best.expect("curve is nonempty and budget >= 1"))
        }
        CutoffMode::FixedFailure(eps) => {
            if !eps.is_finite() || eps <= 0.0 {
                return Err(Error::usage(format!(
                    "failure target must be positive, got {eps}"
                )));
            }
            let mut best: Option<CutoffPlan> = None;
            for (index, &p) in curve.iter().enumerate() {
                let generations = index as u64 + 1;
                let Some(runs) = minimal_runs(p, eps) else {
                    continue;
                };
                let plan = CutoffPlan {
                    generations,
                    runs,
                    total_cost: generations * runs,
                    failure_probability: failure_probability(p, runs),
                };
                best = Some(match best {
                    None => plan,
                    Some(current) if better_failure_plan(&plan, &current) => plan,
                    Some(current) => current,
                });
            }
            best.ok_or_else(|| {
                Error::Infeasible(format!(
                    "no (generations, runs) pair reaches failure probability {eps}"
                ))
            })
        }
    }
}

fn better_budget_plan(a: &CutoffPlan, b: &CutoffPlan) -> bool {
    (a.failure_probability, a.generations, a.runs)
        < (b.failure_probability, b.generations, b.runs)
}

fn better_failure_plan(a: &CutoffPlan, b: &CutoffPlan) -> bool {
    (a.total_cost, a.generations, a.runs) < (b.total_cost, b.generations, b.runs)
}

/// One measured size of the scaling benchmark.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub transaction_count: usize,
    pub item_count: usize,
    /// Median mining wall-clock over the repetitions, in seconds.
    pub median_seconds: f64,
    /// Candidates counted per level.
    pub level_candidates: Vec<u64>,
    pub total_candidates: u64,
    pub family_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubledDimension {
    Transactions,
    Items,
}

/// Ratio between two rows where one dimension exactly doubles.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublingRatio {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub dimension: DoubledDimension,
    pub runtime_ratio: f64,
    /// Growth of the level-2 candidate count; the structural signal for the
    /// quadratic dependence on the item count.
    pub level2_candidate_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub sizes: Vec<(usize, usize)>,
    pub model: SyntheticModel,
    pub min_support: f64,
    pub seed: u64,
    pub repetitions: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub ratios: Vec<DoublingRatio>,
}

/// Generates one database per size and times the exact miner on it,
/// reporting the median of `repetitions` timed runs after one warm-up.
/// Runs single-threaded; timing is wall-clock.
pub fn apriori_scaling_bench(spec: &BenchSpec) -> Result<BenchReport> {
    if spec.sizes.is_empty() {
        return Err(Error::usage("benchmark needs at least one (n, d) size"));
    }
    if spec.repetitions == 0 {
        return Err(Error::usage("benchmark needs at least one repetition"));
    }

    let mut rows = Vec::with_capacity(spec.sizes.len());
    for (index, &(n, d)) in spec.sizes.iter().enumerate() {
        let db = generate_synthetic(n, d, &spec.model, derive_run_seed(spec.seed, index as u64))?;
        let params = MiningParams::new(spec.min_support, n)?;

        let warmup = apriori::mine(&db, &params);
        let mut timings = Vec::with_capacity(spec.repetitions);
        for _ in 0..spec.repetitions {
            let started = Instant::now();
            let result = apriori::mine(&db, &params);
            timings.push(started.elapsed().as_secs_f64());
            debug_assert_eq!(result.trace.total_candidates, warmup.trace.total_candidates);
        }
        timings.sort_unstable_by(|a, b| a.partial_cmp(b).expect("timings are finite"));
        let median = if timings.len() % 2 == 1 {
            timings[timings.len() / 2]
        } else {
            (timings[timings.len() / 2 - 1] + timings[timings.len() / 2]) / 2.0
        };

        rows.push(BenchRow {
            transaction_count: n,
            item_count: d,
            median_seconds: median,
            level_candidates: warmup.trace.levels.iter().map(|l| l.candidate_count).collect(),
            total_candidates: warmup.trace.total_candidates,
            family_size: warmup.levels.iter().map(|l| l.frequents.len()).sum(),
        });
    }

    let mut ratios = Vec::new();
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            if i == j {
                continue;
            }
            let (a, b) = (&rows[i], &rows[j]);
            let dimension = if a.item_count == b.item_count
                && b.transaction_count == 2 * a.transaction_count
            {
                DoubledDimension::Transactions
            } else if a.transaction_count == b.transaction_count
                && b.item_count == 2 * a.item_count
            {
                DoubledDimension::Items
            } else {
                continue;
            };
            let level2 = match (a.level_candidates.get(1), b.level_candidates.get(1)) {
                (Some(&x), Some(&y)) if x > 0 => Some(y as f64 / x as f64),
                _ => None,
            };
            ratios.push(DoublingRatio {
                from: (a.transaction_count, a.item_count),
                to: (b.transaction_count, b.item_count),
                dimension,
                runtime_ratio: b.median_seconds / a.median_seconds,
                level2_candidate_ratio: level2,
            });
        }
    }
    Ok(BenchReport { rows, ratios })
}
