//! Report structures and renderers.
//!
//! Every result type has a serializable report form plus human-readable
//! table and flat TSV renderings. Itemsets appear as ascending 1-based ids;
//! output order is smallest itemsets first, lexicographic within a size.
//! Timing fields all carry an `_ms` suffix so reproducibility checks can
//! ignore them uniformly.

use serde::Serialize;

use crate::apriori::AprioriResult;
use crate::database::{MiningParams, TransactionDatabase};
use crate::ga::{GaConfig, GaRunResult, GenerationStats, TerminationReason};
use crate::itemset::Itemset;
use crate::perf::{BenchReport, CampaignReport, CutoffPlan};
use crate::rules::AssociationRule;

/// Output style selected by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Structured,
    Tsv,
}

/// An itemset with its exact count and derived fraction.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ItemsetEntry {
    pub items: Vec<u16>,
    pub count: u64,
    pub support: f64,
}

impl ItemsetEntry {
    fn new(set: &Itemset, count: u64, transaction_count: u64) -> Self {
        ItemsetEntry {
            items: set.items(),
            count,
            support: count as f64 / transaction_count as f64,
        }
    }
}

fn ids(items: &[u16]) -> String {
    let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
    parts.join(",")
}

// ---------------------------------------------------------------------------
// Level-wise mining

#[derive(Clone, Debug, Serialize)]
pub struct LevelSummary {
    pub size: usize,
    pub candidate_count: u64,
    pub frequent_count: u64,
    pub scan_ms: f64,
    pub frequents: Vec<ItemsetEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MiningReport {
    pub source: String,
    pub transaction_count: usize,
    pub item_count: usize,
    pub min_support: f64,
    pub min_count: u64,
    pub family_size: usize,
    pub total_candidates: u64,
    pub database_scans: u64,
    pub levels: Vec<LevelSummary>,
}

impl MiningReport {
    pub fn new(db: &TransactionDatabase, params: &MiningParams, result: &AprioriResult) -> Self {
        let n = db.transaction_count() as u64;
        let levels = result
            .levels
            .iter()
            .zip(&result.trace.levels)
            .map(|(level, trace)| LevelSummary {
                size: level.size,
                candidate_count: trace.candidate_count,
                frequent_count: trace.frequent_count,
                scan_ms: trace.scan_seconds * 1000.0,
                frequents: level
                    .frequents
                    .iter()
                    .map(|(set, count)| ItemsetEntry::new(set, *count, n))
                    .collect(),
            })
            .collect();
        MiningReport {
            source: db.source_label().to_string(),
            transaction_count: db.transaction_count(),
            item_count: db.item_count(),
            min_support: params.min_support(),
            min_count: params.min_count(),
            family_size: result.family().len(),
            total_candidates: result.trace.total_candidates,
            database_scans: result.trace.database_scans,
            levels,
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "database: {} transactions x {} items ({})\n",
            self.transaction_count, self.item_count, self.source
        ));
        out.push_str(&format!(
            "minimum support: {} (count >= {})\n",
            self.min_support, self.min_count
        ));
        out.push_str(&format!(
            "frequent itemsets: {}   candidates counted: {}   database scans: {}\n",
            self.family_size, self.total_candidates, self.database_scans
        ));
        for level in &self.levels {
            out.push_str(&format!(
                "\nlevel {}: {} candidates, {} frequent ({:.3} ms scan)\n",
                level.size, level.candidate_count, level.frequent_count, level.scan_ms
            ));
            for entry in &level.frequents {
                out.push_str(&format!(
                    "  {{{}}}  count {}  support {:.4}\n",
                    ids(&entry.items),
                    entry.count,
                    entry.support
                ));
            }
        }
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = String::from("level\titems\tcount\tsupport\n");
        for level in &self.levels {
            for entry in &level.frequents {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    level.size,
                    ids(&entry.items),
                    entry.count,
                    entry.support
                ));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// GA mining

#[derive(Clone, Debug, Serialize)]
pub struct GaReport {
    pub source: String,
    pub transaction_count: usize,
    pub item_count: usize,
    pub config: GaConfig,
    pub seed: u64,
    pub generations_run: u64,
    pub termination: TerminationReason,
    pub archive_size: usize,
    pub archive: Vec<ItemsetEntry>,
    pub stats: Vec<GenerationStats>,
}

impl GaReport {
    pub fn new(db: &TransactionDatabase, config: &GaConfig, result: &GaRunResult) -> Self {
        let n = db.transaction_count() as u64;
        GaReport {
            source: db.source_label().to_string(),
            transaction_count: db.transaction_count(),
            item_count: db.item_count(),
            config: config.clone(),
            seed: result.seed,
            generations_run: result.generations_run,
            termination: result.termination,
            archive_size: result.archive.len(),
            archive: result
                .archive
                .iter()
                .map(|(set, count)| ItemsetEntry::new(set, *count, n))
                .collect(),
            stats: result.stats.clone(),
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "database: {} transactions x {} items ({})\n",
            self.transaction_count, self.item_count, self.source
        ));
        out.push_str(&format!(
            "seed: {}   population: {}   mutation: {}   crossover: {}   gap: {}   elites: {}\n",
            self.seed,
            self.config.population_size,
            self.config.mutation_rate,
            self.config.crossover_rate,
            self.config.generation_gap,
            self.config.elitism_count
        ));
        out.push_str(&format!(
            "minimum support: {}   generations run: {}   termination: {:?}\n",
            self.config.min_support, self.generations_run, self.termination
        ));
        let last = self.stats.last();
        if let Some(last) = last {
            out.push_str(&format!(
                "final best fitness: {:.4}   final mean fitness: {:.4}\n",
                last.best_fitness, last.mean_fitness
            ));
        }
        out.push_str(&format!("archive ({} itemsets):\n", self.archive_size));
        for entry in &self.archive {
            out.push_str(&format!(
                "  {{{}}}  count {}  support {:.4}\n",
                ids(&entry.items),
                entry.count,
                entry.support
            ));
        }
        out
    }

    /// Per-generation statistics, one row per generation, for plotting.
    pub fn render_tsv(&self) -> String {
        let mut out = String::from("generation\tbest_fitness\tmean_fitness\tarchive_size\n");
        for s in &self.stats {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                s.generation, s.best_fitness, s.mean_fitness, s.archive_size
            ));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Exact-vs-GA comparison

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub source: String,
    pub transaction_count: usize,
    pub item_count: usize,
    pub min_support: f64,
    pub seed: u64,
    pub family_size: usize,
    pub archive_size: usize,
    /// Archive members missing from the exact family. Always empty: the GA
    /// verifies support against the real database.
    pub false_positives: Vec<ItemsetEntry>,
    /// Exact-family members the GA did not discover.
    pub missed: Vec<ItemsetEntry>,
    pub recall: f64,
    pub apriori_ms: f64,
    pub ga_ms: f64,
}

impl CompareReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        db: &TransactionDatabase,
        params: &MiningParams,
        seed: u64,
        exact: &AprioriResult,
        ga_result: &GaRunResult,
        apriori_ms: f64,
        ga_ms: f64,
    ) -> Self {
        let n = db.transaction_count() as u64;
        let family = exact.family();
        let archive: std::collections::BTreeMap<Itemset, u64> =
            ga_result.archive.iter().copied().collect();

        let false_positives: Vec<ItemsetEntry> = archive
            .iter()
            .filter(|(set, _)| !family.contains_key(*set))
            .map(|(set, count)| ItemsetEntry::new(set, *count, n))
            .collect();
        let missed: Vec<ItemsetEntry> = family
            .iter()
            .filter(|(set, _)| !archive.contains_key(*set))
            .map(|(set, count)| ItemsetEntry::new(set, *count, n))
            .collect();
        let recall = if family.is_empty() {
            1.0
        } else {
            (family.len() - missed.len()) as f64 / family.len() as f64
        };

        CompareReport {
            source: db.source_label().to_string(),
            transaction_count: db.transaction_count(),
            item_count: db.item_count(),
            min_support: params.min_support(),
            seed,
            family_size: family.len(),
            archive_size: archive.len(),
            false_positives,
            missed,
            recall,
            apriori_ms,
            ga_ms,
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "database: {} transactions x {} items ({})\n",
            self.transaction_count, self.item_count, self.source
        ));
        out.push_str(&format!(
            "minimum support: {}   seed: {}\n",
            self.min_support, self.seed
        ));
        out.push_str(&format!(
            "exact family: {} itemsets in {:.3} ms   archive: {} itemsets in {:.3} ms\n",
            self.family_size, self.apriori_ms, self.archive_size, self.ga_ms
        ));
        out.push_str(&format!(
            "recall: {:.4}   false positives: {}\n",
            self.recall,
            self.false_positives.len()
        ));
        if !self.missed.is_empty() {
            out.push_str("missed itemsets:\n");
            for entry in &self.missed {
                out.push_str(&format!(
                    "  {{{}}}  count {}\n",
                    ids(&entry.items),
                    entry.count
                ));
            }
        }
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = String::from("status\titems\tcount\tsupport\n");
        for entry in &self.false_positives {
            out.push_str(&format!(
                "false_positive\t{}\t{}\t{}\n",
                ids(&entry.items),
                entry.count,
                entry.support
            ));
        }
        for entry in &self.missed {
            out.push_str(&format!(
                "missed\t{}\t{}\t{}\n",
                ids(&entry.items),
                entry.count,
                entry.support
            ));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Association rules

#[derive(Clone, Debug, Serialize)]
pub struct RuleEntry {
    pub antecedent: Vec<u16>,
    pub consequent: Vec<u16>,
    pub support_count: u64,
    pub support: f64,
    pub confidence: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RulesReport {
    pub source: String,
    pub transaction_count: usize,
    pub min_support: f64,
    pub min_confidence: f64,
    pub rule_count: usize,
    pub rules: Vec<RuleEntry>,
}

impl RulesReport {
    pub fn new(
        db: &TransactionDatabase,
        min_support: f64,
        min_confidence: f64,
        rules: &[AssociationRule],
    ) -> Self {
        RulesReport {
            source: db.source_label().to_string(),
            transaction_count: db.transaction_count(),
            min_support,
            min_confidence,
            rule_count: rules.len(),
            rules: rules
                .iter()
                .map(|r| RuleEntry {
                    antecedent: r.antecedent.items(),
                    consequent: r.consequent.items(),
                    support_count: r.support_count(),
                    support: r.support(),
                    confidence: r.confidence(),
                })
                .collect(),
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "rules at support >= {} and confidence >= {} over {} transactions ({})\n",
            self.min_support, self.min_confidence, self.transaction_count, self.source
        ));
        out.push_str(&format!("{} rules:\n", self.rule_count));
        for r in &self.rules {
            out.push_str(&format!(
                "  {{{}}} => {{{}}}  count {}  support {:.4}  confidence {:.4}\n",
                ids(&r.antecedent),
                ids(&r.consequent),
                r.support_count,
                r.support,
                r.confidence
            ));
        }
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = String::from("antecedent\tconsequent\tcount\tsupport\tconfidence\n");
        for r in &self.rules {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                ids(&r.antecedent),
                ids(&r.consequent),
                r.support_count,
                r.support,
                r.confidence
            ));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Measurement campaigns

#[derive(Clone, Debug, Serialize)]
pub struct CutoffRowEntry {
    pub generations: u64,
    pub runs_needed: u64,
    pub total_cost: u64,
    pub failure_probability: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutoffPlanEntry {
    pub mode: String,
    pub generations: u64,
    pub runs: u64,
    pub total_cost: u64,
    pub failure_probability: f64,
}

impl CutoffPlanEntry {
    pub fn new(mode: impl Into<String>, plan: &CutoffPlan) -> Self {
        CutoffPlanEntry {
            mode: mode.into(),
            generations: plan.generations,
            runs: plan.runs,
            total_cost: plan.total_cost,
            failure_probability: plan.failure_probability,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReportDto {
    pub source: String,
    pub runs: usize,
    pub max_generations: u64,
    pub base_seed: u64,
    pub leap_delta: f64,
    pub target_family_size: Option<usize>,
    pub ga_config: GaConfig,
    pub run_seeds: Vec<u64>,
    pub first_success: Vec<Option<u64>>,
    pub success_fraction: Vec<f64>,
    pub mean_best_fitness: Vec<f64>,
    pub leap_fraction: Vec<f64>,
    pub cutoff_table: Vec<CutoffRowEntry>,
    pub plans: Vec<CutoffPlanEntry>,
    pub elapsed_ms: f64,
}

impl CampaignReportDto {
    pub fn new(
        db: &TransactionDatabase,
        ga_config: &GaConfig,
        report: &CampaignReport,
        plans: Vec<CutoffPlanEntry>,
    ) -> Self {
        CampaignReportDto {
            source: db.source_label().to_string(),
            runs: report.runs,
            max_generations: report.max_generations,
            base_seed: report.base_seed,
            leap_delta: report.leap_delta,
            target_family_size: report.target_family_size,
            ga_config: ga_config.clone(),
            run_seeds: report.run_seeds.clone(),
            first_success: report.first_success.clone(),
            success_fraction: report.success_fraction.clone(),
            mean_best_fitness: report.mean_best_fitness.clone(),
            leap_fraction: report.leap_fraction.clone(),
            cutoff_table: report
                .cutoff_table
                .iter()
                .map(|row| CutoffRowEntry {
                    generations: row.generations,
                    runs_needed: row.runs_needed,
                    total_cost: row.total_cost,
                    failure_probability: row.failure_probability,
                })
                .collect(),
            plans,
            elapsed_ms: report.elapsed_seconds * 1000.0,
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "campaign: {} runs x {} generations, base seed {} ({})\n",
            self.runs, self.max_generations, self.base_seed, self.source
        ));
        if let Some(target) = self.target_family_size {
            out.push_str(&format!(
                "optimality: full recall of the {target}-itemset exact family\n"
            ));
        }
        let successes = self.first_success.iter().filter(|f| f.is_some()).count();
        out.push_str(&format!(
            "successful runs: {successes}/{}   leap delta: {}\n",
            self.runs, self.leap_delta
        ));
        out.push_str("generation milestones (k: success, mean best fitness, leap):\n");
        let k_max = self.success_fraction.len();
        for k in milestone_indices(k_max) {
            out.push_str(&format!(
                "  k={:>5}  success {:.3}  best {:.4}  leap {:.3}\n",
                k + 1,
                self.success_fraction[k],
                self.mean_best_fitness[k],
                self.leap_fraction[k]
            ));
        }
        if !self.cutoff_table.is_empty() {
            out.push_str("cutoff table (generations, runs, cost, failure):\n");
            for row in &self.cutoff_table {
                out.push_str(&format!(
                    "  k={:>5}  r={:>5}  cost {:>7}  failure {:.6}\n",
                    row.generations, row.runs_needed, row.total_cost, row.failure_probability
                ));
            }
        }
        for plan in &self.plans {
            out.push_str(&format!(
                "plan [{}]: {} generations x {} runs, cost {}, failure {:.6}\n",
                plan.mode, plan.generations, plan.runs, plan.total_cost, plan.failure_probability
            ));
        }
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = String::from("k\tsuccess_fraction\tmean_best_fitness\tleap_fraction\n");
        for k in 0..self.success_fraction.len() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                k + 1,
                self.success_fraction[k],
                self.mean_best_fitness[k],
                self.leap_fraction[k]
            ));
        }
        out
    }
}

/// At most 12 representative generation budgets for the human table.
fn milestone_indices(k_max: usize) -> Vec<usize> {
    if k_max <= 12 {
        return (0..k_max).collect();
    }
    let mut picks: Vec<usize> = (0..12).map(|i| i * (k_max - 1) / 11).collect();
    picks.dedup();
    picks
}

// ---------------------------------------------------------------------------
// Scaling benchmark

#[derive(Clone, Debug, Serialize)]
pub struct BenchRowEntry {
    pub transaction_count: usize,
    pub item_count: usize,
    pub median_ms: f64,
    pub level_candidates: Vec<u64>,
    pub total_candidates: u64,
    pub family_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRatioEntry {
    pub from_transactions: usize,
    pub from_items: usize,
    pub to_transactions: usize,
    pub to_items: usize,
    pub doubled: String,
    pub runtime_ratio: f64,
    pub level2_candidate_ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReportDto {
    pub min_support: f64,
    pub seed: u64,
    pub repetitions: usize,
    pub rows: Vec<BenchRowEntry>,
    pub ratios: Vec<BenchRatioEntry>,
}

impl BenchReportDto {
    pub fn new(min_support: f64, seed: u64, repetitions: usize, report: &BenchReport) -> Self {
        BenchReportDto {
            min_support,
            seed,
            repetitions,
            rows: report
                .rows
                .iter()
                .map(|row| BenchRowEntry {
                    transaction_count: row.transaction_count,
                    item_count: row.item_count,
                    median_ms: row.median_seconds * 1000.0,
                    level_candidates: row.level_candidates.clone(),
                    total_candidates: row.total_candidates,
                    family_size: row.family_size,
                })
                .collect(),
            ratios: report
                .ratios
                .iter()
                .map(|r| BenchRatioEntry {
                    from_transactions: r.from.0,
                    from_items: r.from.1,
                    to_transactions: r.to.0,
                    to_items: r.to.1,
                    doubled: match r.dimension {
                        crate::perf::DoubledDimension::Transactions => "transactions".to_string(),
                        crate::perf::DoubledDimension::Items => "items".to_string(),
                    },
                    runtime_ratio: r.runtime_ratio,
                    level2_candidate_ratio: r.level2_candidate_ratio,
                })
                .collect(),
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "scaling benchmark: minimum support {}, seed {}, median of {} repetitions\n",
            self.min_support, self.seed, self.repetitions
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "  {:>8} x {:<3}  median {:>10.3} ms  candidates {:>8}  family {:>6}\n",
                row.transaction_count,
                row.item_count,
                row.median_ms,
                row.total_candidates,
                row.family_size
            ));
        }
        for ratio in &self.ratios {
            out.push_str(&format!(
                "  doubling {}: ({} x {}) -> ({} x {})  runtime x{:.2}",
                ratio.doubled,
                ratio.from_transactions,
                ratio.from_items,
                ratio.to_transactions,
                ratio.to_items,
                ratio.runtime_ratio
            ));
            if let Some(c2) = ratio.level2_candidate_ratio {
                out.push_str(&format!("  level-2 candidates x{c2:.2}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out =
            String::from("transactions\titems\tmedian_ms\ttotal_candidates\tfamily_size\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                row.transaction_count,
                row.item_count,
                row.median_ms,
                row.total_candidates,
                row.family_size
            ));
        }
        out
    }
}
