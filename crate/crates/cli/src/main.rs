//! `gamine` — frequent-itemset mining CLI.
//!
//! Subcommands: `mine-apriori`, `mine-ga`, `compare`, `rules`, `gen`,
//! `measure`. Every report embeds a manifest with the tool version, the
//! fully resolved settings, input digests and seeds, so a run can be
//! reproduced exactly from its own output. Exit codes: 0 success, 2 usage
//! error, 3 input/parse error, 4 infeasible request.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gamine_core::apriori;
use gamine_core::ga::{self, GaConfig};
use gamine_core::io::{load_binary_matrix, load_transaction_list, to_dense_text};
use gamine_core::perf::{
    apriori_scaling_bench, best_cutoff, run_campaign, BenchSpec, CutoffMode, MeasureCampaign,
    OptimalityCriterion,
};
use gamine_core::report::{
    BenchReportDto, CampaignReportDto, CompareReport, CutoffPlanEntry, GaReport, MiningReport,
    ReportFormat, RulesReport,
};
use gamine_core::rules::{generate_rules, RuleParams};
use gamine_core::synth::{generate_synthetic, SyntheticModel};
use gamine_core::{Error, MiningParams, TransactionDatabase};

#[derive(Parser)]
#[command(
    name = "gamine",
    version,
    about = "Frequent-itemset mining: an exact level-wise miner, a genetic-algorithm miner, \
             association rules, synthetic data and measurement campaigns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine all frequent itemsets with the exact level-wise algorithm
    MineApriori(MineAprioriArgs),
    /// Mine frequent itemsets with the genetic algorithm
    MineGa(MineGaArgs),
    /// Run both miners and report recall and false positives
    Compare(CompareArgs),
    /// Generate association rules from the mined frequent itemsets
    Rules(RulesArgs),
    /// Write a synthetic transaction dataset
    Gen(GenArgs),
    /// Run a repeated-run GA campaign or an exact-miner scaling benchmark
    Measure(MeasureArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// 0/1 matrix, comma or tab separated, optional header line
    Dense,
    /// one transaction per line as whitespace-separated 1-based item ids
    Sparse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormatArg {
    Table,
    Structured,
    Tsv,
}

impl From<ReportFormatArg> for ReportFormat {
    fn from(arg: ReportFormatArg) -> Self {
        match arg {
            ReportFormatArg::Table => ReportFormat::Table,
            ReportFormatArg::Structured => ReportFormat::Structured,
            ReportFormatArg::Tsv => ReportFormat::Tsv,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Dataset file to mine
    #[arg(long)]
    input: PathBuf,
    /// Input file format
    #[arg(long, value_enum, default_value_t = InputFormat::Dense)]
    format: InputFormat,
    /// Item-universe size override (sparse format only)
    #[arg(long)]
    items: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report rendering
    #[arg(long, value_enum, default_value_t = ReportFormatArg::Table)]
    report_format: ReportFormatArg,
}

#[derive(Args)]
struct GaArgs {
    /// RNG seed; equal seeds reproduce runs bit-for-bit
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Population size
    #[arg(long, default_value_t = 20)]
    population: usize,
    /// Per-bit mutation probability
    #[arg(long, default_value_t = 0.05)]
    mutation_rate: f64,
    /// Per-pair crossover probability
    #[arg(long, default_value_t = 1.0)]
    crossover_rate: f64,
    /// Fraction of the non-elite population replaced per generation
    #[arg(long, default_value_t = 0.9)]
    generation_gap: f64,
    /// Individuals preserved unchanged each generation
    #[arg(long, default_value_t = 1)]
    elitism: usize,
    /// Generation budget
    #[arg(long, default_value_t = 200)]
    max_generations: u64,
    /// Stop after this many generations without archive growth (0 disables)
    #[arg(long, default_value_t = 50)]
    stall: u64,
    /// Reseed the non-elite population after this many generations without
    /// archive growth (0 disables)
    #[arg(long, default_value_t = 3)]
    restart: u64,
    /// Probability that each bit of an initial chromosome is set
    #[arg(long, default_value_t = 0.5)]
    init_bit_probability: f64,
}

impl GaArgs {
    fn to_config(&self, sigma: f64) -> GaConfig {
        let mut config = GaConfig::new(sigma, self.seed);
        config.population_size = self.population;
        config.mutation_rate = self.mutation_rate;
        config.crossover_rate = self.crossover_rate;
        config.generation_gap = self.generation_gap;
        config.elitism_count = self.elitism;
        config.max_generations = self.max_generations;
        config.stall_generations = self.stall;
        config.restart_generations = self.restart;
        config.init_bit_probability = self.init_bit_probability;
        config
    }
}

#[derive(Args)]
struct MineAprioriArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Minimum support fraction in (0, 1]
    #[arg(long)]
    sigma: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MineGaArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Minimum support fraction in (0, 1]
    #[arg(long)]
    sigma: f64,
    #[command(flatten)]
    ga: GaArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Minimum support fraction in (0, 1]
    #[arg(long)]
    sigma: f64,
    #[command(flatten)]
    ga: GaArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RulesArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Minimum support fraction in (0, 1]
    #[arg(long)]
    sigma: f64,
    /// Minimum confidence fraction in (0, 1]; no default
    #[arg(long)]
    tau: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Bernoulli,
    Planted,
}

#[derive(Args)]
struct GenModelArgs {
    /// Number of transactions to draw
    #[arg(long)]
    transactions: usize,
    /// Item-universe size
    #[arg(long)]
    items: usize,
    /// Row model
    #[arg(long, value_enum, default_value_t = ModelArg::Bernoulli)]
    model: ModelArg,
    /// Per-item probability (bernoulli) or background noise (planted)
    #[arg(long, default_value_t = 0.3)]
    item_probability: f64,
    /// Planted itemsets, e.g. "1,2,3;4,5"
    #[arg(long)]
    planted: Option<String>,
    /// Probability that each planted itemset occurs in a transaction
    #[arg(long, default_value_t = 0.5)]
    occurrence_probability: f64,
}

impl GenModelArgs {
    fn to_model(&self) -> Result<SyntheticModel, Error> {
        match self.model {
            ModelArg::Bernoulli => Ok(SyntheticModel::IndependentBernoulli {
                item_probability: self.item_probability,
            }),
            ModelArg::Planted => {
                let spec = self.planted.as_deref().ok_or_else(|| {
                    Error::Usage("the planted model needs --planted \"1,2,3;4,5\"".to_string())
                })?;
                let itemsets = parse_planted(spec)?;
                Ok(SyntheticModel::Planted {
                    itemsets,
                    occurrence_probability: self.occurrence_probability,
                    background_probability: self.item_probability,
                })
            }
        }
    }

    fn settings(&self) -> Value {
        json!({
            "transactions": self.transactions,
            "items": self.items,
            "model": format!("{:?}", self.model).to_lowercase(),
            "item_probability": self.item_probability,
            "planted": self.planted,
            "occurrence_probability": self.occurrence_probability,
        })
    }
}

fn parse_planted(spec: &str) -> Result<Vec<Vec<u16>>, Error> {
    let mut itemsets = Vec::new();
    for group in spec.split(';') {
        let mut items = Vec::new();
        for token in group.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            let id: u16 = token.parse().map_err(|_| {
                Error::Usage(format!("invalid planted item id {token:?} in {spec:?}"))
            })?;
            items.push(id);
        }
        if !items.is_empty() {
            itemsets.push(items);
        }
    }
    if itemsets.is_empty() {
        return Err(Error::Usage(format!(
            "no planted itemsets found in {spec:?}"
        )));
    }
    Ok(itemsets)
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    model: GenModelArgs,
    /// Generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dataset file to write (dense format)
    #[arg(long)]
    output: PathBuf,
    /// Report rendering for the summary printed to stdout
    #[arg(long, value_enum, default_value_t = ReportFormatArg::Table)]
    report_format: ReportFormatArg,
}

#[derive(Args)]
struct MeasureArgs {
    /// Dataset file to mine; omit it to use the synthetic generator flags
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input file format
    #[arg(long, value_enum, default_value_t = InputFormat::Dense)]
    format: InputFormat,
    /// Minimum support fraction in (0, 1]
    #[arg(long)]
    sigma: f64,
    /// Synthetic transactions when no --input is given
    #[arg(long, default_value_t = 1000)]
    transactions: usize,
    /// Synthetic item-universe size when no --input is given; with --input
    /// and --format sparse this overrides the universe size instead
    #[arg(long)]
    items: Option<usize>,
    /// Synthetic per-item probability
    #[arg(long, default_value_t = 0.3)]
    item_probability: f64,
    /// Synthetic data seed
    #[arg(long, default_value_t = 0)]
    data_seed: u64,
    /// Independent GA runs in the campaign
    #[arg(long, default_value_t = 20)]
    runs: usize,
    /// Generation budget per run (the largest cutoff examined)
    #[arg(long, default_value_t = 200)]
    kmax: u64,
    /// Judge success by reaching this fitness instead of full recall
    #[arg(long)]
    target_fitness: Option<f64>,
    /// Best-fitness jump that counts as a leap
    #[arg(long, default_value_t = 0.5)]
    leap_delta: f64,
    /// Report the cheapest plan with total cost at most this budget
    #[arg(long)]
    budget: Option<u64>,
    /// Report the cheapest plan with failure probability at most this
    #[arg(long)]
    failure: Option<f64>,
    /// Worker threads for campaign runs (0 = all cores, 1 = sequential)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Run the exact-miner scaling benchmark over these sizes instead of a
    /// campaign, e.g. "2500x8,5000x8,10000x8"
    #[arg(long)]
    bench_sizes: Option<String>,
    /// Timed repetitions per benchmark size (median is reported)
    #[arg(long, default_value_t = 5)]
    bench_reps: usize,
    #[command(flatten)]
    ga: GaArgs,
    #[command(flatten)]
    output: OutputArgs,
}

// ---------------------------------------------------------------------------

struct LoadedInput {
    db: TransactionDatabase,
    digest: Value,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

fn load_input(
    path: &Path,
    format: InputFormat,
    items: Option<usize>,
) -> Result<LoadedInput, Error> {
    let text = std::fs::read_to_string(path)?;
    let label = path.display().to_string();
    let db = match format {
        InputFormat::Dense => load_binary_matrix(&text, &label)?,
        InputFormat::Sparse => load_transaction_list(&text, items, &label)?,
    };
    let digest = json!({
        "path": label,
        "sha256": sha256_hex(text.as_bytes()),
        "bytes": text.len(),
    });
    Ok(LoadedInput { db, digest })
}

fn manifest(subcommand: &str, settings: Value, inputs: Vec<Value>, seeds: Vec<u64>) -> Value {
    json!({
        "tool": "gamine",
        "version": env!("CARGO_PKG_VERSION"),
        "subcommand": subcommand,
        "settings": settings,
        "inputs": inputs,
        "seeds": seeds,
    })
}

fn render_manifest_header(manifest: &Value, prefix: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{prefix}gamine {} {}\n",
        manifest["version"].as_str().unwrap_or("?"),
        manifest["subcommand"].as_str().unwrap_or("?")
    ));
    if let Some(inputs) = manifest["inputs"].as_array() {
        for input in inputs {
            out.push_str(&format!(
                "{prefix}input: {} sha256 {}\n",
                input["path"].as_str().unwrap_or("?"),
                input["sha256"].as_str().unwrap_or("?")
            ));
        }
    }
    if let Some(seeds) = manifest["seeds"].as_array() {
        if !seeds.is_empty() {
            let ids: Vec<String> = seeds.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!("{prefix}seeds: {}\n", ids.join(",")));
        }
    }
    out
}

fn emit(
    output: &OutputArgs,
    manifest: Value,
    report_json: Value,
    table: String,
    tsv: String,
) -> Result<(), Error> {
    let format: ReportFormat = output.report_format.into();
    let rendered = match format {
        ReportFormat::Structured => {
            let combined = json!({ "manifest": manifest, "report": report_json });
            let mut text = serde_json::to_string_pretty(&combined)
                .map_err(|e| Error::Integrity(format!("cannot serialize report: {e}")))?;
            text.push('\n');
            text
        }
        ReportFormat::Table => format!("{}\n{table}", render_manifest_header(&manifest, "")),
        ReportFormat::Tsv => format!("{}{tsv}", render_manifest_header(&manifest, "# ")),
    };
    match &output.output {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<Value, Error> {
    serde_json::to_value(value).map_err(|e| Error::Integrity(format!("cannot serialize: {e}")))
}

// ---------------------------------------------------------------------------

fn cmd_mine_apriori(args: &MineAprioriArgs) -> Result<(), Error> {
    let loaded = load_input(&args.input.input, args.input.format, args.input.items)?;
    let params = MiningParams::for_database(args.sigma, &loaded.db)?;
    let result = apriori::mine(&loaded.db, &params);
    let report = MiningReport::new(&loaded.db, &params, &result);

    let settings = json!({
        "sigma": args.sigma,
        "min_count": params.min_count(),
        "format": format!("{:?}", args.input.format).to_lowercase(),
    });
    let manifest = manifest("mine-apriori", settings, vec![loaded.digest], vec![]);
    let table = report.render_table();
    let tsv = report.render_tsv();
    emit(&args.output, manifest, to_json(&report)?, table, tsv)
}

fn cmd_mine_ga(args: &MineGaArgs) -> Result<(), Error> {
    let loaded = load_input(&args.input.input, args.input.format, args.input.items)?;
    let config = args.ga.to_config(args.sigma);
    let result = ga::mine(&loaded.db, &config)?;
    let report = GaReport::new(&loaded.db, &config, &result);

    let settings = to_json(&config)?;
    let manifest = manifest(
        "mine-ga",
        settings,
        vec![loaded.digest],
        vec![config.rng_seed],
    );
    let table = report.render_table();
    let tsv = report.render_tsv();
    emit(&args.output, manifest, to_json(&report)?, table, tsv)
}

fn cmd_compare(args: &CompareArgs) -> Result<(), Error> {
    let loaded = load_input(&args.input.input, args.input.format, args.input.items)?;
    let params = MiningParams::for_database(args.sigma, &loaded.db)?;
    let config = args.ga.to_config(args.sigma);

    let started = Instant::now();
    let exact = apriori::mine(&loaded.db, &params);
    let apriori_ms = started.elapsed().as_secs_f64() * 1000.0;
    let started = Instant::now();
    let ga_result = ga::mine(&loaded.db, &config)?;
    let ga_ms = started.elapsed().as_secs_f64() * 1000.0;

    let report = CompareReport::new(
        &loaded.db,
        &params,
        config.rng_seed,
        &exact,
        &ga_result,
        apriori_ms,
        ga_ms,
    );
    let settings = json!({
        "sigma": args.sigma,
        "ga": to_json(&config)?,
    });
    let manifest = manifest(
        "compare",
        settings,
        vec![loaded.digest],
        vec![config.rng_seed],
    );
    let table = report.render_table();
    let tsv = report.render_tsv();
    emit(&args.output, manifest, to_json(&report)?, table, tsv)
}

fn cmd_rules(args: &RulesArgs) -> Result<(), Error> {
    let loaded = load_input(&args.input.input, args.input.format, args.input.items)?;
    let params = MiningParams::for_database(args.sigma, &loaded.db)?;
    let rule_params = RuleParams::new(args.tau)?;
    let family = apriori::mine(&loaded.db, &params).family();
    let rules = generate_rules(
        &family,
        loaded.db.transaction_count() as u64,
        &rule_params,
    )?;
    let report = RulesReport::new(&loaded.db, args.sigma, args.tau, &rules);

    let settings = json!({ "sigma": args.sigma, "tau": args.tau });
    let manifest = manifest("rules", settings, vec![loaded.digest], vec![]);
    let table = report.render_table();
    let tsv = report.render_tsv();
    emit(&args.output, manifest, to_json(&report)?, table, tsv)
}

fn cmd_gen(args: &GenArgs) -> Result<(), Error> {
    let model = args.model.to_model()?;
    let db = generate_synthetic(
        args.model.transactions,
        args.model.items,
        &model,
        args.seed,
    )?;
    let text = to_dense_text(&db);
    std::fs::write(&args.output, &text)?;

    let mut settings = args.model.settings();
    settings["seed"] = json!(args.seed);
    settings["output"] = json!(args.output.display().to_string());
    let manifest = manifest("gen", settings, vec![], vec![args.seed]);
    let summary = json!({
        "transactions": db.transaction_count(),
        "items": db.item_count(),
        "output": args.output.display().to_string(),
        "sha256": sha256_hex(text.as_bytes()),
    });
    let table = format!(
        "wrote {} transactions x {} items to {}\n",
        db.transaction_count(),
        db.item_count(),
        args.output.display()
    );
    let tsv = format!(
        "transactions\titems\toutput\n{}\t{}\t{}\n",
        db.transaction_count(),
        db.item_count(),
        args.output.display()
    );
    let output = OutputArgs {
        output: None,
        report_format: args.report_format,
    };
    emit(&output, manifest, summary, table, tsv)
}

fn parse_bench_sizes(spec: &str) -> Result<Vec<(usize, usize)>, Error> {
    let mut sizes = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let (n, d) = part.split_once(['x', 'X']).ok_or_else(|| {
            Error::Usage(format!("benchmark size {part:?} is not of the form NxD"))
        })?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad transaction count in {part:?}")))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad item count in {part:?}")))?;
        sizes.push((n, d));
    }
    if sizes.is_empty() {
        return Err(Error::Usage("no benchmark sizes given".to_string()));
    }
    Ok(sizes)
}

fn cmd_measure(args: &MeasureArgs) -> Result<(), Error> {
    if let Some(spec) = &args.bench_sizes {
        return cmd_measure_bench(args, spec);
    }

    let (db, inputs) = match &args.input {
        Some(path) => {
            let loaded = load_input(path, args.format, args.items)?;
            (loaded.db, vec![loaded.digest])
        }
        None => {
            let items = args.items.unwrap_or(8);
            let model = SyntheticModel::IndependentBernoulli {
                item_probability: args.item_probability,
            };
            let db = generate_synthetic(args.transactions, items, &model, args.data_seed)?;
            (db, vec![])
        }
    };

    let config = args.ga.to_config(args.sigma);
    let mut campaign = MeasureCampaign::new(args.runs, args.kmax, args.ga.seed);
    campaign.criterion = match args.target_fitness {
        Some(threshold) => OptimalityCriterion::ReachTargetFitness(threshold),
        None => OptimalityCriterion::FullRecallVsApriori,
    };
    campaign.leap_delta = args.leap_delta;
    campaign.failure_target = args.failure;
    campaign.threads = args.threads;

    let report = run_campaign(&db, &config, &campaign)?;
    let mut plans = Vec::new();
    if let Some(budget) = args.budget {
        let plan = best_cutoff(&report, CutoffMode::FixedBudget(budget))?;
        plans.push(CutoffPlanEntry::new(format!("budget {budget}"), &plan));
    }
    if let Some(eps) = args.failure {
        let plan = best_cutoff(&report, CutoffMode::FixedFailure(eps))?;
        plans.push(CutoffPlanEntry::new(format!("failure {eps}"), &plan));
    }
    let dto = CampaignReportDto::new(&db, &config, &report, plans);

    let settings = json!({
        "sigma": args.sigma,
        "runs": args.runs,
        "kmax": args.kmax,
        "target_fitness": args.target_fitness,
        "leap_delta": args.leap_delta,
        "budget": args.budget,
        "failure": args.failure,
        "threads": args.threads,
        "ga": to_json(&config)?,
        "data": args.input.as_ref().map(|p| p.display().to_string()),
        "transactions": args.transactions,
        "items": args.items,
        "item_probability": args.item_probability,
        "data_seed": args.data_seed,
    });
    let manifest = manifest("measure", settings, inputs, report.run_seeds.clone());
    let table = dto.render_table();
    let tsv = dto.render_tsv();
    emit(&args.output, manifest, to_json(&dto)?, table, tsv)
}

fn cmd_measure_bench(args: &MeasureArgs, sizes_spec: &str) -> Result<(), Error> {
    if args.input.is_some() {
        return Err(Error::Usage(
            "--bench-sizes generates its own data; drop --input".to_string(),
        ));
    }
    let spec = BenchSpec {
        sizes: parse_bench_sizes(sizes_spec)?,
        model: SyntheticModel::IndependentBernoulli {
            item_probability: args.item_probability,
        },
        min_support: args.sigma,
        seed: args.data_seed,
        repetitions: args.bench_reps,
    };
    let report = apriori_scaling_bench(&spec)?;
    let dto = BenchReportDto::new(args.sigma, args.data_seed, args.bench_reps, &report);

    let settings = json!({
        "sigma": args.sigma,
        "sizes": sizes_spec,
        "item_probability": args.item_probability,
        "data_seed": args.data_seed,
        "repetitions": args.bench_reps,
    });
    let manifest = manifest("measure", settings, vec![], vec![args.data_seed]);
    let table = dto.render_table();
    let tsv = dto.render_tsv();
    emit(&args.output, manifest, to_json(&dto)?, table, tsv)
}

// ---------------------------------------------------------------------------

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Usage(_) => 2,
        Error::Parse { .. } | Error::Io(_) | Error::Integrity(_) => 3,
        Error::Infeasible(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::MineApriori(args) => cmd_mine_apriori(args),
        Command::MineGa(args) => cmd_mine_ga(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Rules(args) => cmd_rules(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Measure(args) => cmd_measure(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
