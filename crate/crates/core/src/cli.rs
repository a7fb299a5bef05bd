//! Command-line front end: harvest, audit, detect, gen and report.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{mpsc, Mutex};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::Deserialize;

use crate::audit::{audit_graph, AuditOptions, AuditResult};
use crate::detect::{DetectorConfig, Watchlist};
use crate::generator::{self, emit_ntriples, generate, parse_specs, GenerationSpec, Manifest, MANIFEST_FILE};
use crate::harvest::transport::{LiveTransport, ReplayTransport, Transport, DEFAULT_TIMEOUT};
use crate::harvest::{self, ApiKeyMode, HarvestConfig, HarvestError, HarvestRecord, Repository, APIKEY_ENV};
use crate::metrics::{DEFAULT_TIE_EPSILON, REPORT_THRESHOLDS};
use crate::rdf::{self, detect_format, Graph, ParseOptions};
use crate::report::{self, OutputFormat, RenderOptions, ReportKind};
use crate::signature::default_label_properties;

pub const EXIT_OK: i32 = 0;
pub const EXIT_EMPTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const CACHE_ENV: &str = "ONTOAUDIT_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "ontoaudit", version, about = "Audit multilingual labelling in OWL/RDF ontologies")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with default settings; flags override it
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, env = CACHE_ENV, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Never touch the network; harvest replays recorded exchanges
    #[arg(long, global = true)]
    pub offline: bool,
    #[arg(long, global = true, value_name = "N")]
    pub concurrency: Option<usize>,
    /// Reject malformed N-Triples lines instead of skipping them
    #[arg(long, global = true, conflicts_with = "lenient")]
    pub strict: bool,
    #[arg(long, global = true)]
    pub lenient: bool,
    /// Repeat for more log output on stderr
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fetch a repository listing and its documents into the cache
    Harvest(HarvestArgs),
    /// Audit ontology files, corpus directories or a harvest ledger
    Audit(AuditArgs),
    /// Print the modelling approach detected for each input
    Detect(AuditArgs),
    /// Generate synthetic corpora from a spec file or preset
    Gen(GenArgs),
    /// Render audit results as a table
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RepoArg {
    Bioportal,
    Lov,
}

#[derive(Debug, Args)]
pub struct HarvestArgs {
    pub repository: RepoArg,
    /// Recorded exchanges used with --offline (default: <cache-dir>/replay)
    #[arg(long, value_name = "DIR")]
    pub replay_dir: Option<PathBuf>,
    #[arg(long, env = APIKEY_ENV, hide_env_values = true)]
    pub api_key: Option<String>,
    /// Send the API key as an Authorization header instead of a query parameter
    #[arg(long)]
    pub api_key_header: bool,
    /// Minimum spacing between requests to one host
    #[arg(long, value_name = "MS")]
    pub delay_ms: Option<u64>,
    #[arg(long, value_name = "URL")]
    pub base_url: Option<String>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Files, directories or records.jsonl ledgers
    pub inputs: Vec<PathBuf>,
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Extra multilingual threshold recorded alongside 0 and 5
    #[arg(long, value_name = "PERCENT")]
    pub threshold: Option<f64>,
    /// Comma-separated label properties (IRIs or rdfs:/skos: names)
    #[arg(long, value_delimiter = ',', value_name = "IRIS")]
    pub label_properties: Option<Vec<String>>,
    /// Extra linguistic-model namespaces, one `prefix iri` per line
    #[arg(long, value_name = "FILE")]
    pub watchlist: Option<PathBuf>,
    #[arg(long, value_name = "PP")]
    pub tie_epsilon: Option<f64>,
    /// Dataset name stored in each result
    #[arg(long)]
    pub dataset: Option<String>,
    /// Treat all inputs as one ontology
    #[arg(long)]
    pub merge: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// JSON or TOML spec (single spec or batch)
    #[arg(required_unless_present = "preset")]
    pub spec: Option<PathBuf>,
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,
    #[arg(long, conflicts_with = "spec")]
    pub preset: Option<Preset>,
    /// Override the seed of every spec
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    #[value(name = "example-1")]
    ExampleOne,
    NineVariants,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// JSON-lines files written by `audit`
    #[arg(required = true)]
    pub results: Vec<PathBuf>,
    #[arg(long, default_value = "dataset-comparison")]
    pub kind: String,
    #[arg(long, default_value = "markdown")]
    pub format: String,
    #[arg(long, value_name = "PERCENT")]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub no_timestamp: bool,
    /// Group thousands in Markdown numbers
    #[arg(long)]
    pub group_digits: bool,
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

/// Settings read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub cache_dir: Option<PathBuf>,
    pub offline: Option<bool>,
    pub threshold: Option<f64>,
    pub label_properties: Option<Vec<String>>,
    pub watchlist: Option<PathBuf>,
    pub tie_epsilon: Option<f64>,
    pub concurrency: Option<usize>,
    pub strict: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cache_dir: PathBuf,
    pub offline: bool,
    pub threshold: f64,
    pub label_properties: Vec<String>,
    pub watchlist: Option<PathBuf>,
    pub tie_epsilon: f64,
    pub concurrency: usize,
    pub strict: bool,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
    fn empty(message: impl Into<String>) -> Self {
        CliError { code: EXIT_EMPTY, message: message.into() }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).target(env_logger::Target::Stderr).try_init();
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: Cli) -> CliResult {
    let file = match &cli.global.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?;
            toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let (threshold, label_properties, watchlist, tie_epsilon) = match &cli.command {
        Command::Audit(a) | Command::Detect(a) => (a.threshold, a.label_properties.clone(), a.watchlist.clone(), a.tie_epsilon),
        Command::Report(r) => (r.threshold, None, None, None),
        _ => (None, None, None, None),
    };
    let cfg = RunConfig {
        cache_dir: cli.global.cache_dir.clone().or(file.cache_dir).unwrap_or_else(|| PathBuf::from("ontoaudit-cache")),
        offline: cli.global.offline || file.offline.unwrap_or(false),
        threshold: threshold.or(file.threshold).unwrap_or(5.0),
        label_properties: label_properties.or(file.label_properties).map(expand_properties).unwrap_or_else(default_label_properties),
        watchlist: watchlist.or(file.watchlist),
        tie_epsilon: tie_epsilon.or(file.tie_epsilon).unwrap_or(DEFAULT_TIE_EPSILON),
        concurrency: cli.global.concurrency.or(file.concurrency).unwrap_or(8),
        strict: if cli.global.strict {
            true
        } else if cli.global.lenient {
            false
        } else {
            file.strict.unwrap_or(false)
        },
    };
    if !(0.0..=100.0).contains(&cfg.threshold) {
        return Err(CliError::usage(format!("threshold {} outside [0, 100]", cfg.threshold)));
    }
    if cfg.concurrency == 0 {
        return Err(CliError::usage("concurrency must be at least 1"));
    }
    if !(cfg.tie_epsilon >= 0.0) {
        return Err(CliError::usage("tie-epsilon must be non-negative"));
    }
    match cli.command {
        Command::Harvest(a) => cmd_harvest(&a, &cfg),
        Command::Audit(a) => cmd_audit(&a, &cfg, false),
        Command::Detect(a) => cmd_audit(&a, &cfg, true),
        Command::Gen(a) => cmd_gen(&a),
        Command::Report(a) => cmd_report(&a, &cfg),
    }
}

fn expand_properties(list: Vec<String>) -> Vec<String> {
    list.into_iter()
        .map(|p| {
            let p = p.trim();
            match p.split_once(':') {
                Some(("rdfs", local)) => format!("http://www.w3.org/2000/01/rdf-schema#{local}"),
                Some(("skos", local)) => format!("http://www.w3.org/2004/02/skos/core#{local}"),
                Some(("skosxl", local)) => format!("http://www.w3.org/2008/05/skos-xl#{local}"),
                Some(("dcterms", local)) => format!("http://purl.org/dc/terms/{local}"),
                _ => p.to_string(),
            }
        })
        .collect()
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, bytes)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

fn cmd_harvest(a: &HarvestArgs, cfg: &RunConfig) -> CliResult {
    let repo = match a.repository {
        RepoArg::Bioportal => Repository::Bioportal,
        RepoArg::Lov => Repository::Lov,
    };
    let mut hc = HarvestConfig {
        cache_dir: cfg.cache_dir.clone(),
        api_key: a.api_key.clone().filter(|k| !k.is_empty()),
        api_key_mode: if a.api_key_header { ApiKeyMode::Header } else { ApiKeyMode::Query },
        concurrency: cfg.concurrency,
        ..Default::default()
    };
    if let Some(ms) = a.delay_ms {
        hc.delay = Duration::from_millis(ms);
    }
    if let Some(base) = &a.base_url {
        match repo {
            Repository::Bioportal => hc.bioportal_base = base.clone(),
            Repository::Lov => hc.lov_base = base.clone(),
        }
    }
    if repo == Repository::Bioportal && hc.api_key.is_none() {
        return Err(CliError::usage(HarvestError::MissingApiKey.to_string()));
    }
    let transport: Box<dyn Transport> = if cfg.offline {
        let dir = a.replay_dir.clone().unwrap_or_else(|| cfg.cache_dir.join("replay"));
        let replay = ReplayTransport::from_dir(&dir).map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?;
        if replay.is_empty() {
            return Err(CliError::usage(HarvestError::EmptyReplay(dir.display().to_string()).to_string()));
        }
        Box::new(replay)
    } else {
        Box::new(LiveTransport::new(DEFAULT_TIMEOUT).map_err(|e| CliError::usage(e.to_string()))?)
    };
    let outcome = harvest::harvest(repo, &hc, transport.as_ref()).map_err(|e| CliError::usage(e.to_string()))?;
    let ledger = harvest::write_outcome(&hc.cache_dir, &outcome)?;
    let failed = outcome.records.iter().filter(|r| r.excluded_reason.is_some()).count();
    if failed > 0 {
        warn!("{failed} records excluded; reasons are in the ledger");
    }
    let mut text = format!("listed\t{}\n", outcome.listed);
    for (bucket, n) in &outcome.buckets {
        text.push_str(&format!("bucket {bucket}\t{n}\n"));
    }
    for s in &outcome.steps {
        text.push_str(&format!("{}\t{} -> {}\n", s.name, s.in_count, s.out_count));
    }
    text.push_str(&format!("surviving\t{}\n", outcome.surviving));
    write_output(None, text.as_bytes())?;
    info!("ledger written to {}", ledger.display());
    Ok(())
}

#[derive(Debug, Clone)]
struct Unit {
    id: String,
    files: Vec<PathBuf>,
    dataset: Option<String>,
}

fn is_rdf_file(p: &Path) -> bool {
    p.file_name().and_then(|n| n.to_str()).and_then(rdf::RdfFormat::from_filename).is_some()
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| p.display().to_string())
}

fn collect_dir(dir: &Path, out: &mut Vec<Unit>) -> io::Result<()> {
    if dir.join(MANIFEST_FILE).is_file() {
        let m = Manifest::read(dir)?;
        out.push(Unit { id: m.name.clone(), files: m.files().map(|f| dir.join(f)).collect(), dataset: None });
        return Ok(());
    }
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    entries.sort();
    for p in entries {
        if p.is_dir() {
            collect_dir(&p, out)?;
        } else if is_rdf_file(&p) {
            out.push(Unit { id: stem(&p), files: vec![p], dataset: None });
        }
    }
    Ok(())
}

fn ledger_units(path: &Path) -> io::Result<Vec<Unit>> {
    let records: Vec<HarvestRecord> = harvest::read_ledger(path)?;
    let cache = path.parent().and_then(Path::parent).unwrap_or(Path::new("."));
    Ok(records
        .into_iter()
        .filter(|r| r.excluded_reason.is_none())
        .filter_map(|r| {
            let file = cache.join(r.cached_path.as_ref()?);
            Some(Unit { id: r.id, files: vec![file], dataset: Some(r.repository.name().to_string()) })
        })
        .collect())
}

fn collect_units(inputs: &[PathBuf], merge: bool) -> Result<Vec<Unit>, CliError> {
    let mut units = Vec::new();
    for input in inputs {
        let meta = fs::metadata(input).map_err(|e| CliError::usage(format!("{}: {e}", input.display())))?;
        if meta.is_dir() {
            collect_dir(input, &mut units).map_err(|e| CliError::usage(format!("{}: {e}", input.display())))?;
        } else if input.extension().is_some_and(|e| e == "jsonl") {
            units.extend(ledger_units(input).map_err(|e| CliError::usage(format!("{}: {e}", input.display())))?);
        } else {
            units.push(Unit { id: stem(input), files: vec![input.clone()], dataset: None });
        }
    }
    if merge && !units.is_empty() {
        let id = if inputs.len() == 1 { stem(&inputs[0]) } else { "merged".to_string() };
        let files = units.iter().flat_map(|u| u.files.clone()).collect();
        units = vec![Unit { id, files, dataset: None }];
    }
    Ok(units)
}

fn load_unit(unit: &Unit, strict: bool) -> Result<Graph, String> {
    let mut graphs = Vec::new();
    for f in &unit.files {
        let bytes = fs::read(f).map_err(|e| format!("{}: {e}", f.display()))?;
        let name = f.file_name().and_then(|n| n.to_str());
        let head = &bytes[..bytes.len().min(4096)];
        let format = detect_format(name, None, head).map_err(|e| format!("{}: {e}", f.display()))?;
        let base = fs::canonicalize(f).ok().and_then(|p| reqwest::Url::from_file_path(p).ok()).map(|u| u.to_string());
        let opts = ParseOptions { base, strict, ..Default::default() };
        graphs.push(rdf::parse_document(&bytes, format, &opts).map_err(|e| format!("{}: {e}", f.display()))?);
    }
    Ok(if graphs.len() == 1 { graphs.pop().expect("one graph") } else { Graph::merge(graphs.iter()) })
}

#[derive(serde::Serialize)]
struct DetectLine<'a> {
    ontology_id: &'a str,
    approach: &'a crate::detect::ApproachEvidence,
}

fn cmd_audit(a: &AuditArgs, cfg: &RunConfig, detect_only: bool) -> CliResult {
    let units = collect_units(&a.inputs, a.merge)?;
    if units.is_empty() {
        return Err(CliError::empty("no ontology documents found in the inputs"));
    }
    let mut detector = DetectorConfig { tie_epsilon: cfg.tie_epsilon, ..Default::default() };
    if let Some(w) = &cfg.watchlist {
        detector.watchlist = Watchlist::with_file(w).map_err(CliError::usage)?;
    }
    let mut thresholds = REPORT_THRESHOLDS.to_vec();
    if !thresholds.contains(&cfg.threshold) {
        thresholds.push(cfg.threshold);
    }
    let opts = AuditOptions { label_properties: cfg.label_properties.clone(), detector, thresholds };
    let total = units.len();
    let queue = Mutex::new(units.into_iter());
    let (tx, rx) = mpsc::channel::<Result<AuditResult, String>>();
    let mut results = Vec::new();
    let mut failures = 0;
    std::thread::scope(|s| {
        for _ in 0..cfg.concurrency.min(total) {
            let tx = tx.clone();
            let (queue, opts) = (&queue, &opts);
            s.spawn(move || loop {
                let Some(unit) = queue.lock().expect("queue lock").next() else { break };
                let outcome = load_unit(&unit, cfg.strict).map(|g| {
                    let mut r = audit_graph(&unit.id, &g, opts);
                    r.dataset = a.dataset.clone().or(unit.dataset.clone());
                    r.diagnostics.sources = unit.files.iter().map(|f| f.display().to_string()).collect();
                    r
                });
                if tx.send(outcome.map_err(|e| format!("{}: {e}", unit.id))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for outcome in rx {
            match outcome {
                Ok(r) => results.push(r),
                Err(e) => {
                    warn!("skipped {e}");
                    failures += 1;
                }
            }
        }
    });
    if results.is_empty() {
        return Err(CliError::empty(format!("all {failures} inputs failed")));
    }
    results.sort_by(|x, y| x.ontology_id.cmp(&y.ontology_id).then_with(|| x.diagnostics.sources.cmp(&y.diagnostics.sources)));
    let mut out = String::new();
    for r in &results {
        let line = if detect_only {
            serde_json::to_string(&DetectLine { ontology_id: &r.ontology_id, approach: &r.approach })
        } else {
            serde_json::to_string(r)
        };
        out.push_str(&line.map_err(|e| CliError::usage(e.to_string()))?);
        out.push('\n');
    }
    write_output(a.output.as_deref(), out.as_bytes())?;
    if failures > 0 {
        warn!("{failures} of {total} inputs failed");
    }
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> CliResult {
    let mut specs: Vec<GenerationSpec> = match (&a.spec, a.preset) {
        (_, Some(Preset::ExampleOne)) => vec![generator::example_one_spec()],
        (_, Some(Preset::NineVariants)) => generator::reference_specs(),
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            parse_specs(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(CliError::usage("a spec file or --preset is required")),
    };
    if let Some(seed) = a.seed {
        specs.iter_mut().for_each(|s| s.seed = seed);
    }
    let mut names = std::collections::BTreeSet::new();
    let mut listing = String::new();
    for spec in &specs {
        let name = spec.corpus_name();
        if !names.insert(name.clone()) {
            return Err(CliError::usage(format!("two specs share the corpus name `{name}`")));
        }
        let corpus = generate(spec).map_err(|e| CliError::usage(e.to_string()))?;
        for p in emit_ntriples(&corpus, &a.out.join(&name))? {
            listing.push_str(&p.display().to_string());
            listing.push('\n');
        }
    }
    write_output(None, listing.as_bytes())?;
    Ok(())
}

pub fn read_results(path: &Path) -> Result<Vec<AuditResult>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| serde_json::from_str(l).map_err(|e| CliError::usage(format!("{}:{}: {e}", path.display(), n + 1))))
        .collect()
}

fn cmd_report(a: &ReportArgs, cfg: &RunConfig) -> CliResult {
    let kind: ReportKind = a.kind.parse().map_err(|e: report::ReportError| CliError::usage(e.to_string()))?;
    let format: OutputFormat = a.format.parse().map_err(|e: report::ReportError| CliError::usage(e.to_string()))?;
    let mut results = Vec::new();
    for p in &a.results {
        results.extend(read_results(p)?);
    }
    if results.is_empty() {
        return Err(CliError::usage("no audit results in the input"));
    }
    let opts = RenderOptions { generated_at: (!a.no_timestamp).then(report::now_timestamp), group_digits: a.group_digits };
    let bytes = report::emit(&results, kind, format, cfg.threshold, &opts).map_err(|e| CliError::usage(e.to_string()))?;
    write_output(a.output.as_deref(), &bytes)?;
    Ok(())
}
