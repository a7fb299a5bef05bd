//! Harvesting ontology listings and documents from BioPortal and LOV, with
//! status bucketing, a content-addressed cache and filter pipelines.

mod bioportal;
pub mod gate;
mod lov;
pub mod transport;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{mpsc, Mutex};
use std::time::Duration;

use chrono::{DateTime, Utc};
use log::{debug, warn};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::rdf::{self, detect_format, looks_like_html, ParseOptions, RdfFormat};
use gate::HostGate;
use transport::{Request, Response, Transport, TransportError};

pub use bioportal::BIOPORTAL_BASE;
pub use lov::LOV_BASE;

pub const APIKEY_ENV: &str = "ONTOAUDIT_BIOPORTAL_APIKEY";
pub const RDF_XML: &str = "application/rdf+xml";
pub const TURTLE: &str = "text/turtle";
pub const LEDGER_FILE: &str = "records.jsonl";
pub const PIPELINE_FILE: &str = "pipeline.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Repository {
    Bioportal,
    Lov,
}

impl Repository {
    pub fn name(self) -> &'static str {
        match self {
            Repository::Bioportal => "bioportal",
            Repository::Lov => "lov",
        }
    }
}

impl fmt::Display for Repository {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Repository {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bioportal" => Ok(Repository::Bioportal),
            "lov" => Ok(Repository::Lov),
            other => Err(format!("unknown repository `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StatusBucket {
    #[serde(rename = "code-0")]
    Code0,
    #[serde(rename = "2xx")]
    Success,
    #[serde(rename = "3xx")]
    Redirect,
    #[serde(rename = "4xx")]
    ClientError,
    #[serde(rename = "5xx")]
    ServerError,
}

impl StatusBucket {
    pub fn from_code(code: u16) -> Self {
        match code {
            200..=299 => StatusBucket::Success,
            300..=399 => StatusBucket::Redirect,
            400..=499 => StatusBucket::ClientError,
            500..=599 => StatusBucket::ServerError,
            _ => StatusBucket::Code0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StatusBucket::Code0 => "code-0",
            StatusBucket::Success => "2xx",
            StatusBucket::Redirect => "3xx",
            StatusBucket::ClientError => "4xx",
            StatusBucket::ServerError => "5xx",
        }
    }
}

/// What a 2xx body turned out to contain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Rdf { format: RdfFormat, triples: usize },
    Html,
    Empty,
    NotRdf { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarvestRecord {
    pub repository: Repository,
    pub id: String,
    pub metadata: Value,
    pub declared_format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document_url: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status_bucket: Option<StatusBucket>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub http_code: Option<u16>,
    /// Status of the first response when redirects were followed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_status: Option<u16>,
    #[serde(default)]
    pub redirects: u32,
    #[serde(default)]
    pub retries: u32,
    /// Accept header of the request whose body was kept.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accept: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub media_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Payload>,
    /// Relative to the cache directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cached_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fetched_at: Option<DateTime<Utc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded_reason: Option<String>,
}

impl HarvestRecord {
    pub fn new(repository: Repository, id: &str, metadata: Value) -> Self {
        HarvestRecord {
            repository,
            id: id.to_string(),
            metadata,
            declared_format: String::new(),
            document_url: None,
            status_bucket: None,
            http_code: None,
            first_status: None,
            redirects: 0,
            retries: 0,
            accept: None,
            media_type: None,
            payload: None,
            cached_path: None,
            sha256: None,
            fetched_at: None,
            excluded_reason: None,
        }
    }

    /// Submission status from BioPortal metadata.
    pub fn submission_status(&self) -> Option<&str> {
        self.metadata.get("latest_submission")?.get("status")?.as_str()
    }

    fn exclude(&mut self, reason: impl Into<String>) {
        if self.excluded_reason.is_none() {
            self.excluded_reason = Some(reason.into());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarvestError {
    #[error("BioPortal API key missing; set {APIKEY_ENV}")]
    MissingApiKey,
    #[error("authentication rejected (HTTP {0})")]
    Auth(u16),
    #[error("rate limited after {0} retries")]
    RateLimited(u32),
    #[error("transport error: {0}")]
    Transport(#[from] TransportError),
    #[error("HTTP {status} from {url}")]
    Http { status: u16, url: String },
    #[error("malformed payload: {0}")]
    Malformed(String),
    #[error("replay directory {0} holds no recorded exchanges")]
    EmptyReplay(String),
    #[error("{0}")]
    Io(String),
}

impl From<io::Error> for HarvestError {
    fn from(e: io::Error) -> Self {
        HarvestError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApiKeyMode {
    #[default]
    Query,
    Header,
}

#[derive(Debug, Clone)]
pub struct HarvestConfig {
    pub cache_dir: PathBuf,
    pub bioportal_base: String,
    pub lov_base: String,
    pub api_key: Option<String>,
    pub api_key_mode: ApiKeyMode,
    pub concurrency: usize,
    pub per_host_limit: usize,
    pub delay: Duration,
    pub backoff_base: Duration,
    pub max_retries: u32,
    pub max_redirects: u32,
    pub batch_size: usize,
    pub max_document_bytes: u64,
}

impl Default for HarvestConfig {
    fn default() -> Self {
        HarvestConfig {
            cache_dir: PathBuf::from("cache"),
            bioportal_base: BIOPORTAL_BASE.to_string(),
            lov_base: LOV_BASE.to_string(),
            api_key: None,
            api_key_mode: ApiKeyMode::Query,
            concurrency: 8,
            per_host_limit: 4,
            delay: Duration::from_millis(100),
            backoff_base: Duration::from_millis(500),
            max_retries: 5,
            max_redirects: 5,
            batch_size: 30,
            max_document_bytes: rdf::DEFAULT_MAX_DOCUMENT_BYTES,
        }
    }
}

pub(crate) fn host_of(url: &str) -> String {
    reqwest::Url::parse(url).ok().and_then(|u| u.host_str().map(str::to_string)).unwrap_or_default()
}

fn sanitize(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' }).collect()
}

pub struct Harvester<'a> {
    pub cfg: &'a HarvestConfig,
    transport: &'a dyn Transport,
    gate: HostGate,
}

impl<'a> Harvester<'a> {
    pub fn new(cfg: &'a HarvestConfig, transport: &'a dyn Transport) -> Self {
        Harvester { cfg, transport, gate: HostGate::new(cfg.per_host_limit, cfg.delay) }
    }

    fn authorize(&self, mut req: Request) -> Request {
        let Some(key) = self.cfg.api_key.as_deref() else { return req };
        if !req.url.starts_with(&self.cfg.bioportal_base) {
            return req;
        }
        match self.cfg.api_key_mode {
            ApiKeyMode::Query => {
                if let Ok(mut u) = reqwest::Url::parse(&req.url) {
                    u.query_pairs_mut().append_pair("apikey", key);
                    req.url = u.to_string();
                }
                req
            }
            ApiKeyMode::Header => req.header("Authorization", &format!("apikey token={key}")),
        }
    }

    /// Sends through the host gate, retrying 429 responses with exponential backoff.
    pub fn send(&self, req: &Request) -> (Result<Response, TransportError>, u32) {
        let req = self.authorize(req.clone());
        let host = host_of(&req.url);
        let mut retries = 0;
        loop {
            let result = {
                let _permit = self.gate.acquire(&host);
                self.transport.send(&req)
            };
            match result {
                Ok(resp) if resp.status == 429 && retries < self.cfg.max_retries => {
                    let wait = self.cfg.backoff_base * 2u32.pow(retries);
                    debug!("429 from {}; retry {} after {:?}", host, retries + 1, wait);
                    std::thread::sleep(wait);
                    retries += 1;
                }
                other => return (other, retries),
            }
        }
    }

    pub fn get_json(&self, url: &str) -> Result<(Value, u32), HarvestError> {
        let (resp, retries) = self.send(&Request::get(url).header("Accept", "application/json"));
        let resp = resp?;
        match resp.status {
            200..=299 => serde_json::from_slice(&resp.body).map(|v| (v, retries)).map_err(|e| HarvestError::Malformed(format!("{url}: {e}"))),
            401 | 403 => Err(HarvestError::Auth(resp.status)),
            429 => Err(HarvestError::RateLimited(retries)),
            status => Err(HarvestError::Http { status, url: url.to_string() }),
        }
    }

    /// Dereferences the record's document URL and caches a 2xx body.
    pub fn fetch_document(&self, mut rec: HarvestRecord, accept: &str) -> HarvestRecord {
        rec.fetched_at = Some(Utc::now());
        rec.accept = Some(accept.to_string());
        let Some(mut url) = rec.document_url.clone() else {
            rec.exclude("no-document-url");
            return rec;
        };
        rec.first_status = None;
        rec.redirects = 0;
        let resp = loop {
            let (result, retries) = self.send(&Request::get(&url).header("Accept", accept));
            rec.retries += retries;
            let resp = match result {
                Ok(r) => r,
                Err(e) => {
                    rec.status_bucket = Some(StatusBucket::Code0);
                    rec.http_code = Some(0);
                    rec.exclude(format!("transport: {e}"));
                    return rec;
                }
            };
            rec.first_status.get_or_insert(resp.status);
            let location = resp.header("location").map(str::to_string);
            match (StatusBucket::from_code(resp.status), location) {
                (StatusBucket::Redirect, Some(loc)) if rec.redirects < self.cfg.max_redirects => {
                    url = rdf::iri::resolve(Some(&url), &loc);
                    rec.redirects += 1;
                }
                (StatusBucket::Redirect, Some(_)) => {
                    rec.exclude("too-many-redirects");
                    break resp;
                }
                _ => break resp,
            }
        };
        rec.http_code = Some(resp.status);
        rec.status_bucket = Some(StatusBucket::from_code(resp.status));
        rec.media_type = resp.media_type().map(str::to_string);
        if rec.status_bucket == Some(StatusBucket::Success) {
            if let Err(e) = self.store_body(&mut rec, &resp.body, &url) {
                rec.exclude(format!("cache: {e}"));
            }
        } else {
            rec.exclude(format!("http-{}", resp.status));
        }
        rec
    }

    fn store_body(&self, rec: &mut HarvestRecord, body: &[u8], url: &str) -> io::Result<()> {
        rec.payload = None;
        rec.cached_path = None;
        rec.sha256 = None;
        rec.excluded_reason = None;
        if body.iter().all(u8::is_ascii_whitespace) {
            rec.payload = Some(Payload::Empty);
            rec.exclude("empty-body");
            return Ok(());
        }
        let head = &body[..body.len().min(4096)];
        let filename = reqwest::Url::parse(url).ok().and_then(|u| u.path_segments()?.next_back().map(str::to_string));
        let (payload, ext) = if looks_like_html(head) {
            (Payload::Html, "html")
        } else {
            match detect_format(filename.as_deref(), rec.media_type.as_deref(), head) {
                Ok(format) => {
                    let opts = ParseOptions { base: Some(url.to_string()), strict: false, max_bytes: self.cfg.max_document_bytes };
                    match rdf::parse_document(body, format, &opts) {
                        Ok(g) => (Payload::Rdf { format, triples: g.len() }, format.extension()),
                        Err(e) => (Payload::NotRdf { reason: e.to_string() }, format.extension()),
                    }
                }
                Err(e) => (Payload::NotRdf { reason: e.to_string() }, "bin"),
            }
        };
        let sha = hex::encode(Sha256::digest(body));
        let rel = PathBuf::from(rec.repository.name()).join(sanitize(&rec.id)).join(format!("{sha}.{ext}"));
        let abs = self.cfg.cache_dir.join(&rel);
        if !abs.exists() {
            fs::create_dir_all(abs.parent().expect("cache path has a parent"))?;
            fs::write(&abs, body)?;
        }
        rec.cached_path = Some(rel.to_string_lossy().replace('\\', "/"));
        rec.sha256 = Some(sha);
        match &payload {
            Payload::Html => rec.exclude("html-not-rdf"),
            Payload::NotRdf { reason } => rec.exclude(format!("not-rdf: {reason}")),
            Payload::Rdf { triples: 0, .. } => rec.exclude("no-triples"),
            _ => {}
        }
        rec.payload = Some(payload);
        Ok(())
    }

    /// Applies `f` to every record on a worker pool; output keeps input order.
    pub fn map_concurrent<T, F>(&self, items: Vec<T>, f: F) -> Vec<HarvestRecord>
    where
        T: Send,
        F: Fn(T) -> HarvestRecord + Sync,
    {
        let n = items.len();
        let queue = Mutex::new(items.into_iter().enumerate());
        let (tx, rx) = mpsc::channel();
        let workers = self.cfg.concurrency.max(1).min(n.max(1));
        let mut out: Vec<Option<HarvestRecord>> = (0..n).map(|_| None).collect();
        std::thread::scope(|s| {
            for _ in 0..workers {
                let tx = tx.clone();
                let queue = &queue;
                let f = &f;
                s.spawn(move || loop {
                    let next = queue.lock().expect("queue lock").next();
                    let Some((i, item)) = next else { break };
                    if tx.send((i, f(item))).is_err() {
                        break;
                    }
                });
            }
            drop(tx);
            for (i, rec) in rx {
                out[i] = Some(rec);
            }
        });
        out.into_iter().map(|r| r.expect("every item produces a record")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterStep {
    pub name: String,
    pub predicate_description: String,
    pub in_count: usize,
    pub out_count: usize,
}

#[derive(Clone, Copy)]
pub struct Predicate {
    pub name: &'static str,
    pub description: &'static str,
    pub test: fn(&HarvestRecord) -> bool,
}

pub const FORMAT_IS_OWL: Predicate = Predicate {
    name: "format-is-owl",
    description: "declared ontology language is OWL",
    test: |r| r.declared_format.eq_ignore_ascii_case("owl"),
};

pub const STATUS_IS_PRODUCTION: Predicate = Predicate {
    name: "status-is-production",
    description: "latest submission status is production",
    test: |r| r.submission_status().is_some_and(|s| s.eq_ignore_ascii_case("production")),
};

pub const BODY_NONEMPTY: Predicate = Predicate {
    name: "body-nonempty",
    description: "2xx response with a non-empty body",
    test: |r| r.status_bucket == Some(StatusBucket::Success) && r.cached_path.is_some(),
};

pub const BUCKET_IS_2XX: Predicate = Predicate {
    name: "bucket-is-2xx",
    description: "final HTTP status in the 2xx range",
    test: |r| r.status_bucket == Some(StatusBucket::Success),
};

pub const BODY_IS_RDF: Predicate = Predicate {
    name: "body-is-rdf",
    description: "body parses as RDF with at least one triple",
    test: |r| matches!(r.payload, Some(Payload::Rdf { triples, .. }) if triples > 0),
};

pub fn builtin_predicate(name: &str) -> Option<Predicate> {
    [FORMAT_IS_OWL, STATUS_IS_PRODUCTION, BODY_NONEMPTY, BUCKET_IS_2XX, BODY_IS_RDF].into_iter().find(|p| p.name == name)
}

#[derive(Debug, Clone, Default)]
pub struct PipelineResult {
    pub survivors: Vec<HarvestRecord>,
    /// Records dropped by a step, each marked with an exclusion reason.
    pub rejected: Vec<HarvestRecord>,
    pub steps: Vec<FilterStep>,
}

pub fn filter_pipeline(records: Vec<HarvestRecord>, steps: &[Predicate]) -> PipelineResult {
    let mut out = PipelineResult { survivors: records, ..Default::default() };
    for p in steps {
        let in_count = out.survivors.len();
        let (keep, drop): (Vec<_>, Vec<_>) = out.survivors.into_iter().partition(|r| (p.test)(r));
        out.survivors = keep;
        out.rejected.extend(drop.into_iter().map(|mut r| {
            r.exclude(format!("filtered: {}", p.name));
            r
        }));
        out.steps.push(FilterStep {
            name: p.name.to_string(),
            predicate_description: p.description.to_string(),
            in_count,
            out_count: out.survivors.len(),
        });
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HarvestOutcome {
    pub repository: Repository,
    pub listed: usize,
    pub listing_retries: u32,
    pub buckets: BTreeMap<String, usize>,
    pub steps: Vec<FilterStep>,
    pub surviving: usize,
    #[serde(skip)]
    pub records: Vec<HarvestRecord>,
}

pub fn bucket_counts(records: &[HarvestRecord]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for r in records {
        if let Some(b) = r.status_bucket {
            *m.entry(b.name().to_string()).or_insert(0) += 1;
        }
    }
    m
}

pub fn harvest(repo: Repository, cfg: &HarvestConfig, transport: &dyn Transport) -> Result<HarvestOutcome, HarvestError> {
    let h = Harvester::new(cfg, transport);
    let mut outcome = match repo {
        Repository::Bioportal => h.bioportal_pipeline()?,
        Repository::Lov => h.lov_pipeline()?,
    };
    outcome.records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(outcome)
}

pub fn ledger_path(cache_dir: &Path, repo: Repository) -> PathBuf {
    cache_dir.join(repo.name()).join(LEDGER_FILE)
}

pub fn write_outcome(cache_dir: &Path, outcome: &HarvestOutcome) -> io::Result<PathBuf> {
    let path = ledger_path(cache_dir, outcome.repository);
    fs::create_dir_all(path.parent().expect("ledger has a parent"))?;
    let mut w = io::BufWriter::new(fs::File::create(&path)?);
    for r in &outcome.records {
        serde_json::to_writer(&mut w, r).map_err(io::Error::other)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    let summary = serde_json::to_string_pretty(outcome).map_err(io::Error::other)?;
    fs::write(path.with_file_name(PIPELINE_FILE), summary + "\n")?;
    Ok(path)
}

pub fn read_ledger(path: &Path) -> io::Result<Vec<HarvestRecord>> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("{}:{}: {e}", path.display(), n + 1)))?);
    }
    Ok(out)
}

/// Drops repeated ids, keeping the first occurrence.
fn dedupe(records: Vec<HarvestRecord>) -> Vec<HarvestRecord> {
    let mut seen = std::collections::HashSet::new();
    records
        .into_iter()
        .filter(|r| {
            let fresh = seen.insert(r.id.clone());
            if !fresh {
                warn!("duplicate {} id `{}` ignored", r.repository, r.id);
            }
            fresh
        })
        .collect()
}
