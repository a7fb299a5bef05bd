//! Report tables over audit results, rendered as JSON, CSV or Markdown.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::audit::AuditResult;
use crate::lang::{LanguageTag, UNTAGGED};
use crate::metrics::{aggregate, boxplot, classify_multilingual, round_half_up, MetricsError};

pub const QUARTILE_METHOD: &str = "linear interpolation between closest ranks";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReportError {
    #[error("no results to report")]
    EmptyInput,
    #[error("unknown report kind `{0}`")]
    UnknownKind(String),
    #[error("unknown output format `{0}`")]
    UnknownFormat(String),
}

impl From<MetricsError> for ReportError {
    fn from(_: MetricsError) -> Self {
        ReportError::EmptyInput
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    PerOntologyClassification,
    CompletenessMatrix,
    DatasetComparison,
    LanguageDistribution,
    BoxplotSummary,
}

impl ReportKind {
    pub const ALL: [ReportKind; 5] = [
        ReportKind::PerOntologyClassification,
        ReportKind::CompletenessMatrix,
        ReportKind::DatasetComparison,
        ReportKind::LanguageDistribution,
        ReportKind::BoxplotSummary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReportKind::PerOntologyClassification => "per-ontology-classification",
            ReportKind::CompletenessMatrix => "completeness-matrix",
            ReportKind::DatasetComparison => "dataset-comparison",
            ReportKind::LanguageDistribution => "language-distribution",
            ReportKind::BoxplotSummary => "boxplot-summary",
        }
    }

    fn title(self) -> &'static str {
        match self {
            ReportKind::PerOntologyClassification => "Modelling approach and languages per ontology",
            ReportKind::CompletenessMatrix => "Language-specific completeness compared to coverage",
            ReportKind::DatasetComparison => "Dataset comparison",
            ReportKind::LanguageDistribution => "Multilingual ontologies by number of languages",
            ReportKind::BoxplotSummary => "Coverage distribution of multilingual ontologies",
        }
    }
}

impl fmt::Display for ReportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReportKind {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReportKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ReportError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            other => Err(ReportError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    Int(u64),
    /// `trim` drops a zero fraction ("1391" rather than "1391.00").
    Num { raw: f64, decimals: u32, percent: bool, trim: bool },
    Text(String),
}

impl Cell {
    fn pct(raw: f64, decimals: u32) -> Cell {
        Cell::Num { raw, decimals, percent: true, trim: false }
    }

    fn stat(raw: Option<f64>) -> Cell {
        raw.map_or(Cell::Null, |raw| Cell::Num { raw, decimals: 2, percent: false, trim: true })
    }

    fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    pub fn rounded(&self) -> Option<f64> {
        match self {
            Cell::Num { raw, decimals, .. } => Some(round_half_up(*raw, *decimals)),
            _ => None,
        }
    }

    /// Plain rendering shared by CSV and Markdown.
    fn plain(&self) -> String {
        match self {
            Cell::Null => "-".to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Num { raw, decimals, trim, .. } => {
                let s = format!("{:.*}", *decimals as usize, round_half_up(*raw, *decimals));
                if *trim && s.contains('.') {
                    s.trim_end_matches('0').trim_end_matches('.').to_string()
                } else {
                    s
                }
            }
            Cell::Text(t) => t.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Null => Value::Null,
            Cell::Int(n) => json!(n),
            Cell::Num { .. } => json!(self.rounded()),
            Cell::Text(t) => json!(t),
        }
    }

    fn numeric(&self) -> bool {
        matches!(self, Cell::Int(_) | Cell::Num { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: ReportKind,
    pub threshold: f64,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

fn join_tags<'a>(tags: impl IntoIterator<Item = &'a LanguageTag>) -> String {
    tags.into_iter().map(|t| t.as_str()).collect::<Vec<_>>().join(", ")
}

fn sorted(results: &[AuditResult]) -> Vec<&AuditResult> {
    let mut v: Vec<&AuditResult> = results.iter().collect();
    v.sort_by(|a, b| {
        a.ontology_id
            .to_lowercase()
            .cmp(&b.ontology_id.to_lowercase())
            .then_with(|| a.ontology_id.cmp(&b.ontology_id))
            .then_with(|| a.dataset_name().cmp(b.dataset_name()))
    });
    v
}

/// Results grouped by dataset name (alphabetically), unnamed results under "all".
fn by_dataset(results: &[AuditResult]) -> BTreeMap<String, Vec<AuditResult>> {
    let mut groups: BTreeMap<String, Vec<AuditResult>> = BTreeMap::new();
    for r in results {
        let name = r.dataset.clone().unwrap_or_else(|| "all".to_string());
        groups.entry(name).or_default().push(r.clone());
    }
    groups
}

fn tag_key(t: &LanguageTag) -> (String, String) {
    (t.as_str().to_ascii_lowercase(), t.as_str().to_string())
}

pub fn build(results: &[AuditResult], kind: ReportKind, threshold: f64) -> Result<Table, ReportError> {
    if results.is_empty() {
        return Err(ReportError::EmptyInput);
    }
    let mut table = Table { kind, threshold, columns: Vec::new(), rows: Vec::new(), notes: Vec::new() };
    let cols = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let multi_datasets = results.iter().any(|r| r.dataset.is_some());
    match kind {
        ReportKind::PerOntologyClassification => {
            table.columns = cols(&["ontology", "cov", "primary_languages", "other_languages", "family", "variant", "needs_review", "multilingual"]);
            if multi_datasets {
                table.columns.insert(1, "dataset".into());
            }
            for r in sorted(results) {
                let mut row = vec![
                    Cell::text(&r.ontology_id),
                    Cell::Int(r.profile.cov),
                    Cell::text(join_tags(&r.primary_languages)),
                    Cell::text(join_tags(&r.other_languages)),
                    Cell::text(r.approach.family.to_string()),
                    Cell::text(r.approach.variant.to_string()),
                    Cell::text(if r.approach.needs_human_review { "yes" } else { "no" }),
                    Cell::text(if classify_multilingual(&r.profile, threshold) { "yes" } else { "no" }),
                ];
                if multi_datasets {
                    row.insert(1, Cell::text(r.dataset_name()));
                }
                table.rows.push(row);
            }
            table.notes.push("labels variants rest on an identifier-style share threshold; confirm by inspection".into());
        }
        ReportKind::CompletenessMatrix => {
            let mut langs: Vec<&LanguageTag> = results.iter().flat_map(|r| r.profile.per_language.keys()).collect::<BTreeSet<_>>().into_iter().collect();
            langs.sort_by_key(|t| tag_key(t));
            let untagged = results.iter().any(|r| r.profile.untagged_entities > 0);
            table.columns = cols(&["ontology", "cov"]);
            table.columns.extend(langs.iter().map(|l| l.as_str().to_string()));
            if untagged {
                table.columns.push(UNTAGGED.to_string());
            }
            for r in sorted(results) {
                let mut row = vec![Cell::text(&r.ontology_id), Cell::Int(r.profile.cov)];
                row.extend(langs.iter().map(|l| r.profile.per_language.get(*l).map_or(Cell::Null, |&v| Cell::pct(v, 1))));
                if untagged {
                    row.push(if r.profile.untagged_entities > 0 { Cell::pct(r.profile.untagged_percentage, 1) } else { Cell::Null });
                }
                table.rows.push(row);
            }
        }
        ReportKind::DatasetComparison => {
            table.columns = cols(&["dataset", "ontologies", "multilingual", "percent_multilingual", "total_cov", "mean_cov", "median_cov"]);
            for (name, group) in by_dataset(results) {
                let s = aggregate(&group, threshold)?;
                table.rows.push(vec![
                    Cell::text(name),
                    Cell::Int(s.count_total as u64),
                    Cell::Int(s.count_multilingual as u64),
                    Cell::pct(s.percent_multilingual, 2),
                    Cell::Int(s.total_cov),
                    Cell::stat(s.mean_cov),
                    Cell::stat(s.median_cov),
                ]);
            }
        }
        ReportKind::LanguageDistribution => {
            let groups = by_dataset(results);
            let mut hist = Vec::new();
            for (name, group) in &groups {
                hist.push((name.clone(), aggregate(group, threshold)?.languages_per_ontology));
            }
            let max = hist.iter().filter_map(|(_, h)| h.keys().max().copied()).max().unwrap_or(2).max(2);
            table.columns = vec!["languages".into()];
            table.columns.extend(hist.iter().map(|(n, _)| n.clone()));
            for k in 2..=max {
                let mut row = vec![Cell::Int(k as u64)];
                row.extend(hist.iter().map(|(_, h)| Cell::Int(h.get(&k).copied().unwrap_or(0) as u64)));
                table.rows.push(row);
            }
        }
        ReportKind::BoxplotSummary => {
            table.columns = cols(&["dataset", "n", "min", "q1", "median", "q3", "max", "mean"]);
            for (name, group) in by_dataset(results) {
                let s = aggregate(&group, threshold)?;
                let covs: Vec<f64> = s.multilingual_covs.iter().map(|&c| c as f64).collect();
                let mut row = vec![Cell::text(name), Cell::Int(covs.len() as u64)];
                match boxplot(&covs) {
                    Some(b) => row.extend([b.min, b.q1, b.median, b.q3, b.max, b.mean].map(|v| Cell::stat(Some(v)))),
                    None => row.extend(std::iter::repeat_n(Cell::Null, 6)),
                }
                table.rows.push(row);
            }
            table.notes.push(format!("quartiles: {QUARTILE_METHOD}"));
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    /// Timestamp to embed; `None` omits it for byte-stable output.
    pub generated_at: Option<String>,
    /// Thin-space thousands grouping in Markdown numbers.
    pub group_digits: bool,
}

pub fn now_timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn threshold_text(t: f64) -> String {
    crate::audit::threshold_key(t)
}

pub fn render_json(table: &Table, opts: &RenderOptions) -> String {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            let mut raw = Map::new();
            for (c, cell) in table.columns.iter().zip(row) {
                obj.insert(c.clone(), cell.json());
                if let Cell::Num { raw: r, .. } = cell {
                    raw.insert(c.clone(), json!(r));
                }
            }
            if !raw.is_empty() {
                obj.insert("raw".into(), Value::Object(raw));
            }
            Value::Object(obj)
        })
        .collect();
    let mut meta = Map::new();
    meta.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta.insert("columns".into(), json!(table.columns));
    if let Some(ts) = &opts.generated_at {
        meta.insert("generated_at".into(), json!(ts));
    }
    if !table.notes.is_empty() {
        meta.insert("notes".into(), json!(table.notes));
    }
    let doc = json!({ "kind": table.kind.name(), "threshold": table.threshold, "rows": rows, "meta": meta });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}

pub fn render_csv(table: &Table) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(&table.columns).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::plain)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

fn group(s: &str) -> String {
    let (int, frac) = s.split_once('.').map_or((s, None), |(i, f)| (i, Some(f)));
    let digits: Vec<char> = int.chars().collect();
    if digits.len() <= 4 || !digits.iter().all(char::is_ascii_digit) {
        return s.to_string();
    }
    let mut out = String::new();
    for (i, c) in digits.iter().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push('\u{2009}');
        }
        out.push(*c);
    }
    if let Some(f) = frac {
        out.push('.');
        out.push_str(f);
    }
    out
}

pub fn render_markdown(table: &Table, opts: &RenderOptions) -> String {
    let mut out = format!("## {} (threshold > {}%)\n\n", table.kind.title(), threshold_text(table.threshold));
    let esc = |s: &str| s.replace('|', "\\|");
    out.push_str(&format!("| {} |\n", table.columns.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")));
    let numeric_col: Vec<bool> = (0..table.columns.len())
        .map(|i| table.rows.iter().any(|r| r[i].numeric()) && table.rows.iter().all(|r| r[i].numeric() || r[i] == Cell::Null))
        .collect();
    out.push_str(&format!(
        "|{}|\n",
        numeric_col.iter().map(|&n| if n { " ---: " } else { " --- " }).collect::<Vec<_>>().join("|")
    ));
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| {
                let mut s = c.plain();
                if opts.group_digits && c.numeric() {
                    s = group(&s);
                }
                if matches!(c, Cell::Num { percent: true, .. }) {
                    s.push('%');
                }
                esc(&s)
            })
            .collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    if !table.notes.is_empty() || opts.generated_at.is_some() {
        out.push('\n');
    }
    for n in &table.notes {
        out.push_str(&format!("Note: {n}\n"));
    }
    if let Some(ts) = &opts.generated_at {
        out.push_str(&format!("Generated: {ts}\n"));
    }
    out
}

pub fn render(table: &Table, format: OutputFormat, opts: &RenderOptions) -> String {
    match format {
        OutputFormat::Json => render_json(table, opts),
        OutputFormat::Csv => render_csv(table),
        OutputFormat::Markdown => render_markdown(table, opts),
    }
}

pub fn emit(results: &[AuditResult], kind: ReportKind, format: OutputFormat, threshold: f64, opts: &RenderOptions) -> Result<Vec<u8>, ReportError> {
    Ok(render(&build(results, kind, threshold)?, format, opts).into_bytes())
}
