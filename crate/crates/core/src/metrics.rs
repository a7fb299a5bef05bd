//! Coverage, language-specific completeness, primary languages, multilingual
//! classification and dataset aggregates.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::audit::AuditResult;
use crate::lang::{LabelLanguage, LanguageTag};
use crate::signature::{AnnotationInventory, OntologySignature};

/// Default tolerance, in percentage points, for treating languages as joint primaries.
pub const DEFAULT_TIE_EPSILON: f64 = 1.0;

/// Completeness thresholds used by the dataset reports.
pub const REPORT_THRESHOLDS: [f64; 2] = [0.0, 5.0];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricsError {
    #[error("coverage is zero; completeness is undefined")]
    DegenerateCoverage,
    #[error("profile has zero coverage")]
    DegenerateProfile,
    #[error("no results to aggregate")]
    EmptyInput,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CompletenessProfile {
    pub cov: u64,
    pub per_language: BTreeMap<LanguageTag, f64>,
    pub untagged_percentage: f64,
    pub labeled_entities_per_language: BTreeMap<LanguageTag, u64>,
    #[serde(default)]
    pub untagged_entities: u64,
    #[serde(default)]
    pub degenerate: bool,
}

impl CompletenessProfile {
    /// Builds a profile from per-language entity counts.
    pub fn from_counts(cov: u64, counts: BTreeMap<LanguageTag, u64>, untagged: u64) -> Self {
        if cov == 0 {
            return CompletenessProfile { degenerate: true, ..Default::default() };
        }
        let pct = |n: u64| 100.0 * n as f64 / cov as f64;
        CompletenessProfile {
            cov,
            per_language: counts.iter().map(|(l, &n)| (l.clone(), pct(n))).collect(),
            untagged_percentage: pct(untagged),
            labeled_entities_per_language: counts,
            untagged_entities: untagged,
            degenerate: false,
        }
    }

    pub fn lcom(&self, lang: &LanguageTag) -> f64 {
        self.per_language.get(lang).copied().unwrap_or(0.0)
    }

    /// Languages whose completeness is strictly above `threshold`.
    pub fn languages_above(&self, threshold: f64) -> BTreeSet<&LanguageTag> {
        self.per_language.iter().filter(|(_, &v)| v > threshold).map(|(l, _)| l).collect()
    }
}

pub fn coverage(sig: &OntologySignature) -> u64 {
    (sig.classes.len() + sig.object_properties.len() + sig.data_properties.len()) as u64
}

/// Per-language sets of entities carrying at least one literal label.
fn labeled_entities(inv: &AnnotationInventory) -> (BTreeMap<LanguageTag, BTreeSet<String>>, BTreeSet<String>) {
    let mut tagged: BTreeMap<LanguageTag, BTreeSet<String>> = BTreeMap::new();
    let mut untagged = BTreeSet::new();
    for (entity, row) in inv.iter() {
        match &row.language {
            LabelLanguage::Tagged(tag) => {
                tagged.entry(tag.clone()).or_default().insert(entity.to_string());
            }
            LabelLanguage::Untagged => {
                untagged.insert(entity.to_string());
            }
            LabelLanguage::NotApplicable => {}
        }
    }
    (tagged, untagged)
}

// A punned IRI counts once in each entity set it belongs to, as it does in Cov.
fn weighted(sig: &OntologySignature, entities: &BTreeSet<String>) -> u64 {
    entities
        .iter()
        .map(|e| {
            u64::from(sig.classes.contains(e))
                + u64::from(sig.object_properties.contains(e))
                + u64::from(sig.data_properties.contains(e))
        })
        .sum()
}

pub fn language_completeness(inv: &AnnotationInventory, sig: &OntologySignature, lang: &LanguageTag) -> Result<f64, MetricsError> {
    let cov = coverage(sig);
    if cov == 0 {
        return Err(MetricsError::DegenerateCoverage);
    }
    let (tagged, _) = labeled_entities(inv);
    let n = tagged.get(lang).map_or(0, |set| weighted(sig, set));
    Ok(100.0 * n as f64 / cov as f64)
}

pub fn completeness_profile(inv: &AnnotationInventory, sig: &OntologySignature) -> CompletenessProfile {
    let (tagged, untagged) = labeled_entities(inv);
    let counts = tagged.iter().map(|(l, set)| (l.clone(), weighted(sig, set))).collect();
    CompletenessProfile::from_counts(coverage(sig), counts, weighted(sig, &untagged))
}

pub fn primary_languages(profile: &CompletenessProfile, tie_epsilon: f64) -> Result<BTreeSet<LanguageTag>, MetricsError> {
    if profile.degenerate || profile.cov == 0 {
        return Err(MetricsError::DegenerateProfile);
    }
    let max = profile.per_language.values().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(profile
        .per_language
        .iter()
        .filter(|(_, &v)| max - v <= tie_epsilon + 1e-9)
        .map(|(l, _)| l.clone())
        .collect())
}

pub fn classify_multilingual(profile: &CompletenessProfile, threshold: f64) -> bool {
    profile.per_language.values().filter(|&&v| v > threshold).count() >= 2
}

pub fn required_mapping_count(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Rounds half away from zero at `decimals` places, tolerating binary noise
/// just below the midpoint.
pub fn round_half_up(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let scaled = x.abs() * scale;
    let rounded = (scaled + 0.5 + 1e-12 * scaled.max(1.0)).floor();
    rounded.copysign(x) / scale
}

/// Quantile by linear interpolation between closest ranks (`p` in [0,1]).
pub fn quantile(sorted: &[f64], p: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    Some(sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo]))
}

pub fn median(values: &[f64]) -> Option<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    quantile(&v, 0.5)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

pub fn boxplot(values: &[f64]) -> Option<BoxplotStats> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(BoxplotStats {
        min: *v.first()?,
        q1: quantile(&v, 0.25)?,
        median: quantile(&v, 0.5)?,
        q3: quantile(&v, 0.75)?,
        max: *v.last()?,
        mean: v.iter().sum::<f64>() / v.len() as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub threshold: f64,
    pub count_total: usize,
    pub count_multilingual: usize,
    pub percent_multilingual: f64,
    pub total_cov: u64,
    pub mean_cov: Option<f64>,
    pub median_cov: Option<f64>,
    /// Multilingual ontologies per language above the threshold.
    pub language_histogram: BTreeMap<String, usize>,
    /// Multilingual ontologies by number of languages above the threshold.
    pub languages_per_ontology: BTreeMap<usize, usize>,
    pub multilingual_covs: Vec<u64>,
}

pub fn aggregate_profiles<'a, I>(profiles: I, threshold: f64) -> Result<DatasetSummary, MetricsError>
where
    I: IntoIterator<Item = &'a CompletenessProfile>,
{
    let mut count_total = 0;
    let mut covs = Vec::new();
    let mut language_histogram = BTreeMap::new();
    let mut languages_per_ontology = BTreeMap::new();
    for p in profiles {
        count_total += 1;
        if !classify_multilingual(p, threshold) {
            continue;
        }
        covs.push(p.cov);
        let langs = p.languages_above(threshold);
        *languages_per_ontology.entry(langs.len()).or_insert(0) += 1;
        for l in langs {
            *language_histogram.entry(l.as_str().to_string()).or_insert(0) += 1;
        }
    }
    if count_total == 0 {
        return Err(MetricsError::EmptyInput);
    }
    covs.sort_unstable();
    let total_cov: u64 = covs.iter().sum();
    let as_f: Vec<f64> = covs.iter().map(|&c| c as f64).collect();
    Ok(DatasetSummary {
        threshold,
        count_total,
        count_multilingual: covs.len(),
        percent_multilingual: 100.0 * covs.len() as f64 / count_total as f64,
        total_cov,
        mean_cov: (!covs.is_empty()).then(|| total_cov as f64 / covs.len() as f64),
        median_cov: median(&as_f),
        language_histogram,
        languages_per_ontology,
        multilingual_covs: covs,
    })
}

pub fn aggregate(results: &[AuditResult], threshold: f64) -> Result<DatasetSummary, MetricsError> {
    aggregate_profiles(results.iter().map(|r| &r.profile), threshold)
}
