//! One-document audit: signature, approach detection and completeness metrics.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::detect::{detect, ApproachEvidence, DetectorConfig};
use crate::lang::LanguageTag;
use crate::metrics::{classify_multilingual, completeness_profile, primary_languages, CompletenessProfile, REPORT_THRESHOLDS};
use crate::rdf::Graph;
use crate::signature::{collect_annotations, default_label_properties, extract_signature};

#[derive(Debug, Clone)]
pub struct AuditOptions {
    pub label_properties: Vec<String>,
    pub detector: DetectorConfig,
    pub thresholds: Vec<f64>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            label_properties: default_label_properties(),
            detector: DetectorConfig::default(),
            thresholds: REPORT_THRESHOLDS.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditDiagnostics {
    pub triples: usize,
    pub classes: usize,
    pub object_properties: usize,
    pub data_properties: usize,
    pub punned: Vec<String>,
    pub anonymous_class_expressions: usize,
    pub declared_imports: Vec<String>,
    pub xml_lang_literals: usize,
    pub iri_labels_local: usize,
    pub iri_labels_foreign: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditResult {
    pub ontology_id: String,
    /// Collection the ontology belongs to (e.g. a repository), used to group dataset reports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    pub profile: CompletenessProfile,
    pub primary_languages: BTreeSet<LanguageTag>,
    pub other_languages: BTreeSet<LanguageTag>,
    pub approach: ApproachEvidence,
    /// Keyed by threshold percentage written without trailing zeros ("0", "5", "2.5").
    pub multilingual_at: BTreeMap<String, bool>,
    #[serde(default)]
    pub diagnostics: AuditDiagnostics,
}

impl AuditResult {
    /// Assembles a result from a completeness profile alone; the approach is left undetermined.
    pub fn from_profile(ontology_id: &str, profile: CompletenessProfile, approach: ApproachEvidence, thresholds: &[f64], tie_epsilon: f64) -> Self {
        let primary = primary_languages(&profile, tie_epsilon).unwrap_or_default();
        let other = profile.per_language.keys().filter(|l| !primary.contains(*l)).cloned().collect();
        let multilingual_at = thresholds.iter().map(|&t| (threshold_key(t), classify_multilingual(&profile, t))).collect();
        AuditResult {
            ontology_id: ontology_id.to_string(),
            dataset: None,
            profile,
            primary_languages: primary,
            other_languages: other,
            approach,
            multilingual_at,
            diagnostics: AuditDiagnostics::default(),
        }
    }

    pub fn dataset_name(&self) -> &str {
        self.dataset.as_deref().unwrap_or("")
    }
}

pub fn threshold_key(t: f64) -> String {
    let s = format!("{t}");
    s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
}

pub fn audit_graph(ontology_id: &str, g: &Graph, opts: &AuditOptions) -> AuditResult {
    let sig = extract_signature(g);
    let inv = collect_annotations(g, &sig, &opts.label_properties);
    let approach = detect(g, &sig, &inv, &opts.detector);
    let profile = completeness_profile(&inv, &sig);
    let mut result = AuditResult::from_profile(ontology_id, profile, approach, &opts.thresholds, opts.detector.tie_epsilon);
    if !sig.punned.is_empty() {
        result.approach.notes.push(format!("{} punned IRIs counted once per entity kind", sig.punned.len()));
        result.approach.needs_human_review = true;
    }
    if result.profile.degenerate {
        result.approach.notes.push("zero coverage; completeness undefined".into());
    }
    let (local, foreign) = inv
        .iter()
        .filter_map(|(_, r)| r.local_value)
        .fold((0, 0), |(l, f), is_local| if is_local { (l + 1, f) } else { (l, f + 1) });
    result.diagnostics = AuditDiagnostics {
        triples: g.len(),
        classes: sig.classes.len(),
        object_properties: sig.object_properties.len(),
        data_properties: sig.data_properties.len(),
        punned: sig.punned.iter().cloned().collect(),
        anonymous_class_expressions: sig.anonymous_class_expressions,
        declared_imports: sig.declared_imports.iter().cloned().collect(),
        xml_lang_literals: g.diagnostics().xml_lang_literals,
        iri_labels_local: local,
        iri_labels_foreign: foreign,
        sources: Vec::new(),
    };
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_str, RdfFormat};

    #[test]
    fn listing_one_audit() {
        let g = parse_str(
            "@prefix : <http://ex.org/o#> .
             @prefix owl: <http://www.w3.org/2002/07/owl#> .
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
             :Person rdfs:subClassOf owl:Thing ; rdfs:label \"Person\"@en , \"Persoon\"@nl .",
            RdfFormat::Turtle,
        )
        .unwrap();
        let r = audit_graph("listing1", &g, &AuditOptions::default());
        assert_eq!(r.profile.cov, 1);
        assert!(r.multilingual_at["0"]);
        assert_eq!(r.primary_languages.len(), 2);
        let json = serde_json::to_string(&r).unwrap();
        let back: AuditResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn threshold_keys() {
        assert_eq!(threshold_key(0.0), "0");
        assert_eq!(threshold_key(5.0), "5");
        assert_eq!(threshold_key(2.5), "2.5");
    }
}
