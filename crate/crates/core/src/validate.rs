//! Structural constraints on lexicalised ontologies: OntoLex senses and
//! SKOS preferred labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::lang::{parse_tag, UNTAGGED};
use crate::rdf::{Graph, Term};
use crate::vocab::{ontolex, rdf, skos};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// A lexical sense belongs to exactly one lexical entry.
    SenseEntry,
    /// A lexical sense has exactly one ontology reference.
    SenseReference,
    /// At most one skos:prefLabel per language on a resource.
    PrefLabelPerLanguage,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {}: {}", self.rule, self.subject, self.detail)
    }
}

fn key(t: &Term) -> String {
    match t {
        Term::Iri(i) => i.clone(),
        other => other.to_string(),
    }
}

pub fn check_sense_cardinality(g: &Graph) -> Vec<Violation> {
    let mut senses: BTreeSet<String> = BTreeSet::new();
    let mut entries: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut references: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for t in g.triples() {
        let s = key(&t.subject);
        let o = key(&t.object);
        match t.predicate.as_str() {
            rdf::TYPE if t.object.as_iri() == Some(ontolex::LEXICAL_SENSE) => {
                senses.insert(s);
            }
            ontolex::SENSE => {
                entries.entry(o.clone()).or_default().insert(s);
                senses.insert(o);
            }
            ontolex::IS_SENSE_OF => {
                entries.entry(s.clone()).or_default().insert(o);
                senses.insert(s);
            }
            ontolex::REFERENCE => {
                references.entry(s.clone()).or_default().insert(o);
                senses.insert(s);
            }
            ontolex::IS_REFERENCE_OF => {
                references.entry(o.clone()).or_default().insert(s);
                senses.insert(o);
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    for sense in senses {
        let e = entries.get(&sense).map_or(0, BTreeSet::len);
        if e != 1 {
            out.push(Violation { rule: Rule::SenseEntry, subject: sense.clone(), detail: format!("linked to {e} lexical entries") });
        }
        let r = references.get(&sense).map_or(0, BTreeSet::len);
        if r != 1 {
            out.push(Violation { rule: Rule::SenseReference, subject: sense, detail: format!("has {r} references") });
        }
    }
    out
}

pub fn check_pref_labels(g: &Graph) -> Vec<Violation> {
    let mut groups: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
    for t in g.with_predicate(skos::PREF_LABEL) {
        let Some(l) = t.object.as_literal() else { continue };
        let lang = l.language().map_or_else(|| UNTAGGED.to_string(), |tag| parse_tag(tag).as_str().to_string());
        groups.entry((key(&t.subject), lang)).or_default().insert(l.lexical().to_string());
    }
    groups
        .into_iter()
        .filter(|(_, values)| values.len() > 1)
        .map(|((subject, lang), values)| Violation {
            rule: Rule::PrefLabelPerLanguage,
            subject,
            detail: format!("{} preferred labels in {lang}", values.len()),
        })
        .collect()
}

pub fn validate(g: &Graph) -> Vec<Violation> {
    let mut v = check_sense_cardinality(g);
    v.extend(check_pref_labels(g));
    v
}
