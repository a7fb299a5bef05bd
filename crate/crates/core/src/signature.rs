//! Ontology signature (classes, object properties, data properties) and the
//! inventory of label annotations attached to its entities.
//!
//! Entities are taken from the document itself: `owl:imports` targets are
//! recorded but never followed, while entities from foreign namespaces that
//! appear in local axioms are counted.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::lang::{parse_tag, LabelLanguage};
use crate::rdf::{Graph, Term};
use crate::vocab::{self, owl, rdf, rdfs, skos};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OntologySignature {
    pub classes: BTreeSet<String>,
    pub object_properties: BTreeSet<String>,
    pub data_properties: BTreeSet<String>,
    pub declared_imports: BTreeSet<String>,
    pub ontology_iri: Option<String>,
    pub local_namespaces: BTreeSet<String>,
    /// IRIs present in more than one of the three entity sets.
    pub punned: BTreeSet<String>,
    /// Blank-node class expressions seen in class axioms; not part of coverage.
    pub anonymous_class_expressions: usize,
}

impl OntologySignature {
    /// Every entity, each IRI once even when punned.
    pub fn entities(&self) -> BTreeSet<&str> {
        self.classes
            .iter()
            .chain(&self.object_properties)
            .chain(&self.data_properties)
            .map(String::as_str)
            .collect()
    }

    pub fn contains(&self, iri: &str) -> bool {
        self.classes.contains(iri) || self.object_properties.contains(iri) || self.data_properties.contains(iri)
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.object_properties.is_empty() && self.data_properties.is_empty()
    }

    pub fn is_local(&self, iri: &str) -> bool {
        self.local_namespaces.iter().any(|ns| iri.starts_with(ns.as_str()))
    }
}

fn countable(iri: &str) -> bool {
    !vocab::is_reserved(iri) && iri != owl::THING && iri != owl::NOTHING
}

const OBJECT_PROPERTY_TYPES: [&str; 7] = [
    owl::OBJECT_PROPERTY,
    owl::TRANSITIVE_PROPERTY,
    owl::SYMMETRIC_PROPERTY,
    owl::ASYMMETRIC_PROPERTY,
    owl::REFLEXIVE_PROPERTY,
    owl::IRREFLEXIVE_PROPERTY,
    owl::INVERSE_FUNCTIONAL_PROPERTY,
];

pub fn extract_signature(g: &Graph) -> OntologySignature {
    let mut sig = OntologySignature::default();
    let mut anonymous: BTreeSet<&str> = BTreeSet::new();

    for t in g.with_predicate(rdf::TYPE) {
        let Some(class) = t.object.as_iri() else { continue };
        match &t.subject {
            Term::Iri(s) => {
                if class == owl::CLASS {
                    sig.classes.insert(s.clone());
                } else if OBJECT_PROPERTY_TYPES.contains(&class) {
                    sig.object_properties.insert(s.clone());
                } else if class == owl::DATATYPE_PROPERTY {
                    sig.data_properties.insert(s.clone());
                } else if class == owl::ONTOLOGY
                    && sig.ontology_iri.as_deref().is_none_or(|cur| s.as_str() < cur)
                {
                    sig.ontology_iri = Some(s.clone());
                }
            }
            Term::BlankNode(b) if class == owl::CLASS || class == owl::RESTRICTION => {
                anonymous.insert(b.as_str());
            }
            _ => {}
        }
    }

    for p in [rdfs::SUB_CLASS_OF, owl::EQUIVALENT_CLASS, owl::DISJOINT_WITH] {
        for t in g.with_predicate(p) {
            for term in [&t.subject, &t.object] {
                match term {
                    Term::Iri(i) => {
                        sig.classes.insert(i.clone());
                    }
                    Term::BlankNode(b) => {
                        anonymous.insert(b.as_str());
                    }
                    Term::Literal(_) => {}
                }
            }
        }
    }

    for t in g.with_predicate(owl::INVERSE_OF) {
        for term in [&t.subject, &t.object] {
            if let Term::Iri(i) = term {
                sig.object_properties.insert(i.clone());
            }
        }
    }

    // Sub-property axioms inherit the kind of whichever side is already known.
    let sub_props: Vec<(&str, &str)> = g
        .with_predicate(rdfs::SUB_PROPERTY_OF)
        .chain(g.with_predicate(owl::EQUIVALENT_PROPERTY))
        .filter_map(|t| Some((t.subject.as_iri()?, t.object.as_iri()?)))
        .collect();
    loop {
        let mut changed = false;
        for &(a, b) in &sub_props {
            for set in [&mut sig.object_properties, &mut sig.data_properties] {
                if set.contains(a) && !set.contains(b) && countable(b) {
                    set.insert(b.to_string());
                    changed = true;
                } else if set.contains(b) && !set.contains(a) && countable(a) {
                    set.insert(a.to_string());
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    for t in g.with_predicate(owl::IMPORTS) {
        if let Some(i) = t.object.as_iri() {
            sig.declared_imports.insert(i.to_string());
        }
    }

    sig.classes.retain(|i| countable(i));
    sig.object_properties.retain(|i| countable(i));
    sig.data_properties.retain(|i| countable(i));

    for iri in sig.classes.iter().chain(&sig.object_properties).chain(&sig.data_properties) {
        let n = usize::from(sig.classes.contains(iri))
            + usize::from(sig.object_properties.contains(iri))
            + usize::from(sig.data_properties.contains(iri));
        if n > 1 {
            sig.punned.insert(iri.clone());
        }
    }
    sig.anonymous_class_expressions = anonymous.len();
    sig.local_namespaces = local_namespaces_with(g, sig.ontology_iri.as_deref());
    sig
}

/// Namespaces treated as local to the document: the ontology IRI's namespace
/// (with `#` and `/` separators), the empty-prefix namespace and the base.
pub fn local_namespaces(g: &Graph) -> BTreeSet<String> {
    let ontology = g
        .with_predicate(rdf::TYPE)
        .filter(|t| t.object.as_iri() == Some(owl::ONTOLOGY))
        .filter_map(|t| t.subject.as_iri())
        .min();
    local_namespaces_with(g, ontology)
}

fn local_namespaces_with(g: &Graph, ontology: Option<&str>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    if let Some(o) = ontology {
        if o.ends_with('#') || o.ends_with('/') {
            out.insert(o.to_string());
        } else {
            out.insert(format!("{o}#"));
            out.insert(format!("{o}/"));
        }
    }
    if let Some(ns) = g.prefix("") {
        out.insert(ns.to_string());
    }
    if let Some(b) = g.base() {
        out.insert(b.to_string());
    }
    out.retain(|ns| !ns.is_empty());
    out
}

/// The default annotation properties whose values count as labels.
pub fn default_label_properties() -> Vec<String> {
    vec![rdfs::LABEL.to_string(), skos::PREF_LABEL.to_string(), skos::ALT_LABEL.to_string()]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRow {
    pub property: String,
    pub value: Term,
    pub language: LabelLanguage,
    /// For IRI values: whether the IRI lies in a local namespace.
    pub local_value: Option<bool>,
}

/// Raw inventory of annotation values per signature entity; duplicates across
/// properties are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotationInventory {
    pub rows: BTreeMap<String, Vec<AnnotationRow>>,
}

impl AnnotationInventory {
    pub fn rows_for(&self, entity: &str) -> &[AnnotationRow] {
        self.rows.get(entity).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.rows.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &AnnotationRow)> {
        self.rows.iter().flat_map(|(e, rows)| rows.iter().map(move |r| (e.as_str(), r)))
    }
}

pub fn collect_annotations(g: &Graph, sig: &OntologySignature, properties: &[String]) -> AnnotationInventory {
    let mut inv = AnnotationInventory::default();
    for p in properties {
        for t in g.with_predicate(p) {
            let Some(subject) = t.subject.as_iri() else { continue };
            if !sig.contains(subject) {
                continue;
            }
            let (language, local_value) = match &t.object {
                Term::Literal(l) => match l.language() {
                    Some(tag) => (LabelLanguage::Tagged(parse_tag(tag)), None),
                    None => (LabelLanguage::Untagged, None),
                },
                Term::Iri(i) => (LabelLanguage::NotApplicable, Some(sig.is_local(i))),
                Term::BlankNode(_) => (LabelLanguage::NotApplicable, Some(false)),
            };
            inv.rows.entry(subject.to_string()).or_default().push(AnnotationRow {
                property: p.clone(),
                value: t.object.clone(),
                language,
                local_value,
            });
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_str, RdfFormat, Triple};

    const LISTING_1: &str = r#"@prefix : <http://ex.org/o#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
:Person rdfs:subClassOf owl:Thing .
:Person rdfs:label "Person"@en .
:Person rdfs:label "Persoon"@nl .
"#;

    #[test]
    fn listing_one_signature_and_labels() {
        let g = parse_str(LISTING_1, RdfFormat::Turtle).unwrap();
        let sig = extract_signature(&g);
        assert_eq!(sig.classes.iter().collect::<Vec<_>>(), ["http://ex.org/o#Person"]);
        assert!(sig.object_properties.is_empty() && sig.data_properties.is_empty());
        let inv = collect_annotations(&g, &sig, &default_label_properties());
        let rows = inv.rows_for("http://ex.org/o#Person");
        let langs: BTreeSet<String> = rows.iter().map(|r| r.language.to_string()).collect();
        assert_eq!(langs, ["en", "nl"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn equivalence_operands_are_classes() {
        let g = parse_str(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .
             <http://a.org/Person> owl:equivalentClass <http://b.org/Persoon> .
             <http://b.org/Persoon> owl:equivalentClass <http://c.org/Umntu> .",
            RdfFormat::Turtle,
        )
        .unwrap();
        assert_eq!(extract_signature(&g).classes.len(), 3);
    }

    #[test]
    fn properties_and_punning() {
        let g = parse_str(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
             @prefix : <http://ex.org/> .
             :p a owl:ObjectProperty . :q owl:inverseOf :p . :r rdfs:subPropertyOf :q .
             :d a owl:DatatypeProperty . :d2 rdfs:subPropertyOf :d .
             :X a owl:Class , owl:ObjectProperty .
             :ap a owl:AnnotationProperty .
             :A rdfs:subClassOf [ a owl:Restriction ; owl:onProperty :p ] .",
            RdfFormat::Turtle,
        )
        .unwrap();
        let sig = extract_signature(&g);
        assert_eq!(sig.object_properties.len(), 4);
        assert_eq!(sig.data_properties.len(), 2);
        assert!(sig.punned.contains("http://ex.org/X"));
        assert!(!sig.contains("http://ex.org/ap"));
        assert_eq!(sig.anonymous_class_expressions, 1);
        assert!(sig.classes.contains("http://ex.org/A"));
    }

    #[test]
    fn reserved_vocabulary_is_excluded() {
        let g = parse_str(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
             <http://ex.org/A> rdfs:subClassOf owl:Thing , rdfs:Resource .
             owl:Nothing rdfs:subClassOf <http://ex.org/A> .",
            RdfFormat::Turtle,
        )
        .unwrap();
        let sig = extract_signature(&g);
        assert_eq!(sig.classes.len(), 1);
    }

    #[test]
    fn imports_are_recorded_only() {
        let base = parse_str(LISTING_1, RdfFormat::Turtle).unwrap();
        let mut triples = base.triples().to_vec();
        triples.push(Triple::new(
            Term::iri("http://ex.org/o"),
            owl::IMPORTS,
            Term::iri("http://other.org/big"),
        ));
        let g = Graph::from_triples(triples);
        let a = extract_signature(&base);
        let b = extract_signature(&g);
        assert_eq!(a.classes, b.classes);
        assert_eq!(b.declared_imports.len(), 1);
    }

    #[test]
    fn locality_rules() {
        let g = parse_str("@base <http://ex.org/o#> . <#a> <#p> <#b> .", RdfFormat::Turtle).unwrap();
        assert_eq!(local_namespaces(&g), ["http://ex.org/o#".to_string()].into());
        let g = parse_str(
            "<http://ex.org/onto> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#Ontology> .",
            RdfFormat::NTriples,
        )
        .unwrap();
        assert_eq!(
            local_namespaces(&g),
            ["http://ex.org/onto#".to_string(), "http://ex.org/onto/".to_string()].into()
        );
    }

    #[test]
    fn duplicate_labels_across_properties_are_kept() {
        let g = parse_str(
            "@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
             @prefix owl: <http://www.w3.org/2002/07/owl#> .
             <http://ex.org/A> a owl:Class ; skos:prefLabel \"x\"@en ; rdfs:label \"x\"@en .",
            RdfFormat::Turtle,
        )
        .unwrap();
        let sig = extract_signature(&g);
        let inv = collect_annotations(&g, &sig, &default_label_properties());
        let rows = inv.rows_for("http://ex.org/A");
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].language, rows[1].language);
    }
}
