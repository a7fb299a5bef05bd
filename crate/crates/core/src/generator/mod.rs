//! Deterministic reference ontologies for each multilingual modelling variant,
//! with a manifest of the metric values they must produce.

mod words;

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::detect::{Family, Variant, SYNTHETIC_ILI_NAMESPACE};
use crate::lang::{parse_tag, LanguageTag};
use crate::metrics::required_mapping_count;
use crate::rdf::{iri, to_ntriples, Graph, Term, Triple};
use crate::vocab::{dcterms, ontolex, owl, rdf, rdfs, skos, LEXVO};

pub use words::WORDS;

pub const DEFAULT_BASE_IRI: &str = "http://example.org/onto/";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenerateError {
    #[error("invalid spec: {field}: {message}")]
    InvalidSpec { field: String, message: String },
}

fn invalid(field: &str, message: impl Into<String>) -> GenerateError {
    GenerateError::InvalidSpec { field: field.to_string(), message: message.into() }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelProperty {
    #[default]
    RdfsLabel,
    SkosPrefLabel,
}

impl LabelProperty {
    fn iri(self) -> &'static str {
        match self {
            LabelProperty::RdfsLabel => rdfs::LABEL,
            LabelProperty::SkosPrefLabel => skos::PREF_LABEL,
        }
    }
}

fn default_base() -> String {
    DEFAULT_BASE_IRI.to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct GenerationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub variant: Variant,
    pub languages: Vec<LanguageTag>,
    #[serde(default)]
    pub class_count: usize,
    #[serde(default)]
    pub object_property_count: usize,
    #[serde(default)]
    pub data_property_count: usize,
    /// Fraction of entities labeled per language; languages not listed are fully labeled.
    #[serde(default)]
    pub completeness: BTreeMap<LanguageTag, f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_base")]
    pub base_iri: String,
    /// Mapping-tbox only: one n-ary equivalence per entity instead of all pairs.
    #[serde(default)]
    pub nary: bool,
    #[serde(default)]
    pub label_property: LabelProperty,
}

impl GenerationSpec {
    pub fn new(variant: Variant, languages: &[&str], counts: (usize, usize, usize)) -> Self {
        GenerationSpec {
            name: None,
            variant,
            languages: languages.iter().map(|l| parse_tag(l)).collect(),
            class_count: counts.0,
            object_property_count: counts.1,
            data_property_count: counts.2,
            completeness: BTreeMap::new(),
            seed: 0,
            base_iri: default_base(),
            nary: false,
            label_property: LabelProperty::RdfsLabel,
        }
    }

    pub fn with_completeness(mut self, lang: &str, fraction: f64) -> Self {
        self.completeness.insert(parse_tag(lang), fraction);
        self
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn corpus_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.variant.name().to_string())
    }

    fn entities_per_ontology(&self) -> usize {
        self.class_count + self.object_property_count + self.data_property_count
    }

    fn fraction(&self, lang: &LanguageTag) -> f64 {
        self.completeness.get(lang).copied().unwrap_or(1.0)
    }

    /// Labeled entities for `lang` within one ontology of `size` entities.
    fn labeled_count(&self, lang: &LanguageTag, size: usize) -> usize {
        ((self.fraction(lang) * size as f64 - 1e-9).ceil().max(0.0) as usize).min(size)
    }

    pub fn validate(&self) -> Result<(), GenerateError> {
        if self.variant == Variant::Undetermined {
            return Err(invalid("variant", "must be one of the nine modelling variants"));
        }
        if self.languages.is_empty() {
            return Err(invalid("languages", "at least one language is required"));
        }
        let mut seen = HashSet::new();
        for l in &self.languages {
            if !l.is_well_formed() {
                return Err(invalid("languages", format!("`{l}` is not a well-formed language tag")));
            }
            if !seen.insert(l.clone()) {
                return Err(invalid("languages", format!("`{l}` listed twice")));
            }
        }
        for (l, f) in &self.completeness {
            if !self.languages.contains(l) {
                return Err(invalid("completeness", format!("`{l}` is not in languages")));
            }
            if !(0.0..=1.0).contains(f) {
                return Err(invalid("completeness", format!("`{l}` must be within [0, 1]")));
            }
        }
        if !iri::is_absolute(&self.base_iri) || !(self.base_iri.ends_with('/') || self.base_iri.ends_with('#')) {
            return Err(invalid("base-iri", "must be an absolute IRI ending in `/` or `#`"));
        }
        let size = self.entities_per_ontology();
        if size == 0 {
            return Err(invalid("class-count", "at least one entity is required"));
        }
        let n = self.languages.len();
        let family = self.variant.family();
        if family != Family::Labels && n < 2 {
            return Err(invalid("languages", format!("{} needs at least two languages", self.variant)));
        }
        let counts: Vec<usize> = self.languages.iter().map(|l| self.labeled_count(l, size)).collect();
        match self.variant {
            Variant::LabelsLanguageIndependent => {
                if let Some(l) = self.languages.iter().find(|l| self.labeled_count(l, size) < size) {
                    return Err(invalid("completeness", format!("labels-O_LI labels every entity in every language; `{l}` is partial")));
                }
            }
            Variant::LabelsPrimaryDescriptive | Variant::LabelsPrimaryOpaque => {
                if self.variant == Variant::LabelsPrimaryOpaque && n < 2 {
                    return Err(invalid("languages", "labels-O_PLO needs at least two languages"));
                }
                // The first language must lead every other by more than one percentage point.
                if counts[1..].iter().any(|&c| (counts[0] - c.min(counts[0])) * 100 <= size) {
                    return Err(invalid(
                        "completeness",
                        "the first language must exceed every other language by more than one percentage point",
                    ));
                }
            }
            Variant::LinguisticEntries | Variant::LinguisticSenses if counts.iter().all(|&c| c == 0) => {
                return Err(invalid("completeness", "linguistic variants need at least one labeled entity"));
            }
            _ => {}
        }
        if self.nary && self.variant != Variant::MappingTbox {
            return Err(invalid("nary", "only applies to mapping-tbox"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Manifest {
    pub kind: String,
    pub name: String,
    pub variant: Variant,
    pub family: Family,
    pub seed: u64,
    pub languages: Vec<LanguageTag>,
    pub expected_cov: u64,
    pub expected_classes: u64,
    pub expected_object_properties: u64,
    pub expected_data_properties: u64,
    pub expected_labeled_entities: BTreeMap<LanguageTag, u64>,
    pub expected_lcom: BTreeMap<LanguageTag, f64>,
    pub ontology_files: Vec<String>,
    pub lexicon_files: Vec<String>,
    pub axiom_counts: BTreeMap<String, usize>,
}

impl Manifest {
    pub fn files(&self) -> impl Iterator<Item = &String> {
        self.ontology_files.iter().chain(&self.lexicon_files)
    }

    pub fn read(dir: &Path) -> io::Result<Manifest> {
        let text = fs::read_to_string(dir.join(MANIFEST_FILE))?;
        serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedCorpus {
    pub ontology_documents: Vec<(String, Graph)>,
    pub lexicon_documents: Vec<(String, Graph)>,
    pub manifest: Manifest,
}

impl GeneratedCorpus {
    pub fn documents(&self) -> impl Iterator<Item = &(String, Graph)> {
        self.ontology_documents.iter().chain(&self.lexicon_documents)
    }

    /// All documents merged into one graph, as an audit of the corpus sees them.
    pub fn merged(&self) -> Graph {
        Graph::merge(self.documents().map(|(_, g)| g))
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Class,
    ObjectProperty,
    DataProperty,
}

struct Entity {
    kind: Kind,
    local: String,
    phrase: String,
}

fn camel(words: &[&str], upper_first: bool) -> String {
    let mut out = String::new();
    for (i, w) in words.iter().enumerate() {
        let mut cs = w.chars();
        if let Some(c) = cs.next() {
            if i > 0 || upper_first {
                out.extend(c.to_uppercase());
            } else {
                out.push(c);
            }
            out.extend(cs);
        }
    }
    out
}

fn entities(spec: &GenerationSpec, rng: &mut ChaCha8Rng) -> Vec<Entity> {
    let descriptive = spec.variant == Variant::LabelsPrimaryDescriptive;
    let mut used = HashSet::new();
    let mut out = Vec::new();
    let kinds = std::iter::repeat_n(Kind::Class, spec.class_count)
        .chain(std::iter::repeat_n(Kind::ObjectProperty, spec.object_property_count))
        .chain(std::iter::repeat_n(Kind::DataProperty, spec.data_property_count));
    for kind in kinds {
        loop {
            let len = rng.gen_range(1..=3);
            let mut ws: Vec<&str> = (0..len).map(|_| *WORDS.choose(rng).unwrap()).collect();
            match kind {
                Kind::Class => {}
                Kind::ObjectProperty => ws.insert(0, "has"),
                Kind::DataProperty => ws.push("value"),
            }
            let local = if descriptive {
                camel(&ws, kind == Kind::Class)
            } else {
                let digits = rng.gen_range(100..1000);
                let upper = (b'A' + rng.gen_range(0..26u8)) as char;
                let lower = (b'a' + rng.gen_range(0..26u8)) as char;
                format!("{digits}{upper}{lower}")
            };
            if used.insert(local.clone()) {
                out.push(Entity { kind, local, phrase: ws.join(" ") });
                break;
            }
        }
    }
    out
}

fn lang_segment(l: &LanguageTag) -> String {
    l.as_str().to_ascii_lowercase()
}

fn label_text(e: &Entity, lang: &LanguageTag, first: bool) -> String {
    if first {
        e.phrase.clone()
    } else {
        format!("{} ({})", e.phrase, lang)
    }
}

fn iri(s: String) -> Term {
    Term::Iri(s)
}

fn lang_lit(text: String, lang: &LanguageTag) -> Term {
    Term::Literal(crate::rdf::Literal::lang(&text, lang.as_str()))
}

struct Builder<'a> {
    spec: &'a GenerationSpec,
    entities: Vec<Entity>,
    counts: BTreeMap<String, usize>,
}

impl Builder<'_> {
    fn bump(&mut self, key: &str, n: usize) {
        *self.counts.entry(key.to_string()).or_insert(0) += n;
    }

    /// Declarations and structural axioms for one ontology in namespace `ns`.
    fn ontology(&mut self, ns: &str, out: &mut Vec<Triple>) {
        let onto = ns.trim_end_matches(['/', '#']).to_string();
        out.push(Triple::new(iri(onto), rdf::TYPE, iri(owl::ONTOLOGY.into())));
        let mut decl = 0;
        let mut sub = 0;
        for e in &self.entities {
            let id = iri(format!("{ns}{}", e.local));
            let ty = match e.kind {
                Kind::Class => owl::CLASS,
                Kind::ObjectProperty => owl::OBJECT_PROPERTY,
                Kind::DataProperty => owl::DATATYPE_PROPERTY,
            };
            out.push(Triple::new(id.clone(), rdf::TYPE, iri(ty.into())));
            decl += 1;
            if e.kind == Kind::Class {
                out.push(Triple::new(id, rdfs::SUB_CLASS_OF, iri(owl::THING.into())));
                sub += 1;
            }
        }
        self.bump("declarations", decl);
        self.bump("subclass-axioms", sub);
    }

    /// Label assertions for the first `count` entities in `lang`.
    fn labels(&mut self, ns: &str, lang: &LanguageTag, first: bool, count: usize, out: &mut Vec<Triple>) {
        let p = self.spec.label_property.iri();
        for e in self.entities.iter().take(count) {
            out.push(Triple::new(iri(format!("{ns}{}", e.local)), p, lang_lit(label_text(e, lang, first), lang)));
        }
        self.bump("label-assertions", count);
    }
}

pub fn generate(spec: &GenerationSpec) -> Result<GeneratedCorpus, GenerateError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let ents = entities(spec, &mut rng);
    let size = ents.len();
    let mut b = Builder { spec, entities: ents, counts: BTreeMap::new() };
    let base = spec.base_iri.as_str();
    let langs = &spec.languages;
    let n = langs.len();
    let mut ontology_documents = Vec::new();
    let mut lexicon_documents = Vec::new();
    let mut labeled: BTreeMap<LanguageTag, u64> = BTreeMap::new();

    let family = spec.variant.family();
    if family != Family::MappingModel {
        let mut onto = Vec::new();
        b.ontology(base, &mut onto);
        for (i, l) in langs.iter().enumerate() {
            let c = spec.labeled_count(l, size);
            b.labels(base, l, i == 0, c, &mut onto);
            labeled.insert(l.clone(), c as u64);
        }
        if family == Family::LinguisticModel {
            let senses = spec.variant == Variant::LinguisticSenses;
            for (i, l) in langs.iter().enumerate() {
                let seg = lang_segment(l);
                let mut lex = Vec::new();
                let c = spec.labeled_count(l, size);
                for e in b.entities.iter().take(c) {
                    let entity = iri(format!("{base}{}", e.local));
                    let entry = format!("{base}{seg}/lexicalEntry_{}", e.local);
                    let form = format!("{base}{seg}/lexicalEntry_form_{}", e.local);
                    let text = label_text(e, l, i == 0);
                    lex.push(Triple::new(iri(entry.clone()), rdf::TYPE, iri(ontolex::LEXICAL_ENTRY.into())));
                    lex.push(Triple::new(iri(entry.clone()), dcterms::LANGUAGE, iri(format!("{LEXVO}{}", l.language()))));
                    lex.push(Triple::new(iri(entry.clone()), rdfs::LABEL, lang_lit(text.clone(), l)));
                    lex.push(Triple::new(iri(entry.clone()), ontolex::CANONICAL_FORM, iri(form.clone())));
                    lex.push(Triple::new(iri(form.clone()), rdf::TYPE, iri(ontolex::FORM.into())));
                    lex.push(Triple::new(iri(form), ontolex::WRITTEN_REP, lang_lit(text.to_lowercase(), l)));
                    if senses {
                        let sense = format!("{entry}_sense1");
                        lex.push(Triple::new(iri(entry), ontolex::SENSE, iri(sense.clone())));
                        lex.push(Triple::new(iri(sense.clone()), rdf::TYPE, iri(ontolex::LEXICAL_SENSE.into())));
                        lex.push(Triple::new(iri(sense), ontolex::REFERENCE, entity));
                    } else {
                        onto.push(Triple::new(entity, ontolex::IS_DENOTED_BY, iri(entry)));
                    }
                }
                b.bump("lexical-entries", c);
                b.bump("forms", c);
                b.bump(if senses { "lexical-senses" } else { "denotation-links" }, c);
                lexicon_documents.push((format!("lexicon-{seg}"), Graph::from_triples(lex)));
            }
        }
        ontology_documents.insert(0, ("ontology".to_string(), Graph::from_triples(onto)));
    } else {
        let ns_of = |l: &LanguageTag| format!("{base}{}/", lang_segment(l));
        let annotation = spec.variant == Variant::MappingAnnotation;
        let lexical_concepts = spec.variant == Variant::MappingLexicalConcepts;
        for l in langs {
            let ns = ns_of(l);
            let mut onto = Vec::new();
            b.ontology(&ns, &mut onto);
            let c = spec.labeled_count(l, size);
            b.labels(&ns, l, true, c, &mut onto);
            labeled.insert(l.clone(), c as u64);
            if annotation {
                for e in &b.entities {
                    onto.push(Triple::new(iri(format!("{ns}{}", e.local)), rdfs::LABEL, iri(format!("{ns}label/{}", e.local))));
                }
                b.bump("iri-label-assertions", size);
            }
            if lexical_concepts {
                for (k, e) in b.entities.iter().enumerate() {
                    onto.push(Triple::new(
                        iri(format!("{ns}{}", e.local)),
                        ontolex::CONCEPT,
                        iri(format!("{base}lexicalConcepts/{:09}", k + 1)),
                    ));
                }
                b.bump("concept-links", size);
            }
            ontology_documents.push((format!("ontology-{}", lang_segment(l)), Graph::from_triples(onto)));
        }
        let mut bridge = Vec::new();
        let pairs = || (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
        match spec.variant {
            Variant::MappingTbox => {
                for e in &b.entities {
                    let p = if e.kind == Kind::Class { owl::EQUIVALENT_CLASS } else { owl::EQUIVALENT_PROPERTY };
                    let at = |i: usize| iri(format!("{}{}", ns_of(&langs[i]), e.local));
                    if spec.nary {
                        for i in 1..n {
                            bridge.push(Triple::new(at(i - 1), p, at(i)));
                        }
                    } else {
                        for (i, j) in pairs() {
                            bridge.push(Triple::new(at(i), p, at(j)));
                        }
                    }
                }
                let per = if spec.nary { 1 } else { required_mapping_count(n as u64) as usize };
                b.bump("mapping-axioms", per * size);
            }
            Variant::MappingAnnotation => {
                for e in &b.entities {
                    for (i, j) in pairs() {
                        bridge.push(Triple::new(
                            iri(format!("{}label/{}", ns_of(&langs[i]), e.local)),
                            owl::SAME_AS,
                            iri(format!("{}label/{}", ns_of(&langs[j]), e.local)),
                        ));
                    }
                }
                b.bump("mapping-axioms", required_mapping_count(n as u64) as usize * size);
            }
            Variant::MappingIli => {
                for (k, e) in b.entities.iter().enumerate() {
                    for l in langs {
                        let synset = format!("{base}wn/{}/synset-{:06}", lang_segment(l), k + 1);
                        bridge.push(Triple::new(iri(format!("{}{}", ns_of(l), e.local)), ontolex::CONCEPT, iri(synset.clone())));
                        bridge.push(Triple::new(iri(synset), owl::SAME_AS, iri(format!("{SYNTHETIC_ILI_NAMESPACE}i{}", k + 1))));
                    }
                }
                b.bump("concept-links", n * size);
                b.bump("ili-links", n * size);
            }
            Variant::MappingLexicalConcepts => {
                for (k, e) in b.entities.iter().enumerate() {
                    let hub = iri(format!("{base}lexicalConcepts/{:09}", k + 1));
                    bridge.push(Triple::new(hub.clone(), rdf::TYPE, iri(ontolex::LEXICAL_CONCEPT.into())));
                    for l in langs {
                        let entry = format!("{base}{}/lexicalEntry_{}", lang_segment(l), e.local);
                        bridge.push(Triple::new(hub.clone(), ontolex::LEXICALIZED_SENSE, iri(format!("{entry}_sense1"))));
                        bridge.push(Triple::new(hub.clone(), ontolex::IS_EVOKED_BY, iri(entry)));
                    }
                }
                b.bump("lexical-concepts", size);
            }
            _ => unreachable!("mapping family"),
        }
        let bridge_name = if lexical_concepts { "lexical-concepts" } else { "bridge" };
        ontology_documents.push((bridge_name.to_string(), Graph::from_triples(bridge)));
    }

    let copies = if family == Family::MappingModel { n } else { 1 };
    let cov = (size * copies) as u64;
    let expected_lcom = labeled.iter().map(|(l, &c)| (l.clone(), 100.0 * c as f64 / cov as f64)).collect();
    let triples: usize = ontology_documents.iter().chain(&lexicon_documents).map(|(_, g)| g.len()).sum();
    b.bump("triples", triples);
    let manifest = Manifest {
        kind: "generation-manifest".into(),
        name: spec.corpus_name(),
        variant: spec.variant,
        family,
        seed: spec.seed,
        languages: langs.clone(),
        expected_cov: cov,
        expected_classes: (spec.class_count * copies) as u64,
        expected_object_properties: (spec.object_property_count * copies) as u64,
        expected_data_properties: (spec.data_property_count * copies) as u64,
        expected_labeled_entities: labeled,
        expected_lcom,
        ontology_files: ontology_documents.iter().map(|(n, _)| format!("{n}.nt")).collect(),
        lexicon_files: lexicon_documents.iter().map(|(n, _)| format!("{n}.nt")).collect(),
        axiom_counts: b.counts,
    };
    Ok(GeneratedCorpus { ontology_documents, lexicon_documents, manifest })
}

/// Writes one `.nt` file per document plus the manifest; returns the paths written.
pub fn emit_ntriples(corpus: &GeneratedCorpus, dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for (name, g) in corpus.documents() {
        let path = dir.join(format!("{name}.nt"));
        fs::write(&path, to_ntriples(g))?;
        paths.push(path);
    }
    let path = dir.join(MANIFEST_FILE);
    let mut json = serde_json::to_string_pretty(&corpus.manifest).map_err(io::Error::other)?;
    json.push('\n');
    fs::write(&path, json)?;
    paths.push(path);
    Ok(paths)
}

/// Example 1: 50 classes, 10 object properties, 5 data properties; English on
/// classes and object properties, French on classes, German on 30 classes.
pub fn example_one_spec() -> GenerationSpec {
    GenerationSpec::new(Variant::LabelsPrimaryDescriptive, &["en", "fr", "de"], (50, 10, 5))
        .with_completeness("en", 60.0 / 65.0)
        .with_completeness("fr", 50.0 / 65.0)
        .with_completeness("de", 30.0 / 65.0)
        .named("example-1")
}

/// One reference spec per modelling variant.
pub fn reference_specs() -> Vec<GenerationSpec> {
    let three = ["en", "nl", "zu"];
    Variant::ALL
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut s = GenerationSpec::new(v, &three, (12, 4, 2));
            s.seed = 1000 + i as u64;
            match v {
                Variant::LabelsPrimaryDescriptive | Variant::LabelsPrimaryOpaque => {
                    s = s.with_completeness("nl", 0.5).with_completeness("zu", 0.25);
                }
                Variant::LinguisticEntries | Variant::LinguisticSenses => {
                    s = s.with_completeness("zu", 0.5);
                }
                _ => {}
            }
            s.named(v.name())
        })
        .collect()
}

/// Small lexicon showing inflected alternatives as fixed extra forms: a Spanish
/// gender pair and an isiZulu singular/plural pair.
pub fn inflection_showcase(base_iri: &str) -> Graph {
    let mut t = Vec::new();
    for (lang, lemma, other) in [("es", "profesor", "profesora"), ("zu", "umuntu", "abantu")] {
        let tag = parse_tag(lang);
        let entry = format!("{base_iri}{lang}/lexicalEntry_{lemma}");
        let canonical = format!("{entry}_form");
        let alternate = format!("{entry}_form_{other}");
        t.push(Triple::new(iri(entry.clone()), rdf::TYPE, iri(ontolex::LEXICAL_ENTRY.into())));
        t.push(Triple::new(iri(entry.clone()), dcterms::LANGUAGE, iri(format!("{LEXVO}{lang}"))));
        t.push(Triple::new(iri(entry.clone()), ontolex::CANONICAL_FORM, iri(canonical.clone())));
        t.push(Triple::new(iri(entry), "http://www.w3.org/ns/lemon/ontolex#otherForm", iri(alternate.clone())));
        for (form, rep) in [(canonical, lemma), (alternate, other)] {
            t.push(Triple::new(iri(form.clone()), rdf::TYPE, iri(ontolex::FORM.into())));
            t.push(Triple::new(iri(form), ontolex::WRITTEN_REP, lang_lit(rep.to_string(), &tag)));
        }
    }
    Graph::from_triples(t)
}

/// Reads a single spec or a batch (`{"specs": [...]}` or a bare array) from
/// JSON or TOML text. Errors name the offending field.
pub fn parse_specs(text: &str) -> Result<Vec<GenerationSpec>, GenerateError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Batch {
        specs: Vec<GenerationSpec>,
    }
    fn from_de<'de, D: serde::Deserializer<'de>>(d: D, is_batch: bool) -> Result<Vec<GenerationSpec>, GenerateError>
    where
        D::Error: std::fmt::Display,
    {
        let wrap = |e: serde_path_to_error::Error<D::Error>| {
            let path = e.path().to_string();
            invalid(if path == "." { "spec" } else { &path }, e.inner().to_string())
        };
        if is_batch {
            serde_path_to_error::deserialize::<_, Batch>(d).map(|b| b.specs).map_err(wrap)
        } else {
            serde_path_to_error::deserialize::<_, GenerationSpec>(d).map(|s| vec![s]).map_err(wrap)
        }
    }
    let (specs, batch) = match serde_json::from_str::<serde_json::Value>(text) {
        Ok(value @ serde_json::Value::Array(_)) => (from_de(serde_json::json!({ "specs": value }), true)?, true),
        Ok(value) => {
            let batch = value.get("specs").is_some();
            (from_de(value, batch)?, batch)
        }
        Err(json_err) => {
            let value: toml::Value = toml::from_str(text).map_err(|e| {
                let msg = if text.trim_start().starts_with('{') { json_err.to_string() } else { e.to_string() };
                invalid("spec", msg)
            })?;
            let batch = value.get("specs").is_some();
            (from_de(value, batch)?, batch)
        }
    };
    for (i, s) in specs.iter().enumerate() {
        s.validate().map_err(|GenerateError::InvalidSpec { field, message }| {
            if batch {
                invalid(&format!("specs[{i}].{field}"), message)
            } else {
                invalid(&field, message)
            }
        })?;
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_one_manifest() {
        let c = generate(&example_one_spec()).unwrap();
        let m = &c.manifest;
        assert_eq!(m.expected_cov, 65);
        let counts: Vec<u64> = ["en", "fr", "de"].iter().map(|l| m.expected_labeled_entities[&parse_tag(l)]).collect();
        assert_eq!(counts, [60, 50, 30]);
        assert_eq!(c.ontology_documents.len(), 1);
        assert!(c.lexicon_documents.is_empty());
    }

    #[test]
    fn listing_one_shape() {
        let spec = GenerationSpec::new(Variant::LabelsLanguageIndependent, &["en", "nl"], (1, 0, 0));
        let c = generate(&spec).unwrap();
        let g = &c.ontology_documents[0].1;
        assert_eq!(g.with_predicate(rdfs::SUB_CLASS_OF).count(), 1);
        assert_eq!(g.with_predicate(rdfs::LABEL).count(), 2);
    }

    #[test]
    fn file_counts_follow_family() {
        let files = |v, langs: &[&str]| {
            let c = generate(&GenerationSpec::new(v, langs, (2, 1, 1))).unwrap();
            c.manifest.files().count()
        };
        assert_eq!(files(Variant::LabelsLanguageIndependent, &["en", "nl"]), 1);
        assert_eq!(files(Variant::LinguisticEntries, &["en", "nl"]), 3);
        assert_eq!(files(Variant::MappingTbox, &["en", "nl"]), 3);
    }

    #[test]
    fn tbox_pairwise_and_nary() {
        let mut spec = GenerationSpec::new(Variant::MappingTbox, &["en", "nl", "zu"], (1, 0, 0));
        let c = generate(&spec).unwrap();
        let bridge = &c.ontology_documents.last().unwrap().1;
        assert_eq!(bridge.with_predicate(owl::EQUIVALENT_CLASS).count(), 3);
        spec.nary = true;
        let c = generate(&spec).unwrap();
        assert_eq!(c.manifest.axiom_counts["mapping-axioms"], 1);
    }

    #[test]
    fn deterministic_for_equal_seeds() {
        for spec in reference_specs() {
            let a = generate(&spec).unwrap();
            let b = generate(&spec).unwrap();
            for ((_, x), (_, y)) in a.documents().zip(b.documents()) {
                assert_eq!(to_ntriples(x), to_ntriples(y));
            }
        }
    }

    #[test]
    fn invalid_specs_name_the_field() {
        let err = parse_specs(r#"{"variant": "labels-O_XX", "languages": ["en"], "class-count": 1}"#).unwrap_err();
        assert!(matches!(&err, GenerateError::InvalidSpec { field, .. } if field == "variant"), "{err}");
        let err = parse_specs(r#"{"variant": "labels-O_LI", "languages": ["en"], "class-count": 1, "colour": 1}"#).unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
        let err = parse_specs(r#"{"variant": "labels-O_LI", "languages": ["en"], "class-count": 2, "completeness": {"en": 0.5}}"#).unwrap_err();
        assert!(matches!(&err, GenerateError::InvalidSpec { field, .. } if field == "completeness"));
        let err = parse_specs(r#"{"specs": [{"variant": "mapping-ili", "languages": ["en"], "class-count": 1}]}"#).unwrap_err();
        assert!(matches!(&err, GenerateError::InvalidSpec { field, .. } if field == "specs[0].languages"), "{err}");
    }

    #[test]
    fn toml_and_json_batches() {
        let toml = "[[specs]]\nvariant = \"mapping-tbox\"\nlanguages = [\"en\", \"nl\"]\nclass-count = 2\n";
        assert_eq!(parse_specs(toml).unwrap().len(), 1);
        let json = r#"[{"variant": "O_LI", "languages": ["en"], "class-count": 1}]"#;
        assert_eq!(parse_specs(json).unwrap()[0].variant, Variant::LabelsLanguageIndependent);
    }
}
