//! Classification of an ontology's multilingual modelling approach and of
//! entity identifiers as opaque or descriptive.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lang::{LabelLanguage, LanguageTag};
use crate::metrics::{primary_languages, CompletenessProfile, DEFAULT_TIE_EPSILON};
use crate::rdf::{Graph, Term};
use crate::signature::{AnnotationInventory, AnnotationRow, OntologySignature};
use crate::vocab::{self, ontolex, owl, rdf, skos};

/// Namespace IRI of the interlingual index used by generated fixtures.
pub const SYNTHETIC_ILI_NAMESPACE: &str = "https://w3id.org/ontoaudit/synthetic-ili/";

pub const DEFAULT_DOMINANCE: f64 = 0.8;

/// Below this many entities a labels-variant verdict is always flagged for review.
const MIN_ENTITIES_FOR_CONFIDENCE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Labels,
    LinguisticModel,
    MappingModel,
    None,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Labels => "labels",
            Family::LinguisticModel => "linguistic-model",
            Family::MappingModel => "mapping-model",
            Family::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    LabelsLanguageIndependent,
    LabelsPrimaryDescriptive,
    LabelsPrimaryOpaque,
    LinguisticEntries,
    LinguisticSenses,
    MappingTbox,
    MappingAnnotation,
    MappingIli,
    MappingLexicalConcepts,
    Undetermined,
}

impl Variant {
    pub const ALL: [Variant; 9] = [
        Variant::LabelsLanguageIndependent,
        Variant::LabelsPrimaryDescriptive,
        Variant::LabelsPrimaryOpaque,
        Variant::LinguisticEntries,
        Variant::LinguisticSenses,
        Variant::MappingTbox,
        Variant::MappingAnnotation,
        Variant::MappingIli,
        Variant::MappingLexicalConcepts,
    ];

    pub fn family(self) -> Family {
        use Variant::*;
        match self {
            LabelsLanguageIndependent | LabelsPrimaryDescriptive | LabelsPrimaryOpaque => Family::Labels,
            LinguisticEntries | LinguisticSenses => Family::LinguisticModel,
            MappingTbox | MappingAnnotation | MappingIli | MappingLexicalConcepts => Family::MappingModel,
            Undetermined => Family::None,
        }
    }

    pub fn name(self) -> &'static str {
        use Variant::*;
        match self {
            LabelsLanguageIndependent => "labels-O_LI",
            LabelsPrimaryDescriptive => "labels-O_PLD",
            LabelsPrimaryOpaque => "labels-O_PLO",
            LinguisticEntries => "linguistic-entries",
            LinguisticSenses => "linguistic-senses",
            MappingTbox => "mapping-tbox",
            MappingAnnotation => "mapping-annotation",
            MappingIli => "mapping-ili",
            MappingLexicalConcepts => "mapping-lexical-concepts",
            Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Variant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Variant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let short = match key.as_str() {
            "o-li" | "labels-li" => "labels-o-li",
            "o-pld" | "labels-pld" => "labels-o-pld",
            "o-plo" | "labels-plo" => "labels-o-plo",
            other => other,
        };
        Variant::ALL
            .into_iter()
            .chain([Variant::Undetermined])
            .find(|v| v.name().to_ascii_lowercase().replace('_', "-") == short)
            .ok_or_else(|| format!("unknown variant `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproachEvidence {
    pub family: Family,
    pub variant: Variant,
    /// Every family whose search criterion matched, not only the headline one.
    pub matched_families: BTreeSet<Family>,
    pub matched_namespaces: BTreeSet<String>,
    pub matched_predicates: BTreeSet<String>,
    pub needs_human_review: bool,
    pub notes: Vec<String>,
}

impl ApproachEvidence {
    pub fn none() -> Self {
        ApproachEvidence {
            family: Family::None,
            variant: Variant::Undetermined,
            matched_families: BTreeSet::new(),
            matched_namespaces: BTreeSet::new(),
            matched_predicates: BTreeSet::new(),
            needs_human_review: false,
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Opaque,
    Descriptive,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentifierJudgment {
    pub entity: String,
    pub verdict: Verdict,
    pub basis: String,
}

/// Prefix → namespace IRIs of linguistic models whose presence marks the
/// linguistic-model family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Watchlist {
    entries: BTreeMap<String, BTreeSet<String>>,
}

impl Default for Watchlist {
    fn default() -> Self {
        let mut w = Watchlist { entries: BTreeMap::new() };
        for (prefix, ns) in [
            ("ontolex", "http://www.w3.org/ns/lemon/ontolex#"),
            ("ontolex", "http://www.w3.org/ns/lemon/synsem#"),
            ("ontolex", "http://www.w3.org/ns/lemon/decomp#"),
            ("ontolex", "http://www.w3.org/ns/lemon/vartrans#"),
            ("ontolex", "http://www.w3.org/ns/lemon/lime#"),
            ("lemon", "http://lemon-model.net/lemon#"),
            ("lemon", "http://www.monnet-project.eu/lemon#"),
            ("lexinfo", "http://www.lexinfo.net/ontology/2.0/lexinfo#"),
            ("lexinfo", "http://www.lexinfo.net/ontology/3.0/lexinfo#"),
            ("linginfo", "http://www.dfki.de/lt/onto/linginfo.owl#"),
            ("lexonto", "http://www.cimiano.de/ontologies/lexonto.owl#"),
            ("gold", "http://purl.org/linguistics/gold/"),
        ] {
            w.add(prefix, ns);
        }
        w
    }
}

impl Watchlist {
    pub fn empty() -> Self {
        Watchlist { entries: BTreeMap::new() }
    }

    pub fn add(&mut self, prefix: &str, namespace: &str) {
        self.entries.entry(prefix.to_string()).or_default().insert(namespace.to_string());
    }

    /// Parses `prefix iri` lines (also `prefix: iri` or `prefix=iri`); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Watchlist, String> {
        let mut w = Watchlist::empty();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (prefix, iri) = line
                .split_once(|c: char| c == '=' || c.is_whitespace())
                .map(|(p, i)| (p.trim().trim_end_matches(':'), i.trim().trim_start_matches(['=', ':']).trim()))
                .ok_or_else(|| format!("line {}: expected `prefix iri`", n + 1))?;
            let iri = iri.trim_start_matches('<').trim_end_matches('>');
            if prefix.is_empty() || !crate::rdf::iri::is_absolute(iri) {
                return Err(format!("line {}: expected `prefix iri`", n + 1));
            }
            w.add(prefix, iri);
        }
        Ok(w)
    }

    /// Default entries plus those from a watchlist file.
    pub fn with_file(path: &Path) -> Result<Watchlist, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut w = Watchlist::default();
        for (p, set) in Watchlist::parse(&text)?.entries {
            for ns in set {
                w.add(&p, &ns);
            }
        }
        Ok(w)
    }

    pub fn prefix_of(&self, iri: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(_, set)| set.iter().any(|ns| iri.starts_with(ns.as_str())))
            .map(|(p, _)| p.as_str())
    }

    pub fn prefixes(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone)]
pub struct DetectorConfig {
    pub watchlist: Watchlist,
    /// Share of identifiers that must agree (opaque or descriptive) for a labels variant.
    pub dominance: f64,
    pub tie_epsilon: f64,
    pub ili_namespaces: Vec<String>,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            watchlist: Watchlist::default(),
            dominance: DEFAULT_DOMINANCE,
            tie_epsilon: DEFAULT_TIE_EPSILON,
            ili_namespaces: vec![
                SYNTHETIC_ILI_NAMESPACE.to_string(),
                "http://globalwordnet.github.io/ili/".to_string(),
                "http://ili.globalwordnet.org/ili/".to_string(),
            ],
        }
    }
}

const SKOS_MAPPING: [&str; 6] = [
    skos::MAPPING_RELATION,
    skos::EXACT_MATCH,
    skos::CLOSE_MATCH,
    skos::RELATED_MATCH,
    skos::BROAD_MATCH,
    skos::NARROW_MATCH,
];

const HUB_PREDICATES: [&str; 6] = [
    ontolex::CONCEPT,
    ontolex::IS_CONCEPT_OF,
    ontolex::EVOKES,
    ontolex::IS_EVOKED_BY,
    ontolex::LEXICALIZED_SENSE,
    ontolex::IS_LEXICALIZED_SENSE_OF,
];

const SENSE_PREDICATES: [&str; 6] = [
    ontolex::SENSE,
    ontolex::IS_SENSE_OF,
    ontolex::REFERENCE,
    ontolex::IS_REFERENCE_OF,
    "http://lemon-model.net/lemon#sense",
    "http://lemon-model.net/lemon#reference",
];

const ENTRY_PREDICATES: [&str; 2] = [ontolex::IS_DENOTED_BY, ontolex::DENOTES];

/// Raw pattern hits gathered in one pass over the graph.
#[derive(Default)]
struct Scan {
    namespaces: BTreeSet<String>,
    predicates: BTreeSet<String>,
    tagged_labels: bool,
    same_as: bool,
    cross_equivalence: bool,
    skos_mapping: bool,
    ili_same_as: bool,
    hub: bool,
    senses: bool,
    entries: bool,
    annotation_same_as: bool,
    translation_module: bool,
}

fn scan(g: &Graph, inv: &AnnotationInventory, cfg: &DetectorConfig) -> Scan {
    let mut s = Scan::default();
    s.tagged_labels = inv.iter().any(|(_, r)| matches!(r.language, LabelLanguage::Tagged(_)));
    let iri_labels: BTreeSet<&str> = inv.iter().filter_map(|(_, r)| r.value.as_iri()).collect();

    for t in g.triples() {
        let p = t.predicate.as_str();
        let object_iri = t.object.as_iri();
        for iri in [Some(p), object_iri].into_iter().flatten() {
            if let Some(prefix) = cfg.watchlist.prefix_of(iri) {
                s.namespaces.insert(prefix.to_string());
            }
            if iri.starts_with("http://www.w3.org/ns/lemon/vartrans#") {
                s.translation_module = true;
            }
        }
        if p == owl::SAME_AS {
            s.same_as = true;
            s.predicates.insert(p.to_string());
            if let Some(o) = object_iri {
                if cfg.ili_namespaces.iter().any(|ns| o.starts_with(ns.as_str())) {
                    s.ili_same_as = true;
                }
                let subj = t.subject.as_iri();
                if iri_labels.contains(o) || subj.is_some_and(|x| iri_labels.contains(x)) {
                    s.annotation_same_as = true;
                }
            }
        } else if p == owl::EQUIVALENT_CLASS || p == owl::EQUIVALENT_PROPERTY {
            if let (Some(a), Some(b)) = (t.subject.as_iri(), object_iri) {
                if vocab::split_iri(a).0 != vocab::split_iri(b).0 {
                    s.cross_equivalence = true;
                    s.predicates.insert(p.to_string());
                }
            }
        } else if SKOS_MAPPING.contains(&p) {
            s.skos_mapping = true;
            s.predicates.insert(p.to_string());
        } else if HUB_PREDICATES.contains(&p) {
            s.hub = true;
            s.predicates.insert(p.to_string());
        } else if SENSE_PREDICATES.contains(&p) {
            s.senses = true;
            s.predicates.insert(p.to_string());
        } else if ENTRY_PREDICATES.contains(&p) {
            s.entries = true;
            s.predicates.insert(p.to_string());
        } else if p == rdf::TYPE {
            match object_iri {
                Some(ontolex::LEXICAL_CONCEPT) => s.hub = true,
                Some(ontolex::LEXICAL_SENSE) => s.senses = true,
                _ => {}
            }
        }
    }
    s
}

fn headline(s: &Scan, families: &BTreeSet<Family>) -> Family {
    // Interlingua hubs live in the OntoLex namespace but are a mapping mechanism.
    if s.ili_same_as || s.hub {
        Family::MappingModel
    } else if families.contains(&Family::LinguisticModel) {
        Family::LinguisticModel
    } else if families.contains(&Family::MappingModel) {
        Family::MappingModel
    } else if families.contains(&Family::Labels) {
        Family::Labels
    } else {
        Family::None
    }
}

pub fn detect_family(g: &Graph, _sig: &OntologySignature, inv: &AnnotationInventory, cfg: &DetectorConfig) -> ApproachEvidence {
    let s = scan(g, inv, cfg);
    family_from_scan(&s)
}

fn family_from_scan(s: &Scan) -> ApproachEvidence {
    let mut ev = ApproachEvidence::none();
    if s.tagged_labels {
        ev.matched_families.insert(Family::Labels);
    }
    if !s.namespaces.is_empty() {
        ev.matched_families.insert(Family::LinguisticModel);
    }
    if s.same_as || s.cross_equivalence || s.skos_mapping || s.hub {
        ev.matched_families.insert(Family::MappingModel);
    }
    ev.family = headline(s, &ev.matched_families);
    ev.matched_namespaces = s.namespaces.clone();
    ev.matched_predicates = s.predicates.clone();
    if s.translation_module {
        ev.notes.push("OntoLex translation module (vartrans) present".into());
    }
    ev
}

pub fn detect_variant(
    g: &Graph,
    sig: &OntologySignature,
    inv: &AnnotationInventory,
    family: Family,
    cfg: &DetectorConfig,
) -> ApproachEvidence {
    let s = scan(g, inv, cfg);
    let mut ev = family_from_scan(&s);
    ev.family = family;
    variant_for(&s, sig, inv, cfg, &mut ev);
    ev
}

/// Family and variant in one pass.
pub fn detect(g: &Graph, sig: &OntologySignature, inv: &AnnotationInventory, cfg: &DetectorConfig) -> ApproachEvidence {
    let s = scan(g, inv, cfg);
    let mut ev = family_from_scan(&s);
    variant_for(&s, sig, inv, cfg, &mut ev);
    ev
}

fn variant_for(s: &Scan, sig: &OntologySignature, inv: &AnnotationInventory, cfg: &DetectorConfig, ev: &mut ApproachEvidence) {
    let undetermined = |ev: &mut ApproachEvidence, note: &str| {
        ev.variant = Variant::Undetermined;
        ev.needs_human_review = true;
        ev.notes.push(note.to_string());
    };
    match ev.family {
        Family::None => {
            ev.variant = Variant::Undetermined;
            if sig.is_empty() {
                ev.notes.push("no OWL entities found".into());
            }
        }
        Family::LinguisticModel => {
            if s.senses {
                ev.variant = Variant::LinguisticSenses;
            } else if s.entries {
                ev.variant = Variant::LinguisticEntries;
            } else {
                undetermined(ev, "linguistic namespace used without sense or denotation links");
            }
        }
        Family::MappingModel => {
            if s.ili_same_as {
                ev.variant = Variant::MappingIli;
            } else if s.hub {
                ev.variant = Variant::MappingLexicalConcepts;
            } else {
                let tbox = s.cross_equivalence || s.skos_mapping;
                match (tbox, s.annotation_same_as) {
                    (true, false) => ev.variant = Variant::MappingTbox,
                    (false, true) => ev.variant = Variant::MappingAnnotation,
                    (true, true) => undetermined(ev, "both entity-level and annotation-level alignments present"),
                    (false, false) => undetermined(ev, "owl:sameAs present without an alignment pattern"),
                }
            }
            if s.skos_mapping {
                ev.notes.push("SKOS mappings align individuals, not classes".into());
            }
        }
        Family::Labels => labels_variant(sig, inv, cfg, ev),
    }
}

fn labels_variant(sig: &OntologySignature, inv: &AnnotationInventory, cfg: &DetectorConfig, ev: &mut ApproachEvidence) {
    let entities = sig.entities();
    let n = entities.len();
    let mut opaque = 0usize;
    let mut descriptive = 0usize;
    let mut per_language: BTreeMap<LanguageTag, u64> = BTreeMap::new();
    let mut all_labeled = true;
    for e in &entities {
        let rows = inv.rows_for(e);
        match classify_identifier(e, rows).verdict {
            Verdict::Opaque => opaque += 1,
            Verdict::Descriptive => descriptive += 1,
            Verdict::Unknown => {}
        }
        let langs: BTreeSet<&LanguageTag> = rows.iter().filter_map(|r| r.language.tag()).collect();
        if !rows.iter().any(|r| r.value.is_literal()) {
            all_labeled = false;
        }
        for l in langs {
            *per_language.entry(l.clone()).or_insert(0) += 1;
        }
    }
    ev.notes.push(format!(
        "identifier-style threshold {:.0}% is a heuristic; confirm by inspection",
        cfg.dominance * 100.0
    ));
    if n == 0 {
        ev.variant = Variant::Undetermined;
        ev.needs_human_review = true;
        return;
    }
    let profile = CompletenessProfile::from_counts(n as u64, per_language, 0);
    let primaries = primary_languages(&profile, cfg.tie_epsilon).unwrap_or_default();
    let languages = profile.per_language.len();
    let dominant = languages >= 2 && primaries.len() == 1;
    let share = |k: usize| k as f64 / n as f64 >= cfg.dominance - 1e-12;

    if share(opaque) {
        if dominant {
            ev.variant = Variant::LabelsPrimaryOpaque;
        } else if all_labeled {
            ev.variant = Variant::LabelsLanguageIndependent;
        } else {
            ev.variant = Variant::Undetermined;
            ev.notes.push("opaque identifiers without a label on every entity".into());
        }
    } else if share(descriptive) {
        if dominant || languages == 1 {
            ev.variant = Variant::LabelsPrimaryDescriptive;
        } else {
            ev.variant = Variant::Undetermined;
            ev.notes.push("descriptive identifiers without a dominant label language".into());
        }
    } else {
        ev.variant = Variant::Undetermined;
        ev.notes.push(format!("mixed identifiers: {opaque} opaque, {descriptive} descriptive of {n}"));
    }
    if ev.variant == Variant::Undetermined || n < MIN_ENTITIES_FOR_CONFIDENCE || languages < 2 {
        ev.needs_human_review = true;
    }
}

/// Splits on camel-case humps, underscores, hyphens and other non-letters,
/// lowercases, and keeps letters only.
fn normalize(s: &str) -> String {
    s.chars().filter(|c| c.is_alphabetic()).flat_map(char::to_lowercase).collect()
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Script {
    Latin,
    Greek,
    Cyrillic,
    Armenian,
    Hebrew,
    Arabic,
    Devanagari,
    Thai,
    Georgian,
    Hangul,
    Kana,
    Han,
    Other,
}

fn script_of(c: char) -> Script {
    match c as u32 {
        0x41..=0x5A | 0x61..=0x7A | 0xC0..=0x24F | 0x1E00..=0x1EFF => Script::Latin,
        0x370..=0x3FF | 0x1F00..=0x1FFF => Script::Greek,
        0x400..=0x52F => Script::Cyrillic,
        0x530..=0x58F => Script::Armenian,
        0x590..=0x5FF => Script::Hebrew,
        0x600..=0x6FF | 0x750..=0x77F => Script::Arabic,
        0x900..=0x97F => Script::Devanagari,
        0xE00..=0xE7F => Script::Thai,
        0x10A0..=0x10FF => Script::Georgian,
        0x1100..=0x11FF | 0xAC00..=0xD7AF => Script::Hangul,
        0x3040..=0x30FF => Script::Kana,
        0x4E00..=0x9FFF | 0x3400..=0x4DBF => Script::Han,
        _ => Script::Other,
    }
}

pub fn classify_identifier(entity: &str, labels: &[AnnotationRow]) -> IdentifierJudgment {
    let local = vocab::split_iri(entity).1;
    let judgment = |verdict, basis: String| IdentifierJudgment { entity: entity.to_string(), verdict, basis };
    if local.is_empty() {
        return judgment(Verdict::Unknown, "empty local name".into());
    }
    let norm = normalize(local);
    if !norm.is_empty() {
        let matched = labels.iter().find_map(|r| match &r.value {
            Term::Literal(l) if normalize(l.lexical()) == norm => Some(l.lexical().to_string()),
            _ => None,
        });
        if let Some(label) = matched {
            return judgment(Verdict::Descriptive, format!("local name matches label \"{label}\""));
        }
    }
    if local.chars().any(|c| c.is_ascii_digit() || c.is_numeric()) {
        return judgment(Verdict::Opaque, "local name contains a digit".into());
    }
    if local.chars().count() <= 2 {
        return judgment(Verdict::Opaque, "local name of at most two characters".into());
    }
    let letters: Vec<char> = local.chars().filter(|c| !matches!(c, '_' | '-' | '.')).collect();
    if letters.len() >= 3 && letters.iter().all(|c| c.is_alphabetic()) {
        let first = script_of(letters[0]);
        if first != Script::Other && letters.iter().all(|&c| script_of(c) == first) {
            return judgment(Verdict::Descriptive, "alphabetic local name in a single script".into());
        }
    }
    judgment(Verdict::Unknown, "no identifier rule applies".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_str, RdfFormat};
    use crate::signature::{collect_annotations, default_label_properties, extract_signature};

    fn run(ttl: &str) -> ApproachEvidence {
        let g = parse_str(ttl, RdfFormat::Turtle).unwrap();
        let sig = extract_signature(&g);
        let inv = collect_annotations(&g, &sig, &default_label_properties());
        detect(&g, &sig, &inv, &DetectorConfig::default())
    }

    const PREFIXES: &str = "@prefix : <http://ex.org/o#> .
        @prefix owl: <http://www.w3.org/2002/07/owl#> .
        @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
        @prefix ontolex: <http://www.w3.org/ns/lemon/ontolex#> .
        @prefix ex: <http://ex.org/> .\n";

    #[test]
    fn listing_one_is_labels() {
        let ev = run(&format!("{PREFIXES}:Person rdfs:subClassOf owl:Thing ; rdfs:label \"Person\"@en , \"Persoon\"@nl ."));
        assert_eq!(ev.family, Family::Labels);
    }

    #[test]
    fn listing_two_is_li_candidate_for_review() {
        let ev = run(&format!("{PREFIXES}:493Dk rdfs:subClassOf owl:Thing ; rdfs:label \"Person\"@en ."));
        assert_eq!(ev.family, Family::Labels);
        assert_eq!(ev.variant, Variant::LabelsLanguageIndependent);
        assert!(ev.needs_human_review);
    }

    #[test]
    fn listing_three_is_linguistic_entries() {
        let ev = run(&format!(
            "{PREFIXES}:493Dk rdfs:subClassOf owl:Thing ; rdfs:label \"Person\"@en ;
             ontolex:isDenotedBy ex:en\\/lexicalEntry_Person , ex:nl\\/lexicalEntry_Persoon ."
        ));
        assert_eq!(ev.family, Family::LinguisticModel);
        assert_eq!(ev.variant, Variant::LinguisticEntries);
        assert_eq!(ev.matched_namespaces.iter().collect::<Vec<_>>(), ["ontolex"]);
        assert!(ev.matched_families.contains(&Family::Labels));
    }

    #[test]
    fn listing_four_is_mapping() {
        let ev = run("@prefix owl: <http://www.w3.org/2002/07/owl#> .
            <http://a.org/Person> owl:equivalentClass <http://b.org/Persoon> .
            <http://b.org/Persoon> owl:equivalentClass <http://c.org/Umntu> .");
        assert_eq!(ev.family, Family::MappingModel);
        assert_eq!(ev.variant, Variant::MappingTbox);
        assert!(ev.matched_predicates.contains(owl::EQUIVALENT_CLASS));
    }

    #[test]
    fn listings_five_and_six_are_lexical_concepts() {
        let ev = run(&format!(
            "{PREFIXES}:493Dk rdfs:subClassOf owl:Thing ; rdfs:label \"Person\"@en ;
               ontolex:concept ex:lexicalConcepts\\/000000001 .
             ex:lexicalConcepts\\/000000001 a ontolex:LexicalConcept ;
               ontolex:lexicalizedSense ex:en\\/lexicalEntry_Person_sense1 , ex:nl\\/lexicalEntry_Persoon_sense1 ;
               ontolex:isEvokedBy ex:en\\/lexicalEntry_Person , ex:nl\\/lexicalEntry_Persoon ."
        ));
        assert_eq!(ev.family, Family::MappingModel);
        assert_eq!(ev.variant, Variant::MappingLexicalConcepts);
    }

    #[test]
    fn no_labels_means_no_labels_family() {
        let ev = run(&format!("{PREFIXES}:A rdfs:subClassOf :B ; rdfs:label \"A\" ."));
        assert_eq!(ev.family, Family::None);
        assert_eq!(ev.variant, Variant::Undetermined);
    }

    #[test]
    fn identifiers() {
        let g = parse_str(&format!("{PREFIXES}:Person rdfs:label \"Person\"@en ; rdfs:subClassOf owl:Thing ."), RdfFormat::Turtle).unwrap();
        let sig = extract_signature(&g);
        let inv = collect_annotations(&g, &sig, &default_label_properties());
        let e = "http://ex.org/o#Person";
        assert_eq!(classify_identifier(e, inv.rows_for(e)).verdict, Verdict::Descriptive);
        assert_eq!(classify_identifier("http://ex.org/o#493Dk", &[]).verdict, Verdict::Opaque);
        assert_eq!(classify_identifier("http://ex.org/o#RumAndRaisinIcecream", &[]).verdict, Verdict::Descriptive);
        assert_eq!(classify_identifier("http://purl.obolibrary.org/obo/ABC_0000012", &[]).verdict, Verdict::Opaque);
        assert_eq!(classify_identifier("http://ex.org/o#ab", &[]).verdict, Verdict::Opaque);
        assert_eq!(classify_identifier("http://ex.org/o#Пер", &[]).verdict, Verdict::Descriptive);
        assert_eq!(classify_identifier("http://ex.org/o#Perсон", &[]).verdict, Verdict::Unknown);
        assert_eq!(classify_identifier("http://ex.org/o/", &[]).verdict, Verdict::Unknown);
    }

    #[test]
    fn variant_names_parse() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
            assert_eq!(serde_json::to_string(&v).unwrap(), format!("\"{}\"", v.name()));
        }
        assert_eq!("O_PLD".parse::<Variant>().unwrap(), Variant::LabelsPrimaryDescriptive);
        assert!("labels-xyz".parse::<Variant>().is_err());
    }

    #[test]
    fn watchlist_file_format() {
        let w = Watchlist::parse("# custom\nmyling http://ex.org/ling#\nother: <http://ex.org/o2/>\nthird=http://ex.org/3#\n").unwrap();
        assert_eq!(w.prefix_of("http://ex.org/ling#Entry"), Some("myling"));
        assert_eq!(w.prefix_of("http://ex.org/o2/x"), Some("other"));
        assert_eq!(w.prefix_of("http://ex.org/3#x"), Some("third"));
        assert!(Watchlist::parse("lonely\n").is_err());
        assert_eq!(Watchlist::default().prefixes().count(), 6);
    }
}
