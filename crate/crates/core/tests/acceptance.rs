//! Acceptance checks, one line per criterion. Runs without the libtest harness
//! so each criterion reports PASS or FAIL on its own line.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use ontoaudit::audit::{audit_graph, AuditOptions};
use ontoaudit::detect::Variant;
use ontoaudit::generator::{example_one_spec, generate, reference_specs, GenerationSpec, LabelProperty};
use ontoaudit::harvest::transport::ReplayTransport;
use ontoaudit::harvest::{self, HarvestConfig, Repository};
use ontoaudit::lang::LanguageTag;
use ontoaudit::metrics::{classify_multilingual, completeness_profile, required_mapping_count, round_half_up};
use ontoaudit::rdf::{parse_document, parse_str, to_ntriples, Graph, Literal, ParseOptions, RdfFormat, Term, Triple};
use ontoaudit::report::{self, ReportKind};
use ontoaudit::signature::{collect_annotations, default_label_properties, extract_signature};
use ontoaudit::validate::{check_pref_labels, check_sense_cardinality, validate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:?}, limit {limit:?}");
    Ok(t)
}

fn lcom1(g: &ontoaudit::AuditResult, lang: &str) -> f64 {
    round_half_up(g.profile.lcom(&LanguageTag::parse(lang)), 1)
}

fn example_one() -> Check {
    let start = Instant::now();
    let corpus = generate(&example_one_spec()).map_err(|e| e.to_string())?;
    let r = audit_graph("example-1", &corpus.merged(), &AuditOptions::default());
    let t = within(start, Duration::from_secs(1))?;
    ensure!(r.profile.cov == 65, "Cov {}", r.profile.cov);
    let got = (lcom1(&r, "en"), lcom1(&r, "fr"), lcom1(&r, "de"));
    ensure!(got == (92.3, 76.9, 46.2), "LCom en/fr/de {got:?}");
    let pl: Vec<&str> = r.primary_languages.iter().map(|l| l.as_str()).collect();
    ensure!(pl == ["en"], "PL {pl:?}");
    Ok(format!("Cov=65, en 92.3, fr 76.9, de 46.2, PL={{en}} in {t:?}"))
}

fn nine_variants() -> Check {
    let start = Instant::now();
    let mut families = 0;
    for spec in reference_specs() {
        let corpus = generate(&spec).map_err(|e| e.to_string())?;
        let m = &corpus.manifest;
        let r = audit_graph(&m.name, &corpus.merged(), &AuditOptions::default());
        ensure!(r.approach.family == spec.variant.family(), "{}: family {}", m.name, r.approach.family);
        families += 1;
        ensure!(r.approach.variant == spec.variant, "{}: variant {}", m.name, r.approach.variant);
        ensure!(!r.approach.needs_human_review, "{}: flagged for review {:?}", m.name, r.approach.notes);
        ensure!(r.profile.cov == m.expected_cov, "{}: Cov {} vs {}", m.name, r.profile.cov, m.expected_cov);
        ensure!(r.profile.per_language == m.expected_lcom, "{}: LCom {:?} vs {:?}", m.name, r.profile.per_language, m.expected_lcom);
    }
    ensure!(families == Variant::ALL.len(), "{families} variants checked");
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("9/9 families and variants, no review flags, Cov and LCom exact, in {t:?}"))
}

fn row_fixture(id: &str, cov: usize, langs: &[(&str, f64)]) -> Result<ontoaudit::AuditResult, String> {
    let codes: Vec<&str> = langs.iter().map(|l| l.0).collect();
    let mut spec = GenerationSpec::new(Variant::LabelsPrimaryDescriptive, &codes, (cov, 0, 0)).named(id);
    for &(l, pct) in langs {
        spec = spec.with_completeness(l, count_for(pct, cov as u64) as f64 / cov as f64);
    }
    let corpus = generate(&spec).map_err(|e| format!("{id}: {e}"))?;
    let r = audit_graph(id, &corpus.merged(), &AuditOptions::default());
    for &(l, pct) in langs {
        ensure!(lcom1(&r, l) == pct, "{id}: LCom {l} prints {} not {pct}", lcom1(&r, l));
    }
    Ok(r)
}

fn thresholds() -> Check {
    for (id, cov, langs) in [("OM", 833, [("en", 33.9), ("ja", 2.0)]), ("CL", 16846, [("en", 1.3), ("zh", 0.1)])] {
        let r = row_fixture(id, cov, &langs)?;
        ensure!(classify_multilingual(&r.profile, 0.0), "{id} not multilingual at 0");
        ensure!(!classify_multilingual(&r.profile, 5.0), "{id} multilingual at 5");
    }
    let dropped: BTreeSet<&str> =
        BIOPORTAL_ROWS.iter().map(|r| bioportal_row(r.0)).filter(|r| !classify_multilingual(&r.profile, 5.0)).map(|r| BIOPORTAL_ROWS.iter().find(|x| x.0 == r.ontology_id).unwrap().0).collect();
    let expected: BTreeSet<&str> = ["CL", "EUPATH", "MOSAIC", "OBI", "OBIB", "OCMR", "OM"].into();
    ensure!(dropped == expected, "dropped at 5: {dropped:?}");
    Ok("OM and CL multilingual at 0, not at 5; exclusion set CL EUPATH MOSAIC OBI OBIB OCMR OM".into())
}

fn csv_rows(csv: &str) -> Vec<BTreeMap<String, String>> {
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let headers = r.headers().unwrap().clone();
    r.records().map(|rec| headers.iter().zip(rec.unwrap().iter()).map(|(h, v)| (h.to_string(), v.to_string())).collect()).collect()
}

fn aggregates() -> Check {
    let mut all = bioportal_results();
    all.extend(lov_results());
    let cells = |t: f64| -> Result<BTreeMap<String, BTreeMap<String, String>>, String> {
        let table = report::build(&all, ReportKind::DatasetComparison, t).map_err(|e| e.to_string())?;
        Ok(csv_rows(&report::render_csv(&table)).into_iter().map(|row| (row["dataset"].clone(), row)).collect())
    };
    let exact = |rows: &BTreeMap<String, BTreeMap<String, String>>, ds: &str, col: &str, want: &str| -> Result<(), String> {
        let got = &rows[ds][col];
        ensure!(got == want, "{ds} {col}: {got} vs {want}");
        Ok(())
    };
    let near = |rows: &BTreeMap<String, BTreeMap<String, String>>, ds: &str, col: &str, want: f64| -> Result<(), String> {
        let got: f64 = rows[ds][col].parse().map_err(|_| format!("{ds} {col} not numeric"))?;
        ensure!((got - want).abs() <= 0.01 + 1e-9, "{ds} {col}: {got} vs {want}±0.01");
        Ok(())
    };
    let t0 = cells(0.0)?;
    for (ds, count, pct, total, mean, median) in [("bioportal", "18", "6.77", "95762", "5320.11", "1391"), ("lov", "82", "15.74", "14644", "178.59", "66")] {
        exact(&t0, ds, "multilingual", count)?;
        exact(&t0, ds, "percent_multilingual", pct)?;
        exact(&t0, ds, "total_cov", total)?;
        exact(&t0, ds, "mean_cov", mean)?;
        exact(&t0, ds, "median_cov", median)?;
    }
    let t5 = cells(5.0)?;
    exact(&t5, "bioportal", "percent_multilingual", "4.14")?;
    exact(&t5, "lov", "percent_multilingual", "14.20")?;
    near(&t5, "bioportal", "mean_cov", 5769.46)?;
    near(&t5, "lov", "mean_cov", 124.37)?;
    let lov: Vec<_> = all.iter().filter(|r| r.dataset_name() == "lov").cloned().collect();
    for (t, want) in [(0.0, [(2, 65), (3, 3), (4, 2), (5, 2), (6, 1), (8, 1), (11, 5), (16, 3)]), (5.0, [(2, 58), (3, 3), (4, 2), (5, 2), (6, 2), (8, 1), (11, 5), (16, 1)])] {
        let s = ontoaudit::metrics::aggregate(&lov, t).map_err(|e| e.to_string())?;
        let want: BTreeMap<usize, usize> = want.into_iter().collect();
        ensure!(s.languages_per_ontology == want, "LOV languages per vocabulary at {t}: {:?}", s.languages_per_ontology);
    }
    Ok(format!(
        "6.77%/15.74%, means 5320.11/178.59, medians 1391/66; at 5: 4.14%/14.20%, means {}/{}",
        t5["bioportal"]["mean_cov"], t5["lov"]["mean_cov"]
    ))
}

fn pipelines() -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = HarvestConfig { cache_dir: tmp.path().join("cache"), api_key: Some("k".into()), concurrency: 16, delay: Duration::ZERO, ..Default::default() };
    let bp = harvest::harvest(Repository::Bioportal, &cfg, &ReplayTransport::from_exchanges(tmp.path(), bioportal_exchanges())).map_err(|e| e.to_string())?;
    let mut chain = vec![bp.listed];
    chain.extend(bp.steps.iter().map(|s| s.out_count));
    ensure!(chain == [981, 730, 268, 266], "BioPortal {chain:?}");
    let lov = harvest::harvest(Repository::Lov, &cfg, &ReplayTransport::from_exchanges(tmp.path(), lov_exchanges())).map_err(|e| e.to_string())?;
    let b = |k: &str| lov.buckets.get(k).copied().unwrap_or(0);
    let buckets = [b("code-0"), b("3xx"), b("4xx"), b("5xx"), b("2xx")];
    ensure!(buckets == [75, 23, 125, 27, 523], "LOV buckets {buckets:?}");
    ensure!(lov.surviving == 521, "LOV final {}", lov.surviving);
    Ok("BioPortal 981→730→268→266; LOV 0:75 3xx:23 4xx:125 5xx:27 2xx:523 → 521".into())
}

const LANGS: [&str; 6] = ["en", "EN", "nl", "NL", "pt-BR", "pt-br"];
const KINDS: [&str; 3] = ["http://www.w3.org/2002/07/owl#Class", "http://www.w3.org/2002/07/owl#ObjectProperty", "http://www.w3.org/2002/07/owl#DatatypeProperty"];
const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

fn metric_properties() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20220428);
    for case in 0..1000 {
        let n = rng.gen_range(1..=10);
        let mut triples = Vec::new();
        let mut kinds: Vec<(String, usize)> = Vec::new();
        let mut labels: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for e in 0..n {
            let iri = format!("http://example.org/r#e{e}");
            let k = rng.gen_range(0..3);
            kinds.push((iri.clone(), k));
            triples.push(Triple::new(Term::iri(&iri), TYPE, Term::iri(KINDS[k])));
            if rng.gen_bool(0.1) {
                let k2 = (k + 1) % 3;
                kinds.push((iri.clone(), k2));
                triples.push(Triple::new(Term::iri(&iri), TYPE, Term::iri(KINDS[k2])));
            }
            for _ in 0..rng.gen_range(0..4) {
                if rng.gen_bool(0.15) {
                    triples.push(Triple::new(Term::iri(&iri), LABEL, Term::Literal(Literal::plain(format!("u{e}")))));
                    continue;
                }
                let tag = LANGS[rng.gen_range(0..LANGS.len())];
                triples.push(Triple::new(Term::iri(&iri), LABEL, Term::Literal(Literal::lang(format!("l{e}{tag}"), tag))));
                labels.entry(tag.to_ascii_lowercase()).or_default().insert(iri.clone());
            }
        }
        triples.push(Triple::new(Term::iri("http://example.org/r#loose"), LABEL, Term::Literal(Literal::lang("x", "zu"))));
        let g = Graph::from_triples(triples);
        let sig = extract_signature(&g);
        let profile = completeness_profile(&collect_annotations(&g, &sig, &default_label_properties()), &sig);
        let cov = kinds.len() as u64;
        ensure!(profile.cov == cov, "case {case}: Cov {} vs {cov}", profile.cov);
        let mut oracle_langs = 0;
        for (lang, set) in &labels {
            let hits = kinds.iter().filter(|(iri, _)| set.contains(iri)).count();
            let want = 100.0 * hits as f64 / cov as f64;
            let got = profile.lcom(&LanguageTag::parse(lang));
            ensure!(got == want, "case {case}: LCom {lang} {got} vs {want}");
            oracle_langs += 1;
        }
        ensure!(profile.per_language.len() == oracle_langs, "case {case}: languages {:?}", profile.per_language.keys().collect::<Vec<_>>());
        ensure!(profile.per_language.values().all(|v| (0.0..=100.0).contains(v)), "case {case}: LCom out of range");
        let mut prev = true;
        for t in [0.0, 1.0, 5.0, 10.0, 33.3, 50.0, 99.0, 100.0] {
            let m = classify_multilingual(&profile, t);
            ensure!(prev || !m, "case {case}: multilingual at {t} but not below");
            prev = m;
        }
    }
    for n in 0..=50u64 {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).count() as u64;
        ensure!(required_mapping_count(n) == pairs, "mapping count {n}");
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("1000 random signatures match the per-entity oracle; bounds, antitonicity, n(n-1)/2 for n<=50; {t:?}"))
}

fn structural() -> Check {
    let mut checked = 0;
    for v in [Variant::LinguisticSenses, Variant::LinguisticEntries] {
        let mut spec = GenerationSpec::new(v, &["en", "nl", "zu"], (6, 2, 1)).with_completeness("zu", 0.5);
        spec.label_property = LabelProperty::SkosPrefLabel;
        let corpus = generate(&spec).map_err(|e| e.to_string())?;
        let merged = corpus.merged();
        ensure!(validate(&merged).is_empty(), "{v}: {:?}", validate(&merged));
        checked += 1;
        if v == Variant::LinguisticSenses {
            let sense = merged
                .with_predicate(TYPE)
                .find(|t| t.object == Term::iri("http://www.w3.org/ns/lemon/ontolex#LexicalSense"))
                .map(|t| t.subject.clone())
                .ok_or("no LexicalSense generated")?;
            let mut extra = merged.triples().to_vec();
            extra.push(Triple::new(sense, "http://www.w3.org/ns/lemon/ontolex#reference", Term::iri("http://example.org/elsewhere")));
            ensure!(!check_sense_cardinality(&Graph::from_triples(extra)).is_empty(), "second sense reference not caught");
        }
        let labeled = merged
            .with_predicate("http://www.w3.org/2004/02/skos/core#prefLabel")
            .find(|t| t.object.as_literal().and_then(Literal::language).is_some_and(|l| l.eq_ignore_ascii_case("en")))
            .map(|t| t.subject.clone())
            .ok_or("no English prefLabel generated")?;
        let mut extra = merged.triples().to_vec();
        extra.push(Triple::new(labeled, "http://www.w3.org/2004/02/skos/core#prefLabel", Term::Literal(Literal::lang("second", "EN"))));
        ensure!(!check_pref_labels(&Graph::from_triples(extra)).is_empty(), "{v}: second English prefLabel not caught");
    }
    Ok(format!("{checked} lexicon fixtures valid; injected sense and prefLabel violations detected"))
}

const LISTING_THREE: &str = r#"@prefix : <http://example.org/lexicon/> .
@prefix ontolex: <http://www.w3.org/ns/lemon/ontolex#> .
@prefix dcterms: <http://purl.org/dc/terms/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix lang: <http://lexvo.org/id/iso639-3/> .

:nl\/lexicalEntry_Persoon
    a ontolex:LexicalEntry ;
    dcterms:language lang:dutch ;
    rdfs:label "Persoon"@nl ;
    ontolex:canonicalForm
       :nl\/lexicalEntry_form_Persoon .

:nl\/lexicalEntry_form_Persoon
    a ontolex:Form ;
    ontolex:writtenRep "persoon"@nl .
"#;

const LISTING_THREE_NT: &str = r#"<http://example.org/lexicon/nl/lexicalEntry_Persoon> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/ns/lemon/ontolex#LexicalEntry> .
<http://example.org/lexicon/nl/lexicalEntry_Persoon> <http://purl.org/dc/terms/language> <http://lexvo.org/id/iso639-3/dutch> .
<http://example.org/lexicon/nl/lexicalEntry_Persoon> <http://www.w3.org/2000/01/rdf-schema#label> "Persoon"@nl .
<http://example.org/lexicon/nl/lexicalEntry_Persoon> <http://www.w3.org/ns/lemon/ontolex#canonicalForm> <http://example.org/lexicon/nl/lexicalEntry_form_Persoon> .
<http://example.org/lexicon/nl/lexicalEntry_form_Persoon> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/ns/lemon/ontolex#Form> .
<http://example.org/lexicon/nl/lexicalEntry_form_Persoon> <http://www.w3.org/ns/lemon/ontolex#writtenRep> "persoon"@nl .
"#;

/// RDF/XML fixtures and their triple counts, expanded by hand.
pub const RDFXML_FIXTURES: &[(&str, usize)] = &[
    ("collection.rdf", 6),
    ("datatypes.rdf", 3),
    ("ids_and_base.rdf", 4),
    ("lang_inheritance.rdf", 5),
    ("mapping_bridge.rdf", 5),
    ("nested_and_nodeid.rdf", 7),
    ("parse_type_resource.rdf", 4),
    ("typed_nodes.rdf", 5),
];

fn parsers() -> Check {
    let mut corpora = reference_specs();
    corpora.push(example_one_spec());
    let mut docs = 0;
    for spec in &corpora {
        let corpus = generate(spec).map_err(|e| e.to_string())?;
        for (name, g) in corpus.documents() {
            let text = to_ntriples(g);
            for format in [RdfFormat::NTriples, RdfFormat::Turtle] {
                let back = parse_str(&text, format).map_err(|e| format!("{name} as {format}: {e}"))?;
                ensure!(back.isomorphic(g), "{name} differs after {format} round trip");
            }
            docs += 1;
        }
    }
    let listing = parse_str(LISTING_THREE, RdfFormat::Turtle).map_err(|e| e.to_string())?;
    let expanded = parse_str(LISTING_THREE_NT, RdfFormat::NTriples).map_err(|e| e.to_string())?;
    ensure!(listing.len() == 6 && listing.isomorphic(&expanded), "lexical entry fragment gave {} triples", listing.len());
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/rdfxml");
    let mut files: Vec<String> = std::fs::read_dir(&dir).map_err(|e| e.to_string())?.filter_map(|e| e.ok()?.file_name().into_string().ok()).collect();
    files.sort();
    let pinned: Vec<&str> = RDFXML_FIXTURES.iter().map(|f| f.0).collect();
    ensure!(files == pinned, "unpinned RDF/XML fixtures: {files:?}");
    for &(file, want) in RDFXML_FIXTURES {
        let bytes = std::fs::read(dir.join(file)).map_err(|e| e.to_string())?;
        let g = parse_document(&bytes, RdfFormat::RdfXml, &ParseOptions::default()).map_err(|e| format!("{file}: {e}"))?;
        ensure!(g.len() == want, "{file}: {} triples, expected {want}", g.len());
    }
    Ok(format!(
        "{docs} generated documents round-trip through N-Triples and Turtle; lexical entry fragment = its 6 hand-expanded triples (a stated count of 7 counts the form type twice); {} RDF/XML fixtures match pinned counts",
        RDFXML_FIXTURES.len()
    ))
}

fn run_bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ontoaudit")).args(args).output().map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "ontoaudit {args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    Ok(out.stdout)
}

fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap().flatten() {
            let p = e.path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(p.strip_prefix(dir).unwrap().display().to_string(), std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn determinism() -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    run_bin(&["gen", "--preset", "nine-variants", "--seed", "7", "--out", &s(&a)])?;
    run_bin(&["gen", "--preset", "nine-variants", "--seed", "7", "--out", &s(&b)])?;
    let (ta, tb) = (tree(&a), tree(&b));
    ensure!(!ta.is_empty() && ta == tb, "generated trees differ");
    let results = tmp.path().join("results.jsonl");
    let mut all = bioportal_results();
    all.extend(lov_results());
    write_results(&results, &all);
    for kind in ["dataset-comparison", "completeness-matrix", "language-distribution", "per-ontology-classification", "boxplot-summary"] {
        for format in ["json", "csv", "markdown"] {
            let args = ["report", &s(&results), "--kind", kind, "--format", format, "--threshold", "5", "--no-timestamp"];
            ensure!(run_bin(&args)? == run_bin(&args)?, "{kind} {format} output differs between runs");
        }
    }
    Ok(format!("gen twice gives {} identical files; 15 report renderings identical", ta.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("Example 1 reproduction", example_one),
        ("nine-variant round trip", nine_variants),
        ("threshold behaviour", thresholds),
        ("aggregate reproduction", aggregates),
        ("pipeline counts offline", pipelines),
        ("metric property suite", metric_properties),
        ("structural invariants", structural),
        ("parser conformance", parsers),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
