#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use ontoaudit::detect::{ApproachEvidence, Family};
use ontoaudit::harvest::transport::Exchange;
use ontoaudit::lang::LanguageTag;
use ontoaudit::metrics::{CompletenessProfile, DEFAULT_TIE_EPSILON, REPORT_THRESHOLDS};
use ontoaudit::AuditResult;
use serde_json::json;

pub fn result(id: &str, dataset: &str, cov: u64, counts: &[(&str, u64)]) -> AuditResult {
    let counts: BTreeMap<LanguageTag, u64> = counts.iter().map(|&(l, n)| (LanguageTag::parse(l), n)).collect();
    let profile = CompletenessProfile::from_counts(cov, counts, 0);
    let mut approach = ApproachEvidence::none();
    if profile.per_language.len() > 1 {
        approach.family = Family::Labels;
    }
    let mut r = AuditResult::from_profile(id, profile, approach, &REPORT_THRESHOLDS, DEFAULT_TIE_EPSILON);
    r.dataset = Some(dataset.to_string());
    r
}

/// Labeled entity count whose share of `cov` prints as `pct` at one decimal.
pub fn count_for(pct: f64, cov: u64) -> u64 {
    ((pct * cov as f64 / 100.0).round() as u64).max(1)
}

/// The eighteen multilingual BioPortal ontologies: id, Cov, (language, printed LCom).
pub const BIOPORTAL_ROWS: &[(&str, u64, &[(&str, f64)])] = &[
    ("ATOL", 2352, &[("en", 100.0), ("fr", 100.0)]),
    ("CIDOC-CRM", 372, &[("de", 92.5), ("el", 87.4), ("en", 99.7), ("fr", 87.4), ("pt", 87.4), ("pt-br", 87.1), ("ru", 90.9)]),
    ("CL", 16846, &[("en", 1.3), ("zh", 0.1)]),
    ("COVIDCRFRAPID", 407, &[("en", 78.9), ("pt-br", 53.8)]),
    ("DCAT-FDC", 39, &[("ar", 41.0), ("cs", 89.7), ("da", 92.3), ("el", 41.0), ("en", 94.9), ("es", 89.7), ("fr", 41.0), ("it", 94.9), ("ja", 41.0)]),
    ("EUPATH", 4184, &[("en", 15.5), ("fr", 0.02), ("pt", 0.1)]),
    ("LABO", 204, &[("en", 90.7), ("fr", 10.3)]),
    ("MOSAIC", 282, &[("en", 37.9), ("es", 3.2)]),
    ("NANDO", 2733, &[("en", 100.0), ("ja", 100.0)]),
    ("OBI", 4733, &[("en", 25.7), ("zh", 0.1)]),
    ("OBIB", 1949, &[("en", 32.1), ("zh", 0.2)]),
    ("OCMR", 3471, &[("en", 4.98), ("zh", 1.3)]),
    ("OM", 833, &[("en", 33.9), ("ja", 2.0)]),
    ("ONTOLURGENCES", 10092, &[("en", 28.2), ("fr", 99.0)]),
    ("PDRO", 239, &[("en", 74.1), ("fr", 62.3)]),
    ("RADLEX", 46813, &[("de", 46.3), ("en", 46.5)]),
    ("SEQ", 5, &[("en", 80.0), ("it", 80.0)]),
    ("VDOT", 208, &[("de", 37.0), ("en", 29.8)]),
];

pub fn bioportal_row(id: &str) -> AuditResult {
    let (id, cov, langs) = BIOPORTAL_ROWS.iter().find(|r| r.0 == id).expect("known row");
    let counts: Vec<(&str, u64)> = langs.iter().map(|&(l, p)| (l, count_for(p, *cov))).collect();
    result(id, "bioportal", *cov, &counts)
}

/// 266 results: the eighteen multilingual rows plus monolingual ontologies.
pub fn bioportal_results() -> Vec<AuditResult> {
    let mut out: Vec<AuditResult> = BIOPORTAL_ROWS.iter().map(|r| bioportal_row(r.0)).collect();
    for i in 0..248u64 {
        let cov = 40 + (i * 37) % 3000;
        out.push(result(&format!("BP{i:03}"), "bioportal", cov, &[("en", cov - i % 7)]));
    }
    out
}

const LOV_LANG_SLOTS: &[(&str, usize)] = &[
    ("it", 31), ("fr", 27), ("es", 20), ("de", 19), ("nl", 9), ("pt", 8), ("ru", 6), ("sv", 6), ("af", 5),
    ("cs", 5), ("ro", 5), ("da", 3), ("ko", 3), ("ar", 2), ("fi", 2), ("ja", 2), ("ca", 1), ("zh", 1),
    ("et", 1), ("fa", 1), ("el", 1), ("sk", 1), ("tr", 1),
];

struct LovVocab {
    id: String,
    cov: u64,
    high: Vec<String>,
    low: Vec<String>,
}

/// 521 results: 82 multilingual at threshold 0, 74 at threshold 5.
pub fn lov_results() -> Vec<AuditResult> {
    // Covs of the 74 vocabularies still multilingual above 5%.
    let mut retained: Vec<u64> = vec![4];
    retained.extend(20..55);
    retained.extend([63, 63, 64, 65, 66, 66]);
    retained.extend((0..31).map(|k| 70 + 5 * k + if k >= 22 { 221 } else { 0 }));
    retained.push(1033);
    // Languages above 5% besides English.
    let mut needs: Vec<usize> = vec![15, 10, 10, 10, 10, 10, 7, 5, 5, 4, 4, 3, 3, 2, 2, 2];
    needs.resize(74, 1);
    let mut slots: Vec<(String, usize)> = LOV_LANG_SLOTS.iter().map(|&(l, n)| (l.to_string(), n)).collect();
    let mut vocabs = Vec::new();
    // Larger vocabularies take the wider language sets.
    let mut order: Vec<usize> = (0..74).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(retained[i]));
    let mut assigned: Vec<Option<Vec<String>>> = vec![None; 74];
    for (rank, &need) in needs.iter().enumerate() {
        slots.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut langs = vec!["en".to_string()];
        for s in slots.iter_mut().take(need) {
            assert!(s.1 > 0, "language slots exhausted");
            s.1 -= 1;
            langs.push(s.0.clone());
        }
        assigned[order[rank]] = Some(langs);
    }
    let all_langs: Vec<&str> = LOV_LANG_SLOTS.iter().map(|s| s.0).collect();
    let low_fill = |high: &[String], n: usize| -> Vec<String> {
        all_langs.iter().filter(|l| !high.iter().any(|h| h == *l)).chain(["hu", "pl", "lt"].iter()).take(n).map(|l| l.to_string()).collect()
    };
    let mut low_plan: BTreeMap<usize, usize> = BTreeMap::new();
    // Ranks by need: 0 keeps sixteen, the six-language one gains ten weak
    // languages, one three-language one gains thirteen, one two-language one gains one.
    let six = needs.iter().position(|&n| n == 5).unwrap();
    let three = needs.iter().position(|&n| n == 2).unwrap();
    let two = needs.iter().position(|&n| n == 1).unwrap();
    low_plan.insert(six, 10);
    low_plan.insert(three, 13);
    low_plan.insert(two, 1);
    let names: BTreeMap<usize, &str> = [(0, "bto"), (six, "lingvo"), (three, "mil")].into_iter().collect();
    for rank in 0..74 {
        let i = order[rank];
        let high = assigned[i].take().unwrap();
        let low = low_plan.get(&rank).map(|&n| low_fill(&high, n)).unwrap_or_default();
        let id = if retained[i] == 1033 {
            "km4c".to_string()
        } else if retained[i] == 4 {
            "ti".to_string()
        } else {
            names.get(&rank).map(|s| s.to_string()).unwrap_or_else(|| format!("lov-ml-{i:02}"))
        };
        vocabs.push(LovVocab { id, cov: retained[i], high, low });
    }
    for (k, cov) in [4731u64, 100, 100, 100, 100, 100, 100, 110].into_iter().enumerate() {
        let id = if k == 0 { "obi".to_string() } else { format!("lov-weak-{k}") };
        vocabs.push(LovVocab { id, cov, high: vec!["en".into()], low: vec![["fr", "de", "es", "it", "nl", "pt", "ja", "ru"][k].into()] });
    }
    let mut out: Vec<AuditResult> = vocabs
        .iter()
        .map(|v| {
            let strong = v.cov / 20 + 1;
            let mut counts: Vec<(&str, u64)> = v.high.iter().map(|l| (l.as_str(), if l == "en" { v.cov } else { strong })).collect();
            counts.extend(v.low.iter().map(|l| (l.as_str(), 1)));
            result(&v.id, "lov", v.cov, &counts)
        })
        .collect();
    for i in 0..(521 - out.len()) {
        let cov = 5 + (i as u64 * 13) % 400;
        out.push(result(&format!("lov-mono-{i:03}"), "lov", cov, &[("en", cov)]));
    }
    out
}

pub fn write_results(path: &Path, results: &[AuditResult]) {
    let mut text = String::new();
    for r in results {
        text.push_str(&serde_json::to_string(r).unwrap());
        text.push('\n');
    }
    fs::write(path, text).unwrap();
}

pub fn write_replay(dir: &Path, exchanges: &[Exchange]) {
    fs::create_dir_all(dir).unwrap();
    let mut text = String::new();
    for e in exchanges {
        text.push_str(&serde_json::to_string(e).unwrap());
        text.push('\n');
    }
    fs::write(dir.join("exchanges.jsonl"), text).unwrap();
}

pub fn ok_json(url: &str, body: serde_json::Value) -> Exchange {
    Exchange {
        method: "GET".into(),
        url: url.into(),
        status: Some(200),
        headers: [("content-type".to_string(), "application/json".to_string())].into(),
        body: Some(body.to_string()),
        ..Default::default()
    }
}

pub fn response(url: &str, status: u16, content_type: Option<&str>, body: &str) -> Exchange {
    Exchange {
        method: "GET".into(),
        url: url.into(),
        status: Some(status),
        headers: content_type.map(|c| [("content-type".to_string(), c.to_string())].into()).unwrap_or_default(),
        body: (!body.is_empty()).then(|| body.to_string()),
        ..Default::default()
    }
}

pub fn failure(url: &str, kind: &str) -> Exchange {
    Exchange { method: "GET".into(), url: url.into(), error: Some(kind.into()), ..Default::default() }
}

pub fn rdfxml_document(ns: &str, name: &str) -> String {
    format!(
        r#"<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#" xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#" xmlns:owl="http://www.w3.org/2002/07/owl#">
  <owl:Ontology rdf:about="{ns}"/>
  <owl:Class rdf:about="{ns}{name}">
    <rdfs:label xml:lang="en">{name}</rdfs:label>
  </owl:Class>
</rdf:RDF>
"#
    )
}

pub const BP: &str = "https://data.bioontology.org";
pub const LOV: &str = "https://lov.linkeddata.es/dataset/lov";

/// 981 listed ontologies: 730 OWL, 268 of them in production, two with empty downloads.
pub fn bioportal_exchanges() -> Vec<Exchange> {
    let mut ex = Vec::new();
    let mut listing = Vec::new();
    let other_formats = ["OBO", "SKOS", "UMLS"];
    let other_status = ["alpha", "beta", "retired"];
    for i in 0..981usize {
        let acr = format!("ONT{i:04}");
        let download = format!("{BP}/ontologies/{acr}/download");
        listing.push(json!({ "acronym": acr, "name": format!("Ontology {i}"), "@id": format!("{BP}/ontologies/{acr}"), "links": { "download": download } }));
        let (format, status) = if i < 730 {
            (
                "OWL",
                if i < 268 {
                    Some("production")
                } else if i % 9 == 0 {
                    None
                } else {
                    Some(other_status[i % 3])
                },
            )
        } else {
            (other_formats[i % 3], Some("production"))
        };
        ex.push(ok_json(
            &format!("{BP}/ontologies/{acr}/latest_submission"),
            json!({ "hasOntologyLanguage": format, "status": status, "description": format!("Ontology number {i}") }),
        ));
        ex.push(ok_json(&format!("{BP}/ontologies/{acr}/categories"), json!([{ "acronym": "CAT", "name": "Health" }])));
        if i < 268 {
            if i == 100 || i == 200 {
                ex.push(response(&download, 200, Some("application/rdf+xml"), ""));
            } else if i % 50 == 7 {
                let file = format!("https://files.example.org/{acr}.owl");
                let mut redirect = response(&download, 302, None, "");
                redirect.headers.insert("location".into(), file.clone());
                ex.push(redirect);
                ex.push(response(&file, 200, Some("application/rdf+xml"), &rdfxml_document(&format!("http://purl.example.org/{acr}#"), "Thing")));
            } else {
                ex.push(response(&download, 200, Some("application/rdf+xml"), &rdfxml_document(&format!("http://purl.example.org/{acr}#"), "Entity")));
            }
        }
    }
    ex.insert(0, ok_json(&format!("{BP}/ontologies"), json!(listing)));
    ex.insert(1, ok_json(&format!("{BP}/categories"), json!([{ "acronym": "CAT", "name": "Health" }])));
    ex
}

pub fn lov_vocab_uri(i: usize) -> String {
    format!("http://host{}.example.org/ns/v{i:03}", i % 40)
}

/// 773 vocabularies: status buckets 75/23/125/27/523, 521 serving RDF.
pub fn lov_exchanges() -> Vec<Exchange> {
    let mut ex = Vec::new();
    let mut listing = Vec::new();
    // Spread the outcome classes over the listing order.
    let mut order: Vec<usize> = (0..773).collect();
    order.sort_by_key(|&i| (i * 389) % 773);
    let mut class = vec![""; 773];
    let plan = [("dns", 60), ("timeout", 15), ("loop", 20), ("300", 3), ("404", 100), ("410", 10), ("406", 15), ("500", 20), ("503", 7), ("see-other", 40), ("rdf", 378), ("html", 103), ("namespace-only", 2)];
    let mut k = 0;
    for (name, n) in plan {
        for _ in 0..n {
            class[order[k]] = name;
            k += 1;
        }
    }
    assert_eq!(k, 773);
    for i in 0..773usize {
        let prefix = if class[i] == "namespace-only" && !listing.iter().any(|v: &serde_json::Value| v["prefix"] == "schema") { "schema".to_string() } else { format!("v{i:03}") };
        let uri = lov_vocab_uri(i);
        listing.push(json!({ "prefix": prefix, "uri": uri, "nsp": format!("{uri}#"), "titles": [{ "value": format!("Vocabulary {i}"), "lang": "en" }] }));
        let doc = rdfxml_document(&format!("{uri}#"), "Term");
        match class[i] {
            "dns" | "timeout" => ex.push(failure(&uri, class[i])),
            "loop" => {
                let mut r = response(&uri, 301, None, "");
                r.headers.insert("location".into(), uri.clone());
                ex.push(r);
            }
            "see-other" => {
                let mut r = response(&uri, 303, None, "");
                r.headers.insert("location".into(), format!("{uri}.rdf"));
                ex.push(r);
                ex.push(response(&format!("{uri}.rdf"), 200, Some("application/rdf+xml"), &doc));
            }
            "rdf" => ex.push(response(&uri, 200, Some("application/rdf+xml"), &doc)),
            "html" => {
                let mut html = response(&uri, 200, Some("text/html"), "<!DOCTYPE html><html><body>Vocabulary</body></html>");
                html.accept = Some("application/rdf+xml".into());
                ex.push(html);
                let mut ttl = response(&uri, 200, Some("text/turtle"), &format!("<{uri}#Term> a <http://www.w3.org/2002/07/owl#Class> .\n"));
                ttl.accept = Some("text/turtle".into());
                ex.push(ttl);
            }
            "namespace-only" => ex.push(response(
                &uri,
                200,
                Some("application/rdf+xml"),
                "<?xml version=\"1.0\"?>\n<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\" xmlns:schema=\"http://schema.org/\"/>\n",
            )),
            code => ex.push(response(&uri, code.parse().unwrap(), Some("text/plain"), "error")),
        }
    }
    ex.insert(0, ok_json(&format!("{LOV}/api/v2/vocabulary/list"), json!(listing)));
    ex
}
