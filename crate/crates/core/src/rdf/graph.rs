use std::collections::{BTreeMap, HashMap};

use super::term::{Term, Triple};

/// Counters collected while parsing, kept for reporting.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseDiagnostics {
    /// Literals whose language came from an inherited `xml:lang` attribute.
    pub xml_lang_literals: usize,
    /// N-Triples lines skipped in lenient mode.
    pub skipped_lines: usize,
}

/// An immutable set of triples plus the prefixes and base seen while parsing.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: Vec<Triple>,
    base: Option<String>,
    prefixes: Vec<(String, String)>,
    diagnostics: ParseDiagnostics,
    by_predicate: HashMap<String, Vec<usize>>,
    by_subject: HashMap<Term, Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Graph {
    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut b = GraphBuilder::default();
        for t in triples {
            b.push(t);
        }
        b.build()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn base(&self) -> Option<&str> {
        self.base.as_deref()
    }

    /// Prefix declarations in document order.
    pub fn prefixes(&self) -> &[(String, String)] {
        &self.prefixes
    }

    pub fn prefix(&self, name: &str) -> Option<&str> {
        self.prefixes.iter().rev().find(|(p, _)| p == name).map(|(_, ns)| ns.as_str())
    }

    pub fn diagnostics(&self) -> &ParseDiagnostics {
        &self.diagnostics
    }

    pub fn with_predicate<'a>(&'a self, predicate: &str) -> impl Iterator<Item = &'a Triple> + 'a {
        self.by_predicate
            .get(predicate)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
            .iter()
            .map(move |&i| &self.triples[i])
    }

    pub fn about<'a>(&'a self, subject: &Term) -> impl Iterator<Item = &'a Triple> + 'a {
        self.by_subject
            .get(subject)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
            .iter()
            .map(move |&i| &self.triples[i])
    }

    pub fn objects<'a>(
        &'a self,
        subject: &Term,
        predicate: &'a str,
    ) -> impl Iterator<Item = &'a Term> + 'a {
        self.about(subject).filter(move |t| t.predicate == predicate).map(|t| &t.object)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.binary_search(triple).is_ok()
    }

    pub fn has_type(&self, subject: &Term, class: &str) -> bool {
        self.objects(subject, crate::vocab::rdf::TYPE).any(|o| o.as_iri() == Some(class))
    }

    /// Union of several documents. Blank nodes are renamed per document so
    /// labels from different files never collide.
    pub fn merge<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Graph {
        let mut b = GraphBuilder::default();
        for (i, g) in graphs.into_iter().enumerate() {
            let scope = |t: &Term| match t {
                Term::BlankNode(l) => Term::BlankNode(format!("d{i}_{l}")),
                other => other.clone(),
            };
            for t in &g.triples {
                b.push(Triple::new(scope(&t.subject), t.predicate.clone(), scope(&t.object)));
            }
            for (p, ns) in &g.prefixes {
                b.add_prefix(p, ns);
            }
            if b.base.is_none() {
                b.base = g.base.clone();
            }
            b.diagnostics.xml_lang_literals += g.diagnostics.xml_lang_literals;
            b.diagnostics.skipped_lines += g.diagnostics.skipped_lines;
        }
        b.build()
    }

    /// Graph equality up to a renaming of blank nodes.
    pub fn isomorphic(&self, other: &Graph) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let ground = |t: &Triple| !t.subject.is_blank() && !t.object.is_blank();
        let (ga, ba): (Vec<&Triple>, Vec<&Triple>) = self.triples.iter().partition(|t| ground(t));
        let (gb, bb): (Vec<&Triple>, Vec<&Triple>) = other.triples.iter().partition(|t| ground(t));
        if ga != gb || ba.len() != bb.len() {
            return false;
        }
        if ba.is_empty() {
            return true;
        }
        let ca = colour_blank_nodes(&ba);
        let cb = colour_blank_nodes(&bb);
        let mut classes_a: BTreeMap<u64, Vec<&str>> = BTreeMap::new();
        for (n, c) in &ca {
            classes_a.entry(*c).or_default().push(n);
        }
        let mut classes_b: BTreeMap<u64, Vec<&str>> = BTreeMap::new();
        for (n, c) in &cb {
            classes_b.entry(*c).or_default().push(n);
        }
        if classes_a.len() != classes_b.len()
            || classes_a.iter().zip(&classes_b).any(|(a, b)| a.0 != b.0 || a.1.len() != b.1.len())
        {
            return false;
        }
        let target: std::collections::HashSet<&Triple> = bb.iter().copied().collect();
        let groups: Vec<(Vec<&str>, Vec<&str>)> = classes_a
            .into_iter()
            .map(|(c, a)| (a, classes_b.remove(&c).unwrap_or_default()))
            .collect();
        let mut mapping = HashMap::new();
        search_mapping(&groups, 0, &mut mapping, &mut Vec::new(), &ba, &target)
    }
}

fn colour_blank_nodes<'a>(triples: &[&'a Triple]) -> HashMap<&'a str, u64> {
    use std::hash::{Hash, Hasher};
    let hash_of = |v: &dyn Fn(&mut std::collections::hash_map::DefaultHasher)| {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        v(&mut h);
        h.finish()
    };
    let mut colour: HashMap<&str, u64> = HashMap::new();
    for t in triples {
        for term in [&t.subject, &t.object] {
            if let Term::BlankNode(l) = term {
                colour.insert(l.as_str(), 0);
            }
        }
    }
    let term_key = |term: &Term, colour: &HashMap<&str, u64>| -> u64 {
        match term {
            Term::BlankNode(l) => colour[l.as_str()].wrapping_add(1),
            other => hash_of(&|h| other.hash(h)),
        }
    };
    for _ in 0..4 {
        let mut next: HashMap<&str, Vec<u64>> = HashMap::new();
        for t in triples {
            let p = hash_of(&|h| t.predicate.hash(h));
            if let Term::BlankNode(l) = &t.subject {
                let o = term_key(&t.object, &colour);
                next.entry(l.as_str()).or_default().push(hash_of(&|h| (1u8, p, o).hash(h)));
            }
            if let Term::BlankNode(l) = &t.object {
                let s = term_key(&t.subject, &colour);
                next.entry(l.as_str()).or_default().push(hash_of(&|h| (2u8, p, s).hash(h)));
            }
        }
        for (node, mut sig) in next {
            sig.sort_unstable();
            colour.insert(node, hash_of(&|h| sig.hash(h)));
        }
    }
    colour
}

fn search_mapping<'a>(
    groups: &[(Vec<&'a str>, Vec<&'a str>)],
    index: usize,
    mapping: &mut HashMap<&'a str, &'a str>,
    used: &mut Vec<&'a str>,
    source: &[&Triple],
    target: &std::collections::HashSet<&Triple>,
) -> bool {
    let flat: Vec<&str> = groups.iter().flat_map(|(a, _)| a.iter().copied()).collect();
    if index == flat.len() {
        let rename = |t: &Term| match t {
            Term::BlankNode(l) => Term::BlankNode(mapping[l.as_str()].to_string()),
            other => other.clone(),
        };
        return source.iter().all(|t| {
            let mapped = Triple::new(rename(&t.subject), t.predicate.clone(), rename(&t.object));
            target.contains(&mapped)
        });
    }
    let node = flat[index];
    let candidates = &groups.iter().find(|(a, _)| a.contains(&node)).expect("node in a group").1;
    for &cand in candidates {
        if used.contains(&cand) {
            continue;
        }
        mapping.insert(node, cand);
        used.push(cand);
        if search_mapping(groups, index + 1, mapping, used, source, target) {
            return true;
        }
        used.pop();
        mapping.remove(node);
    }
    false
}

/// Accumulates triples during parsing; `build` sorts, deduplicates and indexes.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    triples: Vec<Triple>,
    pub(crate) base: Option<String>,
    prefixes: Vec<(String, String)>,
    pub(crate) diagnostics: ParseDiagnostics,
}

impl GraphBuilder {
    pub fn push(&mut self, triple: Triple) {
        self.triples.push(triple);
    }

    pub fn add_prefix(&mut self, prefix: &str, namespace: &str) {
        self.prefixes.retain(|(p, _)| p != prefix);
        self.prefixes.push((prefix.to_string(), namespace.to_string()));
    }

    pub fn set_base(&mut self, base: &str) {
        self.base = Some(base.to_string());
    }

    pub fn build(mut self) -> Graph {
        self.triples.sort_unstable();
        self.triples.dedup();
        let mut by_predicate: HashMap<String, Vec<usize>> = HashMap::new();
        let mut by_subject: HashMap<Term, Vec<usize>> = HashMap::new();
        for (i, t) in self.triples.iter().enumerate() {
            by_predicate.entry(t.predicate.clone()).or_default().push(i);
            by_subject.entry(t.subject.clone()).or_default().push(i);
        }
        Graph {
            triples: self.triples,
            base: self.base,
            prefixes: self.prefixes,
            diagnostics: self.diagnostics,
            by_predicate,
            by_subject,
        }
    }
}
