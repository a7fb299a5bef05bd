//! RDF/XML subset: node elements (typed or `rdf:Description`), property
//! elements and property attributes, `rdf:about`/`rdf:ID`/`rdf:nodeID`/
//! `rdf:resource`, `rdf:datatype`, `xml:lang` and `xml:base` inheritance,
//! `rdf:parseType="Resource"` and `rdf:parseType="Collection"`, and internal
//! DTD entity declarations. Everything else (`parseType="Literal"`,
//! reification through `rdf:ID` on property elements, `rdf:li`, `rdf:bagID`,
//! `rdf:aboutEach`) is rejected with an error rather than dropped.

use std::collections::HashMap;

use quick_xml::events::{BytesStart, Event};
use quick_xml::name::ResolveResult;
use quick_xml::NsReader;

use super::error::ParseError;
use super::graph::{Graph, GraphBuilder};
use super::iri;
use super::term::{Literal, Term, Triple};
use crate::vocab;

const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";

#[derive(Debug, Clone)]
struct Scope {
    lang: Option<String>,
    base: Option<String>,
}

#[derive(Debug)]
enum Frame {
    Root(Scope),
    Node { subject: Term, scope: Scope },
    Property {
        subject: Term,
        predicate: String,
        scope: Scope,
        datatype: Option<String>,
        text: String,
        object: Option<Term>,
    },
    Collection { subject: Term, predicate: String, scope: Scope, items: Vec<Term> },
}

impl Frame {
    fn scope(&self) -> &Scope {
        match self {
            Frame::Root(s) => s,
            Frame::Node { scope, .. } => scope,
            Frame::Property { scope, .. } => scope,
            Frame::Collection { scope, .. } => scope,
        }
    }
}

struct Ctx<'a> {
    text: &'a str,
    entities: HashMap<String, String>,
    out: GraphBuilder,
    stack: Vec<Frame>,
    fresh: usize,
    node_ids: HashMap<String, String>,
}

struct Attr {
    ns: Option<String>,
    local: String,
    value: String,
}

pub(super) fn parse(text: &str, base: Option<&str>) -> Result<Graph, ParseError> {
    let mut reader = NsReader::from_str(text);
    let cfg = reader.config_mut();
    cfg.expand_empty_elements = true;
    cfg.trim_text(false);
    cfg.check_end_names = true;
    let mut ctx = Ctx {
        text,
        entities: HashMap::new(),
        out: GraphBuilder::default(),
        stack: Vec::new(),
        fresh: 0,
        node_ids: HashMap::new(),
    };
    if let Some(b) = base {
        ctx.out.set_base(b);
    }
    let doc_scope = Scope { lang: None, base: base.map(str::to_string) };
    loop {
        let pos = reader.buffer_position() as usize;
        let event = reader.read_event().map_err(|e| ParseError::syntax_at(text, pos, e.to_string()))?;
        match event {
            Event::Eof => break,
            Event::DocType(d) => {
                let raw = String::from_utf8_lossy(&d).into_owned();
                ctx.entities.extend(parse_entities(&raw));
            }
            Event::Start(e) => {
                let (ns, local) = resolve(&reader, &e, true, text, pos)?;
                let attrs = ctx.attributes(&reader, &e, pos)?;
                for (prefix, nsv) in declared_namespaces(&e) {
                    ctx.out.add_prefix(&prefix, &nsv);
                }
                ctx.start(ns, local, attrs, &doc_scope, pos)?;
            }
            Event::End(_) => ctx.end(pos)?,
            Event::Text(t) => {
                let s = t
                    .unescape_with(|name| entity(&ctx.entities, name))
                    .map_err(|e| ParseError::syntax_at(text, pos, e.to_string()))?;
                ctx.text_content(&s, pos)?;
            }
            Event::CData(c) => {
                let s = String::from_utf8_lossy(&c).into_owned();
                ctx.text_content(&s, pos)?;
            }
            Event::Comment(_) | Event::Decl(_) | Event::PI(_) | Event::Empty(_) => {}
        }
    }
    if !ctx.stack.is_empty() {
        return Err(ParseError::syntax_at(text, text.len(), "unexpected end of document"));
    }
    Ok(ctx.out.build())
}

fn resolve(
    reader: &NsReader<&[u8]>,
    e: &BytesStart<'_>,
    element: bool,
    text: &str,
    pos: usize,
) -> Result<(Option<String>, String), ParseError> {
    let (res, local) = if element {
        reader.resolve_element(e.name())
    } else {
        reader.resolve_attribute(e.name())
    };
    let local = String::from_utf8_lossy(local.as_ref()).into_owned();
    match res {
        ResolveResult::Bound(ns) => Ok((Some(String::from_utf8_lossy(ns.as_ref()).into_owned()), local)),
        ResolveResult::Unbound => Ok((None, local)),
        ResolveResult::Unknown(p) => Err(ParseError::syntax_at(
            text,
            pos,
            format!("undeclared namespace prefix '{}'", String::from_utf8_lossy(&p)),
        )),
    }
}

fn declared_namespaces(e: &BytesStart<'_>) -> Vec<(String, String)> {
    e.attributes()
        .flatten()
        .filter_map(|a| {
            let key = String::from_utf8_lossy(a.key.as_ref()).into_owned();
            let value = String::from_utf8_lossy(&a.value).into_owned();
            if key == "xmlns" {
                Some((String::new(), value))
            } else {
                key.strip_prefix("xmlns:").map(|p| (p.to_string(), value))
            }
        })
        .collect()
}

/// `<!ENTITY name "value">` declarations from an internal subset.
// A custom resolver replaces the predefined XML entities, so fall back to them.
fn entity<'a>(declared: &'a HashMap<String, String>, name: &str) -> Option<&'a str> {
    declared.get(name).map(String::as_str).or_else(|| quick_xml::escape::resolve_predefined_entity(name))
}

fn parse_entities(doctype: &str) -> HashMap<String, String> {
    let mut out = HashMap::new();
    let mut rest = doctype;
    while let Some(i) = rest.find("<!ENTITY") {
        rest = &rest[i + 8..];
        let trimmed = rest.trim_start();
        let name_end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let name = &trimmed[..name_end];
        let after = trimmed[name_end..].trim_start();
        let Some(q) = after.chars().next().filter(|c| *c == '"' || *c == '\'') else {
            continue;
        };
        if let Some(end) = after[1..].find(q) {
            out.insert(name.to_string(), after[1..1 + end].to_string());
        }
    }
    out
}

fn is_rdf(ns: &Option<String>, local: &str) -> bool {
    ns.as_deref() == Some(vocab::RDF) && !local.is_empty()
}

impl<'a> Ctx<'a> {
    fn attributes(
        &self,
        reader: &NsReader<&[u8]>,
        e: &BytesStart<'_>,
        pos: usize,
    ) -> Result<Vec<Attr>, ParseError> {
        let mut out = Vec::new();
        for a in e.attributes() {
            let a = a.map_err(|err| ParseError::syntax_at(self.text, pos, err.to_string()))?;
            let key = a.key.as_ref();
            if key == b"xmlns" || key.starts_with(b"xmlns:") {
                continue;
            }
            let (res, local) = reader.resolve_attribute(a.key);
            let local = String::from_utf8_lossy(local.as_ref()).into_owned();
            let ns = match res {
                ResolveResult::Bound(ns) => Some(String::from_utf8_lossy(ns.as_ref()).into_owned()),
                ResolveResult::Unbound => None,
                ResolveResult::Unknown(p) => {
                    if p == b"xml" {
                        Some(XML_NS.to_string())
                    } else {
                        return Err(ParseError::syntax_at(
                            self.text,
                            pos,
                            format!("undeclared namespace prefix '{}'", String::from_utf8_lossy(&p)),
                        ));
                    }
                }
            };
            let value = a
                .unescape_value_with(|name| entity(&self.entities, name))
                .map_err(|err| ParseError::syntax_at(self.text, pos, err.to_string()))?
                .into_owned();
            out.push(Attr { ns, local, value });
        }
        Ok(out)
    }

    fn fresh_blank(&mut self) -> Term {
        self.fresh += 1;
        Term::BlankNode(format!("b{}", self.fresh))
    }

    fn node_id(&mut self, label: &str) -> Term {
        let next = self.node_ids.len() + 1;
        let id = self.node_ids.entry(label.to_string()).or_insert_with(|| format!("n{next}")).clone();
        Term::BlankNode(id)
    }

    fn emit(&mut self, s: Term, p: &str, o: Term) {
        self.out.push(Triple::new(s, p, o));
    }

    fn literal(&mut self, lexical: String, scope: &Scope, datatype: Option<String>) -> Term {
        match (datatype, &scope.lang) {
            (Some(dt), _) => Term::Literal(Literal::typed(lexical, dt)),
            (None, Some(lang)) => {
                self.out.diagnostics.xml_lang_literals += 1;
                Term::Literal(Literal::lang(lexical, lang.clone()))
            }
            (None, None) => Term::Literal(Literal::plain(lexical)),
        }
    }

    fn scope_for(&self, parent: &Scope, attrs: &[Attr]) -> Scope {
        let mut scope = parent.clone();
        for a in attrs {
            if a.ns.as_deref() == Some(XML_NS) {
                match a.local.as_str() {
                    "lang" => scope.lang = (!a.value.is_empty()).then(|| a.value.clone()),
                    "base" => {
                        scope.base = Some(iri::resolve(parent.base.as_deref(), &a.value));
                    }
                    _ => {}
                }
            }
        }
        scope
    }

    fn unsupported<T>(&self, element: &str, detail: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Unsupported { element: element.to_string(), detail: detail.into() })
    }

    fn start(
        &mut self,
        ns: Option<String>,
        local: String,
        attrs: Vec<Attr>,
        doc_scope: &Scope,
        pos: usize,
    ) -> Result<(), ParseError> {
        let qname = format!("{}{}", ns.clone().unwrap_or_default(), local);
        let parent_scope = self.stack.last().map(|f| f.scope().clone()).unwrap_or_else(|| doc_scope.clone());
        let scope = self.scope_for(&parent_scope, &attrs);
        let expecting_node = match self.stack.last() {
            None => true,
            Some(Frame::Root(_)) => true,
            Some(Frame::Collection { .. }) => true,
            Some(Frame::Property { object, text, .. }) => {
                if object.is_some() {
                    return self.unsupported(&qname, "property element has more than one object");
                }
                if !text.trim().is_empty() {
                    return self.unsupported(&qname, "mixed text and element content");
                }
                true
            }
            Some(Frame::Node { .. }) => false,
        };
        if self.stack.is_empty() && is_rdf(&ns, &local) && local == "RDF" {
            self.stack.push(Frame::Root(scope));
            return Ok(());
        }
        if ns.is_none() {
            return Err(ParseError::syntax_at(self.text, pos, format!("element <{local}> has no namespace")));
        }
        if expecting_node {
            self.node_element(ns, local, qname, attrs, scope)
        } else {
            self.property_element(ns, local, qname, attrs, scope)
        }
    }

    fn node_element(
        &mut self,
        ns: Option<String>,
        local: String,
        qname: String,
        attrs: Vec<Attr>,
        scope: Scope,
    ) -> Result<(), ParseError> {
        let mut subject = None;
        let mut props = Vec::new();
        for a in &attrs {
            if a.ns.as_deref() == Some(XML_NS) {
                continue;
            }
            if is_rdf(&a.ns, &a.local) {
                match a.local.as_str() {
                    "about" => subject = Some(Term::Iri(iri::resolve(scope.base.as_deref(), &a.value))),
                    "ID" => {
                        let base = scope.base.as_deref().map(iri::strip_fragment);
                        subject = Some(Term::Iri(iri::resolve(base, &format!("#{}", a.value))));
                    }
                    "nodeID" => subject = Some(self.node_id(&a.value)),
                    "type" => props.push((vocab::rdf::TYPE.to_string(), a.value.clone(), true)),
                    other => return self.unsupported(&qname, format!("rdf:{other} attribute")),
                }
            } else if let Some(ans) = &a.ns {
                props.push((format!("{ans}{}", a.local), a.value.clone(), false));
            }
        }
        let subject = match subject {
            Some(s) => s,
            None => self.fresh_blank(),
        };
        if !(is_rdf(&ns, &local) && local == "Description") {
            if is_rdf(&ns, &local) && matches!(local.as_str(), "li" | "RDF") {
                return self.unsupported(&qname, "not allowed as a node element");
            }
            self.emit(subject.clone(), vocab::rdf::TYPE, Term::Iri(qname.clone()));
        }
        for (p, v, is_type) in props {
            let o = if is_type {
                Term::Iri(iri::resolve(scope.base.as_deref(), &v))
            } else {
                self.literal(v, &scope, None)
            };
            self.emit(subject.clone(), &p, o);
        }
        match self.stack.last_mut() {
            Some(Frame::Property { object, .. }) => *object = Some(subject.clone()),
            Some(Frame::Collection { items, .. }) => items.push(subject.clone()),
            _ => {}
        }
        if let Some(Frame::Property { subject: s, predicate, object: Some(o), .. }) = self.stack.last() {
            let (s, p, o) = (s.clone(), predicate.clone(), o.clone());
            self.emit(s, &p, o);
        }
        self.stack.push(Frame::Node { subject, scope });
        Ok(())
    }

    fn property_element(
        &mut self,
        ns: Option<String>,
        local: String,
        qname: String,
        attrs: Vec<Attr>,
        scope: Scope,
    ) -> Result<(), ParseError> {
        if is_rdf(&ns, &local)
            && matches!(local.as_str(), "li" | "Description" | "RDF" | "ID" | "about" | "bagID" | "parseType" | "resource" | "nodeID" | "aboutEach" | "aboutEachPrefix")
        {
            return self.unsupported(&qname, "not supported as a property element");
        }
        let Some(Frame::Node { subject, .. }) = self.stack.last() else {
            unreachable!("property element outside node element");
        };
        let subject = subject.clone();
        let mut resource = None;
        let mut datatype = None;
        let mut parse_type = None;
        let mut props = Vec::new();
        for a in &attrs {
            if a.ns.as_deref() == Some(XML_NS) {
                continue;
            }
            if is_rdf(&a.ns, &a.local) {
                match a.local.as_str() {
                    "resource" => resource = Some(Term::Iri(iri::resolve(scope.base.as_deref(), &a.value))),
                    "nodeID" => resource = Some(self.node_id(&a.value)),
                    "datatype" => datatype = Some(iri::resolve(scope.base.as_deref(), &a.value)),
                    "parseType" => parse_type = Some(a.value.clone()),
                    "ID" => return self.unsupported(&qname, "rdf:ID on a property element (reification)"),
                    "type" => props.push((vocab::rdf::TYPE.to_string(), a.value.clone(), true)),
                    other => return self.unsupported(&qname, format!("rdf:{other} attribute")),
                }
            } else if let Some(ans) = &a.ns {
                props.push((format!("{ans}{}", a.local), a.value.clone(), false));
            }
        }
        match parse_type.as_deref() {
            Some("Resource") => {
                let node = self.fresh_blank();
                self.emit(subject, &qname, node.clone());
                // The property element itself acts as the node element for its children.
                self.stack.push(Frame::Property {
                    subject: node.clone(),
                    predicate: String::new(),
                    scope: scope.clone(),
                    datatype: None,
                    text: String::new(),
                    object: Some(node.clone()),
                });
                self.stack.push(Frame::Node { subject: node, scope });
                return Ok(());
            }
            Some("Collection") => {
                self.stack.push(Frame::Collection { subject, predicate: qname, scope, items: Vec::new() });
                return Ok(());
            }
            Some(other) => {
                return self.unsupported(&qname, format!("rdf:parseType=\"{other}\""));
            }
            None => {}
        }
        if !props.is_empty() {
            if datatype.is_some() {
                return self.unsupported(&qname, "rdf:datatype combined with property attributes");
            }
            let node = match resource.take() {
                Some(r) => r,
                None => self.fresh_blank(),
            };
            for (p, v, is_type) in props {
                let o = if is_type {
                    Term::Iri(iri::resolve(scope.base.as_deref(), &v))
                } else {
                    self.literal(v, &scope, None)
                };
                self.emit(node.clone(), &p, o);
            }
            resource = Some(node);
        }
        let has_resource = resource.is_some();
        if let Some(r) = &resource {
            self.emit(subject.clone(), &qname, r.clone());
        }
        self.stack.push(Frame::Property {
            subject,
            predicate: qname,
            scope,
            datatype,
            text: String::new(),
            object: if has_resource { resource } else { None },
        });
        Ok(())
    }

    fn text_content(&mut self, s: &str, pos: usize) -> Result<(), ParseError> {
        match self.stack.last_mut() {
            Some(Frame::Property { text, object, .. }) => {
                if object.is_some() && !s.trim().is_empty() {
                    return Err(ParseError::syntax_at(self.text, pos, "text after a resource object"));
                }
                text.push_str(s);
                Ok(())
            }
            _ if s.trim().is_empty() => Ok(()),
            None => Ok(()),
            _ => Err(ParseError::syntax_at(self.text, pos, "unexpected text content")),
        }
    }

    fn end(&mut self, pos: usize) -> Result<(), ParseError> {
        let Some(frame) = self.stack.pop() else {
            return Err(ParseError::syntax_at(self.text, pos, "unbalanced end tag"));
        };
        match frame {
            Frame::Root(_) => {}
            Frame::Node { .. } => {
                // A parseType="Resource" property element closes both of its frames.
                if let Some(Frame::Property { predicate, .. }) = self.stack.last() {
                    if predicate.is_empty() {
                        self.stack.pop();
                    }
                }
            }
            Frame::Property { subject, predicate, scope, datatype, text, object } => {
                if object.is_none() {
                    let lit = self.literal(text, &scope, datatype);
                    self.emit(subject, &predicate, lit);
                }
            }
            Frame::Collection { subject, predicate, items, .. } => {
                let head = if items.is_empty() {
                    Term::iri(vocab::rdf::NIL)
                } else {
                    let nodes: Vec<Term> = items.iter().map(|_| self.fresh_blank()).collect();
                    for (k, item) in items.into_iter().enumerate() {
                        self.emit(nodes[k].clone(), vocab::rdf::FIRST, item);
                        let rest = nodes.get(k + 1).cloned().unwrap_or_else(|| Term::iri(vocab::rdf::NIL));
                        self.emit(nodes[k].clone(), vocab::rdf::REST, rest);
                    }
                    nodes[0].clone()
                };
                self.emit(subject, &predicate, head);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEAD: &str = r#"<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
         xmlns:owl="http://www.w3.org/2002/07/owl#"
         xmlns:ex="http://ex.org/"
         xml:base="http://ex.org/o">"#;

    fn doc(body: &str) -> String {
        format!("{HEAD}{body}</rdf:RDF>")
    }

    #[test]
    fn typed_nodes_and_lang_inheritance() {
        let g = parse(
            &doc(r##"<owl:Class rdf:about="#Person" xml:lang="en">
                <rdfs:label>Person</rdfs:label>
                <rdfs:label xml:lang="nl">Persoon</rdfs:label>
                <rdfs:subClassOf rdf:resource="http://www.w3.org/2002/07/owl#Thing"/>
            </owl:Class>"##),
            None,
        )
        .unwrap();
        assert_eq!(g.len(), 4);
        let person = Term::iri("http://ex.org/o#Person");
        let labels: Vec<_> = g.objects(&person, vocab::rdfs::LABEL).collect();
        assert!(labels.contains(&&Term::Literal(Literal::lang("Person", "en"))));
        assert!(labels.contains(&&Term::Literal(Literal::lang("Persoon", "nl"))));
        assert_eq!(g.diagnostics().xml_lang_literals, 2);
    }

    #[test]
    fn parse_type_literal_is_rejected() {
        let err = parse(
            &doc(r#"<rdf:Description rdf:about="x"><ex:p rdf:parseType="Literal"><b>hi</b></ex:p></rdf:Description>"#),
            None,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::Unsupported { ref element, .. } if element == "http://ex.org/p"));
    }

    #[test]
    fn parse_type_resource_and_datatype() {
        let g = parse(
            &doc(r#"<rdf:Description rdf:ID="a">
                <ex:p rdf:parseType="Resource"><ex:q rdf:datatype="http://www.w3.org/2001/XMLSchema#integer">5</ex:q></ex:p>
            </rdf:Description>"#),
            None,
        )
        .unwrap();
        assert_eq!(g.len(), 2);
        let a = Term::iri("http://ex.org/o#a");
        let node = g.objects(&a, "http://ex.org/p").next().unwrap().clone();
        assert!(node.is_blank());
        let v = g.objects(&node, "http://ex.org/q").next().unwrap();
        assert_eq!(v.as_literal().unwrap().datatype(), vocab::xsd::INTEGER);
    }

    #[test]
    fn doctype_entities_expand() {
        let text = r#"<?xml version="1.0"?>
<!DOCTYPE rdf:RDF [ <!ENTITY owl "http://www.w3.org/2002/07/owl#" > ]>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#" xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#">
  <rdf:Description rdf:about="http://ex.org/A"><rdfs:subClassOf rdf:resource="&owl;Thing"/></rdf:Description>
</rdf:RDF>"#;
        let g = parse(text, None).unwrap();
        assert_eq!(g.triples()[0].object, Term::iri(vocab::owl::THING));
    }

    #[test]
    fn malformed_xml_reports_position() {
        assert!(matches!(parse(&doc("<ex:A></ex:B>"), None), Err(ParseError::Syntax { .. })));
    }
}
