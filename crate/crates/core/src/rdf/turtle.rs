use std::collections::HashMap;

use super::error::ParseError;
use super::graph::{Graph, GraphBuilder};
use super::iri;
use super::ntriples::valid_lang_syntax;
use super::term::{Literal, Term, Triple};
use crate::vocab;

pub(super) fn parse(text: &str, base: Option<&str>) -> Result<Graph, ParseError> {
    let mut p = Parser {
        s: text,
        i: 0,
        base: base.map(str::to_string),
        prefixes: HashMap::new(),
        blanks: HashMap::new(),
        fresh: 0,
        out: GraphBuilder::default(),
    };
    if let Some(b) = base {
        p.out.set_base(b);
    }
    p.document()?;
    Ok(p.out.build())
}

struct Parser<'a> {
    s: &'a str,
    i: usize,
    base: Option<String>,
    prefixes: HashMap<String, String>,
    blanks: HashMap<String, String>,
    fresh: usize,
    out: GraphBuilder,
}

type PResult<T> = Result<T, ParseError>;

fn is_pn_chars_base(c: char) -> bool {
    c.is_ascii_alphabetic()
        || matches!(c,
            '\u{C0}'..='\u{D6}' | '\u{D8}'..='\u{F6}' | '\u{F8}'..='\u{2FF}' | '\u{370}'..='\u{37D}'
            | '\u{37F}'..='\u{1FFF}' | '\u{200C}'..='\u{200D}' | '\u{2070}'..='\u{218F}'
            | '\u{2C00}'..='\u{2FEF}' | '\u{3001}'..='\u{D7FF}' | '\u{F900}'..='\u{FDCF}'
            | '\u{FDF0}'..='\u{FFFD}' | '\u{10000}'..='\u{EFFFF}')
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || matches!(c, '\u{B7}' | '\u{300}'..='\u{36F}' | '\u{203F}'..='\u{2040}')
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::syntax_at(self.s, self.i, msg))
    }

    fn rest(&self) -> &'a str {
        &self.s[self.i..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += c.len_utf8();
        Some(c)
    }

    fn ws(&mut self) {
        loop {
            match self.peek() {
                Some(' ' | '\t' | '\r' | '\n') => self.i += 1,
                Some('#') => {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.ws();
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn keyword_ci(&self, kw: &str) -> bool {
        let r = self.rest();
        r.len() >= kw.len()
            && r[..kw.len()].eq_ignore_ascii_case(kw)
            && r[kw.len()..].chars().next().is_none_or(|c| c.is_whitespace() || c == '<')
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.ws();
            if self.peek().is_none() {
                return Ok(());
            }
            if self.rest().starts_with("@prefix") {
                self.i += 7;
                self.prefix_decl()?;
                self.expect('.')?;
            } else if self.rest().starts_with("@base") {
                self.i += 5;
                self.base_decl()?;
                self.expect('.')?;
            } else if self.keyword_ci("PREFIX") {
                self.i += 6;
                self.prefix_decl()?;
            } else if self.keyword_ci("BASE") {
                self.i += 4;
                self.base_decl()?;
            } else {
                self.triples()?;
                self.expect('.')?;
            }
        }
    }

    fn prefix_decl(&mut self) -> PResult<()> {
        self.ws();
        let start = self.i;
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if c.is_whitespace() {
                return self.err("expected ':' in prefix declaration");
            }
            self.bump();
        }
        let name = self.s[start..self.i].to_string();
        if !name.is_empty() && !valid_pn_prefix(&name) {
            return self.err(format!("invalid prefix name '{name}'"));
        }
        if !self.eat(':') {
            return self.err("expected ':' in prefix declaration");
        }
        self.ws();
        let ns = self.iriref()?;
        self.out.add_prefix(&name, &ns);
        self.prefixes.insert(name, ns);
        Ok(())
    }

    fn base_decl(&mut self) -> PResult<()> {
        self.ws();
        let b = self.iriref()?;
        self.out.set_base(&b);
        self.base = Some(b);
        Ok(())
    }

    fn iriref(&mut self) -> PResult<String> {
        if !self.eat('<') {
            return self.err("expected '<'");
        }
        let mut raw = String::new();
        loop {
            match self.bump() {
                None => return self.err("unterminated IRI"),
                Some('>') => break,
                Some('\\') => {
                    let len = match self.bump() {
                        Some('u') => 4,
                        Some('U') => 8,
                        _ => return self.err("bad escape in IRI"),
                    };
                    raw.push(self.hex(len)?);
                }
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return self.err(format!("character {c:?} not allowed in IRI"))
                }
                Some(c) => raw.push(c),
            }
        }
        Ok(iri::resolve(self.base.as_deref(), &raw))
    }

    fn hex(&mut self, len: usize) -> PResult<char> {
        let digits = self.s.get(self.i..self.i + len).unwrap_or("");
        if digits.len() != len || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return self.err("bad unicode escape");
        }
        self.i += len;
        match u32::from_str_radix(digits, 16).ok().and_then(char::from_u32) {
            Some(c) => Ok(c),
            None => self.err("escape is not a scalar value"),
        }
    }

    fn fresh_blank(&mut self) -> Term {
        self.fresh += 1;
        Term::BlankNode(format!("b{}", self.fresh))
    }

    fn emit(&mut self, s: Term, p: String, o: Term) {
        self.out.push(Triple::new(s, p, o));
    }

    fn triples(&mut self) -> PResult<()> {
        self.ws();
        if self.peek() == Some('[') {
            let subject = self.blank_node_property_list()?;
            self.ws();
            if self.peek() != Some('.') {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = match self.peek() {
            Some('(') => self.collection()?,
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label()?,
            _ => Term::Iri(self.iri()?),
        };
        self.predicate_object_list(&subject)
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            self.ws();
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.ws();
            if !self.eat(';') {
                return Ok(());
            }
            loop {
                self.ws();
                if !self.eat(';') {
                    break;
                }
            }
            self.ws();
            if matches!(self.peek(), Some('.' | ']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<String> {
        if self.peek() == Some('a')
            && self.peek_at(1).is_none_or(|c| c.is_whitespace() || matches!(c, '<' | '[' | '"' | '('))
        {
            self.i += 1;
            return Ok(vocab::rdf::TYPE.to_string());
        }
        self.iri()
    }

    fn object_list(&mut self, subject: &Term, predicate: &str) -> PResult<()> {
        loop {
            self.ws();
            let o = self.object()?;
            self.emit(subject.clone(), predicate.to_string(), o);
            self.ws();
            if !self.eat(',') {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('[') => self.blank_node_property_list(),
            Some('(') => self.collection(),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('"' | '\'') => Ok(Term::Literal(self.rdf_literal()?)),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => {
                Ok(Term::Literal(self.numeric()?))
            }
            _ if self.bool_kw("true") => {
                self.i += 4;
                Ok(Term::Literal(Literal::typed("true", vocab::xsd::BOOLEAN)))
            }
            _ if self.bool_kw("false") => {
                self.i += 5;
                Ok(Term::Literal(Literal::typed("false", vocab::xsd::BOOLEAN)))
            }
            None => self.err("unexpected end of input, expected object"),
            _ => Ok(Term::Iri(self.iri()?)),
        }
    }

    fn bool_kw(&self, kw: &str) -> bool {
        self.rest().starts_with(kw)
            && !self.rest()[kw.len()..].starts_with(|c: char| is_pn_chars(c) || c == ':')
    }

    fn blank_node_property_list(&mut self) -> PResult<Term> {
        self.expect('[')?;
        let node = self.fresh_blank();
        self.ws();
        if self.eat(']') {
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.expect(']')?;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Term> {
        self.expect('(')?;
        let mut items = Vec::new();
        loop {
            self.ws();
            if self.eat(')') {
                break;
            }
            if self.peek().is_none() {
                return self.err("unterminated collection");
            }
            items.push(self.object()?);
        }
        if items.is_empty() {
            return Ok(Term::iri(vocab::rdf::NIL));
        }
        let nodes: Vec<Term> = items.iter().map(|_| self.fresh_blank()).collect();
        for (k, item) in items.into_iter().enumerate() {
            self.emit(nodes[k].clone(), vocab::rdf::FIRST.into(), item);
            let rest = nodes.get(k + 1).cloned().unwrap_or_else(|| Term::iri(vocab::rdf::NIL));
            self.emit(nodes[k].clone(), vocab::rdf::REST.into(), rest);
        }
        Ok(nodes[0].clone())
    }

    fn blank_label(&mut self) -> PResult<Term> {
        self.i += 2;
        let start = self.i;
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                self.bump();
            }
            _ => return self.err("invalid blank node label"),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == '.' {
                self.bump();
            } else {
                break;
            }
        }
        while self.s[..self.i].ends_with('.') && self.i > start + 1 {
            self.i -= 1;
        }
        let label = self.s[start..self.i].to_string();
        let next = self.blanks.len() + 1;
        let id = self.blanks.entry(label).or_insert_with(|| format!("n{next}")).clone();
        Ok(Term::BlankNode(id))
    }

    fn iri(&mut self) -> PResult<String> {
        if self.peek() == Some('<') {
            return self.iriref();
        }
        self.prefixed_name()
    }

    fn prefixed_name(&mut self) -> PResult<String> {
        let start = self.i;
        if let Some(c) = self.peek() {
            if is_pn_chars_base(c) {
                self.bump();
                while let Some(c) = self.peek() {
                    if is_pn_chars(c) || c == '.' {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        let prefix = &self.s[start..self.i];
        if prefix.ends_with('.') || self.peek() != Some(':') {
            self.i = start;
            return self.err("expected IRI or prefixed name");
        }
        let prefix = prefix.to_string();
        self.i += 1;
        let Some(ns) = self.prefixes.get(&prefix).cloned() else {
            self.i = start;
            return self.err(format!("undeclared prefix '{prefix}:'"));
        };
        let local = self.local_name()?;
        Ok(format!("{ns}{local}"))
    }

    fn local_name(&mut self) -> PResult<String> {
        let mut out = String::new();
        let mut first = true;
        // Byte offset and output length after the last character that may end a name.
        let mut last_good = (self.i, 0usize);
        loop {
            let Some(c) = self.peek() else { break };
            let ok_first = is_pn_chars_u(c) || c == ':' || c.is_ascii_digit();
            let ok_rest = is_pn_chars(c) || c == ':' || c == '.';
            if c == '%' {
                let h = self.s.get(self.i + 1..self.i + 3).unwrap_or("");
                if h.len() != 2 || !h.chars().all(|x| x.is_ascii_hexdigit()) {
                    return self.err("bad percent escape in local name");
                }
                out.push('%');
                out.push_str(h);
                self.i += 3;
            } else if c == '\\' {
                let e = self.peek_at(1);
                match e {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => {
                        out.push(e);
                        self.i += 1 + e.len_utf8();
                    }
                    _ => return self.err("bad escape in local name"),
                }
            } else if (first && ok_first) || (!first && ok_rest) {
                out.push(c);
                self.bump();
                if c == '.' {
                    first = false;
                    continue;
                }
            } else {
                break;
            }
            first = false;
            last_good = (self.i, out.len());
        }
        self.i = last_good.0;
        out.truncate(last_good.1);
        Ok(out)
    }

    fn rdf_literal(&mut self) -> PResult<Literal> {
        let lex = self.string()?;
        if self.peek() == Some('@') {
            self.i += 1;
            let start = self.i;
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '-' {
                    self.i += 1;
                } else {
                    break;
                }
            }
            let tag = &self.s[start..self.i];
            if !valid_lang_syntax(tag) {
                return self.err(format!("malformed language tag '{tag}'"));
            }
            return Ok(Literal::lang(lex, tag));
        }
        if self.rest().starts_with("^^") {
            self.i += 2;
            let dt = self.iri()?;
            return Ok(Literal::typed(lex, dt));
        }
        Ok(Literal::plain(lex))
    }

    fn string(&mut self) -> PResult<String> {
        let q = self.bump().expect("quote");
        let long = self.rest().starts_with(&format!("{q}{q}"));
        if long {
            self.i += 2;
        }
        let mut out = String::new();
        loop {
            if long && self.rest().starts_with(&format!("{q}{q}{q}")) {
                self.i += 3;
                // A long string may end with up to two further quote characters.
                while self.peek() == Some(q) {
                    out.push(q);
                    self.i += 1;
                }
                return Ok(out);
            }
            match self.bump() {
                None => return self.err("unterminated string"),
                Some(c) if c == q && !long => return Ok(out),
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex(4)?,
                        Some('U') => self.hex(8)?,
                        _ => return self.err("bad string escape"),
                    };
                    out.push(c);
                }
                Some('\n' | '\r') if !long => return self.err("line break in short string"),
                Some(c) => out.push(c),
            }
        }
    }

    fn numeric(&mut self) -> PResult<Literal> {
        let start = self.i;
        if matches!(self.peek(), Some('+' | '-')) {
            self.i += 1;
        }
        let digits = |p: &mut Self| {
            let s = p.i;
            while matches!(p.peek(), Some('0'..='9')) {
                p.i += 1;
            }
            p.i - s
        };
        let int_digits = digits(self);
        let mut frac_digits = 0;
        let mut has_dot = false;
        if self.peek() == Some('.') && matches!(self.peek_at(1), Some('0'..='9')) {
            has_dot = true;
            self.i += 1;
            frac_digits = digits(self);
        }
        let mut has_exp = false;
        if matches!(self.peek(), Some('e' | 'E')) && (int_digits > 0 || frac_digits > 0) {
            has_exp = true;
            self.i += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.i += 1;
            }
            if digits(self) == 0 {
                return self.err("malformed exponent");
            }
        }
        if int_digits == 0 && frac_digits == 0 {
            self.i = start;
            return self.err("expected number");
        }
        let lex = &self.s[start..self.i];
        let dt = if has_exp {
            vocab::xsd::DOUBLE
        } else if has_dot {
            vocab::xsd::DECIMAL
        } else {
            vocab::xsd::INTEGER
        };
        Ok(Literal::typed(lex, dt))
    }
}

fn valid_pn_prefix(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(is_pn_chars_base)
        && !name.ends_with('.')
        && chars.all(|c| is_pn_chars(c) || c == '.')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Graph {
        parse(s, None).unwrap()
    }

    #[test]
    fn prefixes_lists_and_literals() {
        let g = p(r#"@prefix ex: <http://ex.org/> .
            PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
            ex:a a ex:C ; rdfs:label "A"@en, 'B'@fr ;
                 ex:n 1, 2.5, 1e3, true ; .
            ex:b ex:list ( ex:x ex:y ) ; ex:bn [ ex:p """multi
            line""" ] ."#);
        assert_eq!(g.len(), 7 + 4 + 1 + 2);
        assert_eq!(g.prefix("ex"), Some("http://ex.org/"));
    }

    #[test]
    fn base_and_relative_iris() {
        let g = p("@base <http://ex.org/o#> . <#A> <#p> <B> .");
        let t = &g.triples()[0];
        assert_eq!(t.subject, Term::iri("http://ex.org/o#A"));
        assert_eq!(t.object, Term::iri("http://ex.org/B"));
        assert_eq!(g.base(), Some("http://ex.org/o#"));
    }

    #[test]
    fn local_names_with_escapes_and_trailing_dot() {
        let g = p(r"@prefix : <http://ex.org/> . :nl\/entry :p :x.y.");
        assert_eq!(g.triples()[0].subject, Term::iri("http://ex.org/nl/entry"));
        assert_eq!(g.triples()[0].object, Term::iri("http://ex.org/x.y"));
    }

    #[test]
    fn blank_labels_are_document_scoped() {
        let g = p("@prefix : <http://ex.org/> . _:x :p _:x . _:y :p _:x .");
        assert_eq!(g.len(), 2);
        let subjects: std::collections::BTreeSet<_> =
            g.triples().iter().map(|t| t.subject.clone()).collect();
        assert_eq!(subjects.len(), 2);
    }

    #[test]
    fn errors_report_positions() {
        match parse("@prefix : <http://ex.org/> .\n:a :b", None) {
            Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse("nope:a <http://x/p> <http://x/o> .", None).is_err());
    }
}
