use super::error::ParseError;
use super::graph::{Graph, GraphBuilder};
use super::iri;
use super::term::{Literal, Term, Triple};
use super::ParseOptions;
use crate::vocab;

pub(super) fn parse(text: &str, options: &ParseOptions) -> Result<Graph, ParseError> {
    let mut builder = GraphBuilder::default();
    for (n, line) in text.split('\n').enumerate() {
        match parse_ntriples_line(line) {
            Ok(Some(t)) => builder.push(t),
            Ok(None) => {}
            Err((col, msg)) => {
                if options.strict {
                    return Err(ParseError::Syntax { line: n + 1, column: col, message: msg });
                }
                builder.diagnostics.skipped_lines += 1;
            }
        }
    }
    Ok(builder.build())
}

struct Cursor<'a> {
    s: &'a str,
    i: usize,
}

type LineError = (usize, String);

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LineError> {
        Err((self.s[..self.i].chars().count() + 1, msg.into()))
    }

    fn peek(&self) -> Option<char> {
        self.s[self.i..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.i += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LineError> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn iri(&mut self) -> Result<String, LineError> {
        self.expect('<')?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return self.err("unterminated IRI"),
                Some('>') => break,
                Some('\\') => out.push(self.uchar()?),
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return self.err(format!("character {c:?} not allowed in IRI"))
                }
                Some(c) => out.push(c),
            }
        }
        if !iri::is_absolute(&out) {
            return self.err(format!("relative IRI <{out}> in N-Triples"));
        }
        Ok(out)
    }

    fn uchar(&mut self) -> Result<char, LineError> {
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return self.err("bad escape in IRI"),
        };
        self.hex(len)
    }

    fn hex(&mut self, len: usize) -> Result<char, LineError> {
        let digits = self.s.get(self.i..self.i + len).unwrap_or("");
        if digits.len() != len || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return self.err("bad unicode escape");
        }
        self.i += len;
        u32::from_str_radix(digits, 16)
            .ok()
            .and_then(char::from_u32)
            .map_or_else(|| self.err("escape is not a scalar value"), Ok)
    }

    fn blank(&mut self) -> Result<String, LineError> {
        if !self.s[self.i..].starts_with("_:") {
            return self.err("expected blank node");
        }
        self.i += 2;
        let start = self.i;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{b7}') {
                self.i += c.len_utf8();
            } else {
                break;
            }
        }
        while self.i > start && self.s[..self.i].ends_with('.') {
            self.i -= 1;
        }
        if self.i == start {
            return self.err("empty blank node label");
        }
        Ok(self.s[start..self.i].to_string())
    }

    fn literal(&mut self) -> Result<Literal, LineError> {
        self.expect('"')?;
        let mut lex = String::new();
        loop {
            match self.bump() {
                None => return self.err("unterminated literal"),
                Some('"') => break,
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
                    lex.push(c);
                }
                Some('\n') | Some('\r') => return self.err("raw line break in literal"),
                Some(c) => lex.push(c),
            }
        }
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
            Ok(Literal::lang(lex, tag))
        } else if self.s[self.i..].starts_with("^^") {
            self.i += 2;
            let dt = self.iri()?;
            Ok(Literal::typed(lex, dt))
        } else {
            Ok(Literal::plain(lex))
        }
    }
}

/// The lexical shape N-Triples and Turtle require of a language tag.
pub(super) fn valid_lang_syntax(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or("");
    !first.is_empty()
        && first.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

/// Parse one N-Triples line. Blank and comment lines yield `Ok(None)`; errors
/// carry the 1-based column.
pub fn parse_ntriples_line(line: &str) -> Result<Option<Triple>, (usize, String)> {
    let mut c = Cursor { s: line, i: 0 };
    c.skip_ws();
    match c.peek() {
        None | Some('#') | Some('\n') => return Ok(None),
        _ => {}
    }
    let subject = match c.peek() {
        Some('<') => Term::Iri(c.iri()?),
        Some('_') => Term::BlankNode(c.blank()?),
        _ => return c.err("expected subject"),
    };
    c.skip_ws();
    let predicate = c.iri()?;
    c.skip_ws();
    let object = match c.peek() {
        Some('<') => Term::Iri(c.iri()?),
        Some('_') => Term::BlankNode(c.blank()?),
        Some('"') => Term::Literal(c.literal()?),
        _ => return c.err("expected object"),
    };
    c.skip_ws();
    c.expect('.')?;
    c.skip_ws();
    match c.peek() {
        None | Some('#') => Ok(Some(Triple::new(subject, predicate, object))),
        _ => c.err("trailing content after '.'"),
    }
}

fn write_iri(out: &mut String, iri: &str) {
    out.push('<');
    for ch in iri.chars() {
        if ch <= ' ' || matches!(ch, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
            out.push_str(&format!("\\u{:04X}", ch as u32));
        } else {
            out.push(ch);
        }
    }
    out.push('>');
}

/// Append the N-Triples form of a term.
pub fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(i) => write_iri(out, i),
        Term::BlankNode(b) => {
            out.push_str("_:");
            out.push_str(b);
        }
        Term::Literal(l) => {
            out.push('"');
            for ch in l.lexical().chars() {
                match ch {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\r' => out.push_str("\\r"),
                    c => out.push(c),
                }
            }
            out.push('"');
            if let Some(tag) = l.language() {
                out.push('@');
                out.push_str(tag);
            } else if l.datatype() != vocab::xsd::STRING {
                out.push_str("^^");
                write_iri(out, l.datatype());
            }
        }
    }
}

/// Serialize as N-Triples with lines ordered by subject, predicate, object.
pub fn to_ntriples(graph: &Graph) -> String {
    let mut rows: Vec<(String, String, String)> = graph
        .triples()
        .iter()
        .map(|t| {
            let mut s = String::new();
            write_term(&mut s, &t.subject);
            let mut p = String::new();
            write_iri(&mut p, &t.predicate);
            let mut o = String::new();
            write_term(&mut o, &t.object);
            (s, p, o)
        })
        .collect();
    rows.sort();
    let mut out = String::new();
    for (s, p, o) in rows {
        out.push_str(&s);
        out.push(' ');
        out.push_str(&p);
        out.push(' ');
        out.push_str(&o);
        out.push_str(" .\n");
    }
    out
}
