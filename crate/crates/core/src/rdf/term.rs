use std::fmt;

use crate::vocab;

/// An RDF term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    /// Document-scoped label; never compared across documents.
    BlankNode(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(s: impl Into<String>) -> Self {
        Term::Iri(s.into())
    }

    pub fn blank(s: impl Into<String>) -> Self {
        Term::BlankNode(s.into())
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        super::ntriples::write_term(&mut s, self);
        f.write_str(&s)
    }
}

/// A literal. Language-tagged literals always carry `rdf:langString`; literals
/// written without tag or datatype carry `xsd:string`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: String,
    language: Option<String>,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), datatype: vocab::xsd::STRING.to_string(), language: None }
    }

    /// The tag is stored as written; normalization happens in [`crate::lang`].
    pub fn lang(lexical: impl Into<String>, tag: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: vocab::rdf::LANG_STRING.to_string(),
            language: Some(tag.into()),
        }
    }

    /// A typed literal. `rdf:langString` without a tag is not representable, so
    /// it degrades to `xsd:string`.
    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        let datatype = datatype.into();
        let datatype = if datatype == vocab::rdf::LANG_STRING {
            vocab::xsd::STRING.to_string()
        } else {
            datatype
        };
        Literal { lexical: lexical.into(), datatype, language: None }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &str {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

/// A triple. The predicate is always an IRI and the subject is never a literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: String,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: impl Into<String>, object: Term) -> Self {
        debug_assert!(!subject.is_literal(), "literal subject");
        Triple { subject, predicate: predicate.into(), object }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tagged_literals_are_lang_strings() {
        let l = Literal::lang("Person", "en");
        assert_eq!(l.datatype(), vocab::rdf::LANG_STRING);
        assert_eq!(l.language(), Some("en"));
        assert_eq!(Literal::plain("x").datatype(), vocab::xsd::STRING);
        assert_eq!(Literal::typed("x", vocab::rdf::LANG_STRING).datatype(), vocab::xsd::STRING);
    }
}
