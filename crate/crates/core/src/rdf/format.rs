use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::error::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RdfFormat {
    NTriples,
    Turtle,
    RdfXml,
}

impl RdfFormat {
    pub fn extension(self) -> &'static str {
        match self {
            RdfFormat::NTriples => "nt",
            RdfFormat::Turtle => "ttl",
            RdfFormat::RdfXml => "rdf",
        }
    }

    pub fn from_media_type(media_type: &str) -> Option<Self> {
        let essence = media_type.split(';').next().unwrap_or("").trim().to_ascii_lowercase();
        match essence.as_str() {
            "application/rdf+xml" | "application/owl+xml+rdf" => Some(RdfFormat::RdfXml),
            "text/turtle" | "application/x-turtle" | "application/turtle" | "text/n3"
            | "text/rdf+n3" => Some(RdfFormat::Turtle),
            "application/n-triples" | "text/ntriples" => Some(RdfFormat::NTriples),
            _ => None,
        }
    }

    pub fn from_filename(name: &str) -> Option<Self> {
        let ext = name.rsplit_once('.')?.1.to_ascii_lowercase();
        match ext.as_str() {
            "rdf" | "owl" | "rdfs" | "xml" => Some(RdfFormat::RdfXml),
            "ttl" | "turtle" | "n3" => Some(RdfFormat::Turtle),
            "nt" | "ntriples" => Some(RdfFormat::NTriples),
            _ => None,
        }
    }
}

impl fmt::Display for RdfFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RdfFormat::NTriples => "ntriples",
            RdfFormat::Turtle => "turtle",
            RdfFormat::RdfXml => "rdfxml",
        })
    }
}

impl FromStr for RdfFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ntriples" | "nt" | "n-triples" => Ok(RdfFormat::NTriples),
            "turtle" | "ttl" => Ok(RdfFormat::Turtle),
            "rdfxml" | "rdf/xml" | "xml" | "rdf" => Ok(RdfFormat::RdfXml),
            other => Err(format!("unknown RDF format '{other}'")),
        }
    }
}

/// True when the leading bytes look like an HTML page.
pub fn looks_like_html(head: &[u8]) -> bool {
    let text = String::from_utf8_lossy(&head[..head.len().min(1024)]).to_ascii_lowercase();
    let t = text.trim_start_matches('\u{feff}').trim_start();
    t.starts_with("<!doctype html") || t.starts_with("<html") || (t.starts_with("<?xml") && t.contains("<html"))
}

/// Decide the serialization. A recognized media type wins over the file
/// extension, which wins over sniffing the first bytes.
pub fn detect_format(
    filename: Option<&str>,
    media_type: Option<&str>,
    head: &[u8],
) -> Result<RdfFormat, ParseError> {
    if let Some(f) = media_type.and_then(RdfFormat::from_media_type) {
        return Ok(f);
    }
    if let Some(f) = filename.and_then(RdfFormat::from_filename) {
        return Ok(f);
    }
    if looks_like_html(head) {
        return Err(ParseError::UndecidableFormat("content is an HTML page".into()));
    }
    let text = String::from_utf8_lossy(&head[..head.len().min(4096)]);
    let mut t = text.trim_start_matches('\u{feff}').trim_start();
    while t.starts_with('#') {
        t = t.split_once('\n').map(|x| x.1).unwrap_or("").trim_start();
    }
    if t.is_empty() {
        return Err(ParseError::UndecidableFormat(
            "no media type, no known extension and no content to sniff".into(),
        ));
    }
    if t.starts_with("<?xml") || t.starts_with("<rdf:RDF") || t.starts_with("<!DOCTYPE rdf") {
        return Ok(RdfFormat::RdfXml);
    }
    let upper = t.get(..6).unwrap_or("").to_ascii_uppercase();
    if t.starts_with("@prefix") || t.starts_with("@base") || upper == "PREFIX" || upper.starts_with("BASE") {
        return Ok(RdfFormat::Turtle);
    }
    Ok(RdfFormat::NTriples)
}
