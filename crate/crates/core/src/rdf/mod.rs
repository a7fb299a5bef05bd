//! In-memory RDF model and the three supported serializations.

mod error;
mod format;
mod graph;
pub mod iri;
mod ntriples;
mod rdfxml;
mod scan;
mod term;
mod turtle;

pub use error::ParseError;
pub use format::{detect_format, looks_like_html, RdfFormat};
pub use graph::{Graph, GraphBuilder, ParseDiagnostics};
pub use ntriples::{parse_ntriples_line, to_ntriples, write_term};
pub use scan::{scan_stream, ScanMode, ScanSummary};
pub use term::{Literal, Term, Triple};

/// Default ceiling for documents parsed into memory (2 GiB).
pub const DEFAULT_MAX_DOCUMENT_BYTES: u64 = 2 * 1024 * 1024 * 1024;

#[derive(Debug, Clone)]
pub struct ParseOptions {
    pub base: Option<String>,
    /// When false, malformed N-Triples lines are skipped and counted.
    /// Turtle and RDF/XML are always parsed strictly.
    pub strict: bool,
    pub max_bytes: u64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self { base: None, strict: true, max_bytes: DEFAULT_MAX_DOCUMENT_BYTES }
    }
}

/// Parse a complete document held in memory.
pub fn parse_document(
    bytes: &[u8],
    format: RdfFormat,
    options: &ParseOptions,
) -> Result<Graph, ParseError> {
    if bytes.len() as u64 > options.max_bytes {
        return Err(ParseError::TooLarge { size: bytes.len() as u64, limit: options.max_bytes });
    }
    let text = std::str::from_utf8(bytes)
        .map_err(|e| ParseError::Encoding { offset: e.valid_up_to() })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    match format {
        RdfFormat::NTriples => ntriples::parse(text, options),
        RdfFormat::Turtle => turtle::parse(text, options.base.as_deref()),
        RdfFormat::RdfXml => rdfxml::parse(text, options.base.as_deref()),
    }
}

/// Strict parse of an in-memory string with no base IRI.
pub fn parse_str(text: &str, format: RdfFormat) -> Result<Graph, ParseError> {
    parse_document(text.as_bytes(), format, &ParseOptions::default())
}
