use std::io::BufRead;

use super::error::ParseError;
use super::ntriples::parse_ntriples_line;
use super::term::Triple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Abort on the first malformed line.
    Strict,
    /// Count and skip malformed lines.
    Lenient,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub count: u64,
    pub error_count: u64,
}

/// Stream an N-Triples document line by line, handing each triple to
/// `callback` without building a graph.
pub fn scan_stream<R: BufRead>(
    mut reader: R,
    mode: ScanMode,
    mut callback: impl FnMut(Triple),
) -> Result<ScanSummary, ParseError> {
    let mut summary = ScanSummary::default();
    let mut buf = Vec::new();
    let mut line_no = 0usize;
    loop {
        buf.clear();
        let n = reader.read_until(b'\n', &mut buf).map_err(|e| ParseError::Io(e.to_string()))?;
        if n == 0 {
            break;
        }
        line_no += 1;
        let parsed = match std::str::from_utf8(&buf) {
            Ok(line) => parse_ntriples_line(line.trim_end_matches(['\n', '\r'])),
            Err(e) => Err((e.valid_up_to() + 1, "invalid UTF-8".to_string())),
        };
        match parsed {
            Ok(Some(t)) => {
                summary.count += 1;
                callback(t);
            }
            Ok(None) => {}
            Err((column, message)) => match mode {
                ScanMode::Strict => return Err(ParseError::Syntax { line: line_no, column, message }),
                ScanMode::Lenient => summary.error_count += 1,
            },
        }
    }
    Ok(summary)
}
