//! C interface to the ontoaudit library.
//!
//! Graphs and audit results are opaque handles released with their `_free`
//! function. Fallible calls return an [`OntoauditStatus`] and write through an
//! out-pointer; the message of the last failure on the calling thread is
//! available from [`ontoaudit_last_error`]. Strings returned to the caller are
//! released with [`ontoaudit_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ontoaudit::lang::parse_tag;
use ontoaudit::metrics::{classify_multilingual, required_mapping_count};
use ontoaudit::rdf::{self, detect_format, ParseOptions, RdfFormat};
use ontoaudit::report::{self, OutputFormat, RenderOptions, ReportKind};
use ontoaudit::{audit_graph, AuditOptions, AuditResult, Graph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OntoauditStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ParseError = 4,
    EmptyInput = 5,
    Panic = 99,
}

/// Parsed RDF graph.
pub struct OntoauditGraph {
    graph: Graph,
}

/// Audit of one graph.
pub struct OntoauditAudit {
    result: AuditResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: OntoauditStatus, msg: impl Into<String>) -> OntoauditStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> OntoauditStatus) -> OntoauditStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(OntoauditStatus::Panic, "internal panic"))
}

unsafe fn opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, OntoauditStatus> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| fail(OntoauditStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn req_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, OntoauditStatus> {
    opt_str(p, what)?.ok_or_else(|| fail(OntoauditStatus::NullArgument, format!("{what} is NULL")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ontoaudit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ontoaudit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `len` bytes as RDF. `format` is "ntriples", "turtle" or "rdfxml",
/// or NULL to sniff the content. `base` may be NULL.
///
/// # Safety
/// `data` must point to `len` readable bytes; `format` and `base` must be NULL
/// or NUL-terminated strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_graph_parse(
    data: *const u8,
    len: usize,
    format: *const c_char,
    base: *const c_char,
    out: *mut *mut OntoauditGraph,
) -> OntoauditStatus {
    guard(|| {
        if out.is_null() || (data.is_null() && len > 0) {
            return fail(OntoauditStatus::NullArgument, "data or out is NULL");
        }
        *out = ptr::null_mut();
        let bytes: &[u8] = if len == 0 { &[] } else { std::slice::from_raw_parts(data, len) };
        let format = match opt_str(format, "format") {
            Ok(Some(f)) => match f.parse::<RdfFormat>() {
                Ok(f) => f,
                Err(e) => return fail(OntoauditStatus::InvalidArgument, e),
            },
            Ok(None) => match detect_format(None, None, &bytes[..bytes.len().min(4096)]) {
                Ok(f) => f,
                Err(e) => return fail(OntoauditStatus::ParseError, e.to_string()),
            },
            Err(s) => return s,
        };
        let base = match opt_str(base, "base") {
            Ok(b) => b.map(str::to_string),
            Err(s) => return s,
        };
        match rdf::parse_document(bytes, format, &ParseOptions { base, ..Default::default() }) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(OntoauditGraph { graph }));
                OntoauditStatus::Ok
            }
            Err(e) => fail(OntoauditStatus::ParseError, e.to_string()),
        }
    })
}

/// Number of distinct triples, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle from [`ontoaudit_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_graph_triple_count(graph: *const OntoauditGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.len())
}

/// # Safety
/// `graph` must be NULL or a handle from [`ontoaudit_graph_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_graph_free(graph: *mut OntoauditGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Audits a graph with default options.
///
/// # Safety
/// `graph` must be a live graph handle, `id` a NUL-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_audit(graph: *const OntoauditGraph, id: *const c_char, out: *mut *mut OntoauditAudit) -> OntoauditStatus {
    guard(|| {
        if out.is_null() {
            return fail(OntoauditStatus::NullArgument, "out is NULL");
        }
        *out = ptr::null_mut();
        let Some(g) = graph.as_ref() else { return fail(OntoauditStatus::NullArgument, "graph is NULL") };
        let id = match req_str(id, "id") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let result = audit_graph(id, &g.graph, &AuditOptions::default());
        *out = Box::into_raw(Box::new(OntoauditAudit { result }));
        OntoauditStatus::Ok
    })
}

/// Cov of the audited ontology, or 0 for NULL.
///
/// # Safety
/// `audit` must be NULL or a live audit handle.
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_audit_cov(audit: *const OntoauditAudit) -> u64 {
    audit.as_ref().map_or(0, |a| a.result.profile.cov)
}

/// Unrounded completeness percentage for `lang`; 0 when the language is absent.
///
/// # Safety
/// `audit` must be a live audit handle, `lang` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_audit_lcom(audit: *const OntoauditAudit, lang: *const c_char, out: *mut f64) -> OntoauditStatus {
    guard(|| {
        let (Some(a), false) = (audit.as_ref(), out.is_null()) else { return fail(OntoauditStatus::NullArgument, "audit or out is NULL") };
        match req_str(lang, "lang") {
            Ok(l) => {
                *out = a.result.profile.lcom(&parse_tag(l));
                OntoauditStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Whether at least two languages exceed `threshold` percent.
///
/// # Safety
/// `audit` must be a live audit handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_audit_is_multilingual(audit: *const OntoauditAudit, threshold: f64, out: *mut bool) -> OntoauditStatus {
    guard(|| {
        let (Some(a), false) = (audit.as_ref(), out.is_null()) else { return fail(OntoauditStatus::NullArgument, "audit or out is NULL") };
        if !(0.0..=100.0).contains(&threshold) {
            return fail(OntoauditStatus::InvalidArgument, format!("threshold {threshold} outside [0, 100]"));
        }
        *out = classify_multilingual(&a.result.profile, threshold);
        OntoauditStatus::Ok
    })
}

/// The full audit result as one JSON object.
///
/// # Safety
/// `audit` must be a live audit handle and `out` a valid pointer. The string
/// written to `out` is released with [`ontoaudit_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_audit_to_json(audit: *const OntoauditAudit, out: *mut *mut c_char) -> OntoauditStatus {
    guard(|| {
        let (Some(a), false) = (audit.as_ref(), out.is_null()) else { return fail(OntoauditStatus::NullArgument, "audit or out is NULL") };
        match serde_json::to_string(&a.result) {
            Ok(s) => {
                *out = into_c_string(s);
                OntoauditStatus::Ok
            }
            Err(e) => fail(OntoauditStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `audit` must be NULL or a handle from [`ontoaudit_audit`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_audit_free(audit: *mut OntoauditAudit) {
    if !audit.is_null() {
        drop(Box::from_raw(audit));
    }
}

/// Renders a report over audit results given as JSON lines. `kind` is a report
/// kind name and `format` one of "json", "csv" or "markdown". No timestamp is
/// embedded, so equal inputs give equal output.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be a valid pointer. The
/// string written to `out` is released with [`ontoaudit_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ontoaudit_report(
    results_jsonl: *const c_char,
    kind: *const c_char,
    format: *const c_char,
    threshold: f64,
    out: *mut *mut c_char,
) -> OntoauditStatus {
    guard(|| {
        if out.is_null() {
            return fail(OntoauditStatus::NullArgument, "out is NULL");
        }
        *out = ptr::null_mut();
        let (text, kind, format) = match (req_str(results_jsonl, "results"), req_str(kind, "kind"), req_str(format, "format")) {
            (Ok(t), Ok(k), Ok(f)) => (t, k, f),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
        let kind: ReportKind = match kind.parse() {
            Ok(k) => k,
            Err(e) => return fail(OntoauditStatus::InvalidArgument, format!("{e}")),
        };
        let format: OutputFormat = match format.parse() {
            Ok(f) => f,
            Err(e) => return fail(OntoauditStatus::InvalidArgument, format!("{e}")),
        };
        let mut results = Vec::new();
        for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            match serde_json::from_str::<AuditResult>(line) {
                Ok(r) => results.push(r),
                Err(e) => return fail(OntoauditStatus::ParseError, format!("line {}: {e}", n + 1)),
            }
        }
        if results.is_empty() {
            return fail(OntoauditStatus::EmptyInput, "no audit results");
        }
        match report::emit(&results, kind, format, threshold, &RenderOptions::default()) {
            Ok(bytes) => {
                *out = into_c_string(String::from_utf8_lossy(&bytes).into_owned());
                OntoauditStatus::Ok
            }
            Err(e) => fail(OntoauditStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Pairwise mappings needed to connect `n` monolingual ontologies.
#[no_mangle]
pub extern "C" fn ontoaudit_required_mapping_count(n: u64) -> u64 {
    required_mapping_count(n)
}
