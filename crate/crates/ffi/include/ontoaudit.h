#ifndef ONTOAUDIT_H
#define ONTOAUDIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum OntoauditStatus {
  ONTOAUDIT_STATUS_OK = 0,
  ONTOAUDIT_STATUS_NULL_ARGUMENT = 1,
  ONTOAUDIT_STATUS_INVALID_UTF8 = 2,
  ONTOAUDIT_STATUS_INVALID_ARGUMENT = 3,
  ONTOAUDIT_STATUS_PARSE_ERROR = 4,
  ONTOAUDIT_STATUS_EMPTY_INPUT = 5,
  ONTOAUDIT_STATUS_PANIC = 99,
} OntoauditStatus;

// Audit of one graph.
typedef struct OntoauditAudit OntoauditAudit;

// Parsed RDF graph.
typedef struct OntoauditGraph OntoauditGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *ontoaudit_version(void);

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into the library from the same thread.
const char *ontoaudit_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void ontoaudit_string_free(char *s);

// Parses `len` bytes as RDF. `format` is "ntriples", "turtle" or "rdfxml",
// or NULL to sniff the content. `base` may be NULL.
//
// # Safety
// `data` must point to `len` readable bytes; `format` and `base` must be NULL
// or NUL-terminated strings; `out` must be a valid pointer.
enum OntoauditStatus ontoaudit_graph_parse(const uint8_t *data,
                                           size_t len,
                                           const char *format,
                                           const char *base,
                                           struct OntoauditGraph **out);

// Number of distinct triples, or 0 for NULL.
//
// # Safety
// `graph` must be NULL or a live handle from [`ontoaudit_graph_parse`].
size_t ontoaudit_graph_triple_count(const struct OntoauditGraph *graph);

// # Safety
// `graph` must be NULL or a handle from [`ontoaudit_graph_parse`] not yet freed.
void ontoaudit_graph_free(struct OntoauditGraph *graph);

// Audits a graph with default options.
//
// # Safety
// `graph` must be a live graph handle, `id` a NUL-terminated string and `out`
// a valid pointer.
enum OntoauditStatus ontoaudit_audit(const struct OntoauditGraph *graph,
                                     const char *id,
                                     struct OntoauditAudit **out);

// Cov of the audited ontology, or 0 for NULL.
//
// # Safety
// `audit` must be NULL or a live audit handle.
uint64_t ontoaudit_audit_cov(const struct OntoauditAudit *audit);

// Unrounded completeness percentage for `lang`; 0 when the language is absent.
//
// # Safety
// `audit` must be a live audit handle, `lang` a NUL-terminated string and
// `out` a valid pointer.
enum OntoauditStatus ontoaudit_audit_lcom(const struct OntoauditAudit *audit,
                                          const char *lang,
                                          double *out);

// Whether at least two languages exceed `threshold` percent.
//
// # Safety
// `audit` must be a live audit handle and `out` a valid pointer.
enum OntoauditStatus ontoaudit_audit_is_multilingual(const struct OntoauditAudit *audit,
                                                     double threshold,
                                                     bool *out);

// The full audit result as one JSON object.
//
// # Safety
// `audit` must be a live audit handle and `out` a valid pointer. The string
// written to `out` is released with [`ontoaudit_string_free`].
enum OntoauditStatus ontoaudit_audit_to_json(const struct OntoauditAudit *audit, char **out);

// # Safety
// `audit` must be NULL or a handle from [`ontoaudit_audit`] not yet freed.
void ontoaudit_audit_free(struct OntoauditAudit *audit);

// Renders a report over audit results given as JSON lines. `kind` is a report
// kind name and `format` one of "json", "csv" or "markdown". No timestamp is
// embedded, so equal inputs give equal output.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be a valid pointer. The
// string written to `out` is released with [`ontoaudit_string_free`].
enum OntoauditStatus ontoaudit_report(const char *results_jsonl,
                                      const char *kind,
                                      const char *format,
                                      double threshold,
                                      char **out);

// Pairwise mappings needed to connect `n` monolingual ontologies.
uint64_t ontoaudit_required_mapping_count(uint64_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ONTOAUDIT_H */
