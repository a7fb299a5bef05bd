//! Multilingualism audits for OWL/RDF ontologies.
//!
//! The pipeline runs in stages that can each be driven on their own:
//! parse a document into a [`rdf::Graph`], extract the ontology
//! [`signature::OntologySignature`] and its label inventory, classify the
//! multilingual modelling approach ([`detect`]), compute coverage and
//! per-language completeness ([`metrics`]), and render tables ([`report`]).
//! [`generator`] produces reference ontologies for every modelling variant and
//! [`harvest`] collects documents from BioPortal and LOV.

pub mod audit;
pub mod cli;
pub mod detect;
pub mod generator;
pub mod harvest;
pub mod lang;
pub mod metrics;
pub mod rdf;
pub mod report;
pub mod signature;
pub mod validate;
pub mod vocab;

pub use audit::{audit_graph, AuditOptions, AuditResult};
pub use lang::{LabelLanguage, LanguageTag};
pub use rdf::{Graph, Literal, Term, Triple};
pub use signature::{AnnotationInventory, OntologySignature};
