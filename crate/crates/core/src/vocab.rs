//! Namespace and term IRIs used across the crate.

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";
pub const ONTOLEX: &str = "http://www.w3.org/ns/lemon/ontolex#";
pub const DCTERMS: &str = "http://purl.org/dc/terms/";
pub const LEXVO: &str = "http://lexvo.org/id/iso639-1/";

pub const RESERVED_NAMESPACES: [&str; 4] = [RDF, RDFS, OWL, XSD];

pub mod rdf {
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
    pub const FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
    pub const REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
    pub const NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
}

pub mod rdfs {
    pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
    pub const COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
    pub const SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
    pub const DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
}

pub mod owl {
    pub const CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const ANNOTATION_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AnnotationProperty";
    pub const ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";
    pub const IMPORTS: &str = "http://www.w3.org/2002/07/owl#imports";
    pub const THING: &str = "http://www.w3.org/2002/07/owl#Thing";
    pub const NOTHING: &str = "http://www.w3.org/2002/07/owl#Nothing";
    pub const EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
    pub const EQUIVALENT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#equivalentProperty";
    pub const DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
    pub const INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";
    pub const SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
    pub const DEPRECATED: &str = "http://www.w3.org/2002/07/owl#deprecated";
    pub const FUNCTIONAL_PROPERTY: &str = "http://www.w3.org/2002/07/owl#FunctionalProperty";
    pub const TRANSITIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#TransitiveProperty";
    pub const SYMMETRIC_PROPERTY: &str = "http://www.w3.org/2002/07/owl#SymmetricProperty";
    pub const ASYMMETRIC_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AsymmetricProperty";
    pub const REFLEXIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ReflexiveProperty";
    pub const IRREFLEXIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#IrreflexiveProperty";
    pub const INVERSE_FUNCTIONAL_PROPERTY: &str =
        "http://www.w3.org/2002/07/owl#InverseFunctionalProperty";
    pub const PROPERTY_DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#propertyDisjointWith";
    pub const RESTRICTION: &str = "http://www.w3.org/2002/07/owl#Restriction";
    pub const ON_PROPERTY: &str = "http://www.w3.org/2002/07/owl#onProperty";
}

pub mod xsd {
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
}

pub mod skos {
    pub const PREF_LABEL: &str = "http://www.w3.org/2004/02/skos/core#prefLabel";
    pub const ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";
    pub const HIDDEN_LABEL: &str = "http://www.w3.org/2004/02/skos/core#hiddenLabel";
    pub const EXACT_MATCH: &str = "http://www.w3.org/2004/02/skos/core#exactMatch";
    pub const CLOSE_MATCH: &str = "http://www.w3.org/2004/02/skos/core#closeMatch";
    pub const RELATED_MATCH: &str = "http://www.w3.org/2004/02/skos/core#relatedMatch";
    pub const BROAD_MATCH: &str = "http://www.w3.org/2004/02/skos/core#broadMatch";
    pub const NARROW_MATCH: &str = "http://www.w3.org/2004/02/skos/core#narrowMatch";
    pub const MAPPING_RELATION: &str = "http://www.w3.org/2004/02/skos/core#mappingRelation";
}

pub mod ontolex {
    pub const LEXICAL_ENTRY: &str = "http://www.w3.org/ns/lemon/ontolex#LexicalEntry";
    pub const FORM: &str = "http://www.w3.org/ns/lemon/ontolex#Form";
    pub const LEXICAL_SENSE: &str = "http://www.w3.org/ns/lemon/ontolex#LexicalSense";
    pub const LEXICAL_CONCEPT: &str = "http://www.w3.org/ns/lemon/ontolex#LexicalConcept";
    pub const CANONICAL_FORM: &str = "http://www.w3.org/ns/lemon/ontolex#canonicalForm";
    pub const WRITTEN_REP: &str = "http://www.w3.org/ns/lemon/ontolex#writtenRep";
    pub const SENSE: &str = "http://www.w3.org/ns/lemon/ontolex#sense";
    pub const IS_SENSE_OF: &str = "http://www.w3.org/ns/lemon/ontolex#isSenseOf";
    pub const REFERENCE: &str = "http://www.w3.org/ns/lemon/ontolex#reference";
    pub const IS_REFERENCE_OF: &str = "http://www.w3.org/ns/lemon/ontolex#isReferenceOf";
    pub const DENOTES: &str = "http://www.w3.org/ns/lemon/ontolex#denotes";
    pub const IS_DENOTED_BY: &str = "http://www.w3.org/ns/lemon/ontolex#isDenotedBy";
    pub const CONCEPT: &str = "http://www.w3.org/ns/lemon/ontolex#concept";
    pub const IS_CONCEPT_OF: &str = "http://www.w3.org/ns/lemon/ontolex#isConceptOf";
    pub const EVOKES: &str = "http://www.w3.org/ns/lemon/ontolex#evokes";
    pub const IS_EVOKED_BY: &str = "http://www.w3.org/ns/lemon/ontolex#isEvokedBy";
    pub const LEXICALIZED_SENSE: &str = "http://www.w3.org/ns/lemon/ontolex#lexicalizedSense";
    pub const IS_LEXICALIZED_SENSE_OF: &str =
        "http://www.w3.org/ns/lemon/ontolex#isLexicalizedSenseOf";
}

pub mod dcterms {
    pub const LANGUAGE: &str = "http://purl.org/dc/terms/language";
}

/// Split an IRI into namespace and local name at the last `#`, `/` or `:`.
pub fn split_iri(iri: &str) -> (&str, &str) {
    match iri.rfind(['#', '/']) {
        Some(i) => (&iri[..=i], &iri[i + 1..]),
        None => match iri.rfind(':') {
            Some(i) => (&iri[..=i], &iri[i + 1..]),
            None => ("", iri),
        },
    }
}

pub fn is_reserved(iri: &str) -> bool {
    RESERVED_NAMESPACES.iter().any(|ns| iri.starts_with(ns))
}
