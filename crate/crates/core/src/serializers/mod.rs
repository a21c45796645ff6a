//! One serializer per target format. Every serializer first relabels blank
//! nodes canonically and then walks triples in sorted order, so equal (and
//! isomorphic) graphs produce identical bytes.

mod common;
mod jsonld;
mod microdata;
mod ntriples;
mod rdfa;
mod rdfjson;
mod rdfxml;
mod turtle;

use crate::error::Error;
use crate::formats::FormatId;
use crate::model::{canonical_blank_labels, Graph};

pub use rdfjson::JsonVariant;
pub use rdfxml::XmlVariant;

pub fn serialize_ntriples(graph: &Graph) -> String {
    ntriples::write(&canonical_blank_labels(graph))
}

pub fn serialize_turtle(graph: &Graph) -> String {
    turtle::write(&canonical_blank_labels(graph))
}

/// Fails with [`Error::UnserializableIri`] when a predicate has no XML
/// qualified-name form.
pub fn serialize_rdfxml(graph: &Graph, variant: XmlVariant) -> Result<String, Error> {
    rdfxml::write(&canonical_blank_labels(graph), variant)
}

pub fn serialize_rdfjson(graph: &Graph, variant: JsonVariant) -> String {
    rdfjson::write(&canonical_blank_labels(graph), variant)
}

pub fn serialize_jsonld(graph: &Graph) -> String {
    jsonld::write(&canonical_blank_labels(graph))
}

pub fn serialize_rdfa_snippet(graph: &Graph) -> String {
    rdfa::write(&canonical_blank_labels(graph))
}

/// Lossy: datatypes and language tags are dropped.
pub fn serialize_microdata_snippet(graph: &Graph) -> String {
    microdata::write(&canonical_blank_labels(graph))
}

/// Serializes `graph` in any target format.
pub fn serialize(graph: &Graph, format: FormatId) -> Result<String, Error> {
    Ok(match format {
        FormatId::Nt => serialize_ntriples(graph),
        FormatId::N3 => serialize_turtle(graph),
        FormatId::Xml => serialize_rdfxml(graph, XmlVariant::Standard)?,
        FormatId::PrettyXml => serialize_rdfxml(graph, XmlVariant::Pretty)?,
        FormatId::RdfJson => serialize_rdfjson(graph, JsonVariant::Standard),
        FormatId::RdfJsonPretty => serialize_rdfjson(graph, JsonVariant::Pretty),
        FormatId::JsonLd => serialize_jsonld(graph),
        FormatId::Rdfa => serialize_rdfa_snippet(graph),
        FormatId::Microdata => serialize_microdata_snippet(graph),
    })
}

/// Whether the format drops datatype and language information.
pub fn is_lossy(format: FormatId) -> bool {
    format == FormatId::Microdata
}

#[cfg(test)]
mod tests;
