//! The format-independent RDF data model.

mod graph;
mod iso;
mod term;

pub use graph::{Graph, PrefixMap, Triple};
pub use iso::{canonical_blank_labels, graph_isomorphic};
pub use term::{escape_string, is_absolute_iri, is_valid_blank_label, BlankNode, Iri, Literal, ModelError, Subject, Term};
