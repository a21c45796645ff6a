//! RDF conversion between RDFa, Microdata, RDF/XML, Notation 3 (Turtle),
//! N-Triples, RDF/JSON and JSON-LD.
//!
//! ```
//! use rdfshift_core::{convert, Document, FormatId, PrefixSource, Render, SourceFormat};
//!
//! let doc = Document::inline("@prefix : <http://example.org/#> . :a :b :c .");
//! let out = convert(SourceFormat::Detect, FormatId::Nt, Render::Raw, &doc, &PrefixSource::offline()).unwrap();
//! assert_eq!(out.body, "<http://example.org/#a> <http://example.org/#b> <http://example.org/#c> .\n");
//! ```

pub mod convert;
pub mod detect;
pub mod error;
pub mod formats;
pub mod highlight;
pub mod model;
pub mod parsers;
pub mod prefixes;
pub mod serializers;
#[cfg(feature = "test-util")]
pub mod testing;
pub mod vocab;

pub use convert::{convert, error_position, resolve_source, Converted, Document};
pub use detect::{detect, detect_format, Detection, DetectionMethod};
pub use error::{Error, ParseError};
pub use formats::{format_for_media_type, media_type_for, FormatId, Render, SourceFormat};
pub use highlight::{highlight, html_page, strip_highlight, STYLESHEET};
pub use model::{canonical_blank_labels, graph_isomorphic, BlankNode, Graph, Iri, Literal, PrefixMap, Subject, Term, Triple};
pub use parsers::{parse, DEFAULT_BASE};
pub use prefixes::{augment_prefixes, compact_iri, PrefixSource};
pub use serializers::{is_lossy, serialize};
