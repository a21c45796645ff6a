//! One parser per input format. Every parser maps text plus a base IRI to a
//! [`Graph`], capturing prefix bindings where the syntax declares them.

mod html;
mod jsonld;
mod microdata;
mod ntriples;
mod rdfa;
mod rdfjson;
mod rdfxml;
pub(crate) mod text;
mod turtle;

use std::collections::{HashMap, HashSet};

use crate::error::{Error, ParseError};
use crate::formats::FormatId;
use crate::model::{is_absolute_iri, is_valid_blank_label, BlankNode, Graph, Iri};

pub use jsonld::parse_jsonld;
pub use microdata::parse_microdata;
pub use ntriples::parse_ntriples;
pub use rdfa::parse_rdfa;
pub use rdfjson::parse_rdfjson;
pub(crate) use rdfjson::PREFIXES_KEY;
pub use rdfxml::parse_rdfxml;
pub use turtle::parse_turtle_n3;

/// Base IRI used for inline content when none is supplied.
pub const DEFAULT_BASE: &str = "http://example.org/";

/// Parses `input` in `format`. Output-only formats parse as their base
/// format.
pub fn parse(format: FormatId, input: &str, base: Option<&str>) -> Result<Graph, Error> {
    let base = base.unwrap_or(DEFAULT_BASE);
    match format.base() {
        FormatId::Nt => parse_ntriples(input, Some(base)),
        FormatId::N3 => parse_turtle_n3(input, Some(base)),
        FormatId::Xml => parse_rdfxml(input, Some(base)),
        FormatId::RdfJson => parse_rdfjson(input),
        FormatId::JsonLd => parse_jsonld(input, Some(base)),
        FormatId::Rdfa => parse_rdfa(input, base),
        FormatId::Microdata => parse_microdata(input, base),
        FormatId::PrettyXml | FormatId::RdfJsonPretty => unreachable!("base() strips pretty variants"),
    }
}

/// Decodes raw bytes as UTF-8, dropping a leading byte-order mark.
pub fn decode(format: FormatId, bytes: &[u8]) -> Result<&str, ParseError> {
    let bytes = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes);
    std::str::from_utf8(bytes).map_err(|e| {
        let (line, column) = crate::error::line_col(
            std::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or(""),
            e.valid_up_to(),
        );
        ParseError::new(format, "input is not valid UTF-8").at(line, column)
    })
}

/// Resolves `reference` against `base`. Absolute references are returned
/// verbatim, without normalisation.
pub(crate) fn resolve_iri(base: &str, reference: &str) -> Option<String> {
    if is_absolute_iri(reference) {
        return Some(reference.to_string());
    }
    let base = url::Url::parse(base).ok()?;
    base.join(reference).ok().map(String::from)
}

/// Resolves and validates an IRI, mapping failures to a message.
pub(crate) fn resolved(base: &str, reference: &str) -> Result<Iri, String> {
    let iri = resolve_iri(base, reference).ok_or_else(|| format!("cannot resolve IRI {reference:?} against <{base}>"))?;
    Iri::new(iri).map_err(|e| e.to_string())
}

/// Maps document blank-node labels onto valid, collision-free labels and
/// mints fresh ones for anonymous nodes.
#[derive(Default)]
pub(crate) struct BlankAllocator {
    named: HashMap<String, BlankNode>,
    taken: HashSet<String>,
    counter: usize,
}

impl BlankAllocator {
    pub fn named(&mut self, label: &str) -> BlankNode {
        if let Some(b) = self.named.get(label) {
            return b.clone();
        }
        let mut candidate: String = label
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        if candidate.is_empty() {
            candidate.push('x');
        }
        let base = candidate.clone();
        let mut n = 1;
        while self.taken.contains(&candidate) {
            candidate = format!("{base}_{n}");
            n += 1;
        }
        debug_assert!(is_valid_blank_label(&candidate));
        self.taken.insert(candidate.clone());
        let node = BlankNode::new(candidate).expect("sanitised label");
        self.named.insert(label.to_string(), node.clone());
        node
    }

    pub fn fresh(&mut self) -> BlankNode {
        loop {
            let candidate = format!("g{}", self.counter);
            self.counter += 1;
            if self.taken.insert(candidate.clone()) {
                return BlankNode::new(candidate).expect("generated label");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocator_keeps_labels_distinct() {
        let mut a = BlankAllocator::default();
        let x = a.named("a-b");
        let y = a.named("a_b");
        assert_ne!(x, y);
        assert_eq!(a.named("a-b"), x);
        let f = a.fresh();
        let g = a.named(f.label());
        assert_ne!(f, g);
    }

    #[test]
    fn resolution() {
        assert_eq!(resolve_iri("http://e/a/b", "c").unwrap(), "http://e/a/c");
        assert_eq!(resolve_iri("http://e/a/b", "#x").unwrap(), "http://e/a/b#x");
        assert_eq!(resolve_iri("http://e/", "HTTP://Verbatim").unwrap(), "HTTP://Verbatim");
    }

    #[test]
    fn bom_is_dropped() {
        assert_eq!(decode(FormatId::Nt, b"\xEF\xBB\xBFabc").unwrap(), "abc");
        let err = decode(FormatId::Nt, b"ok\n\xFF").unwrap_err();
        assert_eq!(err.line, Some(2));
    }
}
