//! Helpers shared by the HTML-embedded formats. Parsing is delegated to a
//! forgiving HTML5 tree builder, so malformed markup never fails.

use scraper::{ElementRef, Html, Selector};

use super::resolve_iri;
use crate::error::{Error, ParseError};
use crate::formats::FormatId;

/// Elements nested deeper than this are rejected rather than risking stack
/// exhaustion in the recursive walkers.
pub(crate) const MAX_DEPTH: usize = 512;

pub(crate) fn parse_document(input: &str) -> Html {
    Html::parse_document(input)
}

/// Base IRI for the document: the first `<base href>` resolved against the
/// supplied base.
pub(crate) fn document_base(doc: &Html, base: &str) -> String {
    let selector = Selector::parse("base[href]").expect("static selector");
    doc.select(&selector)
        .next()
        .and_then(|el| el.attr("href"))
        .and_then(|href| resolve_iri(base, href.trim()))
        .unwrap_or_else(|| base.to_string())
}

pub(crate) fn text_content(el: ElementRef<'_>) -> String {
    el.text().collect()
}

/// Non-empty, whitespace-separated tokens of an attribute.
pub(crate) fn tokens<'a>(el: ElementRef<'a>, name: &str) -> Vec<&'a str> {
    el.attr(name).map(|v| v.split_ascii_whitespace().collect()).unwrap_or_default()
}

pub(crate) fn too_deep(format: FormatId) -> Error {
    Error::Parse(ParseError::new(
        format,
        format!("elements are nested more than {MAX_DEPTH} levels deep"),
    ))
}
