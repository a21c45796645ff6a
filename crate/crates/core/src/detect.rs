//! Source format detection: the media type decides when it maps to a format,
//! content sniffing otherwise.
//!
//! Sniffing order, first match wins:
//! 1. `<?xml` or `<rdf:RDF` at the start: RDF/XML, unless the document is
//!    XHTML (an `<html` element and no RDF namespace), which goes to rule 2.
//! 2. any other leading `<`: HTML; `itemscope` selects Microdata, else RDFa.
//!    Exceptions: markup declaring the RDF namespace without an `<html`
//!    element is RDF/XML, and a leading `<scheme:...>` IRI is tried as
//!    N-Triples and then Turtle first.
//! 3. `@prefix`, `@base`, `PREFIX` or `BASE` at the start of the first
//!    statement: Notation 3.
//! 4. the first statement line parses as N-Triples: N-Triples.
//! 5. leading `{` or `[`: JSON-LD if `@context`, `@id` or `@graph` occurs,
//!    else RDF/JSON.
//! 6. the whole document parses as Turtle: Notation 3.

use crate::error::Error;
use crate::formats::{essence, format_for_media_type, FormatId};
use crate::parsers::{parse_ntriples, parse_turtle_n3};
use crate::vocab::rdf;

/// How a format was determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetectionMethod {
    /// The media type mapped to exactly one format.
    MediaType,
    /// The media type named a family (HTML or JSON) and the content picked
    /// the member.
    Refined,
    /// No usable media type; content sniffing decided.
    Sniffed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Detection {
    pub format: FormatId,
    pub method: DetectionMethod,
}

pub fn detect_format(media_type: Option<&str>, content: &str) -> Result<FormatId, Error> {
    detect(media_type, content).map(|d| d.format)
}

pub fn detect(media_type: Option<&str>, content: &str) -> Result<Detection, Error> {
    if let Some(mt) = media_type {
        if let Ok(format) = format_for_media_type(mt) {
            let essence = essence(mt);
            return Ok(match (format, essence.as_str()) {
                (FormatId::Rdfa, _) => Detection { format: html_member(content), method: DetectionMethod::Refined },
                (FormatId::RdfJson, "application/json") => {
                    Detection { format: json_member(content), method: DetectionMethod::Refined }
                }
                _ => Detection { format, method: DetectionMethod::MediaType },
            });
        }
    }
    sniff(content).map(|format| Detection { format, method: DetectionMethod::Sniffed })
}

fn html_member(content: &str) -> FormatId {
    if content.to_ascii_lowercase().contains("itemscope") {
        FormatId::Microdata
    } else {
        FormatId::Rdfa
    }
}

fn json_member(content: &str) -> FormatId {
    if ["\"@context\"", "\"@id\"", "\"@graph\""].iter().any(|k| content.contains(k)) {
        FormatId::JsonLd
    } else {
        FormatId::RdfJson
    }
}

/// The first line that is neither blank nor a `#` comment.
fn first_statement(content: &str) -> Option<&str> {
    content.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'))
}

fn starts_with_ci(text: &str, prefix: &str) -> bool {
    text.len() >= prefix.len() && text.is_char_boundary(prefix.len()) && text[..prefix.len()].eq_ignore_ascii_case(prefix)
}

fn is_ntriples_line(line: &str) -> bool {
    parse_ntriples(line, None).is_ok_and(|g| !g.is_empty())
}

/// `<scheme:` as opposed to an HTML tag.
fn looks_like_iri(text: &str) -> bool {
    let rest = &text[1..];
    let scheme_len = rest
        .char_indices()
        .find(|&(i, c)| !(c.is_ascii_alphabetic() || (i > 0 && (c.is_ascii_digit() || matches!(c, '+' | '-' | '.')))))
        .map_or(rest.len(), |(i, _)| i);
    scheme_len > 0 && rest[scheme_len..].starts_with(':')
}

pub fn sniff(content: &str) -> Result<FormatId, Error> {
    let text = content.trim_start_matches('\u{FEFF}').trim_start();
    if text.is_empty() {
        return Err(Error::DetectionFailed("the document is empty".into()));
    }
    let lower = text.to_ascii_lowercase();
    let has_html = lower.contains("<html");
    let has_rdf_ns = text.contains(rdf::NS);

    if text.starts_with("<?xml") || text.starts_with("<rdf:RDF") {
        if has_html && !has_rdf_ns {
            return Ok(html_member(text));
        }
        return Ok(FormatId::Xml);
    }
    if text.starts_with('<') {
        if has_rdf_ns && !has_html && lower.contains("rdf:rdf") {
            return Ok(FormatId::Xml);
        }
        if looks_like_iri(text) {
            if first_statement(text).is_some_and(is_ntriples_line) {
                return Ok(FormatId::Nt);
            }
            if parse_turtle_n3(text, None).is_ok_and(|g| !g.is_empty()) {
                return Ok(FormatId::N3);
            }
        }
        return Ok(html_member(text));
    }
    if let Some(line) = first_statement(text) {
        if line.starts_with("@prefix") || line.starts_with("@base") || starts_with_ci(line, "PREFIX ") || starts_with_ci(line, "BASE ") {
            return Ok(FormatId::N3);
        }
        if is_ntriples_line(line) {
            return Ok(FormatId::Nt);
        }
    }
    if text.starts_with('{') || text.starts_with('[') {
        return Ok(json_member(text));
    }
    if parse_turtle_n3(text, None).is_ok_and(|g| !g.is_empty()) {
        return Ok(FormatId::N3);
    }
    Err(Error::DetectionFailed(
        "the document does not look like any supported format; choose the source format explicitly".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn media_type_wins() {
        assert_eq!(detect_format(Some("application/rdf+xml"), "anything").unwrap(), FormatId::Xml);
        let d = detect(Some("text/n3; charset=utf-8"), "<a> <b> <c> .").unwrap();
        assert_eq!((d.format, d.method), (FormatId::N3, DetectionMethod::MediaType));
    }

    #[test]
    fn families_are_refined() {
        assert_eq!(detect_format(Some("text/html"), "<div itemscope></div>").unwrap(), FormatId::Microdata);
        assert_eq!(detect_format(Some("text/html"), "<div about=x></div>").unwrap(), FormatId::Rdfa);
        assert_eq!(detect_format(Some("application/json"), r#"{"@context":{}}"#).unwrap(), FormatId::JsonLd);
        assert_eq!(detect_format(Some("application/json"), r#"{"http://a":{}}"#).unwrap(), FormatId::RdfJson);
        assert_eq!(detect_format(Some("application/ld+json"), "{}").unwrap(), FormatId::JsonLd);
    }

    #[test]
    fn sniffing() {
        assert_eq!(detect_format(None, "@prefix : <http://e/> . :a :b :c .").unwrap(), FormatId::N3);
        assert_eq!(detect_format(None, "# c\nPREFIX e: <http://e/>\ne:a e:b e:c .").unwrap(), FormatId::N3);
        assert_eq!(detect_format(None, "<http://e/a> <http://e/b> \"c\" .\n").unwrap(), FormatId::Nt);
        assert_eq!(detect_format(None, "<?xml version=\"1.0\"?><rdf:RDF/>").unwrap(), FormatId::Xml);
        assert_eq!(
            detect_format(None, "<!-- x --><rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\"/>").unwrap(),
            FormatId::Xml
        );
        assert_eq!(detect_format(None, "<!DOCTYPE html><html><body></body></html>").unwrap(), FormatId::Rdfa);
        assert_eq!(
            detect_format(None, "<?xml version=\"1.0\"?><html><body itemscope></body></html>").unwrap(),
            FormatId::Microdata
        );
        assert_eq!(detect_format(None, "[]").unwrap(), FormatId::RdfJson);
        assert_eq!(detect_format(None, r#"{"@graph":[]}"#).unwrap(), FormatId::JsonLd);
        assert_eq!(detect_format(None, "<http://e/a> <http://e/b> [ <http://e/c> 1 ] .").unwrap(), FormatId::N3);
        assert_eq!(detect_format(Some("application/octet-stream"), "_:a <http://e/b> _:c .").unwrap(), FormatId::Nt);
    }

    #[test]
    fn failures() {
        assert!(matches!(detect_format(None, "%%%"), Err(Error::DetectionFailed(_))));
        assert!(matches!(detect_format(None, "  "), Err(Error::DetectionFailed(_))));
    }
}
