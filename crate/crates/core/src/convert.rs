//! The end-to-end pipeline shared by the HTTP service and the CLI:
//! decode, detect, parse, add prefixes, serialize, optionally highlight.

use crate::detect::detect_format;
use crate::error::{Error, ParseError};
use crate::formats::{media_type_for, FormatId, Render, SourceFormat};
use crate::highlight::{highlight, html_page};
use crate::parsers::{decode, parse};
use crate::prefixes::{augment_prefixes, PrefixSource};
use crate::serializers::serialize;

/// A document to convert.
#[derive(Clone, Copy, Debug)]
pub struct Document<'a> {
    pub content: &'a [u8],
    /// Media type reported alongside the content, used only for detection.
    pub media_type: Option<&'a str>,
    /// Base IRI for relative references; the parsers' default when absent.
    pub base: Option<&'a str>,
}

impl<'a> Document<'a> {
    pub fn inline(content: &'a str) -> Self {
        Document { content: content.as_bytes(), media_type: None, base: None }
    }
}

/// The result of a successful conversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Converted {
    /// The format the input was read as (after detection).
    pub source: FormatId,
    pub body: String,
    pub media_type: &'static str,
}

/// Resolves `detect` against the document; concrete formats pass through.
pub fn resolve_source(source: SourceFormat, doc: &Document<'_>) -> Result<FormatId, Error> {
    match source {
        SourceFormat::Format(f) => Ok(f),
        SourceFormat::Detect => {
            let text = decode(FormatId::N3, doc.content)
                .map_err(|_| Error::DetectionFailed("the document is not valid UTF-8".into()))?;
            detect_format(doc.media_type, text)
        }
    }
}

/// Converts `doc` to `target`. With [`Render::Html`] the output is a
/// standalone page with the highlighted text.
pub fn convert(
    source: SourceFormat,
    target: FormatId,
    render: Render,
    doc: &Document<'_>,
    prefixes: &PrefixSource,
) -> Result<Converted, Error> {
    let format = resolve_source(source, doc)?;
    let text = decode(format, doc.content).map_err(Error::Parse)?;
    let graph = parse(format, text, doc.base)?;
    let graph = augment_prefixes(&graph, prefixes);
    let output = serialize(&graph, target)?;
    let body = match render {
        Render::Raw => output,
        Render::Html => html_page(&format!("{} to {}", format.label(), target.label()), &highlight(&output, target)),
    };
    Ok(Converted { source: format, body, media_type: media_type_for(target, render) })
}

/// Line and column of a parse error, if the error carries them.
pub fn error_position(error: &Error) -> Option<(usize, usize)> {
    match error {
        Error::Parse(ParseError { line: Some(l), column, .. }) => Some((*l, column.unwrap_or(1))),
        _ => None,
    }
}
