//! The closed registry of serialization formats, their URI tokens and
//! media types.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A concrete serialization format. `PrettyXml` and `RdfJsonPretty` are
/// output-only variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormatId {
    Rdfa,
    Microdata,
    Xml,
    PrettyXml,
    N3,
    Nt,
    RdfJson,
    RdfJsonPretty,
    JsonLd,
}

/// Whether output is returned as-is or as syntax-highlighted HTML.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Render {
    #[default]
    Raw,
    Html,
}

impl FormatId {
    /// All target formats in URI-token listing order.
    pub const TARGETS: [FormatId; 9] = [
        FormatId::Rdfa,
        FormatId::Microdata,
        FormatId::Xml,
        FormatId::PrettyXml,
        FormatId::N3,
        FormatId::Nt,
        FormatId::RdfJson,
        FormatId::RdfJsonPretty,
        FormatId::JsonLd,
    ];

    /// Formats accepted as conversion input.
    pub const SOURCES: [FormatId; 7] = [
        FormatId::Rdfa,
        FormatId::Microdata,
        FormatId::Xml,
        FormatId::N3,
        FormatId::Nt,
        FormatId::RdfJson,
        FormatId::JsonLd,
    ];

    pub fn token(self) -> &'static str {
        match self {
            FormatId::Rdfa => "rdfa",
            FormatId::Microdata => "microdata",
            FormatId::Xml => "xml",
            FormatId::PrettyXml => "pretty-xml",
            FormatId::N3 => "n3",
            FormatId::Nt => "nt",
            FormatId::RdfJson => "rdf-json",
            FormatId::RdfJsonPretty => "rdf-json-pretty",
            FormatId::JsonLd => "json-ld",
        }
    }

    pub fn from_token(token: &str) -> Result<FormatId, Error> {
        FormatId::TARGETS
            .into_iter()
            .find(|f| f.token() == token)
            .ok_or_else(|| Error::UnknownFormat(token.to_string()))
    }

    pub fn is_source(self) -> bool {
        !matches!(self, FormatId::PrettyXml | FormatId::RdfJsonPretty)
    }

    /// The parseable format a pretty variant reads back as.
    pub fn base(self) -> FormatId {
        match self {
            FormatId::PrettyXml => FormatId::Xml,
            FormatId::RdfJsonPretty => FormatId::RdfJson,
            f => f,
        }
    }

    /// Human-readable name.
    pub fn label(self) -> &'static str {
        match self {
            FormatId::Rdfa => "RDFa",
            FormatId::Microdata => "Microdata",
            FormatId::Xml => "RDF/XML",
            FormatId::PrettyXml => "RDF/XML (concise)",
            FormatId::N3 => "Notation 3",
            FormatId::Nt => "N-Triples",
            FormatId::RdfJson => "RDF/JSON",
            FormatId::RdfJsonPretty => "RDF/JSON (concise)",
            FormatId::JsonLd => "JSON-LD",
        }
    }

    /// Media types sent in the `Accept` header when fetching this format,
    /// most preferred first.
    pub fn accept_types(self) -> &'static [&'static str] {
        match self.base() {
            FormatId::Rdfa => &["text/html", "application/xhtml+xml"],
            FormatId::Microdata => &["text/html"],
            FormatId::Xml => &["application/rdf+xml"],
            FormatId::N3 => &["text/n3", "text/turtle", "application/x-turtle"],
            FormatId::Nt => &["text/plain", "application/n-triples"],
            FormatId::RdfJson => &["application/json"],
            FormatId::JsonLd => &["application/ld+json", "application/json"],
            FormatId::PrettyXml | FormatId::RdfJsonPretty => unreachable!("base() strips pretty variants"),
        }
    }
}

impl fmt::Display for FormatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FormatId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormatId::from_token(s)
    }
}

/// The source side of a conversion: a concrete input format or `detect`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceFormat {
    Format(FormatId),
    Detect,
}

impl SourceFormat {
    /// All source tokens in listing order, `detect` last.
    pub const ALL: [SourceFormat; 8] = [
        SourceFormat::Format(FormatId::Rdfa),
        SourceFormat::Format(FormatId::Microdata),
        SourceFormat::Format(FormatId::Xml),
        SourceFormat::Format(FormatId::N3),
        SourceFormat::Format(FormatId::Nt),
        SourceFormat::Format(FormatId::RdfJson),
        SourceFormat::Format(FormatId::JsonLd),
        SourceFormat::Detect,
    ];

    pub fn token(self) -> &'static str {
        match self {
            SourceFormat::Format(f) => f.token(),
            SourceFormat::Detect => "detect",
        }
    }

    /// Parses a source token. Output-only tokens are rejected.
    pub fn from_token(token: &str) -> Result<SourceFormat, Error> {
        if token == "detect" {
            return Ok(SourceFormat::Detect);
        }
        let format = FormatId::from_token(token)?;
        if format.is_source() {
            Ok(SourceFormat::Format(format))
        } else {
            Err(Error::TargetOnlyFormat(token.to_string()))
        }
    }
}

impl fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for SourceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SourceFormat::from_token(s)
    }
}

/// The response media type for a target format.
pub fn media_type_for(format: FormatId, render: Render) -> &'static str {
    if render == Render::Html {
        return "text/html";
    }
    match format {
        FormatId::Rdfa | FormatId::Microdata => "text/html",
        FormatId::Xml | FormatId::PrettyXml => "application/rdf+xml",
        FormatId::N3 => "text/n3",
        FormatId::Nt => "text/plain",
        FormatId::RdfJson | FormatId::RdfJsonPretty | FormatId::JsonLd => "application/json",
    }
}

/// Strips parameters and normalises case: `Text/HTML; charset=utf-8` →
/// `text/html`.
pub fn essence(media_type: &str) -> String {
    media_type.split(';').next().unwrap_or("").trim().to_ascii_lowercase()
}

/// Maps a media type to the format it most likely denotes. `text/html`
/// resolves to RDFa and `application/json` to RDF/JSON; `detect` refines
/// those two by sniffing.
pub fn format_for_media_type(media_type: &str) -> Result<FormatId, Error> {
    let essence = essence(media_type);
    let format = match essence.as_str() {
        "text/html" | "application/xhtml+xml" => FormatId::Rdfa,
        "application/rdf+xml" => FormatId::Xml,
        "text/n3" | "text/turtle" | "application/x-turtle" => FormatId::N3,
        "text/plain" | "application/n-triples" => FormatId::Nt,
        "application/json" => FormatId::RdfJson,
        "application/ld+json" => FormatId::JsonLd,
        _ => {
            return Err(Error::DetectionFailed(format!(
                "media type {media_type:?} does not correspond to a supported format"
            )))
        }
    };
    Ok(format)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn media_types_per_target() {
        let expected = [
            (FormatId::Rdfa, "text/html"),
            (FormatId::Microdata, "text/html"),
            (FormatId::Xml, "application/rdf+xml"),
            (FormatId::PrettyXml, "application/rdf+xml"),
            (FormatId::N3, "text/n3"),
            (FormatId::Nt, "text/plain"),
            (FormatId::RdfJson, "application/json"),
            (FormatId::RdfJsonPretty, "application/json"),
            (FormatId::JsonLd, "application/json"),
        ];
        for (f, mt) in expected {
            assert_eq!(media_type_for(f, Render::Raw), mt, "{f}");
            assert_eq!(media_type_for(f, Render::Html), "text/html", "{f}");
        }
    }

    #[test]
    fn reverse_mapping_returns_base_format() {
        for f in FormatId::TARGETS {
            let back = format_for_media_type(media_type_for(f, Render::Raw)).unwrap();
            // Ambiguous rows resolve to the documented tie-break.
            let expected = match f.base() {
                FormatId::Microdata => FormatId::Rdfa,
                FormatId::JsonLd => FormatId::RdfJson,
                b => b,
            };
            assert_eq!(back, expected, "{f}");
        }
    }

    #[test]
    fn media_type_parameters_ignored() {
        assert_eq!(format_for_media_type("text/n3; charset=utf-8").unwrap(), FormatId::N3);
        assert_eq!(format_for_media_type("application/rdf+xml").unwrap(), FormatId::Xml);
        assert_eq!(format_for_media_type("text/turtle").unwrap(), FormatId::N3);
        assert_eq!(format_for_media_type("application/ld+json").unwrap(), FormatId::JsonLd);
        assert!(matches!(
            format_for_media_type("application/x-unknown"),
            Err(Error::DetectionFailed(_))
        ));
    }

    #[test]
    fn tokens() {
        assert_eq!(FormatId::from_token("pretty-xml").unwrap(), FormatId::PrettyXml);
        assert!(matches!(FormatId::from_token("bogus"), Err(Error::UnknownFormat(_))));
        assert!(matches!(
            SourceFormat::from_token("pretty-xml"),
            Err(Error::TargetOnlyFormat(_))
        ));
        assert!(matches!(
            SourceFormat::from_token("rdf-json-pretty"),
            Err(Error::TargetOnlyFormat(_))
        ));
        assert_eq!(SourceFormat::from_token("detect").unwrap(), SourceFormat::Detect);
        assert!(FormatId::from_token("detect").is_err());
    }
}
