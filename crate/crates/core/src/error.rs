use std::fmt;

use crate::formats::FormatId;

/// A syntax or structure error in a parsed document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub format: FormatId,
    pub message: String,
    /// 1-based.
    pub line: Option<usize>,
    /// 1-based, counted in characters.
    pub column: Option<usize>,
}

impl ParseError {
    pub fn new(format: FormatId, message: impl Into<String>) -> Self {
        let message = message.into();
        ParseError {
            format,
            message: if message.is_empty() { "malformed input".to_string() } else { message },
            line: None,
            column: None,
        }
    }

    pub fn at(mut self, line: usize, column: usize) -> Self {
        self.line = Some(line);
        self.column = Some(column);
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} syntax error", self.format.label())?;
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, " at line {l}, column {c}")?,
            (Some(l), None) => write!(f, " at line {l}")?,
            _ => {}
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("format {0:?} can only be used as a conversion target")]
    TargetOnlyFormat(String),
    #[error("automatic format detection failed: {0}")]
    DetectionFailed(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{} feature not supported: {feature}", format.label())]
    UnsupportedFeature { format: FormatId, feature: String },
    #[error("IRI <{0}> cannot be written as an XML qualified name")]
    UnserializableIri(String),
    #[error("the graph cannot be written as {}: {reason}", format.label())]
    Unrepresentable { format: FormatId, reason: String },
}

impl Error {
    /// Whether the input was fine but the target format cannot express it.
    pub fn is_output_error(&self) -> bool {
        matches!(self, Error::UnserializableIri(_) | Error::Unrepresentable { .. })
    }

    pub fn unsupported(format: FormatId, feature: impl Into<String>) -> Self {
        Error::UnsupportedFeature {
            format,
            feature: feature.into(),
        }
    }
}

/// Converts a byte offset into a 1-based (line, column) pair, counting
/// columns in characters.
pub fn line_col(input: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(input.len());
    let before = &input[..floor_char_boundary(input, offset)];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let column = before[line_start..].chars().count() + 1;
    (line, column)
}

fn floor_char_boundary(s: &str, mut i: usize) -> usize {
    while i > 0 && !s.is_char_boundary(i) {
        i -= 1;
    }
    i
}
