//! Character cursor and token readers shared by the N-Triples and Turtle
//! parsers.

use crate::error::{line_col, ParseError};
use crate::formats::FormatId;

pub(crate) struct Cursor<'a> {
    input: &'a str,
    pos: usize,
    format: FormatId,
    /// Added to reported line numbers when the cursor runs over a single line
    /// of a larger document.
    line_offset: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(input: &'a str, format: FormatId) -> Self {
        Cursor { input, pos: 0, format, line_offset: 0 }
    }

    pub fn for_line(line: &'a str, format: FormatId, line_number: usize) -> Self {
        Cursor { input: line, pos: 0, format, line_offset: line_number - 1 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn input(&self) -> &'a str {
        self.input
    }

    /// Moves back to an earlier char boundary.
    pub fn set_pos(&mut self, pos: usize) {
        debug_assert!(self.input.is_char_boundary(pos));
        self.pos = pos;
    }

    pub fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.input.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn eat_char(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    /// Case-insensitive keyword match that must not be followed by a name
    /// character.
    pub fn eat_keyword_ci(&mut self, kw: &str) -> bool {
        let rest = self.rest();
        if rest.len() >= kw.len()
            && rest.is_char_boundary(kw.len())
            && rest[..kw.len()].eq_ignore_ascii_case(kw)
            && !rest[kw.len()..].chars().next().is_some_and(is_name_char)
        {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    pub fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = line_col(self.input, pos);
        ParseError::new(self.format, message).at(line + self.line_offset, column)
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    pub fn expect_char(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_char(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}', found {}", self.describe_next())))
        }
    }

    pub fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let snippet: String = self.rest().chars().take(12).take_while(|c| *c != '\n').collect();
                format!("{snippet:?}")
            }
        }
    }

    /// Skips spaces and tabs only.
    pub fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.pos += 1;
        }
    }

    /// Skips whitespace including newlines and `#` comments.
    pub fn skip_ws_and_comments(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    /// Reads an IRI reference after the opening `<`, through the closing
    /// `>`, decoding `\u`/`\U` escapes.
    pub fn read_iriref(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        self.expect_char('<')?;
        let mut out = String::new();
        loop {
            let here = self.pos;
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated IRI")),
                Some('>') => return Ok(out),
                Some('\\') => {
                    let c = self.read_unicode_escape(here)?;
                    out.push(c);
                }
                Some(c) if c.is_control() || matches!(c, ' ' | '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error_at(here, format!("character {c:?} is not allowed in an IRI")));
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn read_unicode_escape(&mut self, at: usize) -> Result<char, ParseError> {
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error_at(at, "invalid escape sequence")),
        };
        let rest = self.rest();
        if rest.len() < len || !rest.is_char_boundary(len) {
            return Err(self.error_at(at, "truncated unicode escape"));
        }
        let hex = &rest[..len];
        let value = u32::from_str_radix(hex, 16).map_err(|_| self.error_at(at, "invalid unicode escape"))?;
        let c = char::from_u32(value).ok_or_else(|| self.error_at(at, "unicode escape is not a character"))?;
        self.pos += len;
        Ok(c)
    }

    /// Reads a quoted string starting at the opening quote. Handles `"`, `'`
    /// and the long `"""` / `'''` forms when `allow_long` is set.
    pub fn read_string(&mut self, allow_long: bool) -> Result<String, ParseError> {
        let start = self.pos;
        let quote = match self.peek() {
            Some(q @ ('"' | '\'')) => q,
            _ => return Err(self.error("expected a string")),
        };
        let triple: String = std::iter::repeat_n(quote, 3).collect();
        let long = allow_long && self.starts_with(&triple);
        if long {
            self.pos += 3;
        } else {
            self.pos += 1;
        }
        let mut out = String::new();
        loop {
            if long && self.starts_with(&triple) {
                // A run of n >= 3 quotes is n - 3 content quotes then the
                // closing delimiter.
                let run = self.rest().chars().take_while(|&c| c == quote).count();
                out.extend(std::iter::repeat_n(quote, run - 3));
                self.pos += run;
                return Ok(out);
            }
            let here = self.pos;
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated string")),
                Some(c) if c == quote && !long => return Ok(out),
                Some('\n' | '\r') if !long => return Err(self.error_at(here, "line break in string")),
                Some('\\') => {
                    let c = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u' | 'U') => {
                            out.push(self.read_unicode_escape(here)?);
                            continue;
                        }
                        _ => return Err(self.error_at(here, "invalid escape sequence")),
                    };
                    self.bump();
                    out.push(c);
                }
                Some(c) => out.push(c),
            }
        }
    }

    /// Reads a language tag after `@`.
    pub fn read_langtag(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '-' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let valid = !out.is_empty()
            && out.split('-').enumerate().all(|(i, part)| {
                !part.is_empty() && (i > 0 || part.bytes().all(|b| b.is_ascii_alphabetic()))
            });
        if valid {
            Ok(out)
        } else {
            Err(self.error_at(start, "invalid language tag"))
        }
    }

    /// Reads a blank node label after `_:`.
    pub fn read_blank_label(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        let mut out = String::new();
        match self.peek() {
            Some(c) if is_name_start(c) || c.is_ascii_digit() => {}
            _ => return Err(self.error_at(start, "invalid blank node label")),
        }
        while let Some(c) = self.peek() {
            if is_name_char(c) || c == '.' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        while out.ends_with('.') {
            out.pop();
            self.pos -= 1;
        }
        Ok(out)
    }
}

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '\u{B7}'
}
