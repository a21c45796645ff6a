//! Token-level syntax highlighting to HTML.
//!
//! Output is `<div class="highlight"><pre>…</pre></div>` with tokens wrapped
//! in `<span class="…">`:
//!
//! | class | meaning                                        |
//! |-------|------------------------------------------------|
//! | `kw`  | keyword, directive, language tag, literal name |
//! | `nt`  | markup tag name, IRI reference, JSON key       |
//! | `s`   | string                                         |
//! | `nv`  | prefixed name, blank node, attribute name      |
//! | `c`   | comment                                        |
//! | `m`   | number                                         |
//! | `p`   | punctuation                                    |
//!
//! Removing the tags and unescaping the output yields the input exactly.

use crate::formats::FormatId;

/// Default stylesheet for the classes above.
pub const STYLESHEET: &str = "\
.highlight { background: #f8f8f8; border: 1px solid #ddd; padding: 0.5em 1em; overflow-x: auto; }
.highlight pre { margin: 0; font-family: Menlo, Consolas, monospace; font-size: 13px; line-height: 1.4; }
.highlight .kw { color: #008000; font-weight: bold; }
.highlight .nt { color: #0000cc; }
.highlight .s { color: #ba2121; }
.highlight .nv { color: #19177c; }
.highlight .c { color: #408080; font-style: italic; }
.highlight .m { color: #666666; }
.highlight .p { color: #555555; }
";

#[derive(Clone, Copy)]
enum Class {
    Keyword,
    Tag,
    Str,
    Name,
    Comment,
    Number,
    Punct,
}

impl Class {
    fn css(self) -> &'static str {
        match self {
            Class::Keyword => "kw",
            Class::Tag => "nt",
            Class::Str => "s",
            Class::Name => "nv",
            Class::Comment => "c",
            Class::Number => "m",
            Class::Punct => "p",
        }
    }
}

pub fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

struct Out(String);

impl Out {
    fn raw(&mut self, text: &str) {
        self.0.push_str(&escape_html(text));
    }

    fn token(&mut self, class: Class, text: &str) {
        if text.is_empty() {
            return;
        }
        self.0.push_str("<span class=\"");
        self.0.push_str(class.css());
        self.0.push_str("\">");
        self.0.push_str(&escape_html(text));
        self.0.push_str("</span>");
    }
}

pub fn highlight(text: &str, format: FormatId) -> String {
    let mut out = Out(String::from("<div class=\"highlight\"><pre>"));
    match format {
        FormatId::N3 | FormatId::Nt => lex_n3(text, &mut out),
        FormatId::Xml | FormatId::PrettyXml | FormatId::Rdfa | FormatId::Microdata => lex_markup(text, &mut out),
        FormatId::RdfJson | FormatId::RdfJsonPretty | FormatId::JsonLd => lex_json(text, &mut out),
    }
    out.0.push_str("</pre></div>");
    out.0
}

/// A standalone HTML page around highlighted output, with the stylesheet
/// inlined.
pub fn html_page(title: &str, highlighted: &str) -> String {
    format!(
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>{}</title>\n<style>\n{STYLESHEET}</style>\n</head>\n<body>\n{highlighted}\n</body>\n</html>\n",
        escape_html(title)
    )
}

/// Byte length of the prefix of `s` whose chars satisfy `f`.
fn span_while(s: &str, f: impl Fn(char) -> bool) -> usize {
    s.char_indices().find(|&(_, c)| !f(c)).map_or(s.len(), |(i, _)| i)
}

fn first_char_len(s: &str) -> usize {
    s.chars().next().map_or(0, char::len_utf8)
}

/// Length of a quoted string at the start of `s` (which starts with a
/// quote), honouring backslash escapes; runs to the end if unterminated.
fn quoted_len(s: &str, allow_long: bool, stop_at_newline: bool) -> usize {
    let q = s.chars().next().expect("starts with a quote");
    let triple: String = std::iter::repeat_n(q, 3).collect();
    let long = allow_long && s.starts_with(&triple);
    let mut i = if long { 3 } else { 1 };
    let bytes = s.as_bytes();
    while i < s.len() {
        if long && s[i..].starts_with(&triple) {
            let run = span_while(&s[i..], |c| c == q);
            return i + run;
        }
        match bytes[i] {
            b'\\' => {
                i += 1;
                if i < s.len() {
                    i += first_char_len(&s[i..]);
                }
            }
            b'\n' if stop_at_newline && !long => return i,
            _ => {
                let c_len = first_char_len(&s[i..]);
                if !long && s[i..].starts_with(q) {
                    return i + c_len;
                }
                i += c_len;
            }
        }
    }
    s.len()
}

fn is_pname_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%' | '\u{B7}')
}

fn lex_n3(text: &str, out: &mut Out) {
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        let (class, len): (Option<Class>, usize) = match c {
            c if c.is_whitespace() => (None, span_while(rest, char::is_whitespace)),
            '#' => (Some(Class::Comment), span_while(rest, |c| c != '\n')),
            '<' => {
                let body = span_while(&rest[1..], |c| c != '>' && c != '\n' && !c.is_whitespace());
                if rest[1 + body..].starts_with('>') {
                    (Some(Class::Tag), body + 2)
                } else {
                    (Some(Class::Punct), 1)
                }
            }
            '"' | '\'' => (Some(Class::Str), quoted_len(rest, true, true)),
            '@' => {
                let word = span_while(&rest[1..], |c| c.is_ascii_alphanumeric() || c == '-');
                (Some(Class::Keyword), 1 + word)
            }
            '^' if rest.starts_with("^^") => (Some(Class::Punct), 2),
            '_' if rest.starts_with("_:") => {
                let n = 2 + span_while(&rest[2..], is_pname_char);
                (Some(Class::Name), trim_trailing_dots(rest, n))
            }
            c if c.is_ascii_digit() || ((c == '+' || c == '-') && rest[1..].starts_with(|d: char| d.is_ascii_digit())) => {
                let n = 1 + span_while(&rest[1..], |d| d.is_ascii_alphanumeric() || d == '.' || d == '+' || d == '-');
                (Some(Class::Number), trim_trailing_dots(rest, n))
            }
            ':' => {
                let n = trim_trailing_dots(rest, 1 + span_while(&rest[1..], is_pname_char));
                (Some(Class::Name), n)
            }
            c if c.is_alphabetic() || c == '_' => {
                let n = trim_trailing_dots(rest, span_while(rest, is_pname_char));
                let word = &rest[..n];
                let class = if word.contains(':') {
                    Class::Name
                } else if matches!(word, "a" | "true" | "false") || word.eq_ignore_ascii_case("prefix") || word.eq_ignore_ascii_case("base") {
                    Class::Keyword
                } else {
                    return_plain(out, word);
                    rest = &rest[n..];
                    continue;
                };
                (Some(class), n)
            }
            '.' | ';' | ',' | '[' | ']' | '(' | ')' | '{' | '}' | '=' => (Some(Class::Punct), 1),
            _ => (None, first_char_len(rest)),
        };
        let (token, tail) = rest.split_at(len.max(first_char_len(rest)));
        match class {
            Some(class) => out.token(class, token),
            None => out.raw(token),
        }
        rest = tail;
    }
}

fn return_plain(out: &mut Out, text: &str) {
    out.raw(text);
}

fn trim_trailing_dots(s: &str, mut n: usize) -> usize {
    while n > 1 && s[..n].ends_with('.') {
        n -= 1;
    }
    n
}

fn lex_markup(text: &str, out: &mut Out) {
    let mut rest = text;
    while !rest.is_empty() {
        if rest.starts_with("<!--") {
            let n = rest.find("-->").map_or(rest.len(), |i| i + 3);
            out.token(Class::Comment, &rest[..n]);
            rest = &rest[n..];
        } else if rest.starts_with("<?") || rest.starts_with("<!") {
            let n = rest.find('>').map_or(rest.len(), |i| i + 1);
            out.token(Class::Keyword, &rest[..n]);
            rest = &rest[n..];
        } else if rest.starts_with('<') && rest[1..].starts_with(|c: char| c.is_alphabetic() || c == '/' || c == '_') {
            rest = lex_tag(rest, out);
        } else {
            let skip = first_char_len(rest);
            let n = rest[skip..].find('<').map_or(rest.len(), |i| i + skip);
            out.raw(&rest[..n]);
            rest = &rest[n..];
        }
    }
}

/// Lexes one tag starting at `<`; returns the remaining input.
fn lex_tag<'a>(s: &'a str, out: &mut Out) -> &'a str {
    let open = if s.starts_with("</") { 2 } else { 1 };
    out.token(Class::Punct, &s[..open]);
    let mut rest = &s[open..];
    let name = span_while(rest, |c| !c.is_whitespace() && c != '>' && c != '/' && c != '<');
    out.token(Class::Tag, &rest[..name]);
    rest = &rest[name..];
    loop {
        let Some(c) = rest.chars().next() else { return rest };
        if c.is_whitespace() {
            let n = span_while(rest, char::is_whitespace);
            out.raw(&rest[..n]);
            rest = &rest[n..];
        } else if let Some(after) = rest.strip_prefix("/>") {
            out.token(Class::Punct, "/>");
            return after;
        } else if c == '>' {
            out.token(Class::Punct, ">");
            return &rest[1..];
        } else if c == '<' {
            return rest;
        } else if c == '=' {
            out.token(Class::Punct, "=");
            rest = &rest[1..];
        } else if c == '"' || c == '\'' {
            let n = rest[1..].find(c).map_or(rest.len(), |i| i + 2);
            out.token(Class::Str, &rest[..n]);
            rest = &rest[n..];
        } else {
            let n = span_while(rest, |c| !c.is_whitespace() && !matches!(c, '=' | '>' | '<' | '"' | '\''))
                .max(first_char_len(rest));
            let n = if rest[..n].ends_with('/') && rest[n..].starts_with('>') { n - 1 } else { n };
            let n = n.max(first_char_len(rest));
            out.token(Class::Name, &rest[..n]);
            rest = &rest[n..];
        }
    }
}

fn lex_json(text: &str, out: &mut Out) {
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        let n;
        match c {
            '"' => {
                n = quoted_len(rest, false, false);
                let after = rest[n..].trim_start();
                let class = if after.starts_with(':') { Class::Tag } else { Class::Str };
                out.token(class, &rest[..n]);
            }
            c if c.is_whitespace() => {
                n = span_while(rest, char::is_whitespace);
                out.raw(&rest[..n]);
            }
            '-' | '0'..='9' => {
                n = span_while(rest, |d| d.is_ascii_digit() || matches!(d, '-' | '+' | '.' | 'e' | 'E'));
                out.token(Class::Number, &rest[..n]);
            }
            '{' | '}' | '[' | ']' | ':' | ',' => {
                n = 1;
                out.token(Class::Punct, &rest[..1]);
            }
            c if c.is_ascii_alphabetic() => {
                n = span_while(rest, |d| d.is_ascii_alphabetic());
                let word = &rest[..n];
                if matches!(word, "true" | "false" | "null") {
                    out.token(Class::Keyword, word);
                } else {
                    out.raw(word);
                }
            }
            _ => {
                n = first_char_len(rest);
                out.raw(&rest[..n]);
            }
        }
        rest = &rest[n..];
    }
}

/// Inverse of [`highlight`]: strips tags and unescapes entities.
pub fn strip_highlight(html: &str) -> String {
    strip_tags(html).replace("&lt;", "<").replace("&gt;", ">").replace("&quot;", "\"").replace("&amp;", "&")
}

fn strip_tags(html: &str) -> String {
    let mut text = String::new();
    let mut in_tag = false;
    for c in html.chars() {
        match c {
            '<' => in_tag = true,
            '>' if in_tag => in_tag = false,
            c if !in_tag => text.push(c),
            _ => {}
        }
    }
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spans(html: &str, class: &str) -> Vec<String> {
        let marker = format!("<span class=\"{class}\">");
        html.match_indices(&marker)
            .map(|(i, _)| {
                let start = i + marker.len();
                let end = html[start..].find("</span>").unwrap() + start;
                html[start..end].to_string()
            })
            .collect()
    }

    #[test]
    fn n3_tokens() {
        let h = highlight("@prefix : <http://e/> .", FormatId::N3);
        assert_eq!(spans(&h, "kw"), vec!["@prefix"]);
        assert_eq!(spans(&h, "nv"), vec![":"]);
        assert_eq!(spans(&h, "nt"), vec!["&lt;http://e/&gt;"]);
        assert_eq!(spans(&h, "p"), vec!["."]);
        let h = highlight(":a a :T ; :n \"x\"@en , 5 . # done", FormatId::N3);
        assert_eq!(spans(&h, "nv"), vec![":a", ":T", ":n"]);
        assert_eq!(spans(&h, "kw"), vec!["a", "@en"]);
        assert_eq!(spans(&h, "s"), vec!["&quot;x&quot;"]);
        assert_eq!(spans(&h, "m"), vec!["5"]);
        assert_eq!(spans(&h, "c"), vec!["# done"]);
    }

    #[test]
    fn empty_and_escaping() {
        assert_eq!(highlight("", FormatId::Nt), "<div class=\"highlight\"><pre></pre></div>");
        for f in FormatId::TARGETS {
            let h = highlight("<b>&\"", f);
            let body = &h["<div class=\"highlight\"><pre>".len()..h.len() - "</pre></div>".len()];
            let text: String = strip_tags(body);
            assert_eq!(text, "&lt;b&gt;&amp;&quot;", "{f}: {h}");
        }
    }

    #[test]
    fn markup_and_json_tokens() {
        let h = highlight("<?xml version=\"1.0\"?>\n<rdf:RDF a=\"1\"><!-- c --></rdf:RDF>", FormatId::Xml);
        assert_eq!(spans(&h, "nt"), vec!["rdf:RDF", "rdf:RDF"]);
        assert_eq!(spans(&h, "nv"), vec!["a"]);
        assert_eq!(spans(&h, "c"), vec!["&lt;!-- c --&gt;"]);
        let h = highlight("{\"k\": [\"v\", 1, true]}", FormatId::JsonLd);
        assert_eq!(spans(&h, "nt"), vec!["&quot;k&quot;"]);
        assert_eq!(spans(&h, "s"), vec!["&quot;v&quot;"]);
        assert_eq!(spans(&h, "m"), vec!["1"]);
        assert_eq!(spans(&h, "kw"), vec!["true"]);
    }

    #[test]
    fn text_is_preserved() {
        let samples = [
            "<a href='x' b=\"y\" c/>text &amp; <unclosed",
            "\"unterminated ''' \\",
            "{\"a\":-1.5e3,\"b\":nul}",
            "_:b0 <http://e/#x> \"\"\"long\n\"\"\" ^^xsd:int .\n",
            "é ü 日本 <> @ ^ :",
        ];
        for s in samples {
            for f in FormatId::TARGETS {
                assert_eq!(strip_highlight(&highlight(s, f)), s, "{f}");
            }
        }
    }
}
