//! Notation 3, restricted to its Turtle subset. N3-only constructs
//! (formulae, rules, paths, quantifiers, `=`) are rejected as unsupported.

use super::text::{is_name_char, is_name_start, Cursor};
use super::{resolved, BlankAllocator, DEFAULT_BASE};
use crate::error::{Error, ParseError};
use crate::formats::FormatId;
use crate::model::{Graph, Iri, Literal, Subject, Term, Triple};
use crate::vocab::{rdf, xsd};

pub fn parse_turtle_n3(input: &str, base: Option<&str>) -> Result<Graph, Error> {
    let mut parser = Parser {
        cur: Cursor::new(input, FormatId::N3),
        base: base.unwrap_or(DEFAULT_BASE).to_string(),
        graph: Graph::new(),
        blanks: BlankAllocator::default(),
    };
    parser.document()?;
    Ok(parser.graph)
}

struct Parser<'a> {
    cur: Cursor<'a>,
    base: String,
    graph: Graph,
    blanks: BlankAllocator,
}

fn unsupported(feature: &str) -> Error {
    Error::unsupported(FormatId::N3, feature)
}

impl Parser<'_> {
    fn ws(&mut self) {
        self.cur.skip_ws_and_comments();
    }

    fn document(&mut self) -> Result<(), Error> {
        loop {
            self.ws();
            if self.cur.at_end() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> Result<(), Error> {
        if self.cur.eat("@prefix") {
            self.prefix_decl()?;
            self.ws();
            self.cur.expect_char('.')?;
        } else if self.cur.eat("@base") {
            self.base_decl()?;
            self.ws();
            self.cur.expect_char('.')?;
        } else if self.cur.eat_keyword_ci("PREFIX") {
            self.prefix_decl()?;
        } else if self.cur.eat_keyword_ci("BASE") {
            self.base_decl()?;
        } else if ["@keywords", "@forAll", "@forSome"].iter().any(|k| self.cur.starts_with(k)) {
            return Err(unsupported("N3 quantifiers and @keywords"));
        } else {
            self.triples()?;
            self.ws();
            self.cur.expect_char('.')?;
        }
        Ok(())
    }

    fn prefix_decl(&mut self) -> Result<(), Error> {
        self.ws();
        let start = self.cur.pos();
        let prefix = self.read_prefix_name();
        if !self.cur.eat_char(':') {
            return Err(self.cur.error_at(start, "expected prefix name followed by ':'").into());
        }
        self.ws();
        let ns = self.iriref()?;
        self.graph.prefixes.bind(prefix, ns.into_string());
        Ok(())
    }

    fn base_decl(&mut self) -> Result<(), Error> {
        self.ws();
        let iri = self.iriref()?;
        self.base = iri.into_string();
        Ok(())
    }

    fn read_prefix_name(&mut self) -> String {
        let mut out = String::new();
        if let Some(c) = self.cur.peek() {
            if c.is_alphabetic() {
                while let Some(c) = self.cur.peek() {
                    if is_name_char(c) || c == '.' {
                        out.push(c);
                        self.cur.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        while out.ends_with('.') {
            out.pop();
            // Step back over the trailing dot.
            self.rewind(1);
        }
        out
    }

    fn rewind(&mut self, bytes: usize) {
        self.cur.set_pos(self.cur.pos() - bytes);
    }

    fn input(&self) -> &str {
        self.cur.input()
    }

    fn triples(&mut self) -> Result<(), Error> {
        if self.cur.peek() == Some('[') {
            let subject = self.blank_property_list()?;
            self.ws();
            if self.cur.peek() != Some('.') {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let start = self.cur.pos();
        let subject = self.term()?;
        let subject = match subject {
            Term::Iri(i) => Subject::Iri(i),
            Term::Blank(b) => Subject::Blank(b),
            Term::Literal(_) => return Err(self.cur.error_at(start, "a literal cannot be a subject").into()),
        };
        self.ws();
        self.predicate_object_list(&subject)
    }

    fn predicate_object_list(&mut self, subject: &Subject) -> Result<(), Error> {
        loop {
            self.ws();
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.ws();
            if !self.cur.eat_char(';') {
                return Ok(());
            }
            // Repeated or trailing semicolons are allowed.
            loop {
                self.ws();
                if !self.cur.eat_char(';') {
                    break;
                }
            }
            if matches!(self.cur.peek(), Some('.' | ']') | None) {
                return Ok(());
            }
        }
    }

    fn object_list(&mut self, subject: &Subject, predicate: &Iri) -> Result<(), Error> {
        loop {
            self.ws();
            let object = self.term()?;
            self.graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
            self.ws();
            if !self.cur.eat_char(',') {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri, Error> {
        let start = self.cur.pos();
        if self.cur.starts_with("=>") || self.cur.starts_with("<=") || self.cur.starts_with("=") {
            return Err(unsupported("N3 rules and equality"));
        }
        if self.cur.peek() == Some('a') && !self.cur.peek_nth(1).is_some_and(|c| is_name_char(c) || c == ':' || c == '.') {
            self.cur.bump();
            return Ok(Iri::new(rdf::TYPE).unwrap());
        }
        if self.cur.eat_keyword_ci("is") || self.cur.starts_with("@is") || self.cur.starts_with("@has") {
            return Err(unsupported("N3 'is ... of' and 'has' predicates"));
        }
        match self.term()? {
            Term::Iri(i) => Ok(i),
            _ => Err(self.cur.error_at(start, "predicate must be an IRI").into()),
        }
    }

    fn term(&mut self) -> Result<Term, Error> {
        let term = self.term_inner()?;
        if matches!(self.cur.peek(), Some('!')) || (self.cur.peek() == Some('^') && self.cur.peek_nth(1) != Some('^')) {
            return Err(unsupported("N3 paths"));
        }
        Ok(term)
    }

    fn term_inner(&mut self) -> Result<Term, Error> {
        let start = self.cur.pos();
        match self.cur.peek() {
            Some('<') => {
                if self.cur.starts_with("<=") {
                    return Err(unsupported("N3 rules and equality"));
                }
                Ok(Term::Iri(self.iriref()?))
            }
            Some('_') if self.cur.peek_nth(1) == Some(':') => {
                self.cur.eat("_:");
                let label = self.cur.read_blank_label()?;
                Ok(Term::Blank(self.blanks.named(&label)))
            }
            Some('[') => Ok(Term::from(self.blank_property_list()?)),
            Some('(') => self.collection(),
            Some('{') => Err(unsupported("N3 formulae")),
            Some('?') => Err(unsupported("N3 variables")),
            Some('"' | '\'') => self.literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => self.numeric(),
            Some(_) => {
                if self.cur.eat_keyword_ci("true") || self.cur.eat_keyword_ci("false") {
                    let text = &self.input()[start..self.cur.pos()];
                    let lit = Literal::typed(text.to_ascii_lowercase(), Iri::new(xsd::BOOLEAN).unwrap()).unwrap();
                    return Ok(Term::Literal(lit));
                }
                Ok(Term::Iri(self.prefixed_name()?))
            }
            None => Err(self.cur.error("unexpected end of input").into()),
        }
    }

    fn iriref(&mut self) -> Result<Iri, Error> {
        let start = self.cur.pos();
        let raw = self.cur.read_iriref()?;
        resolved(&self.base, &raw).map_err(|m| self.cur.error_at(start, m).into())
    }

    fn prefixed_name(&mut self) -> Result<Iri, Error> {
        let start = self.cur.pos();
        let prefix = self.read_prefix_name();
        if !self.cur.eat_char(':') {
            return Err(self
                .cur
                .error_at(start, format!("expected a term, found {}", describe_at(self.input(), start)))
                .into());
        }
        let local = self.read_local_name()?;
        let ns = self
            .graph
            .prefixes
            .namespace(&prefix)
            .ok_or_else(|| self.cur.error_at(start, format!("undefined prefix {:?}", format!("{prefix}:"))))?;
        Iri::new(format!("{ns}{local}")).map_err(|e| self.cur.error_at(start, e.to_string()).into())
    }

    fn read_local_name(&mut self) -> Result<String, ParseError> {
        let mut out = String::new();
        let mut first = true;
        loop {
            let here = self.cur.pos();
            match self.cur.peek() {
                Some('\\') => {
                    self.cur.bump();
                    match self.cur.bump() {
                        Some(c) if "_~.-!$&'()*+,;=/?#@%".contains(c) => out.push(c),
                        _ => return Err(self.cur.error_at(here, "invalid escape in local name")),
                    }
                }
                Some('%') => {
                    let hex: String = self.cur.rest().chars().skip(1).take(2).collect();
                    if hex.len() == 2 && hex.chars().all(|c| c.is_ascii_hexdigit()) {
                        out.push('%');
                        out.push_str(&hex);
                        self.cur.bump();
                        self.cur.bump();
                        self.cur.bump();
                    } else {
                        return Err(self.cur.error_at(here, "invalid percent escape in local name"));
                    }
                }
                Some(c) if is_name_char(c) || c == ':' || (first && (is_name_start(c) || c.is_ascii_digit())) => {
                    out.push(c);
                    self.cur.bump();
                }
                Some('.') if !first => {
                    // A dot belongs to the name only if more name follows.
                    let next = self.cur.peek_nth(1);
                    if next.is_some_and(|c| is_name_char(c) || c == ':' || c == '%' || c == '\\') {
                        out.push('.');
                        self.cur.bump();
                    } else {
                        break;
                    }
                }
                _ => break,
            }
            first = false;
        }
        Ok(out)
    }

    fn blank_property_list(&mut self) -> Result<Subject, Error> {
        self.cur.expect_char('[')?;
        let node = Subject::Blank(self.blanks.fresh());
        self.ws();
        if !self.cur.eat_char(']') {
            self.predicate_object_list(&node)?;
            self.ws();
            self.cur.expect_char(']')?;
        }
        Ok(node)
    }

    fn collection(&mut self) -> Result<Term, Error> {
        self.cur.expect_char('(')?;
        let mut items = Vec::new();
        loop {
            self.ws();
            if self.cur.eat_char(')') {
                break;
            }
            if self.cur.at_end() {
                return Err(self.cur.error("unterminated collection").into());
            }
            items.push(self.term()?);
        }
        let first = Iri::new(rdf::FIRST).unwrap();
        let rest = Iri::new(rdf::REST).unwrap();
        let mut head = Term::Iri(Iri::new(rdf::NIL).unwrap());
        for item in items.into_iter().rev() {
            let node = self.blanks.fresh();
            self.graph.insert(Triple::new(node.clone(), first.clone(), item));
            self.graph.insert(Triple::new(node.clone(), rest.clone(), head));
            head = Term::Blank(node);
        }
        Ok(head)
    }

    fn literal(&mut self) -> Result<Term, Error> {
        let start = self.cur.pos();
        let lexical = self.cur.read_string(true)?;
        let (datatype, language) = if self.cur.eat_char('@') {
            (None, Some(self.cur.read_langtag()?))
        } else if self.cur.eat("^^") {
            let dt = match self.cur.peek() {
                Some('<') => self.iriref()?,
                _ => self.prefixed_name()?,
            };
            (Some(dt), None)
        } else {
            (None, None)
        };
        Literal::new(lexical, datatype, language)
            .map(Term::Literal)
            .map_err(|e| self.cur.error_at(start, e.to_string()).into())
    }

    fn numeric(&mut self) -> Result<Term, Error> {
        let start = self.cur.pos();
        let rest = self.cur.rest();
        let bytes = rest.as_bytes();
        let mut i = 0;
        if matches!(bytes.first(), Some(b'+' | b'-')) {
            i += 1;
        }
        let int_start = i;
        while bytes.get(i).is_some_and(u8::is_ascii_digit) {
            i += 1;
        }
        let int_digits = i - int_start;
        let mut frac_digits = 0;
        if bytes.get(i) == Some(&b'.') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
            i += 1;
            while bytes.get(i).is_some_and(u8::is_ascii_digit) {
                i += 1;
                frac_digits += 1;
            }
        }
        let mut exponent = false;
        if int_digits + frac_digits > 0 && matches!(bytes.get(i), Some(b'e' | b'E')) {
            let mut j = i + 1;
            if matches!(bytes.get(j), Some(b'+' | b'-')) {
                j += 1;
            }
            if bytes.get(j).is_some_and(u8::is_ascii_digit) {
                while bytes.get(j).is_some_and(u8::is_ascii_digit) {
                    j += 1;
                }
                i = j;
                exponent = true;
            }
        }
        if int_digits + frac_digits == 0 {
            return Err(self.cur.error_at(start, format!("expected a term, found {}", self.cur.describe_next())).into());
        }
        let datatype = if exponent {
            xsd::DOUBLE
        } else if frac_digits > 0 {
            xsd::DECIMAL
        } else {
            xsd::INTEGER
        };
        let lexical = rest[..i].to_string();
        for _ in 0..i {
            self.cur.bump();
        }
        Ok(Term::Literal(Literal::typed(lexical, Iri::new(datatype).unwrap()).unwrap()))
    }
}

fn describe_at(input: &str, pos: usize) -> String {
    let snippet: String = input[pos..].chars().take(12).take_while(|c| *c != '\n').collect();
    if snippet.is_empty() {
        "end of input".to_string()
    } else {
        format!("{snippet:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsers::parse_ntriples;

    fn nt(g: &Graph) -> Vec<String> {
        g.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn prefixed_example() {
        let g = parse_turtle_n3("@prefix : <http://example.org/#> . :a :b :c .", None).unwrap();
        assert_eq!(
            nt(&g),
            vec!["<http://example.org/#a> <http://example.org/#b> <http://example.org/#c> ."]
        );
        assert_eq!(g.prefixes.namespace(""), Some("http://example.org/#"));
    }

    #[test]
    fn undefined_prefix() {
        let err = parse_turtle_n3(":a :b :c .", None).unwrap_err();
        let Error::Parse(p) = err else { panic!("{err:?}") };
        assert!(p.message.contains("undefined prefix"), "{}", p.message);
        assert_eq!((p.line, p.column), (Some(1), Some(1)));
    }

    #[test]
    fn integer_shorthand_matches_expanded_form() {
        let g = parse_turtle_n3("@prefix ex: <http://e/> . ex:s ex:p 42 .", None).unwrap();
        let expected = parse_ntriples(
            "<http://e/s> <http://e/p> \"42\"^^<http://www.w3.org/2001/XMLSchema#integer> .",
            None,
        )
        .unwrap();
        assert_eq!(nt(&g), nt(&expected));
    }

    #[test]
    fn numeric_and_boolean_forms() {
        let g = parse_turtle_n3("<http://e/s> <http://e/p> 4.2, -1.5e3, true, 7.", None).unwrap();
        let mut dts: Vec<&str> = g
            .iter()
            .filter_map(|t| t.object.as_literal())
            .map(|l| l.datatype().unwrap().as_str())
            .collect();
        dts.sort();
        assert_eq!(dts, vec![xsd::BOOLEAN, xsd::DECIMAL, xsd::DOUBLE, xsd::INTEGER]);
    }

    #[test]
    fn abbreviations() {
        let doc = r#"
            PREFIX ex: <http://e/>
            @base <http://base/> .
            ex:s a ex:T ;
                ex:p "x"@en, 'y', """multi
line""" ;
                ex:q [ ex:r <rel> ] ;
                ex:l ( 1 _:b ) .
            _:b ex:p "z"^^ex:dt .
        "#;
        let g = parse_turtle_n3(doc, None).unwrap();
        let lines = nt(&g);
        assert!(lines.contains(&"<http://e/s> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://e/T> .".to_string()));
        assert!(lines.iter().any(|l| l.contains("<http://base/rel>")));
        assert!(lines.iter().any(|l| l.contains("\"multi\\nline\"")));
        assert!(lines.iter().any(|l| l.contains("^^<http://e/dt>")));
        // 1 type + 3 ex:p + ex:q + ex:r + ex:l + 4 list triples + _:b ex:p
        assert_eq!(g.len(), 12);
    }

    #[test]
    fn n3_only_constructs_are_unsupported() {
        for doc in [
            "{ <http://e/a> <http://e/b> <http://e/c> } => { } .",
            "<http://e/a> = <http://e/b> .",
            "@forAll <http://e/x> .",
            "@prefix : <http://e/> . :a!:b :c :d .",
        ] {
            assert!(
                matches!(parse_turtle_n3(doc, None), Err(Error::UnsupportedFeature { .. })),
                "{doc}"
            );
        }
    }

    #[test]
    fn error_line_numbers() {
        let doc = "@prefix : <http://e/> .\n:a :b :c .\n:a :b %% .\n";
        let Error::Parse(p) = parse_turtle_n3(doc, None).unwrap_err() else { panic!() };
        assert_eq!(p.line, Some(3));
    }

    #[test]
    fn long_string_with_trailing_quote() {
        let g = parse_turtle_n3(r#"<http://e/s> <http://e/p> """a"""" ."#, None).unwrap();
        assert_eq!(g.iter().next().unwrap().object.as_literal().unwrap().lexical(), "a\"");
    }
}
