use super::text::Cursor;
use super::{resolved, BlankAllocator};
use crate::error::{Error, ParseError};
use crate::formats::FormatId;
use crate::model::{Graph, Iri, Literal, Subject, Term, Triple};

/// Parses N-Triples: one triple per line, blank lines and `#` comments
/// ignored. Relative IRIs are resolved against `base` when one is given.
pub fn parse_ntriples(input: &str, base: Option<&str>) -> Result<Graph, Error> {
    let mut graph = Graph::new();
    let mut blanks = BlankAllocator::default();
    for (index, line) in input.split('\n').enumerate() {
        let mut cur = Cursor::for_line(line, FormatId::Nt, index + 1);
        cur.skip_inline_ws();
        if cur.at_end() || cur.peek() == Some('#') {
            continue;
        }
        let triple = parse_line(&mut cur, base, &mut blanks)?;
        graph.insert(triple);
    }
    Ok(graph)
}

fn parse_line(cur: &mut Cursor<'_>, base: Option<&str>, blanks: &mut BlankAllocator) -> Result<Triple, ParseError> {
    let subject = match cur.peek() {
        Some('<') => Subject::Iri(iri(cur, base)?),
        Some('_') => Subject::Blank(blank(cur, blanks)?),
        _ => return Err(cur.error(format!("expected subject, found {}", cur.describe_next()))),
    };
    cur.skip_inline_ws();
    if cur.peek() != Some('<') {
        return Err(cur.error(format!("expected predicate IRI, found {}", cur.describe_next())));
    }
    let predicate = iri(cur, base)?;
    cur.skip_inline_ws();
    let object = match cur.peek() {
        Some('<') => Term::Iri(iri(cur, base)?),
        Some('_') => Term::Blank(blank(cur, blanks)?),
        Some('"') => Term::Literal(literal(cur, base)?),
        _ => return Err(cur.error(format!("expected object, found {}", cur.describe_next()))),
    };
    cur.skip_inline_ws();
    cur.expect_char('.')?;
    cur.skip_inline_ws();
    if !(cur.at_end() || cur.peek() == Some('#')) {
        return Err(cur.error(format!("unexpected {} after '.'", cur.describe_next())));
    }
    Ok(Triple::new(subject, predicate, object))
}

fn iri(cur: &mut Cursor<'_>, base: Option<&str>) -> Result<Iri, ParseError> {
    let start = cur.pos();
    let raw = cur.read_iriref()?;
    let result = match base {
        Some(b) => resolved(b, &raw),
        None => Iri::new(raw).map_err(|e| e.to_string()),
    };
    result.map_err(|m| cur.error_at(start, m))
}

fn blank(cur: &mut Cursor<'_>, blanks: &mut BlankAllocator) -> Result<crate::model::BlankNode, ParseError> {
    if !cur.eat("_:") {
        return Err(cur.error("expected '_:'"));
    }
    let label = cur.read_blank_label()?;
    Ok(blanks.named(&label))
}

fn literal(cur: &mut Cursor<'_>, base: Option<&str>) -> Result<Literal, ParseError> {
    let start = cur.pos();
    let lexical = cur.read_string(false)?;
    let (datatype, language) = if cur.eat_char('@') {
        (None, Some(cur.read_langtag()?))
    } else if cur.eat("^^") {
        (Some(iri(cur, base)?), None)
    } else {
        (None, None)
    };
    Literal::new(lexical, datatype, language).map_err(|e| cur.error_at(start, e.to_string()))
}
