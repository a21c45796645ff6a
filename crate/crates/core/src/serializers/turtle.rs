use super::common::{describe, Compactor};
use crate::model::{escape_string, Graph, Subject, Term};
use crate::vocab::rdf;

pub(crate) fn write(graph: &Graph) -> String {
    if graph.is_empty() {
        return String::new();
    }
    let mut c = Compactor::new(graph, true, false);
    let mut body = String::new();
    for (i, d) in describe(graph).iter().enumerate() {
        if i > 0 {
            body.push('\n');
        }
        body.push_str(&subject(d.subject, &mut c));
        let mut properties = d.properties.clone();
        // rdf:type first, written as `a`.
        properties.sort_by_key(|(p, _)| p.as_str() != rdf::TYPE);
        for (j, (p, objects)) in properties.iter().enumerate() {
            if j > 0 {
                body.push_str(" ;\n   ");
            }
            body.push(' ');
            if p.as_str() == rdf::TYPE {
                body.push('a');
            } else {
                body.push_str(&iri(p.as_str(), &mut c));
            }
            for (k, o) in objects.iter().enumerate() {
                body.push_str(if k == 0 { " " } else { " , " });
                body.push_str(&term(o, &mut c));
            }
        }
        body.push_str(" .\n");
    }

    let mut out = String::new();
    for (p, ns) in c.used() {
        out.push_str(&format!("@prefix {p}: <{ns}> .\n"));
    }
    if !c.used().is_empty() {
        out.push('\n');
    }
    out.push_str(&body);
    out
}

fn iri(value: &str, c: &mut Compactor) -> String {
    c.compact(value).unwrap_or_else(|| format!("<{value}>"))
}

fn subject(s: &Subject, c: &mut Compactor) -> String {
    match s {
        Subject::Iri(i) => iri(i.as_str(), c),
        Subject::Blank(b) => b.to_string(),
    }
}

fn term(t: &Term, c: &mut Compactor) -> String {
    match t {
        Term::Iri(i) => iri(i.as_str(), c),
        Term::Blank(b) => b.to_string(),
        Term::Literal(l) => {
            let mut out = format!("\"{}\"", escape_string(l.lexical()));
            if let Some(lang) = l.language() {
                out.push('@');
                out.push_str(lang);
            } else if let Some(dt) = l.datatype() {
                out.push_str("^^");
                out.push_str(&iri(dt.as_str(), c));
            }
            out
        }
    }
}
