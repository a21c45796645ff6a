use super::common::{describe, escape_markup, Compactor};
use crate::model::{Graph, Subject, Term};
use crate::vocab::rdf;

fn resource(t: &Term) -> String {
    match t {
        Term::Iri(i) => escape_markup(i.as_str()),
        Term::Blank(b) => format!("[{b}]"),
        Term::Literal(_) => unreachable!("literals are written with property"),
    }
}

/// Snippet-style RDFa: full IRIs in every attribute, so the markup does not
/// depend on prefix declarations; the outer `prefix` attribute lists the
/// bindings that apply for readers who want to shorten them.
pub(crate) fn write(graph: &Graph) -> String {
    let mut c = Compactor::new(graph, false, true);
    let mut body = String::new();
    for d in describe(graph) {
        let about = match d.subject {
            Subject::Iri(i) => {
                c.compact(i.as_str());
                escape_markup(i.as_str())
            }
            Subject::Blank(b) => format!("[{b}]"),
        };
        let types: Vec<String> = d
            .properties
            .iter()
            .filter(|(p, _)| p.as_str() == rdf::TYPE)
            .flat_map(|(_, objects)| objects.iter())
            .filter_map(|o| match o {
                Term::Iri(i) => {
                    c.compact(i.as_str());
                    Some(escape_markup(i.as_str()))
                }
                _ => None,
            })
            .collect();
        body.push_str(&format!("  <div about=\"{about}\""));
        if !types.is_empty() {
            body.push_str(&format!(" typeof=\"{}\"", types.join(" ")));
        }
        body.push_str(">\n");
        for (p, objects) in &d.properties {
            c.compact(p.as_str());
            let predicate = escape_markup(p.as_str());
            for o in objects {
                match o {
                    Term::Iri(_) if p.as_str() == rdf::TYPE => {}
                    Term::Iri(_) | Term::Blank(_) => {
                        body.push_str(&format!("    <span rel=\"{predicate}\" resource=\"{}\"></span>\n", resource(o)));
                    }
                    Term::Literal(l) => {
                        let mut attrs = format!("property=\"{predicate}\" content=\"{}\"", escape_markup(l.lexical()));
                        if let Some(lang) = l.language() {
                            attrs.push_str(&format!(" lang=\"{}\"", escape_markup(lang)));
                        } else if let Some(dt) = l.datatype() {
                            c.compact(dt.as_str());
                            attrs.push_str(&format!(" datatype=\"{}\"", escape_markup(dt.as_str())));
                        }
                        body.push_str(&format!("    <span {attrs}></span>\n"));
                    }
                }
            }
        }
        body.push_str("  </div>\n");
    }

    let prefix_attr: Vec<String> = c.used().iter().map(|(p, ns)| format!("{p}: {}", escape_markup(ns))).collect();
    let mut out = String::from("<div");
    if !prefix_attr.is_empty() {
        out.push_str(&format!(" prefix=\"{}\"", prefix_attr.join(" ")));
    }
    out.push('>');
    if !body.is_empty() {
        out.push('\n');
        out.push_str(&body);
    }
    out.push_str("</div>\n");
    out
}
