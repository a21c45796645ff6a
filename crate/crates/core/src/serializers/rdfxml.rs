use std::collections::BTreeMap;

use super::common::{describe, escape_markup};
use crate::error::Error;
use crate::formats::FormatId;
use crate::model::{Graph, Iri, Subject, Term};
use crate::prefixes::is_valid_prefix_name;
use crate::vocab::rdf;

/// RDF names that cannot appear as property or typed-node element names.
const SYNTAX_NAMES: &[&str] = &[
    "RDF", "ID", "about", "bagID", "parseType", "resource", "nodeID", "datatype", "li", "aboutEach",
    "aboutEachPrefix", "Description",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XmlVariant {
    Standard,
    /// Typed-node elements in place of `rdf:Description` plus `rdf:type`.
    Pretty,
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{B7}')
}

/// Splits an IRI into namespace and the longest NCName suffix.
pub(crate) fn split_qname(iri: &str) -> Option<(&str, &str)> {
    let mut start = iri.len();
    for (i, c) in iri.char_indices().rev() {
        if is_name_char(c) {
            start = i;
        } else {
            break;
        }
    }
    let local_start = iri[start..].char_indices().find(|(_, c)| is_name_start(*c)).map(|(i, _)| start + i)?;
    if local_start == 0 {
        return None;
    }
    Some((&iri[..local_start], &iri[local_start..]))
}

fn is_syntax_name(ns: &str, local: &str) -> bool {
    ns == rdf::NS && SYNTAX_NAMES.contains(&local)
}

struct Namespaces {
    by_ns: BTreeMap<String, String>,
    taken: BTreeMap<String, String>,
}

impl Namespaces {
    fn new() -> Self {
        let mut n = Namespaces { by_ns: BTreeMap::new(), taken: BTreeMap::new() };
        n.by_ns.insert(rdf::NS.to_string(), "rdf".to_string());
        n.taken.insert("rdf".to_string(), rdf::NS.to_string());
        n
    }

    fn qname(&mut self, ns: &str, local: &str, graph: &Graph) -> String {
        if let Some(p) = self.by_ns.get(ns) {
            return format!("{p}:{local}");
        }
        let preferred = graph.prefixes.prefix_for(ns).filter(|p| {
            !p.is_empty()
                && is_valid_prefix_name(p)
                && !p.to_ascii_lowercase().starts_with("xml")
                && !self.taken.contains_key(*p)
        });
        let prefix = match preferred {
            Some(p) => p.to_string(),
            None => {
                let mut n = 1;
                while self.taken.contains_key(&format!("ns{n}")) {
                    n += 1;
                }
                format!("ns{n}")
            }
        };
        self.by_ns.insert(ns.to_string(), prefix.clone());
        self.taken.insert(prefix.clone(), ns.to_string());
        format!("{prefix}:{local}")
    }
}

fn check_text(value: &str) -> Result<(), Error> {
    match value.chars().find(|&c| (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r')) {
        Some(c) => Err(Error::Unrepresentable {
            format: FormatId::Xml,
            reason: format!("character U+{:04X} cannot be represented in XML 1.0", c as u32),
        }),
        None => Ok(()),
    }
}

fn node_attr(subject: &Subject) -> String {
    match subject {
        Subject::Iri(i) => format!("rdf:about=\"{}\"", escape_markup(i.as_str())),
        Subject::Blank(b) => format!("rdf:nodeID=\"{}\"", b.label()),
    }
}

pub(crate) fn write(graph: &Graph, variant: XmlVariant) -> Result<String, Error> {
    let mut names = Namespaces::new();
    let mut body = String::new();
    for d in describe(graph) {
        let mut absorbed: Option<(&Iri, String)> = None;
        if variant == XmlVariant::Pretty {
            let types = d.properties.iter().find(|(p, _)| p.as_str() == rdf::TYPE);
            if let Some((_, objects)) = types {
                let first = objects.iter().find_map(|o| match o {
                    Term::Iri(i) => Some(i),
                    _ => None,
                });
                if let Some(t) = first {
                    if let Some((ns, local)) = split_qname(t.as_str()) {
                        if !is_syntax_name(ns, local) {
                            absorbed = Some((t, names.qname(ns, local, graph)));
                        }
                    }
                }
            }
        }
        let element = absorbed.as_ref().map(|(_, q)| q.clone()).unwrap_or_else(|| "rdf:Description".into());

        let mut children = String::new();
        for (p, objects) in &d.properties {
            let (ns, local) = split_qname(p.as_str())
                .filter(|(ns, local)| !is_syntax_name(ns, local))
                .ok_or_else(|| Error::UnserializableIri(p.as_str().to_string()))?;
            let qname = names.qname(ns, local, graph);
            for o in objects {
                if let (Some((t, _)), Term::Iri(i)) = (&absorbed, o) {
                    if p.as_str() == rdf::TYPE && i == *t {
                        continue;
                    }
                }
                match o {
                    Term::Iri(i) => children.push_str(&format!(
                        "    <{qname} rdf:resource=\"{}\"/>\n",
                        escape_markup(i.as_str())
                    )),
                    Term::Blank(b) => children.push_str(&format!("    <{qname} rdf:nodeID=\"{}\"/>\n", b.label())),
                    Term::Literal(l) => {
                        check_text(l.lexical())?;
                        let mut attrs = String::new();
                        if let Some(lang) = l.language() {
                            attrs.push_str(&format!(" xml:lang=\"{}\"", escape_markup(lang)));
                        } else if let Some(dt) = l.datatype() {
                            attrs.push_str(&format!(" rdf:datatype=\"{}\"", escape_markup(dt.as_str())));
                        }
                        children.push_str(&format!("    <{qname}{attrs}>{}</{qname}>\n", escape_markup(l.lexical())));
                    }
                }
            }
        }
        let open = format!("  <{element} {}", node_attr(d.subject));
        if children.is_empty() {
            body.push_str(&format!("{open}/>\n"));
        } else {
            body.push_str(&format!("{open}>\n{children}  </{element}>\n"));
        }
    }

    let mut out = String::from("<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<rdf:RDF");
    let mut decls: Vec<(&String, &String)> = names.taken.iter().collect();
    decls.sort();
    for (p, ns) in decls {
        out.push_str(&format!("\n    xmlns:{p}=\"{}\"", escape_markup(ns)));
    }
    if body.is_empty() {
        out.push_str("/>\n");
    } else {
        out.push_str(">\n");
        out.push_str(&body);
        out.push_str("</rdf:RDF>\n");
    }
    Ok(out)
}
