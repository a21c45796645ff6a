use std::collections::{BTreeMap, BTreeSet};

use super::common::{describe, escape_markup, Description};
use crate::model::{BlankNode, Graph, Subject, Term};
use crate::vocab::rdf;

/// Microdata cannot carry datatypes or languages; literals keep only their
/// lexical form. A blank node referenced exactly once, outside any cycle, is
/// nested as an anonymous item where it is referenced; other blank nodes
/// become top-level items with an `itemid="_:label"`, referenced by
/// `<link href="_:label">`.
pub(crate) fn write(graph: &Graph) -> String {
    let descriptions = describe(graph);
    let by_subject: BTreeMap<&Subject, &Description<'_>> = descriptions.iter().map(|d| (d.subject, d)).collect();

    // Referrers of each blank node.
    let mut referrers: BTreeMap<&BlankNode, Vec<&Subject>> = BTreeMap::new();
    for t in graph.iter() {
        if let Term::Blank(b) = &t.object {
            referrers.entry(b).or_default().push(&t.subject);
        }
    }
    let mut nested: BTreeSet<&BlankNode> = BTreeSet::new();
    for (b, refs) in &referrers {
        if refs.len() == 1 && !reaches_itself(b, &referrers) {
            nested.insert(b);
        }
    }
    // Break long chains so the markup stays shallow.
    let too_deep: Vec<&BlankNode> = nested
        .iter()
        .copied()
        .filter(|b| nesting_depth(b, &referrers, &nested).is_multiple_of(MAX_NESTING))
        .collect();
    for b in too_deep {
        nested.remove(b);
    }

    let mut out = String::new();
    for d in &descriptions {
        let top_level = match d.subject {
            Subject::Iri(_) => true,
            Subject::Blank(b) => !nested.contains(b),
        };
        if top_level {
            let referenced = d.subject.as_blank().is_some_and(|b| referrers.contains_key(b));
            item(&mut out, d, None, referenced, &by_subject, &nested, 0);
        }
    }
    out
}

const MAX_NESTING: usize = 32;

/// Number of nested blank nodes from `b` up to its top-level ancestor.
fn nesting_depth(b: &BlankNode, referrers: &BTreeMap<&BlankNode, Vec<&Subject>>, nested: &BTreeSet<&BlankNode>) -> usize {
    let mut depth = 1;
    let mut current = b;
    while let Some(Subject::Blank(parent)) = referrers.get(current).and_then(|r| r.first()).copied() {
        if !nested.contains(parent) {
            break;
        }
        depth += 1;
        current = parent;
    }
    depth
}

/// Whether following single-referrer links upwards from `b` returns to `b`.
fn reaches_itself(b: &BlankNode, referrers: &BTreeMap<&BlankNode, Vec<&Subject>>) -> bool {
    let mut seen = BTreeSet::new();
    let mut current = b;
    loop {
        let Some(refs) = referrers.get(current) else { return false };
        if refs.len() != 1 {
            return false;
        }
        match refs[0] {
            Subject::Iri(_) => return false,
            Subject::Blank(parent) => {
                if parent == b {
                    return true;
                }
                if !seen.insert(parent) {
                    return false;
                }
                current = parent;
            }
        }
    }
}

fn item(
    out: &mut String,
    d: &Description<'_>,
    itemprop: Option<&str>,
    referenced: bool,
    by_subject: &BTreeMap<&Subject, &Description<'_>>,
    nested: &BTreeSet<&BlankNode>,
    depth: usize,
) {
    let indent = "  ".repeat(depth);
    out.push_str(&indent);
    out.push_str("<div");
    if let Some(p) = itemprop {
        out.push_str(&format!(" itemprop=\"{}\"", escape_markup(p)));
    }
    out.push_str(" itemscope");
    match d.subject {
        Subject::Iri(i) => out.push_str(&format!(" itemid=\"{}\"", escape_markup(i.as_str()))),
        Subject::Blank(b) if referenced => out.push_str(&format!(" itemid=\"{b}\"")),
        Subject::Blank(_) => {}
    }
    let types: Vec<String> = d
        .properties
        .iter()
        .filter(|(p, _)| p.as_str() == rdf::TYPE)
        .flat_map(|(_, objects)| objects.iter())
        .filter_map(|o| match o {
            Term::Iri(i) => Some(escape_markup(i.as_str())),
            _ => None,
        })
        .collect();
    if !types.is_empty() {
        out.push_str(&format!(" itemtype=\"{}\"", types.join(" ")));
    }
    out.push_str(">\n");

    let inner = "  ".repeat(depth + 1);
    for (p, objects) in &d.properties {
        let name = escape_markup(p.as_str());
        for o in objects {
            match o {
                Term::Iri(_) if p.as_str() == rdf::TYPE => {}
                Term::Iri(i) => {
                    out.push_str(&format!("{inner}<link itemprop=\"{name}\" href=\"{}\">\n", escape_markup(i.as_str())))
                }
                Term::Blank(b) if nested.contains(b) => {
                    let subject = Subject::Blank(b.clone());
                    match by_subject.get(&subject) {
                        Some(child) => item(out, child, Some(p.as_str()), false, by_subject, nested, depth + 1),
                        None => out.push_str(&format!("{inner}<div itemprop=\"{name}\" itemscope></div>\n")),
                    }
                }
                Term::Blank(b) => out.push_str(&format!("{inner}<link itemprop=\"{name}\" href=\"{b}\">\n")),
                Term::Literal(l) => out.push_str(&format!(
                    "{inner}<meta itemprop=\"{name}\" content=\"{}\">\n",
                    escape_markup(l.lexical())
                )),
            }
        }
    }
    out.push_str(&indent);
    out.push_str("</div>\n");
}
