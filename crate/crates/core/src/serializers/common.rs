use std::collections::{BTreeMap, BTreeSet};

use crate::model::{Graph, Iri, PrefixMap, Subject, Term};
use crate::prefixes::{is_valid_prefix_name, split_compact};

/// All triples of one subject, predicates and objects in sorted order.
pub(crate) struct Description<'a> {
    pub subject: &'a Subject,
    pub properties: Vec<(&'a Iri, Vec<&'a Term>)>,
}

pub(crate) fn describe(graph: &Graph) -> Vec<Description<'_>> {
    let mut out: Vec<Description<'_>> = Vec::new();
    for t in graph.iter() {
        match out.last_mut() {
            Some(d) if d.subject == &t.subject => match d.properties.last_mut() {
                Some((p, objects)) if *p == &t.predicate => objects.push(&t.object),
                _ => d.properties.push((&t.predicate, vec![&t.object])),
            },
            _ => out.push(Description { subject: &t.subject, properties: vec![(&t.predicate, vec![&t.object])] }),
        }
    }
    out
}

fn schemes(graph: &Graph) -> BTreeSet<String> {
    graph
        .iris()
        .into_iter()
        .filter_map(|i| i.split_once(':').map(|(s, _)| s.to_ascii_lowercase()))
        .collect()
}

/// Compacts IRIs against a filtered copy of the graph's prefixes and
/// remembers which bindings were used.
pub(crate) struct Compactor {
    prefixes: PrefixMap,
    used: BTreeMap<String, String>,
}

impl Compactor {
    /// `allow_default` admits the empty prefix. `avoid_schemes` drops
    /// prefixes named like a URI scheme occurring in the graph, for syntaxes
    /// where `prefix:local` and an absolute IRI are written alike.
    pub fn new(graph: &Graph, allow_default: bool, avoid_schemes: bool) -> Self {
        let schemes = if avoid_schemes { schemes(graph) } else { BTreeSet::new() };
        let prefixes = graph
            .prefixes
            .iter()
            .filter(|(p, ns)| {
                is_valid_prefix_name(p)
                    && (allow_default || !p.is_empty())
                    && Iri::new(*ns).is_ok()
                    && !schemes.contains(&p.to_ascii_lowercase())
            })
            .collect();
        Compactor { prefixes, used: BTreeMap::new() }
    }

    pub fn compact(&mut self, iri: &str) -> Option<String> {
        let (p, l) = split_compact(iri, &self.prefixes)?;
        let ns = self.prefixes.namespace(p).expect("bound").to_string();
        let out = format!("{p}:{l}");
        self.used.insert(p.to_string(), ns);
        Some(out)
    }

    /// Compact form, or the IRI itself.
    pub fn compact_or_full(&mut self, iri: &str) -> String {
        self.compact(iri).unwrap_or_else(|| iri.to_string())
    }

    /// Bindings used so far, sorted by prefix name.
    pub fn used(&self) -> &BTreeMap<String, String> {
        &self.used
    }
}

/// Escapes text for HTML/XML element content and double-quoted attribute
/// values. Carriage returns and C0 controls become character references so
/// that parsers do not normalise them away.
pub(crate) fn escape_markup(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\r' => out.push_str("&#13;"),
            c if (c as u32) < 0x20 && c != '\n' && c != '\t' => out.push_str(&format!("&#{};", c as u32)),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsers::parse_ntriples;

    #[test]
    fn grouping() {
        let g = parse_ntriples(
            "<http://e/a> <http://e/p> \"1\" .\n<http://e/a> <http://e/p> \"2\" .\n<http://e/a> <http://e/q> \"3\" .\n<http://e/b> <http://e/p> \"4\" .",
            None,
        )
        .unwrap();
        let d = describe(&g);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].properties.len(), 2);
        assert_eq!(d[0].properties[0].1.len(), 2);
    }

    #[test]
    fn scheme_named_prefixes_are_avoided() {
        let mut g = parse_ntriples("<http://e/a> <http://e/p> <urn:x> .", None).unwrap();
        g.prefixes.bind("urn", "http://e/");
        g.prefixes.bind("e", "http://e/");
        let mut c = Compactor::new(&g, false, true);
        assert_eq!(c.compact("http://e/a").as_deref(), Some("e:a"));
        assert_eq!(c.used().len(), 1);
    }

    #[test]
    fn markup_escaping() {
        assert_eq!(escape_markup("<b>&\"\r\u{1}\n"), "&lt;b&gt;&amp;&quot;&#13;&#1;\n");
    }
}
