use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::term::{BlankNode, Iri, Subject, Term};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.subject.as_blank().is_none() && self.object.as_blank().is_none()
    }
}

/// N-Triples line without the trailing newline.
impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// Namespace prefix bindings. The empty prefix is the default namespace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixMap {
    bindings: BTreeMap<String, String>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds `prefix` to `namespace`, replacing any earlier binding of the
    /// same prefix.
    pub fn bind(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.bindings.insert(prefix.into(), namespace.into());
    }

    pub fn namespace(&self, prefix: &str) -> Option<&str> {
        self.bindings.get(prefix).map(String::as_str)
    }

    /// The preferred prefix for a namespace: the first bound prefix in name
    /// order, preferring non-empty names over the default prefix.
    pub fn prefix_for(&self, namespace: &str) -> Option<&str> {
        let mut found = None;
        for (p, ns) in &self.bindings {
            if ns == namespace {
                if !p.is_empty() {
                    return Some(p);
                }
                found = Some(p.as_str());
            }
        }
        found
    }

    pub fn contains_namespace(&self, namespace: &str) -> bool {
        self.bindings.values().any(|ns| ns == namespace)
    }

    pub fn remove(&mut self, prefix: &str) -> Option<String> {
        self.bindings.remove(prefix)
    }

    /// Expands `prefix:local` when the prefix is bound.
    pub fn expand(&self, curie: &str) -> Option<String> {
        let (prefix, local) = curie.split_once(':')?;
        self.namespace(prefix).map(|ns| format!("{ns}{local}"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.bindings.iter().map(|(p, n)| (p.as_str(), n.as_str()))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

impl<P: Into<String>, N: Into<String>> FromIterator<(P, N)> for PrefixMap {
    fn from_iter<T: IntoIterator<Item = (P, N)>>(iter: T) -> Self {
        let mut map = PrefixMap::new();
        for (p, n) in iter {
            map.bind(p, n);
        }
        map
    }
}

/// A set of triples together with the prefix bindings captured from (or
/// destined for) a serialization.
///
/// Equality compares triples only (labels included); prefix bindings are
/// presentation hints.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    pub prefixes: PrefixMap,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a triple; returns false when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    /// Persistent-style insertion: returns a new graph containing `triple`.
    pub fn with(&self, triple: Triple) -> Graph {
        let mut g = self.clone();
        g.insert(triple);
        g
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn triples_for_subject<'a>(&'a self, subject: &'a Subject) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples.iter().filter(move |t| &t.subject == subject)
    }

    /// Distinct blank nodes in subject or object position, in label order.
    pub fn blank_nodes(&self) -> BTreeSet<&BlankNode> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if let Some(b) = t.subject.as_blank() {
                out.insert(b);
            }
            if let Some(b) = t.object.as_blank() {
                out.insert(b);
            }
        }
        out
    }

    /// All IRIs mentioned anywhere in the graph, including datatypes.
    pub fn iris(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if let Subject::Iri(i) = &t.subject {
                out.insert(i.as_str());
            }
            out.insert(t.predicate.as_str());
            match &t.object {
                Term::Iri(i) => {
                    out.insert(i.as_str());
                }
                Term::Literal(l) => {
                    if let Some(dt) = l.datatype() {
                        out.insert(dt.as_str());
                    }
                }
                Term::Blank(_) => {}
            }
        }
        out
    }

    /// Same triples with every literal reduced to its lexical form.
    pub fn erase_literal_annotations(&self) -> Graph {
        self.triples
            .iter()
            .map(|t| match &t.object {
                Term::Literal(l) => Triple::new(t.subject.clone(), t.predicate.clone(), l.erased()),
                _ => t.clone(),
            })
            .collect()
    }

    pub fn into_triples(self) -> BTreeSet<Triple> {
        self.triples
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<T: IntoIterator<Item = Triple>>(iter: T) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
            prefixes: PrefixMap::new(),
        }
    }
}

impl Extend<Triple> for Graph {
    fn extend<T: IntoIterator<Item = Triple>>(&mut self, iter: T) {
        self.triples.extend(iter);
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Literal;

    fn ex(local: &str) -> Iri {
        Iri::new(format!("http://example.org/#{local}")).unwrap()
    }

    #[test]
    fn add_is_set_insertion() {
        let g = Graph::new();
        let abc = Triple::new(ex("a"), ex("b"), ex("c"));
        let g = g.with(abc.clone());
        assert_eq!(g.len(), 1);
        let g = g.with(abc);
        assert_eq!(g.len(), 1);
        let g = g.with(Triple::new(ex("a"), ex("b"), Literal::simple("x")));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn prefix_lookup_prefers_named_prefix() {
        let mut pm = PrefixMap::new();
        pm.bind("", "http://example.org/#");
        assert_eq!(pm.prefix_for("http://example.org/#"), Some(""));
        pm.bind("ex", "http://example.org/#");
        assert_eq!(pm.prefix_for("http://example.org/#"), Some("ex"));
        assert_eq!(pm.expand("ex:a").as_deref(), Some("http://example.org/#a"));
        assert_eq!(pm.expand("zz:a"), None);
    }
}
