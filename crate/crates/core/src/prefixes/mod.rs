//! Namespace prefixes: the seed list, reverse lookup with caching, and IRI
//! compaction.

mod compact;
mod seed;
mod source;

use std::collections::BTreeSet;

use crate::model::{Graph, Term};
use crate::vocab::rdf;

pub use compact::{compact_iri, is_valid_local_name, is_valid_prefix_name, namespace_of, split_compact};
pub use seed::{seed_prefixes, SEED};
pub use source::{
    CacheConfig, Clock, DisabledClient, FixtureClient, LookupClient, LookupError, PrefixSource, SystemClock,
};

/// Adds bindings for namespaces used by `graph` that have no prefix yet.
/// Vocabulary namespaces (predicates, classes, datatypes) are resolved
/// through `source`, including its lookup client; other IRIs only through
/// the seed list and cache. Existing bindings are never replaced.
pub fn augment_prefixes(graph: &Graph, source: &PrefixSource) -> Graph {
    let mut vocabulary: BTreeSet<&str> = BTreeSet::new();
    let mut instances: BTreeSet<&str> = BTreeSet::new();
    for t in graph.iter() {
        vocabulary.insert(t.predicate.as_str());
        match &t.object {
            Term::Iri(i) if t.predicate.as_str() == rdf::TYPE => {
                vocabulary.insert(i.as_str());
            }
            Term::Iri(i) => {
                instances.insert(i.as_str());
            }
            Term::Literal(l) => {
                if let Some(dt) = l.datatype() {
                    vocabulary.insert(dt.as_str());
                }
            }
            Term::Blank(_) => {}
        }
        if let Some(i) = t.subject.as_iri() {
            instances.insert(i.as_str());
        }
    }

    let vocab_ns: BTreeSet<&str> = vocabulary.iter().filter_map(|i| namespace_of(i)).collect();
    let instance_ns: BTreeSet<&str> = instances
        .iter()
        .filter_map(|i| namespace_of(i))
        .filter(|ns| !vocab_ns.contains(ns))
        .collect();

    let mut out = graph.clone();
    let mut bind = |ns: &str, prefix: Option<String>| {
        if let Some(p) = prefix {
            if out.prefixes.namespace(&p).is_none() && !out.prefixes.contains_namespace(ns) {
                out.prefixes.bind(p, ns);
            }
        }
    };
    for ns in vocab_ns {
        if !graph.prefixes.contains_namespace(ns) {
            bind(ns, source.resolve_prefix(ns));
        }
    }
    for ns in instance_ns {
        if !graph.prefixes.contains_namespace(ns) {
            bind(ns, source.resolve_prefix_cached(ns));
        }
    }
    out
}
