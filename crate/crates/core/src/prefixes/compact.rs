use crate::model::PrefixMap;

/// A prefix name usable in Turtle, JSON-LD and RDFa alike: empty, or an
/// ASCII letter followed by ASCII letters, digits, `_` or `-`.
pub fn is_valid_prefix_name(prefix: &str) -> bool {
    let mut chars = prefix.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-'),
        Some(_) => false,
    }
}

/// A local part that every compact syntax we emit accepts unescaped:
/// letters, digits, `_` and `-`, not starting with `-`.
pub fn is_valid_local_name(local: &str) -> bool {
    !local.starts_with('-') && local.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

/// The longest bound namespace that prefixes `iri` with a legal local part,
/// as `(prefix, local)`. Among prefixes bound to the same namespace a
/// non-empty name wins, then the smallest.
pub fn split_compact<'a>(iri: &'a str, prefixes: &'a PrefixMap) -> Option<(&'a str, &'a str)> {
    let mut best: Option<(&str, &str)> = None;
    for (prefix, ns) in prefixes.iter() {
        if ns.is_empty() || !is_valid_prefix_name(prefix) {
            continue;
        }
        let Some(local) = iri.strip_prefix(ns) else { continue };
        if !is_valid_local_name(local) {
            continue;
        }
        let better = match best {
            None => true,
            Some((bp, bl)) => {
                local.len() < bl.len() || (local.len() == bl.len() && bp.is_empty() && !prefix.is_empty())
            }
        };
        if better {
            best = Some((prefix, local));
        }
    }
    best
}

/// `prefix:local` when a binding applies, otherwise `<iri>`.
pub fn compact_iri(iri: &str, prefixes: &PrefixMap) -> String {
    match split_compact(iri, prefixes) {
        Some((p, l)) => format!("{p}:{l}"),
        None => format!("<{iri}>"),
    }
}

/// The namespace part of an IRI: everything up to and including the last
/// `#`, or failing that the last `/` after the authority.
pub fn namespace_of(iri: &str) -> Option<&str> {
    if let Some(i) = iri.rfind('#') {
        return Some(&iri[..=i]);
    }
    let after_scheme = iri.find("://").map(|i| i + 3).unwrap_or(0);
    let path_start = iri[after_scheme..].find('/').map(|i| i + after_scheme)?;
    let i = iri.rfind('/')?;
    (i >= path_start).then(|| &iri[..=i])
}
