//! Blank-node colour refinement, graph isomorphism and canonical labelling.
//!
//! Every blank node starts with a colour derived from its ground signature
//! (the triples it occurs in, with other blank nodes masked). Colours are
//! refined by folding in neighbour colours until the partition is stable.
//! Colours are ranks over sorted keys, so they are invariant under blank
//! relabelling. Remaining ties are resolved by search, which is exhaustive
//! for the small graphs this crate is used with.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::graph::{Graph, Triple};
use super::term::{BlankNode, Subject, Term};

/// Upper bound on tie-breaking permutations tried by [`canonical_blank_labels`].
const MAX_TIE_PERMUTATIONS: usize = 40_320;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Neighbour {
    Ground(String),
    Blank(usize),
    SelfLoop,
}

/// Per-occurrence entry: role, predicate and the other end of the triple.
type Entry = (u8, String, Neighbour);

struct Coloring {
    nodes: Vec<BlankNode>,
    colors: Vec<usize>,
}

/// Raw occurrence: role, predicate, blank neighbour index or ground neighbour.
type Occurrence = (u8, String, Option<usize>, Option<String>);

fn occurrences(graph: &Graph, nodes: &[BlankNode]) -> Vec<Vec<Occurrence>> {
    let index: HashMap<&BlankNode, usize> = nodes.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut occ = vec![Vec::new(); nodes.len()];
    for t in graph.iter() {
        let s = t.subject.as_blank().map(|b| index[b]);
        let o = t.object.as_blank().map(|b| index[b]);
        let p = t.predicate.as_str().to_string();
        match (s, o) {
            (Some(si), Some(oi)) if si == oi => occ[si].push((2, p, Some(si), None)),
            (Some(si), Some(oi)) => {
                occ[si].push((0, p.clone(), Some(oi), None));
                occ[oi].push((1, p, Some(si), None));
            }
            (Some(si), None) => occ[si].push((0, p, None, Some(t.object.to_string()))),
            (None, Some(oi)) => occ[oi].push((1, p, None, Some(t.subject.to_string()))),
            (None, None) => {}
        }
    }
    occ
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let distinct: BTreeSet<&K> = keys.iter().collect();
    let order: BTreeMap<&K, usize> = distinct.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter().map(|k| order[k]).collect()
}

fn refine(graph: &Graph) -> Coloring {
    let nodes: Vec<BlankNode> = graph.blank_nodes().into_iter().cloned().collect();
    let occ = occurrences(graph, &nodes);
    let key_for = |i: usize, colors: Option<&[usize]>| -> (usize, Vec<Entry>) {
        let mut entries: Vec<Entry> = occ[i]
            .iter()
            .map(|(role, p, other, ground)| {
                let n = match (other, ground) {
                    (_, Some(g)) => Neighbour::Ground(g.clone()),
                    (Some(j), None) if *j == i => Neighbour::SelfLoop,
                    (Some(j), None) => match colors {
                        Some(c) => Neighbour::Blank(c[*j]),
                        None => Neighbour::Blank(0),
                    },
                    (None, None) => unreachable!(),
                };
                (*role, p.clone(), n)
            })
            .collect();
        entries.sort();
        (colors.map_or(0, |c| c[i]), entries)
    };

    let initial: Vec<_> = (0..nodes.len()).map(|i| key_for(i, None)).collect();
    let mut colors = rank(&initial);
    let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let keys: Vec<_> = (0..nodes.len()).map(|i| key_for(i, Some(&colors))).collect();
        let next = rank(&keys);
        let next_classes = next.iter().collect::<BTreeSet<_>>().len();
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    Coloring { nodes, colors }
}

fn relabel(triple: &Triple, map: &HashMap<&BlankNode, BlankNode>) -> Triple {
    let subject = match &triple.subject {
        Subject::Blank(b) => Subject::Blank(map[b].clone()),
        s => s.clone(),
    };
    let object = match &triple.object {
        Term::Blank(b) => Term::Blank(map[b].clone()),
        o => o.clone(),
    };
    Triple::new(subject, triple.predicate.clone(), object)
}

/// True iff some bijection between blank nodes makes the triple sets equal.
/// Prefix bindings are ignored.
pub fn graph_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ground_a: BTreeSet<&Triple> = a.iter().filter(|t| t.is_ground()).collect();
    let ground_b: BTreeSet<&Triple> = b.iter().filter(|t| t.is_ground()).collect();
    if ground_a != ground_b {
        return false;
    }
    let ca = refine(a);
    let cb = refine(b);
    if ca.nodes.len() != cb.nodes.len() {
        return false;
    }
    let hist = |c: &Coloring| {
        let mut h = BTreeMap::new();
        for &col in &c.colors {
            *h.entry(col).or_insert(0usize) += 1;
        }
        h
    };
    if hist(&ca) != hist(&cb) {
        return false;
    }

    // Assign the most constrained nodes first.
    let sizes = hist(&ca);
    let mut order: Vec<usize> = (0..ca.nodes.len()).collect();
    order.sort_by_key(|&i| (sizes[&ca.colors[i]], ca.colors[i], i));

    let non_ground: Vec<&Triple> = a.iter().filter(|t| !t.is_ground()).collect();
    let index_a: HashMap<&BlankNode, usize> = ca.nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let position: HashMap<usize, usize> = order.iter().enumerate().map(|(pos, &i)| (i, pos)).collect();
    // Triples checked once the last of their blank nodes is assigned.
    let mut checks: Vec<Vec<&Triple>> = vec![Vec::new(); order.len()];
    for t in &non_ground {
        let mut last = 0;
        for b in [t.subject.as_blank(), t.object.as_blank()].into_iter().flatten() {
            last = last.max(position[&index_a[b]]);
        }
        checks[last].push(t);
    }

    let b_set: BTreeSet<&Triple> = b.iter().collect();
    let mut mapping: HashMap<&BlankNode, BlankNode> = HashMap::new();
    let mut used = vec![false; cb.nodes.len()];
    search(0, &order, &ca, &cb, &checks, &b_set, &mut mapping, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn search<'a>(
    depth: usize,
    order: &[usize],
    ca: &'a Coloring,
    cb: &Coloring,
    checks: &[Vec<&Triple>],
    b_set: &BTreeSet<&Triple>,
    mapping: &mut HashMap<&'a BlankNode, BlankNode>,
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    for j in 0..cb.nodes.len() {
        if used[j] || cb.colors[j] != ca.colors[i] {
            continue;
        }
        mapping.insert(&ca.nodes[i], cb.nodes[j].clone());
        used[j] = true;
        let consistent = checks[depth].iter().all(|t| b_set.contains(&relabel(t, mapping)));
        if consistent && search(depth + 1, order, ca, cb, checks, b_set, mapping, used) {
            return true;
        }
        used[j] = false;
        mapping.remove(&ca.nodes[i]);
    }
    false
}

/// Renames blank nodes to `b0, b1, ...` in an order determined by the
/// refined colours, so that isomorphic graphs receive identical labels.
/// Prefix bindings are carried over unchanged.
pub fn canonical_blank_labels(graph: &Graph) -> Graph {
    let coloring = refine(graph);
    if coloring.nodes.is_empty() {
        return graph.clone();
    }

    // Group node indices by colour; each group is a tie class.
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in coloring.colors.iter().enumerate() {
        classes.entry(c).or_default().push(i);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let permutations: usize = classes
        .iter()
        .map(|c| (1..=c.len()).product::<usize>())
        .try_fold(1usize, |acc, n| acc.checked_mul(n))
        .unwrap_or(usize::MAX);

    let build = |sequence: &[usize]| -> Graph {
        let map: HashMap<&BlankNode, BlankNode> = sequence
            .iter()
            .enumerate()
            .map(|(label, &i)| (&coloring.nodes[i], BlankNode::new(format!("b{label}")).unwrap()))
            .collect();
        let mut g: Graph = graph.iter().map(|t| relabel(t, &map)).collect();
        g.prefixes = graph.prefixes.clone();
        g
    };
    let render = |g: &Graph| -> Vec<String> {
        let mut lines: Vec<String> = g.iter().map(|t| t.to_string()).collect();
        lines.sort();
        lines
    };

    if permutations > MAX_TIE_PERMUTATIONS {
        // Too many ties for an exhaustive search; fall back to label order.
        let sequence: Vec<usize> = classes.concat();
        return build(&sequence);
    }

    let mut best: Option<(Vec<String>, Graph)> = None;
    let mut current: Vec<Vec<usize>> = classes.clone();
    enumerate_tie_orders(&mut current, 0, &mut |sequence| {
        let g = build(sequence);
        let key = render(&g);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, g));
        }
    });
    best.expect("at least one ordering").1
}

fn enumerate_tie_orders(classes: &mut [Vec<usize>], class: usize, visit: &mut dyn FnMut(&[usize])) {
    if class == classes.len() {
        let sequence: Vec<usize> = classes.concat();
        visit(&sequence);
        return;
    }
    permute(classes, class, 0, visit);
}

fn permute(classes: &mut [Vec<usize>], class: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    let n = classes[class].len();
    if k == n {
        enumerate_tie_orders(classes, class + 1, visit);
        return;
    }
    for i in k..n {
        classes[class].swap(k, i);
        permute(classes, class, k + 1, visit);
        classes[class].swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Iri, Literal};

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://e/{s}")).unwrap()
    }
    fn b(s: &str) -> BlankNode {
        BlankNode::new(s).unwrap()
    }

    #[test]
    fn identity_and_relabel() {
        let g: Graph = [Triple::new(b("x"), iri("p"), iri("o"))].into_iter().collect();
        let h: Graph = [Triple::new(b("y"), iri("p"), iri("o"))].into_iter().collect();
        assert!(graph_isomorphic(&g, &g));
        assert!(graph_isomorphic(&g, &h));
    }

    #[test]
    fn self_reference_is_not_two_nodes() {
        let g: Graph = [Triple::new(b("x"), iri("p"), b("x"))].into_iter().collect();
        let h: Graph = [Triple::new(b("a"), iri("p"), b("b"))].into_iter().collect();
        assert!(!graph_isomorphic(&g, &h));
    }

    #[test]
    fn ground_difference_detected() {
        let g: Graph = [Triple::new(iri("a"), iri("p"), Literal::simple("1"))].into_iter().collect();
        let h: Graph = [Triple::new(iri("a"), iri("p"), Literal::simple("2"))].into_iter().collect();
        assert!(!graph_isomorphic(&g, &h));
    }

    #[test]
    fn two_blank_signature_order() {
        // _:zz has signature [S p "1"], _:aa has [S p "2"]; "1" sorts first,
        // so _:zz becomes b0 and _:aa becomes b1.
        let g: Graph = [
            Triple::new(b("zz"), iri("p"), Literal::simple("1")),
            Triple::new(b("aa"), iri("p"), Literal::simple("2")),
        ]
        .into_iter()
        .collect();
        let c = canonical_blank_labels(&g);
        let expected: Graph = [
            Triple::new(b("b0"), iri("p"), Literal::simple("1")),
            Triple::new(b("b1"), iri("p"), Literal::simple("2")),
        ]
        .into_iter()
        .collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn canonical_labels_ignore_input_labels() {
        let g1: Graph = [
            Triple::new(b("x"), iri("p"), b("y")),
            Triple::new(b("y"), iri("p"), b("x")),
        ]
        .into_iter()
        .collect();
        let g2: Graph = [
            Triple::new(b("q"), iri("p"), b("r")),
            Triple::new(b("r"), iri("p"), b("q")),
        ]
        .into_iter()
        .collect();
        assert_eq!(canonical_blank_labels(&g1), canonical_blank_labels(&g2));
    }

    #[test]
    fn ground_and_empty_unchanged() {
        let g: Graph = [Triple::new(iri("a"), iri("p"), iri("o"))].into_iter().collect();
        assert_eq!(canonical_blank_labels(&g), g);
        assert_eq!(canonical_blank_labels(&Graph::new()), Graph::new());
    }
}
