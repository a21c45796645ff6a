//! Seeded random graphs for property tests.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{BlankNode, Graph, Iri, Literal, Subject, Term, Triple};
use crate::vocab::{rdf, xsd};

pub const NAMESPACES: [&str; 3] = ["http://example.org/ns#", "http://example.com/vocab/", "http://data.example.net/id/"];
const LOCALS: [&str; 6] = ["alpha", "beta", "gamma", "delta", "name", "knows"];
const LANGUAGES: [&str; 4] = ["en", "de", "fr-CA", "es"];
const DATATYPES: [&str; 4] = [xsd::INTEGER, xsd::STRING, xsd::BOOLEAN, "http://example.com/vocab/custom"];
const TEXT_CHARS: &[char] = &[
    'a', 'b', 'z', 'Q', '0', '7', ' ', '"', '\'', '<', '>', '&', '\\', '#', ':', '/', '\n', '\t', 'é', 'ß', '日', '😀', '{',
];

pub const MAX_TRIPLES: usize = 20;
pub const MAX_BLANKS: usize = 4;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph_seeded(seed: u64) -> Graph {
    random_graph(&mut seeded(seed))
}

/// A graph of up to [`MAX_TRIPLES`] triples over a pool of IRIs in three
/// namespaces and up to [`MAX_BLANKS`] blank nodes. Literals are half
/// simple, a quarter language-tagged and a quarter typed.
pub fn random_graph(rng: &mut impl Rng) -> Graph {
    let blanks: Vec<BlankNode> =
        (0..rng.random_range(0..=MAX_BLANKS)).map(|i| BlankNode::new(format!("n{i}")).unwrap()).collect();
    let mut g = Graph::new();
    for _ in 0..rng.random_range(0..=MAX_TRIPLES) {
        let subject: Subject = match blanks.choose(rng) {
            Some(b) if rng.random_bool(0.4) => b.clone().into(),
            _ => random_iri(rng).into(),
        };
        let predicate = if rng.random_bool(0.15) { Iri::new(rdf::TYPE).unwrap() } else { random_iri(rng) };
        let object: Term = match rng.random_range(0..10) {
            0..=2 => random_iri(rng).into(),
            3 | 4 if !blanks.is_empty() => blanks.choose(rng).unwrap().clone().into(),
            _ => random_literal(rng).into(),
        };
        g.insert(Triple::new(subject, predicate, object));
    }
    if rng.random_bool(0.5) {
        g.prefixes.bind("ex", NAMESPACES[0]);
    }
    g
}

pub fn random_iri(rng: &mut impl Rng) -> Iri {
    let ns = NAMESPACES.choose(rng).unwrap();
    let local = LOCALS.choose(rng).unwrap();
    Iri::new(format!("{ns}{local}")).unwrap()
}

pub fn random_literal(rng: &mut impl Rng) -> Literal {
    match rng.random_range(0..4) {
        0 | 1 => Literal::simple(random_text(rng, 12)),
        2 => Literal::lang(random_text(rng, 12), *LANGUAGES.choose(rng).unwrap()).unwrap(),
        _ => {
            let dt = *DATATYPES.choose(rng).unwrap();
            let lexical = match dt {
                xsd::INTEGER => rng.random_range(-1000..1000).to_string(),
                xsd::BOOLEAN => rng.random_bool(0.5).to_string(),
                _ => random_text(rng, 12),
            };
            Literal::typed(lexical, Iri::new(dt).unwrap()).unwrap()
        }
    }
}

/// Printable text with markup, quoting and non-ASCII characters; never a
/// control character other than newline and tab.
pub fn random_text(rng: &mut impl Rng, max_len: usize) -> String {
    (0..rng.random_range(0..=max_len)).map(|_| *TEXT_CHARS.choose(rng).unwrap()).collect()
}
