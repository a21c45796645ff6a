use rdfshift_core::model::graph_isomorphic;
use rdfshift_core::testing::{random_graph_seeded, seeded};
use rdfshift_core::{is_lossy, parse, serialize, FormatId, Graph};
use rand::seq::IndexedRandom;

fn reparse(g: &Graph, format: FormatId) -> Graph {
    let out = serialize(g, format).unwrap_or_else(|e| panic!("{format}: {e}"));
    parse(format, &out, None).unwrap_or_else(|e| panic!("{format}: {e}\n{out}"))
}

#[test]
fn random_graphs_survive_every_format() {
    for seed in 0..200 {
        let g = random_graph_seeded(seed);
        for format in FormatId::TARGETS {
            let expected = if is_lossy(format) { g.erase_literal_annotations() } else { g.clone() };
            let back = reparse(&g, format);
            assert!(
                graph_isomorphic(&back, &expected),
                "seed {seed}, {format}:\n{}",
                serialize(&g, format).unwrap()
            );
        }
    }
}

#[test]
fn format_chains_compose() {
    let lossless: Vec<FormatId> = FormatId::TARGETS.into_iter().filter(|f| !is_lossy(*f)).collect();
    let mut rng = seeded(7);
    for seed in 0..50 {
        let g = random_graph_seeded(1000 + seed);
        for _ in 0..20 {
            let [f1, f2, f3] = [0; 3].map(|_| *lossless.choose(&mut rng).unwrap());
            let start = reparse(&g, f1);
            let chained = reparse(&reparse(&start, f2), f3);
            let direct = reparse(&start, f3);
            assert!(graph_isomorphic(&chained, &direct), "seed {seed}: {f1} -> {f2} -> {f3}");
        }
    }
}

#[test]
fn serialization_ignores_triple_order_and_labels() {
    for seed in 0..100 {
        let g = random_graph_seeded(seed);
        let mut reversed = Graph::new();
        let mut triples: Vec<_> = g.iter().cloned().collect();
        triples.reverse();
        for t in triples {
            reversed.insert(t);
        }
        reversed.prefixes = g.prefixes.clone();
        let nt = rdfshift_core::serializers::serialize_ntriples(&g).replace("_:b", "_:renamed");
        let relabelled = parse(FormatId::Nt, &nt, None).unwrap();
        for format in FormatId::TARGETS {
            let out = serialize(&g, format).unwrap();
            assert_eq!(out, serialize(&reversed, format).unwrap(), "seed {seed} {format}");
            let mut r = relabelled.clone();
            r.prefixes = g.prefixes.clone();
            assert_eq!(out, serialize(&r, format).unwrap(), "seed {seed} {format}");
        }
    }
}
