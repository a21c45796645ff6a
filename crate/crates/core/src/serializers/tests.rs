use super::*;
use crate::model::{graph_isomorphic, Iri, Literal, Triple};
use crate::parsers::{parse, parse_ntriples, parse_rdfjson};
use crate::vocab::xsd;

fn nt(s: &str) -> Graph {
    parse_ntriples(s, None).unwrap()
}

fn example() -> Graph {
    nt("<http://example.org/#a> <http://example.org/#b> <http://example.org/#c> .")
}

fn with_default_prefix(mut g: Graph) -> Graph {
    g.prefixes.bind("", "http://example.org/#");
    g
}

fn rich() -> Graph {
    let mut g = nt(r#"<http://e/a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://e/T> .
<http://e/a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://e/U> .
<http://e/a> <http://e/name> "Alice"@en .
<http://e/a> <http://e/name> "Alicia"@es .
<http://e/a> <http://e/age> "42"^^<http://www.w3.org/2001/XMLSchema#integer> .
<http://e/a> <http://e/note> "line1\nline2\r\t\"quoted\" <b>&amp;" .
<http://e/a> <http://e/knows> _:x .
_:x <http://e/knows> _:y .
_:y <http://e/knows> _:x .
_:z <http://e/label> "" .
<http://e/a> <http://e/ref> <http://other.example/thing?q=1&r=2> .
_:x <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> _:y .
"#);
    g.prefixes.bind("e", "http://e/");
    g.prefixes.bind("xsd", xsd::NS);
    g
}

#[test]
fn ntriples_listing() {
    assert_eq!(
        serialize_ntriples(&example()),
        "<http://example.org/#a> <http://example.org/#b> <http://example.org/#c> .\n"
    );
    assert_eq!(serialize_ntriples(&Graph::new()), "");
    let g = nt("<http://e/a> <http://e/b> \"v\"@en .");
    assert!(serialize_ntriples(&g).contains("\"v\"@en"));
}

#[test]
fn turtle_default_prefix() {
    assert_eq!(
        serialize_turtle(&with_default_prefix(example())),
        "@prefix : <http://example.org/#> .\n\n:a :b :c .\n"
    );
    assert_eq!(serialize_turtle(&Graph::new()), "");
    assert_eq!(serialize_turtle(&example()), "<http://example.org/#a> <http://example.org/#b> <http://example.org/#c> .\n");
}

#[test]
fn rdfxml_variants() {
    let mut g = nt("<http://example.org/#a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://example.org/#T> .");
    g.prefixes.bind("ex", "http://example.org/#");
    let pretty = serialize_rdfxml(&g, XmlVariant::Pretty).unwrap();
    assert!(pretty.contains("<ex:T rdf:about=\"http://example.org/#a\"/>"), "{pretty}");
    let standard = serialize_rdfxml(&g, XmlVariant::Standard).unwrap();
    assert!(standard.contains("<rdf:Description rdf:about=\"http://example.org/#a\">"), "{standard}");
    assert!(standard.contains("<rdf:type rdf:resource=\"http://example.org/#T\"/>"), "{standard}");
    assert!(standard.starts_with("<?xml version=\"1.0\" encoding=\"utf-8\"?>"));
    for out in [pretty, standard] {
        assert!(graph_isomorphic(&parse(FormatId::Xml, &out, None).unwrap(), &g));
    }
}

#[test]
fn rdfxml_unsplittable_predicate() {
    let g = nt("<http://e/a> <http://e/x?y=1> \"v\" .");
    assert!(matches!(serialize_rdfxml(&g, XmlVariant::Standard), Err(Error::UnserializableIri(i)) if i == "http://e/x?y=1"));
}

#[test]
fn rdfjson_shapes() {
    let standard = serialize_rdfjson(&example(), JsonVariant::Standard);
    let value: serde_json::Value = serde_json::from_str(&standard).unwrap();
    assert_eq!(
        value,
        serde_json::json!({"http://example.org/#a":{"http://example.org/#b":[{"type":"uri","value":"http://example.org/#c"}]}})
    );
    assert!(standard.contains("\n  \""), "two-space indentation");
    assert_eq!(serialize_rdfjson(&Graph::new(), JsonVariant::Standard), "{}");

    let pretty = serialize_rdfjson(&with_default_prefix(example()), JsonVariant::Pretty);
    let value: serde_json::Value = serde_json::from_str(&pretty).unwrap();
    assert!(value.get(":a").and_then(|s| s.get(":b")).is_some(), "{pretty}");
    assert!(graph_isomorphic(&parse_rdfjson(&pretty).unwrap(), &example()));
}

#[test]
fn jsonld_shapes() {
    assert_eq!(serialize_jsonld(&Graph::new()), r#"{"@context":{},"@graph":[]}"#);
    let g = nt("<http://e/a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://e/T> .");
    let value: serde_json::Value = serde_json::from_str(&serialize_jsonld(&g)).unwrap();
    let node = &value["@graph"][0];
    assert_eq!(node["@id"], "http://e/a");
    assert_eq!(node["@type"], "http://e/T");
    let g = nt("<http://e/a> <http://e/p> \"v\"@en .");
    let value: serde_json::Value = serde_json::from_str(&serialize_jsonld(&g)).unwrap();
    assert_eq!(value["@graph"][0]["http://e/p"], serde_json::json!({"@value":"v","@language":"en"}));
}

#[test]
fn rdfa_snippet_shapes() {
    assert_eq!(serialize_rdfa_snippet(&Graph::new()), "<div></div>\n");
    let g = nt("<http://e/a> <http://e/p> \"v\"@en .");
    let out = serialize_rdfa_snippet(&g);
    assert!(out.contains("lang=\"en\"") && !out.contains("datatype="), "{out}");
    assert!(graph_isomorphic(&parse(FormatId::Rdfa, &out, None).unwrap(), &g));
}

#[test]
fn microdata_snippet_shapes() {
    assert_eq!(serialize_microdata_snippet(&Graph::new()), "");
    let g = nt(r#"_:p <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://schema.org/Person> .
_:p <http://schema.org/age> "5"^^<http://www.w3.org/2001/XMLSchema#int> ."#);
    let out = serialize_microdata_snippet(&g);
    assert!(out.contains("itemscope") && out.contains("itemtype=\"http://schema.org/Person\""), "{out}");
    assert!(out.contains("<meta itemprop=\"http://schema.org/age\" content=\"5\">"), "{out}");
    let back = parse(FormatId::Microdata, &out, None).unwrap();
    assert!(graph_isomorphic(&back, &g.erase_literal_annotations()));
}

#[test]
fn round_trips_of_a_rich_graph() {
    let g = rich();
    for format in FormatId::TARGETS {
        let out = serialize(&g, format).unwrap();
        let back = parse(format, &out, None).unwrap_or_else(|e| panic!("{format}: {e}\n{out}"));
        let expected = if is_lossy(format) { g.erase_literal_annotations() } else { g.clone() };
        assert!(
            graph_isomorphic(&back, &expected),
            "{format} round trip failed:\n{out}\n{:#?}",
            back.iter().map(|t| t.to_string()).collect::<Vec<_>>()
        );
    }
}

#[test]
fn deterministic_under_relabelling() {
    let g = rich();
    let relabelled: Graph = nt(&serialize_ntriples(&g).replace("_:b", "_:zz"));
    for format in FormatId::TARGETS {
        let a = serialize(&g, format).unwrap();
        assert_eq!(a, serialize(&g, format).unwrap());
        let mut r = relabelled.clone();
        r.prefixes = g.prefixes.clone();
        assert_eq!(a, serialize(&r, format).unwrap(), "{format}");
    }
}

#[test]
fn no_typed_language_literals() {
    let lit = Literal::lang("85579", "en").unwrap();
    let g: Graph = [Triple::new(Iri::new("http://e/a").unwrap(), Iri::new("http://e/p").unwrap(), lit)]
        .into_iter()
        .collect();
    let out = serialize_turtle(&g);
    assert!(out.contains("\"85579\"@en") && !out.contains("^^"));
}

#[test]
fn scheme_like_prefixes_do_not_corrupt_json() {
    let mut g = nt("<http://e/a> <urn:p> \"v\" .");
    g.prefixes.bind("urn", "http://e/");
    for format in [FormatId::JsonLd, FormatId::RdfJsonPretty, FormatId::Rdfa] {
        let out = serialize(&g, format).unwrap();
        assert!(graph_isomorphic(&parse(format, &out, None).unwrap(), &g), "{format}: {out}");
    }
}

#[test]
fn deep_blank_chains_stay_parseable_as_microdata() {
    let mut text = String::from("<http://e/root> <http://e/next> _:n0 .\n");
    for i in 0..200 {
        text.push_str(&format!("_:n{i} <http://e/next> _:n{} .\n", i + 1));
    }
    let g = nt(&text);
    let out = serialize_microdata_snippet(&g);
    assert!(graph_isomorphic(&parse(FormatId::Microdata, &out, None).unwrap(), &g));
}
