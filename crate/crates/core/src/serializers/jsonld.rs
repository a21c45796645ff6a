use serde_json::{Map, Value};

use super::common::{describe, Compactor};
use crate::model::{Graph, Subject, Term};
use crate::vocab::rdf;

pub(crate) const EMPTY: &str = r#"{"@context":{},"@graph":[]}"#;

fn reference(s: &Subject, c: &mut Compactor) -> String {
    match s {
        Subject::Iri(i) => c.compact_or_full(i.as_str()),
        Subject::Blank(b) => b.to_string(),
    }
}

fn value(t: &Term, c: &mut Compactor) -> Value {
    match t {
        Term::Iri(i) => obj([("@id", c.compact_or_full(i.as_str()).into())]),
        Term::Blank(b) => obj([("@id", b.to_string().into())]),
        Term::Literal(l) => match (l.language(), l.datatype()) {
            (Some(lang), _) => obj([("@value", l.lexical().into()), ("@language", lang.into())]),
            (None, Some(dt)) => obj([("@value", l.lexical().into()), ("@type", c.compact_or_full(dt.as_str()).into())]),
            (None, None) => Value::String(l.lexical().to_string()),
        },
    }
}

fn obj<const N: usize>(entries: [(&str, Value); N]) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn one_or_many(mut values: Vec<Value>) -> Value {
    if values.len() == 1 {
        values.pop().expect("one value")
    } else {
        Value::Array(values)
    }
}

pub(crate) fn write(graph: &Graph) -> String {
    if graph.is_empty() {
        return EMPTY.to_string();
    }
    let mut c = Compactor::new(graph, false, true);
    let mut nodes = Vec::new();
    for d in describe(graph) {
        let mut node = Map::new();
        node.insert("@id".into(), reference(d.subject, &mut c).into());
        for (p, objects) in &d.properties {
            let mut rest: Vec<&Term> = objects.clone();
            if p.as_str() == rdf::TYPE {
                let (types, literals): (Vec<&Term>, Vec<&Term>) =
                    objects.iter().partition(|o| !matches!(o, Term::Literal(_)));
                let types: Vec<Value> = types
                    .into_iter()
                    .map(|t| match t {
                        Term::Iri(i) => Value::String(c.compact_or_full(i.as_str())),
                        Term::Blank(b) => Value::String(b.to_string()),
                        Term::Literal(_) => unreachable!("partitioned"),
                    })
                    .collect();
                if !types.is_empty() {
                    node.insert("@type".into(), one_or_many(types));
                }
                rest = literals;
            }
            if rest.is_empty() {
                continue;
            }
            let key = c.compact_or_full(p.as_str());
            let values: Vec<Value> = rest.into_iter().map(|o| value(o, &mut c)).collect();
            node.insert(key, one_or_many(values));
        }
        nodes.push(Value::Object(node));
    }
    let context: Map<String, Value> = c.used().iter().map(|(p, ns)| (p.clone(), Value::String(ns.clone()))).collect();
    let doc = obj([("@context", Value::Object(context)), ("@graph", Value::Array(nodes))]);
    serde_json::to_string_pretty(&doc).expect("JSON values serialize")
}
