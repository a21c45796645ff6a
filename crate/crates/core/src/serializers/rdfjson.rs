use serde_json::{Map, Value};

use super::common::Compactor;
use crate::model::{Graph, Subject, Term};
use crate::parsers::PREFIXES_KEY;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JsonVariant {
    Standard,
    /// Subject and predicate keys compacted with prefixes; the bindings used
    /// are listed under `"@prefixes"`.
    Pretty,
}

fn subject_key(s: &Subject) -> String {
    match s {
        Subject::Iri(i) => i.as_str().to_string(),
        Subject::Blank(b) => b.to_string(),
    }
}

fn value_object(t: &Term) -> Value {
    let mut obj = Map::new();
    match t {
        Term::Iri(i) => {
            obj.insert("type".into(), "uri".into());
            obj.insert("value".into(), i.as_str().into());
        }
        Term::Blank(b) => {
            obj.insert("type".into(), "bnode".into());
            obj.insert("value".into(), b.to_string().into());
        }
        Term::Literal(l) => {
            obj.insert("type".into(), "literal".into());
            obj.insert("value".into(), l.lexical().into());
            if let Some(lang) = l.language() {
                obj.insert("lang".into(), lang.into());
            } else if let Some(dt) = l.datatype() {
                obj.insert("datatype".into(), dt.as_str().into());
            }
        }
    }
    Value::Object(obj)
}

pub(crate) fn write(graph: &Graph, variant: JsonVariant) -> String {
    let mut compactor = (variant == JsonVariant::Pretty).then(|| Compactor::new(graph, true, true));
    let mut root = Map::new();
    for t in graph.iter() {
        let (s, p) = match (&mut compactor, &t.subject) {
            (Some(c), Subject::Iri(i)) => (c.compact_or_full(i.as_str()), c.compact_or_full(t.predicate.as_str())),
            (Some(c), Subject::Blank(_)) => (subject_key(&t.subject), c.compact_or_full(t.predicate.as_str())),
            (None, _) => (subject_key(&t.subject), t.predicate.as_str().to_string()),
        };
        let predicates = root.entry(s).or_insert_with(|| Value::Object(Map::new()));
        let values = predicates
            .as_object_mut()
            .expect("subject entries are objects")
            .entry(p)
            .or_insert_with(|| Value::Array(Vec::new()));
        values.as_array_mut().expect("predicate entries are arrays").push(value_object(&t.object));
    }
    if let Some(c) = &compactor {
        if !c.used().is_empty() {
            let prefixes: Map<String, Value> =
                c.used().iter().map(|(p, ns)| (p.clone(), Value::String(ns.clone()))).collect();
            root.insert(PREFIXES_KEY.into(), Value::Object(prefixes));
        }
    }
    serde_json::to_string_pretty(&Value::Object(root)).expect("JSON values serialize")
}
