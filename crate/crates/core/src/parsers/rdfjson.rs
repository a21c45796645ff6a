//! RDF/JSON: `{ subject: { predicate: [ value-object, ... ] } }` where a
//! value object is `{"type": "uri"|"bnode"|"literal", "value": ..., "lang"?,
//! "datatype"?}`.
//!
//! The concise variant written by this crate compacts subject and predicate
//! keys and records the bindings it used under a top-level `"@prefixes"`
//! member; those bindings are honoured here.

use serde_json::{Map, Value};

use super::BlankAllocator;
use crate::error::{Error, ParseError};
use crate::formats::FormatId;
use crate::model::{Graph, Iri, Literal, PrefixMap, Subject, Term, Triple};

pub(crate) const PREFIXES_KEY: &str = "@prefixes";

fn shape(message: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(FormatId::RdfJson, message))
}

pub fn parse_rdfjson(input: &str) -> Result<Graph, Error> {
    let value: Value = serde_json::from_str(input).map_err(|e| {
        Error::Parse(ParseError::new(FormatId::RdfJson, e.to_string()).at(e.line().max(1), e.column().max(1)))
    })?;
    let Value::Object(root) = value else {
        return Err(shape("top-level value must be a JSON object"));
    };

    let mut graph = Graph::new();
    if let Some(prefixes) = root.get(PREFIXES_KEY) {
        let Value::Object(map) = prefixes else {
            return Err(shape("\"@prefixes\" must map prefix names to namespace IRIs"));
        };
        for (p, ns) in map {
            let ns = ns.as_str().ok_or_else(|| shape(format!("namespace for prefix {p:?} must be a string")))?;
            graph.prefixes.bind(p.clone(), ns);
        }
    }

    let mut blanks = BlankAllocator::default();
    for (subject_key, predicates) in &root {
        if subject_key == PREFIXES_KEY {
            continue;
        }
        let subject = match subject_key.strip_prefix("_:") {
            Some(label) => Subject::Blank(blanks.named(label)),
            None => Subject::Iri(expand_key(subject_key, &graph.prefixes)?),
        };
        let Value::Object(predicates) = predicates else {
            return Err(shape(format!("value of subject {subject_key:?} must be an object")));
        };
        for (predicate_key, values) in predicates {
            let predicate = expand_key(predicate_key, &graph.prefixes)?;
            let Value::Array(values) = values else {
                return Err(shape(format!("values of predicate {predicate_key:?} must be an array")));
            };
            for value in values {
                let object = value_object(value, &mut blanks)?;
                graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
            }
        }
    }
    Ok(graph)
}

fn expand_key(key: &str, prefixes: &PrefixMap) -> Result<Iri, Error> {
    if let Some((prefix, local)) = key.split_once(':') {
        if !local.starts_with("//") {
            if let Some(ns) = prefixes.namespace(prefix) {
                return Iri::new(format!("{ns}{local}")).map_err(|e| shape(e.to_string()));
            }
        }
    }
    Iri::new(key).map_err(|e| shape(e.to_string()))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<Option<&'a str>, Error> {
    match obj.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(_) => Err(shape(format!("\"{name}\" must be a string"))),
    }
}

fn value_object(value: &Value, blanks: &mut BlankAllocator) -> Result<Term, Error> {
    let Value::Object(obj) = value else {
        return Err(shape("each value must be an object"));
    };
    let kind = field(obj, "type")?.ok_or_else(|| shape("value object is missing \"type\""))?;
    let text = field(obj, "value")?.ok_or_else(|| shape("value object is missing \"value\""))?;
    match kind {
        "uri" => Ok(Term::Iri(Iri::new(text).map_err(|e| shape(e.to_string()))?)),
        "bnode" => {
            let label = text.strip_prefix("_:").unwrap_or(text);
            Ok(Term::Blank(blanks.named(label)))
        }
        "literal" => {
            let datatype = field(obj, "datatype")?
                .map(|dt| Iri::new(dt).map_err(|e| shape(e.to_string())))
                .transpose()?;
            let lang = field(obj, "lang")?.map(str::to_string);
            Literal::new(text, datatype, lang)
                .map(Term::Literal)
                .map_err(|e| shape(e.to_string()))
        }
        other => Err(shape(format!("unknown value type {other:?}"))),
    }
}
