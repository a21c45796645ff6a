//! A JSON-LD subset: inline `@context` objects with term and prefix
//! definitions (`@id`, `@type` coercion, `@language`), `@vocab`, `@base`,
//! `@language`; node objects with `@id`, `@type`, nested nodes, value
//! objects, `@list` and `@set`; a top-level `@graph`. Remote contexts,
//! containers, reverse properties and named graphs are rejected.

use std::collections::HashMap;

use serde_json::{Map, Number, Value};

use super::{resolve_iri, BlankAllocator, DEFAULT_BASE};
use crate::error::{Error, ParseError};
use crate::formats::FormatId;
use crate::model::{is_absolute_iri, Graph, Iri, Literal, Subject, Term, Triple};
use crate::vocab::{rdf, xsd};

fn shape(message: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(FormatId::JsonLd, message))
}

fn unsupported(feature: impl Into<String>) -> Error {
    Error::unsupported(FormatId::JsonLd, feature)
}

#[derive(Clone, Debug, PartialEq)]
enum Coercion {
    Id,
    Vocab,
    Datatype(String),
}

#[derive(Clone, Debug)]
struct TermDefinition {
    id: Option<String>,
    coercion: Option<Coercion>,
    /// `Some(None)` resets the default language for this term.
    language: Option<Option<String>>,
}

#[derive(Clone, Debug)]
struct Context {
    base: String,
    vocab: Option<String>,
    language: Option<String>,
    terms: HashMap<String, TermDefinition>,
}

impl Context {
    fn new(base: &str) -> Self {
        Context {
            base: base.to_string(),
            vocab: None,
            language: None,
            terms: HashMap::new(),
        }
    }

    fn merge(&self, local: &Value, original_base: &str) -> Result<Context, Error> {
        match local {
            Value::Null => Ok(Context::new(original_base)),
            Value::String(url) => Err(unsupported(format!("remote context {url:?}"))),
            Value::Array(items) => {
                let mut ctx = self.clone();
                for item in items {
                    ctx = ctx.merge(item, original_base)?;
                }
                Ok(ctx)
            }
            Value::Object(map) => {
                let mut ctx = self.clone();
                for key in ["@import", "@propagate", "@protected"] {
                    if map.contains_key(key) {
                        return Err(unsupported(key));
                    }
                }
                if let Some(base) = map.get("@base") {
                    match base {
                        Value::Null => ctx.base = original_base.to_string(),
                        Value::String(b) => {
                            ctx.base = resolve_iri(&ctx.base, b).ok_or_else(|| shape(format!("invalid @base {b:?}")))?
                        }
                        _ => return Err(shape("@base must be a string or null")),
                    }
                }
                if let Some(vocab) = map.get("@vocab") {
                    ctx.vocab = match vocab {
                        Value::Null => None,
                        Value::String(v) => Some(
                            ctx.expand(v, true, false)?
                                .or_else(|| resolve_iri(&ctx.base, v))
                                .ok_or_else(|| shape(format!("invalid @vocab {v:?}")))?,
                        ),
                        _ => return Err(shape("@vocab must be a string or null")),
                    };
                }
                if let Some(lang) = map.get("@language") {
                    ctx.language = match lang {
                        Value::Null => None,
                        Value::String(l) => Some(l.clone()),
                        _ => return Err(shape("@language must be a string or null")),
                    };
                }
                // Definitions are stored raw and expanded on use, so terms may
                // refer to each other regardless of order.
                for (term, def) in map {
                    if term.starts_with('@') {
                        continue;
                    }
                    let definition = match def {
                        Value::Null => TermDefinition { id: None, coercion: None, language: None },
                        Value::String(id) => TermDefinition { id: Some(id.clone()), coercion: None, language: None },
                        Value::Object(d) => parse_term_definition(term, d)?,
                        _ => return Err(shape(format!("invalid definition for term {term:?}"))),
                    };
                    ctx.terms.insert(term.clone(), definition);
                }
                Ok(ctx)
            }
            _ => Err(shape("@context must be an object, array, string or null")),
        }
    }

    /// Expands a key, `@type` value or `@id` value to an absolute IRI or
    /// blank-node identifier. `vocab` enables term and `@vocab` expansion;
    /// `document` enables resolution against the base IRI.
    fn expand(&self, value: &str, vocab: bool, document: bool) -> Result<Option<String>, Error> {
        self.expand_guarded(value, vocab, document, 0)
    }

    fn expand_guarded(&self, value: &str, vocab: bool, document: bool, depth: usize) -> Result<Option<String>, Error> {
        if depth > 16 {
            return Err(shape(format!("cyclic term definition involving {value:?}")));
        }
        if value.starts_with('@') {
            return Ok(Some(value.to_string()));
        }
        if vocab {
            if let Some(def) = self.terms.get(value) {
                return match &def.id {
                    Some(id) if id == value => {
                        if is_absolute_iri(id) {
                            Ok(Some(id.clone()))
                        } else {
                            Ok(self.vocab.as_ref().map(|v| format!("{v}{value}")))
                        }
                    }
                    Some(id) => self.expand_guarded(id, true, false, depth + 1),
                    None => Ok(self.vocab.as_ref().map(|v| format!("{v}{value}"))),
                };
            }
        }
        if let Some((prefix, suffix)) = value.split_once(':') {
            if prefix == "_" {
                return Ok(Some(value.to_string()));
            }
            if !suffix.starts_with("//") {
                if let Some(def) = self.terms.get(prefix) {
                    if let Some(id) = &def.id {
                        if let Some(ns) = self.expand_guarded(id, true, false, depth + 1)? {
                            return Ok(Some(format!("{ns}{suffix}")));
                        }
                    }
                }
            }
            if is_absolute_iri(value) {
                return Ok(Some(value.to_string()));
            }
        }
        if vocab {
            if let Some(v) = &self.vocab {
                return Ok(Some(format!("{v}{value}")));
            }
        }
        if document {
            return Ok(resolve_iri(&self.base, value));
        }
        Ok(None)
    }
}

fn parse_term_definition(term: &str, d: &Map<String, Value>) -> Result<TermDefinition, Error> {
    for key in ["@reverse", "@container", "@context", "@nest", "@prefix", "@index", "@protected"] {
        if d.contains_key(key) {
            return Err(unsupported(format!("{key} in definition of term {term:?}")));
        }
    }
    let id = match d.get("@id") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(Value::Null) => None,
        Some(_) => return Err(shape(format!("@id of term {term:?} must be a string"))),
    };
    let coercion = match d.get("@type") {
        None => None,
        Some(Value::String(t)) if t == "@id" => Some(Coercion::Id),
        Some(Value::String(t)) if t == "@vocab" => Some(Coercion::Vocab),
        Some(Value::String(t)) if t == "@json" || t == "@none" => return Err(unsupported(format!("@type {t}"))),
        Some(Value::String(t)) => Some(Coercion::Datatype(t.clone())),
        Some(_) => return Err(shape(format!("@type of term {term:?} must be a string"))),
    };
    let language = match d.get("@language") {
        None => None,
        Some(Value::Null) => Some(None),
        Some(Value::String(l)) => Some(Some(l.clone())),
        Some(_) => return Err(shape(format!("@language of term {term:?} must be a string"))),
    };
    Ok(TermDefinition { id, coercion, language })
}

pub fn parse_jsonld(input: &str, base: Option<&str>) -> Result<Graph, Error> {
    let value: Value = serde_json::from_str(input).map_err(|e| {
        Error::Parse(ParseError::new(FormatId::JsonLd, e.to_string()).at(e.line().max(1), e.column().max(1)))
    })?;
    let base = base.unwrap_or(DEFAULT_BASE);
    let mut parser = Parser {
        graph: Graph::new(),
        blanks: BlankAllocator::default(),
        original_base: base.to_string(),
    };
    let ctx = Context::new(base);
    match &value {
        Value::Array(items) => {
            for item in items {
                parser.top_level(item, &ctx)?;
            }
        }
        Value::Object(_) => parser.top_level(&value, &ctx)?,
        _ => return Err(shape("top-level value must be an object or array")),
    }
    Ok(parser.graph)
}

struct Parser {
    graph: Graph,
    blanks: BlankAllocator,
    original_base: String,
}

impl Parser {
    fn top_level(&mut self, value: &Value, ctx: &Context) -> Result<(), Error> {
        let Value::Object(obj) = value else {
            return Err(shape("top-level items must be objects"));
        };
        let ctx = match obj.get("@context") {
            Some(local) => {
                let merged = ctx.merge(local, &self.original_base)?;
                self.capture_prefixes(local, &merged);
                merged
            }
            None => ctx.clone(),
        };
        if let Some(graph) = obj.get("@graph") {
            let others = obj.keys().any(|k| k != "@context" && k != "@graph");
            if others {
                return Err(unsupported("named graphs"));
            }
            let items: Vec<&Value> = match graph {
                Value::Array(items) => items.iter().collect(),
                other => vec![other],
            };
            for item in items {
                if let Value::Object(node) = item {
                    if !node.contains_key("@value") {
                        self.node(node, &ctx)?;
                    }
                }
            }
            return Ok(());
        }
        if obj.contains_key("@value") || obj.contains_key("@list") || obj.contains_key("@set") {
            return Ok(());
        }
        self.node(obj, &ctx)?;
        Ok(())
    }

    fn capture_prefixes(&mut self, local: &Value, ctx: &Context) {
        let Value::Object(map) = local else { return };
        for (term, def) in map {
            if term.starts_with('@') || term.contains(':') || !def.is_string() {
                continue;
            }
            if let Ok(Some(iri)) = ctx.expand(term, true, false) {
                if iri.ends_with('/') || iri.ends_with('#') {
                    self.graph.prefixes.bind(term.clone(), iri);
                }
            }
        }
    }

    fn subject_for(&mut self, id: &str) -> Result<Subject, Error> {
        match id.strip_prefix("_:") {
            Some(label) => Ok(Subject::Blank(self.blanks.named(label))),
            None => Ok(Subject::Iri(Iri::new(id).map_err(|e| shape(e.to_string()))?)),
        }
    }

    fn node(&mut self, obj: &Map<String, Value>, parent: &Context) -> Result<Subject, Error> {
        let ctx = match obj.get("@context") {
            Some(local) => parent.merge(local, &self.original_base)?,
            None => parent.clone(),
        };
        let subject = match obj.get("@id") {
            Some(Value::String(id)) => {
                let expanded = ctx.expand(id, false, true)?.ok_or_else(|| shape(format!("cannot expand @id {id:?}")))?;
                self.subject_for(&expanded)?
            }
            Some(_) => return Err(shape("@id must be a string")),
            None => Subject::Blank(self.blanks.fresh()),
        };

        for (key, value) in obj {
            match key.as_str() {
                "@context" | "@id" | "@index" => continue,
                "@type" => {
                    let types: Vec<&Value> = match value {
                        Value::Array(a) => a.iter().collect(),
                        v => vec![v],
                    };
                    for t in types {
                        let t = t.as_str().ok_or_else(|| shape("@type values must be strings"))?;
                        let expanded = ctx
                            .expand(t, true, true)?
                            .ok_or_else(|| shape(format!("cannot expand @type {t:?}")))?;
                        let object: Term = self.subject_for(&expanded)?.into();
                        self.graph.insert(Triple::new(subject.clone(), Iri::new(rdf::TYPE).unwrap(), object));
                    }
                    continue;
                }
                "@graph" => return Err(unsupported("named graphs")),
                "@reverse" | "@nest" | "@included" | "@json" => return Err(unsupported(key.clone())),
                k if k.starts_with('@') => continue,
                _ => {}
            }
            let Some(predicate) = ctx.expand(key, true, false)? else {
                continue;
            };
            if predicate.starts_with("_:") {
                continue;
            }
            let predicate = Iri::new(predicate).map_err(|e| shape(e.to_string()))?;
            let definition = ctx.terms.get(key.as_str());
            for object in self.values(value, &ctx, definition)? {
                self.graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
            }
        }
        Ok(subject)
    }

    fn values(&mut self, value: &Value, ctx: &Context, def: Option<&TermDefinition>) -> Result<Vec<Term>, Error> {
        let mut out = Vec::new();
        match value {
            Value::Null => {}
            Value::Array(items) => {
                for item in items {
                    out.extend(self.values(item, ctx, def)?);
                }
            }
            Value::Object(obj) if obj.contains_key("@set") => {
                out.extend(self.values(&obj["@set"], ctx, def)?);
            }
            Value::Object(obj) if obj.contains_key("@list") => {
                let items = self.values(&obj["@list"], ctx, def)?;
                out.push(self.list(items));
            }
            _ => {
                if let Some(term) = self.value(value, ctx, def)? {
                    out.push(term);
                }
            }
        }
        Ok(out)
    }

    fn list(&mut self, items: Vec<Term>) -> Term {
        let mut head = Term::Iri(Iri::new(rdf::NIL).unwrap());
        for item in items.into_iter().rev() {
            let node = self.blanks.fresh();
            self.graph.insert(Triple::new(node.clone(), Iri::new(rdf::FIRST).unwrap(), item));
            self.graph.insert(Triple::new(node.clone(), Iri::new(rdf::REST).unwrap(), head));
            head = Term::Blank(node);
        }
        head
    }

    fn value(&mut self, value: &Value, ctx: &Context, def: Option<&TermDefinition>) -> Result<Option<Term>, Error> {
        let coercion = def.and_then(|d| d.coercion.clone());
        let language = match def.and_then(|d| d.language.clone()) {
            Some(l) => l,
            None => ctx.language.clone(),
        };
        match value {
            Value::String(s) => match coercion {
                Some(Coercion::Id) => self.reference(ctx.expand(s, false, true)?, s).map(Some),
                Some(Coercion::Vocab) => self.reference(ctx.expand(s, true, true)?, s).map(Some),
                Some(Coercion::Datatype(dt)) => Ok(Some(Term::Literal(typed(s.clone(), &self.datatype(ctx, &dt)?)?))),
                None => Ok(Some(Term::Literal(
                    Literal::new(s.clone(), None, language).map_err(|e| shape(e.to_string()))?,
                ))),
            },
            Value::Number(n) => {
                let (lexical, natural) = number_literal(n);
                let dt = match coercion {
                    Some(Coercion::Datatype(dt)) => self.datatype(ctx, &dt)?,
                    _ => natural.to_string(),
                };
                Ok(Some(Term::Literal(typed(lexical, &dt)?)))
            }
            Value::Bool(b) => {
                let dt = match coercion {
                    Some(Coercion::Datatype(dt)) => self.datatype(ctx, &dt)?,
                    _ => xsd::BOOLEAN.to_string(),
                };
                Ok(Some(Term::Literal(typed(b.to_string(), &dt)?)))
            }
            Value::Object(obj) if obj.contains_key("@value") => self.value_object(obj, ctx).map(Some),
            Value::Object(obj) => {
                let subject = self.node(obj, ctx)?;
                Ok(Some(subject.into()))
            }
            Value::Null => Ok(None),
            Value::Array(_) => unreachable!("arrays are flattened by values()"),
        }
    }

    fn reference(&mut self, expanded: Option<String>, raw: &str) -> Result<Term, Error> {
        let id = expanded.ok_or_else(|| shape(format!("cannot expand IRI {raw:?}")))?;
        Ok(self.subject_for(&id)?.into())
    }

    fn datatype(&self, ctx: &Context, dt: &str) -> Result<String, Error> {
        ctx.expand(dt, true, true)?
            .ok_or_else(|| shape(format!("cannot expand datatype {dt:?}")))
    }

    fn value_object(&mut self, obj: &Map<String, Value>, ctx: &Context) -> Result<Term, Error> {
        for key in obj.keys() {
            if !matches!(key.as_str(), "@value" | "@type" | "@language" | "@index" | "@context" | "@direction") {
                return Err(shape(format!("unexpected key {key:?} in value object")));
            }
        }
        let datatype = match obj.get("@type") {
            None | Some(Value::Null) => None,
            Some(Value::String(t)) if t == "@json" => return Err(unsupported("@json literals")),
            Some(Value::String(t)) => Some(self.datatype(ctx, t)?),
            Some(_) => return Err(shape("@type in a value object must be a string")),
        };
        let language = match obj.get("@language") {
            None | Some(Value::Null) => None,
            Some(Value::String(l)) => Some(l.clone()),
            Some(_) => return Err(shape("@language must be a string")),
        };
        if datatype.is_some() && language.is_some() {
            return Err(shape("a value object cannot have both @type and @language"));
        }
        let (lexical, natural) = match &obj["@value"] {
            Value::String(s) => (s.clone(), None),
            Value::Number(n) => {
                let (l, dt) = number_literal(n);
                (l, Some(dt))
            }
            Value::Bool(b) => (b.to_string(), Some(xsd::BOOLEAN)),
            _ => return Err(shape("@value must be a string, number or boolean")),
        };
        let datatype = datatype.or(natural.map(str::to_string));
        let datatype = datatype.map(|dt| Iri::new(dt).map_err(|e| shape(e.to_string()))).transpose()?;
        Literal::new(lexical, datatype, language)
            .map(Term::Literal)
            .map_err(|e| shape(e.to_string()))
    }
}

fn typed(lexical: String, datatype: &str) -> Result<Literal, Error> {
    let dt = Iri::new(datatype).map_err(|e| shape(e.to_string()))?;
    Literal::typed(lexical, dt).map_err(|e| shape(e.to_string()))
}

/// Lexical form and natural datatype of a JSON number: integers map to
/// xsd:integer, everything else to xsd:double in canonical exponent form.
fn number_literal(n: &Number) -> (String, &'static str) {
    if n.is_i64() || n.is_u64() {
        return (n.to_string(), xsd::INTEGER);
    }
    let f = n.as_f64().unwrap_or(0.0);
    let mut text = format!("{f:E}");
    if let Some(e) = text.find('E') {
        if !text[..e].contains('.') {
            text.insert_str(e, ".0");
        }
    }
    (text, xsd::DOUBLE)
}
