//! An RDFa Core 1.1 subset for HTML: `vocab`, `prefix` (and `xmlns:*`),
//! `about`, `resource`, `href`, `src`, `typeof`, `property`, `rel`,
//! `content`, `datatype` and `lang`/`xml:lang` inheritance, with subject and
//! object chaining down the element tree and hanging `rel`s.
//!
//! Not supported: `rev`, `inlist`, term mappings from the initial context,
//! XMLLiteral parsing, and the `rdfa:usesVocabulary` triple.

use std::collections::HashMap;
use std::rc::Rc;

use scraper::ElementRef;

use super::html::{document_base, parse_document, text_content, tokens, too_deep, MAX_DEPTH};
use super::{resolve_iri, BlankAllocator};
use crate::error::Error;
use crate::formats::FormatId;
use crate::model::{is_absolute_iri, Graph, Iri, Literal, Subject, Term, Triple};
use crate::vocab::rdf;

/// Prefixes predeclared for every document (a subset of the RDFa initial
/// context).
const INITIAL_PREFIXES: &[(&str, &str)] = &[
    ("cc", "http://creativecommons.org/ns#"),
    ("dc", "http://purl.org/dc/terms/"),
    ("dc11", "http://purl.org/dc/elements/1.1/"),
    ("dcat", "http://www.w3.org/ns/dcat#"),
    ("dcterms", "http://purl.org/dc/terms/"),
    ("foaf", "http://xmlns.com/foaf/0.1/"),
    ("gr", "http://purl.org/goodrelations/v1#"),
    ("og", "http://ogp.me/ns#"),
    ("owl", "http://www.w3.org/2002/07/owl#"),
    ("prov", "http://www.w3.org/ns/prov#"),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("rdfa", "http://www.w3.org/ns/rdfa#"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("schema", "http://schema.org/"),
    ("sioc", "http://rdfs.org/sioc/ns#"),
    ("skos", "http://www.w3.org/2004/02/skos/core#"),
    ("vcard", "http://www.w3.org/2006/vcard/ns#"),
    ("void", "http://rdfs.org/ns/void#"),
    ("xhv", "http://www.w3.org/1999/xhtml/vocab#"),
    ("xml", "http://www.w3.org/XML/1998/namespace"),
    ("xsd", "http://www.w3.org/2001/XMLSchema#"),
];

#[derive(Clone)]
struct Context {
    parent_subject: Subject,
    parent_object: Option<Subject>,
    /// Predicates of a `rel` without an object, waiting for a subject below.
    incomplete: Vec<Iri>,
    language: Option<String>,
    prefixes: Rc<HashMap<String, String>>,
    vocab: Option<String>,
}

pub fn parse_rdfa(input: &str, base: &str) -> Result<Graph, Error> {
    let doc = parse_document(input);
    let base = document_base(&doc, base);
    let document = Iri::new(base.clone())
        .map(Subject::Iri)
        .map_err(|e| Error::Parse(crate::error::ParseError::new(FormatId::Rdfa, e.to_string())))?;
    let mut parser = Parser { base, graph: Graph::new(), blanks: BlankAllocator::default(), document: document.clone() };
    let ctx = Context {
        parent_subject: document,
        parent_object: None,
        incomplete: Vec::new(),
        language: None,
        prefixes: Rc::new(INITIAL_PREFIXES.iter().map(|(p, n)| (p.to_string(), n.to_string())).collect()),
        vocab: None,
    };
    parser.element(doc.root_element(), &ctx, 0)?;
    Ok(parser.graph)
}

struct Parser {
    base: String,
    graph: Graph,
    blanks: BlankAllocator,
    document: Subject,
}

impl Parser {
    fn emit(&mut self, subject: &Subject, predicate: &Iri, object: Term) {
        self.graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
    }

    fn blank(&mut self, label: &str) -> Subject {
        Subject::Blank(self.blanks.named(label))
    }

    fn fresh(&mut self) -> Subject {
        Subject::Blank(self.blanks.fresh())
    }

    fn expand_curie(&self, value: &str, ctx: &Context) -> Option<String> {
        let (prefix, local) = value.split_once(':')?;
        if local.starts_with("//") {
            return None;
        }
        let ns = ctx.prefixes.get(&prefix.to_ascii_lowercase())?;
        Some(format!("{ns}{local}"))
    }

    /// `about` and `resource`: safe CURIE, CURIE or IRI.
    fn resource(&mut self, value: &str, ctx: &Context) -> Option<Subject> {
        let value = value.trim();
        if let Some(inner) = value.strip_prefix('[').and_then(|v| v.strip_suffix(']')) {
            if let Some(label) = inner.strip_prefix("_:") {
                return Some(self.blank(label));
            }
            return self.expand_curie(inner, ctx).and_then(|i| Iri::new(i).ok()).map(Subject::Iri);
        }
        if let Some(label) = value.strip_prefix("_:") {
            return Some(self.blank(label));
        }
        if let Some(expanded) = self.expand_curie(value, ctx) {
            return Iri::new(expanded).ok().map(Subject::Iri);
        }
        self.iri(value)
    }

    /// `href` and `src`: plain IRI references.
    fn iri(&self, value: &str) -> Option<Subject> {
        resolve_iri(&self.base, value.trim())
            .and_then(|i| Iri::new(i).ok())
            .map(Subject::Iri)
    }

    /// `property`, `rel`, `typeof`, `datatype`: term, CURIE or absolute IRI.
    fn term(&mut self, value: &str, ctx: &Context) -> Option<Subject> {
        if !value.contains(':') {
            return ctx.vocab.as_ref().and_then(|v| Iri::new(format!("{v}{value}")).ok()).map(Subject::Iri);
        }
        if let Some(label) = value.strip_prefix("_:") {
            return Some(self.blank(label));
        }
        if let Some(expanded) = self.expand_curie(value, ctx) {
            return Iri::new(expanded).ok().map(Subject::Iri);
        }
        if is_absolute_iri(value) {
            return Iri::new(value).ok().map(Subject::Iri);
        }
        None
    }

    fn predicates(&mut self, el: ElementRef<'_>, name: &str, ctx: &Context) -> Vec<Iri> {
        tokens(el, name)
            .into_iter()
            .filter_map(|t| match self.term(t, ctx) {
                Some(Subject::Iri(i)) => Some(i),
                _ => None,
            })
            .collect()
    }

    fn local_context(&self, el: ElementRef<'_>, parent: &Context) -> Context {
        let mut ctx = parent.clone();
        if let Some(vocab) = el.attr("vocab") {
            let vocab = vocab.trim();
            ctx.vocab = if vocab.is_empty() { None } else { resolve_iri(&self.base, vocab) };
        }
        let mut declared: Vec<(String, String)> = Vec::new();
        for (name, value) in el.value().attrs() {
            if let Some(prefix) = name.strip_prefix("xmlns:") {
                declared.push((prefix.to_ascii_lowercase(), value.trim().to_string()));
            }
        }
        if let Some(prefix_attr) = el.attr("prefix") {
            let parts: Vec<&str> = prefix_attr.split_ascii_whitespace().collect();
            let mut i = 0;
            while i + 1 < parts.len() {
                match parts[i].strip_suffix(':') {
                    Some(name) if !name.is_empty() && !name.contains(':') => {
                        declared.push((name.to_ascii_lowercase(), parts[i + 1].to_string()));
                        i += 2;
                    }
                    _ => i += 1,
                }
            }
        }
        if !declared.is_empty() {
            let map = Rc::make_mut(&mut ctx.prefixes);
            for (p, ns) in declared {
                if p != "_" {
                    map.insert(p, ns);
                }
            }
        }
        if let Some(lang) = el.attr("xml:lang").or_else(|| el.attr("lang")) {
            let lang = lang.trim();
            ctx.language = if lang.is_empty() { None } else { Some(lang.to_string()) };
        }
        ctx
    }

    fn literal(&self, lexical: String, language: Option<&str>) -> Term {
        let lit = match language {
            Some(l) => Literal::lang(lexical.clone(), l).unwrap_or_else(|_| Literal::simple(lexical)),
            None => Literal::simple(lexical),
        };
        Term::Literal(lit)
    }

    fn element(&mut self, el: ElementRef<'_>, parent: &Context, depth: usize) -> Result<(), Error> {
        if depth > MAX_DEPTH {
            return Err(too_deep(FormatId::Rdfa));
        }
        let ctx = self.local_context(el, parent);
        let name = el.value().name();
        let acts_as_document = depth == 0 || name == "head" || name == "body";

        let rels = self.predicates(el, "rel", &ctx);
        let has_rel = !rels.is_empty();
        let properties = self.predicates(el, "property", &ctx);
        let has_property = el.attr("property").is_some();
        let has_typeof = el.attr("typeof").is_some();
        let content = el.attr("content");
        let datatype = el.attr("datatype");

        let about = el.attr("about").and_then(|v| self.resource(v, &ctx));
        let pointer = match el.attr("resource") {
            Some(v) => self.resource(v, &ctx),
            None => None,
        }
        .or_else(|| el.attr("href").and_then(|v| self.iri(v)))
        .or_else(|| el.attr("src").and_then(|v| self.iri(v)));
        let document = acts_as_document.then(|| self.document.clone());

        let mut skip = false;
        let new_subject: Option<Subject>;
        let mut current_object: Option<Subject> = None;
        let mut typed_resource: Option<Subject> = None;

        if !has_rel {
            if has_property && content.is_none() && datatype.is_none() {
                new_subject = about.clone().or(document.clone()).or(parent.parent_object.clone());
                if has_typeof {
                    typed_resource = match about.clone().or(document.clone()) {
                        Some(s) => Some(s),
                        None => {
                            let t = match pointer.clone() {
                                Some(p) => p,
                                None => self.fresh(),
                            };
                            current_object = Some(t.clone());
                            Some(t)
                        }
                    };
                }
            } else {
                let mut chosen = about.clone().or(pointer.clone()).or(document.clone());
                if chosen.is_none() && has_typeof {
                    chosen = Some(self.fresh());
                }
                if chosen.is_none() {
                    skip = !has_property;
                    chosen = parent.parent_object.clone();
                }
                new_subject = chosen;
                if has_typeof {
                    typed_resource = new_subject.clone();
                }
            }
        } else {
            new_subject = about.clone().or(document.clone()).or(parent.parent_object.clone());
            if has_typeof && about.is_some() {
                typed_resource = about.clone();
            }
            current_object = pointer.clone();
            if current_object.is_none() && has_typeof && about.is_none() {
                current_object = Some(self.fresh());
            }
            if has_typeof && about.is_none() {
                typed_resource = current_object.clone();
            }
        }

        if let Some(typed) = &typed_resource {
            let type_pred = Iri::new(rdf::TYPE).expect("static IRI");
            for t in tokens(el, "typeof") {
                if let Some(ty) = self.term(t, &ctx) {
                    self.emit(typed, &type_pred, ty.into());
                }
            }
        }

        let mut local_incomplete = Vec::new();
        if let Some(subject) = &new_subject {
            if has_rel {
                match &current_object {
                    Some(object) => {
                        for rel in &rels {
                            self.emit(subject, rel, object.clone().into());
                        }
                    }
                    None => {
                        local_incomplete = rels.clone();
                        current_object = Some(self.fresh());
                    }
                }
            }

            if !properties.is_empty() {
                let value = self.property_value(el, &ctx, has_rel, content, datatype, &pointer, &about, &typed_resource);
                if let Some(value) = value {
                    for p in &properties {
                        self.emit(subject, p, value.clone());
                    }
                }
            }
        }

        if !skip {
            if let Some(subject) = &new_subject {
                for p in &parent.incomplete {
                    self.emit(&parent.parent_subject, p, subject.clone().into());
                }
            }
        }

        let child_ctx = if skip {
            ctx
        } else {
            let parent_subject = new_subject.clone().unwrap_or_else(|| parent.parent_subject.clone());
            Context {
                parent_object: current_object.or(new_subject).or_else(|| Some(parent.parent_subject.clone())),
                parent_subject,
                incomplete: local_incomplete,
                ..ctx
            }
        };
        for child in el.child_elements() {
            self.element(child, &child_ctx, depth + 1)?;
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn property_value(
        &mut self,
        el: ElementRef<'_>,
        ctx: &Context,
        has_rel: bool,
        content: Option<&str>,
        datatype: Option<&str>,
        pointer: &Option<Subject>,
        about: &Option<Subject>,
        typed_resource: &Option<Subject>,
    ) -> Option<Term> {
        if let Some(dt) = datatype.map(str::trim).filter(|d| !d.is_empty()) {
            let lexical = content.map(str::to_string).unwrap_or_else(|| text_content(el));
            return match self.term(dt, ctx) {
                Some(Subject::Iri(dt)) if dt.as_str() == rdf::XML_LITERAL => {
                    let inner = el.inner_html();
                    Literal::typed(content.map(str::to_string).unwrap_or(inner), dt).ok().map(Term::Literal)
                }
                Some(Subject::Iri(dt)) => match Literal::typed(lexical.clone(), dt) {
                    Ok(lit) => Some(Term::Literal(lit)),
                    Err(_) => Some(self.literal(lexical, ctx.language.as_deref())),
                },
                _ => Some(Term::Literal(Literal::simple(lexical))),
            };
        }
        if datatype.is_some() {
            let lexical = content.map(str::to_string).unwrap_or_else(|| text_content(el));
            return Some(self.literal(lexical, ctx.language.as_deref()));
        }
        if let Some(content) = content {
            return Some(self.literal(content.to_string(), ctx.language.as_deref()));
        }
        if !has_rel {
            if let Some(p) = pointer {
                return Some(p.clone().into());
            }
        }
        if el.attr("typeof").is_some() && about.is_none() {
            if let Some(t) = typed_resource {
                return Some(t.clone().into());
            }
        }
        Some(self.literal(text_content(el), ctx.language.as_deref()))
    }
}
