//! Microdata to RDF. Each item (`itemscope`) becomes a subject: its `itemid`
//! or a fresh blank node. `itemtype` values become `rdf:type` triples and
//! fix the vocabulary against which non-URL property names resolve: the
//! type IRI up to and including its last `#` or, failing that, its last `/`.
//! Items without a type only produce triples for absolute property names.
//!
//! As an extension, `itemid` and link-like `href`/`src` values of the form
//! `_:label` denote blank nodes, which lets the snippet serializer express
//! shared or cyclic blank nodes.

use scraper::ElementRef;

use super::html::{document_base, parse_document, text_content, tokens, too_deep, MAX_DEPTH};
use super::{resolve_iri, BlankAllocator};
use crate::error::Error;
use crate::formats::FormatId;
use crate::model::{is_absolute_iri, Graph, Iri, Literal, Subject, Term, Triple};
use crate::vocab::rdf;

struct Item {
    subject: Subject,
    vocabulary: Option<String>,
}

pub fn parse_microdata(input: &str, base: &str) -> Result<Graph, Error> {
    let doc = parse_document(input);
    let base = document_base(&doc, base);
    let mut parser = Parser { base, graph: Graph::new(), blanks: BlankAllocator::default() };
    parser.walk(doc.root_element(), None, 0)?;
    Ok(parser.graph)
}

struct Parser {
    base: String,
    graph: Graph,
    blanks: BlankAllocator,
}

/// The vocabulary prefix implied by an item type.
pub(crate) fn vocabulary_of(item_type: &str) -> String {
    match item_type.rfind('#') {
        Some(i) => item_type[..=i].to_string(),
        None => match item_type.rfind('/') {
            Some(i) => item_type[..=i].to_string(),
            None => item_type.to_string(),
        },
    }
}

impl Parser {
    fn reference(&mut self, value: &str) -> Option<Subject> {
        let value = value.trim();
        if let Some(label) = value.strip_prefix("_:") {
            return Some(Subject::Blank(self.blanks.named(label)));
        }
        resolve_iri(&self.base, value).and_then(|i| Iri::new(i).ok()).map(Subject::Iri)
    }

    fn walk(&mut self, el: ElementRef<'_>, item: Option<&Item>, depth: usize) -> Result<(), Error> {
        if depth > MAX_DEPTH {
            return Err(too_deep(FormatId::Microdata));
        }
        let is_scope = el.attr("itemscope").is_some();
        let names = tokens(el, "itemprop");

        if is_scope {
            let nested = self.start_item(el)?;
            if let Some(owner) = item {
                if !names.is_empty() {
                    let object: Term = nested.subject.clone().into();
                    self.properties(owner, &names, object);
                }
            }
            for child in el.child_elements() {
                self.walk(child, Some(&nested), depth + 1)?;
            }
            return Ok(());
        }

        if let Some(owner) = item {
            if !names.is_empty() {
                if let Some(value) = self.value(el) {
                    self.properties(owner, &names, value);
                }
            }
        }
        for child in el.child_elements() {
            self.walk(child, item, depth + 1)?;
        }
        Ok(())
    }

    fn start_item(&mut self, el: ElementRef<'_>) -> Result<Item, Error> {
        let subject = match el.attr("itemid").and_then(|id| self.reference(id)) {
            Some(s) => s,
            None => Subject::Blank(self.blanks.fresh()),
        };
        let types: Vec<Iri> = tokens(el, "itemtype")
            .into_iter()
            .filter(|t| is_absolute_iri(t))
            .filter_map(|t| Iri::new(t).ok())
            .collect();
        let vocabulary = types.first().map(|t| vocabulary_of(t.as_str()));
        let type_pred = Iri::new(rdf::TYPE).expect("static IRI");
        for t in types {
            self.graph.insert(Triple::new(subject.clone(), type_pred.clone(), Term::Iri(t)));
        }
        Ok(Item { subject, vocabulary })
    }

    fn properties(&mut self, owner: &Item, names: &[&str], value: Term) {
        for name in names {
            let predicate = if is_absolute_iri(name) {
                Iri::new(*name).ok()
            } else {
                owner.vocabulary.as_ref().and_then(|v| Iri::new(format!("{v}{name}")).ok())
            };
            if let Some(p) = predicate {
                self.graph.insert(Triple::new(owner.subject.clone(), p, value.clone()));
            }
        }
    }

    fn value(&mut self, el: ElementRef<'_>) -> Option<Term> {
        let url_attr = match el.value().name() {
            "a" | "area" | "link" => Some("href"),
            "audio" | "embed" | "iframe" | "img" | "source" | "track" | "video" => Some("src"),
            "object" => Some("data"),
            _ => None,
        };
        if let Some(attr) = url_attr {
            return match el.attr(attr) {
                Some(v) => self.reference(v).map(Term::from),
                None => Some(Term::Literal(Literal::simple(""))),
            };
        }
        let lexical = match el.value().name() {
            "meta" => el.attr("content").unwrap_or("").to_string(),
            "data" | "meter" => el.attr("value").unwrap_or("").to_string(),
            "time" => el.attr("datetime").map(str::to_string).unwrap_or_else(|| text_content(el)),
            _ => text_content(el),
        };
        Some(Term::Literal(Literal::simple(lexical)))
    }
}
