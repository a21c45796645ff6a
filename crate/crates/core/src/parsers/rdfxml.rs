//! RDF/XML. Supports node elements (rdf:Description and typed nodes),
//! rdf:about / rdf:ID / rdf:nodeID, property elements and property
//! attributes, rdf:resource, rdf:datatype, xml:lang, xml:base, rdf:li and
//! rdf:parseType "Resource" and "Collection". XML literals and reification
//! via rdf:ID on property elements are reported as unsupported.

use quick_xml::escape::resolve_predefined_entity;
use quick_xml::events::Event;
use quick_xml::name::ResolveResult;
use quick_xml::{NsReader, XmlVersion};

use super::{resolved, BlankAllocator, DEFAULT_BASE};
use crate::error::{line_col, Error, ParseError};
use crate::formats::FormatId;
use crate::model::{Graph, Iri, Literal, Subject, Term, Triple};
use crate::vocab::rdf;

const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";

struct Attr {
    ns: String,
    local: String,
    value: String,
}

struct Element {
    ns: String,
    local: String,
    attrs: Vec<Attr>,
    children: Vec<Node>,
    offset: usize,
}

enum Node {
    Element(Element),
    Text(String),
}

impl Element {
    fn attr(&self, ns: &str, local: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|a| a.ns == ns && a.local == local)
            .map(|a| a.value.as_str())
    }

    fn rdf_attr(&self, local: &str) -> Option<&str> {
        self.attr(rdf::NS, local)
    }

    fn is_rdf(&self, local: &str) -> bool {
        self.ns == rdf::NS && self.local == local
    }

    fn child_elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(|n| match n {
            Node::Element(e) => Some(e),
            Node::Text(_) => None,
        })
    }

    fn text(&self) -> String {
        self.children
            .iter()
            .filter_map(|n| match n {
                Node::Text(t) => Some(t.as_str()),
                Node::Element(_) => None,
            })
            .collect()
    }
}

fn read_tree(input: &str) -> Result<Element, ParseError> {
    let mut reader = NsReader::from_str(input);
    reader.config_mut().trim_text(false);
    let xml_error = |offset: u64, message: String| {
        let (line, column) = line_col(input, offset as usize);
        ParseError::new(FormatId::Xml, message).at(line, column)
    };

    let mut stack: Vec<Element> = Vec::new();
    let mut root: Option<Element> = None;
    loop {
        let offset = reader.buffer_position() as usize;
        let (resolve, event) = match reader.read_resolved_event() {
            Ok(v) => v,
            Err(e) => {
                let message = e.to_string();
                return Err(xml_error(reader.error_position(), message));
            }
        };
        let ns = match resolve {
            ResolveResult::Bound(ns) => ns.as_ref().to_string(),
            ResolveResult::Unbound => String::new(),
            ResolveResult::Unknown(p) => {
                return Err(xml_error(
                    offset as u64,
                    format!("undeclared namespace prefix {:?}", p),
                ))
            }
        };
        match event {
            Event::Start(ref e) | Event::Empty(ref e) => {
                let local = e.local_name().as_ref().to_string();
                let mut attrs = Vec::new();
                for attr in e.attributes() {
                    let attr = attr.map_err(|err| xml_error(offset as u64, err.to_string()))?;
                    if attr.key.as_namespace_binding().is_some() {
                        continue;
                    }
                    let (res, name) = reader.resolver().resolve_attribute(attr.key);
                    let attr_ns = match res {
                        ResolveResult::Bound(ns) => ns.as_ref().to_string(),
                        ResolveResult::Unbound => String::new(),
                        ResolveResult::Unknown(p) => {
                            return Err(xml_error(
                                offset as u64,
                                format!("undeclared namespace prefix {:?}", p),
                            ))
                        }
                    };
                    let value = attr
                        .normalized_value(XmlVersion::Implicit1_0)
                        .map_err(|err| xml_error(offset as u64, err.to_string()))?
                        .into_owned();
                    attrs.push(Attr {
                        ns: attr_ns,
                        local: name.as_ref().to_string(),
                        value,
                    });
                }
                let element = Element { ns, local, attrs, children: Vec::new(), offset };
                if matches!(event, Event::Start(_)) {
                    stack.push(element);
                } else {
                    attach(&mut stack, &mut root, element, || xml_error(offset as u64, "multiple root elements".into()))?;
                }
            }
            Event::End(_) => {
                let element = stack.pop().expect("reader checks end tags");
                attach(&mut stack, &mut root, element, || xml_error(offset as u64, "multiple root elements".into()))?;
            }
            Event::Text(t) => push_text(&mut stack, &t.xml10_content()),
            Event::CData(t) => push_text(&mut stack, &t.xml10_content()),
            Event::GeneralRef(r) => {
                let resolved = match r.resolve_char_ref() {
                    Ok(Some(c)) => c.to_string(),
                    Ok(None) => resolve_predefined_entity(&r)
                        .ok_or_else(|| xml_error(offset as u64, format!("unknown entity &{};", &*r)))?
                        .to_string(),
                    Err(e) => return Err(xml_error(offset as u64, e.to_string())),
                };
                push_text(&mut stack, &resolved);
            }
            Event::DocType(_) => {
                return Err(xml_error(offset as u64, "DOCTYPE declarations are not supported".into()));
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if let Some(open) = stack.last() {
        let (line, column) = line_col(input, open.offset);
        return Err(ParseError::new(FormatId::Xml, format!("element <{}> is not closed", open.local)).at(line, column));
    }
    root.ok_or_else(|| {
        let (line, column) = line_col(input, input.len());
        ParseError::new(FormatId::Xml, "document has no root element").at(line, column)
    })
}

fn attach(
    stack: &mut [Element],
    root: &mut Option<Element>,
    element: Element,
    multiple: impl FnOnce() -> ParseError,
) -> Result<(), ParseError> {
    match stack.last_mut() {
        Some(parent) => parent.children.push(Node::Element(element)),
        None if root.is_none() => *root = Some(element),
        None => return Err(multiple()),
    }
    Ok(())
}

fn push_text(stack: &mut [Element], text: &str) {
    if let Some(parent) = stack.last_mut() {
        if let Some(Node::Text(t)) = parent.children.last_mut() {
            t.push_str(text);
        } else {
            parent.children.push(Node::Text(text.to_string()));
        }
    }
}

pub fn parse_rdfxml(input: &str, base: Option<&str>) -> Result<Graph, Error> {
    let root = read_tree(input)?;
    let mut parser = Parser {
        input,
        graph: Graph::new(),
        blanks: BlankAllocator::default(),
    };
    let ctx = Context {
        base: base.unwrap_or(DEFAULT_BASE).to_string(),
        lang: None,
    };
    if root.is_rdf("RDF") {
        let ctx = ctx.enter(&root);
        for child in root.child_elements() {
            parser.node_element(child, &ctx)?;
        }
        parser.check_no_text(&root)?;
    } else {
        parser.node_element(&root, &ctx)?;
    }
    Ok(parser.graph)
}

#[derive(Clone)]
struct Context {
    base: String,
    lang: Option<String>,
}

impl Context {
    fn enter(&self, e: &Element) -> Context {
        let mut ctx = self.clone();
        if let Some(b) = e.attr(XML_NS, "base") {
            if let Some(r) = super::resolve_iri(&self.base, b) {
                ctx.base = r;
            }
        }
        if let Some(l) = e.attr(XML_NS, "lang") {
            ctx.lang = if l.is_empty() { None } else { Some(l.to_string()) };
        }
        ctx
    }
}

/// Attributes with syntactic meaning on node or property elements.
const RDF_SYNTAX_ATTRS: [&str; 8] = ["about", "ID", "nodeID", "resource", "datatype", "parseType", "bagID", "aboutEach"];

struct Parser<'a> {
    input: &'a str,
    graph: Graph,
    blanks: BlankAllocator,
}

impl Parser<'_> {
    fn error(&self, e: &Element, message: impl Into<String>) -> Error {
        let (line, column) = line_col(self.input, e.offset);
        Error::Parse(ParseError::new(FormatId::Xml, message).at(line, column))
    }

    fn iri(&self, e: &Element, base: &str, reference: &str) -> Result<Iri, Error> {
        resolved(base, reference).map_err(|m| self.error(e, m))
    }

    fn element_iri(&self, e: &Element) -> Result<Iri, Error> {
        Iri::new(format!("{}{}", e.ns, e.local))
            .map_err(|_| self.error(e, format!("element <{}> is not in a namespace", e.local)))
    }

    fn check_no_text(&self, e: &Element) -> Result<(), Error> {
        if e.text().trim().is_empty() {
            Ok(())
        } else {
            Err(self.error(e, format!("unexpected text content in <{}>", e.local)))
        }
    }

    fn property_attrs<'e>(&self, e: &'e Element) -> impl Iterator<Item = &'e Attr> {
        e.attrs.iter().filter(|a| {
            !a.ns.is_empty() && a.ns != XML_NS && !(a.ns == rdf::NS && RDF_SYNTAX_ATTRS.contains(&a.local.as_str()))
        })
    }

    fn node_element(&mut self, e: &Element, parent: &Context) -> Result<Subject, Error> {
        let ctx = parent.enter(e);
        if e.rdf_attr("aboutEach").is_some() || e.rdf_attr("bagID").is_some() {
            return Err(Error::unsupported(FormatId::Xml, "rdf:aboutEach and rdf:bagID"));
        }
        let subject = if let Some(about) = e.rdf_attr("about") {
            Subject::Iri(self.iri(e, &ctx.base, about)?)
        } else if let Some(id) = e.rdf_attr("ID") {
            Subject::Iri(self.iri(e, &ctx.base, &format!("#{id}"))?)
        } else if let Some(node_id) = e.rdf_attr("nodeID") {
            Subject::Blank(self.blanks.named(node_id))
        } else {
            Subject::Blank(self.blanks.fresh())
        };
        if !e.is_rdf("Description") {
            if e.ns == rdf::NS && matches!(e.local.as_str(), "RDF" | "li" | "about" | "resource" | "nodeID") {
                return Err(self.error(e, format!("rdf:{} cannot be used as a node element", e.local)));
            }
            let class = self.element_iri(e)?;
            self.graph.insert(Triple::new(subject.clone(), rdf_type(), class));
        }
        self.apply_property_attrs(e, &subject, &ctx)?;
        self.check_no_text(e)?;
        let mut li = 0;
        for child in e.child_elements() {
            self.property_element(child, &subject, &ctx, &mut li)?;
        }
        Ok(subject)
    }

    fn apply_property_attrs(&mut self, e: &Element, subject: &Subject, ctx: &Context) -> Result<(), Error> {
        let attrs: Vec<&Attr> = self.property_attrs(e).collect();
        for a in attrs {
            let predicate = Iri::new(format!("{}{}", a.ns, a.local)).map_err(|m| self.error(e, m.to_string()))?;
            let object = if predicate.as_str() == rdf::TYPE {
                Term::Iri(self.iri(e, &ctx.base, &a.value)?)
            } else {
                Term::Literal(self.literal(e, a.value.clone(), None, ctx)?)
            };
            self.graph.insert(Triple::new(subject.clone(), predicate, object));
        }
        Ok(())
    }

    fn literal(&self, e: &Element, text: String, datatype: Option<Iri>, ctx: &Context) -> Result<Literal, Error> {
        let lang = if datatype.is_some() { None } else { ctx.lang.clone() };
        Literal::new(text, datatype, lang).map_err(|m| self.error(e, m.to_string()))
    }

    fn property_element(&mut self, e: &Element, subject: &Subject, parent: &Context, li: &mut usize) -> Result<(), Error> {
        let ctx = parent.enter(e);
        let predicate = if e.is_rdf("li") {
            *li += 1;
            Iri::new(format!("{}_{}", rdf::NS, li)).unwrap()
        } else {
            if e.ns == rdf::NS && matches!(e.local.as_str(), "RDF" | "Description" | "about" | "resource" | "nodeID") {
                return Err(self.error(e, format!("rdf:{} cannot be used as a property element", e.local)));
            }
            self.element_iri(e)?
        };
        if e.rdf_attr("ID").is_some() || e.rdf_attr("bagID").is_some() {
            return Err(Error::unsupported(FormatId::Xml, "reification via rdf:ID on property elements"));
        }

        match e.rdf_attr("parseType") {
            Some("Resource") => {
                let node = Subject::Blank(self.blanks.fresh());
                self.graph.insert(Triple::new(subject.clone(), predicate, node.clone()));
                self.check_no_text(e)?;
                let mut inner_li = 0;
                for child in e.child_elements() {
                    self.property_element(child, &node, &ctx, &mut inner_li)?;
                }
                return Ok(());
            }
            Some("Collection") => {
                self.check_no_text(e)?;
                let mut items = Vec::new();
                for child in e.child_elements() {
                    items.push(self.node_element(child, &ctx)?);
                }
                let mut head = Term::Iri(Iri::new(rdf::NIL).unwrap());
                for item in items.into_iter().rev() {
                    let node = self.blanks.fresh();
                    self.graph.insert(Triple::new(node.clone(), Iri::new(rdf::FIRST).unwrap(), item));
                    self.graph.insert(Triple::new(node.clone(), Iri::new(rdf::REST).unwrap(), head));
                    head = Term::Blank(node);
                }
                self.graph.insert(Triple::new(subject.clone(), predicate, head));
                return Ok(());
            }
            Some(other) => {
                return Err(Error::unsupported(FormatId::Xml, format!("rdf:parseType=\"{other}\"")));
            }
            None => {}
        }

        let children: Vec<&Element> = e.child_elements().collect();
        if !children.is_empty() {
            if children.len() > 1 {
                return Err(self.error(e, "a property element may contain at most one node element"));
            }
            self.check_no_text(e)?;
            let object = self.node_element(children[0], &ctx)?;
            self.graph.insert(Triple::new(subject.clone(), predicate, object));
            return Ok(());
        }

        let resource = e.rdf_attr("resource");
        let node_id = e.rdf_attr("nodeID");
        let has_property_attrs = self.property_attrs(e).next().is_some();
        let object: Term = if let Some(r) = resource {
            Term::Iri(self.iri(e, &ctx.base, r)?)
        } else if let Some(n) = node_id {
            Term::Blank(self.blanks.named(n))
        } else if has_property_attrs && e.text().is_empty() {
            Term::Blank(self.blanks.fresh())
        } else {
            let datatype = match e.rdf_attr("datatype") {
                Some(dt) => Some(self.iri(e, &ctx.base, dt)?),
                None => None,
            };
            if has_property_attrs {
                return Err(self.error(e, "property attributes are not allowed on a literal property element"));
            }
            let lit = self.literal(e, e.text(), datatype, &ctx)?;
            self.graph.insert(Triple::new(subject.clone(), predicate, lit));
            return Ok(());
        };
        if let Some(s) = object.to_subject() {
            self.apply_property_attrs(e, &s, &ctx)?;
        }
        self.graph.insert(Triple::new(subject.clone(), predicate, object));
        Ok(())
    }
}

fn rdf_type() -> Iri {
    Iri::new(rdf::TYPE).unwrap()
}
