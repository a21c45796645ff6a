//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test -p rdfshift-service --test acceptance`.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{fixture, get, post_form, start_service, Stub, StubServer};
use rand::seq::IndexedRandom;
use rand::Rng;
use rdfshift_core::model::{graph_isomorphic, Literal, ModelError};
use rdfshift_core::prefixes::{CacheConfig, FixtureClient, PrefixSource};
use rdfshift_core::testing::{random_graph_seeded, seeded};
use rdfshift_core::{
    convert, detect, highlight, is_lossy, media_type_for, parse, serialize, strip_highlight, DetectionMethod, Document,
    FormatId, Graph, Iri, Render, SourceFormat,
};
use rdfshift_service::config::FetchConfig;
use rdfshift_service::fetch::{FetchError, Fetcher};
use rdfshift_service::links::bookmarklet_matrix;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const EXAMPLE_N3: &str = "@prefix : <http://example.org/#> . :a :b :c .";
const EXAMPLE_NT: &str = "<http://example.org/#a> <http://example.org/#b> <http://example.org/#c> .";

fn post_example() -> Outcome {
    let service = start_service();
    let r = post_form(&format!("{service}/convert/n3/nt/content"), &[("content", EXAMPLE_N3)]);
    ensure!(r.status == 200, "status {}", r.status);
    ensure!(r.content_type.as_deref() == Some("text/plain"), "content type {:?}", r.content_type);
    let body = r.body.strip_suffix('\n').unwrap_or(&r.body);
    ensure!(body == EXAMPLE_NT, "body {:?}", r.body);
    Ok(())
}

fn media_type_contract() -> Outcome {
    let server = StubServer::start([("/doc.n3", Stub::Body("text/n3", fixture("people.n3")))]);
    let service = start_service();
    let doc = server.url("/doc.n3");
    for target in FormatId::TARGETS {
        let r = get(&format!("{service}/convert/n3/{target}/{doc}"));
        let expected = media_type_for(target, Render::Raw);
        ensure!(r.status == 200 && r.content_type.as_deref() == Some(expected), "{target}: {} {:?}", r.status, r.content_type);
    }
    for target in FormatId::TARGETS {
        let r = get(&format!("{service}/convert/n3/{target}/html/{doc}"));
        ensure!(r.content_type.as_deref() == Some("text/html"), "{target}/html: {:?}", r.content_type);
    }
    Ok(())
}

fn reparse(g: &Graph, format: FormatId) -> Result<Graph, String> {
    let out = serialize(g, format).map_err(|e| format!("{format}: {e}"))?;
    parse(format, &out, None).map_err(|e| format!("{format}: {e}"))
}

fn round_trips() -> Outcome {
    for seed in 0..200 {
        let g = random_graph_seeded(seed);
        for format in FormatId::TARGETS {
            let expected = if is_lossy(format) { g.erase_literal_annotations() } else { g.clone() };
            ensure!(graph_isomorphic(&reparse(&g, format)?, &expected), "seed {seed}, {format}");
        }
    }
    Ok(())
}

fn composition() -> Outcome {
    let lossless: Vec<FormatId> = FormatId::TARGETS.into_iter().filter(|f| !is_lossy(*f)).collect();
    let mut rng = seeded(42);
    for seed in 0..50 {
        let g = random_graph_seeded(10_000 + seed);
        for _ in 0..20 {
            let [f1, f2, f3] = [0; 3].map(|_| *lossless.choose(&mut rng).unwrap());
            let start = reparse(&g, f1)?;
            let chained = reparse(&reparse(&start, f2)?, f3)?;
            ensure!(graph_isomorphic(&chained, &reparse(&start, f3)?), "seed {seed}: {f1} -> {f2} -> {f3}");
        }
    }
    Ok(())
}

fn typed_language_literals() -> Outcome {
    let lit = Literal::lang("85579", "en").map_err(|e| e.to_string())?;
    let g: Graph = [rdfshift_core::Triple::new(Iri::new("http://e/a").unwrap(), Iri::new("http://e/p").unwrap(), lit)]
        .into_iter()
        .collect();
    for target in FormatId::TARGETS {
        let back = reparse(&g, target)?;
        for t in back.iter() {
            let l = t.object.as_literal().ok_or("object is not a literal")?;
            ensure!(!(l.language().is_some() && l.datatype().is_some()), "{target} produced a typed language literal");
        }
        let out = serialize(&g, target).unwrap();
        ensure!(!out.contains("@en^^"), "{target}: {out}");
    }
    let xsd_string = Iri::new("http://www.w3.org/2001/XMLSchema#string").unwrap();
    let rejected = Literal::new("85579", Some(xsd_string), Some("en".into()));
    ensure!(matches!(rejected, Err(ModelError::TypedLanguageLiteral { .. })), "model accepted \"85579\"@en^^xsd:string");
    Ok(())
}

fn cors_sweep() -> Outcome {
    let server = StubServer::start([
        ("/doc.n3", Stub::Body("text/n3", EXAMPLE_N3.into())),
        ("/blob", Stub::Body("application/octet-stream", "%%%".into())),
        ("/gone", Stub::Status(404)),
    ]);
    let service = start_service();
    let gets = [
        (format!("{service}/"), 200),
        (format!("{service}/health"), 200),
        (format!("{service}/convert/n3/nt/{}", server.url("/doc.n3")), 200),
        (format!("{service}/convert/n3/nt/html/{}", server.url("/doc.n3")), 200),
        (format!("{service}/convert/bogus/nt/{}", server.url("/doc.n3")), 400),
        (format!("{service}/convert/detect/nt/{}", server.url("/blob")), 415),
        (format!("{service}/convert/n3/nt/{}", server.url("/gone")), 502),
    ];
    for (url, status) in gets {
        let r = get(&url);
        ensure!(r.status == status, "{url}: status {}", r.status);
        ensure!(r.cors.as_deref() == Some("*"), "{url}: no CORS header");
    }
    for path in ["/convert/n3/nt/content", "/convert/n3/nt/html/content"] {
        let r = post_form(&format!("{service}{path}"), &[("content", EXAMPLE_N3)]);
        ensure!(r.cors.as_deref() == Some("*"), "POST {path}: no CORS header");
    }
    let r = post_form(&format!("{service}/convert/n3/nt/content"), &[("other", "")]);
    ensure!(r.status == 400 && r.cors.as_deref() == Some("*"), "POST without content");
    Ok(())
}

fn fetch_behaviour() -> Outcome {
    let server = StubServer::start([
        ("/doc.rdf", Stub::Body("application/rdf+xml", fixture("people.rdf"))),
        ("/short", Stub::Redirect("/mid".into())),
        ("/mid", Stub::Redirect("/doc.rdf".into())),
        ("/gone", Stub::Status(404)),
    ]);
    let fetcher = Fetcher::new(FetchConfig { allow_private_addresses: true, ..FetchConfig::default() });
    for format in FormatId::SOURCES {
        fetcher.fetch_document(&server.url("/doc.rdf"), SourceFormat::Format(format)).map_err(|e| e.to_string())?;
        let accept = server.requests().last().unwrap().accept.clone();
        ensure!(accept.starts_with(format.accept_types()[0]), "{format}: Accept {accept}");
    }
    let fetched = fetcher.fetch_document(&server.url("/short"), SourceFormat::Detect).map_err(|e| e.to_string())?;
    ensure!(fetched.final_uri == server.url("/doc.rdf"), "final URI {}", fetched.final_uri);
    let host = server.base.strip_prefix("http://").unwrap();
    let fetched = fetcher.fetch_document(&format!("{host}/doc.rdf"), SourceFormat::Detect).map_err(|e| e.to_string())?;
    ensure!(fetched.final_uri.starts_with("http://"), "scheme-less host not prefixed");
    ensure!(
        fetcher.fetch_document(&server.url("/gone"), SourceFormat::Detect) == Err(FetchError::HttpStatus(404)),
        "404 not reported"
    );
    let service = start_service();
    let r = get(&format!("{service}/convert/xml/n3/{}", server.url("/gone")));
    ensure!(r.status == 502, "404 upstream gave {}", r.status);
    Ok(())
}

fn detection() -> Outcome {
    let golden = [
        ("people.nt", FormatId::Nt),
        ("people.n3", FormatId::N3),
        ("people.rdf", FormatId::Xml),
        ("people.rj", FormatId::RdfJson),
        ("people.jsonld", FormatId::JsonLd),
        ("people-rdfa.html", FormatId::Rdfa),
        ("people-rdfa.xhtml", FormatId::Rdfa),
        ("people-microdata.html", FormatId::Microdata),
    ];
    for (name, format) in golden {
        let content = fixture(name);
        let d = detect(None, &content).map_err(|e| format!("{name}: {e}"))?;
        ensure!(d.format == format, "{name}: sniffed {}", d.format);
        let d = detect(Some(media_type_for(format, Render::Raw)), &content).map_err(|e| format!("{name}: {e}"))?;
        ensure!(d.format == format && d.method != DetectionMethod::Sniffed, "{name}: media type ignored");
    }
    Ok(())
}

fn prefix_fallback() -> Outcome {
    let doc = Document::inline("<http://e/a> <http://vocab.example/terms#size> \"3\" .");
    let nt = SourceFormat::Format(FormatId::Nt);
    let client = FixtureClient::new([("http://vocab.example/terms#", "vt")]);
    let online = PrefixSource::new(Arc::new(client), CacheConfig::default());
    let out = convert(nt, FormatId::N3, Render::Raw, &doc, &online).map_err(|e| e.to_string())?;
    ensure!(out.body.contains("@prefix vt: <http://vocab.example/terms#>") && out.body.contains("vt:size"), "{}", out.body);
    let out = convert(nt, FormatId::N3, Render::Raw, &doc, &PrefixSource::offline()).map_err(|e| e.to_string())?;
    ensure!(out.body.contains("<http://vocab.example/terms#size>") && !out.body.contains("@prefix"), "{}", out.body);
    Ok(())
}

fn highlight_preservation() -> Outcome {
    let mut rng = seeded(3);
    let lexers = [FormatId::N3, FormatId::Xml, FormatId::Rdfa, FormatId::JsonLd];
    for format in lexers {
        for _ in 0..100 {
            let len = rng.random_range(0..80);
            let text: String = (0..len)
                .map(|_| match rng.random_range(0..20) {
                    0 => '\n',
                    1 => *['\t', 'é', '日', '😀'].choose(&mut rng).unwrap(),
                    _ => char::from(rng.random_range(0x20u8..0x7f)),
                })
                .collect();
            ensure!(strip_highlight(&highlight(&text, format)) == text, "{format}: {text:?}");
        }
    }
    Ok(())
}

fn bookmarklets() -> Outcome {
    let matrix = bookmarklet_matrix("http://rdf-translator.appspot.com");
    ensure!(matrix.len() == 72, "{} entries", matrix.len());
    let entry = matrix.iter().find(|b| b.source == "rdfa" && b.target == "n3").ok_or("no (rdfa, n3) entry")?;
    ensure!(
        entry.code
            == "javascript:location.href='http://rdf-translator.appspot.com/convert/rdfa/n3/html/'+encodeURIComponent(location.href);",
        "{}",
        entry.code
    );
    Ok(())
}

fn cli_http_differential() -> Outcome {
    let service = start_service();
    let mut rng = seeded(11);
    for case in 0..20 {
        let g = random_graph_seeded(20_000 + case);
        let source = *FormatId::SOURCES.choose(&mut rng).unwrap();
        let target = *FormatId::TARGETS.choose(&mut rng).unwrap();
        let content = serialize(&g, source).map_err(|e| e.to_string())?;
        let http = post_form(&format!("{service}/convert/{source}/{target}/content"), &[("content", &content)]);
        let mut child = Command::new(env!("CARGO_BIN_EXE_rdfshift"))
            .args(["--from", source.token(), "--to", target.token(), "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| e.to_string())?;
        child.stdin.take().unwrap().write_all(content.as_bytes()).map_err(|e| e.to_string())?;
        let output = child.wait_with_output().map_err(|e| e.to_string())?;
        ensure!(output.status.success() && http.status == 200, "case {case} ({source} -> {target}) failed");
        ensure!(output.stdout == http.body.as_bytes(), "case {case} ({source} -> {target}): outputs differ");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("POST example converts N3 to N-Triples bit-exactly", post_example, Duration::from_secs(1)),
        ("raw and /html responses carry the contracted media types", media_type_contract, Duration::from_secs(5)),
        ("200 random graphs round-trip through every format", round_trips, Duration::from_secs(60)),
        ("format chains compose", composition, Duration::from_secs(60)),
        ("typed language literals are never produced or accepted", typed_language_literals, Duration::from_secs(5)),
        ("every route and error response allows any origin", cors_sweep, Duration::from_secs(10)),
        ("fetching negotiates, redirects, defaults the scheme and maps 404 to 502", fetch_behaviour, Duration::from_secs(10)),
        ("golden documents are detected with and without media types", detection, Duration::from_secs(5)),
        ("prefix lookup adds prefixes and falls back to full IRIs", prefix_fallback, Duration::from_secs(5)),
        ("highlighting preserves text for every lexer", highlight_preservation, Duration::from_secs(10)),
        ("bookmarklet matrix has 72 entries in the documented shape", bookmarklets, Duration::from_secs(1)),
        ("CLI output equals the HTTP raw body", cli_http_differential, Duration::from_secs(30)),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = started.elapsed();
        let result = result.and_then(|()| {
            if elapsed > budget {
                Err(format!("took {elapsed:?}, budget {budget:?}"))
            } else {
                Ok(())
            }
        });
        match result {
            Ok(()) => println!("PASS  {name} ({} ms)", elapsed.as_millis()),
            Err(e) => {
                failures += 1;
                println!("FAIL  {name}: {e}");
            }
        }
    }
    println!("{} of {} criteria passed", 12 - failures, 12);
    if failures > 0 {
        std::process::exit(1);
    }
}
