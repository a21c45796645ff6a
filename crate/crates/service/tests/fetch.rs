mod common;

use common::{fixture, Stub, StubServer};
use rdfshift_core::{FormatId, SourceFormat};
use rdfshift_service::config::FetchConfig;
use rdfshift_service::fetch::{FetchError, Fetcher, USER_AGENT};

fn fetcher() -> Fetcher {
    Fetcher::new(FetchConfig { allow_private_addresses: true, ..FetchConfig::default() })
}

fn stub() -> StubServer {
    StubServer::start([
        ("/doc.n3", Stub::Body("text/n3", fixture("people.n3"))),
        ("/short", Stub::Redirect("/mid".into())),
        ("/mid", Stub::Redirect("/long".into())),
        ("/long", Stub::Body("text/plain", fixture("people.nt"))),
        ("/a", Stub::Redirect("/b".into())),
        ("/b", Stub::Redirect("/a".into())),
        ("/gone", Stub::Status(404)),
        ("/big", Stub::Body("text/plain", "x".repeat(4096))),
    ])
}

#[test]
fn accept_header_follows_source_format() {
    let server = stub();
    let f = fetcher();
    f.fetch_document(&server.url("/doc.n3"), SourceFormat::Format(FormatId::Xml)).unwrap();
    f.fetch_document(&server.url("/doc.n3"), SourceFormat::Detect).unwrap();
    let log = server.requests();
    assert!(log[0].accept.starts_with("application/rdf+xml"), "{}", log[0].accept);
    for format in FormatId::SOURCES {
        for t in format.accept_types() {
            assert!(log[1].accept.contains(t), "{t} missing from {}", log[1].accept);
        }
    }
    assert_eq!(log[0].user_agent, USER_AGENT);
}

#[test]
fn redirect_chain_followed() {
    let server = stub();
    let fetched = fetcher().fetch_document(&server.url("/short"), SourceFormat::Detect).unwrap();
    assert_eq!(fetched.final_uri, server.url("/long"));
    assert_eq!(fetched.media_type.as_deref(), Some("text/plain"));
    assert_eq!(String::from_utf8(fetched.content).unwrap(), fixture("people.nt"));
    let paths: Vec<String> = server.requests().into_iter().map(|r| r.path).collect();
    assert_eq!(paths, ["/short", "/mid", "/long"]);
}

#[test]
fn redirect_loop_terminates() {
    let server = stub();
    let err = fetcher().fetch_document(&server.url("/a"), SourceFormat::Detect).unwrap_err();
    assert_eq!(err, FetchError::TooManyRedirects);
    assert_eq!(server.requests().len(), 6, "initial request plus five redirects");
}

#[test]
fn upstream_status_and_size_cap() {
    let server = stub();
    assert_eq!(fetcher().fetch_document(&server.url("/gone"), SourceFormat::Detect).unwrap_err(), FetchError::HttpStatus(404));
    let small = Fetcher::new(FetchConfig { allow_private_addresses: true, max_bytes: 1024, ..FetchConfig::default() });
    assert_eq!(small.fetch_document(&server.url("/big"), SourceFormat::Detect).unwrap_err(), FetchError::TooLarge(1024));
}

#[test]
fn scheme_less_hosts_get_http() {
    let server = stub();
    let host = server.base.strip_prefix("http://").unwrap();
    let fetched = fetcher().fetch_document(&format!("{host}/doc.n3"), SourceFormat::Detect).unwrap();
    assert_eq!(fetched.final_uri, server.url("/doc.n3"));
}

#[test]
fn guard_blocks_local_servers_by_default() {
    let server = stub();
    let err = Fetcher::new(FetchConfig::default()).fetch_document(&server.url("/doc.n3"), SourceFormat::Detect).unwrap_err();
    assert!(matches!(err, FetchError::Forbidden(_)), "{err:?}");
    assert!(server.requests().is_empty());
}
