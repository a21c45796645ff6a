//! Retrieval of remote input documents: scheme defaulting, content
//! negotiation, manual redirect following, a total time budget, a size cap
//! and a guard against loopback and link-local targets.

use std::net::{IpAddr, ToSocketAddrs};
use std::time::Instant;

use rdfshift_core::SourceFormat;
use ureq::Agent;
use url::Url;

use crate::config::FetchConfig;

pub const USER_AGENT: &str = concat!("rdfshift/", env!("CARGO_PKG_VERSION"));

/// Media types sent for `detect`, most preferred first.
const DETECT_ACCEPT: [&str; 10] = [
    "application/rdf+xml",
    "text/turtle",
    "text/n3",
    "application/x-turtle",
    "application/ld+json",
    "application/json",
    "application/n-triples",
    "text/plain",
    "text/html",
    "application/xhtml+xml",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FetchError {
    #[error("invalid URI {0:?}")]
    InvalidUri(String),
    #[error("refusing to fetch from {0}: loopback and link-local addresses are not allowed")]
    Forbidden(String),
    #[error("network error: {0}")]
    Network(String),
    #[error("the remote server did not respond in time")]
    Timeout,
    #[error("too many redirects")]
    TooManyRedirects,
    #[error("the remote document exceeds {0} bytes")]
    TooLarge(u64),
    #[error("the remote server answered with HTTP status {0}")]
    HttpStatus(u16),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fetched {
    pub content: Vec<u8>,
    /// The response `Content-Type`, parameters included.
    pub media_type: Option<String>,
    /// The URI after redirects; the base for relative references.
    pub final_uri: String,
}

/// `www.example.com` becomes `http://www.example.com`; only `http` and
/// `https` are accepted.
pub fn normalize_uri(input: &str) -> Result<Url, FetchError> {
    let input = input.trim();
    if input.is_empty() {
        return Err(FetchError::InvalidUri(input.to_string()));
    }
    let full = if input.contains("://") { input.to_string() } else { format!("http://{input}") };
    let url = Url::parse(&full).map_err(|_| FetchError::InvalidUri(input.to_string()))?;
    if !matches!(url.scheme(), "http" | "https") || url.host_str().is_none() {
        return Err(FetchError::InvalidUri(input.to_string()));
    }
    Ok(url)
}

/// The `Accept` header for a source: its media types in order of
/// preference, then anything at low priority.
pub fn accept_header(source: SourceFormat) -> String {
    let types: &[&str] = match source {
        SourceFormat::Format(f) => f.accept_types(),
        SourceFormat::Detect => &DETECT_ACCEPT,
    };
    let mut parts: Vec<String> = types
        .iter()
        .enumerate()
        .map(|(i, t)| if i == 0 { t.to_string() } else { format!("{t};q={:.1}", (10 - i.min(8)) as f32 / 10.0) })
        .collect();
    parts.push("*/*;q=0.1".into());
    parts.join(", ")
}

fn is_forbidden(ip: IpAddr) -> bool {
    match ip {
        IpAddr::V4(v4) => v4.is_loopback() || v4.is_link_local() || v4.is_unspecified(),
        IpAddr::V6(v6) => {
            if let Some(v4) = v6.to_ipv4_mapped() {
                return is_forbidden(IpAddr::V4(v4));
            }
            v6.is_loopback() || v6.is_unspecified() || (v6.segments()[0] & 0xffc0) == 0xfe80
        }
    }
}

/// Blocking HTTP client for input documents. Cheap to share between
/// threads.
#[derive(Clone)]
pub struct Fetcher {
    agent: Agent,
    config: FetchConfig,
}

impl std::fmt::Debug for Fetcher {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fetcher").field("config", &self.config).finish_non_exhaustive()
    }
}

impl Fetcher {
    pub fn new(config: FetchConfig) -> Self {
        let agent = Agent::config_builder()
            .max_redirects(0)
            .http_status_as_error(false)
            .user_agent(USER_AGENT)
            .build()
            .into();
        Fetcher { agent, config }
    }

    pub fn config(&self) -> &FetchConfig {
        &self.config
    }

    fn check_host(&self, url: &Url) -> Result<(), FetchError> {
        if self.config.allow_private_addresses {
            return Ok(());
        }
        let host = url.host_str().unwrap_or_default();
        let port = url.port_or_known_default().unwrap_or(80);
        let bare = host.trim_start_matches('[').trim_end_matches(']');
        let addresses: Vec<IpAddr> = match bare.parse::<IpAddr>() {
            Ok(ip) => vec![ip],
            Err(_) => (bare, port)
                .to_socket_addrs()
                .map_err(|e| FetchError::Network(format!("cannot resolve {host}: {e}")))?
                .map(|a| a.ip())
                .collect(),
        };
        if addresses.into_iter().any(is_forbidden) {
            return Err(FetchError::Forbidden(host.to_string()));
        }
        Ok(())
    }

    pub fn fetch_document(&self, uri: &str, source: SourceFormat) -> Result<Fetched, FetchError> {
        let mut url = normalize_uri(uri)?;
        let accept = accept_header(source);
        let deadline = Instant::now() + self.config.timeout();
        let mut redirects = 0;
        loop {
            self.check_host(&url)?;
            let remaining = deadline.checked_duration_since(Instant::now()).ok_or(FetchError::Timeout)?;
            let mut response = self
                .agent
                .get(url.as_str())
                .header("Accept", &accept)
                .config()
                .timeout_global(Some(remaining))
                .build()
                .call()
                .map_err(map_error)?;
            let status = response.status().as_u16();
            if matches!(status, 301 | 302 | 303 | 307 | 308) {
                let location = response
                    .headers()
                    .get("location")
                    .and_then(|v| v.to_str().ok())
                    .ok_or(FetchError::HttpStatus(status))?;
                redirects += 1;
                if redirects > self.config.max_redirects {
                    return Err(FetchError::TooManyRedirects);
                }
                url = url.join(location).map_err(|_| FetchError::InvalidUri(location.to_string()))?;
                if !matches!(url.scheme(), "http" | "https") {
                    return Err(FetchError::InvalidUri(url.to_string()));
                }
                continue;
            }
            if !(200..300).contains(&status) {
                return Err(FetchError::HttpStatus(status));
            }
            let cap = self.config.max_bytes;
            let declared = response
                .headers()
                .get("content-length")
                .and_then(|v| v.to_str().ok())
                .and_then(|v| v.parse::<u64>().ok());
            if declared.is_some_and(|n| n > cap) {
                return Err(FetchError::TooLarge(cap));
            }
            let media_type = response.headers().get("content-type").and_then(|v| v.to_str().ok()).map(String::from);
            let content = response.body_mut().with_config().limit(cap).read_to_vec().map_err(|e| match e {
                ureq::Error::BodyExceedsLimit(_) => FetchError::TooLarge(cap),
                e => map_error(e),
            })?;
            return Ok(Fetched { content, media_type, final_uri: url.to_string() });
        }
    }
}

fn map_error(e: ureq::Error) -> FetchError {
    match e {
        ureq::Error::Timeout(_) => FetchError::Timeout,
        ureq::Error::Io(io) if io.kind() == std::io::ErrorKind::TimedOut => FetchError::Timeout,
        ureq::Error::StatusCode(code) => FetchError::HttpStatus(code),
        ureq::Error::TooManyRedirects => FetchError::TooManyRedirects,
        ureq::Error::BadUri(u) => FetchError::InvalidUri(u),
        e => FetchError::Network(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rdfshift_core::FormatId;

    #[test]
    fn scheme_defaulting() {
        assert_eq!(normalize_uri("www.example.com").unwrap().as_str(), "http://www.example.com/");
        assert_eq!(normalize_uri("https://e.org/x").unwrap().as_str(), "https://e.org/x");
        assert!(normalize_uri("").is_err());
        assert!(normalize_uri("ftp://e.org/").is_err());
    }

    #[test]
    fn accept_headers() {
        assert!(accept_header(SourceFormat::Format(FormatId::Xml)).starts_with("application/rdf+xml,"));
        let detect = accept_header(SourceFormat::Detect);
        for f in FormatId::SOURCES {
            for t in f.accept_types() {
                assert!(detect.contains(t), "{t}");
            }
        }
    }

    #[test]
    fn private_targets_refused() {
        let f = Fetcher::new(FetchConfig::default());
        for uri in ["http://127.0.0.1:9/", "http://[::1]/", "http://169.254.169.254/latest", "localhost:9"] {
            assert!(matches!(f.fetch_document(uri, SourceFormat::Detect), Err(FetchError::Forbidden(_))), "{uri}");
        }
    }
}
