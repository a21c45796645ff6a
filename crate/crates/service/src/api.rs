//! The REST front end.
//!
//! | route                                       | meaning                          |
//! |---------------------------------------------|----------------------------------|
//! | `GET /convert/{source}/{target}/{uri}`      | fetch, convert, raw output       |
//! | `GET /convert/{source}/{target}/html/{uri}` | fetch, convert, highlighted page |
//! | `POST /convert/{source}/{target}/content`   | convert form field `content`     |
//! | `POST /convert/{source}/{target}/html/content` | same, highlighted             |
//! | `GET /`                                     | index page with bookmarklets     |
//! | `GET /bookmarklets`                         | bookmarklet matrix as JSON       |
//! | `GET /health`                               | liveness                         |
//!
//! Every response carries `Access-Control-Allow-Origin: *`.

use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::{Path, RawQuery, Request, State};
use axum::http::header::{HeaderValue, ACCESS_CONTROL_ALLOW_HEADERS, ACCESS_CONTROL_ALLOW_METHODS, ACCESS_CONTROL_ALLOW_ORIGIN, ALLOW, CONTENT_TYPE, LINK};
use axum::http::{Method, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use percent_encoding::percent_decode;
use rdfshift_core::prefixes::PrefixSource;
use rdfshift_core::{convert, media_type_for, Converted, Document, Error, FormatId, Render, SourceFormat};

use crate::config::ServiceConfig;
use crate::fetch::{FetchError, Fetcher};
use crate::links::{bookmarklet_matrix, build_share_links};
use crate::lookup::HttpLookupClient;

/// Shared, immutable service state; the prefix cache is the only interior
/// mutability.
pub struct AppState {
    pub config: ServiceConfig,
    pub fetcher: Fetcher,
    pub prefixes: PrefixSource,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> Self {
        let prefixes = if config.prefix_lookup.enabled {
            let client = HttpLookupClient::new(
                config.prefix_lookup.endpoint.clone(),
                Duration::from_millis(config.prefix_lookup.timeout_ms),
            );
            PrefixSource::new(Arc::new(client), config.prefix_lookup.cache())
        } else {
            PrefixSource::offline()
        };
        Self::with_prefixes(config, prefixes)
    }

    pub fn with_prefixes(config: ServiceConfig, prefixes: PrefixSource) -> Self {
        AppState { fetcher: Fetcher::new(config.fetch.clone()), config, prefixes }
    }

    /// Fetches `uri` and converts it. The response media type is only used
    /// when the source is `detect`.
    pub fn convert_remote(
        &self,
        source: SourceFormat,
        target: FormatId,
        render: Render,
        uri: &str,
    ) -> Result<Converted, ServiceError> {
        let fetched = self.fetcher.fetch_document(uri, source)?;
        let media_type = match source {
            SourceFormat::Detect => fetched.media_type.as_deref(),
            SourceFormat::Format(_) => None,
        };
        let doc = Document { content: &fetched.content, media_type, base: Some(&fetched.final_uri) };
        Ok(convert(source, target, render, &doc, &self.prefixes)?)
    }

    pub fn convert_inline(
        &self,
        source: SourceFormat,
        target: FormatId,
        render: Render,
        content: &str,
    ) -> Result<Converted, ServiceError> {
        let doc = Document { content: content.as_bytes(), media_type: None, base: Some(&self.config.default_base) };
        Ok(convert(source, target, render, &doc, &self.prefixes)?)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error(transparent)]
    Convert(#[from] Error),
    #[error("cannot retrieve the document: {0}")]
    Fetch(#[from] FetchError),
    #[error("{0}")]
    BadRequest(String),
}

impl ServiceError {
    pub fn status(&self) -> StatusCode {
        match self {
            ServiceError::Convert(Error::DetectionFailed(_)) => StatusCode::UNSUPPORTED_MEDIA_TYPE,
            ServiceError::Convert(e) if e.is_output_error() => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::Convert(_) | ServiceError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ServiceError::Fetch(FetchError::InvalidUri(_)) => StatusCode::BAD_REQUEST,
            ServiceError::Fetch(_) => StatusCode::BAD_GATEWAY,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let body = format!("Error: {self}\n");
        (self.status(), [(CONTENT_TYPE, "text/plain")], body).into_response()
    }
}

fn converted_response(out: Converted) -> Response {
    ([(CONTENT_TYPE, out.media_type)], out.body).into_response()
}

fn tokens(source: &str, target: &str) -> Result<(SourceFormat, FormatId), ServiceError> {
    let source: SourceFormat = source.parse()?;
    let target: FormatId = target.parse()?;
    Ok((source, target))
}

/// Splits the path remainder into render mode and payload.
fn split_render(rest: &str) -> (Render, &str) {
    match rest.strip_prefix("html/") {
        Some(payload) => (Render::Html, payload),
        None if rest == "html" => (Render::Html, ""),
        None => (Render::Raw, rest),
    }
}

async fn convert_get(
    State(state): State<Arc<AppState>>,
    Path((source, target, rest)): Path<(String, String, String)>,
    RawQuery(query): RawQuery,
) -> Result<Response, ServiceError> {
    let (source, target) = tokens(&source, &target)?;
    let (render, uri) = split_render(&rest);
    if uri == "content" {
        return Ok((StatusCode::METHOD_NOT_ALLOWED, [(ALLOW, "POST, OPTIONS")], "Error: inline content must be POSTed\n")
            .into_response());
    }
    if uri.is_empty() {
        return Err(ServiceError::BadRequest("no document URI given".into()));
    }
    // A query string the client did not percent-encode belongs to the URI.
    let uri = match query {
        Some(q) => format!("{uri}?{q}"),
        None => uri.to_string(),
    };
    let links = build_share_links(&state.config.public_base(), source, target, &uri);
    let worker = Arc::clone(&state);
    let out = tokio::task::spawn_blocking(move || worker.convert_remote(source, target, render, &uri))
        .await
        .map_err(|e| ServiceError::BadRequest(format!("conversion aborted: {e}")))??;
    let mut response = converted_response(out);
    let link = format!(
        "<{}>; rel=\"alternate\"; type=\"text/html\", <{}>; rel=\"alternate\"; type=\"{}\"",
        links.html,
        links.raw,
        media_type_for(target, Render::Raw)
    );
    if let Ok(v) = HeaderValue::from_str(&link) {
        response.headers_mut().insert(LINK, v);
    }
    Ok(response)
}

/// The raw bytes of form field `name` in an `application/x-www-form-urlencoded` body.
fn form_field(body: &[u8], name: &str) -> Option<Vec<u8>> {
    let decode = |part: &[u8]| -> Vec<u8> {
        let spaced: Vec<u8> = part.iter().map(|&b| if b == b'+' { b' ' } else { b }).collect();
        percent_decode(&spaced).collect()
    };
    body.split(|&b| b == b'&').find_map(|pair| {
        let (key, value) = match pair.iter().position(|&b| b == b'=') {
            Some(i) => (&pair[..i], &pair[i + 1..]),
            None => (pair, &pair[pair.len()..]),
        };
        (decode(key) == name.as_bytes()).then(|| decode(value))
    })
}

async fn convert_post(
    State(state): State<Arc<AppState>>,
    Path((source, target, rest)): Path<(String, String, String)>,
    body: Bytes,
) -> Result<Response, ServiceError> {
    let (source, target) = tokens(&source, &target)?;
    let (render, payload) = split_render(&rest);
    if payload != "content" {
        return Ok((StatusCode::METHOD_NOT_ALLOWED, [(ALLOW, "GET, OPTIONS")], "Error: only .../content accepts POST\n")
            .into_response());
    }
    let content = form_field(&body, "content")
        .ok_or_else(|| ServiceError::BadRequest("the form field `content` is missing".into()))?;
    let content = String::from_utf8(content)
        .map_err(|_| ServiceError::BadRequest("the form field `content` is not valid UTF-8".into()))?;
    let worker = Arc::clone(&state);
    let out = tokio::task::spawn_blocking(move || worker.convert_inline(source, target, render, &content))
        .await
        .map_err(|e| ServiceError::BadRequest(format!("conversion aborted: {e}")))??;
    Ok(converted_response(out))
}

async fn health() -> &'static str {
    "ok\n"
}

async fn bookmarklets(State(state): State<Arc<AppState>>) -> Response {
    Json(bookmarklet_matrix(&state.config.public_base())).into_response()
}

async fn index(State(state): State<Arc<AppState>>) -> Response {
    ([(CONTENT_TYPE, "text/html")], index_page(&state.config.public_base())).into_response()
}

async fn not_found() -> Response {
    (StatusCode::NOT_FOUND, [(CONTENT_TYPE, "text/plain")], "Error: no such route\n").into_response()
}

async fn cors(request: Request, next: Next) -> Response {
    let mut response = if request.method() == Method::OPTIONS {
        let mut r = StatusCode::NO_CONTENT.into_response();
        let h = r.headers_mut();
        h.insert(ACCESS_CONTROL_ALLOW_METHODS, HeaderValue::from_static("GET, POST, OPTIONS"));
        h.insert(ACCESS_CONTROL_ALLOW_HEADERS, HeaderValue::from_static("Content-Type"));
        r
    } else {
        next.run(request).await
    };
    response.headers_mut().insert(ACCESS_CONTROL_ALLOW_ORIGIN, HeaderValue::from_static("*"));
    response
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/", get(index))
        .route("/health", get(health))
        .route("/bookmarklets", get(bookmarklets))
        .route("/convert/{source}/{target}/{*rest}", get(convert_get).post(convert_post))
        .fallback(not_found)
        .with_state(state)
        .layer(middleware::from_fn(cors))
}

fn index_page(base: &str) -> String {
    use rdfshift_core::highlight::escape_html;
    let mut rows = String::new();
    let matrix = bookmarklet_matrix(base);
    rows.push_str("<tr><th></th>");
    for t in FormatId::TARGETS {
        rows.push_str(&format!("<th>{t}</th>"));
    }
    rows.push_str("</tr>\n");
    for chunk in matrix.chunks(FormatId::TARGETS.len()) {
        rows.push_str(&format!("<tr><th>{}</th>", chunk[0].source));
        for b in chunk {
            rows.push_str(&format!("<td><a href=\"{}\">{}</a></td>", escape_html(&b.code), b.target));
        }
        rows.push_str("</tr>\n");
    }
    let options = |list: &[&str]| list.iter().map(|t| format!("<option>{t}</option>")).collect::<String>();
    let sources: Vec<&str> = SourceFormat::ALL.iter().map(|s| s.token()).collect();
    let targets: Vec<&str> = FormatId::TARGETS.iter().map(|f| f.token()).collect();
    format!(
        r#"<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>rdfshift</title>
<style>
{css}table {{ border-collapse: collapse; }} td, th {{ border: 1px solid #ccc; padding: 2px 6px; }}
</style>
</head>
<body>
<h1>rdfshift</h1>
<form method="post" id="convert" onsubmit="this.action='/convert/'+this.source.value+'/'+this.target.value+'/html/content'">
<select name="source">{sources}</select> to <select name="target">{targets}</select>
<br><textarea name="content" rows="12" cols="80"></textarea>
<br><button type="submit">Convert</button>
</form>
<h2>Bookmarklets</h2>
<table>
{rows}</table>
</body>
</html>
"#,
        css = rdfshift_core::STYLESHEET,
        sources = options(&sources),
        targets = options(&targets),
    )
}
