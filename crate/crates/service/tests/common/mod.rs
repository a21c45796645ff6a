#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::extract::{Request, State};
use axum::http::header::{ACCEPT, CONTENT_TYPE, LOCATION, USER_AGENT};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Router;
use rdfshift_core::prefixes::PrefixSource;
use rdfshift_service::api::{router, AppState};
use rdfshift_service::config::ServiceConfig;

#[derive(Clone)]
pub enum Stub {
    Body(&'static str, String),
    Redirect(String),
    Status(u16),
}

#[derive(Clone, Debug)]
pub struct Recorded {
    pub path: String,
    pub accept: String,
    pub user_agent: String,
}

#[derive(Clone, Default)]
struct StubState {
    routes: Arc<HashMap<String, Stub>>,
    log: Arc<Mutex<Vec<Recorded>>>,
}

/// A local HTTP server answering from a fixed route table and recording
/// every request.
pub struct StubServer {
    pub base: String,
    log: Arc<Mutex<Vec<Recorded>>>,
}

impl StubServer {
    pub fn start(routes: impl IntoIterator<Item = (&'static str, Stub)>) -> Self {
        let state = StubState {
            routes: Arc::new(routes.into_iter().map(|(k, v)| (k.to_string(), v)).collect()),
            log: Arc::default(),
        };
        let log = Arc::clone(&state.log);
        let app = Router::new().fallback(stub_handler).with_state(state);
        let base = spawn(app);
        StubServer { base, log }
    }

    pub fn url(&self, path: &str) -> String {
        format!("{}{path}", self.base)
    }

    pub fn requests(&self) -> Vec<Recorded> {
        self.log.lock().unwrap().clone()
    }
}

async fn stub_handler(State(state): State<StubState>, request: Request) -> Response {
    let header = |name| request.headers().get(name).and_then(|v: &axum::http::HeaderValue| v.to_str().ok()).unwrap_or("").to_string();
    let path = request.uri().path().to_string();
    state.log.lock().unwrap().push(Recorded { path: path.clone(), accept: header(ACCEPT), user_agent: header(USER_AGENT) });
    match state.routes.get(&path) {
        Some(Stub::Body(media_type, body)) => ([(CONTENT_TYPE, *media_type)], body.clone()).into_response(),
        Some(Stub::Redirect(to)) => (StatusCode::FOUND, [(LOCATION, to.clone())]).into_response(),
        Some(Stub::Status(code)) => StatusCode::from_u16(*code).unwrap().into_response(),
        None => StatusCode::NOT_FOUND.into_response(),
    }
}

/// Serves `app` on an ephemeral local port from a background runtime.
pub fn spawn(app: Router) -> String {
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let runtime = tokio::runtime::Builder::new_multi_thread().worker_threads(2).enable_all().build().unwrap();
        runtime.block_on(async move {
            let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
            tx.send(listener.local_addr().unwrap()).unwrap();
            axum::serve(listener, app).await.unwrap();
        });
    });
    format!("http://{}", rx.recv().unwrap())
}

/// Local test rigs need the address guard off.
pub fn test_config() -> ServiceConfig {
    let mut config = ServiceConfig::default();
    config.fetch.allow_private_addresses = true;
    config
}

pub fn start_service() -> String {
    start_service_with(test_config(), PrefixSource::offline())
}

pub fn start_service_with(config: ServiceConfig, prefixes: PrefixSource) -> String {
    spawn(router(Arc::new(AppState::with_prefixes(config, prefixes))))
}

pub struct Reply {
    pub status: u16,
    pub content_type: Option<String>,
    pub cors: Option<String>,
    pub headers: Vec<(String, String)>,
    pub body: String,
}

fn agent() -> ureq::Agent {
    ureq::Agent::config_builder().http_status_as_error(false).max_redirects(0).build().into()
}

fn reply(mut response: ureq::http::Response<ureq::Body>) -> Reply {
    let header = |n: &str| response.headers().get(n).and_then(|v| v.to_str().ok()).map(String::from);
    let content_type = header("content-type");
    let cors = header("access-control-allow-origin");
    let headers = response
        .headers()
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_str().unwrap_or("").to_string()))
        .collect();
    let status = response.status().as_u16();
    let body = response.body_mut().read_to_string().unwrap();
    Reply { status, content_type, cors, headers, body }
}

pub fn get(url: &str) -> Reply {
    reply(agent().get(url).call().unwrap())
}

pub fn options(url: &str) -> Reply {
    reply(agent().options(url).call().unwrap())
}

pub fn post_form(url: &str, fields: &[(&str, &str)]) -> Reply {
    reply(agent().post(url).send_form(fields.iter().copied()).unwrap())
}

pub fn post_raw(url: &str, body: &[u8]) -> Reply {
    reply(agent().post(url).header("Content-Type", "application/x-www-form-urlencoded").send(body).unwrap())
}

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}
