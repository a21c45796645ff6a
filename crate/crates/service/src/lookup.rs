//! Reverse namespace lookup over HTTP (prefix.cc protocol).

use std::time::Duration;

use rdfshift_core::prefixes::{LookupClient, LookupError};
use ureq::Agent;

use crate::fetch::USER_AGENT;

/// Queries `<endpoint>/reverse?uri=<namespace>&format=json`, which answers
/// with `{"prefix": "namespace"}` or 404.
pub struct HttpLookupClient {
    agent: Agent,
    endpoint: String,
}

impl HttpLookupClient {
    pub fn new(endpoint: impl Into<String>, timeout: Duration) -> Self {
        let agent = Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .user_agent(USER_AGENT)
            .build()
            .into();
        HttpLookupClient { agent, endpoint: endpoint.into().trim_end_matches('/').to_string() }
    }
}

impl LookupClient for HttpLookupClient {
    fn reverse_lookup(&self, namespace: &str) -> Result<Option<String>, LookupError> {
        let url = format!("{}/reverse", self.endpoint);
        let mut response = self
            .agent
            .get(&url)
            .query("uri", namespace)
            .query("format", "json")
            .call()
            .map_err(|e| match e {
                ureq::Error::Timeout(_) => LookupError::Timeout,
                e => LookupError::Failed(e.to_string()),
            })?;
        match response.status().as_u16() {
            200 => {}
            404 => return Ok(None),
            s => return Err(LookupError::Failed(format!("HTTP status {s}"))),
        }
        let body = response
            .body_mut()
            .with_config()
            .limit(64 * 1024)
            .read_to_string()
            .map_err(|e| LookupError::Failed(e.to_string()))?;
        let map: serde_json::Map<String, serde_json::Value> =
            serde_json::from_str(&body).map_err(|e| LookupError::Failed(e.to_string()))?;
        Ok(map.into_iter().find(|(_, v)| v.as_str() == Some(namespace)).map(|(k, _)| k))
    }
}
