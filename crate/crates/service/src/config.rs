//! Service configuration: a TOML file, then `RDFSHIFT_*` environment
//! overrides.

use std::path::Path;
use std::time::Duration;

use rdfshift_core::prefixes::CacheConfig;
use rdfshift_core::DEFAULT_BASE;
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct ServiceConfig {
    pub bind: String,
    pub port: u16,
    /// Externally visible base URL used in share links and bookmarklets.
    /// Defaults to `http://<bind>:<port>`.
    pub public_base: Option<String>,
    /// Base IRI for inline content.
    pub default_base: String,
    pub fetch: FetchConfig,
    pub prefix_lookup: PrefixLookupConfig,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct FetchConfig {
    /// Total time budget for a fetch, redirects included.
    pub timeout_secs: u64,
    pub max_bytes: u64,
    pub max_redirects: u32,
    /// Permit loopback and link-local targets. Off by default.
    pub allow_private_addresses: bool,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct PrefixLookupConfig {
    pub enabled: bool,
    /// Reverse-lookup service; queried as `<endpoint>/reverse?uri=..&format=json`.
    pub endpoint: String,
    pub timeout_ms: u64,
    pub positive_ttl_secs: u64,
    pub negative_ttl_secs: u64,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            bind: "127.0.0.1".into(),
            port: 8080,
            public_base: None,
            default_base: DEFAULT_BASE.into(),
            fetch: FetchConfig::default(),
            prefix_lookup: PrefixLookupConfig::default(),
        }
    }
}

impl Default for FetchConfig {
    fn default() -> Self {
        FetchConfig { timeout_secs: 10, max_bytes: 5 * 1024 * 1024, max_redirects: 5, allow_private_addresses: false }
    }
}

impl Default for PrefixLookupConfig {
    fn default() -> Self {
        PrefixLookupConfig {
            enabled: false,
            endpoint: "http://prefix.cc".into(),
            timeout_ms: 2000,
            positive_ttl_secs: 24 * 3600,
            negative_ttl_secs: 3600,
        }
    }
}

impl FetchConfig {
    pub fn timeout(&self) -> Duration {
        Duration::from_secs(self.timeout_secs)
    }
}

impl PrefixLookupConfig {
    pub fn cache(&self) -> CacheConfig {
        CacheConfig {
            positive_ttl: Duration::from_secs(self.positive_ttl_secs),
            negative_ttl: Duration::from_secs(self.negative_ttl_secs),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("invalid configuration: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid value {value:?} for {name}")]
    Env { name: &'static str, value: String },
}

impl ServiceConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.display().to_string(), source })?;
        Self::from_toml(&text)
    }

    /// Applies `RDFSHIFT_BIND`, `RDFSHIFT_PORT`, `RDFSHIFT_PUBLIC_BASE`,
    /// `RDFSHIFT_DEFAULT_BASE`, `RDFSHIFT_ALLOW_PRIVATE_ADDRESSES` and
    /// `RDFSHIFT_PREFIX_LOOKUP` (an endpoint URL, or `off`).
    pub fn apply_env(mut self, var: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        if let Some(v) = var("RDFSHIFT_BIND") {
            self.bind = v;
        }
        if let Some(v) = var("RDFSHIFT_PORT") {
            self.port = v.parse().map_err(|_| ConfigError::Env { name: "RDFSHIFT_PORT", value: v })?;
        }
        if let Some(v) = var("RDFSHIFT_PUBLIC_BASE") {
            self.public_base = Some(v);
        }
        if let Some(v) = var("RDFSHIFT_DEFAULT_BASE") {
            self.default_base = v;
        }
        if let Some(v) = var("RDFSHIFT_ALLOW_PRIVATE_ADDRESSES") {
            self.fetch.allow_private_addresses = match v.as_str() {
                "1" | "true" | "yes" => true,
                "0" | "false" | "no" => false,
                _ => return Err(ConfigError::Env { name: "RDFSHIFT_ALLOW_PRIVATE_ADDRESSES", value: v }),
            };
        }
        if let Some(v) = var("RDFSHIFT_PREFIX_LOOKUP") {
            if v == "off" {
                self.prefix_lookup.enabled = false;
            } else {
                self.prefix_lookup.enabled = true;
                self.prefix_lookup.endpoint = v;
            }
        }
        Ok(self)
    }

    pub fn public_base(&self) -> String {
        match &self.public_base {
            Some(b) => b.trim_end_matches('/').to_string(),
            None => format!("http://{}:{}", self.bind, self.port),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_partial_files() {
        let c = ServiceConfig::from_toml("port = 9000\n[fetch]\nmax_redirects = 2\n").unwrap();
        assert_eq!(c.port, 9000);
        assert_eq!(c.fetch.max_redirects, 2);
        assert_eq!(c.fetch.max_bytes, 5 * 1024 * 1024);
        assert_eq!(c.default_base, DEFAULT_BASE);
        assert!(ServiceConfig::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn environment_overrides() {
        let env = |k: &str| match k {
            "RDFSHIFT_PORT" => Some("1234".to_string()),
            "RDFSHIFT_PREFIX_LOOKUP" => Some("http://lookup.test".to_string()),
            _ => None,
        };
        let c = ServiceConfig::default().apply_env(env).unwrap();
        assert_eq!(c.port, 1234);
        assert!(c.prefix_lookup.enabled);
        assert_eq!(c.public_base(), "http://127.0.0.1:1234");
        assert!(ServiceConfig::default().apply_env(|_| Some("x".into())).is_err());
    }
}
