use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use parking_lot::{Condvar, Mutex};

use super::compact::is_valid_prefix_name;
use super::seed::{is_seed_prefix, seed_prefix_for};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LookupError {
    #[error("prefix lookup timed out")]
    Timeout,
    #[error("prefix lookup failed: {0}")]
    Failed(String),
}

/// Reverse lookup of a namespace IRI to a prefix name.
pub trait LookupClient: Send + Sync {
    /// `Ok(None)` means the service answered but knows no prefix.
    fn reverse_lookup(&self, namespace: &str) -> Result<Option<String>, LookupError>;
}

/// Never resolves anything; the offline default.
#[derive(Debug, Default, Clone, Copy)]
pub struct DisabledClient;

impl LookupClient for DisabledClient {
    fn reverse_lookup(&self, _namespace: &str) -> Result<Option<String>, LookupError> {
        Ok(None)
    }
}

/// Answers from a fixed namespace→prefix table.
#[derive(Debug, Default, Clone)]
pub struct FixtureClient {
    table: HashMap<String, String>,
}

impl FixtureClient {
    pub fn new<I, N, P>(entries: I) -> Self
    where
        I: IntoIterator<Item = (N, P)>,
        N: Into<String>,
        P: Into<String>,
    {
        FixtureClient { table: entries.into_iter().map(|(n, p)| (n.into(), p.into())).collect() }
    }

    /// Reads a JSON object mapping namespace IRIs to prefix names.
    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        let table: HashMap<String, String> = serde_json::from_str(json)?;
        Ok(FixtureClient { table })
    }
}

impl LookupClient for FixtureClient {
    fn reverse_lookup(&self, namespace: &str) -> Result<Option<String>, LookupError> {
        Ok(self.table.get(namespace).cloned())
    }
}

/// Time source, replaceable in tests.
pub trait Clock: Send + Sync {
    fn now(&self) -> Instant;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SystemClock;

impl Clock for SystemClock {
    fn now(&self) -> Instant {
        Instant::now()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheConfig {
    /// Lifetime of a successful lookup.
    pub positive_ttl: Duration,
    /// Lifetime of a miss or failure.
    pub negative_ttl: Duration,
}

impl Default for CacheConfig {
    fn default() -> Self {
        CacheConfig {
            positive_ttl: Duration::from_secs(24 * 60 * 60),
            negative_ttl: Duration::from_secs(60 * 60),
        }
    }
}

struct Entry {
    prefix: Option<String>,
    expires: Instant,
}

#[derive(Default)]
struct InFlight {
    result: Mutex<Option<Option<String>>>,
    done: Condvar,
}

impl InFlight {
    fn wait(&self) -> Option<String> {
        let mut slot = self.result.lock();
        while slot.is_none() {
            self.done.wait(&mut slot);
        }
        slot.clone().flatten()
    }

    fn complete(&self, value: Option<String>) {
        let mut slot = self.result.lock();
        if slot.is_none() {
            *slot = Some(value);
            self.done.notify_all();
        }
    }
}

#[derive(Default)]
struct State {
    cache: HashMap<String, Entry>,
    in_flight: HashMap<String, Arc<InFlight>>,
}

/// Seed list, lookup client and TTL cache behind one `resolve_prefix` call.
/// Safe to share between threads; concurrent requests for the same
/// namespace result in a single client call.
pub struct PrefixSource {
    client: Arc<dyn LookupClient>,
    clock: Arc<dyn Clock>,
    config: CacheConfig,
    state: Mutex<State>,
}

impl std::fmt::Debug for PrefixSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrefixSource").field("config", &self.config).finish_non_exhaustive()
    }
}

impl Default for PrefixSource {
    fn default() -> Self {
        PrefixSource::offline()
    }
}

impl PrefixSource {
    pub fn new(client: Arc<dyn LookupClient>, config: CacheConfig) -> Self {
        PrefixSource { client, clock: Arc::new(SystemClock), config, state: Mutex::new(State::default()) }
    }

    /// Seed list only.
    pub fn offline() -> Self {
        PrefixSource::new(Arc::new(DisabledClient), CacheConfig::default())
    }

    pub fn with_clock(mut self, clock: Arc<dyn Clock>) -> Self {
        self.clock = clock;
        self
    }

    /// Prefix for a namespace ending in `/` or `#`: the seed binding, a
    /// cached answer, or the lookup client's answer. Failures resolve to
    /// `None`.
    pub fn resolve_prefix(&self, namespace: &str) -> Option<String> {
        if let Some(p) = seed_prefix_for(namespace) {
            return Some(p.to_string());
        }
        if !(namespace.ends_with('/') || namespace.ends_with('#')) {
            return None;
        }
        self.cached_or_lookup(namespace)
    }

    /// Only the seed list and unexpired cache entries; never calls the
    /// client.
    pub fn resolve_prefix_cached(&self, namespace: &str) -> Option<String> {
        if let Some(p) = seed_prefix_for(namespace) {
            return Some(p.to_string());
        }
        let state = self.state.lock();
        match state.cache.get(namespace) {
            Some(e) if e.expires > self.clock.now() => e.prefix.clone(),
            _ => None,
        }
    }

    fn cached_or_lookup(&self, namespace: &str) -> Option<String> {
        let flight = {
            let mut state = self.state.lock();
            if let Some(e) = state.cache.get(namespace) {
                if e.expires > self.clock.now() {
                    return e.prefix.clone();
                }
            }
            if let Some(existing) = state.in_flight.get(namespace).cloned() {
                drop(state);
                return existing.wait();
            }
            let flight = Arc::new(InFlight::default());
            state.in_flight.insert(namespace.to_string(), flight.clone());
            flight
        };

        // Completes waiters even if the client panics.
        struct Guard<'a> {
            source: &'a PrefixSource,
            namespace: &'a str,
            flight: Arc<InFlight>,
        }
        impl Drop for Guard<'_> {
            fn drop(&mut self) {
                self.source.state.lock().in_flight.remove(self.namespace);
                self.flight.complete(None);
            }
        }
        let guard = Guard { source: self, namespace, flight };

        let answer = match self.client.reverse_lookup(namespace) {
            Ok(Some(p)) if is_valid_prefix_name(&p) && !p.is_empty() && !is_seed_prefix(&p) => Some(p),
            _ => None,
        };
        let ttl = if answer.is_some() { self.config.positive_ttl } else { self.config.negative_ttl };
        {
            let mut state = self.state.lock();
            state.cache.insert(
                namespace.to_string(),
                Entry { prefix: answer.clone(), expires: self.clock.now() + ttl },
            );
        }
        guard.flight.complete(answer.clone());
        drop(guard);
        answer
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    struct Counting {
        calls: AtomicUsize,
        answer: Option<&'static str>,
        delay: Duration,
    }

    impl LookupClient for Counting {
        fn reverse_lookup(&self, _ns: &str) -> Result<Option<String>, LookupError> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            std::thread::sleep(self.delay);
            Ok(self.answer.map(str::to_string))
        }
    }

    struct ManualClock(Mutex<Instant>);

    impl Clock for ManualClock {
        fn now(&self) -> Instant {
            *self.0.lock()
        }
    }

    fn counting(answer: Option<&'static str>) -> Arc<Counting> {
        Arc::new(Counting { calls: AtomicUsize::new(0), answer, delay: Duration::ZERO })
    }

    #[test]
    fn seed_hits_skip_client() {
        let client = counting(Some("zzz"));
        let source = PrefixSource::new(client.clone(), CacheConfig::default());
        assert_eq!(source.resolve_prefix("http://xmlns.com/foaf/0.1/").as_deref(), Some("foaf"));
        assert_eq!(source.resolve_prefix("http://www.w3.org/1999/02/22-rdf-syntax-ns#").as_deref(), Some("rdf"));
        assert_eq!(client.calls.load(Ordering::SeqCst), 0);
    }

    #[test]
    fn lookups_are_cached() {
        let client = counting(Some("unk"));
        let source = PrefixSource::new(client.clone(), CacheConfig::default());
        assert_eq!(source.resolve_prefix("http://unknown.example/ns#").as_deref(), Some("unk"));
        assert_eq!(source.resolve_prefix("http://unknown.example/ns#").as_deref(), Some("unk"));
        assert_eq!(client.calls.load(Ordering::SeqCst), 1);
    }

    #[test]
    fn entries_expire() {
        let start = Instant::now();
        let clock = Arc::new(ManualClock(Mutex::new(start)));
        let client = counting(None);
        let source = PrefixSource::new(client.clone(), CacheConfig::default()).with_clock(clock.clone());
        assert_eq!(source.resolve_prefix("http://n/#"), None);
        assert_eq!(source.resolve_prefix("http://n/#"), None);
        assert_eq!(client.calls.load(Ordering::SeqCst), 1);
        *clock.0.lock() = start + Duration::from_secs(3601);
        source.resolve_prefix("http://n/#");
        assert_eq!(client.calls.load(Ordering::SeqCst), 2);
    }

    #[test]
    fn seed_prefixes_are_not_shadowed() {
        let source = PrefixSource::new(counting(Some("foaf")), CacheConfig::default());
        assert_eq!(source.resolve_prefix("http://other.example/#"), None);
    }

    #[test]
    fn concurrent_lookups_are_deduplicated() {
        let client = Arc::new(Counting { calls: AtomicUsize::new(0), answer: Some("p"), delay: Duration::from_millis(100) });
        let source = Arc::new(PrefixSource::new(client.clone(), CacheConfig::default()));
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let s = source.clone();
                std::thread::spawn(move || s.resolve_prefix("http://slow.example/#"))
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap().as_deref(), Some("p"));
        }
        assert_eq!(client.calls.load(Ordering::SeqCst), 1);
    }

    #[test]
    fn fixture_client_from_json() {
        let c = FixtureClient::from_json(r#"{"http://a/#": "a"}"#).unwrap();
        assert_eq!(c.reverse_lookup("http://a/#").unwrap().as_deref(), Some("a"));
        assert_eq!(c.reverse_lookup("http://b/#").unwrap(), None);
    }
}
