//! HTTP transports: a live blocking client and a replay of recorded exchanges.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub url: String,
    pub headers: Vec<(String, String)>,
}

impl Request {
    pub fn get(url: &str) -> Self {
        Request { url: url.to_string(), headers: Vec::new() }
    }

    pub fn header(mut self, name: &str, value: &str) -> Self {
        self.headers.push((name.to_string(), value.to_string()));
        self
    }

    pub fn header_value(&self, name: &str) -> Option<&str> {
        self.headers.iter().find(|(k, _)| k.eq_ignore_ascii_case(name)).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub status: u16,
    pub headers: Vec<(String, String)>,
    pub body: Vec<u8>,
}

impl Response {
    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers.iter().find(|(k, _)| k.eq_ignore_ascii_case(name)).map(|(_, v)| v.as_str())
    }

    pub fn media_type(&self) -> Option<&str> {
        self.header("content-type")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    #[error("timeout")]
    Timeout,
    #[error("dns: {0}")]
    Dns(String),
    #[error("connect: {0}")]
    Connect(String),
    #[error("no recorded exchange for {0}")]
    NotRecorded(String),
    #[error("{0}")]
    Other(String),
}

pub trait Transport: Send + Sync {
    fn send(&self, req: &Request) -> Result<Response, TransportError>;
}

/// Blocking HTTP client that never follows redirects itself.
pub struct LiveTransport {
    client: reqwest::blocking::Client,
}

impl LiveTransport {
    pub fn new(timeout: Duration) -> Result<Self, TransportError> {
        let client = reqwest::blocking::Client::builder()
            .redirect(reqwest::redirect::Policy::none())
            .timeout(timeout)
            .user_agent(concat!("ontoaudit/", env!("CARGO_PKG_VERSION")))
            .build()
            .map_err(|e| TransportError::Other(e.to_string()))?;
        Ok(LiveTransport { client })
    }
}

impl Transport for LiveTransport {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        let mut builder = self.client.get(&req.url);
        for (k, v) in &req.headers {
            builder = builder.header(k, v);
        }
        let resp = builder.send().map_err(|e| {
            if e.is_timeout() {
                TransportError::Timeout
            } else if e.is_connect() {
                let msg = format!("{e:?}");
                if msg.contains("dns error") || msg.contains("failed to lookup") {
                    TransportError::Dns(e.to_string())
                } else {
                    TransportError::Connect(e.to_string())
                }
            } else {
                TransportError::Other(e.to_string())
            }
        })?;
        let status = resp.status().as_u16();
        let headers = resp
            .headers()
            .iter()
            .filter_map(|(k, v)| Some((k.as_str().to_string(), v.to_str().ok()?.to_string())))
            .collect();
        let body = resp.bytes().map_err(|e| if e.is_timeout() { TransportError::Timeout } else { TransportError::Other(e.to_string()) })?;
        Ok(Response { status, headers, body: body.to_vec() })
    }
}

/// One recorded request/response pair, stored as a JSON line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Exchange {
    #[serde(default = "get")]
    pub method: String,
    pub url: String,
    /// Accept header the exchange answers; absent matches any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accept: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<u16>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub headers: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
    /// Body stored in a separate file, relative to the replay directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body_file: Option<String>,
    /// Transport failure instead of a response: "timeout", "dns" or "connect".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latency_ms: Option<u64>,
}

fn get() -> String {
    "GET".to_string()
}

/// Request URL with any `apikey` query parameter removed.
pub fn replay_key_url(url: &str) -> String {
    match reqwest::Url::parse(url) {
        Ok(mut u) => {
            let pairs: Vec<(String, String)> = u.query_pairs().filter(|(k, _)| k != "apikey").map(|(k, v)| (k.into_owned(), v.into_owned())).collect();
            if pairs.is_empty() {
                u.set_query(None);
            } else {
                u.query_pairs_mut().clear().extend_pairs(pairs);
            }
            u.to_string()
        }
        Err(_) => url.to_string(),
    }
}

#[derive(Debug, Clone)]
pub struct RequestLog {
    pub url: String,
    pub host: String,
    pub started: Instant,
    pub finished: Instant,
}

/// Serves recorded exchanges. Repeated requests for the same key walk through
/// the recorded sequence; the last entry answers any further repeats.
pub struct ReplayTransport {
    dir: PathBuf,
    exchanges: HashMap<(String, Option<String>), Vec<Exchange>>,
    cursor: Mutex<HashMap<(String, Option<String>), usize>>,
    log: Mutex<Vec<RequestLog>>,
    count: usize,
}

impl ReplayTransport {
    pub fn from_dir(dir: &Path) -> std::io::Result<Self> {
        let mut files: Vec<PathBuf> = match fs::read_dir(dir) {
            Ok(rd) => rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "jsonl")).collect(),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e),
        };
        files.sort();
        let mut list = Vec::new();
        for f in files {
            let reader = BufReader::new(fs::File::open(&f)?);
            for (n, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let ex: Exchange = serde_json::from_str(&line).map_err(|e| {
                    std::io::Error::new(std::io::ErrorKind::InvalidData, format!("{}:{}: {e}", f.display(), n + 1))
                })?;
                list.push(ex);
            }
        }
        Ok(Self::from_exchanges(dir, list))
    }

    pub fn from_exchanges(dir: &Path, list: Vec<Exchange>) -> Self {
        let mut exchanges: HashMap<(String, Option<String>), Vec<Exchange>> = HashMap::new();
        let count = list.len();
        for ex in list {
            let key = (replay_key_url(&ex.url), ex.accept.clone());
            exchanges.entry(key).or_default().push(ex);
        }
        ReplayTransport { dir: dir.to_path_buf(), exchanges, cursor: Mutex::new(HashMap::new()), log: Mutex::new(Vec::new()), count }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn log(&self) -> Vec<RequestLog> {
        self.log.lock().expect("log lock").clone()
    }

    fn next(&self, url: &str, accept: Option<&str>) -> Option<Exchange> {
        let url = replay_key_url(url);
        let exact = (url.clone(), accept.map(str::to_string));
        let key = if self.exchanges.contains_key(&exact) { exact } else { (url, None) };
        let list = self.exchanges.get(&key)?;
        let mut cursor = self.cursor.lock().expect("cursor lock");
        let i = cursor.entry(key).or_insert(0);
        let ex = list[(*i).min(list.len() - 1)].clone();
        *i += 1;
        Some(ex)
    }
}

impl Transport for ReplayTransport {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        let started = Instant::now();
        let ex = self.next(&req.url, req.header_value("accept"));
        if let Some(ms) = ex.as_ref().and_then(|e| e.latency_ms) {
            std::thread::sleep(Duration::from_millis(ms));
        }
        self.log.lock().expect("log lock").push(RequestLog {
            url: req.url.clone(),
            host: super::host_of(&req.url),
            started,
            finished: Instant::now(),
        });
        let ex = ex.ok_or_else(|| TransportError::NotRecorded(replay_key_url(&req.url)))?;
        if let Some(err) = &ex.error {
            return Err(match err.as_str() {
                "timeout" => TransportError::Timeout,
                "dns" => TransportError::Dns(ex.url.clone()),
                "connect" => TransportError::Connect(ex.url.clone()),
                other => TransportError::Other(other.to_string()),
            });
        }
        let body = match (&ex.body, &ex.body_file) {
            (Some(b), _) => b.clone().into_bytes(),
            (None, Some(f)) => fs::read(self.dir.join(f)).map_err(|e| TransportError::Other(format!("{f}: {e}")))?,
            (None, None) => Vec::new(),
        };
        Ok(Response { status: ex.status.unwrap_or(200), headers: ex.headers.into_iter().collect(), body })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apikey_is_ignored_for_matching() {
        assert_eq!(replay_key_url("https://h.org/x?apikey=SECRET&a=1"), "https://h.org/x?a=1");
        assert_eq!(replay_key_url("https://h.org/x?apikey=SECRET"), "https://h.org/x");
    }

    #[test]
    fn sequences_and_accept_matching() {
        let ex = |status, accept: Option<&str>| Exchange {
            url: "http://h.org/a".into(),
            status: Some(status),
            accept: accept.map(str::to_string),
            ..Default::default()
        };
        let t = ReplayTransport::from_exchanges(Path::new("."), vec![ex(429, None), ex(200, None), ex(406, Some("text/turtle"))]);
        let r = Request::get("http://h.org/a?apikey=k");
        assert_eq!(t.send(&r).unwrap().status, 429);
        assert_eq!(t.send(&r).unwrap().status, 200);
        assert_eq!(t.send(&r).unwrap().status, 200);
        assert_eq!(t.send(&r.clone().header("Accept", "text/turtle")).unwrap().status, 406);
        assert!(matches!(t.send(&Request::get("http://h.org/b")), Err(TransportError::NotRecorded(_))));
    }
}
