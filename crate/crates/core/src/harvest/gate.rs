//! Per-host concurrency limit and minimum spacing between request starts.

use std::collections::HashMap;
use std::sync::{Condvar, Mutex};
use std::time::{Duration, Instant};

#[derive(Default)]
struct HostState {
    active: usize,
    last_start: Option<Instant>,
}

pub struct HostGate {
    limit: usize,
    delay: Duration,
    state: Mutex<HashMap<String, HostState>>,
    freed: Condvar,
}

pub struct Permit<'a> {
    gate: &'a HostGate,
    host: String,
}

impl HostGate {
    pub fn new(limit: usize, delay: Duration) -> Self {
        HostGate { limit: limit.max(1), delay, state: Mutex::new(HashMap::new()), freed: Condvar::new() }
    }

    pub fn acquire(&self, host: &str) -> Permit<'_> {
        let mut state = self.state.lock().expect("gate lock");
        loop {
            let entry = state.entry(host.to_string()).or_default();
            if entry.active < self.limit {
                let now = Instant::now();
                let ready = entry.last_start.map_or(now, |t| t + self.delay);
                if ready <= now {
                    entry.active += 1;
                    entry.last_start = Some(now);
                    return Permit { gate: self, host: host.to_string() };
                }
                let (s, _) = self.freed.wait_timeout(state, ready - now).expect("gate lock");
                state = s;
            } else {
                state = self.freed.wait(state).expect("gate lock");
            }
        }
    }
}

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        let mut state = self.gate.state.lock().expect("gate lock");
        if let Some(e) = state.get_mut(&self.host) {
            e.active -= 1;
        }
        self.gate.freed.notify_all();
    }
}
