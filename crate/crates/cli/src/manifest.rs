use std::time::Instant;

use serde::Serialize;

/// Provenance block embedded in every output.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: serde_json::Value,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub wall_time_s: f64,
}

impl RunManifest {
    pub fn new(command: &str, flags: serde_json::Value, seed: Option<u64>, started: Instant) -> Self {
        Self {
            command: command.to_string(),
            flags,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_s: started.elapsed().as_secs_f64(),
        }
    }
}

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub manifest: &'a RunManifest,
    pub result: &'a T,
}
