use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::concat::{derive_params, false_id_bound, identity_from_seed};
use crate::error::{Error, Result};
use crate::protocol::send;
use crate::rng;

#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub q: u64,
    pub k: u32,
    pub delta: u32,
    pub repetitions: u32,
    /// Median seconds for one full pipeline run.
    pub wall_time_one_tag: f64,
    pub log10_identities: f64,
    pub lambda2_bound: String,
    pub lambda2_bound_value: f64,
    /// The challenge produced by the last run.
    pub position: u128,
    pub tag: u64,
    pub timestamp_unix: u64,
    pub host: String,
}

/// Field and code construction, seeded identity, random position, tag.
fn pipeline(q: u64, k: u32, delta: u32, seed: u64) -> Result<(u128, u64)> {
    let params = derive_params(q, k, delta)?;
    let identity = identity_from_seed(&params, seed);
    let mut rng = rng::stream(seed, rng::SETUP_STREAM);
    let c = send(&params, &identity, &mut rng);
    Ok((c.j, c.t))
}

fn host() -> String {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!(
        "{}-{} {threads} threads",
        std::env::consts::OS,
        std::env::consts::ARCH
    )
}

/// Median wall time of `repetitions` pipeline runs after one untimed
/// warm-up run. Runs on the calling thread.
pub fn bench_tag(q: u64, k: u32, delta: u32, repetitions: u32, seed: u64) -> Result<BenchRecord> {
    if repetitions == 0 {
        return Err(Error::InvalidParams(
            "repetitions must be at least 1".into(),
        ));
    }
    let mut last = pipeline(q, k, delta, seed)?;
    let mut times = Vec::with_capacity(repetitions as usize);
    for _ in 0..repetitions {
        let start = Instant::now();
        last = std::hint::black_box(pipeline(q, k, delta, seed)?);
        times.push(start.elapsed().as_secs_f64());
    }
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    };
    let params = derive_params(q, k, delta)?;
    let bound = false_id_bound(&params);
    Ok(BenchRecord {
        q,
        k,
        delta,
        repetitions,
        wall_time_one_tag: median.max(f64::MIN_POSITIVE),
        log10_identities: params.identity_count().log10,
        lambda2_bound: bound.exact.to_string(),
        lambda2_bound_value: bound.value,
        position: last.0,
        tag: last.1,
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
        host: host(),
    })
}
