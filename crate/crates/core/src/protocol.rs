//! Identification over a noiseless channel and Monte Carlo estimates of
//! false identification.
//!
//! The sender draws a position `j` uniformly from `[0, n_c)` and transmits
//! `(j, T_i(j))`. A verifier holding `i'` accepts iff `T_i'(j)` matches.
//!
//! Experiments split their trials into blocks of [`TRIAL_BLOCK`]. Block `b`
//! draws from ChaCha stream `FIRST_TRIAL_STREAM + b` of the root seed, and
//! the report sums the per-block counts, so results do not depend on how
//! blocks are scheduled across threads.

use rand_core::RngCore;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::concat::{
    draw_identity, false_id_bound, per_position_agreement, tag_value, ConcatParams, Identity,
    ParamsSummary,
};
use crate::error::{Error, Result};
use crate::rng;

pub const TRIAL_BLOCK: u64 = 256;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// A randomness-tag pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Challenge {
    pub j: u128,
    pub t: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifierDecision {
    pub accepted: bool,
    pub challenge: Challenge,
    /// SHA-256 over the verifier identity's residues, little-endian u64 each.
    pub verifier_identity_digest: String,
}

pub fn send<R: RngCore + ?Sized>(
    params: &ConcatParams,
    identity: &Identity,
    rng: &mut R,
) -> Challenge {
    let j = rng::below_u128(rng, params.blocklength());
    send_with_randomness(params, identity, j).expect("position drawn below blocklength")
}

pub fn send_with_randomness(
    params: &ConcatParams,
    identity: &Identity,
    j: u128,
) -> Result<Challenge> {
    Ok(Challenge {
        j,
        t: tag_value(params, identity, j)?,
    })
}

pub fn verify(
    params: &ConcatParams,
    identity: &Identity,
    challenge: &Challenge,
) -> Result<VerifierDecision> {
    if challenge.j >= params.blocklength() {
        return Err(Error::MalformedChallenge(format!(
            "position {} outside [0, {})",
            challenge.j,
            params.blocklength()
        )));
    }
    if challenge.t >= params.q() {
        return Err(Error::MalformedChallenge(format!(
            "tag {} outside GF({})",
            challenge.t,
            params.q()
        )));
    }
    Ok(VerifierDecision {
        accepted: tag_value(params, identity, challenge.j)? == challenge.t,
        challenge: *challenge,
        verifier_identity_digest: identity_digest(identity),
    })
}

pub fn identity_digest(identity: &Identity) -> String {
    let mut h = Sha256::new();
    for r in identity.message().residues() {
        h.update(r.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentMode {
    /// One sender identity and one position, many verifier identities.
    FixedRandomness,
    /// Sender, verifier and position redrawn every trial.
    RandomRandomness,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaExperimentReport {
    pub params: ParamsSummary,
    pub mode: ExperimentMode,
    pub seed: u64,
    pub trials: u64,
    pub false_accepts: u64,
    pub ratio: f64,
    pub wilson95: [f64; 2],
    /// Worst-case bound `1 - d_c / n_c` as an exact fraction.
    pub bound: String,
    pub bound_value: f64,
    /// Exact probability that a random other identity agrees at one position.
    pub per_position_agreement: f64,
    /// The position used throughout, for fixed-randomness runs.
    pub fixed_position: Option<u128>,
}

impl FaExperimentReport {
    pub const CSV_HEADER: [&'static str; 11] = [
        "q",
        "k",
        "delta",
        "mode",
        "seed",
        "trials",
        "false_accepts",
        "ratio",
        "wilson_low",
        "wilson_high",
        "bound",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        let mode = match self.mode {
            ExperimentMode::FixedRandomness => "fixed-randomness",
            ExperimentMode::RandomRandomness => "random-randomness",
        };
        vec![
            self.params.q.to_string(),
            self.params.k.to_string(),
            self.params.delta.to_string(),
            mode.to_string(),
            self.seed.to_string(),
            self.trials.to_string(),
            self.false_accepts.to_string(),
            format!("{:.6}", self.ratio),
            format!("{:.6}", self.wilson95[0]),
            format!("{:.6}", self.wilson95[1]),
            format!("{:.6}", self.bound_value),
        ]
    }
}

/// Writes reports as CSV rows, preceded by [`FaExperimentReport::CSV_HEADER`]
/// when `header` is set.
pub fn write_report_csv<W: std::io::Write>(
    reports: &[FaExperimentReport],
    header: bool,
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if header {
        w.write_record(FaExperimentReport::CSV_HEADER)?;
    }
    for r in reports {
        w.write_record(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

/// Wilson score interval for `hits` successes in `n` trials.
pub fn wilson_interval(hits: u64, n: u64, z: f64) -> [f64; 2] {
    let n = n as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    [(centre - half).max(0.0), (centre + half).min(1.0)]
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    Ok(())
}

/// Runs `trials` Bernoulli trials split into blocks; `trial` gets the
/// block's generator and returns whether a false accept happened.
fn count_accepts<F>(seed: u64, trials: u64, trial: F) -> u64
where
    F: Fn(&mut rand_chacha::ChaCha20Rng) -> bool + Sync,
{
    let blocks = trials.div_ceil(TRIAL_BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = rng::stream(seed, rng::FIRST_TRIAL_STREAM + b);
            let len = TRIAL_BLOCK.min(trials - b * TRIAL_BLOCK);
            (0..len).filter(|_| trial(&mut rng)).count() as u64
        })
        .sum()
}

fn draw_other<R: RngCore + ?Sized>(
    params: &ConcatParams,
    avoid: &Identity,
    rng: &mut R,
) -> Identity {
    loop {
        let id = draw_identity(params, rng);
        if &id != avoid {
            return id;
        }
    }
}

fn report(
    params: &ConcatParams,
    mode: ExperimentMode,
    seed: u64,
    trials: u64,
    false_accepts: u64,
    fixed_position: Option<u128>,
) -> FaExperimentReport {
    let bound = false_id_bound(params);
    FaExperimentReport {
        params: params.summary(),
        mode,
        seed,
        trials,
        false_accepts,
        ratio: false_accepts as f64 / trials as f64,
        wilson95: wilson_interval(false_accepts, trials, Z95),
        bound: bound.exact.to_string(),
        bound_value: bound.value,
        per_position_agreement: per_position_agreement(params),
        fixed_position,
    }
}

/// Fixes one sender identity and one position, then counts how many of
/// `trials` fresh verifier identities (never equal to the sender) accept.
pub fn run_fixed_randomness_experiment(
    params: &ConcatParams,
    trials: u64,
    seed: u64,
) -> Result<FaExperimentReport> {
    check_trials(trials)?;
    let mut setup = rng::stream(seed, rng::SETUP_STREAM);
    let sender = draw_identity(params, &mut setup);
    let challenge = send(params, &sender, &mut setup);
    let accepts = count_accepts(seed, trials, |rng| {
        let other = draw_other(params, &sender, rng);
        tag_value(params, &other, challenge.j).expect("valid position") == challenge.t
    });
    Ok(report(
        params,
        ExperimentMode::FixedRandomness,
        seed,
        trials,
        accepts,
        Some(challenge.j),
    ))
}

/// Every trial draws a sender, a distinct verifier and a position.
pub fn run_average_fa_experiment(
    params: &ConcatParams,
    trials: u64,
    seed: u64,
) -> Result<FaExperimentReport> {
    check_trials(trials)?;
    let accepts = count_accepts(seed, trials, |rng| {
        let sender = draw_identity(params, rng);
        let other = draw_other(params, &sender, rng);
        let challenge = send(params, &sender, rng);
        tag_value(params, &other, challenge.j).expect("valid position") == challenge.t
    });
    Ok(report(
        params,
        ExperimentMode::RandomRandomness,
        seed,
        trials,
        accepts,
        None,
    ))
}
