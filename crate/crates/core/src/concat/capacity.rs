//! Finite-n trends of the three conditions a family of block codes
//! `[M(n), k(n), d(n)]_{q(n)}` must satisfy to reach identification
//! capacity: `log k / log M -> 1`, `log q / log M -> 0`, `d / M -> 1`.

use serde::Serialize;

use super::ConcatParams;
use crate::error::{Error, Result};

const FLAT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCodePoint {
    pub blocklength: u128,
    pub dimension: u128,
    pub distance: u128,
    pub alphabet: u128,
}

impl BlockCodePoint {
    pub fn concatenated(params: &ConcatParams) -> Self {
        BlockCodePoint {
            blocklength: params.blocklength(),
            dimension: params.dimension(),
            distance: params.distance(),
            alphabet: params.q() as u128,
        }
    }

    /// Full-length `(q, k)_q` Reed-Solomon code, `[q, k, q - k + 1]_q`.
    pub fn single_rs(q: u64, k: u64) -> Self {
        BlockCodePoint {
            blocklength: q as u128,
            dimension: k as u128,
            distance: (q - k + 1) as u128,
            alphabet: q as u128,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Flat,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Constant at the limit.
    AtLimit,
    /// Monotone and closing the gap to the limit.
    Approaching,
    /// Constant away from the limit.
    Stalled,
    /// Monotone but moving away from the limit.
    Diverging,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub name: &'static str,
    pub limit: f64,
    pub ratios: Vec<f64>,
    pub trend: Trend,
    pub verdict: Verdict,
}

impl ConditionReport {
    fn new(name: &'static str, limit: f64, ratios: Vec<f64>) -> Self {
        let scale = ratios.iter().fold(1.0f64, |a, &r| a.max(r.abs()));
        let diffs: Vec<f64> = ratios.windows(2).map(|w| w[1] - w[0]).collect();
        let flat = |d: f64| d.abs() <= FLAT_TOLERANCE * scale;
        let trend = if diffs.iter().all(|&d| flat(d)) {
            Trend::Flat
        } else if diffs.iter().all(|&d| d > 0.0 || flat(d)) {
            Trend::Increasing
        } else if diffs.iter().all(|&d| d < 0.0 || flat(d)) {
            Trend::Decreasing
        } else {
            Trend::Mixed
        };
        let first_gap = (ratios[0] - limit).abs();
        let last_gap = (ratios[ratios.len() - 1] - limit).abs();
        let verdict = match trend {
            Trend::Flat if last_gap <= FLAT_TOLERANCE * scale => Verdict::AtLimit,
            Trend::Flat => Verdict::Stalled,
            Trend::Mixed => Verdict::Inconclusive,
            _ if last_gap < first_gap => Verdict::Approaching,
            _ => Verdict::Diverging,
        };
        ConditionReport {
            name,
            limit,
            ratios,
            trend,
            verdict,
        }
    }

    /// Whether the finite sequence is consistent with the limit.
    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::AtLimit | Verdict::Approaching)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CapacityReport {
    /// `log k / log M -> 1`
    pub size: ConditionReport,
    /// `log q / log M -> 0`
    pub tag: ConditionReport,
    /// `d / M -> 1`
    pub error: ConditionReport,
}

/// Points are expected in order of growing blocklength.
pub fn capacity_conditions(points: &[BlockCodePoint]) -> Result<CapacityReport> {
    if points.len() < 3 {
        return Err(Error::InsufficientPoints(points.len()));
    }
    if let Some(bad) = points
        .iter()
        .find(|p| p.blocklength < 2 || p.dimension == 0)
    {
        return Err(Error::InvalidParams(format!(
            "degenerate block code {bad:?}"
        )));
    }
    let ln = |v: u128| (v as f64).ln();
    let size = points
        .iter()
        .map(|p| ln(p.dimension) / ln(p.blocklength))
        .collect();
    let tag = points
        .iter()
        .map(|p| ln(p.alphabet) / ln(p.blocklength))
        .collect();
    let error = points
        .iter()
        .map(|p| p.distance as f64 / p.blocklength as f64)
        .collect();
    Ok(CapacityReport {
        size: ConditionReport::new("log k / log M", 1.0, size),
        tag: ConditionReport::new("log q / log M", 0.0, tag),
        error: ConditionReport::new("d / M", 1.0, error),
    })
}
