//! Rate comparisons, timing and figure data.

mod bench;
mod figures;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::concat::ConcatParams;
use crate::error::{Error, Result};

pub use crate::field::ntheory::nearest_prime;
pub use bench::{bench_tag, BenchRecord};
pub use figures::{emit_figure_data, fixed_randomness_params, Figure, FigureOptions};

/// The prime field sizes used for the published trade-off series.
pub const PUBLISHED_Q: [u64; 8] = [
    23,
    193,
    1009,
    10_007,
    100_003,
    1_000_037,
    10_285_181,
    100_600_999,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Tag code is one `(q, k)` RS code over GF(q).
    SingleRs,
    /// Tag code is the `(q, k, δ)` concatenation.
    DoubleRs,
}

#[derive(Clone, Debug, Serialize)]
pub struct RateComparison {
    pub scheme: Scheme,
    pub q: u64,
    pub k: u32,
    pub delta: Option<u32>,
    /// `log2` of the number of randomness-tag pairs.
    pub log2_pairs: f64,
    /// `log2` of the number of identities.
    pub log2_identities: f64,
    /// `r_ID / r_T` as an exact fraction.
    pub ratio: String,
    pub ratio_value: f64,
    /// Asymptotic form of the ratio in terms of `r_T`, for double RS.
    pub exponential_form: Option<String>,
}

/// Single RS: `q^2` pairs carry `q^k` identities, ratio `k / 2`.
pub fn single_rs_rate(q: u64, k: u32) -> Result<RateComparison> {
    if k == 0 || q <= k as u64 {
        return Err(Error::InvalidParams(format!(
            "single RS needs q > k > 0, got q={q} k={k}"
        )));
    }
    let ratio = BigRational::new(BigInt::from(k), BigInt::from(2));
    let lq = (q as f64).log2();
    Ok(RateComparison {
        scheme: Scheme::SingleRs,
        q,
        k,
        delta: None,
        log2_pairs: 2.0 * lq,
        log2_identities: k as f64 * lq,
        ratio_value: ratio.to_f64().unwrap_or(f64::NAN),
        ratio: ratio.to_string(),
        exponential_form: None,
    })
}

/// Double RS: `q^(k+2)` pairs carry `q^(k q^(k-δ))` identities, ratio
/// `k q^(k-δ) / (k + 2)`.
pub fn double_rs_rate(params: &ConcatParams) -> RateComparison {
    let (q, k, delta) = (params.q(), params.k(), params.delta());
    let num = BigInt::from(k) * BigInt::from(q).pow(k - delta);
    let ratio = BigRational::new(num, BigInt::from(k + 2));
    let lq = (q as f64).log2();
    RateComparison {
        scheme: Scheme::DoubleRs,
        q,
        k,
        delta: Some(delta),
        log2_pairs: (k + 2) as f64 * lq,
        log2_identities: params.dimension() as f64 * lq,
        ratio_value: ratio.to_f64().unwrap_or(f64::NAN),
        ratio: ratio.to_string(),
        exponential_form: Some(format!("r_ID / r_T ~ exp({} * n * r_T)", k - delta)),
    }
}
