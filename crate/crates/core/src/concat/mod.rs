//! The `(q, k, δ)` double Reed-Solomon identification code.
//!
//! Inner code: `(q, k)` RS over GF(q). Outer code: `(q^k, q^(k-δ))` RS over
//! GF(q^k). The concatenation is a
//! `[q^(k+1), k q^(k-δ), (q-k+1)(q^k - q^(k-δ) + 1)]_q` block code whose
//! codewords are the tagging functions of `q^(k q^(k-δ))` identities.
//!
//! A tag for randomness `j` needs one outer evaluation at locator `j / q`,
//! the base-field expansion of that symbol, and one inner evaluation at
//! locator `j % q`. Nothing else of the codeword is computed.

mod capacity;
mod codebook;
mod identity;

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand_core::RngCore;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::rng;
use crate::rs::{vec_mat_mul, Caps, Message, RsParams};

pub use capacity::{
    capacity_conditions, BlockCodePoint, CapacityReport, ConditionReport, Trend, Verdict,
};
pub use codebook::concatenate_codebooks;
pub use identity::{read_identity, write_identity};

/// `k / q` above which the scaling `q >> k` is considered violated.
pub const LOOSE_SCALING_RATIO: f64 = 0.5;

/// Bits above which identities are no longer handled as plain integers.
pub const IDENTITY_INTEGER_BITS: f64 = (1u64 << 20) as f64;

/// Number of identities `base^exponent`, never materialized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityCount {
    pub base: u64,
    pub exponent: u128,
    pub log10: f64,
}

#[derive(Clone, Debug)]
pub struct ConcatParams {
    q: u64,
    k: u32,
    delta: u32,
    inner: RsParams,
    outer: RsParams,
    n_c: u128,
    k_c: u128,
    d_c: u128,
    identities: IdentityCount,
    loose_scaling: bool,
}

/// Serializable summary of a parameter set.
#[derive(Clone, Debug, Serialize)]
pub struct ParamsSummary {
    pub q: u64,
    pub k: u32,
    pub delta: u32,
    pub inner: [u128; 3],
    pub outer: [u128; 3],
    pub blocklength: u128,
    pub dimension: u128,
    pub distance: u128,
    pub identities: IdentityCount,
    pub lambda2_bound: String,
    pub lambda2_bound_value: f64,
    pub outer_modulus: Vec<u64>,
    pub loose_scaling: bool,
}

/// Builds the code for `(q, k, δ)`, requiring `q > k > δ > 0` and `q` prime.
pub fn derive_params(q: u64, k: u32, delta: u32) -> Result<ConcatParams> {
    if !(delta > 0 && k > delta && q > k as u64) {
        return Err(Error::InvalidScaling { q, k, delta });
    }
    let inner_field = Arc::new(FieldSpec::prime(q)?);
    let outer_field = Arc::new(FieldSpec::extension(q, k as usize)?);
    let qk = outer_field.order();
    let n_c = qk
        .checked_mul(q as u128)
        .filter(|&n| n < crate::field::ORDER_LIMIT)
        .ok_or(Error::DegreeTooLarge {
            p: q,
            m: k as usize + 1,
        })?;
    let outer_len = (q as u128).pow(k - delta);
    let outer_k = usize::try_from(outer_len)
        .map_err(|_| Error::InvalidParams(format!("outer message length {outer_len} too large")))?;
    let inner = RsParams::new(inner_field, q as u128, k as usize)?;
    let outer = RsParams::new(outer_field, qk, outer_k)?;
    let d_c = inner.distance() * outer.distance();
    let k_c = k as u128 * outer_len;
    let loose_scaling = k as f64 / q as f64 > LOOSE_SCALING_RATIO;
    if loose_scaling {
        log::warn!(
            "(q,k,delta)=({q},{k},{delta}): k/q > {LOOSE_SCALING_RATIO}, q >> k does not hold"
        );
    }
    Ok(ConcatParams {
        q,
        k,
        delta,
        inner,
        outer,
        n_c,
        k_c,
        d_c,
        identities: IdentityCount {
            base: q,
            exponent: k_c,
            log10: k_c as f64 * (q as f64).log10(),
        },
        loose_scaling,
    })
}

fn big(v: u128) -> BigInt {
    BigInt::from(v)
}

fn ratio(n: u128, d: u128) -> BigRational {
    BigRational::new(big(n), big(d))
}

impl ConcatParams {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn inner(&self) -> &RsParams {
        &self.inner
    }

    pub fn outer(&self) -> &RsParams {
        &self.outer
    }

    /// Randomness range, `q^(k+1)`.
    pub fn blocklength(&self) -> u128 {
        self.n_c
    }

    pub fn dimension(&self) -> u128 {
        self.k_c
    }

    pub fn distance(&self) -> u128 {
        self.d_c
    }

    /// Coefficients per identity, `q^(k-δ)`.
    pub fn identity_len(&self) -> usize {
        self.outer.k()
    }

    pub fn identity_count(&self) -> IdentityCount {
        self.identities
    }

    pub fn loose_scaling(&self) -> bool {
        self.loose_scaling
    }

    /// Applies the same caps to both component codes and the oracle.
    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.inner = self.inner.with_caps(caps);
        self.outer = self.outer.with_caps(caps);
        self
    }

    pub fn caps(&self) -> Caps {
        self.outer.caps()
    }

    /// Relative distance `d_c / n_c`.
    pub fn relative_distance(&self) -> BigRational {
        ratio(self.d_c, self.n_c)
    }

    /// `1 - k/q - q^(-δ)`, a lower bound on the relative distance.
    pub fn asymptotic_distance_bound(&self) -> BigRational {
        let q = big(self.q as u128);
        let one = BigRational::one();
        one - BigRational::new(big(self.k as u128), q.clone())
            - BigRational::new(BigInt::one(), q.pow(self.delta))
    }

    pub fn summary(&self) -> ParamsSummary {
        let bound = false_id_bound(self);
        ParamsSummary {
            q: self.q,
            k: self.k,
            delta: self.delta,
            inner: [
                self.inner.n(),
                self.inner.k() as u128,
                self.inner.distance(),
            ],
            outer: [
                self.outer.n(),
                self.outer.k() as u128,
                self.outer.distance(),
            ],
            blocklength: self.n_c,
            dimension: self.k_c,
            distance: self.d_c,
            identities: self.identities,
            lambda2_bound: bound.exact.to_string(),
            lambda2_bound_value: bound.value,
            outer_modulus: self.outer.field().modulus().to_vec(),
            loose_scaling: self.loose_scaling,
        }
    }
}

/// An outer-code message: `q^(k-δ)` elements of GF(q^k).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    message: Message,
}

impl Identity {
    pub fn new(params: &ConcatParams, coeffs: &[FieldElement]) -> Result<Self> {
        let message = Message::new(params.outer.field(), coeffs)?;
        Self::from_message(params, message)
    }

    pub fn from_message(params: &ConcatParams, message: Message) -> Result<Self> {
        if message.len() != params.identity_len() || message.degree() != params.k as usize {
            return Err(Error::InvalidParams(format!(
                "identity needs {} coefficients in GF({}^{})",
                params.identity_len(),
                params.q,
                params.k
            )));
        }
        Ok(Identity { message })
    }

    pub fn zero(params: &ConcatParams) -> Self {
        Identity {
            message: Message::zero(params.outer.field(), params.identity_len()),
        }
    }

    pub fn message(&self) -> &Message {
        &self.message
    }

    pub fn len(&self) -> usize {
        self.message.len()
    }

    pub fn is_empty(&self) -> bool {
        self.message.is_empty()
    }

    pub fn coefficient(&self, i: usize) -> FieldElement {
        self.message.get(i)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.message.coefficients()
    }

    /// Discrete-log indices of the coefficients, in message order.
    pub fn indices(&self, params: &ConcatParams) -> Result<Vec<u128>> {
        let f = params.outer.field();
        self.coefficients().map(|c| f.index_of(&c)).collect()
    }

    pub fn from_indices(params: &ConcatParams, indices: &[u128]) -> Result<Self> {
        let f = params.outer.field();
        let coeffs = indices
            .iter()
            .map(|&i| f.element_from_index(i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, &coeffs)
    }
}

fn check_integer_scale(params: &ConcatParams) -> Result<()> {
    let bits = params.k_c as f64 * (params.q as f64).log2();
    if bits > IDENTITY_INTEGER_BITS {
        return Err(Error::IntegerTooLarge);
    }
    Ok(())
}

/// Base-`q^k` expansion of `value`, most significant digit first, each
/// digit mapped to the field element with that index.
pub fn identity_from_integer(params: &ConcatParams, value: &BigUint) -> Result<Identity> {
    check_integer_scale(params)?;
    let base = BigUint::from(params.outer.field().order());
    let len = params.identity_len();
    let mut digits = vec![0u128; len];
    let mut rest = value.clone();
    for slot in digits.iter_mut().rev() {
        let d = &rest % &base;
        *slot = d.to_u128().expect("digit below q^k");
        rest /= &base;
    }
    if !rest.is_zero() {
        return Err(Error::ValueOutOfRange);
    }
    Identity::from_indices(params, &digits)
}

/// Inverse of [`identity_from_integer`].
pub fn identity_to_integer(params: &ConcatParams, identity: &Identity) -> Result<BigUint> {
    check_integer_scale(params)?;
    let base = BigUint::from(params.outer.field().order());
    let mut acc = BigUint::zero();
    for idx in identity.indices(params)? {
        acc = acc * &base + BigUint::from(idx);
    }
    Ok(acc)
}

/// Uniform identity drawn from `rng`: coefficient blocks in message order,
/// each as `k` residues (constant term first) below `q`.
pub fn draw_identity<R: RngCore + ?Sized>(params: &ConcatParams, rng: &mut R) -> Identity {
    let total = params.identity_len() * params.k as usize;
    let residues = (0..total).map(|_| rng::below_u64(rng, params.q)).collect();
    Identity {
        message: Message::from_residues(params.outer.field(), residues).expect("residues below q"),
    }
}

/// Deterministic identity for `seed`, from ChaCha20 stream
/// [`rng::IDENTITY_STREAM`].
pub fn identity_from_seed(params: &ConcatParams, seed: u64) -> Identity {
    draw_identity(params, &mut rng::stream(seed, rng::IDENTITY_STREAM))
}

/// Outer codeword symbol at outer locator index `a`.
fn outer_symbol(params: &ConcatParams, identity: &Identity, a: u128) -> Result<FieldElement> {
    let x = params.outer.locator(a)?;
    Ok(params.outer.eval_at(identity.message.residues(), &x))
}

/// Tag `T_i(j)` as an element of GF(q).
pub fn tag(params: &ConcatParams, identity: &Identity, j: u128) -> Result<FieldElement> {
    if j >= params.n_c {
        return Err(Error::IndexOutOfRange {
            index: j,
            limit: params.n_c,
        });
    }
    let q = params.q as u128;
    let symbol = outer_symbol(params, identity, j / q)?;
    // expansion of the outer symbol is the inner message
    let y = params.inner.locator(j % q)?;
    Ok(params.inner.eval_at(symbol.coefficients(), &y))
}

/// Tag as a residue in `[0, q)`.
pub fn tag_value(params: &ConcatParams, identity: &Identity, j: u128) -> Result<u64> {
    Ok(tag(params, identity, j)?.coefficients()[0])
}

/// The full concatenated codeword computed through generator matrices:
/// outer encoding `m · G_o`, expansion to GF(q), then the block-diagonal
/// inner encoding `⊕ G_i`. Test oracle for [`tag`]; desk scale only.
pub fn full_codeword_oracle(params: &ConcatParams, identity: &Identity) -> Result<Vec<u64>> {
    let cap = params.caps().max_symbols;
    if params.n_c > cap {
        return Err(Error::MaterializationTooLarge {
            requested: params.n_c,
            cap,
        });
    }
    let g_outer = params.outer.generator_matrix()?;
    let g_inner = params.inner.generator_matrix()?;
    let row: Vec<FieldElement> = identity.coefficients().collect();
    let outer_word = vec_mat_mul(params.outer.field(), &row, &g_outer);
    let inner_field = params.inner.field();
    let expanded: Vec<FieldElement> = outer_word
        .iter()
        .flat_map(|s| params.outer.field().expand_symbol(s))
        .map(|c| inner_field.scalar(c))
        .collect();
    let k = params.k as usize;
    let mut out = Vec::with_capacity(params.n_c as usize);
    // block ℓ of the direct sum acts on expanded[ℓk..(ℓ+1)k] only
    for block in expanded.chunks_exact(k) {
        out.extend(
            vec_mat_mul(inner_field, block, &g_inner)
                .iter()
                .map(|e| e.coefficients()[0]),
        );
    }
    Ok(out)
}

/// Worst-case false identification probability.
#[derive(Clone, Debug, PartialEq)]
pub struct FalseIdBound {
    /// `1 - d_c / n_c`.
    pub exact: BigRational,
    /// `2/q + 1/q^2 - 3/q^3 + 2/q^4`, present when `k = 3, δ = 2`.
    pub closed_form: Option<BigRational>,
    pub value: f64,
}

/// `1 - d / n` for any `[n, ., d]` tag code.
pub fn ecc_false_id_bound(n: u128, d: u128) -> BigRational {
    BigRational::one() - ratio(d, n)
}

pub fn false_id_bound(params: &ConcatParams) -> FalseIdBound {
    let exact = ecc_false_id_bound(params.n_c, params.d_c);
    let closed_form = (params.k == 3 && params.delta == 2).then(|| {
        let q = big(params.q as u128);
        let term = |c: i64, e: u32| BigRational::new(BigInt::from(c), q.pow(e));
        let v = term(2, 1) + term(1, 2) - term(3, 3) + term(2, 4);
        assert_eq!(v, exact, "closed form disagrees with 1 - d/n");
        v
    });
    let value = exact.to_f64().unwrap_or(f64::NAN);
    FalseIdBound {
        exact,
        closed_form,
        value,
    }
}

/// Probability that a uniformly drawn identity other than a given one
/// shares its tag at a fixed position: `(q^(k_c - 1) - 1) / (q^(k_c) - 1)`.
///
/// Every position is a surjective GF(q)-linear functional of the identity,
/// so exactly `q^(k_c - 1)` identities share any given tag there.
pub fn per_position_agreement(params: &ConcatParams) -> f64 {
    let q = params.q as f64;
    let kc = params.k_c as f64;
    if kc * q.log2() < 1000.0 {
        let big_q = BigUint::from(params.q);
        let num = big_q.pow((params.k_c - 1) as u32) - 1u32;
        let den = big_q.pow(params.k_c as u32) - 1u32;
        return BigRational::new(num.into(), den.into())
            .to_f64()
            .unwrap_or(f64::NAN);
    }
    // q^(-k_c) underflows; the correction terms vanish
    1.0 / q
}
