//! Prime and extension fields GF(p^m) in the polynomial basis.
//!
//! Elements are little-endian coefficient vectors (constant term first).
//! Every field carries a primitive element `α`, and elements are indexed in
//! discrete-log order: index 0 is zero, index `i >= 1` is `α^(i-1)`. Index
//! lookups go through square-and-multiply, never through sequential
//! enumeration, so arbitrary indices in fields of size ~10^24 are cheap.
//!
//! Extension moduli are part of the external contract because codeword
//! symbols depend on them: Conway polynomials for the built-in table, and
//! beyond it the smallest monic irreducible polynomial with primitive root
//! `x`, ordered lexicographically on the little-endian coefficient tuple
//! `(f_0, f_1, ..., f_{m-1})`.

mod arith;
pub mod conway;
mod dlog;
pub mod ntheory;
mod poly;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
pub(crate) use arith::Arith;
pub use arith::MAX_DEGREE;

/// Fields with `p^m` at or above this bound are rejected (index arithmetic
/// is done in `u128`).
pub const ORDER_LIMIT: u128 = 1 << 127;

/// Largest supported prime characteristic.
pub const CHARACTERISTIC_LIMIT: u64 = 1 << 63;

/// Discrete logs are only computed below this field order.
pub const DLOG_ORDER_LIMIT: u128 = 1 << 48;

pub(crate) type Coeffs = SmallVec<[u64; 4]>;

/// An element of some GF(p^m): `m` residues modulo `p`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Coeffs,
}

impl FieldElement {
    pub(crate) fn from_coeffs(coeffs: Coeffs) -> Self {
        FieldElement { coeffs }
    }

    pub(crate) fn from_slice(coeffs: &[u64]) -> Self {
        FieldElement {
            coeffs: Coeffs::from_slice(coeffs),
        }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A validated finite field: prime characteristic, monic irreducible
/// modulus, primitive element of full multiplicative order.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Full monic modulus, `m + 1` coefficients; empty for prime fields.
    modulus: Vec<u64>,
    primitive: FieldElement,
    order: u128,
    /// Distinct primes dividing `p^m - 1`.
    group_primes: Vec<u128>,
    arith: Arith,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.modulus == other.modulus
            && self.primitive == other.primitive
    }
}

impl Eq for FieldSpec {}

/// Wire form: `{"p": .., "m": .., "modulus": [..], "primitive": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct FieldSpecRepr {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    primitive: Vec<u64>,
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        FieldSpec::from_parts(r.p, r.m, r.modulus, r.primitive)
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> Self {
        FieldSpecRepr {
            p: f.p,
            m: f.m,
            modulus: f.modulus,
            primitive: f.primitive.coeffs.to_vec(),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !ntheory::is_prime(p) {
        return Err(Error::NotPrime(p as u128));
    }
    if p >= CHARACTERISTIC_LIMIT {
        return Err(Error::DegreeTooLarge { p, m: 1 });
    }
    Ok(())
}

fn field_order(p: u64, m: usize) -> Result<u128> {
    if m > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { p, m });
    }
    let mut order: u128 = 1;
    for _ in 0..m {
        order = order
            .checked_mul(p as u128)
            .filter(|&o| o < ORDER_LIMIT)
            .ok_or(Error::DegreeTooLarge { p, m })?;
    }
    Ok(order)
}

impl FieldSpec {
    /// GF(p) with its smallest primitive root as `α`.
    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        let g = ntheory::primitive_root(p)?;
        let group_primes = ntheory::factorize((p - 1) as u128)?
            .into_iter()
            .map(|e| e.0)
            .collect();
        Ok(FieldSpec {
            p,
            m: 1,
            modulus: Vec::new(),
            primitive: FieldElement::from_slice(&[g]),
            order: p as u128,
            group_primes,
            arith: Arith::new(p, 1, &[]),
        })
    }

    /// GF(p^m), `m >= 2`, with the documented modulus and `α = x`.
    pub fn extension(p: u64, m: usize) -> Result<Self> {
        check_prime(p)?;
        if m < 2 {
            return Err(Error::InvalidDegree(m));
        }
        let order = field_order(p, m)?;
        let group_primes = ntheory::group_order_primes(p, m)?;
        let low = match conway::lookup(p, m) {
            Some(c) => c.to_vec(),
            None => search_primitive_modulus(p, m, order, &group_primes)?,
        };
        let mut modulus = low.clone();
        modulus.push(1);
        let mut x = Coeffs::from_elem(0, m);
        x[1] = 1;
        Ok(FieldSpec {
            p,
            m,
            modulus,
            primitive: FieldElement::from_coeffs(x),
            order,
            group_primes,
            arith: Arith::new(p, m, &low),
        })
    }

    /// Builds a field from explicit data, validating primality of `p`,
    /// irreducibility of the modulus and the order of the primitive element.
    pub fn from_parts(p: u64, m: usize, modulus: Vec<u64>, primitive: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if m == 0 {
            return Err(Error::InvalidDegree(m));
        }
        let order = field_order(p, m)?;
        let low: Vec<u64> = if m == 1 {
            if !modulus.is_empty() {
                return Err(Error::ReducibleModulus(1));
            }
            Vec::new()
        } else {
            if modulus.len() != m + 1
                || modulus[m] != 1
                || modulus.iter().any(|&c| c >= p)
                || !poly::is_irreducible(p, &modulus[..m])
            {
                return Err(Error::ReducibleModulus(m));
            }
            modulus[..m].to_vec()
        };
        if primitive.len() != m || primitive.iter().any(|&c| c >= p) {
            return Err(Error::InvalidElement(format!("{primitive:?}")));
        }
        let group_primes = if m == 1 {
            ntheory::factorize((p - 1) as u128)?
                .into_iter()
                .map(|e| e.0)
                .collect()
        } else {
            ntheory::group_order_primes(p, m)?
        };
        let spec = FieldSpec {
            p,
            m,
            modulus,
            primitive: FieldElement::from_slice(&primitive),
            order,
            group_primes,
            arith: Arith::new(p, m, &low),
        };
        if !spec.has_full_order(&spec.primitive) {
            return Err(Error::NotPrimitive);
        }
        Ok(spec)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Number of elements, `p^m`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Full monic modulus (empty for prime fields).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> &FieldElement {
        &self.primitive
    }

    pub(crate) fn arith(&self) -> &Arith {
        &self.arith
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_coeffs(Coeffs::from_elem(0, self.m))
    }

    pub fn one(&self) -> FieldElement {
        let mut c = Coeffs::from_elem(0, self.m);
        c[0] = 1 % self.p;
        FieldElement::from_coeffs(c)
    }

    /// Element of the prime subfield with the given residue.
    pub fn scalar(&self, value: u64) -> FieldElement {
        let mut c = Coeffs::from_elem(0, self.m);
        c[0] = value % self.p;
        FieldElement::from_coeffs(c)
    }

    /// Rebuilds an element from its little-endian base-field coefficients.
    pub fn from_coefficients(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.m || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement(format!(
                "{coeffs:?} is not an element of GF({}^{})",
                self.p, self.m
            )));
        }
        Ok(FieldElement::from_slice(coeffs))
    }

    pub fn contains(&self, e: &FieldElement) -> bool {
        e.coeffs.len() == self.m && e.coeffs.iter().all(|&c| c < self.p)
    }

    fn check(&self, e: &FieldElement) {
        debug_assert!(
            self.contains(e),
            "element {e} not in GF({}^{})",
            self.p,
            self.m
        );
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let mut out = Coeffs::from_elem(0, self.m);
        self.arith.add(&a.coeffs, &b.coeffs, &mut out);
        FieldElement::from_coeffs(out)
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let mut out = Coeffs::from_elem(0, self.m);
        self.arith.sub(&a.coeffs, &b.coeffs, &mut out);
        FieldElement::from_coeffs(out)
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let mut out = Coeffs::from_elem(0, self.m);
        self.arith.mul(&a.coeffs, &b.coeffs, &mut out);
        FieldElement::from_coeffs(out)
    }

    /// `x^e` by square-and-multiply, with `x^0 = 1` even for `x = 0`.
    pub fn pow(&self, x: &FieldElement, e: u128) -> FieldElement {
        self.check(x);
        let mut out = Coeffs::from_elem(0, self.m);
        self.arith.pow(&x.coeffs, e, &mut out);
        FieldElement::from_coeffs(out)
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.order - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn has_full_order(&self, x: &FieldElement) -> bool {
        let n = self.order - 1;
        let mut buf = [0u64; MAX_DEGREE];
        self.arith.pow(&x.coeffs, n, &mut buf);
        if !self.arith.is_one(&buf) {
            return false;
        }
        self.group_primes.iter().all(|&r| {
            self.arith.pow(&x.coeffs, n / r, &mut buf);
            !self.arith.is_one(&buf)
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: &FieldElement) -> Result<u128> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.order - 1;
        let mut buf = [0u64; MAX_DEGREE];
        for &r in &self.group_primes {
            while order.is_multiple_of(r) {
                self.arith.pow(&x.coeffs, order / r, &mut buf);
                if !self.arith.is_one(&buf) {
                    break;
                }
                order /= r;
            }
        }
        Ok(order)
    }

    /// Discrete-log ordering: 0 is zero, `i >= 1` is `α^(i-1)`.
    pub fn element_from_index(&self, i: u128) -> Result<FieldElement> {
        if i >= self.order {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.order,
            });
        }
        if i == 0 {
            return Ok(self.zero());
        }
        Ok(self.pow(&self.primitive, i - 1))
    }

    /// Inverse of [`element_from_index`](Self::element_from_index).
    ///
    /// Pohlig-Hellman over the factored group order with baby-step/giant-step
    /// in each prime subgroup; worst case `O(sqrt(p^m))` when `p^m - 1` has a
    /// large prime factor. Offered for `p^m <= 2^48` only.
    pub fn index_of(&self, e: &FieldElement) -> Result<u128> {
        if !self.contains(e) {
            return Err(Error::InvalidElement(e.to_string()));
        }
        if e.is_zero() {
            return Ok(0);
        }
        if self.order > DLOG_ORDER_LIMIT {
            return Err(Error::FieldTooLargeForDiscreteLog(self.order));
        }
        Ok(dlog::discrete_log(self, e)? + 1)
    }

    /// Base-field coefficients of `e`, constant term first.
    pub fn expand_symbol(&self, e: &FieldElement) -> Vec<u64> {
        self.check(e);
        e.coeffs.to_vec()
    }

    /// Parses `c0,c1,...,c_{m-1}`, `a^e` (power of the primitive element)
    /// or a bare `0`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = || Error::InvalidElement(s.to_string());
        if let Some(exp) = s.strip_prefix("a^") {
            let e = u128::from_str(exp.trim()).map_err(|_| bad())?;
            return Ok(self.pow(&self.primitive, e));
        }
        if s == "0" {
            return Ok(self.zero());
        }
        let coeffs = s
            .split(',')
            .map(|c| u64::from_str(c.trim()).map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        self.from_coefficients(&coeffs)
    }

    /// Polynomial in `x` with the modulus' coefficients, for display.
    pub fn modulus_string(&self) -> String {
        if self.m == 1 {
            return format!("GF({})", self.p);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        terms.join(" + ")
    }
}

/// Smallest monic irreducible modulus (little-endian lexicographic order
/// on `(f_0, ..., f_{m-1})`) whose root `x` is primitive.
///
/// The norm of a primitive element generates GF(p)*, and the norm of `x` is
/// `(-1)^m f_0`, so constant terms failing that test are skipped whole.
fn search_primitive_modulus(p: u64, m: usize, order: u128, primes: &[u128]) -> Result<Vec<u64>> {
    let base_primes: Vec<u64> = ntheory::factorize((p - 1) as u128)?
        .into_iter()
        .map(|e| e.0 as u64)
        .collect();
    let is_generator = |g: u64| {
        g != 0
            && (p == 2
                || base_primes
                    .iter()
                    .all(|&r| ntheory::pow_mod(g, (p - 1) / r, p) != 1))
    };
    let n = order - 1;
    let mut x = [0u64; MAX_DEGREE];
    x[1] = 1;
    for f0 in 1..p {
        let norm = if m.is_multiple_of(2) { f0 } else { p - f0 };
        if !is_generator(norm) {
            continue;
        }
        let mut rest = vec![0u64; m - 1];
        loop {
            let mut low = Vec::with_capacity(m);
            low.push(f0);
            low.extend_from_slice(&rest);
            if poly::is_irreducible(p, &low) {
                let ar = Arith::new(p, m, &low);
                let mut buf = [0u64; MAX_DEGREE];
                let full = primes.iter().all(|&r| {
                    ar.pow(&x[..m], n / r, &mut buf);
                    !ar.is_one(&buf[..m])
                });
                if full {
                    return Ok(low);
                }
            }
            // odometer over (f_1, ..., f_{m-1}), f_{m-1} fastest
            let mut pos = m - 1;
            loop {
                if pos == 0 {
                    break;
                }
                rest[pos - 1] += 1;
                if rest[pos - 1] < p {
                    break;
                }
                rest[pos - 1] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    Err(Error::ReducibleModulus(m))
}
