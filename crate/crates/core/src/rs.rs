//! Reed-Solomon codes used as tagging functions.
//!
//! A message `(m_0, ..., m_{k-1})` is the polynomial `T(x) = sum m_i x^i`;
//! codeword position `j` is `T` evaluated at the `j`-th code locator, where
//! locators are the first `n` field elements in discrete-log order
//! (`0, α^0, α^1, ...`). Single positions cost `O(k)` multiplications and
//! never touch a matrix; full codewords and generator matrices exist for
//! desk-scale checks and are guarded by materialization caps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, MAX_DEGREE};

pub const DEFAULT_CAP: u128 = 1_000_000;

/// Limits on what may be materialized in memory or enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Max symbols in a codeword or entries in a generator matrix.
    pub max_symbols: u128,
    /// Max codewords visited by exhaustive searches.
    pub max_codewords: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_symbols: DEFAULT_CAP,
            max_codewords: DEFAULT_CAP,
        }
    }
}

/// Message vector over a field, stored as a flat run of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Message {
    degree: usize,
    residues: Vec<u64>,
}

impl Message {
    pub fn new(field: &FieldSpec, coeffs: &[FieldElement]) -> Result<Self> {
        let mut residues = Vec::with_capacity(coeffs.len() * field.degree());
        for c in coeffs {
            if !field.contains(c) {
                return Err(Error::InvalidElement(c.to_string()));
            }
            residues.extend_from_slice(c.coefficients());
        }
        Ok(Message {
            degree: field.degree(),
            residues,
        })
    }

    /// `residues` holds `len * m` base-field values, coefficient blocks in
    /// message order.
    pub fn from_residues(field: &FieldSpec, residues: Vec<u64>) -> Result<Self> {
        let m = field.degree();
        if !residues.len().is_multiple_of(m)
            || residues.iter().any(|&r| r >= field.characteristic())
        {
            return Err(Error::InvalidElement(
                "residue run does not form field elements".into(),
            ));
        }
        Ok(Message {
            degree: m,
            residues,
        })
    }

    pub fn zero(field: &FieldSpec, len: usize) -> Self {
        Message {
            degree: field.degree(),
            residues: vec![0; len * field.degree()],
        }
    }

    /// Space-separated element strings (see [`FieldSpec::parse_element`]).
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        let coeffs = s
            .split_whitespace()
            .map(|t| field.parse_element(t))
            .collect::<Result<Vec<_>>>()?;
        Message::new(field, &coeffs)
    }

    pub fn len(&self) -> usize {
        self.residues.len() / self.degree
    }

    /// Extension degree of the field the coefficients live in.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn get(&self, i: usize) -> FieldElement {
        FieldElement::from_slice(&self.residues[i * self.degree..(i + 1) * self.degree])
    }

    pub fn coefficients(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.residues
            .chunks_exact(self.degree)
            .map(FieldElement::from_slice)
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

/// Space-separated element strings.
pub fn format_symbols(symbols: &[FieldElement]) -> String {
    symbols
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// An `(n, k)` Reed-Solomon code over `field`: `[n, k, n - k + 1]`.
#[derive(Clone, Debug)]
pub struct RsParams {
    field: Arc<FieldSpec>,
    n: u128,
    k: usize,
    caps: Caps,
}

impl RsParams {
    pub fn new(field: Arc<FieldSpec>, n: u128, k: usize) -> Result<Self> {
        if k == 0 || (k as u128) > n || n > field.order() {
            return Err(Error::InvalidParams(format!(
                "need 1 <= k <= n <= {}, got n={n}, k={k}",
                field.order()
            )));
        }
        Ok(RsParams {
            field,
            n,
            k,
            caps: Caps::default(),
        })
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n(&self) -> u128 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Singleton bound, met with equality.
    pub fn distance(&self) -> u128 {
        self.n - self.k as u128 + 1
    }

    pub fn locator(&self, index: u128) -> Result<FieldElement> {
        if index >= self.n {
            return Err(Error::IndexOutOfRange {
                index,
                limit: self.n,
            });
        }
        self.field.element_from_index(index)
    }

    fn check_message(&self, msg: &Message) -> Result<()> {
        if msg.degree != self.field.degree() || msg.len() != self.k {
            return Err(Error::InvalidParams(format!(
                "message has {} symbols of degree {}, code expects {} of degree {}",
                msg.len(),
                msg.degree,
                self.k,
                self.field.degree()
            )));
        }
        Ok(())
    }

    /// Horner evaluation of a flat coefficient run at a locator element.
    /// The zero locator yields the constant coefficient directly.
    pub(crate) fn eval_at(&self, residues: &[u64], x: &FieldElement) -> FieldElement {
        let m = self.field.degree();
        if x.is_zero() {
            return FieldElement::from_slice(&residues[..m]);
        }
        let mut out = [0u64; MAX_DEGREE];
        self.field
            .arith()
            .horner(residues, x.coefficients(), &mut out);
        FieldElement::from_slice(&out[..m])
    }

    /// Codeword symbol at `locator_index`, computed on its own.
    pub fn evaluate_tag(&self, msg: &Message, locator_index: u128) -> Result<FieldElement> {
        self.check_message(msg)?;
        let x = self.locator(locator_index)?;
        Ok(self.eval_at(&msg.residues, &x))
    }

    fn check_cap(&self, requested: u128) -> Result<()> {
        if requested > self.caps.max_symbols {
            return Err(Error::MaterializationTooLarge {
                requested,
                cap: self.caps.max_symbols,
            });
        }
        Ok(())
    }

    /// All locators in order, walking successive powers of `α`.
    fn locators(&self) -> Vec<FieldElement> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.n as usize);
        out.push(f.zero());
        let mut cur = f.one();
        for _ in 1..self.n {
            out.push(cur.clone());
            cur = f.mul(&cur, f.primitive_element());
        }
        out
    }

    pub fn codeword(&self, msg: &Message) -> Result<Vec<FieldElement>> {
        self.check_message(msg)?;
        self.check_cap(self.n)?;
        Ok(self
            .locators()
            .iter()
            .map(|x| self.eval_at(&msg.residues, x))
            .collect())
    }

    /// `k x n` matrix with entry `(i, j) = locator_j^i` (`0^0 = 1`).
    pub fn generator_matrix(&self) -> Result<Vec<Vec<FieldElement>>> {
        self.check_cap(self.n.saturating_mul(self.k as u128))?;
        let locs = self.locators();
        Ok((0..self.k)
            .map(|i| locs.iter().map(|x| self.field.pow(x, i as u128)).collect())
            .collect())
    }

    /// Exact minimum distance by scanning the weight of every nonzero
    /// codeword (linear code, so this equals the minimum pairwise distance).
    pub fn min_distance_bruteforce(&self) -> Result<u128> {
        let f = &self.field;
        let words = f
            .order()
            .checked_pow(self.k as u32)
            .filter(|&w| w <= self.caps.max_codewords)
            .ok_or(Error::SearchSpaceTooLarge {
                requested: f.order().saturating_pow(self.k as u32),
                cap: self.caps.max_codewords,
            })?;
        self.check_cap(self.n)?;
        let locs = self.locators();
        let p = f.characteristic();
        let mut digits = vec![0u64; self.k * f.degree()];
        let mut best = u128::MAX;
        for _ in 1..words {
            // odometer increment over all residues
            for d in digits.iter_mut() {
                *d += 1;
                if *d < p {
                    break;
                }
                *d = 0;
            }
            let weight = locs
                .iter()
                .filter(|x| !self.eval_at(&digits, x).is_zero())
                .count() as u128;
            best = best.min(weight);
        }
        Ok(best)
    }
}

/// Row vector times matrix over `field`.
pub fn vec_mat_mul(
    field: &FieldSpec,
    row: &[FieldElement],
    matrix: &[Vec<FieldElement>],
) -> Vec<FieldElement> {
    let cols = matrix.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            row.iter().zip(matrix).fold(field.zero(), |acc, (a, r)| {
                field.add(&acc, &field.mul(a, &r[j]))
            })
        })
        .collect()
}
