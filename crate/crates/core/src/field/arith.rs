//! Arithmetic in GF(p)[x]/(f) on raw little-endian residue slices.
//!
//! No irreducibility is assumed here; the same routines drive both the
//! validated field type and the irreducibility tests run on candidate
//! moduli.

use super::ntheory::mul_mod;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

const WIDE: usize = 2 * MAX_DEGREE - 1;

/// Below this characteristic every coefficient product fits in 56 bits, so
/// a full schoolbook row can be summed in a `u64` before reducing.
const SMALL_CHAR_LIMIT: u64 = 1 << 28;

#[derive(Clone, Debug)]
pub(crate) struct Arith {
    pub p: u64,
    pub m: usize,
    /// `(p - f_j) mod p` for the low coefficients of the monic modulus.
    neg_modulus: [u64; MAX_DEGREE],
    small: bool,
}

impl Arith {
    /// `modulus_low` holds `f_0 .. f_{m-1}`; the leading 1 is implicit.
    /// For `m == 1` it is ignored.
    pub fn new(p: u64, m: usize, modulus_low: &[u64]) -> Self {
        debug_assert!((1..=MAX_DEGREE).contains(&m));
        let mut neg_modulus = [0u64; MAX_DEGREE];
        if m > 1 {
            for (slot, &c) in neg_modulus.iter_mut().zip(modulus_low) {
                *slot = (p - c % p) % p;
            }
        }
        Arith {
            p,
            m,
            neg_modulus,
            small: p < SMALL_CHAR_LIMIT,
        }
    }

    #[inline]
    pub fn add(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
            let s = x + y;
            *o = if s >= self.p { s - self.p } else { s };
        }
    }

    #[inline]
    pub fn sub(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
            *o = if x >= y { x - y } else { x + self.p - y };
        }
    }

    pub fn mul(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let (m, p) = (self.m, self.p);
        if m == 1 {
            out[0] = mul_mod(a[0], b[0], p);
            return;
        }
        if self.small {
            let mut acc = [0u64; WIDE];
            for (i, &x) in a[..m].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b[..m].iter().enumerate() {
                    acc[i + j] += x * y;
                }
            }
            // top-down reduction; lower slots stay below 2^62 until the end
            for i in (m..2 * m - 1).rev() {
                let t = acc[i] % p;
                if t == 0 {
                    continue;
                }
                for j in 0..m {
                    acc[i - m + j] += t * self.neg_modulus[j];
                }
            }
            for (o, &v) in out[..m].iter_mut().zip(&acc[..m]) {
                *o = v % p;
            }
        } else {
            let pw = p as u128;
            let mut acc = [0u128; WIDE];
            for (i, &x) in a[..m].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b[..m].iter().enumerate() {
                    acc[i + j] += (x as u128 * y as u128) % pw;
                }
            }
            for i in (m..2 * m - 1).rev() {
                let t = (acc[i] % pw) as u64;
                if t == 0 {
                    continue;
                }
                for j in 0..m {
                    acc[i - m + j] += mul_mod(t, self.neg_modulus[j], p) as u128;
                }
            }
            for (o, &v) in out[..m].iter_mut().zip(&acc[..m]) {
                *o = (v % pw) as u64;
            }
        }
    }

    /// Left-to-right square-and-multiply; `pow(x, 0) = 1` for every `x`.
    pub fn pow(&self, base: &[u64], exp: u128, out: &mut [u64]) {
        let m = self.m;
        out[..m].fill(0);
        out[0] = 1 % self.p;
        if exp == 0 {
            return;
        }
        let mut tmp = [0u64; MAX_DEGREE];
        for bit in (0..128 - exp.leading_zeros()).rev() {
            self.mul(&out[..m], &out[..m], &mut tmp);
            out[..m].copy_from_slice(&tmp[..m]);
            if (exp >> bit) & 1 == 1 {
                self.mul(&out[..m], base, &mut tmp);
                out[..m].copy_from_slice(&tmp[..m]);
            }
        }
    }

    pub fn is_one(&self, a: &[u64]) -> bool {
        a[0] == 1 % self.p && a[1..self.m].iter().all(|&c| c == 0)
    }

    /// Horner evaluation of `sum_i coeffs[i] * x^i` where `coeffs` is a flat
    /// buffer of `m`-residue blocks.
    pub fn horner(&self, coeffs: &[u64], x: &[u64], out: &mut [u64]) {
        let m = self.m;
        out[..m].fill(0);
        let mut tmp = [0u64; MAX_DEGREE];
        for block in coeffs.chunks_exact(m).rev() {
            self.mul(&out[..m], x, &mut tmp);
            self.add(&tmp[..m], block, &mut out[..m]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook product and long division, fully reduced at every step.
    fn reference_mul(p: u64, f: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = a.len();
        let mut prod = vec![0u64; 2 * m - 1];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], p)) % p;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let t = prod[i];
            prod[i] = 0;
            for j in 0..m {
                prod[i - m + j] = (prod[i - m + j] + p - mul_mod(t, f[j], p)) % p;
            }
        }
        prod.truncate(m);
        prod
    }

    #[test]
    fn both_reduction_paths_match_reference() {
        let cases: [(u64, &[u64]); 3] = [
            (5, &[3, 3, 0]),
            (1_000_037, &[7, 0, 1]),
            ((1 << 61) - 1, &[5, 1, 0, 9]),
        ];
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = |p: u64| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % p
        };
        for (p, f) in cases {
            let ar = Arith::new(p, f.len(), f);
            for _ in 0..200 {
                let a: Vec<u64> = (0..f.len()).map(|_| next(p)).collect();
                let b: Vec<u64> = (0..f.len()).map(|_| next(p)).collect();
                let mut out = vec![0; f.len()];
                ar.mul(&a, &b, &mut out);
                assert_eq!(out, reference_mul(p, f, &a, &b));
            }
        }
    }

    #[test]
    fn horner_matches_power_sum() {
        let ar = Arith::new(3, 2, &[2, 2]);
        let coeffs = [2u64, 2, 0, 1, 0, 1];
        let x = [1u64, 1];
        let mut horner = [0u64; 2];
        ar.horner(&coeffs, &x, &mut horner);
        let mut sum = [0u64; 2];
        let mut xp = [0u64; 2];
        let mut term = [0u64; 2];
        for (i, c) in coeffs.chunks(2).enumerate() {
            ar.pow(&x, i as u128, &mut xp);
            ar.mul(c, &xp, &mut term);
            let prev = sum;
            ar.add(&prev, &term, &mut sum);
        }
        assert_eq!(horner, sum);
    }
}
