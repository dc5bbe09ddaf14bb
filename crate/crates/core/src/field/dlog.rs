use std::collections::HashMap;

use super::{ntheory, FieldElement, FieldSpec};
use crate::error::Result;

/// Packs an element of a field of order <= 2^48 into a hash key.
fn key(field: &FieldSpec, e: &FieldElement) -> u64 {
    let p = field.characteristic();
    e.coefficients()
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p + c)
}

/// `log_gamma(target)` where `gamma` has prime order `r`.
fn bsgs(field: &FieldSpec, gamma: &FieldElement, target: &FieldElement, r: u128) -> u128 {
    let steps = (r as f64).sqrt().ceil() as u128 + 1;
    let mut baby = HashMap::with_capacity(steps as usize);
    let mut cur = field.one();
    for j in 0..steps {
        baby.entry(key(field, &cur)).or_insert(j);
        cur = field.mul(&cur, gamma);
    }
    let giant = field
        .inv(&field.pow(gamma, steps))
        .expect("gamma has nonzero order");
    let mut y = target.clone();
    for i in 0..steps {
        if let Some(&j) = baby.get(&key(field, &y)) {
            return (i * steps + j) % r;
        }
        y = field.mul(&y, &giant);
    }
    unreachable!("target lies in the subgroup generated by gamma")
}

fn inverse_mod(a: u128, m: u128) -> u128 {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u128
}

/// Exponent `l` in `[0, p^m - 1)` with `α^l = e`, for nonzero `e`.
pub(super) fn discrete_log(field: &FieldSpec, e: &FieldElement) -> Result<u128> {
    let n = field.order() - 1;
    let alpha = field.primitive_element();
    let mut residue = 0u128;
    let mut modulus = 1u128;
    for (r, exp) in ntheory::factorize(n)? {
        let re = r.pow(exp);
        let cofactor = n / re;
        let g = field.pow(alpha, cofactor);
        let h = field.pow(e, cofactor);
        let gamma = field.pow(&g, re / r);
        let g_inv = field.inv(&g)?;
        // digits of log_g(h) in base r
        let mut x = 0u128;
        let mut rpow = 1u128;
        for i in 0..exp {
            let shifted = field.mul(&h, &field.pow(&g_inv, x));
            let target = field.pow(&shifted, re / (rpow * r));
            let d = bsgs(field, &gamma, &target, r);
            x += d * rpow;
            if i + 1 < exp {
                rpow *= r;
            }
        }
        // CRT merge of x mod re into residue mod modulus
        let t = (x + re - residue % re) % re * inverse_mod(modulus % re, re) % re;
        residue += modulus * t;
        modulus *= re;
    }
    Ok(residue % n)
}
