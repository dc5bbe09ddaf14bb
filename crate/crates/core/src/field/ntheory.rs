//! Integer helpers: modular arithmetic, deterministic primality, factoring
//! of group orders, primitive roots.

use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in &SMALL_PRIMES {
        if n == sp {
            return true;
        }
        if n.is_multiple_of(sp) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// `a * b mod m` for 128-bit operands with `m < 2^127`.
fn mul_mod_wide(a: u128, b: u128, m: u128) -> u128 {
    if let Some(prod) = a.checked_mul(b) {
        return prod % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

fn pow_mod_wide(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_wide(acc, base, m);
        }
        base = mul_mod_wide(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Primality for 128-bit values. Exact below 2^64; above that Miller-Rabin
/// over 20 prime bases (only used on factoring cofactors).
pub fn is_prime_wide(n: u128) -> bool {
    if n <= u64::MAX as u128 {
        return is_prime(n as u64);
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let bases = [
        2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    'bases: for &a in &bases {
        let mut x = pow_mod_wide(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_wide(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const RHO_BUDGET: u64 = 1 << 24;

/// Brent's variant of Pollard rho; returns a nontrivial factor of the
/// composite `n`.
fn pollard_brent(n: u128) -> Option<u128> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1u128..64 {
        let f = |x: u128| (mul_mod_wide(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u128, 1u64, 1u128, 1u128);
        let mut x = y;
        let mut ys = y;
        let mut spent = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(y);
                    q = mul_mod_wide(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += batch;
            }
            spent += r;
            r *= 2;
            if spent > RHO_BUDGET {
                return None;
            }
        }
        if g == n {
            // batch overshot; step back one at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization as `(prime, multiplicity)` pairs in ascending order.
pub fn factorize(n: u128) -> Result<Vec<(u128, u32)>> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    let push = |p: u128, out: &mut Vec<(u128, u32)>| match out.iter_mut().find(|e| e.0 == p) {
        Some(e) => e.1 += 1,
        None => out.push((p, 1)),
    };
    let mut rest = n;
    if rest < 2 {
        return Ok(out);
    }
    let mut d = 2u128;
    while d < 1000 && d * d <= rest {
        while rest.is_multiple_of(d) {
            push(d, &mut out);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if rest > 1 {
        stack.push(rest);
    }
    while let Some(c) = stack.pop() {
        if is_prime_wide(c) {
            push(c, &mut out);
            continue;
        }
        let f = pollard_brent(c).ok_or(Error::FactorizationFailed(n))?;
        stack.push(f);
        stack.push(c / f);
    }
    out.sort_unstable();
    Ok(out)
}

/// Distinct prime divisors of `p^m - 1`, factored piecewise through the
/// cyclotomic decomposition `p^m - 1 = prod_{d | m} Phi_d(p)`.
pub fn group_order_primes(p: u64, m: usize) -> Result<Vec<u128>> {
    let p = p as u128;
    let divisors: Vec<usize> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    // phi[d] = Phi_d(p), filled in increasing d
    let mut phi: Vec<(usize, u128)> = Vec::new();
    for &d in &divisors {
        let mut value = p.pow(d as u32) - 1;
        for &(e, v) in &phi {
            if d % e == 0 {
                value /= v;
            }
        }
        phi.push((d, value));
    }
    let mut primes = Vec::new();
    for (_, v) in phi {
        for (r, _) in factorize(v)? {
            if !primes.contains(&r) {
                primes.push(r);
            }
        }
    }
    primes.sort_unstable();
    Ok(primes)
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p == 2 {
        return Ok(1);
    }
    let factors = factorize((p - 1) as u128)?;
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&(r, _)| pow_mod(g, (p - 1) / r as u64, p) != 1)
        })
        .ok_or(Error::NotPrime(p as u128))
}

/// Prime closest to `n`; ties go to the smaller prime.
pub fn nearest_prime(n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    let mut d = 0u64;
    loop {
        if is_prime(n - d) {
            return n - d;
        }
        if let Some(up) = n.checked_add(d) {
            if is_prime(up) {
                return up;
            }
        }
        d += 1;
    }
}
