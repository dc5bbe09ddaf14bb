//! Dense polynomials over GF(p), only as much as the irreducibility test
//! needs.

use super::arith::{Arith, MAX_DEGREE};
use super::ntheory::{mul_mod, pow_mod};

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo `b` (`b` nonzero, trimmed).
fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while a.len() > db {
        let da = a.len() - 1;
        let t = mul_mod(a[da], lead_inv, p);
        for (i, &c) in b.iter().enumerate() {
            let idx = da - db + i;
            a[idx] = (a[idx] + p - mul_mod(t, c, p)) % p;
        }
        trim(&mut a);
    }
    a
}

/// Degree of `gcd(a, b)` over GF(p); `None` when both are zero.
pub fn gcd_degree(a: &[u64], b: &[u64], p: u64) -> Option<usize> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(x, &y, p);
        x = y;
        y = r;
    }
    if x.is_empty() {
        None
    } else {
        Some(x.len() - 1)
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: the monic `f = x^m + low` is irreducible over GF(p) iff
/// `x^(p^m) = x mod f` and `gcd(x^(p^(m/r)) - x, f) = 1` for every prime
/// `r | m`.
pub fn is_irreducible(p: u64, low: &[u64]) -> bool {
    let m = low.len();
    if m == 0 || m > MAX_DEGREE {
        return false;
    }
    if m == 1 {
        return true;
    }
    if low[0].is_multiple_of(p) {
        return false;
    }
    let ar = Arith::new(p, m, low);
    let mut x = [0u64; MAX_DEGREE];
    x[1] = 1;
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![x];
    for i in 0..m {
        let mut next = [0u64; MAX_DEGREE];
        ar.pow(&frob[i][..m], p as u128, &mut next);
        frob.push(next);
    }
    if frob[m][..m] != x[..m] {
        return false;
    }
    let mut f = low.to_vec();
    f.push(1);
    for r in prime_divisors(m) {
        let h = &frob[m / r];
        let mut diff: Vec<u64> = h[..m].to_vec();
        diff[1] = (diff[1] + p - 1) % p;
        if gcd_degree(&diff, &f, p) != Some(0) {
            return false;
        }
    }
    true
}
