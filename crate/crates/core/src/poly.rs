//! Dense polynomials over a prime field, used only to validate and pick moduli.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn trim(f: &mut Vec<u32>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn inv_mod(a: u32, q: u32) -> u32 {
    // q is prime
    let mut e = q as u64 - 2;
    let (mut base, mut acc) = (a as u64 % q as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn make_monic(f: &mut [u32], q: u32) {
    let lead = *f.last().expect("nonzero polynomial");
    let inv = inv_mod(lead, q) as u64;
    for c in f.iter_mut() {
        *c = (*c as u64 * inv % q as u64) as u32;
    }
}

/// Remainder of `a` modulo the monic or non-monic `f`.
fn rem(a: &[u32], f: &[u32], q: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let inv_lead = inv_mod(f[df], q) as u64;
    let q64 = q as u64;
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] as u64 * inv_lead % q64;
        let shift = top - df;
        for (j, &fj) in f.iter().enumerate() {
            let v = (r[shift + j] as u64 + (q64 - c) * fj as u64) % q64;
            r[shift + j] = v as u32;
        }
        trim(&mut r);
    }
    r
}

fn mulmod(a: &[u32], b: &[u32], f: &[u32], q: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let q64 = q as u64;
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % q64) as u32;
        }
    }
    rem(&prod, f, q)
}

fn powmod(base: &[u32], mut e: u64, f: &[u32], q: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(base, f, q);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, f, q);
        }
        b = mulmod(&b, &b, f, q);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, q);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + q - y) % q
        })
        .collect();
    trim(&mut out);
    out
}

/// Rabin-style test: `f` of degree `m` is irreducible iff
/// `gcd(f, x^{q^d} - x) = 1` for every `d ≤ m/2`.
pub(crate) fn is_irreducible(f: &[u32], q: u32) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    let x = [0u32, 1];
    let mut h = rem(&x, f, q);
    for _ in 1..=m / 2 {
        h = powmod(&h, q as u64, f, q);
        let g = gcd(f, &sub(&h, &x, q), q);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: no monic factor of degree 1..=m/2 divides `f`.
    fn irreducible_by_search(f: &[u32], q: u32) -> bool {
        let m = f.len() - 1;
        for d in 1..=m / 2 {
            let count = (q as u64).pow(d as u32);
            for tail in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut t = tail;
                for _ in 0..d {
                    g.push((t % q as u64) as u32);
                    t /= q as u64;
                }
                g.push(1);
                if rem(f, &g, q).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for (q, m) in [(2u32, 2usize), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (5, 2)] {
            let count = (q as u64).pow(m as u32);
            for tail in 0..count {
                let mut f = Vec::with_capacity(m + 1);
                let mut t = tail;
                for _ in 0..m {
                    f.push((t % q as u64) as u32);
                    t /= q as u64;
                }
                f.push(1);
                assert_eq!(is_irreducible(&f, q), irreducible_by_search(&f, q), "q={q} f={f:?}");
            }
        }
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(255), [3, 5, 17]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors((1 << 24) - 1), [3, 5, 7, 13, 17, 241]);
    }
}
