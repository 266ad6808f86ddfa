//! Rational-integer helpers: gcd, trial-division factoring, modular inverses.

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_all(values: &[i64]) -> u64 {
    values.iter().fold(0u64, |g, &v| gcd_u64(g, v.unsigned_abs()))
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factors with multiplicity, ascending. `factor(1)` is empty.
pub fn factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut ps = factor(n);
    ps.dedup();
    ps
}

/// Splits `n > 0` as `2^r * m` with `m` odd.
pub fn split_two_power(n: u64) -> (u32, u64) {
    let r = n.trailing_zeros();
    (r, n >> r)
}

/// Inverse of `a` modulo `m`, if it exists. `m >= 1`.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    let m_i = m as i128;
    let (mut old_r, mut r) = ((a as i128).rem_euclid(m_i), m_i);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 && m != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m_i) as u64)
}

pub fn rem(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}
