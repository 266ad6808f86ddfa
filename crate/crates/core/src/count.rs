//! Representation counts for `x^2 + y^2 + 2z^2 + 2w^2`.
//!
//! A representation is an ordered, signed tuple `(x, y, z, w)`. The oracle
//! counts them directly: it tabulates `#{(x, y) : x^2 + y^2 = a}` and
//! `#{(z, w) : 2z^2 + 2w^2 = b}` under the requested parity filters and
//! convolves the two tables.

use serde::Serialize;

use crate::arith::{factor, prime_divisors, split_two_power};
use crate::dyadic::is_primary;
use crate::element::{elements_of_norm, isqrt, OrderElement};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_BOUND: u64 = 1_000_000;

fn check_odd(m: u64) -> Result<()> {
    if m.is_multiple_of(2) {
        return Err(Error::BadModulus(m));
    }
    Ok(())
}

pub fn sigma(m: u64) -> u64 {
    assert!(m >= 1, "sigma is defined for positive integers");
    let mut total = 1;
    let primes = factor(m);
    let mut k = 0;
    while k < primes.len() {
        let p = primes[k];
        let (mut term, mut pk) = (1, 1);
        while k < primes.len() && primes[k] == p {
            pk *= p;
            term += pk;
            k += 1;
        }
        total *= term;
    }
    total
}

/// `m prod (1 + 1/p)`, the number of primitive elements of odd norm `m`.
pub fn q_formula(m: u64) -> Result<u64> {
    check_odd(m)?;
    Ok(prime_divisors(m).into_iter().fold(m, |acc, p| acc / p * (p + 1)))
}

pub fn count_primitive_enum(m: u64) -> Result<u64> {
    check_odd(m)?;
    Ok(elements_of_norm(m)
        .iter()
        .filter(|e| e.content() == 1 && is_primary(e).is_primary())
        .count() as u64)
}

pub fn count_primary_enum(m: u64) -> Result<u64> {
    check_odd(m)?;
    Ok(elements_of_norm(m).iter().filter(|e| is_primary(e).is_primary()).count() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub formula_count: u64,
    pub oracle_count: Option<u64>,
    /// `(r, m)` with `n = 2^r m`, `m` odd.
    pub decomposition: (u32, u64),
}

impl CountResult {
    pub fn agrees(&self) -> bool {
        self.oracle_count.is_none_or(|o| o == self.formula_count)
    }
}

/// `4 sigma(m)`, `8 sigma(m)` or `24 sigma(m)` as `n = m`, `2m` or `2^r m`, `r >= 2`.
pub fn rep_count_formula(n: u64) -> Result<CountResult> {
    if n == 0 {
        return Err(Error::InvalidQuery("n must be positive".into()));
    }
    let (r, m) = split_two_power(n);
    let factor = match r {
        0 => 4,
        1 => 8,
        _ => 24,
    };
    Ok(CountResult { formula_count: factor * sigma(m), oracle_count: None, decomposition: (r, m) })
}

/// Formula count together with the oracle's.
pub fn rep_count_checked(n: u64) -> Result<CountResult> {
    let mut res = rep_count_formula(n)?;
    res.oracle_count = Some(rep_count_oracle(&RepQuery::new(n, Restriction::None)?)?);
    Ok(res)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Complementary {
    I,
    II,
    III,
}

/// Parity restrictions on `(x, y, z, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Restriction {
    None,
    /// `x, y` even; `z, w` odd; `n = 4m`.
    CaseI,
    /// `x, y` even; `z, w` odd; `n = 8m`.
    CaseII,
    /// `x, y` odd; `z, w` of opposite parity; `n = 4m`.
    CaseIII,
    /// Case iii with `z` odd, `w` even.
    CaseIIIZOdd,
    /// Case iii with `w` odd, `z` even.
    CaseIIIWOdd,
}

impl From<Complementary> for Restriction {
    fn from(c: Complementary) -> Self {
        match c {
            Complementary::I => Restriction::CaseI,
            Complementary::II => Restriction::CaseII,
            Complementary::III => Restriction::CaseIII,
        }
    }
}

#[derive(Clone, Copy)]
enum PairParity {
    Any,
    BothEven,
    BothOdd,
    FirstOdd,
    SecondOdd,
}

impl PairParity {
    fn admits(self, a: i64, b: i64) -> bool {
        let (oa, ob) = (a % 2 != 0, b % 2 != 0);
        match self {
            PairParity::Any => true,
            PairParity::BothEven => !oa && !ob,
            PairParity::BothOdd => oa && ob,
            PairParity::FirstOdd => oa && !ob,
            PairParity::SecondOdd => !oa && ob,
        }
    }
}

impl Restriction {
    fn parities(self) -> (PairParity, PairParity) {
        use PairParity::*;
        match self {
            Restriction::None => (Any, Any),
            Restriction::CaseI | Restriction::CaseII => (BothEven, BothOdd),
            Restriction::CaseIII => (BothOdd, Any),
            Restriction::CaseIIIZOdd => (BothOdd, FirstOdd),
            Restriction::CaseIIIWOdd => (BothOdd, SecondOdd),
        }
    }

    fn zw_filter(self) -> fn(i64, i64) -> bool {
        match self {
            Restriction::CaseIII => |z, w| (z + w) % 2 != 0,
            _ => |_, _| true,
        }
    }

    /// The power of two `n` must carry, with the odd part left over.
    fn required_shape(self) -> Option<u64> {
        match self {
            Restriction::None => None,
            Restriction::CaseI | Restriction::CaseIII | Restriction::CaseIIIZOdd | Restriction::CaseIIIWOdd => Some(4),
            Restriction::CaseII => Some(8),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RepQuery {
    pub n: u64,
    pub restriction: Restriction,
}

impl RepQuery {
    pub fn new(n: u64, restriction: Restriction) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuery("n must be positive".into()));
        }
        if let Some(k) = restriction.required_shape() {
            if !n.is_multiple_of(k) || (n / k).is_multiple_of(2) {
                return Err(Error::InvalidQuery(format!("{restriction:?} needs n = {k} m with m odd, got {n}")));
            }
        }
        Ok(Self { n, restriction })
    }
}

/// `table[a]` = number of `(s, t)` with `c (s^2 + t^2) = a` passing `keep`, for `a <= n`.
fn pair_table(n: u64, c: u64, keep: impl Fn(i64, i64) -> bool) -> Vec<u64> {
    let (n, c) = (n as i64, c as i64);
    let mut table = vec![0u64; n as usize + 1];
    let lim = isqrt(n / c);
    for s in -lim..=lim {
        let tl = isqrt(n / c - s * s);
        for t in -tl..=tl {
            if keep(s, t) {
                table[(c * (s * s + t * t)) as usize] += 1;
            }
        }
    }
    table
}

fn tables(n: u64, restriction: Restriction) -> (Vec<u64>, Vec<u64>) {
    let (xy, zw) = restriction.parities();
    let extra = restriction.zw_filter();
    (
        pair_table(n, 1, |x, y| xy.admits(x, y)),
        pair_table(n, 2, move |z, w| zw.admits(z, w) && extra(z, w)),
    )
}

pub fn rep_count_oracle(q: &RepQuery) -> Result<u64> {
    rep_count_oracle_bounded(q, DEFAULT_ORACLE_BOUND)
}

pub fn rep_count_oracle_bounded(q: &RepQuery, bound: u64) -> Result<u64> {
    if q.n > bound {
        return Err(Error::BoundExceeded { value: q.n, bound });
    }
    let n = q.n as usize;
    let (a, b) = tables(q.n, q.restriction);
    Ok((0..=n).map(|k| a[k] * b[n - k]).sum())
}

/// Unrestricted oracle counts for every `n` in `1..=max_n`; entry `k` is `r(k + 1)`.
pub fn rep_count_oracle_sweep(max_n: u64) -> Result<Vec<u64>> {
    if max_n > DEFAULT_ORACLE_BOUND {
        return Err(Error::BoundExceeded { value: max_n, bound: DEFAULT_ORACLE_BOUND });
    }
    let (a, b) = tables(max_n, Restriction::None);
    Ok((1..=max_n as usize)
        .map(|n| (0..=n).map(|k| a[k] * b[n - k]).sum())
        .collect())
}

/// `4 sigma(m)` at `n = 4m`, `16 sigma(m)` at `n = 8m`, `16 sigma(m)` at `n = 4m`.
pub fn complementary_count_formula(m: u64, case: Complementary) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidQuery("m must be positive".into()));
    }
    check_odd(m)?;
    let k = match case {
        Complementary::I => 4,
        Complementary::II | Complementary::III => 16,
    };
    Ok(k * sigma(m))
}

/// The `n` at which case `case` is stated for odd `m`.
pub fn complementary_n(m: u64, case: Complementary) -> u64 {
    match case {
        Complementary::I | Complementary::III => 4 * m,
        Complementary::II => 8 * m,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Module {
    /// The whole order.
    H,
    /// The span of `1, i, sqrt2 j, sqrt2 k`.
    H0,
}

pub fn enumerate_norm_solutions(n: u64, module: Module) -> Result<Vec<OrderElement>> {
    if n > DEFAULT_ORACLE_BOUND {
        return Err(Error::BoundExceeded { value: n, bound: DEFAULT_ORACLE_BOUND });
    }
    let all = elements_of_norm(n);
    Ok(match module {
        Module::H => all,
        Module::H0 => all.into_iter().filter(OrderElement::is_in_h0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::units;

    type E = OrderElement;

    fn brute(n: u64, keep: impl Fn(i64, i64, i64, i64) -> bool) -> u64 {
        let l = isqrt(n as i64);
        let mut count = 0;
        for x in -l..=l {
            for y in -l..=l {
                for z in -l..=l {
                    for w in -l..=l {
                        if (x * x + y * y + 2 * z * z + 2 * w * w) as u64 == n && keep(x, y, z, w) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma(1), 1);
        assert_eq!(sigma(9), 13);
        assert_eq!(sigma(15), 24);
        assert_eq!(sigma(12), 28);
    }

    #[test]
    fn primitive_counts() {
        assert_eq!(q_formula(1).unwrap(), 1);
        assert_eq!(q_formula(3).unwrap(), 4);
        assert_eq!(q_formula(15).unwrap(), 24);
        assert_eq!(count_primitive_enum(1).unwrap(), 1);
        assert_eq!(count_primitive_enum(3).unwrap(), 4);
        assert_eq!(count_primitive_enum(15).unwrap(), 24);
        assert!(q_formula(4).is_err());
        assert_eq!(count_primary_enum(1).unwrap(), 1);
        assert_eq!(count_primary_enum(3).unwrap(), 4);
        assert_eq!(count_primary_enum(9).unwrap(), 13);
    }

    #[test]
    fn formula_examples() {
        for (n, want) in [(1, 4), (2, 8), (4, 24), (12, 96)] {
            let r = rep_count_checked(n).unwrap();
            assert_eq!(r.formula_count, want);
            assert_eq!(r.oracle_count, Some(want));
        }
        assert_eq!(rep_count_formula(12).unwrap().decomposition, (2, 3));
        assert!(rep_count_formula(0).is_err());
    }

    #[test]
    fn oracle_matches_direct_loop() {
        for n in 1..40 {
            let q = RepQuery::new(n, Restriction::None).unwrap();
            assert_eq!(rep_count_oracle(&q).unwrap(), brute(n, |_, _, _, _| true), "n = {n}");
        }
        let sweep = rep_count_oracle_sweep(60).unwrap();
        for n in 1..=60u64 {
            assert_eq!(sweep[n as usize - 1], rep_count_oracle(&RepQuery::new(n, Restriction::None).unwrap()).unwrap());
        }
        let odd = |a: i64| a % 2 != 0;
        for m in [1u64, 3, 5] {
            let q = |r| rep_count_oracle(&RepQuery::new(if r == Restriction::CaseII { 8 * m } else { 4 * m }, r).unwrap()).unwrap();
            assert_eq!(q(Restriction::CaseI), brute(4 * m, |x, y, z, w| !odd(x) && !odd(y) && odd(z) && odd(w)));
            assert_eq!(q(Restriction::CaseII), brute(8 * m, |x, y, z, w| !odd(x) && !odd(y) && odd(z) && odd(w)));
            assert_eq!(q(Restriction::CaseIII), brute(4 * m, |x, y, z, w| odd(x) && odd(y) && odd(z) != odd(w)));
        }
    }

    #[test]
    fn restricted_examples() {
        let run = |n, r| rep_count_oracle(&RepQuery::new(n, r).unwrap()).unwrap();
        assert_eq!(run(1, Restriction::None), 4);
        assert_eq!(run(4, Restriction::CaseI), 4);
        assert_eq!(run(8, Restriction::CaseII), 16);
        assert_eq!(run(4, Restriction::CaseIII), 16);
        assert_eq!(run(12, Restriction::CaseIII), 64);
        assert_eq!(run(12, Restriction::CaseIIIZOdd), 32);
        assert_eq!(run(12, Restriction::CaseIIIWOdd), 32);
        assert_eq!(complementary_count_formula(1, Complementary::I).unwrap(), 4);
        assert_eq!(complementary_count_formula(1, Complementary::II).unwrap(), 16);
        assert_eq!(complementary_count_formula(3, Complementary::III).unwrap(), 64);
        assert!(RepQuery::new(8, Restriction::CaseI).is_err());
        assert!(RepQuery::new(4, Restriction::CaseII).is_err());
        assert!(RepQuery::new(0, Restriction::None).is_err());
        let q = RepQuery::new(2_000_000, Restriction::None).unwrap();
        assert_eq!(rep_count_oracle(&q), Err(Error::BoundExceeded { value: 2_000_000, bound: DEFAULT_ORACLE_BOUND }));
    }

    #[test]
    fn norm_solution_lists() {
        assert_eq!(enumerate_norm_solutions(1, Module::H).unwrap().len(), 24);
        let h0 = enumerate_norm_solutions(1, Module::H0).unwrap();
        assert_eq!(h0, vec![-E::ONE, -E::I, E::I, E::ONE].into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        assert_eq!(enumerate_norm_solutions(2, Module::H0).unwrap().len(), 8);
        for n in 1..30 {
            let q = RepQuery::new(n, Restriction::None).unwrap();
            assert_eq!(enumerate_norm_solutions(n, Module::H0).unwrap().len() as u64, rep_count_oracle(&q).unwrap());
        }
    }

    #[test]
    fn unit_filtrations() {
        let opi = E::ONE_PLUS_I;
        let us = units();
        assert_eq!(us.iter().filter(|u| u.is_in_h0()).count(), 4);
        assert_eq!(us.iter().filter(|u| (opi * **u).is_in_h0()).count(), 8);
        assert!(us.iter().all(|u| (opi * opi * *u).is_in_h0()));

        let odd = |x: i64| x % 2 != 0;
        let only_root2_half = |e: E| {
            let h = e.to_half();
            !odd(h.a) && !odd(h.b) && odd(h.c) && odd(h.d)
        };
        let mixed = |e: E| {
            let h = e.to_half();
            odd(h.a) && odd(h.b) && odd(h.c) != odd(h.d)
        };
        assert_eq!(us.iter().filter(|u| only_root2_half(**u)).count(), 4);
        assert_eq!(us.iter().filter(|u| only_root2_half(opi * **u)).count(), 16);
        assert_eq!(us.iter().filter(|u| mixed(**u)).count(), 16);
    }
}
