//! Prime elements and the factorization of arbitrary nonzero elements.
//!
//! Every nonzero `x` is written as
//!
//! ```text
//! x = (1+i)^r * u * sign * content * pi_1 * pi_2 * ... * pi_k
//! ```
//!
//! with `u` a unit, `content` an odd positive integer and the `pi` primary
//! primes, listed by increasing norm.

use serde::{Serialize, Serializer};

use crate::arith::{factor, is_prime, mod_inverse, rem};
use crate::dyadic::{is_primary, primary_associate, valuation_1pi, PrimaryClass};
use crate::element::{elements_of_norm, OrderElement};
use crate::error::{Error, Result};
use crate::euclid::{exact_quotient, gcd, Side};

/// A primary element whose norm `p` is an odd rational prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimaryPrime {
    pub element: OrderElement,
    pub p: u64,
}

impl Serialize for PrimaryPrime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.element.serialize(s)
    }
}

impl PrimaryPrime {
    pub fn new(element: OrderElement) -> Result<Self> {
        let p = element.checked_norm()?;
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if !is_primary(&element).is_primary() {
            return Err(Error::NotPrimary);
        }
        Ok(Self { element, p })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub r: u32,
    pub unit: OrderElement,
    pub sign: i64,
    pub content: u64,
    pub primes: Vec<PrimaryPrime>,
}

impl Factorization {
    pub fn reassemble(&self) -> Result<OrderElement> {
        let mut acc = OrderElement::ONE_PLUS_I.checked_pow(self.r)?;
        acc = acc.checked_mul(&self.unit)?;
        let scalar = i64::try_from(self.content).map_err(|_| Error::Overflow)?;
        acc = acc.checked_scale(self.sign * scalar)?;
        for pi in &self.primes {
            acc = acc.checked_mul(&pi.element)?;
        }
        Ok(acc)
    }
}

pub fn is_prime_quat(e: &OrderElement) -> bool {
    e.checked_norm().is_ok_and(is_prime)
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

fn check_divisible_input(f: &OrderElement, p: u64) -> Result<()> {
    check_odd_prime(p)?;
    if f.v.iter().all(|&g| rem(g, p) == 0) {
        return Err(Error::NotPrimitiveTo(p));
    }
    let n = f.checked_norm()?;
    if n % p != 0 {
        return Err(Error::NormNotDivisible { norm: n, p });
    }
    Ok(())
}

/// A representative of `f mod p` whose norm is divisible by `p` exactly once.
///
/// Moving one coordinate by `p t` changes the norm by `p t c (mod p^2)`, where
/// `c` is the matching partial derivative of the norm form; the first
/// coordinate with `c != 0 (mod p)` is moved, with `t = 1/c`.
pub fn lift_nondegenerate(f: &OrderElement, p: u64) -> Result<OrderElement> {
    check_divisible_input(f, p)?;
    let n = f.checked_norm()?;
    if n % (p * p) != 0 {
        return Ok(*f);
    }
    let [f1, f2, f3, f4] = f.v.map(i128::from);
    let grad = [
        2 * f1 + f3 + f4,
        2 * f2 + f3 + f4,
        f1 + f2 + 2 * f3 + f4,
        f1 + f2 + f3 + 2 * f4,
    ];
    let pi = i128::from(p);
    let k = grad
        .iter()
        .position(|c| c.rem_euclid(pi) != 0)
        .ok_or_else(|| Error::Invariant(format!("norm gradient of {f} vanishes mod {p}")))?;
    let c = i64::try_from(grad[k].rem_euclid(pi)).map_err(|_| Error::Overflow)?;
    let t = mod_inverse(c, p).expect("c is a unit mod p");
    let mut out = *f;
    out.v[k] = out.v[k]
        .checked_add(i64::try_from(p * t).map_err(|_| Error::Overflow)?)
        .ok_or(Error::Overflow)?;
    let m = out.checked_norm()?;
    if m % p != 0 || m % (p * p) == 0 {
        return Err(Error::Invariant(format!("lift {out} of {f} has norm {m}")));
    }
    Ok(out)
}

/// The primary right gcd of a nondegenerate lift of `f` with `p`.
pub fn primary_prime_from(f: &OrderElement, p: u64) -> Result<PrimaryPrime> {
    let lifted = lift_nondegenerate(f, p)?;
    let pe = OrderElement::from_int(i64::try_from(p).map_err(|_| Error::Overflow)?);
    let d = gcd(&lifted, &pe, Side::Right)?.gcd;
    if d.checked_norm()? != p {
        return Err(Error::Invariant(format!("right gcd of {lifted} and {p} is {d}, norm {}", d.norm())));
    }
    PrimaryPrime::new(d).map_err(|e| Error::Invariant(format!("gcd {d} is not a primary prime: {e}")))
}

/// `conj(pi)` or `-conj(pi)`, whichever is primary.
pub fn p_conjugate(pi: &PrimaryPrime) -> Result<PrimaryPrime> {
    let c = pi.element.checked_conjugate()?;
    let out = match is_primary(&pi.element) {
        PrimaryClass::One => c,
        PrimaryClass::OnePlus2V3 => -c,
        PrimaryClass::NotPrimary => return Err(Error::NotPrimary),
    };
    if !is_primary(&out).is_primary() {
        return Err(Error::Invariant(format!("p-conjugate {out} of {} is not primary", pi.element)));
    }
    Ok(PrimaryPrime { element: out, p: pi.p })
}

/// All primary elements of norm `p`, sorted by v-coordinates.
pub fn primary_primes_of_norm(p: u64) -> Result<Vec<PrimaryPrime>> {
    check_odd_prime(p)?;
    Ok(elements_of_norm(p)
        .into_iter()
        .filter(|e| is_primary(e).is_primary())
        .map(|element| PrimaryPrime { element, p })
        .collect())
}

/// The 24 elements of norm 2, all associates of `1 + i`.
pub fn norm_two_primes() -> Vec<OrderElement> {
    elements_of_norm(2)
}

/// Whether `c` is primary with coordinate gcd 1.
pub fn is_primitive(c: &OrderElement) -> bool {
    is_primary(c).is_primary() && c.content() == 1
}

/// Splits a primitive `c` as `pi_1 pi_2 ... pi_k` with `N(pi_j) = prime_order[j]`.
///
/// Each `pi_j` is the primary left gcd of the remaining cofactor and `p_j`.
pub fn factor_primitive(c: &OrderElement, prime_order: &[u64]) -> Result<Vec<PrimaryPrime>> {
    if !is_primitive(c) {
        return Err(Error::NotPrimitive);
    }
    let norm = c.checked_norm()?;
    let mismatch = || Error::PrimeOrder { order: prime_order.to_vec(), norm };
    let mut sorted = prime_order.to_vec();
    sorted.sort_unstable();
    if sorted != factor(norm) {
        return Err(mismatch());
    }

    let mut cur = *c;
    let mut out = Vec::with_capacity(prime_order.len());
    for &p in prime_order {
        let pe = OrderElement::from_int(i64::try_from(p).map_err(|_| Error::Overflow)?);
        let lambda = gcd(&cur, &pe, Side::Left)?.gcd;
        if lambda.checked_norm()? != p {
            return Err(Error::Invariant(format!("left gcd of {cur} and {p} is {lambda}")));
        }
        cur = exact_quotient(&cur, &lambda, Side::Left)?
            .ok_or_else(|| Error::Invariant(format!("{lambda} does not left-divide {cur}")))?;
        out.push(PrimaryPrime::new(lambda).map_err(|e| Error::Invariant(e.to_string()))?);
    }
    if !cur.is_one() {
        return Err(Error::Invariant(format!("factoring {c} left cofactor {cur}")));
    }
    Ok(out)
}

pub fn full_factor(x: &OrderElement) -> Result<Factorization> {
    let (r, b) = valuation_1pi(x)?;
    let (left_unit, c) = primary_associate(&b, Side::Left)?;
    let unit = left_unit.checked_conjugate()?;

    let content = c.content();
    let k = i64::try_from(content).map_err(|_| Error::Overflow)?;
    let (sign, prim) = [1i64, -1]
        .into_iter()
        .find_map(|s| {
            let q = c.div_exact_int(s * k)?;
            is_primary(&q).is_primary().then_some((s, q))
        })
        .ok_or_else(|| Error::Invariant(format!("neither {c}/{content} nor its negative is primary")))?;

    let primes = factor_primitive(&prim, &factor(prim.checked_norm()?))?;
    let f = Factorization { r, unit, sign, content, primes };
    if f.reassemble()? != *x {
        return Err(Error::Invariant(format!("factorization of {x} does not reassemble")));
    }
    Ok(f)
}
