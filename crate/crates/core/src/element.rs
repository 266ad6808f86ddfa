//! Elements of the order and their closed arithmetic.
//!
//! The order is the free Z-module on
//!
//! ```text
//! v1 = 1,  v2 = i,  v3 = (1 + i + sqrt2 j)/2,  v4 = (1 + i + sqrt2 k)/2
//! ```
//!
//! and its norm restricted to the sub-module spanned by `1, i, sqrt2 j,
//! sqrt2 k` is the form `x^2 + y^2 + 2z^2 + 2w^2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `g1 v1 + g2 v2 + g3 v3 + g4 v4` of the order.
///
/// Serializes as `{"v": [g1, g2, g3, g4]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct OrderElement {
    pub v: [i64; 4],
}

/// Doubled standard coordinates: the element `(a + b i + c sqrt2 j + d sqrt2 k)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfCoords {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl HalfCoords {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    /// Membership in the order: `A = B = C + D (mod 2)`.
    pub fn is_valid(&self) -> bool {
        (self.a - self.b).rem_euclid(2) == 0 && (self.a - self.c - self.d).rem_euclid(2) == 0
    }

    /// True when all four are even, i.e. the element lies in the sub-module H0.
    pub fn all_even(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|x| x % 2 == 0)
    }

    pub fn to_array(self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

impl OrderElement {
    pub const ZERO: Self = Self::new(0, 0, 0, 0);
    pub const ONE: Self = Self::new(1, 0, 0, 0);
    pub const I: Self = Self::new(0, 1, 0, 0);
    pub const V3: Self = Self::new(0, 0, 1, 0);
    pub const V4: Self = Self::new(0, 0, 0, 1);
    /// `1 + i`, the norm-2 element generating the dyadic prime.
    pub const ONE_PLUS_I: Self = Self::new(1, 1, 0, 0);

    pub const fn new(g1: i64, g2: i64, g3: i64, g4: i64) -> Self {
        Self { v: [g1, g2, g3, g4] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(n, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.v == [0; 4]
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn checked_to_half(&self) -> Result<HalfCoords> {
        let [g1, g2, g3, g4] = self.v.map(i128::from);
        Ok(HalfCoords {
            a: narrow(2 * g1 + g3 + g4)?,
            b: narrow(2 * g2 + g3 + g4)?,
            c: self.v[2],
            d: self.v[3],
        })
    }

    /// Panics if the doubled coordinates overflow `i64`.
    pub fn to_half(&self) -> HalfCoords {
        self.checked_to_half().expect("half coordinates overflow")
    }

    pub fn from_half(h: HalfCoords) -> Result<Self> {
        if !h.is_valid() {
            return Err(Error::Parity(h.a, h.b, h.c, h.d));
        }
        let cd = i128::from(h.c) + i128::from(h.d);
        Ok(Self::new(
            narrow((i128::from(h.a) - cd) / 2)?,
            narrow((i128::from(h.b) - cd) / 2)?,
            h.c,
            h.d,
        ))
    }

    /// Builds from wide half coordinates, asserting membership.
    fn from_half_wide(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        if (a - b).rem_euclid(2) != 0 || (a - c - d).rem_euclid(2) != 0 {
            return Err(Error::Invariant(format!(
                "product left the order: half coordinates ({a}, {b}, {c}, {d})"
            )));
        }
        Ok(Self::new(narrow((a - c - d) / 2)?, narrow((b - c - d) / 2)?, narrow(c)?, narrow(d)?))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let mut v = [0i64; 4];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = self.v[k].checked_add(rhs.v[k]).ok_or(Error::Overflow)?;
        }
        Ok(Self { v })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        let mut v = [0i64; 4];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = self.v[k].checked_sub(rhs.v[k]).ok_or(Error::Overflow)?;
        }
        Ok(Self { v })
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let mut v = [0i64; 4];
        for (slot, x) in v.iter_mut().zip(self.v) {
            *slot = x.checked_mul(k).ok_or(Error::Overflow)?;
        }
        Ok(Self { v })
    }

    /// The quaternion product, computed in doubled standard coordinates.
    ///
    /// With `x = (a0 + a1 i + a2 sqrt2 j + a3 sqrt2 k)/2` and likewise `y`,
    /// every numerator below is even for elements of the order; the halving
    /// is checked and an odd numerator is reported as an invariant failure.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let a = self.checked_to_half()?.to_array().map(i128::from);
        let b = rhs.checked_to_half()?.to_array().map(i128::from);
        let n0 = a[0] * b[0] - a[1] * b[1] - 2 * a[2] * b[2] - 2 * a[3] * b[3];
        let n1 = a[0] * b[1] + a[1] * b[0] + 2 * a[2] * b[3] - 2 * a[3] * b[2];
        let n2 = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
        let n3 = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
        if [n0, n1, n2, n3].iter().any(|n| n % 2 != 0) {
            return Err(Error::Invariant(format!(
                "odd numerator in product of {self} and {rhs}"
            )));
        }
        Self::from_half_wide(n0 / 2, n1 / 2, n2 / 2, n3 / 2)
    }

    /// Negates the `i`, `j`, `k` parts: `(g1, g2, g3, g4) -> (g1+g3+g4, -g2, -g3, -g4)`.
    pub fn checked_conjugate(&self) -> Result<Self> {
        let [g1, g2, g3, g4] = self.v;
        let first = g1
            .checked_add(g3)
            .and_then(|x| x.checked_add(g4))
            .ok_or(Error::Overflow)?;
        let neg = |x: i64| x.checked_neg().ok_or(Error::Overflow);
        Ok(Self::new(first, neg(g2)?, neg(g3)?, neg(g4)?))
    }

    pub fn conjugate(&self) -> Self {
        self.checked_conjugate().expect("conjugate overflow")
    }

    /// `g1^2 + g2^2 + g3^2 + g4^2 + g1 g3 + g2 g3 + g1 g4 + g2 g4 + g3 g4`.
    pub fn checked_norm(&self) -> Result<u64> {
        let [g1, g2, g3, g4] = self.v.map(i128::from);
        let terms = [
            g1 * g1,
            g2 * g2,
            g3 * g3,
            g4 * g4,
            g1 * g3,
            g2 * g3,
            g1 * g4,
            g2 * g4,
            g3 * g4,
        ];
        let mut total: i128 = 0;
        for t in terms {
            total = total.checked_add(t).ok_or(Error::Overflow)?;
        }
        u64::try_from(total).map_err(|_| Error::Overflow)
    }

    /// Panics if the norm does not fit in `u64`.
    pub fn norm(&self) -> u64 {
        self.checked_norm().expect("norm overflow")
    }

    /// Twice the real part, `e + conj(e)`, as a rational integer.
    pub fn trace(&self) -> i64 {
        self.to_half().a
    }

    /// Membership in H0, the span of `1, i, sqrt2 j, sqrt2 k`.
    pub fn is_in_h0(&self) -> bool {
        self.to_half().all_even()
    }

    /// Divides every coordinate by `n` when the quotient stays in the order.
    pub fn div_exact_int(&self, n: i64) -> Option<Self> {
        if n == 0 || self.v.iter().any(|x| x % n != 0) {
            return None;
        }
        Some(Self { v: self.v.map(|x| x / n) })
    }

    pub fn is_unit(&self) -> bool {
        self.checked_norm() == Ok(1)
    }

    pub fn unit_inverse(&self) -> Result<Self> {
        match self.checked_norm()? {
            1 => self.checked_conjugate(),
            n => Err(Error::NotUnit(n)),
        }
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Self> {
        let mut acc = Self::ONE;
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Coordinate gcd in the v-basis.
    pub fn content(&self) -> u64 {
        crate::arith::gcd_all(&self.v)
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [g1, g2, g3, g4] = self.v;
        write!(f, "[{g1},{g2},{g3},{g4}]")
    }
}

impl From<i64> for OrderElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for OrderElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("addition overflow")
    }
}

impl Sub for OrderElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("subtraction overflow")
    }
}

impl Neg for OrderElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self::ZERO - self
    }
}

impl Mul for OrderElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("multiplication failed")
    }
}

impl Mul<OrderElement> for i64 {
    type Output = OrderElement;
    fn mul(self, rhs: OrderElement) -> OrderElement {
        rhs.checked_scale(self).expect("scaling overflow")
    }
}

/// The twelve positive-sign units in listing order; the full group is these
/// and their negatives.
const POSITIVE_UNITS: [OrderElement; 12] = [
    OrderElement::new(1, 0, 0, 0),
    OrderElement::new(0, 1, 0, 0),
    OrderElement::new(0, 0, 1, 0),
    OrderElement::new(0, 0, 0, 1),
    OrderElement::new(-1, 0, 1, 0),
    OrderElement::new(0, -1, 1, 0),
    OrderElement::new(0, 0, -1, 1),
    OrderElement::new(-1, 0, 0, 1),
    OrderElement::new(0, -1, 0, 1),
    OrderElement::new(-1, -1, 1, 0),
    OrderElement::new(-1, -1, 0, 1),
    OrderElement::new(-1, -1, 1, 1),
];

/// All 24 units: the twelve positive-sign ones first, then their negatives.
pub fn units() -> [OrderElement; 24] {
    let mut out = [OrderElement::ZERO; 24];
    for (k, u) in POSITIVE_UNITS.iter().enumerate() {
        out[k] = *u;
        out[k + 12] = -*u;
    }
    out
}

pub fn positive_units() -> &'static [OrderElement; 12] {
    &POSITIVE_UNITS
}

/// Every element of norm exactly `n`, sorted by v-coordinates.
///
/// Enumerates doubled coordinates with `A^2 + B^2 + 2C^2 + 2D^2 = 4n`.
pub fn elements_of_norm(n: u64) -> Vec<OrderElement> {
    let target = 4 * i64::try_from(n).expect("norm too large to enumerate");
    let ab_max = isqrt(target);
    let cd_max = isqrt(target / 2);
    let mut out = Vec::new();
    for c in -cd_max..=cd_max {
        let rc = target - 2 * c * c;
        for d in -cd_max..=cd_max {
            let rcd = rc - 2 * d * d;
            if rcd < 0 {
                continue;
            }
            for a in -ab_max..=ab_max {
                if (a - c - d).rem_euclid(2) != 0 {
                    continue;
                }
                let rb = rcd - a * a;
                if rb < 0 {
                    continue;
                }
                let b = isqrt(rb);
                if b * b != rb {
                    continue;
                }
                for b in if b == 0 { vec![0] } else { vec![b, -b] } {
                    if (a - b).rem_euclid(2) == 0 {
                        out.push(OrderElement::from_half(HalfCoords::new(a, b, c, d)).unwrap());
                    }
                }
            }
        }
    }
    out.sort();
    out
}

pub(crate) fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
