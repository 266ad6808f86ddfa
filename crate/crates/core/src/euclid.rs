//! Division with remainder and one-sided gcds.
//!
//! [`Side::Right`] means the divisor stands on the right: `a = q b + r`, and a
//! right gcd `d` satisfies `a = a' d`, `b = b' d`, `d = x a + y b`.
//! [`Side::Left`] mirrors all of this.

use serde::{Deserialize, Serialize};

use crate::dyadic::{self, is_odd};
use crate::element::{units, OrderElement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// `x * y` with `y` on this side of `x`: right gives `x y`, left gives `y x`.
    pub fn attach(self, x: &OrderElement, y: &OrderElement) -> Result<OrderElement> {
        match self {
            Side::Right => x.checked_mul(y),
            Side::Left => y.checked_mul(x),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotient: OrderElement,
    pub remainder: OrderElement,
    pub side: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GcdResult {
    pub gcd: OrderElement,
    /// `(x, y)` with `gcd = x a + y b` (right) or `gcd = a x + b y` (left).
    pub cofactors: (OrderElement, OrderElement),
    pub side: Side,
}

/// Nearest integer to `num / den` (`den > 0`), ties to even.
fn round_half_even(num: i128, den: i128) -> i128 {
    let floor = num.div_euclid(den);
    let twice_rem = 2 * num.rem_euclid(den);
    match twice_rem.cmp(&den) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal if floor % 2 == 0 => floor,
        std::cmp::Ordering::Equal => floor + 1,
    }
}

/// The 81 offsets in `{-1, 0, 1}^4`, in lexicographic order.
fn offsets() -> impl Iterator<Item = [i64; 4]> {
    (0..81).map(|k| {
        let mut t = k;
        let mut o = [0i64; 4];
        for slot in o.iter_mut().rev() {
            *slot = (t % 3) as i64 - 1;
            t /= 3;
        }
        o
    })
}

/// Division with remainder on the given side.
///
/// The exact quotient `a conj(b) / N(b)` (right) or `conj(b) a / N(b)` (left)
/// is rounded coordinate-wise in the v-basis, then the 81 neighbours of that
/// point are scanned for the smallest remainder norm; ties go to the
/// lexicographically smallest quotient.
pub fn div_rem(a: &OrderElement, b: &OrderElement, side: Side) -> Result<DivisionResult> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let nb = b.checked_norm()?;
    let numer = side.attach(a, &b.checked_conjugate()?)?;
    let den = i128::from(nb);
    let base = numer.v.map(|x| round_half_even(i128::from(x), den));

    let mut best: Option<(u64, OrderElement, OrderElement)> = None;
    for off in offsets() {
        let mut q = [0i64; 4];
        for k in 0..4 {
            q[k] = i64::try_from(base[k] + i128::from(off[k])).map_err(|_| Error::Overflow)?;
        }
        let q = OrderElement { v: q };
        let r = a.checked_sub(&side.attach(&q, b)?)?;
        let nr = r.checked_norm()?;
        if best.as_ref().is_none_or(|(n, _, _)| nr < *n) {
            best = Some((nr, q, r));
        }
    }
    let (nr, quotient, remainder) = best.expect("offset set is nonempty");
    if nr >= nb {
        return Err(Error::Invariant(format!(
            "no quotient within norm {nb} found dividing {a} by {b}"
        )));
    }
    Ok(DivisionResult { quotient, remainder, side })
}

/// Returns `q` with `a = q d` (right) or `a = d q` (left) when it exists.
pub fn exact_quotient(a: &OrderElement, d: &OrderElement, side: Side) -> Result<Option<OrderElement>> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let nd = i64::try_from(d.checked_norm()?).map_err(|_| Error::Overflow)?;
    let numer = side.attach(a, &d.checked_conjugate()?)?;
    Ok(numer.div_exact_int(nd))
}

/// One-sided gcd via the Euclidean algorithm, with Bezout cofactors.
///
/// An odd gcd is normalized to its primary associate; an even one to the
/// lexicographically smallest associate. The unit is applied on the side that
/// keeps the gcd a divisor of both inputs.
pub fn gcd(a: &OrderElement, b: &OrderElement, side: Side) -> Result<GcdResult> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut x0, mut y0) = (*a, OrderElement::ONE, OrderElement::ZERO);
    let (mut r1, mut x1, mut y1) = (*b, OrderElement::ZERO, OrderElement::ONE);
    // coefficient combination mirrors the divisor side:
    // right: r = x a + y b, left: r = a x + b y
    while !r1.is_zero() {
        let DivisionResult { quotient: q, remainder: r2, .. } = div_rem(&r0, &r1, side)?;
        let x2 = x0.checked_sub(&side.flip().attach(&x1, &q)?)?;
        let y2 = y0.checked_sub(&side.flip().attach(&y1, &q)?)?;
        (r0, x0, y0, r1, x1, y1) = (r1, x1, y1, r2, x2, y2);
    }

    // associates that remain right divisors are u d; for left divisors, d u
    let unit_side = side.flip();
    let unit = if is_odd(&r0) {
        dyadic::primary_associate(&r0, unit_side)?.0
    } else {
        let mut best = (unit_side.attach(&r0, &units()[0])?, units()[0]);
        for u in units() {
            let cand = unit_side.attach(&r0, &u)?;
            if cand < best.0 {
                best = (cand, u);
            }
        }
        best.1
    };
    Ok(GcdResult {
        gcd: unit_side.attach(&r0, &unit)?,
        cofactors: (unit_side.attach(&x0, &unit)?, unit_side.attach(&y0, &unit)?),
        side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type E = OrderElement;

    #[test]
    fn rounding() {
        assert_eq!(round_half_even(5, 2), 2);
        assert_eq!(round_half_even(7, 2), 4);
        assert_eq!(round_half_even(-5, 2), -2);
        assert_eq!(round_half_even(-7, 3), -2);
        assert_eq!(round_half_even(8, 3), 3);
    }

    #[test]
    fn division_examples() {
        let d = div_rem(&E::from_int(2), &E::ONE_PLUS_I, Side::Right).unwrap();
        assert_eq!(d.quotient, E::new(1, -1, 0, 0));
        assert!(d.remainder.is_zero());
        let d = div_rem(&E::V3, &E::from_int(2), Side::Right).unwrap();
        assert_eq!(d.quotient, E::ZERO);
        assert_eq!(d.remainder, E::V3);
        assert_eq!(div_rem(&E::ONE, &E::ZERO, Side::Left), Err(Error::DivisionByZero));
    }

    #[test]
    fn product_divides_back() {
        let q = E::new(3, -1, 4, 1);
        let b = E::new(2, 7, -1, 8);
        let d = div_rem(&(q * b), &b, Side::Right).unwrap();
        assert_eq!((d.quotient, d.remainder), (q, E::ZERO));
        let d = div_rem(&(b * q), &b, Side::Left).unwrap();
        assert_eq!((d.quotient, d.remainder), (q, E::ZERO));
    }

    #[test]
    fn gcd_examples() {
        let g = gcd(&E::from_int(2), &E::ONE_PLUS_I, Side::Right).unwrap();
        assert_eq!(g.gcd.norm(), 2);
        assert!(units().iter().any(|u| *u * E::ONE_PLUS_I == g.gcd));
        let g = gcd(&E::new(5, 1, -3, 2), &E::ONE, Side::Right).unwrap();
        assert_eq!(g.gcd, E::ONE);
        assert_eq!(gcd(&E::ZERO, &E::ZERO, Side::Left), Err(Error::BothZero));
        let g = gcd(&E::ZERO, &E::V3, Side::Left).unwrap();
        assert_eq!(g.gcd, E::ONE);
    }

    /// A 5^4 window around the rounded point never beats the 3^4 window.
    #[test]
    fn wider_window_finds_nothing_better() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..2000 {
            let a = E::new(rng.gen_range(-40..40), rng.gen_range(-40..40), rng.gen_range(-40..40), rng.gen_range(-40..40));
            let b = E::new(rng.gen_range(-9..9), rng.gen_range(-9..9), rng.gen_range(-9..9), rng.gen_range(-9..9));
            if b.is_zero() {
                continue;
            }
            for side in [Side::Left, Side::Right] {
                let d = div_rem(&a, &b, side).unwrap();
                let nb = b.norm();
                let numer = side.attach(&a, &b.conjugate()).unwrap();
                let base = numer.v.map(|x| round_half_even(x as i128, nb as i128) as i64);
                let mut best = u64::MAX;
                for o in 0..625 {
                    let mut t = o;
                    let mut q = base;
                    for slot in q.iter_mut() {
                        *slot += t % 5 - 2;
                        t /= 5;
                    }
                    let r = a - side.attach(&E { v: q }, &b).unwrap();
                    best = best.min(r.norm());
                }
                assert_eq!(d.remainder.norm(), best);
            }
        }
    }

    fn element() -> impl Strategy<Value = E> {
        prop::array::uniform4(-50i64..=50).prop_map(|v| E { v })
    }

    proptest! {
        #[test]
        fn remainder_is_smaller(a in element(), b in element()) {
            prop_assume!(!b.is_zero());
            for side in [Side::Left, Side::Right] {
                let d = div_rem(&a, &b, side).unwrap();
                prop_assert!(d.remainder.norm() < b.norm());
                prop_assert_eq!(side.attach(&d.quotient, &b).unwrap() + d.remainder, a);
            }
        }

        #[test]
        fn gcd_divides_and_bezout(a in element(), b in element()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            for side in [Side::Left, Side::Right] {
                let g = gcd(&a, &b, side).unwrap();
                prop_assert!(exact_quotient(&a, &g.gcd, side).unwrap().is_some());
                prop_assert!(exact_quotient(&b, &g.gcd, side).unwrap().is_some());
                let (x, y) = g.cofactors;
                let combo = match side {
                    Side::Right => x * a + y * b,
                    Side::Left => a * x + b * y,
                };
                prop_assert_eq!(combo, g.gcd);
                let swapped = gcd(&b, &a, side).unwrap();
                prop_assert_eq!(swapped.gcd.norm(), g.gcd.norm());
            }
        }
    }
}
