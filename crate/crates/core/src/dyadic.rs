//! The (1+i)-adic layer: divisibility by `1 + i`, residues mod `1 + i`, mod 2
//! and mod `2(1+i)`, and primary associates of odd elements.
//!
//! The left, right and two-sided ideals generated by `2^a (1+i)` coincide,
//! so the congruences here need no side. Division by `1 + i` does.

use serde::{Deserialize, Serialize};

use crate::element::{positive_units, units, OrderElement};
use crate::error::{Error, Result};
use crate::euclid::Side;

/// Representatives of the four classes mod `1 + i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetTag1pi {
    Zero,
    One,
    V3,
    OnePlusV3,
}

impl CosetTag1pi {
    pub const ALL: [CosetTag1pi; 4] = [Self::Zero, Self::One, Self::V3, Self::OnePlusV3];

    pub fn element(self) -> OrderElement {
        match self {
            Self::Zero => OrderElement::ZERO,
            Self::One => OrderElement::ONE,
            Self::V3 => OrderElement::V3,
            Self::OnePlusV3 => OrderElement::new(1, 0, 1, 0),
        }
    }
}

/// One of the sixteen representatives mod 2: the twelve positive-sign units
/// and `0, 1+i, 1+v3+v4, i+v3+v4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CosetTagMod2(OrderElement);

impl CosetTagMod2 {
    pub fn element(&self) -> OrderElement {
        self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    /// All sixteen tags, units first.
    pub fn all() -> [CosetTagMod2; 16] {
        let mut out = [CosetTagMod2(OrderElement::ZERO); 16];
        for (slot, u) in out.iter_mut().zip(positive_units()) {
            *slot = CosetTagMod2(*u);
        }
        for (slot, e) in out[12..].iter_mut().zip(MOD2_NONUNITS) {
            *slot = CosetTagMod2(e);
        }
        out
    }
}

const MOD2_NONUNITS: [OrderElement; 4] = [
    OrderElement::ZERO,
    OrderElement::ONE_PLUS_I,
    OrderElement::new(1, 0, 1, 1),
    OrderElement::new(0, 1, 1, 1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimaryClass {
    /// Congruent to 1 mod `2(1+i)`.
    One,
    /// Congruent to `1 + 2 v3` mod `2(1+i)`.
    OnePlus2V3,
    NotPrimary,
}

impl PrimaryClass {
    pub fn is_primary(self) -> bool {
        self != PrimaryClass::NotPrimary
    }
}

pub fn is_odd(e: &OrderElement) -> bool {
    e.norm() % 2 == 1
}

pub fn residue_mod_1pi(e: &OrderElement) -> CosetTag1pi {
    let [g1, g2, g3, g4] = e.v;
    let s = (g1 + g2 + g4).rem_euclid(2);
    let t = (g3 + g4).rem_euclid(2);
    match (s, t) {
        (0, 0) => CosetTag1pi::Zero,
        (1, 0) => CosetTag1pi::One,
        (0, _) => CosetTag1pi::V3,
        _ => CosetTag1pi::OnePlusV3,
    }
}

/// `h` with `e = h (1+i)` (right) or `e = (1+i) h` (left).
///
/// Computed as `e (1-i) / 2` resp. `(1-i) e / 2`; the halving is exact
/// exactly when the norm is even.
pub fn divide_by_1pi(e: &OrderElement, side: Side) -> Result<OrderElement> {
    let n = e.checked_norm()?;
    if n % 2 == 1 {
        return Err(Error::OddNorm(n));
    }
    let one_minus_i = OrderElement::new(1, -1, 0, 0);
    side.attach(e, &one_minus_i)?
        .div_exact_int(2)
        .ok_or_else(|| Error::Invariant(format!("{e} has even norm but (1+i) does not divide it")))
}

/// Splits `e = (1+i)^r h` with `h` odd.
pub fn valuation_1pi(e: &OrderElement) -> Result<(u32, OrderElement)> {
    if e.is_zero() {
        return Err(Error::Zero);
    }
    let mut r = 0;
    let mut h = *e;
    while h.checked_norm()? % 2 == 0 {
        h = divide_by_1pi(&h, Side::Left)?;
        r += 1;
    }
    Ok((r, h))
}

pub fn residue_mod_2(e: &OrderElement) -> CosetTagMod2 {
    let bits = e.v.map(|g| g.rem_euclid(2));
    CosetTagMod2::all()
        .into_iter()
        .find(|t| t.0.v.map(|g| g.rem_euclid(2)) == bits)
        .expect("sixteen tags cover (Z/2)^4")
}

/// Whether `e` lies in the ideal `(2(1+i))`: halve exactly, then divide by `1 + i`.
pub fn divisible_by_2_1pi(e: &OrderElement) -> bool {
    match e.div_exact_int(2) {
        Some(h) => h.norm() % 2 == 0 && divide_by_1pi(&h, Side::Left).is_ok(),
        None => false,
    }
}

fn one_plus_2v3() -> OrderElement {
    OrderElement::new(1, 0, 2, 0)
}

pub fn is_primary(e: &OrderElement) -> PrimaryClass {
    if divisible_by_2_1pi(&(*e - OrderElement::ONE)) {
        PrimaryClass::One
    } else if divisible_by_2_1pi(&(*e - one_plus_2v3())) {
        PrimaryClass::OnePlus2V3
    } else {
        PrimaryClass::NotPrimary
    }
}

/// The unique unit `u` making `b u` (right) or `u b` (left) primary, with that product.
///
/// Scans all 24 units and checks that exactly one qualifies.
pub fn primary_associate(b: &OrderElement, side: Side) -> Result<(OrderElement, OrderElement)> {
    let n = b.checked_norm()?;
    if n % 2 == 0 {
        return Err(Error::EvenNorm(n));
    }
    let mut found = None;
    for u in units() {
        let c = side.attach(b, &u)?;
        if is_primary(&c).is_primary() {
            if found.is_some() {
                return Err(Error::Invariant(format!("{b} has two primary associates")));
            }
            found = Some((u, c));
        }
    }
    found.ok_or_else(|| Error::Invariant(format!("{b} has no primary associate")))
}

/// Units `u`, `u1` with `b u = u1 b = 1 (mod 2)`; the first match in unit-table
/// order is returned, so positive-sign units win.
pub fn unit_congruences_mod2(b: &OrderElement) -> Result<(OrderElement, OrderElement)> {
    let n = b.checked_norm()?;
    if n % 2 == 0 {
        return Err(Error::EvenNorm(n));
    }
    let one = residue_mod_2(&OrderElement::ONE);
    let find = |side: Side| -> Result<OrderElement> {
        for u in units() {
            if residue_mod_2(&side.attach(b, &u)?) == one {
                return Ok(u);
            }
        }
        Err(Error::Invariant(format!("no unit inverts {b} mod 2")))
    };
    Ok((find(Side::Right)?, find(Side::Left)?))
}

/// Class of an element modulo `2(1+i)`: its residue mod 2 together with the
/// class mod `1 + i` of the halved difference. The 64 pairs are the 64 classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue2OnePlusI {
    pub mod2: CosetTagMod2,
    pub lift: CosetTag1pi,
}

impl Residue2OnePlusI {
    /// Canonical representative. For the classes `= 1 (mod 2)` this is one of
    /// `1, -1, 1 + 2v3, -1 - 2v3`; otherwise `mod2 + 2 * lift`.
    pub fn representative(&self) -> OrderElement {
        if self.mod2.element().is_one() {
            return match self.lift {
                CosetTag1pi::Zero => OrderElement::ONE,
                CosetTag1pi::One => -OrderElement::ONE,
                CosetTag1pi::V3 => one_plus_2v3(),
                CosetTag1pi::OnePlusV3 => -one_plus_2v3(),
            };
        }
        self.mod2.element() + 2 * self.lift.element()
    }
}

pub fn ideal_2_1pi_residue(e: &OrderElement) -> Residue2OnePlusI {
    let mod2 = residue_mod_2(e);
    let half = (*e - mod2.element())
        .div_exact_int(2)
        .expect("difference from the mod-2 tag is divisible by 2");
    Residue2OnePlusI { mod2, lift: residue_mod_1pi(&half) }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = OrderElement;

    fn boxed(radius: i64) -> impl Iterator<Item = E> {
        let r = -radius..=radius;
        r.clone().flat_map(move |a| {
            let r = r.clone();
            r.clone().flat_map(move |b| {
                let r = r.clone();
                r.clone().flat_map(move |c| r.clone().map(move |d| E::new(a, b, c, d)))
            })
        })
    }

    #[test]
    fn oddness() {
        assert!(is_odd(&E::ONE));
        assert!(!is_odd(&E::ONE_PLUS_I));
        assert!(is_odd(&E::V3));
        assert!(!is_odd(&E::ZERO));
    }

    #[test]
    fn mod_1pi_examples() {
        assert_eq!(residue_mod_1pi(&E::ZERO), CosetTag1pi::Zero);
        assert_eq!(residue_mod_1pi(&E::I), CosetTag1pi::One);
        assert_eq!(residue_mod_1pi(&E::V4), CosetTag1pi::OnePlusV3);
        // v3^2 = v3 - 1 lands in the class of 1 + v3
        assert_eq!(residue_mod_1pi(&(E::V3 * E::V3)), CosetTag1pi::OnePlusV3);
        for e in boxed(2) {
            let diff = e - residue_mod_1pi(&e).element();
            assert!(divide_by_1pi(&diff, Side::Left).is_ok());
            assert!(divide_by_1pi(&diff, Side::Right).is_ok());
        }
        for a in CosetTag1pi::ALL {
            for b in CosetTag1pi::ALL {
                if a != b {
                    assert!(is_odd(&(a.element() - b.element())));
                }
            }
        }
    }

    #[test]
    fn divide_by_1pi_examples() {
        assert_eq!(divide_by_1pi(&E::from_int(2), Side::Right), Ok(E::new(1, -1, 0, 0)));
        assert_eq!(divide_by_1pi(&E::ONE_PLUS_I, Side::Right), Ok(E::ONE));
        let e = E::new(1, 0, 1, -1);
        // right cofactor 1/2 - i/2 + (sqrt2/2) j, left cofactor 1/2 - i/2 - (sqrt2/2) k
        let right = divide_by_1pi(&e, Side::Right).unwrap();
        assert_eq!(right, crate::text::parse("(1-1i+1r2j+0r2k)/2").unwrap());
        assert_eq!(right * E::ONE_PLUS_I, e);
        let left = divide_by_1pi(&e, Side::Left).unwrap();
        assert_eq!(left, crate::text::parse("(1-1i+0r2j-1r2k)/2").unwrap());
        assert_eq!(E::ONE_PLUS_I * left, e);
        assert_eq!(divide_by_1pi(&E::V3, Side::Left), Err(Error::OddNorm(1)));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation_1pi(&E::from_int(2)), Ok((2, -E::I)));
        assert_eq!(valuation_1pi(&E::ONE_PLUS_I), Ok((1, E::ONE)));
        let odd = E::new(2, 1, 0, 3);
        assert_eq!(valuation_1pi(&odd), Ok((0, odd)));
        assert_eq!(valuation_1pi(&E::ZERO), Err(Error::Zero));
        for e in boxed(3).filter(|e| !e.is_zero()) {
            let (r, h) = valuation_1pi(&e).unwrap();
            assert_eq!(r, e.norm().trailing_zeros());
            assert_eq!(E::ONE_PLUS_I.checked_pow(r).unwrap() * h, e);
        }
    }

    #[test]
    fn even_norm_iff_divisible_on_both_sides() {
        for e in boxed(4) {
            let even = e.norm() % 2 == 0;
            assert_eq!(divide_by_1pi(&e, Side::Left).is_ok(), even);
            assert_eq!(divide_by_1pi(&e, Side::Right).is_ok(), even);
        }
    }

    #[test]
    fn mod2_examples() {
        assert_eq!(residue_mod_2(&E::ZERO).element(), E::ZERO);
        assert_eq!(residue_mod_2(&E::V3).element(), E::V3);
        assert_eq!(residue_mod_2(&E::new(1, 1, 2, 0)).element(), E::ONE_PLUS_I);
        let tags = CosetTagMod2::all();
        assert_eq!(tags.iter().filter(|t| t.is_unit()).count(), 12);
        for t in &tags[12..] {
            assert_eq!(t.element().norm() % 2, 0);
        }
        assert_eq!(
            tags[12..].iter().map(|t| t.element().norm()).collect::<Vec<_>>(),
            vec![0, 2, 6, 6]
        );
    }

    #[test]
    fn odd_elements_are_units_mod_2() {
        for e in boxed(3).filter(is_odd) {
            assert!(residue_mod_2(&e).is_unit());
        }
    }

    #[test]
    fn primary_examples() {
        assert_eq!(is_primary(&E::ONE), PrimaryClass::One);
        assert_eq!(is_primary(&one_plus_2v3()), PrimaryClass::OnePlus2V3);
        assert_eq!(is_primary(&E::I), PrimaryClass::NotPrimary);
        assert_eq!(is_primary(&E::from_int(5)), PrimaryClass::One);
        assert_eq!(is_primary(&E::from_int(3)), PrimaryClass::NotPrimary);
        assert_eq!(is_primary(&E::from_int(-3)), PrimaryClass::One);
    }

    #[test]
    fn primary_associate_examples() {
        assert_eq!(primary_associate(&E::ONE, Side::Right), Ok((E::ONE, E::ONE)));
        let b = one_plus_2v3();
        assert_eq!(primary_associate(&b, Side::Left), Ok((E::ONE, b)));
        assert_eq!(primary_associate(&E::I, Side::Right), Ok((-E::I, E::ONE)));
        assert_eq!(primary_associate(&E::ONE_PLUS_I, Side::Right), Err(Error::EvenNorm(2)));
        for e in boxed(2).filter(is_odd) {
            for side in [Side::Left, Side::Right] {
                let (u, c) = primary_associate(&e, side).unwrap();
                assert_eq!(side.attach(&e, &u).unwrap(), c);
            }
        }
    }

    #[test]
    fn unit_congruence_examples() {
        assert_eq!(unit_congruences_mod2(&E::ONE), Ok((E::ONE, E::ONE)));
        assert_eq!(unit_congruences_mod2(&E::from_int(3)), Ok((E::ONE, E::ONE)));
        let (u, u1) = unit_congruences_mod2(&E::V3).unwrap();
        let one = residue_mod_2(&E::ONE);
        assert_eq!(residue_mod_2(&(E::V3 * u)), one);
        assert_eq!(residue_mod_2(&(u1 * E::V3)), one);
        assert!(unit_congruences_mod2(&E::from_int(2)).is_err());
    }

    #[test]
    fn residue_2_1pi_examples() {
        assert_eq!(ideal_2_1pi_residue(&E::from_int(3)).representative(), -E::ONE);
        let v3sq = E::V3 * E::V3;
        let e = E::ONE + 2 * v3sq;
        assert_eq!(ideal_2_1pi_residue(&e).representative(), -one_plus_2v3());
        assert_eq!(ideal_2_1pi_residue(&E::from_int(5)).representative(), E::ONE);
        // representatives are congruent to their inputs and the 64 classes are distinct
        let mut reps = std::collections::HashSet::new();
        for e in boxed(2) {
            let rep = ideal_2_1pi_residue(&e).representative();
            assert!(divisible_by_2_1pi(&(e - rep)), "{e} vs {rep}");
            reps.insert(rep);
        }
        assert_eq!(reps.len(), 64);
        let four = [E::ONE, -E::ONE, one_plus_2v3(), -one_plus_2v3()];
        for x in four {
            for y in four {
                if x != y {
                    let n = (x - y).norm();
                    assert!(n % 4 == 0 && n % 8 != 0);
                }
            }
        }
    }

    #[test]
    fn primary_elements_lie_in_h0() {
        for e in boxed(4) {
            if is_primary(&e).is_primary() {
                assert!(e.is_in_h0(), "{e}");
            }
        }
    }

    #[test]
    fn primary_products_stay_primary() {
        let prims: Vec<E> = boxed(2).filter(|e| is_primary(e).is_primary()).collect();
        assert!(prims.len() > 10);
        for a in &prims {
            for b in &prims {
                assert!(is_primary(&(*a * *b)).is_primary());
            }
        }
    }

    #[test]
    fn odd_multiplication_permutes_units_mod_2() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let unit_tags: Vec<CosetTagMod2> = positive_units().iter().map(residue_mod_2).collect();
        let mut done = 0;
        while done < 100 {
            let b = E::new(rng.gen_range(-30..30), rng.gen_range(-30..30), rng.gen_range(-30..30), rng.gen_range(-30..30));
            if !is_odd(&b) {
                continue;
            }
            done += 1;
            for side in [Side::Left, Side::Right] {
                let mut image: Vec<E> = positive_units()
                    .iter()
                    .map(|u| residue_mod_2(&side.attach(&b, u).unwrap()).element())
                    .collect();
                image.sort();
                let mut expected: Vec<E> = unit_tags.iter().map(|t| t.element()).collect();
                expected.sort();
                assert_eq!(image, expected);
            }
        }
    }
}
