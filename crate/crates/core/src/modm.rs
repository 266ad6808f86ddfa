//! The order modulo an odd integer `m` and its isomorphism onto 2x2
//! matrices over `Z/m`.
//!
//! Residues are written in the H0 coordinates `q1 + q2 i + q3 sqrt2 j +
//! q4 sqrt2 k` with each `q` in `[0, m)`; these `m^4` tuples form a complete
//! residue system. The isomorphism depends on a pair `(r, s)` with
//! `1/2 + r^2 + s^2 = 0 (mod m)`, chosen here as the lexicographically
//! smallest solution.

use std::fmt;

use serde::Serialize;

use crate::arith::{gcd_u64, mod_inverse, prime_divisors, rem};
use crate::element::{HalfCoords, OrderElement};
use crate::error::{Error, Result};

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::BadModulus(m));
    }
    Ok(())
}

fn inv2(m: u64) -> u64 {
    m.div_ceil(2) % m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResidueElement {
    pub m: u64,
    pub q: [u64; 4],
}

impl ResidueElement {
    pub fn new(m: u64, q: [i64; 4]) -> Result<Self> {
        check_modulus(m)?;
        Ok(Self { m, q: q.map(|x| rem(x, m)) })
    }

    pub fn zero(m: u64) -> Self {
        Self { m, q: [0; 4] }
    }

    pub fn one(m: u64) -> Self {
        Self { m, q: [1 % m, 0, 0, 0] }
    }

    /// The representative as an element of H0 (coordinates taken in `[0, m)`).
    pub fn lift(&self) -> OrderElement {
        let [a, b, c, d] = self.q.map(|x| 2 * x as i64);
        OrderElement::from_half(HalfCoords::new(a, b, c, d)).expect("even half coordinates are valid")
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ModulusMismatch(self.m, other.m));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let mut q = [0u64; 4];
        for k in 0..4 {
            q[k] = (self.q[k] + other.q[k]) % self.m;
        }
        Ok(Self { m: self.m, q })
    }

    pub fn scale(&self, k: u64) -> Self {
        let m = self.m as u128;
        Self { m: self.m, q: self.q.map(|x| (x as u128 * k as u128 % m) as u64) }
    }

    /// Product in the order, then reduced.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let prod = self.lift().checked_mul(&other.lift())?;
        reduce_mod_m(&prod, self.m)
    }

    /// `q1^2 + q2^2 + 2 q3^2 + 2 q4^2 mod m`.
    pub fn norm_mod(&self) -> u64 {
        let m = self.m as u128;
        let [a, b, c, d] = self.q.map(u128::from);
        ((a * a + b * b + 2 * c * c + 2 * d * d) % m) as u64
    }

    pub fn is_zero(&self) -> bool {
        self.q == [0; 4]
    }

    /// `gcd(q1, q2, q3, q4, m) = 1`.
    pub fn is_primitive(&self) -> bool {
        self.q.iter().fold(self.m, |g, &x| gcd_u64(g, x)) == 1
    }
}

/// All `m^4` residues in lexicographic order of `(q1, q2, q3, q4)`.
pub fn residues(m: u64) -> impl Iterator<Item = ResidueElement> {
    (0..m.pow(4)).map(move |mut k| {
        let mut q = [0u64; 4];
        for slot in q.iter_mut().rev() {
            *slot = k % m;
            k /= m;
        }
        ResidueElement { m, q }
    })
}

/// Reduces an element into the residue system mod odd `m`.
///
/// `v3` and `v4` are first multiplied by `1 + m` (even, and `= 1 mod m`),
/// which moves the element into H0; the standard coordinates are then reduced.
pub fn reduce_mod_m(e: &OrderElement, m: u64) -> Result<ResidueElement> {
    check_modulus(m)?;
    let [g1, g2, g3, g4] = e.v.map(i128::from);
    let half = i128::from(m) / 2 + 1; // (1 + m) / 2
    let mi = i128::from(m);
    let q = [
        g1 + half * (g3 + g4),
        g2 + half * (g3 + g4),
        half * g3,
        half * g4,
    ]
    .map(|x| x.rem_euclid(mi) as u64);
    Ok(ResidueElement { m, q })
}

pub fn is_primitive_to_m(e: &OrderElement, m: u64) -> Result<bool> {
    check_modulus(m)?;
    Ok(e.v.iter().fold(m, |g, &x| gcd_u64(g, x.unsigned_abs())) == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RSParams {
    pub m: u64,
    pub r: u64,
    pub s: u64,
}

impl RSParams {
    /// Validates an explicit pair against `1/2 + r^2 + s^2 = 0 (mod m)`.
    pub fn new(m: u64, r: u64, s: u64) -> Result<Self> {
        check_modulus(m)?;
        let (r, s) = (r % m, s % m);
        let mm = m as u128;
        let total = (inv2(m) as u128 + (r as u128).pow(2) + (s as u128).pow(2)) % mm;
        if total != 0 {
            return Err(Error::InvalidQuery(format!("(r, s) = ({r}, {s}) does not solve 1/2 + r^2 + s^2 = 0 mod {m}")));
        }
        Ok(Self { m, r, s })
    }
}

/// Smallest `(r, s)` in lexicographic order with `1/2 + r^2 + s^2 = 0 (mod m)`.
pub fn solve_rs(m: u64) -> Result<RSParams> {
    check_modulus(m)?;
    let target = (m - inv2(m)) % m;
    let squares: Vec<u64> = (0..m).map(|x| (x as u128 * x as u128 % m as u128) as u64).collect();
    for r in 0..m {
        for s in 0..m {
            if (squares[r as usize] + squares[s as usize]) % m == target {
                return Ok(RSParams { m, r, s });
            }
        }
    }
    Err(Error::Invariant(format!("no (r, s) solves 1/2 + r^2 + s^2 = 0 mod {m}")))
}

/// The four elements `xi1..xi4` whose halves play the role of matrix units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XiBasis {
    pub params: RSParams,
    pub xi: [ResidueElement; 4],
}

pub fn xi_basis(p: RSParams) -> Result<XiBasis> {
    let (m, r, s) = (p.m, p.r as i64, p.s as i64);
    let xi = [
        ResidueElement::new(m, [1, 0, r, s])?,
        ResidueElement::new(m, [0, 1, s, -r])?,
        ResidueElement::new(m, [0, -1, s, -r])?,
        ResidueElement::new(m, [1, 0, -r, -s])?,
    ];
    let basis = XiBasis { params: p, xi };
    basis.verify()?;
    Ok(basis)
}

impl XiBasis {
    /// Checks every pairwise product: `xi_a xi_b` is `2 xi_c` when the matrix
    /// units `E_a E_b = E_c`, and zero otherwise.
    pub fn verify(&self) -> Result<()> {
        // xi1 ~ E11, xi2 ~ E12, xi3 ~ E21, xi4 ~ E22
        const POS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let m = self.params.m;
        for a in 0..4 {
            for b in 0..4 {
                let prod = self.xi[a].mul(&self.xi[b])?;
                let (ra, ca) = POS[a];
                let (rb, cb) = POS[b];
                let expected = if ca == rb {
                    let c = POS.iter().position(|&x| x == (ra, cb)).unwrap();
                    self.xi[c].scale(2)
                } else {
                    ResidueElement::zero(m)
                };
                if prod != expected {
                    return Err(Error::Invariant(format!(
                        "xi{} * xi{} mod {m} is {:?}, expected {:?}",
                        a + 1,
                        b + 1,
                        prod.q,
                        expected.q
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A 2x2 matrix `[[alpha, beta], [gamma, delta]]` over `Z/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MatrixModM {
    pub m: u64,
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub delta: u64,
}

impl MatrixModM {
    pub fn new(m: u64, entries: [[i64; 2]; 2]) -> Result<Self> {
        check_modulus(m)?;
        Ok(Self {
            m,
            alpha: rem(entries[0][0], m),
            beta: rem(entries[0][1], m),
            gamma: rem(entries[1][0], m),
            delta: rem(entries[1][1], m),
        })
    }

    pub fn identity(m: u64) -> Self {
        Self { m, alpha: 1 % m, beta: 0, gamma: 0, delta: 1 % m }
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        [[self.alpha, self.beta], [self.gamma, self.delta]]
    }

    pub fn det(&self) -> u64 {
        let m = self.m as u128;
        let ad = self.alpha as u128 * self.delta as u128 % m;
        let bc = self.beta as u128 * self.gamma as u128 % m;
        ((ad + m - bc) % m) as u64
    }

    pub fn is_primitive(&self) -> bool {
        [self.alpha, self.beta, self.gamma, self.delta]
            .iter()
            .fold(self.m, |g, &x| gcd_u64(g, x))
            == 1
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::ModulusMismatch(self.m, other.m));
        }
        let m = self.m;
        Ok(Self {
            m,
            alpha: (self.alpha + other.alpha) % m,
            beta: (self.beta + other.beta) % m,
            gamma: (self.gamma + other.gamma) % m,
            delta: (self.delta + other.delta) % m,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::ModulusMismatch(self.m, other.m));
        }
        let m = self.m as u128;
        let (a, b) = (self.rows(), other.rows());
        let entry = |i: usize, j: usize| {
            ((a[i][0] as u128 * b[0][j] as u128 + a[i][1] as u128 * b[1][j] as u128) % m) as u64
        };
        Ok(Self { m: self.m, alpha: entry(0, 0), beta: entry(0, 1), gamma: entry(1, 0), delta: entry(1, 1) })
    }
}

impl fmt::Display for MatrixModM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// The isomorphism onto matrices:
///
/// ```text
/// alpha = q1 - 2r q3 - 2s q4      beta  =  q2 - 2s q3 + 2r q4
/// gamma = -q2 - 2s q3 + 2r q4     delta =  q1 + 2r q3 + 2s q4
/// ```
pub fn tau(q: &ResidueElement, p: &RSParams) -> Result<MatrixModM> {
    if q.m != p.m {
        return Err(Error::ModulusMismatch(q.m, p.m));
    }
    let [q1, q2, q3, q4] = q.q.map(i128::from);
    let (r, s) = (i128::from(p.r), i128::from(p.s));
    let m = i128::from(p.m);
    let red = |x: i128| x.rem_euclid(m) as u64;
    Ok(MatrixModM {
        m: p.m,
        alpha: red(q1 - 2 * r * q3 - 2 * s * q4),
        beta: red(q2 - 2 * s * q3 + 2 * r * q4),
        gamma: red(-q2 - 2 * s * q3 + 2 * r * q4),
        delta: red(q1 + 2 * r * q3 + 2 * s * q4),
    })
}

/// Inverse of [`tau`]: `2q1 = a + d`, `2q2 = b - c`, `2q3 = r(a - d) + s(b + c)`,
/// `2q4 = s(a - d) - r(b + c)`.
pub fn tau_inv(mat: &MatrixModM, p: &RSParams) -> Result<ResidueElement> {
    if mat.m != p.m {
        return Err(Error::ModulusMismatch(mat.m, p.m));
    }
    let m = i128::from(p.m);
    let h = i128::from(inv2(p.m));
    let [a, b, c, d] = [mat.alpha, mat.beta, mat.gamma, mat.delta].map(i128::from);
    let (r, s) = (i128::from(p.r), i128::from(p.s));
    let q = [a + d, b - c, r * (a - d) + s * (b + c), s * (a - d) - r * (b + c)]
        .map(|x| (x.rem_euclid(m) * h).rem_euclid(m) as u64);
    Ok(ResidueElement { m: p.m, q })
}

/// `m^3 prod (1 - 1/p^2)(1 + 1/p)` over primes `p | m`.
pub fn count_psi(m: u64) -> Result<u128> {
    check_modulus(m)?;
    let m3 = (m as u128).pow(3);
    let mut acc = m3;
    for p in prime_divisors(m) {
        let p = p as u128;
        acc = acc / (p * p * p) * ((p * p - 1) * (p + 1));
    }
    Ok(acc)
}

/// Residues primitive to `m` with norm `= 0 (mod m)`, by full enumeration.
pub fn count_psi_enum(m: u64) -> Result<u128> {
    check_modulus(m)?;
    Ok(residues(m).filter(|q| q.is_primitive() && q.norm_mod() == 0).count() as u128)
}

/// `m^3 prod (1 - 1/p^2)` over primes `p | m`.
pub fn count_norm1(m: u64) -> Result<u128> {
    check_modulus(m)?;
    let mut acc = (m as u128).pow(3);
    for p in prime_divisors(m) {
        let p = p as u128;
        acc = acc / (p * p) * (p * p - 1);
    }
    Ok(acc)
}

pub fn count_norm1_enum(m: u64) -> Result<u128> {
    check_modulus(m)?;
    let one = 1 % m;
    Ok(residues(m).filter(|q| q.norm_mod() == one).count() as u128)
}

/// Number of residues `x` with `x f = 0 (mod p)`.
pub fn count_annihilator_enum(f: &ResidueElement, p: u64) -> Result<u64> {
    if !crate::arith::is_prime(p) || p == 2 {
        return Err(Error::NotOddPrime(p));
    }
    if f.m != p {
        return Err(Error::ModulusMismatch(f.m, p));
    }
    if !f.is_primitive() {
        return Err(Error::NotPrimitiveTo(p));
    }
    if f.norm_mod() != 0 {
        return Err(Error::NormNotDivisible { norm: f.norm_mod(), p });
    }
    let mut count = 0;
    for x in residues(p) {
        if x.mul(f)?.is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

/// `2^{-1} mod m`, exposed for callers composing their own congruences.
pub fn half_mod(m: u64) -> Result<u64> {
    check_modulus(m)?;
    Ok(mod_inverse(2, m).unwrap_or(0))
}
