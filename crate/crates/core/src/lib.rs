//! Exact arithmetic in the quaternion order `H(1,2,2)` spanned by
//! `1, i, (1+i+sqrt2 j)/2, (1+i+sqrt2 k)/2`, whose norm form on the
//! sub-module spanned by `1, i, sqrt2 j, sqrt2 k` is `x^2 + y^2 + 2z^2 + 2w^2`.
//!
//! Layers, bottom up:
//!
//! * [`element`]: the ring itself, units, norms, lattice enumeration;
//! * [`euclid`]: one-sided division with remainder and gcds;
//! * [`dyadic`]: divisibility by `1 + i`, residues mod 2 and `2(1+i)`,
//!   primary associates;
//! * [`modm`]: residues mod odd `m` and the isomorphism onto 2x2 matrices;
//! * [`prime`]: primary primes and factorization;
//! * [`count`]: representation counts and the brute-force oracle.

pub mod arith;
pub mod count;
pub mod dyadic;
pub mod element;
pub mod error;
pub mod euclid;
pub mod modm;
pub mod prime;
pub mod text;

pub use dyadic::PrimaryClass;
pub use element::{units, HalfCoords, OrderElement};
pub use error::{Error, Result};
pub use euclid::{DivisionResult, GcdResult, Side};


pub use modm::{MatrixModM, RSParams, ResidueElement};
pub use prime::{Factorization, PrimaryPrime};
