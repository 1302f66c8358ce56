//! Exact computation of factorization invariants in cyclic rational semirings
//! `N0[q]` and interval Puiseux monoids.
//!
//! Everything is exact: rationals are reduced arbitrary-precision fractions and
//! polynomials are sparse maps from degree to coefficient. The polynomial and
//! rational helpers are generic over the integer type through `num-traits`; the
//! aliases below fix the arbitrary-precision instances used by the monoid code.
//!
//! * [`poly`], [`rational`]: sparse polynomials, evaluation, support, order,
//!   sign variations, and rational utilities.
//! * [`minimal_pair`]: the decomposition `ell * f = p - q0`.
//! * [`semiring`]: membership, normal forms, the enumeration oracle and length
//!   statistics in `N0[q]` for `q > 1`.
//! * [`elasticity`]: elasticity bounds, the elasticity formula, forced-atom
//!   shifts, certificates realizing a target elasticity, and elasticity scans.
//! * [`omega`]: omega-primality of interval monoids and anti-prime witnesses
//!   for `N0[q]` with `0 < q < 1`.

pub mod elasticity;
mod error;
pub mod minimal_pair;
pub mod omega;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod semiring;
pub mod serial;

use num_bigint::{BigInt, BigUint};

pub use error::{Error, Result};
pub use minimal_pair::{minimal_pair, minimal_pair_of_rational, MinimalPair};
pub use poly::Poly;
pub use semiring::{Factorization, LengthStats, RationalBase, DEFAULT_ORACLE_CAP};

/// Arbitrary-precision reduced rational.
pub type Rat = num_rational::Ratio<BigInt>;

/// Sparse polynomial with integer coefficients.
pub type IntPoly = Poly<BigInt>;

/// Sparse polynomial with nonnegative integer coefficients.
pub type NatPoly = Poly<BigUint>;

/// Sparse polynomial with rational coefficients.
pub type RatPoly = Poly<Rat>;
