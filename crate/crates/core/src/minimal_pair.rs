//! Minimal pairs of monic rational polynomials.
//!
//! For monic `f` with rational coefficients, let `ell` be the least positive
//! integer clearing its denominators. Then `ell * f = p - q0` for unique
//! `p, q0` with nonnegative integer coefficients and disjoint supports.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::serial::big_num;
use crate::{Error, IntPoly, NatPoly, Rat, RatPoly, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPair {
    #[serde(with = "big_num")]
    pub ell: BigUint,
    pub p: NatPoly,
    pub q0: NatPoly,
}

impl MinimalPair {
    /// `ell * f` reassembled as `p - q0`.
    pub fn scaled_poly(&self) -> IntPoly {
        &self.p.to_int() - &self.q0.to_int()
    }

    /// `p(1)`: the length of the factorization read off `p`.
    pub fn p_len(&self) -> BigUint {
        self.p.coeff_sum()
    }

    /// `q0(1)`.
    pub fn q0_len(&self) -> BigUint {
        self.q0.coeff_sum()
    }

    /// The same pair with `p` and `q0` exchanged, used to put the shorter side first.
    pub fn swapped(&self) -> Self {
        Self {
            ell: self.ell.clone(),
            p: self.q0.clone(),
            q0: self.p.clone(),
        }
    }
}

pub fn minimal_pair(f: &RatPoly) -> Result<MinimalPair> {
    let lead = f.leading_coeff().ok_or(Error::ZeroPolynomial)?;
    if !lead.is_one() {
        return Err(Error::NotMonic);
    }
    let ell = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scaled: IntPoly = f.map_coeffs(|c| (c * Rat::from_integer(ell.clone())).to_integer());
    let (p, q0) = scaled.split_signs();
    Ok(MinimalPair {
        ell: ell.magnitude().clone(),
        p,
        q0,
    })
}

/// Minimal pair of `X - q`, namely `(d(q), d(q) X, n(q))`.
pub fn minimal_pair_of_rational(q: &Rat) -> Result<MinimalPair> {
    if !q.is_positive() {
        return Err(Error::NonPositive(q.to_string()));
    }
    let f = RatPoly::from_terms([(1, Rat::one()), (0, -q.clone())]);
    minimal_pair(&f)
}

/// `ell * f` for a monic rational polynomial, as an integer polynomial.
pub fn clear_denominators(f: &RatPoly) -> Result<IntPoly> {
    Ok(minimal_pair(f)?.scaled_poly())
}

/// Rational polynomial with the integer coefficients of `f`.
pub fn to_rat_poly(f: &IntPoly) -> RatPoly {
    f.map_coeffs(|c| Rat::from_integer(c.clone()))
}
