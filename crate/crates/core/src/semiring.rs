//! The additive monoid `N0[q]` generated by the powers of a rational `q = a/b > 1`.
//!
//! For non-integer `q` the atoms are exactly the powers `q^n`, so a
//! factorization is a polynomial with nonnegative coefficients: the coefficient
//! at degree `i` is the multiplicity of the atom `q^i`. Two length-changing
//! moves relate the factorizations of an element:
//!
//! * up move at degree `j`: `a` copies of `q^j` become `b` copies of `q^{j+1}`,
//!   shortening the factorization by `a - b`;
//! * down move at degree `j + 1`: the inverse, lengthening it by `a - b`.
//!
//! Every factorization rewrites by up moves to the unique one whose
//! coefficients are all below `a` (the minimum-length factorization), and by
//! down moves to the unique one whose coefficients at positive degrees are all
//! below `b` (the maximum-length factorization).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rat, max_exponent_at_most, mod_inverse};
use crate::serial::{big_num, big_num_vec, rat_str};
use crate::{Error, NatPoly, Rat, Result};

/// Default frontier budget of the enumeration oracle.
pub const DEFAULT_ORACLE_CAP: usize = 1_000_000;

/// A rational `q = a/b > 1` in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalBase {
    q: Rat,
    a: BigUint,
    b: BigUint,
}

impl RationalBase {
    pub fn new(q: Rat) -> Result<Self> {
        if q <= Rat::one() {
            return Err(Error::Regime(format!(
                "q must be a rational greater than 1, got {}",
                format_rat(&q)
            )));
        }
        let a = q.numer().magnitude().clone();
        let b = q.denom().magnitude().clone();
        Ok(Self { q, a, b })
    }

    pub fn from_parts(a: u64, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Self::new(Rat::new(a.into(), b.into()))
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    /// Numerator of `q`.
    pub fn a(&self) -> &BigUint {
        &self.a
    }

    /// Denominator of `q`.
    pub fn b(&self) -> &BigUint {
        &self.b
    }

    /// For integer `q` the monoid is `N0`, which has unique factorization.
    pub fn is_integer(&self) -> bool {
        self.b.is_one()
    }

    /// The atom `q^n`.
    pub fn atom(&self, n: usize) -> Rat {
        num_traits::pow(self.q.clone(), n)
    }

    /// Largest `e` with `q^e <= x`; `None` when `x < 1`.
    pub fn max_exponent(&self, x: &Rat) -> Option<usize> {
        max_exponent_at_most(&self.q, x)
    }

    pub fn value_of(&self, z: &Factorization) -> Rat {
        z.0.eval(&self.q)
    }

    /// Decides `x in N0[q]`, returning a witness factorization when it is.
    ///
    /// The witness is the maximum-length factorization, obtained level by level
    /// from the top exponent: after scaling by `b^E` the multiplicity at each
    /// level is pinned modulo `b`, so a single residual survives per level.
    pub fn is_member(&self, x: &Rat) -> Result<Option<Factorization>> {
        let Some(scaled) = self.scaled_target(x)? else {
            return Ok(None);
        };
        let Scaled { top, mut residual } = scaled;
        if self.is_integer() {
            return Ok(Some(Factorization::from_poly(NatPoly::constant(
                residual.magnitude().clone(),
            ))));
        }
        let ladder = Ladder::new(self, top);
        let mut coeffs = NatPoly::zero();
        for level in (1..=top).rev() {
            let n = ladder.forced_residue(&residual, level);
            residual -= &n * &ladder.a_pow[level];
            if residual.is_negative() {
                return Ok(None);
            }
            debug_assert!(residual.is_multiple_of(&ladder.b));
            residual /= &ladder.b;
            coeffs.add_term(level, n.magnitude().clone());
        }
        coeffs.add_term(0, residual.magnitude().clone());
        Ok(Some(Factorization::from_poly(coeffs)))
    }

    /// Witness that `y - x` lies in `N0[q]`, i.e. that `x` divides `y`.
    pub fn divides(&self, x: &Rat, y: &Rat) -> Result<Option<Factorization>> {
        if y < x {
            return Ok(None);
        }
        self.is_member(&(y - x))
    }

    /// Applies up moves, lowest degree first, until every coefficient is below `a`.
    pub fn up_normal_form(&self, z: &Factorization) -> Factorization {
        if self.is_integer() {
            return self.integer_collapse(z);
        }
        let mut coeffs = z.0.clone();
        let mut at = coeffs.order().unwrap_or(0);
        while let Some(j) = coeffs.next_degree_from(at) {
            let c = coeffs.coeff(j);
            if c >= self.a {
                let (carry, rest) = c.div_rem(&self.a);
                coeffs.set_coeff(j, rest);
                coeffs.add_term(j + 1, carry * &self.b);
            }
            at = j + 1;
        }
        Factorization(coeffs)
    }

    /// Applies down moves, highest degree first, until every coefficient at a
    /// positive degree is below `b`.
    pub fn down_normal_form(&self, z: &Factorization) -> Factorization {
        if self.is_integer() {
            return self.integer_collapse(z);
        }
        let mut coeffs = z.0.clone();
        let mut at = coeffs.degree().unwrap_or(0);
        while at >= 1 {
            let Some(j) = coeffs.prev_degree_upto(at) else {
                break;
            };
            if j == 0 {
                break;
            }
            let c = coeffs.coeff(j);
            if c >= self.b {
                let (carry, rest) = c.div_rem(&self.b);
                coeffs.set_coeff(j, rest);
                coeffs.add_term(j - 1, carry * &self.a);
            }
            at = j - 1;
        }
        Factorization(coeffs)
    }

    /// Applies a single move, or returns `None` when it is not applicable.
    pub fn apply_move(&self, z: &Factorization, mv: Move) -> Option<Factorization> {
        let mut coeffs = z.0.clone();
        match mv {
            Move::Up { degree } => {
                let c = coeffs.coeff(degree);
                if c < self.a {
                    return None;
                }
                coeffs.set_coeff(degree, c - &self.a);
                coeffs.add_term(degree + 1, self.b.clone());
            }
            Move::Down { degree } => {
                let c = coeffs.coeff(degree);
                if degree == 0 || c < self.b {
                    return None;
                }
                coeffs.set_coeff(degree, c - &self.b);
                coeffs.add_term(degree - 1, self.a.clone());
            }
        }
        Some(Factorization(coeffs))
    }

    /// Every move applicable to `z`, in increasing degree, up moves first.
    pub fn available_moves(&self, z: &Factorization) -> Vec<Move> {
        if self.is_integer() {
            return Vec::new();
        }
        let mut ups = Vec::new();
        let mut downs = Vec::new();
        for (d, c) in z.0.terms() {
            if *c >= self.a {
                ups.push(Move::Up { degree: d });
            }
            if d >= 1 && *c >= self.b {
                downs.push(Move::Down { degree: d });
            }
        }
        ups.extend(downs);
        ups
    }

    /// Exhaustive enumeration of every factorization of `x`.
    ///
    /// This is the brute-force oracle against which the normal forms are
    /// checked. Exponents are bounded by the largest `e` with `q^e <= x`; at each
    /// level the multiplicity ranges over one residue class modulo `b`.
    /// `cap` bounds the number of search states visited.
    pub fn enumerate_factorizations(&self, x: &Rat, cap: usize) -> Result<BTreeSet<Factorization>> {
        let mut out = BTreeSet::new();
        let Some(Scaled { top, residual }) = self.scaled_target(x)? else {
            return Ok(out);
        };
        if self.is_integer() {
            out.insert(Factorization::from_poly(NatPoly::constant(
                residual.magnitude().clone(),
            )));
            return Ok(out);
        }
        let ladder = Ladder::new(self, top);
        let mut search = Enumeration {
            ladder: &ladder,
            cap,
            explored: 0,
            partial: Vec::with_capacity(top + 1),
            out: &mut out,
        };
        search.descend(top, residual)?;
        Ok(out)
    }

    /// Length statistics of `x`. With `full_set = Some(cap)` the full length set
    /// is computed through the enumeration oracle.
    pub fn length_stats(&self, x: &Rat, full_set: Option<usize>) -> Result<LengthStats> {
        if x.is_zero() {
            return Err(Error::InvalidArgument(
                "the zero element has no factorization lengths".into(),
            ));
        }
        let witness = self.is_member(x)?.ok_or_else(|| Error::NotMember {
            q: format_rat(&self.q),
            value: format_rat(x),
        })?;
        let mut stats = self.length_stats_of(&witness);
        if let Some(cap) = full_set {
            let all = self.enumerate_factorizations(x, cap)?;
            let set: BTreeSet<BigUint> = all.iter().map(Factorization::length).collect();
            stats.length_set = Some(set.into_iter().collect());
        }
        Ok(stats)
    }

    /// Length statistics read off any single factorization, with no membership search.
    pub fn length_stats_of(&self, z: &Factorization) -> LengthStats {
        let min_len = self.up_normal_form(z).length();
        let max_len = self.down_normal_form(z).length();
        LengthStats::new(min_len, max_len)
    }

    /// `a - b`, the length change of a single move.
    pub fn move_step(&self) -> BigUint {
        &self.a - &self.b
    }

    fn integer_collapse(&self, z: &Factorization) -> Factorization {
        let value = self.value_of(z).to_integer();
        Factorization(NatPoly::constant(value.magnitude().clone()))
    }

    /// `x * b^E` as an integer together with `E`, or `None` when `x` cannot be
    /// an element (below 1, or a denominator not dividing `b^E`).
    fn scaled_target(&self, x: &Rat) -> Result<Option<Scaled>> {
        if x.is_negative() {
            return Err(Error::NegativeValue(format_rat(x)));
        }
        if x.is_zero() {
            return Ok(Some(Scaled {
                top: 0,
                residual: BigInt::zero(),
            }));
        }
        if self.is_integer() {
            return Ok(x.is_integer().then(|| Scaled {
                top: 0,
                residual: x.to_integer(),
            }));
        }
        let Some(top) = self.max_exponent(x) else {
            return Ok(None);
        };
        let b = BigInt::from(self.b.clone());
        let scaled = x * Rat::from_integer(num_traits::pow(b, top));
        if !scaled.is_integer() {
            return Ok(None);
        }
        Ok(Some(Scaled {
            top,
            residual: scaled.to_integer(),
        }))
    }
}

impl fmt::Debug for RationalBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalBase({})", self.q)
    }
}

impl fmt::Display for RationalBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

struct Scaled {
    top: usize,
    residual: BigInt,
}

/// Powers of `a` and inverse powers of `a` modulo `b` up to a fixed level.
struct Ladder {
    b: BigInt,
    a_pow: Vec<BigInt>,
    inv_pow: Vec<BigInt>,
}

impl Ladder {
    fn new(base: &RationalBase, top: usize) -> Self {
        let a = BigInt::from(base.a.clone());
        let b = BigInt::from(base.b.clone());
        let inv = mod_inverse(&a, &b);
        let mut a_pow = Vec::with_capacity(top + 1);
        let mut inv_pow = Vec::with_capacity(top + 1);
        let (mut ap, mut ip) = (BigInt::one(), BigInt::one().mod_floor(&b));
        for _ in 0..=top {
            a_pow.push(ap.clone());
            inv_pow.push(ip.clone());
            ap *= &a;
            ip = (ip * &inv).mod_floor(&b);
        }
        Self { b, a_pow, inv_pow }
    }

    /// The residue modulo `b` that the multiplicity at `level` must have for a
    /// residual `sum_{j <= level} n_j a^j b^{level - j}`.
    fn forced_residue(&self, residual: &BigInt, level: usize) -> BigInt {
        (residual.mod_floor(&self.b) * &self.inv_pow[level]).mod_floor(&self.b)
    }
}

struct Enumeration<'a> {
    ladder: &'a Ladder,
    cap: usize,
    explored: usize,
    partial: Vec<(usize, BigUint)>,
    out: &'a mut BTreeSet<Factorization>,
}

impl Enumeration<'_> {
    fn descend(&mut self, level: usize, residual: BigInt) -> Result<()> {
        self.explored += 1;
        if self.explored > self.cap {
            return Err(Error::OracleBudgetExhausted {
                explored: self.explored - 1,
            });
        }
        if level == 0 {
            let mut coeffs = NatPoly::from_terms(self.partial.iter().cloned());
            coeffs.add_term(0, residual.magnitude().clone());
            self.out.insert(Factorization(coeffs));
            return Ok(());
        }
        let a_pow = &self.ladder.a_pow[level];
        let mut n = self.ladder.forced_residue(&residual, level);
        loop {
            let rest = &residual - &n * a_pow;
            if rest.is_negative() {
                break;
            }
            self.partial.push((level, n.magnitude().clone()));
            self.descend(level - 1, rest / &self.ladder.b)?;
            self.partial.pop();
            n += &self.ladder.b;
        }
        Ok(())
    }
}

/// A factorization in `N0[q]`: the coefficient at degree `i` is the
/// multiplicity of the atom `q^i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Factorization(NatPoly);

impl Factorization {
    pub fn from_poly(coeffs: NatPoly) -> Self {
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &NatPoly {
        &self.0
    }

    pub fn into_poly(self) -> NatPoly {
        self.0
    }

    /// Number of atoms, counted with multiplicity.
    pub fn length(&self) -> BigUint {
        self.0.coeff_sum()
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// `a q^degree -> b q^{degree + 1}`.
    Up { degree: usize },
    /// `b q^degree -> a q^{degree - 1}`.
    Down { degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthStats {
    #[serde(rename = "min_length", with = "big_num")]
    pub min_len: BigUint,
    #[serde(rename = "max_length", with = "big_num")]
    pub max_len: BigUint,
    #[serde(with = "rat_str")]
    pub elasticity: Rat,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_lengths"
    )]
    pub length_set: Option<Vec<BigUint>>,
}

impl LengthStats {
    pub fn new(min_len: BigUint, max_len: BigUint) -> Self {
        let elasticity = Rat::new(BigInt::from(max_len.clone()), BigInt::from(min_len.clone()));
        Self {
            min_len,
            max_len,
            elasticity,
            length_set: None,
        }
    }

    /// Lengths of the progression `min, min + step, ..., max` absent from the
    /// length set. Empty when no length set was computed.
    pub fn missing_from_progression(&self, step: &BigUint) -> Vec<BigUint> {
        let Some(set) = &self.length_set else {
            return Vec::new();
        };
        let present: BTreeSet<&BigUint> = set.iter().collect();
        let mut missing = Vec::new();
        let mut l = self.min_len.clone();
        while l <= self.max_len && !step.is_zero() {
            if !present.contains(&l) {
                missing.push(l.clone());
            }
            l += step;
        }
        missing
    }
}

mod opt_lengths {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigUint>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => big_num_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigUint>>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "big_num_vec")] Vec<BigUint>);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// Converts a small length to `u64` for display or indexing; panics if it does not fit.
pub fn small(n: &BigUint) -> u64 {
    n.to_u64().expect("length fits in u64")
}
