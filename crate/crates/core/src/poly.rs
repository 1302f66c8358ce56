//! Sparse univariate polynomials.
//!
//! `Poly<C>` stores only nonzero coefficients, keyed by degree. The same type
//! backs integer polynomials ([`IntPoly`](crate::IntPoly)), polynomials with
//! nonnegative coefficients ([`NatPoly`](crate::NatPoly), which double as
//! factorizations), and rational polynomials ([`RatPoly`](crate::RatPoly)).

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Conversion of a coefficient into the ring a polynomial is evaluated in.
pub trait Lift<F> {
    fn lift(&self) -> F;
}

impl<T: Integer + Clone> Lift<Ratio<T>> for T {
    fn lift(&self) -> Ratio<T> {
        Ratio::from_integer(self.clone())
    }
}

impl<T: Integer + Clone> Lift<Ratio<T>> for Ratio<T> {
    fn lift(&self) -> Ratio<T> {
        self.clone()
    }
}

impl Lift<Ratio<BigInt>> for BigUint {
    fn lift(&self) -> Ratio<BigInt> {
        Ratio::from_integer(BigInt::from(self.clone()))
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<usize, C>,
}

impl<C> Default for Poly<C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Zero + Clone> Poly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(degree: usize, coeff: C) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff);
        p
    }

    pub fn constant(coeff: C) -> Self {
        Self::monomial(0, coeff)
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs; repeated degrees
    /// are summed and zero coefficients dropped.
    pub fn from_terms<I: IntoIterator<Item = (usize, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * X^degree` in place.
    pub fn add_term(&mut self, degree: usize, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(degree) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Overwrites the coefficient at `degree` (removing it when zero).
    pub fn set_coeff(&mut self, degree: usize, coeff: C) {
        if coeff.is_zero() {
            self.terms.remove(&degree);
        } else {
            self.terms.insert(degree, coeff);
        }
    }

    pub fn coeff(&self, degree: usize) -> C {
        self.terms.get(&degree).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &C)> + '_ {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest degree with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    /// Smallest stored degree `>= from`.
    pub fn next_degree_from(&self, from: usize) -> Option<usize> {
        self.terms.range(from..).next().map(|(d, _)| *d)
    }

    /// Largest stored degree `<= upto`.
    pub fn prev_degree_upto(&self, upto: usize) -> Option<usize> {
        self.terms.range(..=upto).next_back().map(|(d, _)| *d)
    }

    /// The set of exponents of the monomials of `self`.
    pub fn support(&self) -> Result<BTreeSet<usize>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.terms.keys().copied().collect())
    }

    /// Minimum of the support, i.e. the largest `d` with `X^d` dividing `self`.
    pub fn order(&self) -> Result<usize> {
        self.terms.keys().next().copied().ok_or(Error::ZeroPolynomial)
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        Self {
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    /// Value at `X = 1`: the sum of the coefficients. For a factorization this
    /// is its length.
    pub fn coeff_sum(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    pub fn map_coeffs<D: Zero + Clone, F: FnMut(&C) -> D>(&self, mut f: F) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(d, c)| (*d, f(c))))
    }

    /// Exact value `sum c_i x^i`.
    pub fn eval<F>(&self, x: &F) -> F
    where
        C: Lift<F>,
        F: Clone + Zero + One + Mul<Output = F> + Add<Output = F>,
    {
        let mut acc = F::zero();
        let mut power = F::one();
        let mut at = 0usize;
        for (d, c) in self.terms.iter() {
            power = power * num_traits::pow(x.clone(), d - at);
            at = *d;
            acc = acc + c.lift() * power.clone();
        }
        acc
    }
}

impl<C: Zero + Clone + PartialOrd> Poly<C> {
    /// Number of sign changes in the coefficient sequence read by increasing
    /// degree (zero coefficients are not stored, hence skipped).
    pub fn sign_variations(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let zero = C::zero();
        let signs: Vec<bool> = self.terms.values().map(|c| *c > zero).collect();
        Ok(signs.windows(2).filter(|w| w[0] != w[1]).count())
    }
}

impl<C: Zero + Clone> Add for &Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (d, c) in rhs.terms.iter() {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl<C: Zero + Clone> Add for Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Zero + Clone + Sub<Output = C>> Sub for &Poly<C> {
    type Output = Poly<C>;

    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (d, c) in rhs.terms.iter() {
            let cur = out.coeff(*d);
            out.set_coeff(*d, cur - c.clone());
        }
        out
    }
}

impl<C: Zero + Clone + Mul<Output = C>> Mul for &Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (d1, c1) in self.terms.iter() {
            for (d2, c2) in rhs.terms.iter() {
                out.add_term(d1 + d2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Zero + Clone + Mul<Output = C>> Mul for Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Zero + One + Clone + Mul<Output = C>> Poly<C> {
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(C::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<C> Poly<C>
where
    C: Zero + One + Clone + PartialEq + Sub<Output = C> + Mul<Output = C>,
{
    /// Remainder of division by a monic polynomial.
    ///
    /// Panics if `modulus` is zero or not monic.
    pub fn rem_monic(&self, modulus: &Poly<C>) -> Poly<C> {
        let n = modulus.degree().expect("nonzero modulus");
        assert!(
            modulus.leading_coeff().is_some_and(|c| c.is_one()),
            "modulus must be monic"
        );
        let mut r = self.clone();
        while let Some(d) = r.degree() {
            if d < n {
                break;
            }
            let lead = r.coeff(d);
            for (md, mc) in modulus.terms() {
                let cur = r.coeff(d - n + md);
                r.set_coeff(d - n + md, cur - lead.clone() * mc.clone());
            }
        }
        r
    }
}

impl Poly<BigUint> {
    /// Reinterprets a polynomial with nonnegative coefficients over the integers.
    pub fn to_int(&self) -> Poly<BigInt> {
        self.map_coeffs(|c| BigInt::from(c.clone()))
    }
}

impl Poly<BigInt> {
    /// Splits into positive and negated-negative parts, `self = pos - neg`.
    pub fn split_signs(&self) -> (Poly<BigUint>, Poly<BigUint>) {
        let mut pos = Poly::zero();
        let mut neg = Poly::zero();
        for (d, c) in self.terms() {
            let mag = c.magnitude().clone();
            if c.sign() == num_bigint::Sign::Minus {
                neg.add_term(d, mag);
            } else {
                pos.add_term(d, mag);
            }
        }
        (pos, neg)
    }
}

impl<C: fmt::Display + Zero + One + PartialEq + Clone> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = !c.is_one() || *d == 0;
            if show_coeff {
                write!(f, "{c}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{d}")?,
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|(d, c)| (d, c)))
            .finish()
    }
}
