//! Elasticity of `N0[alpha]` when its atoms are exactly `1, alpha, ..., alpha^n`
//! for `n` the degree of the minimal polynomial.
//!
//! Whether `alpha^k` is an atom is decided in the power basis: reduce every
//! power modulo the minimal polynomial to an integer coordinate vector, then
//! look for nonnegative multiplicities of the lower powers reproducing the
//! coordinates of `alpha^k`. Multiplicities are bounded by `alpha^{k-j}`, which
//! the isolating interval bounds from above.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::minimal_pair::{minimal_pair, to_rat_poly};
use crate::serial::rat_str;
use crate::{Error, IntPoly, Rat, Result};

/// Default limit on search nodes per power.
pub const DEFAULT_SEARCH_CAP: usize = 2_000_000;

/// An open interval `(lo, hi)` with rational endpoints containing the root of interest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "rat_str")]
    pub lo: Rat,
    #[serde(with = "rat_str")]
    pub hi: Rat,
}

impl IsolatingInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "empty isolating interval ({lo}, {hi})"
            )));
        }
        Ok(Self { lo, hi })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FormulaStatus {
    /// The atom hypothesis holds and the formula applies.
    Value {
        #[serde(with = "rat_str")]
        elasticity: Rat,
    },
    /// The hypothesis is refuted; `reason` says how.
    Inapplicable { reason: Inapplicable },
    /// The searches ran out of budget before deciding the hypothesis.
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inapplicable {
    /// Exactly `deg` atoms: the monoid is free, elasticity 1.
    UniqueFactorization,
    /// Finitely generated, but with more than `deg + 1` atoms.
    TooManyAtoms { count: usize },
    /// `alpha^{deg+1}` and every power up to the budget are atoms, which is
    /// evidence that the monoid is not finitely generated.
    NoDecompositionWithinBudget,
    /// `alpha < 1`: zero is a limit point, so the monoid is not finitely generated.
    RootBelowOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub degree: usize,
    /// Exponents `k` for which `alpha^k` was shown to be an atom.
    pub atoms: Vec<usize>,
    /// First exponent shown to decompose, if any.
    pub first_decomposable: Option<usize>,
    pub status: FormulaStatus,
}

/// `minpoly` must be monic with integer coefficients and degree at least 2;
/// it is trusted to be irreducible with a single root in `root`.
pub fn elasticity_formula(
    minpoly: &IntPoly,
    root: &IsolatingInterval,
    atom_budget: usize,
    search_cap: usize,
) -> Result<FormulaReport> {
    let degree = minpoly.degree().ok_or(Error::ZeroPolynomial)?;
    if !minpoly.leading_coeff().is_some_and(|c| c.is_one()) {
        return Err(Error::NotMonic);
    }
    if degree < 2 {
        return Err(Error::InvalidArgument(
            "elasticity formula needs a minimal polynomial of degree at least 2".into(),
        ));
    }
    let f = to_rat_poly(minpoly);
    let (at_lo, at_hi) = (f.eval(&root.lo), f.eval(&root.hi));
    if !(at_lo.is_negative() ^ at_hi.is_negative()) || at_lo.is_zero() || at_hi.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "no sign change of the minimal polynomial on ({}, {})",
            root.lo, root.hi
        )));
    }
    if root.lo.is_negative() {
        return Err(Error::InvalidArgument("the root must be positive".into()));
    }

    let report = |atoms, first, status| FormulaReport {
        degree,
        atoms,
        first_decomposable: first,
        status,
    };
    if root.hi <= Rat::one() {
        return Ok(report(
            Vec::new(),
            None,
            FormulaStatus::Inapplicable {
                reason: Inapplicable::RootBelowOne,
            },
        ));
    }
    if root.lo < Rat::one() {
        return Ok(report(
            Vec::new(),
            None,
            FormulaStatus::Inconclusive {
                reason: "isolating interval contains 1; refine it".into(),
            },
        ));
    }

    let coords = PowerBasis::new(minpoly, degree);
    // 1, alpha, ..., alpha^{deg-1} are linearly independent over Q, so none decomposes.
    let mut atoms: Vec<usize> = (0..degree).collect();
    let mut first = None;
    for k in degree..=atom_budget {
        match decomposes(&coords, k, root, search_cap) {
            Some(true) => {
                first = Some(k);
                break;
            }
            Some(false) => atoms.push(k),
            None => {
                return Ok(report(
                    atoms,
                    None,
                    FormulaStatus::Inconclusive {
                        reason: format!("search cap exhausted while testing alpha^{k}"),
                    },
                ))
            }
        }
    }

    // If alpha^m decomposes then so does alpha^{m+1} = alpha * alpha^m, so the
    // atoms are exactly the powers below the first decomposable one.
    let status = match first {
        Some(k) if k == degree => FormulaStatus::Inapplicable {
            reason: Inapplicable::UniqueFactorization,
        },
        Some(k) if k == degree + 1 => {
            let pair = minimal_pair(&f)?;
            let (p1, q1) = (BigInt::from(pair.p_len()), BigInt::from(pair.q0_len()));
            let ratio = Rat::new(p1.clone(), q1.clone()).max(Rat::new(q1, p1));
            FormulaStatus::Value { elasticity: ratio }
        }
        Some(k) => FormulaStatus::Inapplicable {
            reason: Inapplicable::TooManyAtoms { count: k },
        },
        None if atom_budget > degree => FormulaStatus::Inapplicable {
            reason: Inapplicable::NoDecompositionWithinBudget,
        },
        None => FormulaStatus::Inconclusive {
            reason: format!(
                "atom budget {atom_budget} does not reach alpha^{}",
                degree + 1
            ),
        },
    };
    Ok(report(atoms, first, status))
}

/// Coordinates of `X^k mod minpoly` in the basis `1, X, ..., X^{deg-1}`.
struct PowerBasis {
    minpoly: IntPoly,
    degree: usize,
}

impl PowerBasis {
    fn new(minpoly: &IntPoly, degree: usize) -> Self {
        Self {
            minpoly: minpoly.clone(),
            degree,
        }
    }

    fn coords(&self, k: usize) -> Vec<BigInt> {
        let r = IntPoly::monomial(k, BigInt::one()).rem_monic(&self.minpoly);
        (0..self.degree).map(|i| r.coeff(i)).collect()
    }
}

/// `Some(true)` if `alpha^k` is a sum of at least two lower powers,
/// `Some(false)` if provably not, `None` if the search cap was hit.
fn decomposes(basis: &PowerBasis, k: usize, root: &IsolatingInterval, cap: usize) -> Option<bool> {
    let n = basis.degree;
    let target = basis.coords(k);
    // powers alpha^j for n <= j < k are the free unknowns; lower ones are unit vectors
    let free: Vec<(usize, Vec<BigInt>)> = (n..k).map(|j| (j, basis.coords(j))).collect();
    let hi_k = num_traits::pow(root.hi.clone(), k);
    let lo_pows: Vec<Rat> = free
        .iter()
        .map(|(j, _)| num_traits::pow(root.lo.clone(), *j))
        .collect();
    let bounds: Vec<BigInt> = free
        .iter()
        .map(|(j, _)| num_traits::pow(root.hi.clone(), k - j).floor().to_integer())
        .collect();

    let mut search = Search {
        free: &free,
        bounds: &bounds,
        lo_pows: &lo_pows,
        hi_k: &hi_k,
        cap,
        nodes: 0,
    };
    search.run(0, target, Rat::zero(), BigInt::zero())
}

struct Search<'a> {
    free: &'a [(usize, Vec<BigInt>)],
    bounds: &'a [BigInt],
    lo_pows: &'a [Rat],
    hi_k: &'a Rat,
    cap: usize,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self, idx: usize, residual: Vec<BigInt>, value_lo: Rat, used: BigInt) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return None;
        }
        if idx == self.free.len() {
            if residual.iter().any(|c| c.is_negative()) {
                return Some(false);
            }
            let total: BigInt = residual.iter().sum::<BigInt>() + used;
            return Some(total >= BigInt::from(2));
        }
        let (_, v) = &self.free[idx];
        let mut c = BigInt::zero();
        let mut residual = residual;
        let mut value_lo = value_lo;
        while c <= self.bounds[idx] {
            // the lower estimate of the chosen mass may not exceed alpha^k
            if value_lo > *self.hi_k {
                break;
            }
            match self.run(idx + 1, residual.clone(), value_lo.clone(), &used + &c) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            for (r, x) in residual.iter_mut().zip(v) {
                *r -= x;
            }
            value_lo += self.lo_pows[idx].clone();
            c += 1;
        }
        Some(false)
    }
}
