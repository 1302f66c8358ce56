use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::minimal_pair::minimal_pair_of_rational;
use crate::rational::{first_exponent_from, format_rat};
use crate::serial::rat_str;
use crate::{Error, MinimalPair, NatPoly, Rat, Result};

/// `divisor | dividend` in `N0[q]`, witnessed by a presentation of the quotient
/// `dividend - divisor` over the atoms `q^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityCertificate {
    #[serde(with = "rat_str")]
    pub dividend: Rat,
    #[serde(with = "rat_str")]
    pub divisor: Rat,
    #[serde(rename = "quotient_presentation")]
    pub quotient: NatPoly,
}

impl DivisibilityCertificate {
    /// Multiplicities are nonnegative by construction, so only the value needs checking.
    pub fn verify(&self, q: &Rat) -> bool {
        self.quotient.eval(q) == &self.dividend - &self.divisor
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    #[serde(with = "rat_str")]
    pub beta: Rat,
    pub presentation: NatPoly,
    /// `q^k | beta`.
    pub certificate: DivisibilityCertificate,
}

/// The four checks that together prove `omega(q^k) > K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessChecks {
    pub value_match: bool,
    pub support_above_threshold: bool,
    pub threshold_bound: bool,
    pub certificate_valid: bool,
}

impl SoundnessChecks {
    pub fn passed(&self) -> bool {
        self.value_match && self.support_above_threshold && self.threshold_bound && self.certificate_valid
    }
}

/// An element `x` divisible by `q^k` whose factorization uses only atoms
/// `q^i` with `i >= N`, where `K q^N < q^k`. No sum of at most `K` of its atoms
/// reaches `q^k`, so `q^k` divides no such sub-sum and `omega(q^k) > K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaWitness {
    #[serde(with = "rat_str")]
    pub q: Rat,
    pub atom_power: usize,
    #[serde(rename = "K")]
    pub bound: u64,
    #[serde(rename = "N")]
    pub threshold: usize,
    #[serde(with = "rat_str")]
    pub x: Rat,
    pub x_presentation: NatPoly,
    pub certificate: DivisibilityCertificate,
    pub checks: SoundnessChecks,
}

impl OmegaWitness {
    /// Re-runs the checks from the stored data alone.
    pub fn verify(&self) -> SoundnessChecks {
        let q = &self.q;
        let atom = num_traits::pow(q.clone(), self.atom_power);
        let bound = Rat::from_integer(self.bound.into()) * num_traits::pow(q.clone(), self.threshold);
        SoundnessChecks {
            value_match: self.x_presentation.eval(q) == self.x,
            support_above_threshold: self
                .x_presentation
                .order()
                .is_ok_and(|o| o >= self.threshold),
            threshold_bound: bound < atom,
            certificate_valid: self.certificate.verify(q)
                && self.certificate.dividend == self.x
                && self.certificate.divisor == atom,
        }
    }
}

fn pair_below_one(q: &Rat) -> Result<MinimalPair> {
    if *q <= Rat::zero() || *q >= Rat::one() {
        return Err(Error::Regime(format!(
            "anti-prime witnesses need 0 < q < 1, got {}",
            format_rat(q)
        )));
    }
    if q.numer().is_one() {
        return Err(Error::NotAtomic);
    }
    minimal_pair_of_rational(q)
}

/// `beta_0 = q^k, ..., beta_n`, each `beta_{i+1}` obtained by rewriting the
/// lowest-level mass `m q^{k+i}` of `beta_i` as `m q^{k+i} q0(q)` presented by
/// `m X^{k+i} p(X)`, where `b X = p` and `a = q0` form the minimal pair of `q`.
///
/// Then `beta_{i+1} - beta_i = m q^{k+i} (q0(q) - 1)` and `q0 - 1` has
/// nonnegative coefficients, so the certificates accumulate.
pub fn antiprime_witness_chain(q: &Rat, k: usize, n: usize) -> Result<Vec<ChainLink>> {
    let pair = pair_below_one(q)?;
    let q0_minus_one = {
        let mut p = pair.q0.clone();
        let c0 = p.coeff(0);
        p.set_coeff(0, c0 - BigUint::one());
        p
    };
    let divisor = num_traits::pow(q.clone(), k);
    let mut presentation = NatPoly::monomial(k, BigUint::one());
    let mut quotient = NatPoly::zero();
    let mut chain = Vec::with_capacity(n + 1);
    chain.push(link(q, &presentation, &quotient, &divisor));
    for i in 0..n {
        let level = k + i;
        let m = presentation.coeff(level);
        debug_assert_eq!(presentation.order().ok(), Some(level));
        presentation.set_coeff(level, BigUint::zero());
        let mono = NatPoly::monomial(level, m);
        presentation = &presentation + &(&mono * &pair.p);
        quotient = &quotient + &(&mono * &q0_minus_one);
        chain.push(link(q, &presentation, &quotient, &divisor));
    }
    Ok(chain)
}

fn link(q: &Rat, presentation: &NatPoly, quotient: &NatPoly, divisor: &Rat) -> ChainLink {
    let beta = presentation.eval(q);
    ChainLink {
        certificate: DivisibilityCertificate {
            dividend: beta.clone(),
            divisor: divisor.clone(),
            quotient: quotient.clone(),
        },
        beta,
        presentation: presentation.clone(),
    }
}

/// The least `N` with `K q^N < q^k`, and the chain element `beta_{N-k}`.
pub fn omega_lower_bound(q: &Rat, k: usize, bound: u64) -> Result<OmegaWitness> {
    pair_below_one(q)?;
    if bound == 0 {
        return Err(Error::InvalidArgument("K must be positive".into()));
    }
    let atom = num_traits::pow(q.clone(), k);
    let scale = Rat::from_integer(bound.into());
    let threshold = first_exponent_from(q, k, |p| &scale * p < atom);
    let chain = antiprime_witness_chain(q, k, threshold - k)?;
    let last = chain.into_iter().last().expect("chain is never empty");
    let mut witness = OmegaWitness {
        q: q.clone(),
        atom_power: k,
        bound,
        threshold,
        x: last.beta,
        x_presentation: last.presentation,
        certificate: last.certificate,
        checks: SoundnessChecks {
            value_match: false,
            support_above_threshold: false,
            threshold_bound: false,
            certificate_valid: false,
        },
    };
    witness.checks = witness.verify();
    Ok(witness)
}
