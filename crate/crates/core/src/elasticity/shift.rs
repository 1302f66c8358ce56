use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::format_rat;
use crate::semiring::{Factorization, RationalBase};
use crate::serial::rat_str;
use crate::{Error, NatPoly, Rat, Result};

/// Result of adding atoms that every factorization must contain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedShift {
    #[serde(with = "rat_str")]
    pub element: Rat,
    pub presentation: NatPoly,
    pub forced_exponents: Vec<usize>,
}

/// Adds `shifts` atoms `q^n`, one at a time, each with the smallest `n` above
/// the current top degree such that `q^n (q - 1)` exceeds the current value.
///
/// Then `q^{n+1} > beta + q^n`, so no factorization of the new element uses a
/// larger atom, and every one of them contains `q^n`; the factorizations are
/// exactly the old ones plus `q^n` and both extreme lengths grow by one.
pub fn forced_atom_shift(
    base: &RationalBase,
    beta: &Rat,
    presentation: &NatPoly,
    shifts: usize,
) -> Result<ForcedShift> {
    if base.is_integer() {
        return Err(Error::Regime(format!(
            "forced atoms need a non-integer base, got {base}"
        )));
    }
    if beta.is_zero() {
        return Err(Error::InvalidArgument("beta must be nonzero".into()));
    }
    let mut presentation = presentation.clone();
    if base.value_of(&Factorization::from_poly(presentation.clone())) != *beta {
        return Err(Error::InvalidArgument(format!(
            "presentation {presentation} does not evaluate to {}",
            format_rat(beta)
        )));
    }

    let q = base.q();
    let q_minus_one = q - Rat::one();
    let mut element = beta.clone();
    let mut forced = Vec::with_capacity(shifts);
    let mut n = presentation.degree().unwrap_or(0) + 1;
    let mut power = base.atom(n);
    for _ in 0..shifts {
        while &power * &q_minus_one <= element {
            n += 1;
            power *= q;
        }
        presentation.add_term(n, One::one());
        element += &power;
        forced.push(n);
        n += 1;
        power *= q;
    }
    Ok(ForcedShift {
        element,
        presentation,
        forced_exponents: forced,
    })
}
