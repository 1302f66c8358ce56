use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::semiring::{Factorization, RationalBase};
use crate::serial::{big_num, rat_str};
use crate::{NatPoly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    #[serde(with = "rat_str")]
    pub value: Rat,
    #[serde(with = "big_num")]
    pub min_len: BigUint,
    #[serde(with = "big_num")]
    pub max_len: BigUint,
    #[serde(with = "rat_str")]
    pub elasticity: Rat,
}

/// Rows sorted by value. `complete` is false when the budget cut the
/// enumeration short; the rows are then a deterministic subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    pub complete: bool,
}

impl ScanTable {
    pub fn get(&self, value: &Rat) -> Option<&ScanRow> {
        self.rows
            .binary_search_by(|r| r.value.cmp(value))
            .ok()
            .map(|i| &self.rows[i])
    }
}

/// Tabulates the elasticity of every nonzero element of `N0[q]` up to `value_bound`.
///
/// Each element has exactly one maximal factorization, whose coefficients at
/// positive degrees lie below `b`; enumerating those tuples lists every element
/// once. `budget` caps the number of elements.
pub fn elasticity_scan(base: &RationalBase, value_bound: &Rat, budget: usize) -> ScanTable {
    let mut found = Vec::new();
    let mut complete = true;
    if let Some(top) = base.max_exponent(value_bound) {
        let atoms: Vec<Rat> = (0..=top).map(|i| base.atom(i)).collect();
        let digit_cap = if base.is_integer() { 1 } else { small_u64(base.b()) };
        let mut digits = vec![0u64; top + 1];
        complete = walk(&atoms, digit_cap, value_bound, top, Rat::zero(), &mut digits, &mut found, budget);
    }

    let mut rows: Vec<ScanRow> = found
        .into_par_iter()
        .map(|z| {
            let value = base.value_of(&z);
            let stats = base.length_stats_of(&z);
            ScanRow {
                value,
                min_len: stats.min_len,
                max_len: stats.max_len,
                elasticity: stats.elasticity,
            }
        })
        .collect();
    rows.par_sort_by(|x, y| x.value.cmp(&y.value));
    ScanTable { rows, complete }
}

fn small_u64(n: &BigUint) -> u64 {
    u64::try_from(n).expect("denominator fits in u64")
}

/// Depth-first over the digits at degrees `level, level - 1, ..., 1`; the
/// constant term absorbs the remainder. Returns false once the budget is hit.
#[allow(clippy::too_many_arguments)]
fn walk(
    atoms: &[Rat],
    digit_cap: u64,
    bound: &Rat,
    level: usize,
    partial: Rat,
    digits: &mut [u64],
    out: &mut Vec<Factorization>,
    budget: usize,
) -> bool {
    if level == 0 {
        let free = (bound - &partial).floor().to_integer();
        let mut c = BigInt::zero();
        while c <= free {
            if !(c.is_zero() && partial.is_zero()) {
                if out.len() >= budget {
                    return false;
                }
                let mut poly = NatPoly::constant(c.magnitude().clone());
                for (d, &k) in digits.iter().enumerate().skip(1) {
                    poly.add_term(d, BigUint::from(k));
                }
                out.push(Factorization::from_poly(poly));
            }
            c += BigInt::one();
        }
        return true;
    }
    let mut value = partial;
    for k in 0..digit_cap {
        if value > *bound {
            break;
        }
        digits[level] = k;
        if !walk(atoms, digit_cap, bound, level - 1, value.clone(), digits, out, budget) {
            digits[level] = 0;
            return false;
        }
        value += &atoms[level];
    }
    digits[level] = 0;
    true
}
