//! Exact rational helpers.
//!
//! Rationals are `num_rational::Ratio<T>`, which keeps every value reduced with a
//! positive denominator. The helpers here are generic over the integer type so
//! that small fixed-width instances (`Ratio<i64>`) and the arbitrary-precision
//! [`Rat`](crate::Rat) share one code path.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rat, Result};

/// Parses `"num/den"` or `"num"` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let trimmed = s.trim();
    let parsed: std::result::Result<Rat, _> = trimmed.parse();
    match parsed {
        Ok(r) => Ok(r),
        Err(_) => Err(Error::Parse(format!("malformed rational {s:?}"))),
    }
}

/// `"num/den"`, with the denominator omitted when it is 1.
pub fn format_rat<T: Integer + Clone + std::fmt::Display>(r: &Ratio<T>) -> String {
    r.to_string()
}

/// Smallest integer `>= r`.
pub fn ceil<T: Integer + Clone>(r: &Ratio<T>) -> T {
    r.ceil().to_integer()
}

/// Smallest integer `<= r`.
pub fn floor<T: Integer + Clone>(r: &Ratio<T>) -> T {
    r.floor().to_integer()
}

pub fn pow<T: Integer + Clone>(r: &Ratio<T>, e: usize) -> Ratio<T> {
    num_traits::pow(r.clone(), e)
}

/// Largest `e` with `q^e <= x`, for `q > 1` and `x >= 1`; `None` when `x < 1`.
pub fn max_exponent_at_most<T: Integer + Clone>(q: &Ratio<T>, x: &Ratio<T>) -> Option<usize> {
    debug_assert!(*q > Ratio::one());
    if *x < Ratio::one() {
        return None;
    }
    let mut e = 0;
    let mut power = q.clone();
    while power <= *x {
        e += 1;
        power = power * q.clone();
    }
    Some(e)
}

/// Smallest `n >= from` such that `pred(q^n)` holds, scanning upward.
pub fn first_exponent_from<T, F>(q: &Ratio<T>, from: usize, mut pred: F) -> usize
where
    T: Integer + Clone,
    F: FnMut(&Ratio<T>) -> bool,
{
    let mut n = from;
    let mut power = pow(q, n);
    while !pred(&power) {
        n += 1;
        power = power * q.clone();
    }
    n
}

/// The rational of smallest denominator strictly inside `(lo, hi)`, found by
/// descending the Stern–Brocot tree one continued-fraction block at a time.
///
/// Among rationals with that denominator the smallest one is returned. `hi ==
/// None` stands for an unbounded interval. Requires `0 <= lo < hi`.
pub fn simplest_between<T>(lo: &Ratio<T>, hi: Option<&Ratio<T>>) -> Ratio<T>
where
    T: Integer + Clone + Signed,
{
    debug_assert!(!lo.is_negative());
    if let Some(h) = hi {
        debug_assert!(lo < h);
    }
    let whole = floor(lo);
    let next = whole.clone() + T::one();
    let next_rat = Ratio::from_integer(next.clone());
    match hi {
        None => return next_rat,
        Some(h) if next_rat < *h => return next_rat,
        _ => {}
    }
    // Both endpoints lie in [whole, whole + 1]: recurse on the reciprocal of the
    // fractional parts, which reverses the interval.
    let base = Ratio::from_integer(whole);
    let hi = hi.expect("bounded interval");
    let frac_lo = lo.clone() - base.clone();
    let frac_hi = hi.clone() - base.clone();
    let inner_lo = frac_hi.recip();
    let inner = if frac_lo.is_zero() {
        simplest_between(&inner_lo, None)
    } else {
        let inner_hi = frac_lo.recip();
        simplest_between(&inner_lo, Some(&inner_hi))
    };
    base + inner.recip()
}

/// `a^{-1} mod m` for coprime `a`, `m > 1`.
pub(crate) fn mod_inverse<T: Integer + Clone + Signed>(a: &T, m: &T) -> T {
    let ext = a.mod_floor(m).extended_gcd(m);
    debug_assert!(ext.gcd.is_one());
    ext.x.mod_floor(m)
}
