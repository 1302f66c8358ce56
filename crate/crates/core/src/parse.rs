//! Parsing of polynomial strings such as `"X^2 - 3X + 1"` or `"X - 3/2"`.

use num_traits::{One, Zero};

use crate::rational::parse_rat;
use crate::{Error, Rat, RatPoly, Result};

/// Parses a sum of terms `c`, `cX`, `cX^k`, `X^k`, `c*X^k` with rational `c`.
/// The variable may be written `X` or `x`.
pub fn parse_poly(s: &str) -> Result<RatPoly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut poly = RatPoly::zero();
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if first => (false, rest),
            _ => return Err(Error::Parse(format!("expected '+' or '-' in {s:?}"))),
        };
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        let (degree, coeff) = parse_term(term, s)?;
        poly.add_term(degree, if negative { -coeff } else { coeff });
        rest = tail;
    }
    Ok(poly)
}

fn parse_term(term: &str, whole: &str) -> Result<(usize, Rat)> {
    let bad = || Error::Parse(format!("malformed term {term:?} in {whole:?}"));
    if term.is_empty() {
        return Err(bad());
    }
    let Some(xpos) = term.find(['X', 'x']) else {
        return Ok((0, parse_rat(term).map_err(|_| bad())?));
    };
    let coeff_str = term[..xpos].trim_end_matches('*');
    let coeff = if coeff_str.is_empty() {
        Rat::one()
    } else {
        parse_rat(coeff_str).map_err(|_| bad())?
    };
    let exp_str = &term[xpos + 1..];
    let degree = if exp_str.is_empty() {
        1
    } else {
        exp_str
            .strip_prefix('^')
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(bad)?
    };
    if coeff.is_zero() {
        return Ok((degree, Rat::zero()));
    }
    Ok((degree, coeff))
}
