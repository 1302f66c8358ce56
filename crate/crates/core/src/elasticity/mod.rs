//! Elasticity in `N0[alpha]`.
//!
//! The elasticity of a nonzero element is `max L(x) / min L(x)`. This module
//! holds the constructions built on top of [`crate::semiring`]:
//!
//! * [`lower_bound`]: powers of the shorter side of a minimal pair, whose
//!   elasticities grow at least geometrically when the monoid is not finitely
//!   generated;
//! * [`formula`]: the closed form `max{p(1)/q0(1), q0(1)/p(1)}`, gated by a
//!   search certifying that the atoms are exactly `1, alpha, ..., alpha^deg`;
//! * [`shift`]: adding an atom that every factorization must contain, which
//!   moves `(min, max)` to `(min + 1, max + 1)`;
//! * [`construct`]: certificates realizing any target elasticity `s/t` in
//!   `N0[q]` for rational non-integer `q > 1`;
//! * [`scan`]: tabulating elasticities of all elements below a bound.

pub mod construct;
pub mod formula;
pub mod lower_bound;
pub mod scan;
pub mod shift;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::rational::parse_rat;
use crate::{Error, Rat, Result};

pub use construct::{
    construct_elasticity, match_residues, CertificateCheck, ConstructionBudget, ConstructionLog,
    ElasticityCertificate, ResidueMatch, ResidueRow, Strategy,
};
pub use formula::{elasticity_formula, FormulaReport, FormulaStatus, IsolatingInterval};
pub use lower_bound::{elasticity_lower_bound_sequence, LowerBoundStep};
pub use scan::{elasticity_scan, ScanRow, ScanTable};
pub use shift::{forced_atom_shift, ForcedShift};

/// A target elasticity `s/t` in lowest terms with `s >= t >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ElasticityTarget {
    s: u64,
    t: u64,
}

impl ElasticityTarget {
    pub fn new(s: u64, t: u64) -> Result<Self> {
        if t == 0 || s < t {
            return Err(Error::InvalidArgument(format!(
                "target elasticity must satisfy s >= t >= 1, got {s}/{t}"
            )));
        }
        let g = s.gcd(&t);
        Ok(Self { s: s / g, t: t / g })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let r = parse_rat(text)?;
        let s: u64 = r
            .numer()
            .try_into()
            .map_err(|_| Error::InvalidArgument(format!("target out of range: {text}")))?;
        let t: u64 = r
            .denom()
            .try_into()
            .map_err(|_| Error::InvalidArgument(format!("target out of range: {text}")))?;
        Self::new(s, t)
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn as_rat(&self) -> Rat {
        Rat::new(self.s.into(), self.t.into())
    }

    pub fn is_one(&self) -> bool {
        self.s == self.t
    }
}

impl TryFrom<String> for ElasticityTarget {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        Self::parse(&text)
    }
}

impl From<ElasticityTarget> for String {
    fn from(t: ElasticityTarget) -> String {
        t.to_string()
    }
}

impl fmt::Display for ElasticityTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.s, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_are_reduced() {
        let t = ElasticityTarget::new(10, 6).unwrap();
        assert_eq!((t.s(), t.t()), (5, 3));
        assert_eq!(ElasticityTarget::parse("1").unwrap(), ElasticityTarget::new(1, 1).unwrap());
        assert!(ElasticityTarget::new(2, 3).is_err());
        assert!(ElasticityTarget::new(2, 0).is_err());
        assert!(ElasticityTarget::parse("-5/3").is_err());
        assert_eq!(ElasticityTarget::parse("5/3").unwrap().to_string(), "5/3");
        assert_eq!(serde_json::to_string(&t).unwrap(), r#""5/3""#);
        assert_eq!(serde_json::from_str::<ElasticityTarget>(r#""4/2""#).unwrap(), ElasticityTarget::new(2, 1).unwrap());
        assert!(serde_json::from_str::<ElasticityTarget>(r#""1/2""#).is_err());
    }
}
