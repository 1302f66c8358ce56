use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::semiring::{Factorization, LengthStats, RationalBase};
use crate::serial::rat_str;
use crate::{Error, MinimalPair, NatPoly, Rat, Result};

/// The element `beta_n = p(alpha)^n` for the shorter side `p` of a minimal
/// pair, together with the elasticity bound `(q0(1)/p(1))^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundStep {
    pub n: u32,
    pub presentation: NatPoly,
    #[serde(with = "rat_str")]
    pub lower_bound: Rat,
    /// Present when alpha is rational.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rat")]
    pub element: Option<Rat>,
    /// Exact length statistics of `beta_n`, when alpha is rational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<LengthStats>,
}

impl LowerBoundStep {
    /// Exact elasticity minus the bound, when the exact value is known.
    pub fn excess(&self) -> Option<Rat> {
        self.exact
            .as_ref()
            .map(|s| s.elasticity.clone() - self.lower_bound.clone())
    }
}

/// `root` is the rational base when alpha is rational; `None` treats alpha
/// symbolically and returns only the presentation and the bound.
pub fn elasticity_lower_bound_sequence(
    pair: &MinimalPair,
    root: Option<&RationalBase>,
    n: u32,
) -> Result<LowerBoundStep> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let (short, long) = (pair.p_len(), pair.q0_len());
    if short == long {
        return Err(Error::DegenerateMinimalPair);
    }
    let pair = if short < long {
        pair.clone()
    } else {
        pair.swapped()
    };
    if let Some(base) = root {
        if base.is_integer() {
            return Err(Error::Regime(format!(
                "N0[{base}] = N0 has unique factorization; the bound applies only to monoids that are not finitely generated"
            )));
        }
    }
    let ratio = Rat::new(
        BigInt::from(pair.q0_len()),
        BigInt::from(pair.p_len()),
    );
    let lower_bound = num_traits::pow(ratio, n as usize);
    let presentation = pair.p.pow(n);
    let (element, exact) = match root {
        Some(base) => {
            let z = Factorization::from_poly(presentation.clone());
            (Some(base.value_of(&z)), Some(base.length_stats_of(&z)))
        }
        None => (None, None),
    };
    Ok(LowerBoundStep {
        n,
        presentation,
        lower_bound,
        element,
        exact,
    })
}

mod opt_rat {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => rat_str::serialize(r, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "rat_str")] Rat);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal_pair::{minimal_pair, minimal_pair_of_rational};
    use crate::parse::parse_poly;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn three_halves() {
        let q = rat(3, 2);
        let base = RationalBase::new(q.clone()).unwrap();
        let mp = minimal_pair_of_rational(&q).unwrap();

        let s1 = elasticity_lower_bound_sequence(&mp, Some(&base), 1).unwrap();
        assert_eq!(s1.element, Some(rat(3, 1)));
        assert_eq!(s1.lower_bound, rat(3, 2));
        assert_eq!(s1.exact.as_ref().unwrap().elasticity, rat(3, 2));

        let s2 = elasticity_lower_bound_sequence(&mp, Some(&base), 2).unwrap();
        assert_eq!(s2.element, Some(rat(9, 1)));
        assert_eq!(s2.lower_bound, rat(9, 4));
        assert_eq!(s2.exact.as_ref().unwrap().elasticity, rat(3, 1));
        assert_eq!(s2.excess(), Some(rat(3, 4)));
    }

    #[test]
    fn integer_root_is_routed_away() {
        let base = RationalBase::new(rat(2, 1)).unwrap();
        let mp = minimal_pair_of_rational(&rat(2, 1)).unwrap();
        assert!(matches!(
            elasticity_lower_bound_sequence(&mp, Some(&base), 1),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn degenerate_pair() {
        // X^2 - 2X + 1 has 1 as a root: p(1) = q0(1) = 2
        let mp = minimal_pair(&parse_poly("X^2 - 2X + 1").unwrap()).unwrap();
        assert_eq!(
            elasticity_lower_bound_sequence(&mp, None, 1),
            Err(Error::DegenerateMinimalPair)
        );
    }

    #[test]
    fn symbolic_root_swaps_to_shorter_side() {
        // X^2 - 3X + 1: p = X^2 + 1 (length 2), q0 = 3X (length 3)
        let mp = minimal_pair(&parse_poly("X^2 - 3X + 1").unwrap()).unwrap();
        let s = elasticity_lower_bound_sequence(&mp, None, 3).unwrap();
        assert_eq!(s.lower_bound, rat(27, 8));
        assert_eq!(s.presentation, mp.p.pow(3));
        assert!(s.element.is_none());
        // 2X - 1 after clearing: p = 2X (2), q0 = 1 (1), so the sides swap
        let mp = minimal_pair(&parse_poly("X - 1/2").unwrap()).unwrap();
        let s = elasticity_lower_bound_sequence(&mp, None, 2).unwrap();
        assert_eq!(s.lower_bound, rat(4, 1));
        assert_eq!(s.presentation, mp.q0.pow(2));
    }

    #[test]
    fn bound_holds_for_several_bases() {
        for (a, b) in [(3i64, 2i64), (5, 3), (5, 2), (7, 4)] {
            let q = rat(a, b);
            let base = RationalBase::new(q.clone()).unwrap();
            let mp = minimal_pair_of_rational(&q).unwrap();
            for n in 1..=4 {
                let s = elasticity_lower_bound_sequence(&mp, Some(&base), n).unwrap();
                let exact = s.exact.as_ref().unwrap();
                assert!(exact.elasticity >= s.lower_bound, "q={q} n={n}");
                let json = serde_json::to_string(&s).unwrap();
                assert_eq!(serde_json::from_str::<LowerBoundStep>(&json).unwrap(), s);
            }
        }
    }
}
