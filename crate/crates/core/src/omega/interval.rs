use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{ceil, format_rat, simplest_between};
use crate::serial::rat_str;
use crate::{Error, Rat, Result};

/// The Puiseux monoid generated by `[1, q] ∩ Q`, for rational `1 < q < 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalMonoid {
    #[serde(with = "rat_str")]
    q: Rat,
    conductor: u64,
}

impl IntervalMonoid {
    pub fn new(q: Rat) -> Result<Self> {
        let conductor = conductor(&q)?;
        Ok(Self { q, conductor })
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn contains(&self, x: &Rat) -> Result<bool> {
        interval_membership(self, x)
    }
}

fn check_regime(q: &Rat) -> Result<()> {
    if *q <= Rat::one() || *q >= Rat::from_integer(2.into()) {
        return Err(Error::Regime(format!(
            "interval monoids need 1 < q < 2, got {}",
            format_rat(q)
        )));
    }
    Ok(())
}

/// `ceil(1/(q - 1))`, the least `c` with `cq >= c + 1`.
///
/// The condition `kq < k + 1` reads `k(q - 1) < 1`, which is monotone in `k`,
/// so checking it at `c - 1` covers every `k < c`.
pub fn conductor(q: &Rat) -> Result<u64> {
    check_regime(q)?;
    let gap = q - Rat::one();
    let c = ceil(&gap.recip());
    let c_rat = Rat::from_integer(c.clone());
    assert!(&c_rat * &gap >= Rat::one(), "c q >= c + 1 fails at c = {c}");
    assert!((&c_rat - Rat::one()) * &gap < Rat::one(), "(c-1) q < c fails at c = {c}");
    c.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("conductor {c} out of range")))
}

/// `x = 0`, or `k <= x <= kq` for some `1 <= k < c`, or `x >= c`.
pub fn interval_membership(m: &IntervalMonoid, x: &Rat) -> Result<bool> {
    if x.is_negative() {
        return Err(Error::NegativeValue(format_rat(x)));
    }
    if x.is_zero() {
        return Ok(true);
    }
    let c = BigInt::from(m.conductor);
    if *x >= Rat::from_integer(c.clone()) {
        return Ok(true);
    }
    // the only candidate k is floor(x): the intervals [k, kq] below c are disjoint
    let k = x.floor().to_integer();
    Ok(k >= BigInt::one() && k < c && *x <= Rat::from_integer(k) * &m.q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChecks {
    /// `(c + n - 1) b - a` lies outside the monoid.
    pub not_divides_below: bool,
    /// `(c + n) b - a` lies in the monoid.
    pub divides_at: bool,
}

impl WitnessChecks {
    pub fn passed(&self) -> bool {
        self.not_divides_below && self.divides_at
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalOmega {
    #[serde(with = "rat_str")]
    pub q: Rat,
    #[serde(with = "rat_str")]
    pub atom: Rat,
    pub conductor: u64,
    pub omega: u64,
    /// The atom `b` for which `a` divides `(c + n) b` but not `(c + n - 1) b`.
    #[serde(with = "rat_str")]
    pub lower_witness: Rat,
    pub checks: WitnessChecks,
}

/// `omega(a) = c + ceil(a)` for an atom `a` of `M_q`.
///
/// The lower witness is the simplest rational strictly between
/// `((c - 1) q + a)/(c + n - 1)` and `(c + a)/(c + n - 1)`.
pub fn omega_interval_atom(m: &IntervalMonoid, a: &Rat) -> Result<IntervalOmega> {
    if *a < Rat::one() || a > &m.q {
        return Err(Error::InvalidArgument(format!(
            "{} is not an atom of M_{}: it must lie in [1, {}]",
            format_rat(a),
            format_rat(&m.q),
            format_rat(&m.q)
        )));
    }
    let c = Rat::from_integer(m.conductor.into());
    let n = ceil(a);
    let n_rat = Rat::from_integer(n.clone());
    let denom = &c + &n_rat - Rat::one();
    let lo = ((&c - Rat::one()) * &m.q + a) / &denom;
    let hi = (&c + a) / &denom;
    let b = simplest_between(&lo, Some(&hi));
    let below = &denom * &b - a;
    let at = (&denom + Rat::one()) * &b - a;
    let checks = WitnessChecks {
        not_divides_below: !interval_membership(m, &below)?,
        divides_at: interval_membership(m, &at)?,
    };
    let omega = m.conductor
        + n.to_u64()
            .expect("ceil of an atom is 1 or 2");
    Ok(IntervalOmega {
        q: m.q.clone(),
        atom: a.clone(),
        conductor: m.conductor,
        omega,
        lower_witness: b,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn monoid(n: i64, d: i64) -> IntervalMonoid {
        IntervalMonoid::new(rat(n, d)).unwrap()
    }

    #[test]
    fn conductors() {
        assert_eq!(conductor(&rat(3, 2)).unwrap(), 2);
        assert_eq!(conductor(&rat(4, 3)).unwrap(), 3);
        assert_eq!(conductor(&rat(7, 5)).unwrap(), 3);
        assert_eq!(conductor(&rat(11, 10)).unwrap(), 10);
        assert_eq!(conductor(&rat(101, 100)).unwrap(), 100);
        for bad in [rat(1, 1), rat(2, 1), rat(1, 2), rat(5, 2)] {
            assert!(matches!(conductor(&bad), Err(Error::Regime(_))));
        }
    }

    #[test]
    fn membership_examples() {
        let m = monoid(3, 2);
        assert!(!m.contains(&rat(7, 4)).unwrap());
        assert!(m.contains(&rat(0, 1)).unwrap());
        assert!(m.contains(&rat(5, 2)).unwrap());
        assert!(m.contains(&rat(3, 2)).unwrap());
        assert!(!m.contains(&rat(1, 2)).unwrap());
        assert!(m.contains(&rat(-1, 2)).is_err());
    }

    /// Membership decided by reachability: sums of exactly `j` atoms with
    /// denominators dividing `L` are the integers in `[jL, jqL]` after scaling.
    fn oracle_members(m: &IntervalMonoid, den: i64, top: i64) -> Vec<bool> {
        let qd = i64::try_from(m.q().denom()).unwrap();
        let qn = i64::try_from(m.q().numer()).unwrap();
        let l = den.lcm(&qd);
        let hi_atom = l / qd * qn;
        let size = (top * l) as usize;
        let mut member = vec![false; size + 1];
        member[0] = true;
        let mut layer = member.clone();
        let max_atoms = top as usize;
        for _ in 0..max_atoms {
            let mut next = vec![false; size + 1];
            for (s, _) in layer.iter().enumerate().filter(|(_, r)| **r) {
                for atom in l..=hi_atom {
                    let t = s + atom as usize;
                    if t <= size {
                        next[t] = true;
                    }
                }
            }
            for (i, r) in next.iter().enumerate() {
                member[i] |= *r;
            }
            layer = next;
        }
        // report on the grid (1/den) Z
        (0..=top * den)
            .map(|i| member[(i * (l / den)) as usize])
            .collect()
    }

    #[test]
    fn membership_agrees_with_generate_and_test() {
        for (n, d) in [(3, 2), (4, 3), (7, 5), (5, 4), (9, 5)] {
            let m = monoid(n, d);
            let top = m.conductor() as i64 + 2;
            for den in 1..=50i64 {
                let oracle = oracle_members(&m, den, top);
                for (i, expected) in oracle.iter().enumerate() {
                    let x = rat(i as i64, den);
                    assert_eq!(m.contains(&x).unwrap(), *expected, "q={n}/{d} x={x}");
                }
            }
        }
    }

    #[test]
    fn omega_at_three_halves() {
        let m = monoid(3, 2);
        let r = omega_interval_atom(&m, &rat(1, 1)).unwrap();
        assert_eq!(r.omega, 3);
        assert_eq!(r.lower_witness, rat(4, 3));
        assert!(r.checks.passed());
        assert!(!m.contains(&rat(5, 3)).unwrap() && m.contains(&rat(3, 1)).unwrap());

        let r = omega_interval_atom(&m, &rat(5, 4)).unwrap();
        assert_eq!(r.omega, 4);
        assert!(r.checks.passed());

        let r = omega_interval_atom(&m, &rat(3, 2)).unwrap();
        assert_eq!(r.omega, 4);
        assert_eq!(r.lower_witness, rat(8, 7));
        assert!(r.checks.passed());
    }

    #[test]
    fn witnesses_pass_across_monoids() {
        for (n, d) in [(4, 3), (7, 5), (5, 4), (9, 5), (11, 10), (19, 10)] {
            let m = monoid(n, d);
            let q = m.q().clone();
            for num in 0..=12i64 {
                let a = Rat::one() + (&q - Rat::one()) * rat(num, 12);
                let r = omega_interval_atom(&m, &a).unwrap();
                assert!(r.checks.passed(), "q={q} a={a}");
                assert!(r.lower_witness >= Rat::one() && r.lower_witness <= q);
            }
        }
    }

    #[test]
    fn atom_range_is_enforced() {
        let m = monoid(3, 2);
        assert!(omega_interval_atom(&m, &rat(2, 1)).is_err());
        assert!(omega_interval_atom(&m, &rat(1, 2)).is_err());
    }
}
