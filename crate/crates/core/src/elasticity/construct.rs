//! Elements of `N0[q]` with a prescribed elasticity `s/t`.
//!
//! Every construction starts from a base element `x` with lengths `(l, L)`
//! such that `s - t` divides `tL - sl >= 0`, and then adds
//! `c = (tL - sl)/(s - t)` forced atoms, giving `(L + c)/(l + c) = s/t`.
//! Base elements are searched in this order:
//!
//! 1. single powers `a^k`;
//! 2. sums `a^{k_1} + ... + a^{k_{s-t}}` with equal residues
//!    `tL_k - sl_k mod (s - t)` and disjoint supports of their minimal
//!    factorizations, which always exist by pigeonhole;
//! 3. small integers `n`.
//!
//! Stages 1 and 2 often need far more shifts than can be materialized, so each
//! stage is accepted only when `c <= max_shifts`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::elasticity::shift::{forced_atom_shift, ForcedShift};
use crate::elasticity::ElasticityTarget;
use crate::semiring::{Factorization, RationalBase};
use crate::serial::{big_num, rat_str};
use crate::{Error, NatPoly, Rat, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionBudget {
    /// Largest exponent `k` examined for single powers and residue matching.
    pub scan_cap: usize,
    /// Largest number of forced atoms the certificate may carry.
    pub max_shifts: u64,
    /// Largest integer examined in the last stage.
    pub element_cap: u64,
}

impl ConstructionBudget {
    pub fn new(scan_cap: usize) -> Self {
        Self {
            scan_cap,
            ..Self::default()
        }
    }
}

impl Default for ConstructionBudget {
    fn default() -> Self {
        Self {
            scan_cap: 200,
            max_shifts: 1000,
            element_cap: 100_000,
        }
    }
}

/// One scanned exponent: lengths of `a^k`, its residue and the top degree of
/// its minimal factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRow {
    pub k: usize,
    #[serde(with = "big_num")]
    pub min_len: BigUint,
    #[serde(with = "big_num")]
    pub max_len: BigUint,
    pub residue: u64,
    pub top_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueMatch {
    /// Least `N` with `q^N > s/t`; scanning starts there.
    pub threshold: usize,
    pub rows: Vec<ResidueRow>,
    pub residue: u64,
    pub indices: Vec<usize>,
    #[serde(with = "big_num")]
    pub element: BigUint,
    #[serde(with = "big_num")]
    pub min_len: BigUint,
    /// `(tL - sl)/(s - t)` for the matched sum; may be astronomically large.
    #[serde(with = "big_num")]
    pub shifts: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    Atom,
    SinglePower { k: usize },
    ResidueMatch { residue: u64, indices: Vec<usize> },
    ElementScan { n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionLog {
    pub strategy: Strategy,
    #[serde(with = "rat_str")]
    pub base_element: Rat,
    pub base_presentation: NatPoly,
    #[serde(with = "big_num")]
    pub base_min_len: BigUint,
    #[serde(with = "big_num")]
    pub base_max_len: BigUint,
    /// Rows scanned while residue matching, when that stage ran.
    pub residue_table: Vec<ResidueRow>,
    pub forced_exponents: Vec<usize>,
    pub shifts: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElasticityCertificate {
    #[serde(with = "rat_str")]
    pub q: Rat,
    pub target: ElasticityTarget,
    #[serde(with = "rat_str")]
    pub element: Rat,
    pub presentation: NatPoly,
    #[serde(with = "big_num")]
    pub min_len: BigUint,
    #[serde(with = "big_num")]
    pub max_len: BigUint,
    #[serde(with = "rat_str")]
    pub achieved: Rat,
    pub construction_log: ConstructionLog,
}

/// Independent re-verification of a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub value_matches: bool,
    /// Normal forms of the presentation reproduce the tracked lengths.
    pub lengths_rederived: bool,
    pub achieves_target: bool,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.value_matches && self.lengths_rederived && self.achieves_target
    }
}

impl ElasticityCertificate {
    pub fn check(&self, base: &RationalBase) -> CertificateCheck {
        let z = Factorization::from_poly(self.presentation.clone());
        let stats = base.length_stats_of(&z);
        CertificateCheck {
            value_matches: base.value_of(&z) == self.element,
            lengths_rederived: stats.min_len == self.min_len && stats.max_len == self.max_len,
            achieves_target: stats.elasticity == self.target.as_rat()
                && self.achieved == self.target.as_rat(),
        }
    }
}

/// Base element candidate with its extreme lengths.
struct Base {
    strategy: Strategy,
    value: BigUint,
    min_len: BigUint,
    shifts: u64,
    residue_table: Vec<ResidueRow>,
}

pub fn construct_elasticity(
    base: &RationalBase,
    target: ElasticityTarget,
    budget: &ConstructionBudget,
) -> Result<ElasticityCertificate> {
    if target.is_one() {
        let atom = NatPoly::constant(BigUint::one());
        return Ok(finish(base, target, Base {
            strategy: Strategy::Atom,
            value: BigUint::one(),
            min_len: BigUint::one(),
            shifts: 0,
            residue_table: Vec::new(),
        }, atom));
    }
    if base.is_integer() {
        return Err(Error::Regime(format!(
            "N0[{base}] has unique factorization; only elasticity 1 occurs"
        )));
    }

    let chosen = single_power(base, target, budget)
        .or_else(|| {
            let m = match_residues(base, target, budget.scan_cap).ok()?;
            let shifts = m.shifts.to_u64().filter(|c| *c <= budget.max_shifts)?;
            Some(Base {
                strategy: Strategy::ResidueMatch {
                    residue: m.residue,
                    indices: m.indices.clone(),
                },
                value: m.element,
                min_len: m.min_len,
                shifts,
                residue_table: m.rows,
            })
        })
        .or_else(|| element_scan(base, target, budget));

    match chosen {
        Some(b) => {
            let pres = NatPoly::constant(b.value.clone());
            Ok(finish(base, target, b, pres))
        }
        None => {
            let rows = match match_residues(base, target, budget.scan_cap) {
                Ok(m) => m.rows,
                Err(Error::ScanCapExhausted { residue_table, .. }) => *residue_table,
                Err(e) => return Err(e),
            };
            Err(Error::ScanCapExhausted {
                cap: budget.scan_cap,
                residue_table: Box::new(rows),
            })
        }
    }
}

fn finish(base: &RationalBase, target: ElasticityTarget, b: Base, pres: NatPoly) -> ElasticityCertificate {
    let value = Rat::from_integer(BigInt::from(b.value.clone()));
    let shift = if b.shifts == 0 {
        ForcedShift {
            element: value.clone(),
            presentation: pres.clone(),
            forced_exponents: Vec::new(),
        }
    } else {
        forced_atom_shift(base, &value, &pres, b.shifts as usize)
            .expect("base element is a nonzero member of N0[q]")
    };
    let c = BigUint::from(b.shifts);
    let min_len = &b.min_len + &c;
    let max_len = &b.value + &c;
    let achieved = Rat::new(max_len.clone().into(), min_len.clone().into());
    debug_assert_eq!(achieved, target.as_rat());
    ElasticityCertificate {
        q: base.q().clone(),
        target,
        element: shift.element,
        presentation: shift.presentation,
        min_len,
        max_len,
        achieved,
        construction_log: ConstructionLog {
            strategy: b.strategy,
            base_element: value,
            base_presentation: pres,
            base_min_len: b.min_len,
            base_max_len: b.value,
            residue_table: b.residue_table,
            forced_exponents: shift.forced_exponents,
            shifts: b.shifts,
        },
    }
}

/// Shift count turning the integer element with lengths `(l, L)` into one of
/// elasticity `s/t`, if it is a nonnegative integer.
fn shifts_needed(target: ElasticityTarget, min_len: &BigUint, max_len: &BigUint) -> Option<BigUint> {
    let lhs = BigUint::from(target.t()) * max_len;
    let rhs = BigUint::from(target.s()) * min_len;
    if lhs < rhs {
        return None;
    }
    let (c, r) = (lhs - rhs).div_rem(&BigUint::from(target.s() - target.t()));
    r.is_zero().then_some(c)
}

/// Minimal factorization length and top degree of the integer `n`.
fn integer_min(base: &RationalBase, n: &BigUint) -> (BigUint, usize) {
    let z = base.up_normal_form(&Factorization::from_poly(NatPoly::constant(n.clone())));
    let top = z.coeffs().degree().unwrap_or(0);
    (z.length(), top)
}

fn single_power(base: &RationalBase, target: ElasticityTarget, budget: &ConstructionBudget) -> Option<Base> {
    let mut power = BigUint::one();
    for k in 1..=budget.scan_cap {
        power *= base.a();
        let (min_len, _) = integer_min(base, &power);
        if let Some(c) = shifts_needed(target, &min_len, &power) {
            if let Some(c) = c.to_u64().filter(|c| *c <= budget.max_shifts) {
                return Some(Base {
                    strategy: Strategy::SinglePower { k },
                    value: power,
                    min_len,
                    shifts: c,
                    residue_table: Vec::new(),
                });
            }
        }
    }
    None
}

fn element_scan(base: &RationalBase, target: ElasticityTarget, budget: &ConstructionBudget) -> Option<Base> {
    (1..=budget.element_cap).find_map(|n| {
        let value = BigUint::from(n);
        let (min_len, _) = integer_min(base, &value);
        let c = shifts_needed(target, &min_len, &value)?
            .to_u64()
            .filter(|c| *c <= budget.max_shifts)?;
        Some(Base {
            strategy: Strategy::ElementScan { n },
            value,
            min_len,
            shifts: c,
            residue_table: Vec::new(),
        })
    })
}

/// Scans `k = N, N + 1, ...` for `s - t` powers of `a` sharing a residue whose
/// minimal factorizations occupy disjoint, increasing windows of degrees.
///
/// Each residue class greedily extends its own chain; the first chain to reach
/// `s - t` members wins.
pub fn match_residues(base: &RationalBase, target: ElasticityTarget, scan_cap: usize) -> Result<ResidueMatch> {
    if target.is_one() || base.is_integer() {
        return Err(Error::InvalidArgument(
            "residue matching needs s > t and a non-integer base".into(),
        ));
    }
    let ratio = target.as_rat();
    let threshold = crate::rational::first_exponent_from(base.q(), 0, |p| *p > ratio);
    let modulus = target.s() - target.t();
    let need = modulus as usize;
    let m_big = BigInt::from(modulus);

    let mut chains: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0); need];
    let mut rows = Vec::new();
    let mut power = num_traits::pow(base.a().clone(), threshold);
    for k in threshold..=scan_cap {
        if k > threshold {
            power *= base.a();
        }
        let (min_len, top) = integer_min(base, &power);
        let diff = BigInt::from(target.t()) * BigInt::from(power.clone())
            - BigInt::from(target.s()) * BigInt::from(min_len.clone());
        let residue = diff.mod_floor(&m_big).to_u64().expect("residue below s - t");
        rows.push(ResidueRow {
            k,
            min_len,
            max_len: power.clone(),
            residue,
            top_degree: top,
        });
        let (chain, last_top) = &mut chains[residue as usize];
        if chain.is_empty() || k > *last_top {
            chain.push(k);
            *last_top = top;
        }
        if chain.len() == need {
            let indices = chain.clone();
            let picked: Vec<&ResidueRow> = indices
                .iter()
                .map(|k| &rows[k - threshold])
                .collect();
            let element: BigUint = picked.iter().map(|r| &r.max_len).sum();
            let min_len: BigUint = picked.iter().map(|r| &r.min_len).sum();
            debug_assert_eq!(integer_min(base, &element).0, min_len);
            let shifts = shifts_needed(target, &min_len, &element)
                .expect("equal residues above the threshold give a nonnegative multiple");
            return Ok(ResidueMatch {
                threshold,
                rows,
                residue,
                indices,
                element,
                min_len,
                shifts,
            });
        }
    }
    Err(Error::ScanCapExhausted {
        cap: scan_cap,
        residue_table: Box::new(rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ORACLE_CAP;
    use num_integer::gcd;

    fn target(s: u64, t: u64) -> ElasticityTarget {
        ElasticityTarget::new(s, t).unwrap()
    }

    fn base(a: u64, b: u64) -> RationalBase {
        RationalBase::from_parts(a, b).unwrap()
    }

    #[test]
    fn five_thirds_over_three_halves() {
        let c = construct_elasticity(&base(3, 2), target(5, 3), &ConstructionBudget::new(200)).unwrap();
        assert_eq!(c.construction_log.strategy, Strategy::SinglePower { k: 2 });
        assert_eq!(c.construction_log.base_element, Rat::from_integer(9.into()));
        assert_eq!(c.construction_log.shifts, 6);
        assert_eq!(c.construction_log.forced_exponents.len(), 6);
        assert_eq!(c.achieved, target(5, 3).as_rat());
        assert!(c.check(&base(3, 2)).passed());
    }

    #[test]
    fn trivial_target() {
        let c = construct_elasticity(&base(3, 2), target(1, 1), &ConstructionBudget::default()).unwrap();
        assert_eq!(c.construction_log.strategy, Strategy::Atom);
        assert_eq!(c.element, Rat::one());
        assert_eq!(c.achieved, Rat::one());
    }

    #[test]
    fn three_halves_over_five_thirds() {
        let b = base(5, 3);
        let c = construct_elasticity(&b, target(3, 2), &ConstructionBudget::default()).unwrap();
        assert_eq!(c.achieved, target(3, 2).as_rat());
        assert!(c.check(&b).passed());
    }

    #[test]
    fn integer_base_is_rejected() {
        assert!(matches!(
            construct_elasticity(&base(2, 1), target(3, 2), &ConstructionBudget::default()),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn grid_certificates_check() {
        for (a, b) in [(3u64, 2u64), (5, 3), (5, 2), (7, 4)] {
            let q = base(a, b);
            for s in 2..=9u64 {
                for t in (1..s).filter(|t| gcd(s, *t) == 1) {
                    let c = construct_elasticity(&q, target(s, t), &ConstructionBudget::default())
                        .unwrap_or_else(|e| panic!("q={a}/{b} target={s}/{t}: {e}"));
                    assert!(c.check(&q).passed(), "q={a}/{b} target={s}/{t}");
                }
            }
        }
    }

    #[test]
    fn small_certificates_agree_with_oracle() {
        let q = base(3, 2);
        for (s, t) in [(4, 3), (5, 3), (3, 2), (2, 1), (3, 1)] {
            let c = construct_elasticity(&q, target(s, t), &ConstructionBudget::default()).unwrap();
            if c.element > Rat::from_integer(2000.into()) {
                continue;
            }
            let stats = q.length_stats(&c.element, Some(DEFAULT_ORACLE_CAP)).unwrap();
            let set = stats.length_set.unwrap();
            assert_eq!(set.first(), Some(&c.min_len), "{s}/{t}");
            assert_eq!(set.last(), Some(&c.max_len), "{s}/{t}");
        }
    }

    #[test]
    fn residue_tables_respect_range_and_pigeonhole() {
        for (a, b) in [(3u64, 2u64), (5, 3), (5, 2), (7, 4)] {
            let q = base(a, b);
            // chained indices grow geometrically, so keep s - t small
            for (s, t) in [(2, 1), (5, 2), (7, 3), (8, 5), (9, 5)] {
                let tgt = target(s, t);
                let m = match_residues(&q, tgt, 400).unwrap();
                let modulus = s - t;
                assert!(m.rows.iter().all(|r| r.residue < modulus));
                assert!(q.atom(m.threshold) > tgt.as_rat());
                assert!(m.threshold == 0 || q.atom(m.threshold - 1) <= tgt.as_rat());
                // among (s-t)(s-t-1)+1 consecutive rows some residue repeats s-t times
                let span = (modulus * (modulus - 1) + 1) as usize;
                for w in m.rows.windows(span.min(m.rows.len())) {
                    let mut counts = vec![0u64; modulus as usize];
                    w.iter().for_each(|r| counts[r.residue as usize] += 1);
                    if w.len() == span {
                        assert!(counts.iter().any(|&c| c >= modulus));
                    }
                }
                // chosen indices share the residue and respect the windows
                assert_eq!(m.indices.len() as u64, modulus);
                for pair in m.indices.windows(2) {
                    let prev = &m.rows[pair[0] - m.threshold];
                    assert!(pair[1] > prev.top_degree);
                }
                for k in &m.indices {
                    assert_eq!(m.rows[k - m.threshold].residue, m.residue);
                }
                let (l, _) = integer_min(&q, &m.element);
                assert_eq!(l, m.min_len);
                assert_eq!(
                    BigUint::from(t) * &m.element - BigUint::from(s) * &m.min_len,
                    &m.shifts * BigUint::from(modulus)
                );
            }
        }
    }

    #[test]
    fn residue_rows_match_normal_forms() {
        let q = base(3, 2);
        let m = match_residues(&q, target(5, 2), 100).unwrap();
        for r in &m.rows {
            let pow = num_traits::pow(BigUint::from(3u32), r.k);
            assert_eq!(r.max_len, pow);
            assert!(r.min_len <= num_traits::pow(BigUint::from(2u32), r.k));
        }
    }

    #[test]
    fn cap_exhaustion_reports_the_table() {
        match match_residues(&base(3, 2), target(9, 1), 8) {
            Err(Error::ScanCapExhausted { cap, residue_table }) => {
                assert_eq!(cap, 8);
                let ks: Vec<usize> = residue_table.iter().map(|r| r.k).collect();
                assert_eq!(ks, vec![6, 7, 8]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn certificate_round_trips() {
        let c = construct_elasticity(&base(3, 2), target(5, 3), &ConstructionBudget::default()).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ElasticityCertificate>(&json).unwrap(), c);
    }
}
