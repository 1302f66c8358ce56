//! End-to-end use of the public API across modules.

use cyclofact::elasticity::{
    construct_elasticity, elasticity_scan, ConstructionBudget, ElasticityTarget,
};
use cyclofact::omega::{omega_interval_atom, omega_lower_bound, IntervalMonoid};
use cyclofact::parse::parse_poly;
use cyclofact::rational::parse_rat;
use cyclofact::{minimal_pair, minimal_pair_of_rational, RationalBase, DEFAULT_ORACLE_CAP};
use num_bigint::BigUint;

#[test]
fn normal_forms_bracket_every_factorization() {
    let base = RationalBase::from_parts(5, 3).unwrap();
    let x = parse_rat("125/9").unwrap();
    let all = base.enumerate_factorizations(&x, DEFAULT_ORACLE_CAP).unwrap();
    let stats = base.length_stats(&x, Some(DEFAULT_ORACLE_CAP)).unwrap();
    let lengths: Vec<BigUint> = all.iter().map(|z| z.length()).collect();
    assert_eq!(lengths.iter().min(), Some(&stats.min_len));
    assert_eq!(lengths.iter().max(), Some(&stats.max_len));
    for z in &all {
        assert_eq!(base.value_of(z), x);
        assert_eq!(base.up_normal_form(z).length(), stats.min_len);
        assert_eq!(base.down_normal_form(z).length(), stats.max_len);
    }
}

#[test]
fn scan_matches_pointwise_stats() {
    let base = RationalBase::from_parts(3, 2).unwrap();
    let table = elasticity_scan(&base, &parse_rat("6").unwrap(), 1_000_000);
    assert!(table.complete);
    for row in &table.rows {
        let stats = base.length_stats(&row.value, None).unwrap();
        assert_eq!((&row.min_len, &row.max_len), (&stats.min_len, &stats.max_len));
        assert_eq!(row.elasticity, stats.elasticity);
    }
}

#[test]
fn certificate_survives_serialization() {
    let base = RationalBase::from_parts(7, 4).unwrap();
    let target = ElasticityTarget::parse("7/3").unwrap();
    let cert = construct_elasticity(&base, target, &ConstructionBudget::default()).unwrap();
    let json = serde_json::to_string(&cert).unwrap();
    let back: cyclofact::elasticity::ElasticityCertificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);
    assert!(back.check(&base).passed());
    assert_eq!(back.achieved, target.as_rat());
}

#[test]
fn pair_of_parsed_rational_matches_polynomial_route() {
    let from_poly = minimal_pair(&parse_poly("X - 3/2").unwrap()).unwrap();
    let from_rat = minimal_pair_of_rational(&parse_rat("3/2").unwrap()).unwrap();
    assert_eq!(from_poly, from_rat);
}

#[test]
fn omega_witnesses_verify() {
    let m = IntervalMonoid::new(parse_rat("7/5").unwrap()).unwrap();
    let r = omega_interval_atom(&m, &parse_rat("6/5").unwrap()).unwrap();
    assert_eq!(r.omega, m.conductor() + 2);
    assert!(r.checks.passed());

    let w = omega_lower_bound(&parse_rat("3/4").unwrap(), 2, 5).unwrap();
    assert!(w.checks.passed());
    assert_eq!(w.verify(), w.checks);
}
