//! Public-API round trips and cross-module consistency checks.

use modkernel::arithfun::{partition_numbers, sigma};
use modkernel::modforms::{eisenstein_gstar, zeta_neg};
use modkernel::padic::{kubota_leopoldt_rational, zeta_reg, PadicInt};
use modkernel::qseries::{parse_rational, rat};
use modkernel::tau::{ramanujan_congruence_check, TauCache};
use modkernel::{BigInt, CongruenceReport, QSeries, Rational};
use serde_json::Value;

#[test]
fn series_json_round_trip() {
    let s = QSeries::from_coeffs(vec![rat(1, 2), rat(-3, 1), rat(0, 1), rat(7, 9)]);
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(text, r#"{"trunc":3,"coeffs":["1/2","-3/1","0/1","7/9"]}"#);
    assert_eq!(serde_json::from_str::<QSeries>(&text).unwrap(), s);
    assert!(serde_json::from_str::<QSeries>(r#"{"trunc":5,"coeffs":["1/1"]}"#).is_err());
    assert!(serde_json::from_str::<QSeries>(r#"{"trunc":0,"coeffs":["1/0"]}"#).is_err());
}

#[test]
fn report_json_uses_decimal_strings() {
    let cache = TauCache::new(30);
    let report = ramanujan_congruence_check(&cache, 30).unwrap();
    let v: Value = serde_json::to_value(&report).unwrap();
    assert_eq!(v["modulus"]["kind"], "integer");
    assert_eq!(v["modulus"]["m"], "691");
    assert_eq!(v["entries"][0]["residue"], "0");
    assert_eq!(v["passed"], true);
    let back: CongruenceReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, report);
}

#[test]
fn padic_json_round_trip() {
    let x = PadicInt::from_ratio(&rat(1, 3), 5, 3).unwrap();
    let v = serde_json::to_value(&x).unwrap();
    assert_eq!(v, serde_json::json!({ "p": 5, "precision": 3, "residue": "42" }));
    assert_eq!(serde_json::from_value::<PadicInt>(v).unwrap(), x);
}

#[test]
fn rational_parsing() {
    assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
    assert_eq!(parse_rational("7"), Some(rat(7, 1)));
    assert_eq!(parse_rational("1/0"), None);
    assert_eq!(parse_rational("x"), None);
}

#[test]
fn gstar_constant_term_is_regularised_zeta() {
    // G*_k has constant term (1 - p^{k-1}) ζ(1 - k) / 2, half the p-adic zeta value at k - 1.
    for (k, p) in [(4u32, 5u64), (6, 7), (12, 5), (6, 5), (10, 7)] {
        let g = eisenstein_gstar(k, p, 3).unwrap();
        let p_factor = Rational::from_integer(BigInt::from(1) - BigInt::from(p).pow(k - 1));
        let expected = p_factor * zeta_neg(k as usize - 1) / rat(2, 1);
        assert_eq!(kubota_leopoldt_rational(k - 1, p).is_ok(), k % (p as u32 - 1) != 0);
        assert_eq!(g.coeff(0), &expected, "k={k} p={p}");
        assert_eq!(g.coeff(1), &Rational::from_integer(BigInt::from(1)));
    }
}

#[test]
fn regularised_zeta_factors() {
    for k in 1..12u32 {
        let c = 2u64;
        let p = 7u64;
        let lhs = zeta_reg(c, p, k).unwrap();
        let c_factor = Rational::from_integer(BigInt::from(1) - BigInt::from(c).pow(k + 1));
        let p_factor = Rational::from_integer(BigInt::from(1) - BigInt::from(p).pow(k));
        assert_eq!(lhs, c_factor * p_factor * zeta_neg(k as usize));
    }
}

#[test]
fn partition_numbers_small() {
    let p = partition_numbers(10);
    let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    assert_eq!(p, expected.map(BigInt::from));
    assert_eq!(sigma(11, 2), BigInt::from(2049));
}
