//! Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.
//!
//! Run with `cargo test -p modkernel-core --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use modkernel::arithfun::{
    check_hardy_ramanujan, partition_count, r4_jacobi, theta_power, three_squares_representable,
    verify_cauchy, verify_gauss_identity, verify_jacobi_triple,
};
use modkernel::modforms::{
    bernoulli, check_eisenstein_congruence, delta_eisenstein, delta_eta, dim_mk, dim_sk,
    eisenstein_e, monomial_basis, ramanujan_quotient_series,
};
use modkernel::padic::{
    kummer_check, mazur_integrate_poly, mazur_moment_rational, IntPolynomial, PadicInt,
};
use modkernel::qseries::rat;
use modkernel::report::valuation_rat;
use modkernel::tau::{tau_eisenstein_table, tau_manin, TauCache};
use modkernel::{BigInt, Rational};
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, title: &str, ok: bool, detail: impl AsRef<str>) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id:>2}: {tag} - {title} ({})", detail.as_ref());
    assert!(ok, "criterion {id} failed: {}", detail.as_ref());
}

fn big(s: &str) -> BigInt {
    s.parse().expect("decimal literal")
}

#[test]
fn criterion_01_delta_expansion() {
    let printed: [i64; 19] = [
        1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
        -577738, 401856, 1217160, 987136, -6905934, 2727432, 10661420,
    ];
    let start = Instant::now();
    let delta = delta_eta(19);
    let elapsed = start.elapsed();
    let mismatches: Vec<usize> = (1..=19)
        .filter(|&n| delta.coeff(n) != &Rational::from_integer(BigInt::from(printed[n - 1])))
        .collect();
    let ok = mismatches.is_empty() && elapsed < Duration::from_secs(1);
    verdict(1, "delta q-expansion", ok, format!("mismatches {mismatches:?}, {elapsed:?}"));
}

#[test]
fn criterion_02_cross_method_tau() {
    let start = Instant::now();
    let eta = TauCache::new(200);
    let eis = tau_eisenstein_table(200);
    let mut bad = Vec::new();
    for n in 1..=200u64 {
        let a = eta.get(n).unwrap();
        let man = tau_manin(n).unwrap();
        if a != &eis[n as usize] || a != &man {
            bad.push(n);
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(60);
    verdict(2, "eta = eisenstein = manin for n <= 200", ok, format!("disagree at {bad:?}, {elapsed:?}"));
}

#[test]
fn criterion_03_tau_691_and_6911() {
    let m691 = BigInt::from(691);
    let m691_sq = &m691 * &m691;
    let cache = TauCache::new(691);
    let t691 = cache.get(691).unwrap().clone();
    let ok691 = t691 == big("-2747313442193908") && (&t691 - 1u32) % &m691 == BigInt::zero();

    let start = Instant::now();
    let t6911 = tau_manin(6911).unwrap();
    let elapsed = start.elapsed();
    let target = BigInt::one() + BigInt::from(6911).pow(11u32);
    let diff = &t6911 - &target;
    let ok6911 = t6911 == big("-615012709514736031488")
        && (&diff % &m691).is_zero()
        && !(&diff % &m691_sq).is_zero();
    let ok = ok691 && ok6911 && elapsed < Duration::from_secs(120);
    verdict(
        3,
        "tau(691), tau(6911) and their 691-congruences",
        ok,
        format!("tau(691)={t691}, tau(6911)={t6911}, manin {elapsed:?}"),
    );
}

#[test]
fn criterion_04_ramanujan_quotient() {
    let printed: [i64; 13] = [
        -2861568,
        -12437115,
        -45414400,
        -144788634,
        -412896000,
        -1075797268,
        -2593575936,
        -5863302600,
        -12517805568,
        -25471460475,
        -49597544448,
        -93053764671,
        -168582124800,
    ];
    let quotient = ramanujan_quotient_series(199);
    let ok = match &quotient {
        Ok(s) => {
            s.is_integral()
                && (7..=19).all(|n| s.coeff(n) == &Rational::from_integer(BigInt::from(printed[n - 7])))
        }
        Err(_) => false,
    };
    verdict(4, "(delta - sigma_11)/691 integral to O(q^200) with printed block", ok, format!("{:?}", quotient.as_ref().err()));
}

#[test]
fn criterion_05_gauss_identity() {
    let report = verify_gauss_identity(100);
    let support = report.lhs_support.clone().unwrap_or_default();
    let triangular: Vec<u64> = (0..).map(|n: u64| n * (n + 1) / 2).take_while(|&t| t <= 100).collect();
    let tail_ok = support.ends_with(&[78, 91]);
    let ok = report.passed && support == triangular && tail_ok;
    verdict(5, "Gauss identity to O(q^101)", ok, format!("support tail {:?}", &support[support.len().saturating_sub(3)..]));
}

fn lattice_count(k: u32, n: i64) -> u64 {
    let r = (n as f64).sqrt() as i64 + 1;
    fn go(k: u32, rem: i64, r: i64) -> u64 {
        if k == 0 {
            return u64::from(rem == 0);
        }
        (-r..=r).filter(|x| x * x <= rem).map(|x| go(k - 1, rem - x * x, r)).sum()
    }
    go(k, n, r)
}

#[test]
fn criterion_06_sums_of_squares() {
    let theta4 = theta_power(4, 2000);
    let theta3 = theta_power(3, 2000);
    let mut bad = Vec::new();
    for n in 1..=2000u64 {
        let c4 = theta4.coeff(n as usize).to_integer();
        let c3 = theta3.coeff(n as usize).to_integer();
        if c4 != r4_jacobi(n) || three_squares_representable(n) != (c3 > BigInt::zero()) {
            bad.push(n);
        }
        if n <= 200
            && (c4 != BigInt::from(lattice_count(4, n as i64)) || c3 != BigInt::from(lattice_count(3, n as i64)))
        {
            bad.push(n);
        }
    }
    verdict(6, "r4 Jacobi formula and three-squares criterion", bad.is_empty(), format!("bad {bad:?}"));
}

#[test]
fn criterion_07_bernoulli_printed_list() {
    // Transcribed as printed, including its signs.
    let printed = [
        (0, rat(1, 1)),
        (1, rat(-1, 2)),
        (2, rat(1, 6)),
        (4, rat(-1, 30)),
        (6, rat(1, 42)),
        (8, rat(-5, 66)),
        (12, rat(691, 2730)),
        (14, rat(-7, 6)),
        (16, rat(3617, 510)),
        (18, rat(-43867, 798)),
    ];
    let mismatches: Vec<String> = printed
        .iter()
        .filter(|(k, v)| &bernoulli(*k) != v)
        .map(|(k, v)| format!("B_{k}: computed {} printed {v}", bernoulli(*k)))
        .collect();
    verdict(7, "Bernoulli table against printed list", mismatches.is_empty(), mismatches.join("; "));
}

#[test]
fn criterion_08_eisenstein_congruence() {
    let a = check_eisenstein_congruence(5, 6, 26, 2, 100, None).unwrap();
    let b = check_eisenstein_congruence(5, 4, 24, 2, 100, Some(2)).unwrap();
    let ok = a.passed && b.passed && a.entries.len() == 101 && b.entries.len() == 101;
    verdict(8, "Eisenstein congruences mod 5^2", ok, format!("min valuations {:?} / {:?}", a.min_valuation, b.min_valuation));
}

#[test]
fn criterion_09_kummer_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b75_6d6d_6572);
    let mut failures = Vec::new();
    let mut runs = 0;
    for p in [3u64, 5, 7] {
        for n in 1..=3u32 {
            let period = ((p - 1) * p.pow(n - 1)) as usize;
            for _ in 0..100 {
                let k = rng.gen_range(1..=30usize);
                let k2 = k + period * rng.gen_range(0..=3usize);
                let c = if rng.gen_bool(0.5) { 2 } else { 3 };
                let c = if c % p == 0 { 2 } else { c };
                let h = IntPolynomial::power_difference(k, k2);
                runs += 1;
                match kummer_check(&h, p, n, c) {
                    Ok(r) if r.passed && r.hypothesis_holds == Some(true) => {}
                    other => failures.push(format!("p={p} N={n} k={k} k'={k2} c={c}: {other:?}")),
                }
            }
        }
    }
    verdict(9, "Kummer congruences, randomized", failures.is_empty(), format!("{runs} runs, failures {failures:?}"));
}

#[test]
fn criterion_10_mazur_moments() {
    let mut ok = true;
    for p in [3u64, 5, 7] {
        for c in [2u64, 3] {
            if c % p == 0 {
                continue;
            }
            ok &= mazur_moment_rational(0, c, p).unwrap().is_zero();
            for k in 0..=20 {
                ok &= valuation_rat(&mazur_moment_rational(k, c, p).unwrap(), p).at_least(0);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x006d_617a_7572);
    let random_poly = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..10);
        IntPolynomial::new((0..len).map(|_| BigInt::from(rng.gen_range(-1000i64..1000))).collect())
    };
    for _ in 0..50 {
        let (h1, h2) = (random_poly(&mut rng), random_poly(&mut rng));
        for (p, c) in [(5u64, 2u64), (7, 3), (3, 2)] {
            let lhs = mazur_integrate_poly(&h1.add(&h2), c, p, 3).unwrap();
            let rhs: PadicInt = mazur_integrate_poly(&h1, c, p, 3)
                .unwrap()
                .add(&mazur_integrate_poly(&h2, c, p, 3).unwrap())
                .unwrap();
            ok &= lhs == rhs;
        }
    }
    verdict(10, "Mazur moments: mass, integrality, linearity", ok, "p in {3,5,7}, c in {2,3}, k <= 20");
}

#[test]
fn criterion_11_hardy_ramanujan() {
    let start = Instant::now();
    let p1000 = partition_count(1000);
    let report = check_hardy_ramanujan(1000, 0.05);
    let elapsed = start.elapsed();
    let expected = big("24061467864032622473692149727991");
    let ok = p1000 == expected && report.passed && elapsed < Duration::from_secs(1);
    verdict(11, "Hardy-Ramanujan ratio at n = 1000", ok, format!("{report}, {elapsed:?}"));
}

#[test]
fn criterion_12_dimensions() {
    let bad: Vec<u32> = (0..=200)
        .step_by(2)
        .filter(|&k| monomial_basis(k).len() as u64 != dim_mk(i64::from(k)))
        .collect();
    let ok = bad.is_empty() && dim_sk(12) == 1;
    verdict(12, "dimension formulas", ok, format!("bad weights {bad:?}"));
}

#[test]
fn criterion_13_identity_suite() {
    const T: usize = 59;
    let e = |k| eisenstein_e(k, T).unwrap();
    let mut failed = Vec::new();
    if e(4).mul(&e(4)) != e(8) {
        failed.push("E4^2 = E8".to_string());
    }
    if e(4).mul(&e(6)) != e(10) {
        failed.push("E4 E6 = E10".to_string());
    }
    if delta_eta(T) != delta_eisenstein(T) {
        failed.push("delta routes".to_string());
    }
    for u in [rat(1, 1), rat(-1, 1), rat(2, 1)] {
        if !verify_jacobi_triple(&u, T).map(|r| r.passed).unwrap_or(false) {
            failed.push(format!("Jacobi u={u}"));
        }
    }
    for (a, t) in [(rat(0, 1), rat(1, 2)), (rat(1, 1), rat(1, 3)), (rat(1, 2), rat(1, 2))] {
        if !verify_cauchy(&a, &t, T).map(|r| r.passed).unwrap_or(false) {
            failed.push(format!("Cauchy a={a} t={t}"));
        }
    }
    verdict(13, "identity suite to O(q^60)", failed.is_empty(), format!("failed {failed:?}"));
}
