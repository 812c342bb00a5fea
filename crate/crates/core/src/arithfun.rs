//! Divisor sums, partitions, theta series, sums of squares, and the classical
//! product/sum identities of Jacobi, Gauss and Cauchy.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qseries::{rat_int, QSeries, Rational};
use crate::report::{CongruenceReport, Modulus, ReportEntry};

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All positive divisors of `n ≥ 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Memoised divisor lists, safe to share across threads.
#[derive(Debug, Default)]
pub struct DivisorSumCache {
    map: RwLock<HashMap<u64, Arc<Vec<u64>>>>,
}

impl DivisorSumCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn divisors(&self, n: u64) -> Arc<Vec<u64>> {
        if let Some(ds) = self.map.read().expect("divisor cache poisoned").get(&n) {
            return Arc::clone(ds);
        }
        let ds = Arc::new(divisors(n));
        self.map.write().expect("divisor cache poisoned").entry(n).or_insert(ds).clone()
    }

    pub fn sigma(&self, k: u32, n: u64) -> BigInt {
        self.divisors(n).iter().map(|&d| BigInt::from(d).pow(k)).sum()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("divisor cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `σ_k(n) = Σ_{d | n} d^k`, via the factorisation of `n`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma is defined for n >= 1");
    factorize(n)
        .into_iter()
        .map(|(p, e)| {
            if k == 0 {
                BigInt::from(e + 1)
            } else {
                // 1 + p^k + ... + p^{ek}
                let pk = BigInt::from(p).pow(k);
                (BigInt::from(p).pow(k * (e + 1)) - 1u32) / (pk - 1u32)
            }
        })
        .product()
}

/// Divisor-power sum over the divisors of `n` prime to `p`.
pub fn sigma_star(k: u32, n: u64, p: u64) -> BigInt {
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    sigma(k, m)
}

/// `[0, σ_k(1), ..., σ_k(n_max)]` by a divisor sieve.
pub fn sigma_table(k: u32, n_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n_max + 1];
    for d in 1..=n_max {
        let dk = BigInt::from(d).pow(k);
        for m in (d..=n_max).step_by(d) {
            out[m] += &dk;
        }
    }
    out
}

/// `Σ p(n) q^n` to `O(q^{terms+1})`, by inverting `∏ (1 - q^m)`.
pub fn partition_series(terms: usize) -> QSeries {
    QSeries::euler_product(terms).inverse().expect("Euler product has constant term 1")
}

/// `p(0), ..., p(n_max)` from Euler's pentagonal-number recurrence.
pub fn partition_numbers(n_max: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    p.push(BigInt::one());
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

pub fn partition_count(n: usize) -> BigInt {
    partition_numbers(n).pop().expect("table is non-empty")
}

/// `exp(K λ) / (4√3 λ²)` with `K = π √(2/3)` and `λ = √(n - 1/24)`.
pub fn hardy_ramanujan_estimate(n: u64) -> f64 {
    let k = std::f64::consts::PI * (2.0f64 / 3.0).sqrt();
    let lambda = (n as f64 - 1.0 / 24.0).sqrt();
    (k * lambda).exp() / (4.0 * 3.0f64.sqrt() * lambda * lambda)
}

/// `p(n) / estimate(n)` computed from the exact partition count.
pub fn hardy_ramanujan_ratio(n: u64) -> f64 {
    let exact = partition_count(n as usize).to_f64().unwrap_or(f64::INFINITY);
    exact / hardy_ramanujan_estimate(n)
}

/// Passes iff `|p(n)/estimate(n) - 1| < tol`.
pub fn check_hardy_ramanujan(n: u64, tol: f64) -> CongruenceReport {
    let ratio = hardy_ramanujan_ratio(n);
    let entry = ReportEntry { value: Some(ratio), ..ReportEntry::flag(n, (ratio - 1.0).abs() < tol) };
    CongruenceReport::new("hardy-ramanujan", Modulus::Tolerance { tol }, vec![entry])
}

/// `θ = 1 + 2 Σ_{n ≥ 1} q^{n²}`.
pub fn theta_series(terms: usize) -> QSeries {
    let mut c = vec![0i64; terms + 1];
    c[0] = 1;
    let mut n = 1usize;
    while n * n <= terms {
        c[n * n] = 2;
        n += 1;
    }
    QSeries::from_integers(c)
}

/// `θ^k` by repeated multiplication.
pub fn theta_power(k: u32, terms: usize) -> QSeries {
    let theta = theta_series(terms);
    (0..k).fold(QSeries::one(terms), |acc, _| acc.mul(&theta))
}

/// `r_k(n)`: the number of `(n_1, ..., n_k) ∈ Z^k` with `Σ n_i² = n`,
/// read off as a coefficient of `θ^k` truncated at `terms`.
pub fn rk_count(k: u32, n: usize, terms: usize) -> Result<BigInt> {
    if n > terms {
        return Err(Error::PreconditionViolated(format!("n = {n} exceeds terms = {terms}")));
    }
    Ok(theta_power(k, terms).coeff(n).to_integer())
}

/// Jacobi: `r_4(n) = 8 σ(n)` for odd `n`, `24 Σ_{d | n, d odd} d` for even `n`.
pub fn r4_jacobi(n: u64) -> BigInt {
    if n % 2 == 1 {
        8 * sigma(1, n)
    } else {
        let odd: u64 = divisors(n).into_iter().filter(|d| d % 2 == 1).sum();
        BigInt::from(24u64 * odd)
    }
}

/// Gauss: `n` is a sum of three squares iff it is not of the form `4^a (8b + 7)`.
pub fn three_squares_representable(n: u64) -> bool {
    let mut m = n;
    while m != 0 && m % 4 == 0 {
        m /= 4;
    }
    m % 8 != 7
}

fn compare_series(check: &str, lhs: &QSeries, rhs: &QSeries) -> CongruenceReport {
    let n = lhs.trunc().min(rhs.trunc());
    let entries =
        (0..=n).map(|i| ReportEntry::flag(i as u64, lhs.coeff(i) == rhs.coeff(i))).collect();
    CongruenceReport::new(check, Modulus::Exact, entries)
        .with_support(lhs.support().into_iter().map(|i| i as u64).collect())
}

/// Σ_{n ≥ 0} q^{n(n+1)/2}, the triangular-number series.
pub fn triangular_series(terms: usize) -> QSeries {
    let mut c = vec![0i64; terms + 1];
    let mut n = 0usize;
    while n * (n + 1) / 2 <= terms {
        c[n * (n + 1) / 2] = 1;
        n += 1;
    }
    QSeries::from_integers(c)
}

/// `∏ (1 - q^{2m}) / ∏ (1 - q^{2m-1})`.
pub fn gauss_product(terms: usize) -> QSeries {
    let mut num = QSeries::one(terms);
    let mut den = QSeries::one(terms);
    for m in 1..=terms {
        let factor = binomial_factor(-1, m, terms);
        if m % 2 == 0 {
            num = num.mul(&factor);
        } else {
            den = den.mul(&factor);
        }
    }
    num.div(&den).expect("denominator has constant term 1")
}

fn binomial_factor(sign: i64, e: usize, terms: usize) -> QSeries {
    let mut s = QSeries::one(terms);
    if e <= terms {
        s = s.add(&QSeries::monomial(rat_int(sign), e, terms));
    }
    s
}

/// Gauss: product side versus triangular-number side. The report's support lists the
/// exponents where the product side is nonzero.
pub fn verify_gauss_identity(terms: usize) -> CongruenceReport {
    compare_series("gauss-identity", &gauss_product(terms), &triangular_series(terms))
}

/// `Σ_{n ∈ Z} u^n q^{n²}`.
pub fn jacobi_theta_sum(u: &Rational, terms: usize) -> Result<QSeries> {
    if u.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut c = vec![Rational::zero(); terms + 1];
    c[0] = Rational::one();
    let mut n = 1usize;
    while n * n <= terms {
        let e = i32::try_from(n).expect("small exponent");
        c[n * n] = u.pow(e) + u.pow(-e);
        n += 1;
    }
    Ok(QSeries::from_coeffs(c))
}

/// `∏_{m ≥ 0} (1 - q^{2m+2})(1 + u q^{2m+1})(1 + u^{-1} q^{2m+1})`.
pub fn jacobi_triple_product(u: &Rational, terms: usize) -> Result<QSeries> {
    if u.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let u_inv = u.recip();
    let mut acc = QSeries::one(terms);
    for m in 0.. {
        let odd = 2 * m + 1;
        if odd > terms {
            break;
        }
        let one = QSeries::one(terms);
        acc = acc.mul(&one.add(&QSeries::monomial(u.clone(), odd, terms)));
        acc = acc.mul(&one.add(&QSeries::monomial(u_inv.clone(), odd, terms)));
        if odd < terms {
            acc = acc.mul(&binomial_factor(-1, odd + 1, terms));
        }
    }
    Ok(acc)
}

pub fn verify_jacobi_triple(u: &Rational, terms: usize) -> Result<CongruenceReport> {
    let lhs = jacobi_theta_sum(u, terms)?;
    let rhs = jacobi_triple_product(u, terms)?;
    Ok(compare_series("jacobi-triple", &lhs, &rhs).with_note(format!("u = {u}")))
}

/// Sum side of Cauchy's identity, `1 + Σ_{n ≥ 1} (a;q)_n t^n / (q;q)_n`, summed over
/// all `n` for numeric `t ≠ 1`.
///
/// Mod `q^{N+1}` the term ratio `(a;q)_n / (q;q)_n` stops changing once `n > N`, and its
/// `q^m` coefficient already stops changing once `n > m`; the tail `Σ_{n > m} t^n` is
/// then the geometric value `t^{m+1} / (1 - t)`.
pub fn cauchy_sum_side(a: &Rational, t: &Rational, terms: usize) -> Result<QSeries> {
    let one = Rational::one();
    if *t == one {
        return Err(Error::PreconditionViolated("t = 1 makes the product side singular".into()));
    }
    let n_max = terms;
    // ratios[n][m] = [q^m] (a;q)_n / (q;q)_n
    let mut ratios: Vec<Vec<Rational>> = Vec::with_capacity(n_max + 2);
    let mut cur = vec![Rational::zero(); n_max + 1];
    cur[0] = one.clone();
    ratios.push(cur.clone());
    for n in 1..=n_max + 1 {
        // multiply by (1 - a q^{n-1})
        let mut next = cur.clone();
        for i in (n - 1..=n_max).rev() {
            let shifted = &cur[i - (n - 1)] * a;
            next[i] -= shifted;
        }
        // divide by (1 - q^n)
        for i in n..=n_max {
            let prev = next[i - n].clone();
            next[i] += prev;
        }
        cur = next;
        ratios.push(cur.clone());
    }
    let tail_factor = (&one - t).recip();
    let coeffs = (0..=n_max)
        .map(|m| {
            let mut acc = Rational::zero();
            let mut tn = one.clone();
            for row in ratios.iter().take(m + 1) {
                acc += &row[m] * &tn;
                tn *= t;
            }
            acc + &ratios[n_max + 1][m] * tn * &tail_factor
        })
        .collect();
    Ok(QSeries::from_coeffs(coeffs))
}

/// Product side `∏_{m ≥ 0} (1 - a t q^m) / ∏_{m ≥ 0} (1 - t q^m)`.
pub fn cauchy_product_side(a: &Rational, t: &Rational, terms: usize) -> Result<QSeries> {
    let mut num = QSeries::one(terms);
    let mut den = QSeries::one(terms);
    let at = a * t;
    for m in 0..=terms {
        let one = QSeries::one(terms);
        num = num.mul(&one.sub(&QSeries::monomial(at.clone(), m, terms)));
        den = den.mul(&one.sub(&QSeries::monomial(t.clone(), m, terms)));
    }
    den.inverse()
        .map(|d| num.mul(&d))
        .map_err(|_| Error::PreconditionViolated("t = 1 makes the product side singular".into()))
}

pub fn verify_cauchy(a: &Rational, t: &Rational, terms: usize) -> Result<CongruenceReport> {
    let lhs = cauchy_sum_side(a, t, terms)?;
    let rhs = cauchy_product_side(a, t, terms)?;
    Ok(compare_series("cauchy", &lhs, &rhs).with_note(format!("a = {a}, t = {t}")))
}

/// Compare the theta-power coefficient with Jacobi's closed form for `1 ≤ n ≤ n_max`.
pub fn check_r4(n_max: usize) -> CongruenceReport {
    let theta4 = theta_power(4, n_max);
    let entries = (1..=n_max)
        .map(|n| ReportEntry::flag(n as u64, theta4.coeff(n).to_integer() == r4_jacobi(n as u64)))
        .collect();
    CongruenceReport::new("r4", Modulus::Exact, entries)
}

/// Compare the three-squares criterion with positivity of the `θ³` coefficient.
pub fn check_three_squares(n_max: usize) -> CongruenceReport {
    let theta3 = theta_power(3, n_max);
    let entries = (1..=n_max)
        .map(|n| {
            let represented = theta3.coeff(n).is_positive();
            ReportEntry::flag(n as u64, represented == three_squares_representable(n as u64))
        })
        .collect();
    CongruenceReport::new("three-squares", Modulus::Exact, entries)
}
