//! Bernoulli numbers and level-one modular forms.
//!
//! Three normalisations of the weight-`k` Eisenstein series are provided:
//!
//! | function             | constant term          | `q^n` coefficient                 |
//! |----------------------|------------------------|-----------------------------------|
//! | [`eisenstein_e`]     | `1`                    | `-(2k / B_k) σ_{k-1}(n)`          |
//! | [`eisenstein_gfrak`] | `-B_k / 2k`            | `σ_{k-1}(n)`                      |
//! | [`eisenstein_gstar`] | `(1 - p^{k-1})(-B_k/2k)` | `σ*_{k-1}(n)` (divisors prime to `p`) |
//!
//! The discriminant is available from the eta product (two ways) and from
//! `(E_4³ - E_6²) / 1728`; the three agree exactly.

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Pow, Zero};

use crate::arithfun::{is_prime, sigma_table};
use crate::error::{Error, Result};
use crate::qseries::{convolve, rat, rat_int, QSeries, Rational};
use crate::report::{valuation_rat, CongruenceReport, Modulus, ReportEntry};

/// Exact `B_0, ..., B_{max_k}` with the convention `x / (e^x - 1) = Σ B_k x^k / k!`
/// (so `B_1 = -1/2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Even-index values come from the tangent numbers `T_k`
    /// (`tan x = Σ T_k x^{2k-1} / (2k-1)!`), which an integer-only triangle produces;
    /// then `B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))`.
    pub fn new(max_k: usize) -> Self {
        let half = max_k / 2;
        let mut tangent: Vec<BigInt> = vec![BigInt::zero(); half + 1];
        if half >= 1 {
            tangent[1] = BigInt::one();
        }
        for k in 2..=half {
            tangent[k] = &tangent[k - 1] * (k - 1);
        }
        for k in 2..=half {
            for j in k..=half {
                tangent[j] = &tangent[j - 1] * (j - k) + &tangent[j] * (j - k + 2);
            }
        }
        let mut values = vec![Rational::zero(); max_k + 1];
        values[0] = Rational::one();
        if max_k >= 1 {
            values[1] = rat(-1, 2);
        }
        for k in 1..=half {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - 1u32);
            let mut num = BigInt::from(2 * k) * &tangent[k];
            if k % 2 == 0 {
                num = -num;
            }
            values[2 * k] = Rational::new(num, den);
        }
        BernoulliTable { values }
    }

    pub fn max_k(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.values.get(k)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

static SHARED_TABLE: RwLock<Option<Arc<BernoulliTable>>> = RwLock::new(None);

/// Process-wide table covering at least `0..=max_k`, grown on demand.
pub fn shared_bernoulli(max_k: usize) -> Arc<BernoulliTable> {
    if let Some(t) = SHARED_TABLE.read().expect("bernoulli table poisoned").as_ref() {
        if t.max_k() >= max_k {
            return Arc::clone(t);
        }
    }
    let mut guard = SHARED_TABLE.write().expect("bernoulli table poisoned");
    if let Some(t) = guard.as_ref() {
        if t.max_k() >= max_k {
            return Arc::clone(t);
        }
    }
    let size = max_k.max(64).next_power_of_two();
    let table = Arc::new(BernoulliTable::new(size));
    *guard = Some(Arc::clone(&table));
    table
}

pub fn bernoulli_numbers(max_k: usize) -> BernoulliTable {
    BernoulliTable::new(max_k)
}

pub fn bernoulli(k: usize) -> Rational {
    shared_bernoulli(k).values[k].clone()
}

/// `B_k(x) = Σ_{i=0}^{k} C(k, i) B_i x^{k-i}`.
pub fn bernoulli_poly(k: usize, x: &Rational) -> Rational {
    let table = shared_bernoulli(k);
    let mut acc = Rational::zero();
    let mut xp = Rational::one();
    // accumulate from i = k down to 0 so x^{k-i} grows with the loop
    for i in (0..=k).rev() {
        acc += rat_int(binomial(BigInt::from(k), BigInt::from(i))) * &table.values[i] * &xp;
        xp *= x;
    }
    acc
}

/// `ζ(-k) = -B_{k+1}/(k+1)` for `k ≥ 1`; `ζ(0) = -1/2`.
pub fn zeta_neg(k: usize) -> Rational {
    if k == 0 {
        return rat(-1, 2);
    }
    -bernoulli(k + 1) / rat_int(k as u64 + 1)
}

fn check_weight(k: u32) -> Result<()> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidWeight(i64::from(k)));
    }
    Ok(())
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

fn sigma_series(k_minus_1: u32, terms: usize, constant: Rational, scale: &Rational) -> QSeries {
    let sig = sigma_table(k_minus_1, terms);
    let mut coeffs = Vec::with_capacity(terms + 1);
    coeffs.push(constant);
    coeffs.extend(sig.into_iter().skip(1).map(|s| rat_int(s) * scale));
    QSeries::from_coeffs(coeffs)
}

/// Normalised `E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n`.
pub fn eisenstein_e(k: u32, terms: usize) -> Result<QSeries> {
    check_weight(k)?;
    let factor = -rat_int(2 * k) / bernoulli(k as usize);
    Ok(sigma_series(k - 1, terms, Rational::one(), &factor))
}

/// `𝔾_k = -B_k/2k + Σ σ_{k-1}(n) q^n`, the normalisation with `a(1) = 1`.
pub fn eisenstein_gfrak(k: u32, terms: usize) -> Result<QSeries> {
    check_weight(k)?;
    let constant = -bernoulli(k as usize) / rat_int(2 * k);
    Ok(sigma_series(k - 1, terms, constant, &Rational::one()))
}

/// `𝔾*_k(z) = 𝔾_k(z) - p^{k-1} 𝔾_k(pz)`, the `p`-stabilised series.
pub fn eisenstein_gstar(k: u32, p: u64, terms: usize) -> Result<QSeries> {
    check_odd_prime(p)?;
    let g = eisenstein_gfrak(k, terms)?;
    let pk1 = rat_int(BigInt::from(p).pow(k - 1));
    Ok(g.sub(&g.substitute_qpow(p as usize).scale(&pk1)))
}

/// `τ(0), τ(1), ..., τ(n_max)` (with `τ(0) = 0`) from `Δ = q · (∏ (1 - q^m)^3)^8`,
/// where the cube is Jacobi's sparse series `Σ (-1)^i (2i+1) q^{i(i+1)/2}`.
pub fn delta_coefficients(n_max: usize) -> Vec<BigInt> {
    if n_max == 0 {
        return vec![BigInt::zero()];
    }
    let deg = n_max - 1;
    let mut cube = vec![BigInt::zero(); deg + 1];
    let mut i = 0usize;
    while i * (i + 1) / 2 <= deg {
        let c = BigInt::from(2 * i + 1);
        cube[i * (i + 1) / 2] = if i % 2 == 0 { c } else { -c };
        i += 1;
    }
    let mut acc = cube.clone();
    for _ in 1..8 {
        acc = convolve(&acc, &cube, deg);
    }
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(BigInt::zero());
    out.extend(acc);
    out
}

/// `Δ = Σ τ(n) q^n` via the Jacobi-cube eighth power.
pub fn delta_eta(terms: usize) -> QSeries {
    QSeries::from_integers(delta_coefficients(terms))
}

/// `Δ = q ∏ (1 - q^m)^{24}` by raising the Euler product to the 24th power directly.
pub fn delta_eta_product(terms: usize) -> QSeries {
    if terms == 0 {
        return QSeries::zero(0);
    }
    let inner = QSeries::euler_product(terms - 1).pow(24).expect("nonnegative exponent");
    let mut c = vec![Rational::zero()];
    c.extend(inner.into_coeffs());
    QSeries::from_coeffs(c)
}

/// `Δ = (E_4³ - E_6²) / 1728`.
pub fn delta_eisenstein(terms: usize) -> QSeries {
    let e4 = eisenstein_e(4, terms).expect("weight 4 is valid");
    let e6 = eisenstein_e(6, terms).expect("weight 6 is valid");
    let e4_cubed = e4.mul(&e4).mul(&e4);
    let e6_squared = e6.mul(&e6);
    e4_cubed.sub(&e6_squared).scale(&rat(1, 1728))
}

/// `q · j(z) = E_4³ / (Δ/q)`, so that the result has constant term 1 and no pole.
pub fn j_invariant_times_q(terms: usize) -> QSeries {
    let e4 = eisenstein_e(4, terms).expect("weight 4 is valid");
    let delta_over_q = delta_eta(terms + 1).div_q_power(1).expect("Δ is a cusp form");
    e4.mul(&e4).mul(&e4).div(&delta_over_q).expect("Δ/q has constant term 1")
}

/// Dimension of the space of level-one modular forms of weight `k`.
pub fn dim_mk(k: i64) -> u64 {
    if k < 0 || k % 2 != 0 {
        return 0;
    }
    let base = (k / 12) as u64;
    if k % 12 == 2 {
        base
    } else {
        base + 1
    }
}

/// Dimension of the cusp-form subspace.
pub fn dim_sk(k: i64) -> u64 {
    dim_mk(k).saturating_sub(1)
}

/// All `(α, β)` with `4α + 6β = k`; the monomials `E_4^α E_6^β` form a basis of `M_k`.
pub fn monomial_basis(k: u32) -> Vec<(u32, u32)> {
    (0..=k / 6).filter(|b| (k - 6 * b) % 4 == 0).map(|b| ((k - 6 * b) / 4, b)).collect()
}

/// `(Δ - Σ σ_11(n) q^n) / 691`; integral by Ramanujan's congruence.
pub fn ramanujan_quotient_series(terms: usize) -> Result<QSeries> {
    let tau = delta_coefficients(terms);
    let sig = sigma_table(11, terms);
    let divisor = BigInt::from(691);
    let mut out = Vec::with_capacity(terms + 1);
    for (n, (t, s)) in tau.iter().zip(&sig).enumerate() {
        let diff = t - s;
        if !(&diff % &divisor).is_zero() {
            return Err(Error::NonIntegralQuotient { index: n, divisor: 691 });
        }
        out.push(diff / &divisor);
    }
    Ok(QSeries::from_integers(out))
}

/// Coefficientwise congruence `𝔾*_k ≡ 𝔾*_{k'} mod p^N` (`c = None`), or the regularised
/// form `(1 - c^k) 𝔾*_k ≡ (1 - c^{k'}) 𝔾*_{k'} mod p^N` (`c = Some(c)`), checked over
/// the coefficients of `q^0, ..., q^terms`.
pub fn check_eisenstein_congruence(
    p: u64,
    k: u32,
    k2: u32,
    n: u32,
    terms: usize,
    c: Option<u64>,
) -> Result<CongruenceReport> {
    check_odd_prime(p)?;
    check_weight(k)?;
    check_weight(k2)?;
    if n == 0 {
        return Err(Error::PreconditionViolated("N must be at least 1".into()));
    }
    let period = BigInt::from(p - 1) * BigInt::from(p).pow(n - 1);
    if !((BigInt::from(k) - BigInt::from(k2)) % &period).is_zero() {
        return Err(Error::PreconditionViolated(format!("{k} != {k2} mod {period}")));
    }
    if let Some(c) = c {
        if c <= 1 || c % p == 0 {
            return Err(Error::PreconditionViolated(format!("c = {c} must exceed 1 and be prime to {p}")));
        }
    }
    let regularise = |weight: u32, s: QSeries| match c {
        Some(c) => s.scale(&(Rational::one() - rat_int(BigInt::from(c).pow(weight)))),
        None => s,
    };
    let f = regularise(k, eisenstein_gstar(k, p, terms)?);
    let g = regularise(k2, eisenstein_gstar(k2, p, terms)?);
    for s in [&f, &g] {
        if let Some(i) = s.coeffs().iter().position(|x| !valuation_rat(x, p).at_least(0)) {
            return Err(Error::DenominatorNotPUnit { index: i, p });
        }
    }
    let bound = i64::from(n);
    let entries = f
        .sub(&g)
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let v = valuation_rat(d, p);
            ReportEntry::valuation(i as u64, v, v.at_least(bound))
        })
        .collect();
    let name = if c.is_some() { "eisenstein-congruence-regularised" } else { "eisenstein-congruence" };
    Ok(CongruenceReport::new(name, Modulus::PrimePower { p, n }, entries)
        .with_note(format!("k = {k}, k' = {k2}")))
}
