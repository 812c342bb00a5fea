//! Truncated formal power series in one variable `q` with exact rational coefficients.
//!
//! A [`QSeries`] with truncation `N` stores `c_0, ..., c_N` and stands for
//! `c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})`. Binary operations truncate to the
//! smaller of the two operand truncations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parse `"a/b"` or `"a"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `"num/den"` with the denominator always present.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Build from explicit coefficients `c_0..c_N`; the truncation is `len - 1`.
    ///
    /// Panics on an empty vector: a series always knows at least its constant term.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        QSeries { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(coeffs.into_iter().map(|c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(trunc: usize) -> Self {
        QSeries { coeffs: vec![Rational::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// `c·q^e`; zero if `e` lies beyond the truncation.
    pub fn monomial(c: Rational, e: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if e <= trunc {
            s.coeffs[e] = c;
        }
        s
    }

    /// `∏_{m ≥ 1} (1 - q^m)` known to `O(q^{trunc+1})`.
    pub fn euler_product(trunc: usize) -> Self {
        let mut c: Vec<BigInt> = vec![BigInt::zero(); trunc + 1];
        c[0] = BigInt::one();
        for m in 1..=trunc {
            for i in (m..=trunc).rev() {
                let t = c[i - m].clone();
                c[i] -= t;
            }
        }
        Self::from_integers(c)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`. Panics when `n` exceeds the truncation.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if some coefficient has a denominator.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    /// Forget everything beyond `q^n` (no-op if already coarser).
    pub fn truncate(&self, n: usize) -> QSeries {
        let n = n.min(self.trunc());
        QSeries { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn scale(&self, s: &Rational) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.trunc().min(other.trunc());
        QSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.trunc().min(other.trunc());
        QSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect() }
    }

    pub fn neg(&self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Cauchy product truncated to the smaller truncation.
    ///
    /// Both operands are cleared of denominators first so the convolution runs over
    /// integers; zero coefficients are skipped, which makes sparse operands (theta
    /// series, pentagonal products) cheap.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.trunc().min(other.trunc());
        let (a, da) = clear_denominators(&self.coeffs[..=n]);
        let (b, db) = clear_denominators(&other.coeffs[..=n]);
        let prod = convolve(&a, &b, n);
        let denom = da * db;
        QSeries {
            coeffs: prod.into_iter().map(|c| Rational::new(c, denom.clone())).collect(),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<QSeries> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.trunc();
        if let Some(ints) = self.to_integers() {
            if ints[0].abs().is_one() {
                return Ok(Self::from_integers(inverse_unit_integral(&ints)));
            }
        }
        let inv_a0 = a0.recip();
        let nz: Vec<(usize, &Rational)> =
            self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(inv_a0.clone());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for &(k, ak) in nz.iter().take_while(|(k, _)| *k <= m) {
                acc += ak * &b[m - k];
            }
            b.push(-(acc * &inv_a0));
        }
        Ok(QSeries { coeffs: b })
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Integer power by binary exponentiation; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<QSeries> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QSeries::one(self.trunc());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// The unique `b` with `b_0 = 1` and `b^n = self`, for a series with constant term 1.
    ///
    /// Uses the recurrence coming from `a·b' = (1/n)·a'·b`:
    /// `m·b_m = Σ_{k=1}^{m} (k/n - (m - k)) a_k b_{m-k}`.
    pub fn nth_root(&self, n: u32) -> Result<QSeries> {
        if n == 0 {
            return Err(Error::PreconditionViolated("root index must be positive".into()));
        }
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let alpha = rat(1, i64::from(n));
        let nz: Vec<(usize, &Rational)> =
            self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut b: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        b.push(Rational::one());
        for m in 1..=self.trunc() {
            let mut acc = Rational::zero();
            for &(k, ak) in nz.iter().take_while(|(k, _)| *k <= m) {
                let w = &alpha * rat_int(k as u64) - rat_int((m - k) as u64);
                acc += w * ak * &b[m - k];
            }
            b.push(acc / rat_int(m as u64));
        }
        Ok(QSeries { coeffs: b })
    }

    /// `q ↦ q^m`: the coefficient of `q^{mk}` becomes `a_k`, all others zero.
    pub fn substitute_qpow(&self, m: usize) -> QSeries {
        assert!(m >= 1, "substitution exponent must be positive");
        let n = self.trunc();
        let mut out = QSeries::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            match k.checked_mul(m) {
                Some(e) if e <= n => out.coeffs[e] = c.clone(),
                _ => break,
            }
        }
        out
    }

    /// Divide by `q^k`. The first `k` coefficients must vanish; the truncation drops by `k`.
    pub fn div_q_power(&self, k: usize) -> Option<QSeries> {
        if k > self.trunc() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QSeries { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Multiply by `q^k`, keeping the truncation.
    pub fn mul_q_power(&self, k: usize) -> QSeries {
        let n = self.trunc();
        let mut out = QSeries::zero(n);
        for i in k..=n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }
}

fn clear_denominators(c: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = c
        .iter()
        .map(|x| if l.is_one() { x.numer().clone() } else { x.numer() * (&l / x.denom()) })
        .collect();
    (ints, l)
}

fn nonzero(c: &[BigInt]) -> Vec<(usize, &BigInt)> {
    c.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// Truncated integer convolution over nonzero entries only.
pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    let (a_nz, b_nz) = (nonzero(a), nonzero(b));
    let (outer, inner) = if a_nz.len() <= b_nz.len() { (a_nz, b_nz) } else { (b_nz, a_nz) };
    for &(i, x) in &outer {
        for &(j, y) in inner.iter().take_while(|(j, _)| i + j <= n) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of an integer series whose constant term is ±1; stays in the integers.
pub(crate) fn inverse_unit_integral(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len() - 1;
    let a0 = &a[0];
    let nz: Vec<(usize, &BigInt)> = nonzero(a).into_iter().filter(|(k, _)| *k > 0).collect();
    let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
    b.push(a0.clone());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for &(k, ak) in nz.iter().take_while(|(k, _)| *k <= m) {
            acc += ak * &b[m - k];
        }
        // a0 = ±1 is its own inverse
        b.push(-(acc * a0));
    }
    b
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.coeffs.len())
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesJson {
    trunc: usize,
    coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesJson { trunc: self.trunc(), coeffs: self.coeffs.iter().map(format_rational).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QSeriesJson::deserialize(d)?;
        if raw.coeffs.len() != raw.trunc + 1 {
            return Err(D::Error::custom(format!(
                "trunc {} requires {} coefficients, got {}",
                raw.trunc,
                raw.trunc + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(QSeries { coeffs })
    }
}
