//! Fixed-precision `p`-adic integers and the Bernoulli–Kummer–Mazur machinery.
//!
//! Every [`PadicInt`] carries its context `(p, N)`; arithmetic between different
//! contexts is an error rather than a silent coercion.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithfun::is_prime;
use crate::error::{Error, Result};
use crate::modforms::{bernoulli, bernoulli_poly, zeta_neg};
use crate::qseries::{rat_int, Rational};
use crate::report::{valuation_rat, CongruenceReport, Modulus, ReportEntry, Valuation};

/// Valuation offset allowed in the `S_k(p^N)/p^N → B_k` limit check: the difference
/// must have valuation at least `N - 1`. Measured over `p ∈ {3, 5, 7, 11}`, `k ≤ 24`,
/// `N ≤ 5`, where the worst case is exactly 1.
pub const BERNOULLI_LIMIT_OFFSET: i64 = 1;

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

fn check_regulariser(c: u64, p: u64) -> Result<()> {
    if c <= 1 || c % p == 0 {
        return Err(Error::PreconditionViolated(format!(
            "c = {c} must exceed 1 and be prime to {p}"
        )));
    }
    Ok(())
}

/// Element of `Z / p^N Z`, read as a `p`-adic integer known to precision `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    residue: BigInt,
}

impl PadicInt {
    pub fn modulus_of(p: u64, precision: u32) -> BigInt {
        BigInt::from(p).pow(precision)
    }

    pub fn from_integer(n: &BigInt, p: u64, precision: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if precision == 0 {
            return Err(Error::PreconditionViolated("precision must be positive".into()));
        }
        let residue = n.mod_floor(&Self::modulus_of(p, precision));
        Ok(PadicInt { p, precision, residue })
    }

    /// `num · den^{-1} mod p^N` for a `p`-integral rational.
    pub fn from_rational(num: &BigInt, den: &BigInt, p: u64, precision: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if den.is_zero() {
            return Err(Error::PreconditionViolated("zero denominator".into()));
        }
        let x = Rational::new(num.clone(), den.clone());
        Self::from_ratio(&x, p, precision)
    }

    /// Reduce a rational in lowest terms. `DenominatorDivisibleByP` if it is not `p`-integral.
    pub fn from_ratio(x: &Rational, p: u64, precision: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if x.is_zero() {
            return Self::from_integer(&BigInt::zero(), p, precision);
        }
        match valuation_rat(x, p) {
            Valuation::Finite(v) if v < 0 => return Err(Error::DenominatorDivisibleByP(p)),
            _ => {}
        }
        let m = Self::modulus_of(p, precision);
        let inv = mod_inverse(x.denom(), &m).ok_or(Error::DenominatorDivisibleByP(p))?;
        Self::from_integer(&(x.numer() * inv), p, precision)
    }

    pub fn zero(p: u64, precision: u32) -> Result<Self> {
        Self::from_integer(&BigInt::zero(), p, precision)
    }

    pub fn one(p: u64, precision: u32) -> Result<Self> {
        Self::from_integer(&BigInt::one(), p, precision)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Canonical representative in `[0, p^N)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        Self::modulus_of(self.p, self.precision)
    }

    /// Largest `v ≤ N` with `p^v` dividing the residue; `N` means zero at this precision.
    pub fn valuation(&self) -> u32 {
        match crate::report::valuation_int(&self.residue, self.p) {
            Valuation::Infinite => self.precision,
            Valuation::Finite(v) => v as u32,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.p).is_zero()
    }

    fn same_context(&self, other: &PadicInt) -> Result<()> {
        if self.p != other.p || self.precision != other.precision {
            return Err(Error::MixedContext);
        }
        Ok(())
    }

    fn with_residue(&self, r: BigInt) -> PadicInt {
        PadicInt { p: self.p, precision: self.precision, residue: r.mod_floor(&self.modulus()) }
    }

    pub fn add(&self, other: &PadicInt) -> Result<PadicInt> {
        self.same_context(other)?;
        Ok(self.with_residue(&self.residue + &other.residue))
    }

    pub fn sub(&self, other: &PadicInt) -> Result<PadicInt> {
        self.same_context(other)?;
        Ok(self.with_residue(&self.residue - &other.residue))
    }

    pub fn mul(&self, other: &PadicInt) -> Result<PadicInt> {
        self.same_context(other)?;
        Ok(self.with_residue(&self.residue * &other.residue))
    }

    pub fn neg(&self) -> PadicInt {
        self.with_residue(-&self.residue)
    }

    pub fn scale(&self, k: &BigInt) -> PadicInt {
        self.with_residue(&self.residue * k)
    }

    pub fn inv(&self) -> Result<PadicInt> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        let inv = mod_inverse(&self.residue, &self.modulus()).ok_or(Error::NonUnit)?;
        Ok(self.with_residue(inv))
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.precision)
    }
}

#[derive(Serialize, Deserialize)]
struct PadicJson {
    p: u64,
    precision: u32,
    residue: String,
}

impl Serialize for PadicInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicJson { p: self.p, precision: self.precision, residue: self.residue.to_string() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PadicJson::deserialize(d)?;
        let residue: BigInt = raw.residue.parse().map_err(D::Error::custom)?;
        let x = PadicInt::from_integer(&residue, raw.p, raw.precision).map_err(D::Error::custom)?;
        if x.residue != residue {
            return Err(D::Error::custom("residue outside [0, p^N)"));
        }
        Ok(x)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

/// Integer polynomial `Σ α_i x^i`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::new(coeffs)
    }

    /// `x^k - x^{k2}`.
    pub fn power_difference(k: usize, k2: usize) -> Self {
        Self::monomial(1, k).add(&Self::monomial(-1, k2))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Nonzero terms as `(degree, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    /// `h(a) mod m`, by square-and-multiply on each term.
    pub fn eval_mod(&self, a: &BigInt, m: &BigInt) -> BigInt {
        self.terms()
            .map(|(i, c)| c * a.modpow(&BigInt::from(i), m))
            .sum::<BigInt>()
            .mod_floor(m)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Accepts sums of terms like `3x^2`, `-x`, `5`, `2*x^10`, with optional spaces.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PolynomialSyntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut poly = IntPolynomial::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff, degree) = match body.split_once('x') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some((c, rest)) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let coeff = if c.is_empty() { BigInt::one() } else { c.parse().map_err(|_| bad())? };
                    let degree = match rest {
                        "" => 1,
                        r => r.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                    };
                    (coeff, degree)
                }
            };
            poly = poly.add(&IntPolynomial::monomial(coeff * sign, degree));
        }
        Ok(poly)
    }
}

/// `S_k(M) = Σ_{n=1}^{M-1} n^k` by direct summation.
pub fn power_sum_direct(k: u32, m: u64) -> BigInt {
    (1..m).map(|n| BigInt::from(n).pow(k)).sum()
}

/// `S_k(M) = (B_{k+1}(M) - B_{k+1}) / (k+1)`.
///
/// At `k = 0` the closed form counts the `n = 0` term (`0^0 = 1`), so it is removed.
pub fn power_sum_bernoulli(k: u32, m: u64) -> BigInt {
    let k1 = k as usize + 1;
    let s = (bernoulli_poly(k1, &rat_int(m)) - bernoulli(k1)) / rat_int(k1 as u64);
    assert!(s.is_integer(), "power sum closed form must be integral");
    let zero_term = if k == 0 { BigInt::one() } else { BigInt::zero() };
    s.to_integer() - zero_term
}

/// `S_k(M)`, computed both ways; disagreement is reported as an internal error.
pub fn power_sum(k: u32, m: u64) -> Result<BigInt> {
    let direct = power_sum_direct(k, m);
    let closed = power_sum_bernoulli(k, m);
    if direct != closed {
        return Err(Error::AlgorithmMismatch(format!("S_{k}({m}): {direct} vs {closed}")));
    }
    Ok(direct)
}

/// `S*_k(p^N) = Σ n^k` over `1 ≤ n < p^N` with `p ∤ n`, checked against
/// `S_k(p^N) - p^k S_k(p^{N-1})`.
pub fn power_sum_star(k: u32, p: u64, n: u32) -> Result<BigInt> {
    check_odd_prime(p)?;
    if n == 0 {
        return Err(Error::PreconditionViolated("N must be at least 1".into()));
    }
    let pn = p.pow(n);
    let direct: BigInt = (1..pn).filter(|i| i % p != 0).map(|i| BigInt::from(i).pow(k)).sum();
    let closed = power_sum(k, pn)? - BigInt::from(p).pow(k) * power_sum(k, pn / p)?;
    if direct != closed {
        return Err(Error::AlgorithmMismatch(format!("S*_{k}({p}^{n}): {direct} vs {closed}")));
    }
    Ok(direct)
}

/// `v_p(S_k(p^N)/p^N - B_k)` for `N = 1..=n_max`. Passes when the valuations strictly
/// increase and each is at least `N - BERNOULLI_LIMIT_OFFSET`.
pub fn bernoulli_padic_limit_check(k: u32, p: u64, n_max: u32) -> Result<CongruenceReport> {
    check_odd_prime(p)?;
    if k % (p as u32 - 1) == 0 {
        // includes k = 0; von Staudt–Clausen puts p in the denominator of B_k otherwise
        return Err(Error::NonPIntegral { p, what: format!("B_{k}") });
    }
    let b = bernoulli(k as usize);
    let mut entries = Vec::new();
    let mut prev: Option<Valuation> = None;
    for n in 1..=n_max {
        let pn = p.pow(n);
        let diff = Rational::new(power_sum(k, pn)?, BigInt::from(pn)) - &b;
        let v = valuation_rat(&diff, p);
        let increasing = prev.is_none_or(|pv| v > pv);
        let ok = increasing && v.at_least(i64::from(n) - BERNOULLI_LIMIT_OFFSET);
        entries.push(ReportEntry::valuation(u64::from(n), v, ok));
        prev = Some(v);
    }
    Ok(CongruenceReport::new("bernoulli-limit", Modulus::PrimePower { p, n: n_max }, entries)
        .with_note(format!("k = {k}")))
}

/// `ζ^{(c)}_{(p)}(-k) = (1 - c^{k+1})(1 - p^k) ζ(-k)`, always `p`-integral.
pub fn zeta_reg(c: u64, p: u64, k: u32) -> Result<Rational> {
    check_odd_prime(p)?;
    check_regulariser(c, p)?;
    if k == 0 {
        // the factor (1 - p^0) vanishes
        return Ok(Rational::zero());
    }
    let c_factor = BigInt::one() - BigInt::from(c).pow(k + 1);
    let p_factor = BigInt::one() - BigInt::from(p).pow(k);
    let value = zeta_neg(k as usize) * rat_int(c_factor * p_factor);
    if !valuation_rat(&value, p).at_least(0) {
        return Err(Error::NonPIntegral { p, what: format!("regularised zeta at -{k}") });
    }
    Ok(value)
}

/// Kummer: if `h(a) ≡ 0 mod p^N` on all units `a`, then `Σ α_i ζ^{(c)}_{(p)}(-i) ≡ 0 mod p^N`.
///
/// The hypothesis is checked over every unit residue mod `p^N`; if it fails,
/// [`Error::HypothesisFails`] names a witness and no conclusion is drawn.
pub fn kummer_check(h: &IntPolynomial, p: u64, n: u32, c: u64) -> Result<CongruenceReport> {
    check_odd_prime(p)?;
    check_regulariser(c, p)?;
    if n == 0 {
        return Err(Error::PreconditionViolated("N must be at least 1".into()));
    }
    let m = BigInt::from(p).pow(n);
    let pn = p.pow(n);
    for a in (1..pn).filter(|a| a % p != 0) {
        let a = BigInt::from(a);
        if !h.eval_mod(&a, &m).is_zero() {
            return Err(Error::HypothesisFails { witness: a, modulus: m });
        }
    }
    let mut total = Rational::zero();
    for (i, alpha) in h.terms() {
        total += zeta_reg(c, p, i as u32)? * rat_int(alpha.clone());
    }
    let v = valuation_rat(&total, p);
    let entry = ReportEntry::valuation(0, v, v.at_least(i64::from(n)));
    Ok(CongruenceReport::new("kummer", Modulus::PrimePower { p, n }, vec![entry])
        .with_hypothesis(true)
        .with_note(format!("h = {h}, c = {c}")))
}

fn check_period(k: u32, k2: u32, p: u64, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::PreconditionViolated("N must be at least 1".into()));
    }
    let period = BigInt::from(p - 1) * BigInt::from(p).pow(n - 1);
    if !((BigInt::from(k) - BigInt::from(k2)) % &period).is_zero() {
        return Err(Error::PreconditionViolated(format!("{k} != {k2} mod {period}")));
    }
    Ok(())
}

/// `ζ^{(c)}_{(p)}(-k) ≡ ζ^{(c)}_{(p)}(-k') mod p^N` for `k ≡ k' mod (p-1)p^{N-1}`.
pub fn kummer_continuity(k: u32, k2: u32, p: u64, n: u32, c: u64) -> Result<CongruenceReport> {
    check_odd_prime(p)?;
    check_period(k, k2, p, n)?;
    let diff = zeta_reg(c, p, k)? - zeta_reg(c, p, k2)?;
    let v = valuation_rat(&diff, p);
    let entry = ReportEntry::valuation(u64::from(k), v, v.at_least(i64::from(n)));
    Ok(CongruenceReport::new("kummer-continuity", Modulus::PrimePower { p, n }, vec![entry])
        .with_note(format!("k = {k}, k' = {k2}, c = {c}")))
}

/// `∫_{Z_p^*} x^k dμ^{(c)}` as an exact rational: `0` for `k = 0`, otherwise
/// `(1 - c^k)(1 - p^{k-1}) ζ(1 - k)`.
pub fn mazur_moment_rational(k: u32, c: u64, p: u64) -> Result<Rational> {
    if k == 0 {
        check_odd_prime(p)?;
        check_regulariser(c, p)?;
        return Ok(Rational::zero());
    }
    zeta_reg(c, p, k - 1)
}

pub fn mazur_moment(k: u32, c: u64, p: u64, n: u32) -> Result<PadicInt> {
    PadicInt::from_ratio(&mazur_moment_rational(k, c, p)?, p, n)
}

/// `∫ h dμ^{(c)} = Σ α_k · moment(k)` in `Z / p^N Z`.
pub fn mazur_integrate_poly(h: &IntPolynomial, c: u64, p: u64, n: u32) -> Result<PadicInt> {
    let mut acc = PadicInt::zero(p, n)?;
    for (k, alpha) in h.terms() {
        acc = acc.add(&mazur_moment(k as u32, c, p, n)?.scale(alpha))?;
    }
    Ok(acc)
}

/// Non-archimedean Mellin transform of `μ^{(c)}` at the character `x ↦ x^k`.
pub fn mellin_at_power(k: u32, c: u64, p: u64, n: u32) -> Result<PadicInt> {
    mazur_moment(k, c, p, n)
}

/// `(1 - p^k) ζ(-k)` as an exact rational, or `NonPIntegral` when it has `p` in its denominator.
pub fn kubota_leopoldt_rational(k: u32, p: u64) -> Result<Rational> {
    check_odd_prime(p)?;
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be at least 1".into()));
    }
    let value = zeta_neg(k as usize) * rat_int(BigInt::one() - BigInt::from(p).pow(k));
    if !valuation_rat(&value, p).at_least(0) {
        return Err(Error::NonPIntegral { p, what: format!("(1 - {p}^{k}) zeta(-{k})") });
    }
    Ok(value)
}

/// `ζ_p(x_p^k) = (1 - p^k) ζ(-k)` reduced mod `p^N`.
pub fn kubota_leopoldt_value(k: u32, p: u64, n: u32) -> Result<PadicInt> {
    PadicInt::from_ratio(&kubota_leopoldt_rational(k, p)?, p, n)
}

/// Moments `0..=k_max` for every `(p, c)` given, each checked `p`-integral.
pub fn mazur_moment_sweep(primes: &[u64], cs: &[u64], k_max: u32) -> Result<CongruenceReport> {
    let mut entries = Vec::new();
    for &p in primes {
        for &c in cs {
            for k in 0..=k_max {
                let m = mazur_moment_rational(k, c, p)?;
                let v = valuation_rat(&m, p);
                let ok = v.at_least(0) && (k != 0 || m.is_zero());
                entries.push(ReportEntry::valuation(p * 1_000_000 + c * 1000 + u64::from(k), v, ok));
            }
        }
    }
    Ok(CongruenceReport::new("mazur-moments", Modulus::Exact, entries)
        .with_note("entry index encodes 1000000*p + 1000*c + k"))
}

/// Convert a `PadicInt` residue to `u64` when it fits (display helper).
pub fn residue_u64(x: &PadicInt) -> Option<u64> {
    x.residue().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rat;
    use proptest::prelude::*;

    fn pi(n: i64, p: u64, prec: u32) -> PadicInt {
        PadicInt::from_integer(&BigInt::from(n), p, prec).unwrap()
    }

    #[test]
    fn from_rational() {
        let half = PadicInt::from_rational(&BigInt::from(1), &BigInt::from(2), 5, 3).unwrap();
        assert_eq!(half.residue(), &BigInt::from(63));
        assert!(PadicInt::from_rational(&BigInt::from(0), &BigInt::from(1), 7, 4).unwrap().is_zero());
        let z = PadicInt::from_rational(&BigInt::from(-1), &BigInt::from(12), 5, 2).unwrap();
        assert_eq!((z.residue() * 12 + 1) % 25, BigInt::from(0));
        assert_eq!(
            PadicInt::from_rational(&BigInt::from(1), &BigInt::from(10), 5, 2),
            Err(Error::DenominatorDivisibleByP(5))
        );
        // 5/10 = 1/2 is 5-integral once reduced
        assert!(PadicInt::from_rational(&BigInt::from(5), &BigInt::from(10), 5, 2).is_ok());
        assert_eq!(PadicInt::from_integer(&BigInt::from(1), 4, 2), Err(Error::InvalidPrime(4)));
    }

    #[test]
    fn ring_ops() {
        let a = pi(7, 5, 2);
        let b = pi(18, 5, 2);
        assert_eq!(a.mul(&b).unwrap().residue(), &BigInt::from(1));
        assert_eq!(a.add(&PadicInt::zero(5, 2).unwrap()).unwrap(), a);
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), PadicInt::one(5, 2).unwrap());
        assert_eq!(pi(10, 5, 2).inv(), Err(Error::NonUnit));
        assert_eq!(a.add(&pi(1, 5, 3)), Err(Error::MixedContext));
        assert_eq!(a.add(&pi(1, 7, 2)), Err(Error::MixedContext));
        assert_eq!(pi(50, 5, 3).valuation(), 2);
        assert_eq!(pi(125, 5, 3).valuation(), 3);
        assert_eq!(pi(-1, 5, 2).residue(), &BigInt::from(24));
    }

    #[test]
    fn json_form() {
        let x = pi(63, 5, 3);
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"p":5,"precision":3,"residue":"63"}"#);
        assert_eq!(serde_json::from_str::<PadicInt>(&js).unwrap(), x);
        assert!(serde_json::from_str::<PadicInt>(r#"{"p":5,"precision":1,"residue":"7"}"#).is_err());
    }

    #[test]
    fn polynomials() {
        let h: IntPolynomial = "x^2-x^22".parse().unwrap();
        assert_eq!(h, IntPolynomial::power_difference(2, 22));
        let g: IntPolynomial = "3 - 2*x + x^3 + 5x^3".parse().unwrap();
        assert_eq!(g.coeffs(), &[3, -2, 0, 6].map(BigInt::from));
        assert_eq!(g.to_string(), "3-2*x+6*x^3");
        assert!("x^".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("x^2-x^2".parse::<IntPolynomial>().unwrap().is_zero());
        assert_eq!(g.eval_mod(&BigInt::from(2), &BigInt::from(1000)), BigInt::from(47));
    }

    #[test]
    fn power_sums() {
        assert_eq!(power_sum(3, 10).unwrap(), BigInt::from(2025));
        assert_eq!(power_sum(0, 17).unwrap(), BigInt::from(16));
        assert_eq!(power_sum_star(2, 3, 2).unwrap(), BigInt::from(159));
        for (p, n) in [(3u64, 1u32), (5, 2), (7, 3)] {
            assert_eq!(power_sum_star(0, p, n).unwrap(), BigInt::from(p.pow(n) - p.pow(n - 1)));
        }
        // S_1(p^N)/p^N = (p^N - 1)/2 → -1/2
        for n in 1..5 {
            let pn = 3u64.pow(n);
            let x = Rational::new(power_sum(1, pn).unwrap(), BigInt::from(pn));
            assert_eq!(x, rat((pn - 1) as i64, 2));
        }
    }

    #[test]
    fn power_sum_exhaustive() {
        for k in 0..=10 {
            for m in 1..=200 {
                assert_eq!(power_sum_direct(k, m), power_sum_bernoulli(k, m), "k={k} M={m}");
            }
        }
        for k in 0..=8 {
            for p in [3, 5, 7] {
                for n in 1..=3 {
                    power_sum_star(k, p, n).unwrap();
                }
            }
        }
    }

    #[test]
    fn star_limit_grows() {
        // v_p(S*_{k+1}(p^N)/p^N - (1 - p^k) B_{k+1}) increases with N
        let (k, p) = (3u32, 5u64);
        let target = (Rational::from_integer(BigInt::one()) - rat_int(BigInt::from(p).pow(k)))
            * bernoulli(k as usize + 1);
        let vals: Vec<Valuation> = (1..=4)
            .map(|n| {
                let pn = p.pow(n);
                let s = Rational::new(power_sum_star(k + 1, p, n).unwrap(), BigInt::from(pn));
                valuation_rat(&(s - &target), p)
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
    }

    #[test]
    fn bernoulli_limits() {
        for p in [3u64, 5, 7] {
            let r = bernoulli_padic_limit_check(1, p, 4).unwrap();
            assert!(r.passed);
            for (i, e) in r.entries.iter().enumerate() {
                assert!(e.valuation.unwrap().at_least(i as i64 + 1));
            }
        }
        let r = bernoulli_padic_limit_check(4, 7, 4).unwrap();
        assert!(r.passed, "{r}");
        assert!(matches!(bernoulli_padic_limit_check(0, 5, 3), Err(Error::NonPIntegral { .. })));
        assert!(matches!(bernoulli_padic_limit_check(4, 5, 3), Err(Error::NonPIntegral { .. })));
    }

    #[test]
    fn regularised_zeta() {
        assert_eq!(zeta_reg(2, 5, 0).unwrap(), rat(0, 1));
        assert_eq!(zeta_reg(2, 5, 1).unwrap(), rat(-1, 1));
        for c in [2, 3] {
            for p in [3, 5, 7] {
                if c % p == 0 {
                    continue;
                }
                for k in 0..=20 {
                    assert!(valuation_rat(&zeta_reg(c, p, k).unwrap(), p).at_least(0));
                }
            }
        }
        assert!(zeta_reg(5, 5, 3).is_err());
        assert!(zeta_reg(1, 5, 3).is_err());
    }

    #[test]
    fn kummer() {
        let h = IntPolynomial::power_difference(2, 22);
        let r = kummer_check(&h, 5, 2, 2).unwrap();
        assert!(r.passed && r.hypothesis_holds == Some(true), "{r}");
        assert!(kummer_check(&IntPolynomial::zero(), 7, 3, 3).unwrap().passed);
        let bad = IntPolynomial::power_difference(2, 3);
        assert!(matches!(kummer_check(&bad, 5, 1, 2), Err(Error::HypothesisFails { .. })));
    }

    #[test]
    fn continuity() {
        assert!(kummer_continuity(1, 5, 5, 1, 2).unwrap().passed);
        let same = kummer_continuity(7, 7, 5, 3, 2).unwrap();
        assert_eq!(same.entries[0].valuation, Some(Valuation::Infinite));
        assert!(kummer_continuity(2, 2 + 6 * 7, 7, 2, 3).unwrap().passed);
        assert!(matches!(kummer_continuity(1, 4, 5, 1, 2), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn mazur() {
        assert!(mazur_integrate_poly(&IntPolynomial::monomial(1, 0), 2, 5, 3).unwrap().is_zero());
        let x2 = mazur_integrate_poly(&IntPolynomial::monomial(1, 2), 3, 7, 2).unwrap();
        let expected = rat((1 - 9) * (1 - 7), 1) * rat(-1, 12);
        assert_eq!(x2, PadicInt::from_ratio(&expected, 7, 2).unwrap());
        for k in 0..=20 {
            assert_eq!(
                mellin_at_power(k, 2, 5, 3).unwrap(),
                mazur_integrate_poly(&IntPolynomial::monomial(1, k as usize), 2, 5, 3).unwrap()
            );
        }
        assert!(mellin_at_power(1, 2, 5, 2).unwrap().is_zero());
        assert!(mazur_moment_sweep(&[3, 5, 7], &[2, 3], 20).is_err()); // c = 3 with p = 3
        assert!(mazur_moment_sweep(&[5, 7], &[2, 3], 20).unwrap().passed);
    }

    #[test]
    fn kubota_leopoldt() {
        let v = kubota_leopoldt_value(1, 5, 3).unwrap();
        assert_eq!(kubota_leopoldt_rational(1, 5).unwrap(), rat(1, 3));
        assert_eq!(v, PadicInt::from_ratio(&rat(1, 3), 5, 3).unwrap());
        assert!(kubota_leopoldt_value(2, 7, 2).unwrap().is_zero());
        assert!(kubota_leopoldt_value(4, 5, 2).unwrap().is_zero());
        assert!(matches!(kubota_leopoldt_value(3, 5, 2), Err(Error::NonPIntegral { .. })));
        // odd k with p - 1 | k + 1 lands on a von Staudt denominator
        for p in [3u64, 5, 7, 11] {
            for k in (1..40u32).step_by(2) {
                let r = kubota_leopoldt_value(k, p, 2);
                assert_eq!(r.is_err(), (k + 1) % (p as u32 - 1) == 0, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn kubota_leopoldt_congruence_in_k() {
        for (p, n) in [(5u64, 2u32), (7, 2), (3, 3)] {
            let period = (p as u32 - 1) * (p as u32).pow(n - 1);
            for k in (1..15u32).step_by(2) {
                let (Ok(a), Ok(b)) = (kubota_leopoldt_value(k, p, n), kubota_leopoldt_value(k + period, p, n)) else {
                    continue;
                };
                assert_eq!(a, b, "p={p} N={n} k={k}");
            }
        }
    }

    fn padic_triple() -> impl Strategy<Value = (PadicInt, PadicInt, PadicInt)> {
        (prop::sample::select(vec![3u64, 5, 7, 11]), 1u32..5, any::<i64>(), any::<i64>(), any::<i64>())
            .prop_map(|(p, n, a, b, c)| (pi(a, p, n), pi(b, p, n), pi(c, p, n)))
    }

    proptest! {
        #[test]
        fn padic_ring_axioms((a, b, c) in padic_triple()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert!(a.add(&a.neg()).unwrap().is_zero());
            if a.is_unit() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), PadicInt::one(a.p(), a.precision()).unwrap());
            }
        }

        #[test]
        fn mazur_linear(
            h1 in prop::collection::vec(-50i64..50, 0..8),
            h2 in prop::collection::vec(-50i64..50, 0..8),
        ) {
            let h1 = IntPolynomial::new(h1.into_iter().map(BigInt::from).collect());
            let h2 = IntPolynomial::new(h2.into_iter().map(BigInt::from).collect());
            let lhs = mazur_integrate_poly(&h1.add(&h2), 2, 5, 3).unwrap();
            let rhs = mazur_integrate_poly(&h1, 2, 5, 3).unwrap()
                .add(&mazur_integrate_poly(&h2, 2, 5, 3).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
