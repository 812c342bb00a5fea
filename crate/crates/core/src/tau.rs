//! Ramanujan's `τ(n)` by independent routes, and the classical checks on it.
//!
//! - [`tau_eta`]: coefficient of the eta product `q ∏ (1 - q^m)^24`.
//! - [`tau_eisenstein`]: coefficient of `(E_4³ - E_6²) / 1728`.
//! - [`tau_manin`]: Manin's formula
//!   `τ(n) = σ_11(n) - (691/18) Σ* Δ²δ²(Δ² - δ²)³`, summed over the admissible
//!   solutions of `n = ΔΔ' + δδ'` produced by [`manin_enumerate`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::arithfun::{gcd, is_prime, sigma};
use crate::error::{Error, Result};
use crate::modforms::{delta_coefficients, delta_eisenstein};
use crate::report::{CongruenceReport, Modulus, ReportEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ManinWeight {
    One,
    Half,
}

/// Which part of the admissible set a solution comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManinBranch {
    /// `Δ > δ > 0`, `Δ' > δ' > 0`.
    Interior,
    /// `δ' = 0`, `Δ | n`, `0 ≤ δ/Δ ≤ 1/2`.
    Boundary,
}

/// One admissible solution of `n = ΔΔ' + δδ'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManinSolution {
    pub big_delta: u64,
    pub big_delta_prime: u64,
    pub small_delta: u64,
    pub small_delta_prime: u64,
    pub weight: ManinWeight,
    pub branch: ManinBranch,
    /// 1-based running count over the whole enumeration.
    pub index: usize,
}

impl ManinSolution {
    /// `Δ²δ²(Δ² - δ²)³`, without the weight.
    pub fn summand(&self) -> BigInt {
        let d2 = BigInt::from(self.big_delta).pow(2u32);
        let e2 = BigInt::from(self.small_delta).pow(2u32);
        let diff = &d2 - &e2;
        d2 * e2 * diff.pow(3u32)
    }

    /// The same quantity written as `(Δ⁸δ² - Δ²δ⁸) - 3(Δ⁶δ⁴ - Δ⁴δ⁶)`.
    pub fn summand_expanded(&self) -> BigInt {
        let d = BigInt::from(self.big_delta);
        let e = BigInt::from(self.small_delta);
        let p = |a: &BigInt, k: u32| a.pow(k);
        (p(&d, 8) * p(&e, 2) - p(&d, 2) * p(&e, 8)) - 3 * (p(&d, 6) * p(&e, 4) - p(&d, 4) * p(&e, 6))
    }

    /// Twice the weight, so sums stay integral.
    fn doubled_weight(&self) -> u32 {
        match self.weight {
            ManinWeight::One => 2,
            ManinWeight::Half => 1,
        }
    }
}

/// Ascending divisor lists for `1..=n` by sieve; index 0 is empty.
fn divisor_lists(n: usize) -> Vec<Vec<u64>> {
    let mut lists = vec![Vec::new(); n + 1];
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            lists[m].push(d as u64);
        }
    }
    lists
}

/// Every admissible solution for `n`, in the order of the reference enumeration:
/// interior solutions by increasing `Δ`, then `Δ'`, then `δ`; then boundary solutions
/// by increasing divisor `Δ` and `δ = 0..=⌊Δ/2⌋`.
pub fn manin_enumerate(n: u64) -> Vec<ManinSolution> {
    assert!(n >= 1, "Manin enumeration needs n >= 1");
    let divs = divisor_lists(n as usize);
    let mut out = Vec::new();
    for big in 1..n {
        let mut big_prime = 1u64;
        while big * big_prime < n {
            let rest = n - big * big_prime;
            for &small in &divs[rest as usize] {
                let small_prime = rest / small;
                if small < big && small_prime < big_prime {
                    out.push(ManinSolution {
                        big_delta: big,
                        big_delta_prime: big_prime,
                        small_delta: small,
                        small_delta_prime: small_prime,
                        weight: ManinWeight::One,
                        branch: ManinBranch::Interior,
                        index: out.len() + 1,
                    });
                }
            }
            big_prime += 1;
        }
    }
    for &big in &divs[n as usize] {
        for small in 0..=big / 2 {
            out.push(ManinSolution {
                big_delta: big,
                big_delta_prime: n / big,
                small_delta: small,
                small_delta_prime: 0,
                weight: if 2 * small == big { ManinWeight::Half } else { ManinWeight::One },
                branch: ManinBranch::Boundary,
                index: out.len() + 1,
            });
        }
    }
    out
}

/// `2 · Σ* weight · Δ²δ²(Δ² - δ²)³`.
pub fn manin_doubled_sum(solutions: &[ManinSolution]) -> BigInt {
    solutions.iter().map(|s| s.summand() * s.doubled_weight()).sum()
}

/// `τ(n)` from Manin's formula. The result must be an integer; if the weighted sum
/// is not divisible accordingly the enumeration is wrong and an error is returned.
pub fn tau_manin(n: u64) -> Result<BigInt> {
    let doubled = manin_doubled_sum(&manin_enumerate(n));
    // (691/18) S = 691 (2S) / 36
    let (q, r) = (doubled * BigInt::from(691)).div_rem(&BigInt::from(36));
    if !r.is_zero() {
        return Err(Error::NonIntegralResult { n });
    }
    Ok(sigma(11, n) - q)
}

/// True iff the two printed forms of the Manin summand agree on every solution for `n`.
pub fn tau_manin_variant_check(n: u64) -> bool {
    manin_enumerate(n).iter().all(|s| s.summand() == s.summand_expanded())
}

/// `τ(n)` from the eta product.
pub fn tau_eta(n: u64) -> BigInt {
    delta_coefficients(n as usize).swap_remove(n as usize)
}

/// `τ(1..=n_max)` read from `(E_4³ - E_6²) / 1728`; index 0 holds `τ(0) = 0`.
pub fn tau_eisenstein_table(n_max: usize) -> Vec<BigInt> {
    delta_eisenstein(n_max)
        .to_integers()
        .expect("(E4^3 - E6^2)/1728 has integer coefficients")
}

pub fn tau_eisenstein(n: u64) -> BigInt {
    tau_eisenstein_table(n as usize).swap_remove(n as usize)
}

/// `τ(1..=n_max)` from one eta-product expansion, read-only after construction.
#[derive(Debug, Clone)]
pub struct TauCache {
    values: Vec<BigInt>,
}

impl TauCache {
    pub fn new(n_max: u64) -> Self {
        TauCache { values: delta_coefficients(n_max as usize) }
    }

    pub fn n_max(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn get(&self, n: u64) -> Result<&BigInt> {
        if n == 0 || n > self.n_max() {
            return Err(Error::RangeExceeded { requested: n, max: self.n_max() });
        }
        Ok(&self.values[n as usize])
    }

    /// `τ(1), ..., τ(n_max)`.
    pub fn values(&self) -> &[BigInt] {
        &self.values[1..]
    }
}

/// Hecke relations at `(m, n)`:
/// - `τ(mn) = τ(m)τ(n)` when `gcd(m, n) = 1`;
/// - `τ(m)τ(n) = Σ_{d | gcd(m,n)} d^11 τ(mn/d²)`;
/// - `τ(p^{r+1}) = τ(p^r)τ(p) - p^11 τ(p^{r-1})` whenever `m` or `n` is a prime power `p^{r+1}`, `r ≥ 1`.
pub fn hecke_check(cache: &TauCache, m: u64, n: u64) -> Result<bool> {
    let mn = m.saturating_mul(n);
    cache.get(m.max(1))?;
    cache.get(mn)?;
    let tau = |k: u64| cache.get(k).expect("range checked above");
    let g = gcd(m, n);
    let mut ok = true;
    if g == 1 {
        ok &= *tau(mn) == tau(m) * tau(n);
    }
    let conv: BigInt = (1..=g)
        .filter(|d| g % d == 0)
        .map(|d| BigInt::from(d).pow(11u32) * tau(mn / (d * d)))
        .sum();
    ok &= tau(m) * tau(n) == conv;
    for x in [m, n] {
        if let Some((p, e)) = prime_power(x) {
            if e >= 2 {
                let pe = |k: u32| tau(p.pow(k));
                ok &= *pe(e) == pe(e - 1) * pe(1) - BigInt::from(p).pow(11u32) * pe(e - 2);
            }
        }
    }
    Ok(ok)
}

fn prime_power(x: u64) -> Option<(u64, u32)> {
    let f = crate::arithfun::factorize(x);
    (f.len() == 1).then(|| f[0])
}

/// Deligne's bound at a prime, as the exact comparison `τ(p)² < 4 p^11`.
pub fn deligne_check(cache: &TauCache, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let t = cache.get(p)?;
    Ok(t * t < BigInt::from(4) * BigInt::from(p).pow(11u32))
}

/// Deligne's bound at every prime up to `p_max`.
pub fn deligne_sweep(cache: &TauCache, p_max: u64) -> Result<CongruenceReport> {
    let entries = (2..=p_max)
        .filter(|&p| is_prime(p))
        .map(|p| deligne_check(cache, p).map(|ok| ReportEntry::flag(p, ok)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CongruenceReport::new("deligne", Modulus::Exact, entries))
}

/// `τ(n) ≡ σ_11(n) mod 691` for `1 ≤ n ≤ n_max`; entries carry `(τ(n) - σ_11(n)) mod 691`.
pub fn ramanujan_congruence_check(cache: &TauCache, n_max: u64) -> Result<CongruenceReport> {
    let m = BigInt::from(691);
    let sig = crate::arithfun::sigma_table(11, n_max as usize);
    let entries = (1..=n_max)
        .map(|n| {
            let r = (cache.get(n)? - &sig[n as usize]).mod_floor(&m);
            Ok(ReportEntry::residue(n, r.clone(), r.is_zero()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CongruenceReport::new("ramanujan-691", Modulus::Integer { m }, entries))
}

/// First `n ≤ n_max` with `τ(n) = 0`, if any.
pub fn lehmer_check(cache: &TauCache, n_max: u64) -> Result<Option<u64>> {
    for n in 1..=n_max {
        if cache.get(n)?.is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Hecke relations for every pair `1 ≤ m, n ≤ max` with `mn` in range.
pub fn hecke_sweep(cache: &TauCache, max: u64) -> Result<CongruenceReport> {
    let mut entries = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            if m * n <= cache.n_max() {
                entries.push(ReportEntry::flag(m * 1000 + n, hecke_check(cache, m, n)?));
            }
        }
    }
    Ok(CongruenceReport::new("hecke", Modulus::Exact, entries)
        .with_note("entry index encodes the pair as 1000*m + n"))
}
