//! Liar sets for a single modulus.
//!
//! Brute-force enumerators walk every residue and exist as oracles. The
//! closed forms work from a factorization:
//!
//! * strong: `(1 + (2^{rv} - 1) / (2^r - 1)) * prod gcd(n', p')`, with `r` the
//!   number of distinct primes and `v` the least 2-adic valuation of `p - 1`;
//! * Euler: `delta(n) * prod gcd((n - 1)/2, p - 1)`;
//! * Fermat: `prod gcd(n - 1, p - 1)`.

use serde::Serialize;

use crate::arith::{self, gcd, jacobi_unsigned, mul_mod, odd_part, pow_mod_unchecked};
use crate::error::{Error, Result};
use crate::sieve::Factorization;

/// Largest modulus the enumerators accept.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LiarCounts {
    pub strong: u64,
    pub euler: u64,
    pub fermat: u64,
}

fn check_brute(n: u64, min: u64) -> Result<()> {
    if n < min || n > BRUTE_FORCE_LIMIT {
        return Err(Error::OutOfRange { n, min, max: BRUTE_FORCE_LIMIT });
    }
    Ok(())
}

fn check_odd(n: u64) -> Result<()> {
    if n % 2 == 0 {
        Err(Error::EvenModulus(n))
    } else {
        Ok(())
    }
}

fn check_odd_composite(n: u64, f: &Factorization) -> Result<()> {
    f.check(n)?;
    if n % 2 == 0 || f.is_prime() {
        Err(Error::NotOddComposite(n))
    } else {
        Ok(())
    }
}

/// Strong-test membership of `a` for the modulus `n`, with `n - 1 = 2^k * odd`.
#[inline]
fn is_strong_liar(a: u64, n: u64, k: u32, odd: u64) -> bool {
    let mut b = pow_mod_unchecked(a, odd, n);
    // b = -1 at i = 0 only counts when k >= 1
    if b == 1 || (k >= 1 && b == n - 1) {
        return true;
    }
    for _ in 1..k {
        b = mul_mod(b, b, n);
        if b == n - 1 {
            return true;
        }
    }
    false
}

/// All residues `a` in `[0, n)` passing the strong test.
pub fn enumerate_strong_liars(n: u64) -> Result<Vec<u64>> {
    check_brute(n, 3)?;
    let d = arith::odd_decompose(n - 1)?;
    Ok((0..n).filter(|&a| is_strong_liar(a, n, d.k, d.odd)).collect())
}

pub fn enumerate_euler_liars(n: u64) -> Result<Vec<u64>> {
    check_odd(n)?;
    check_brute(n, 3)?;
    let half = (n - 1) / 2;
    Ok((1..n)
        .filter(|&a| {
            let j = jacobi_unsigned(a, n);
            // j == 0 exactly when gcd(a, n) > 1
            j != 0 && pow_mod_unchecked(a, half, n) == if j == 1 { 1 } else { n - 1 }
        })
        .collect())
}

pub fn enumerate_fermat_liars(n: u64) -> Result<Vec<u64>> {
    check_brute(n, 3)?;
    Ok((0..n).filter(|&a| pow_mod_unchecked(a, n - 1, n) == 1).collect())
}

/// Brute-force counts for odd `n`; used by the verification harness.
pub fn brute_force_counts(n: u64) -> Result<LiarCounts> {
    check_odd(n)?;
    Ok(LiarCounts {
        strong: enumerate_strong_liars(n)?.len() as u64,
        euler: enumerate_euler_liars(n)?.len() as u64,
        fermat: enumerate_fermat_liars(n)?.len() as u64,
    })
}

/// Monier's count of strong liars.
pub fn monier_strong_count(n: u64, f: &Factorization) -> Result<u64> {
    if n < 3 {
        return Err(Error::OutOfRange { n, min: 3, max: u64::MAX });
    }
    f.check(n)?;
    Ok(strong_count_from_primes(n, f.primes()))
}

/// Strong-liar count from the distinct prime divisors of `n` alone.
pub(crate) fn strong_count_from_primes(n: u64, primes: impl Iterator<Item = u64>) -> u64 {
    let n_odd = odd_part(n - 1);
    let mut r = 0u32;
    let mut v = u32::MAX;
    let mut product = 1u64;
    for p in primes {
        r += 1;
        v = v.min((p - 1).trailing_zeros().min(63));
        product *= gcd(n_odd, odd_part(p - 1));
    }
    // (2^{rv} - 1) / (2^r - 1) = sum_{j < v} 2^{rj}; rv < 64 because n > 2^{rv}
    let mut geometric = 0u64;
    for j in 0..v {
        geometric += 1u64 << (r * j);
    }
    (1 + geometric) * product
}

/// `(delta, e)` of Monier's Euler-liar count, with `delta` doubled to stay integral.
fn euler_parts(n: u64, f: &Factorization) -> (u64, u64) {
    let half = (n - 1) / 2;
    let k = (n - 1).trailing_zeros();
    let e: u64 = f.primes().map(|p| gcd(half, p - 1)).product();
    let v = f.primes().map(|p| (p - 1).trailing_zeros()).min().unwrap_or(0);
    let twice_delta = if v == k {
        4
    } else if f
        .factors()
        .iter()
        .any(|&(p, a)| (p - 1).trailing_zeros() < k && a % 2 == 1)
    {
        1
    } else {
        2
    };
    (twice_delta, e)
}

/// Monier's count of Euler liars for odd `n`. The `ord_p(n)` in `delta` is
/// read as the exponent of `p` in `n`.
pub fn monier_euler_count(n: u64, f: &Factorization) -> Result<u64> {
    check_odd(n)?;
    if n < 3 {
        return Err(Error::OutOfRange { n, min: 3, max: u64::MAX });
    }
    f.check(n)?;
    let (twice_delta, e) = euler_parts(n, f);
    debug_assert_eq!((twice_delta * e) % 2, 0);
    Ok(twice_delta * e / 2)
}

pub fn fermat_count(n: u64, f: &Factorization) -> Result<u64> {
    if n < 3 {
        return Err(Error::OutOfRange { n, min: 3, max: u64::MAX });
    }
    f.check(n)?;
    Ok(f.primes().map(|p| gcd(n - 1, p - 1)).product())
}

/// Closed-form counts for odd `n >= 3`.
pub fn liar_counts(n: u64, f: &Factorization) -> Result<LiarCounts> {
    Ok(LiarCounts {
        strong: monier_strong_count(n, f)?,
        euler: monier_euler_count(n, f)?,
        fermat: fermat_count(n, f)?,
    })
}

/// Exactly two strong liars: some `p | n` with `p = 3 mod 4`, and
/// `gcd(p', n') = 1` for every `p | n`.
pub fn has_two_strong_liars(n: u64, f: &Factorization) -> Result<bool> {
    check_odd_composite(n, f)?;
    Ok(two_strong_liars_from_primes(n, f.primes()))
}

#[inline]
pub(crate) fn two_strong_liars_from_primes(n: u64, primes: impl Iterator<Item = u64>) -> bool {
    let n_odd = odd_part(n - 1);
    let mut has_3mod4 = false;
    for p in primes {
        if gcd(odd_part(p - 1), n_odd) != 1 {
            return false;
        }
        has_3mod4 |= p % 4 == 3;
    }
    has_3mod4
}

/// Exactly two Euler liars, decided by the closed form.
pub fn has_two_euler_liars(n: u64, f: &Factorization) -> Result<bool> {
    check_odd_composite(n, f)?;
    Ok(monier_euler_count(n, f)? == 2)
}

/// The two-case description of `|E(n)| = 2`: either `n = 3 mod 4` with every
/// `gcd(p', n') = 1`, or `n = 1 mod 4` with `n = pq` for distinct primes
/// `p, q = 3 mod 4` and `gcd(p', n') gcd(q', n') = 1`.
///
/// It agrees with the closed form on squarefree `n` but misses non-squarefree
/// `n = 1 mod 4` such as 9, 81 and 189, all of which have two Euler liars;
/// [`has_two_euler_liars`] is the authoritative predicate.
pub fn two_euler_liars_by_cases(n: u64, f: &Factorization) -> Result<bool> {
    check_odd_composite(n, f)?;
    let n_odd = odd_part(n - 1);
    let coprime = f.primes().all(|p| gcd(odd_part(p - 1), n_odd) == 1);
    Ok(match n % 4 {
        3 => coprime,
        _ => coprime
            && f.distinct() == 2
            && f.is_squarefree()
            && f.primes().all(|p| p % 4 == 3),
    })
}

pub fn euler_phi(f: &Factorization) -> u64 {
    f.factors()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// Korselt: squarefree, composite, and `p - 1 | n - 1` for all `p | n`.
pub fn is_carmichael(n: u64, f: &Factorization) -> bool {
    n % 2 == 1
        && f.distinct() >= 2
        && f.is_squarefree()
        && f.primes().all(|p| (n - 1) % (p - 1) == 0)
}

/// The families of odd composites with more than `phi(n)/8` strong liars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum WorstCase {
    /// `(m + 1)(2m + 1)` with both factors odd primes.
    PairDouble { m: u64 },
    /// `(m + 1)(3m + 1)` with both factors primes `= 3 mod 4`.
    PairTriple { m: u64 },
    /// Carmichael number with three prime factors, each `p - 1` exactly divisible by `2^s`.
    Carmichael3 { s: u32 },
    /// 9, 25 or 49.
    SmallSquare,
    None,
}

impl WorstCase {
    pub fn label(&self) -> &'static str {
        match self {
            WorstCase::PairDouble { .. } => "case1_m_2m",
            WorstCase::PairTriple { .. } => "case2_m_3m",
            WorstCase::Carmichael3 { .. } => "case3_carmichael3",
            WorstCase::SmallSquare => "case4_small_square",
            WorstCase::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WorstCaseClass {
    pub category: WorstCase,
    /// `|S(n)| = phi(n)/4`.
    pub is_max: bool,
}

pub fn classify_worst_case(n: u64, f: &Factorization) -> Result<WorstCaseClass> {
    check_odd_composite(n, f)?;
    let category = if matches!(n, 9 | 25 | 49) {
        WorstCase::SmallSquare
    } else if f.distinct() == 2 && f.is_squarefree() {
        let (p, q) = (f.factors()[0].0, f.factors()[1].0);
        if q == 2 * p - 1 {
            WorstCase::PairDouble { m: p - 1 }
        } else if q == 3 * p - 2 && p % 4 == 3 && q % 4 == 3 {
            WorstCase::PairTriple { m: p - 1 }
        } else {
            WorstCase::None
        }
    } else if f.distinct() == 3 && is_carmichael(n, f) {
        let s = (f.factors()[0].0 - 1).trailing_zeros();
        if f.primes().all(|p| (p - 1).trailing_zeros() == s) {
            WorstCase::Carmichael3 { s }
        } else {
            WorstCase::None
        }
    } else {
        WorstCase::None
    };
    let strong = monier_strong_count(n, f)?;
    Ok(WorstCaseClass { category, is_max: 4 * strong == euler_phi(f) })
}
