//! Constants and leading-order predictions. Logarithms are natural.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sieve::{small_primes, FactorTable};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `prod_{p > 2} (1 - 1/(p - 1)^2)`.
pub const TWIN_PRIME_C: f64 = 0.660_161_815_846_869_6;

/// Truncation bound used when the twin-prime product is evaluated numerically.
pub const DEFAULT_TWIN_PRIME_BOUND: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
    pub exp_neg_gamma: f64,
    /// Twin-prime product truncated at `twin_prime_bound`.
    pub twin_prime_c: f64,
    pub twin_prime_bound: u64,
}

impl Constants {
    pub fn evaluate(twin_prime_bound: u64) -> Self {
        Self {
            euler_gamma: EULER_GAMMA,
            exp_neg_gamma: (-EULER_GAMMA).exp(),
            twin_prime_c: twin_prime_constant(twin_prime_bound),
            twin_prime_bound,
        }
    }
}

/// `prod_{2 < p <= bound} (1 - 1/(p - 1)^2)`; the empty product is 1.
pub fn twin_prime_constant(bound: u64) -> f64 {
    small_primes(bound)
        .into_iter()
        .skip(1)
        .map(|p| {
            let d = (p - 1) as f64;
            1.0 - 1.0 / (d * d)
        })
        .product()
}

fn logloglog(x: u64) -> Result<f64> {
    if x <= 16 {
        return Err(Error::LimitTooSmall(x));
    }
    Ok((x as f64).ln().ln().ln())
}

/// `x e^{-gamma} / logloglog x`.
pub fn predict_two_liar_count(x: u64) -> Result<f64> {
    Ok(x as f64 * (-EULER_GAMMA).exp() / logloglog(x)?)
}

/// `count * logloglog x / x`.
pub fn normalized_ratio(count: u64, x: u64) -> Result<f64> {
    Ok(count as f64 * logloglog(x)? / x as f64)
}

fn semiprime_scale(x: u64) -> Result<f64> {
    if x < 16 {
        return Err(Error::LimitTooSmall(x));
    }
    let lx = (x as f64).ln();
    Ok(x as f64 * lx.ln() / lx)
}

/// `C x loglog x / log x`.
pub fn predict_semiprime_coprime(x: u64) -> Result<f64> {
    Ok(TWIN_PRIME_C * semiprime_scale(x)?)
}

/// `(C / 4) x loglog x / log x`.
pub fn predict_semiprime_1mod4(x: u64) -> Result<f64> {
    Ok(TWIN_PRIME_C / 4.0 * semiprime_scale(x)?)
}

/// `(3C / 4) x loglog x / log x`, the two-strong-liar semiprime count.
pub fn predict_semiprime_two_liars(x: u64) -> Result<f64> {
    Ok(0.75 * TWIN_PRIME_C * semiprime_scale(x)?)
}

/// `prod_{p <= z} (1 - 1/p)` over the primes of the table.
pub fn mertens_product(z: u64, t: &FactorTable) -> Result<f64> {
    Ok(t.primes_up_to(z)?
        .into_iter()
        .map(|p| 1.0 - 1.0 / p as f64)
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_literals() {
        assert!(((-EULER_GAMMA).exp() - 0.5615).abs() < 1e-4);
        let c = Constants::evaluate(1000);
        assert!(c.exp_neg_gamma > 0.5614 && c.exp_neg_gamma < 0.5616);
    }

    #[test]
    fn twin_prime_small_bounds() {
        assert_eq!(twin_prime_constant(2), 1.0);
        assert!((twin_prime_constant(3) - 0.75).abs() < 1e-15);
        // 3/4 * 15/16
        assert!((twin_prime_constant(5) - 0.703125).abs() < 1e-15);
        let mut prev = 1.0;
        for b in [3, 10, 100, 1000, 10_000] {
            let v = twin_prime_constant(b);
            assert!(v < prev || b == 3);
            assert!(v > TWIN_PRIME_C);
            prev = v;
        }
    }

    #[test]
    fn normalized_examples() {
        assert!((normalized_ratio(243, 1000).unwrap() - 0.1601).abs() < 5e-5);
        assert!((normalized_ratio(2_616_237, 10_000_000).unwrap() - 0.2675).abs() < 5e-5);
        assert_eq!(normalized_ratio(0, 1000).unwrap(), 0.0);
        assert!(matches!(normalized_ratio(1, 16), Err(Error::LimitTooSmall(16))));
        assert!(predict_two_liar_count(16).is_err());
        assert!(predict_two_liar_count(17).unwrap() > 0.0);
    }

    #[test]
    fn semiprime_predictions() {
        assert_eq!(format!("{:.2}", predict_semiprime_coprime(1000).unwrap()), "184.70");
        assert_eq!(format!("{:.2}", predict_semiprime_1mod4(1000).unwrap()), "46.17");
        assert_eq!(format!("{:.2}", predict_semiprime_coprime(10_000_000).unwrap()), "1138603.46");
        assert!(predict_semiprime_coprime(15).is_err());
        let two = predict_semiprime_two_liars(1000).unwrap();
        let diff = predict_semiprime_coprime(1000).unwrap() - predict_semiprime_1mod4(1000).unwrap();
        assert!((two - diff).abs() < 1e-9);
    }

    #[test]
    fn mertens_small() {
        let t = FactorTable::build(100).unwrap();
        assert_eq!(mertens_product(2, &t).unwrap(), 0.5);
        let expect = 0.5 * (2.0 / 3.0) * 0.8 * (6.0 / 7.0);
        assert!((mertens_product(10, &t).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 0.2286).abs() < 1e-4);
        assert!(mertens_product(101, &t).is_err());
    }
}
