//! Odd semiprimes `n = pq <= x` with `p < q` and `gcd(p', q') = 1`.

use serde::Serialize;

use crate::arith::{gcd, odd_part};
use crate::asymptotics;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::sieve::FactorTable;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SemiprimeCounts {
    pub x: u64,
    /// `pq <= x`, `3 <= p < q` primes, `gcd(p', q') = 1`.
    pub count_coprime: u64,
    /// The subset with `p = q = 1 mod 4`.
    pub count_1mod4: u64,
    /// Semiprimes with exactly two strong liars: `count_coprime - count_1mod4`.
    pub count_two_liars: u64,
    pub predicted_coprime: Option<f64>,
    pub predicted_1mod4: Option<f64>,
}

impl SemiprimeCounts {
    pub const CSV_HEADER: &'static str = "x,count1,prediction1,count2,prediction2";

    /// `x,count1,prediction1,count2,prediction2` with two-decimal predictions.
    pub fn csv(&self) -> String {
        let fmt = |v: Option<f64>| v.map(|v| format!("{v:.2}")).unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            self.x,
            self.count_coprime,
            fmt(self.predicted_coprime),
            self.count_1mod4,
            fmt(self.predicted_1mod4)
        )
    }
}

/// Odd primes of the table with their `p'`, ascending; shared across checkpoints.
pub struct OddPrimes {
    covered: u64,
    primes: Vec<u64>,
    odd_parts: Vec<u64>,
}

impl OddPrimes {
    pub fn up_to(x: u64, t: &FactorTable) -> Result<Self> {
        let primes: Vec<u64> = t.primes_up_to(x)?.into_iter().skip(1).collect();
        let odd_parts = primes.iter().map(|&p| odd_part(p - 1)).collect();
        Ok(Self { covered: x, primes, odd_parts })
    }
}

pub fn count_semiprimes(x: u64, t: &FactorTable, exec: Exec) -> Result<SemiprimeCounts> {
    if x > t.limit() {
        return Err(Error::OutOfRange { n: x, min: 1, max: t.limit() });
    }
    let odd = OddPrimes::up_to(x / 3, t)?;
    count_with_primes(x, &odd, exec)
}

/// Counts for `x` using a precomputed prime list covering `x / 3`.
pub fn count_with_primes(x: u64, odd: &OddPrimes, exec: Exec) -> Result<SemiprimeCounts> {
    if odd.covered < x / 3 {
        return Err(Error::OutOfRange { n: x, min: 0, max: 3 * odd.covered + 2 });
    }
    let primes = &odd.primes;
    let outer = primes.partition_point(|&p| p.saturating_mul(p + 1) <= x);
    let (coprime, one_mod_4) = par::fold_reduce(
        exec,
        0..outer,
        || (0u64, 0u64),
        |(mut c, mut c4), i| {
            let p = primes[i];
            let p_odd = odd.odd_parts[i];
            let end = primes.partition_point(|&q| q <= x / p);
            for j in i + 1..end {
                if gcd(p_odd, odd.odd_parts[j]) == 1 {
                    c += 1;
                    c4 += (p % 4 == 1 && primes[j] % 4 == 1) as u64;
                }
            }
            (c, c4)
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(SemiprimeCounts {
        x,
        count_coprime: coprime,
        count_1mod4: one_mod_4,
        count_two_liars: coprime - one_mod_4,
        predicted_coprime: asymptotics::predict_semiprime_coprime(x).ok(),
        predicted_1mod4: asymptotics::predict_semiprime_1mod4(x).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_at_100() {
        let t = FactorTable::build(100).unwrap();
        let c = count_semiprimes(100, &t, Exec::Sequential).unwrap();
        assert_eq!((c.count_coprime, c.count_1mod4, c.count_two_liars), (15, 2, 13));
    }

    #[test]
    fn counts_at_1000() {
        let t = FactorTable::build(1000).unwrap();
        let c = count_semiprimes(1000, &t, Exec::Parallel).unwrap();
        assert_eq!((c.count_coprime, c.count_1mod4), (166, 28));
        assert_eq!(c.csv(), "1000,166,184.70,28,46.17");
    }

    #[test]
    fn tiny_limits() {
        let t = FactorTable::build(100).unwrap();
        let c = count_semiprimes(14, &t, Exec::Sequential).unwrap();
        assert_eq!(c.count_coprime, 0);
        let c = count_semiprimes(15, &t, Exec::Sequential).unwrap();
        assert_eq!(c.count_coprime, 1);
        assert_eq!(c.csv(), "15,1,,0,");
    }
}
