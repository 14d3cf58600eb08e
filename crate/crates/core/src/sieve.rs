//! Index-addressed prime-divisor table.
//!
//! For every `2 <= n <= limit` the table holds the largest prime `p <= sqrt(limit)`
//! dividing `n`, or `0` when no such prime exists (which for `n >= 2` means `n`
//! is prime). Repeated lookups on `n / p` recover the full factorization of any
//! `n` in range.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Entries stored as `u32`: every stored prime is at most `sqrt(limit)`.
pub const SENTINEL: u32 = 0;

/// Default refusal point for table size (entries, 4 bytes each).
pub const DEFAULT_MAX_ENTRIES: u64 = 2_000_000_000;

/// Environment variable overriding [`DEFAULT_MAX_ENTRIES`].
pub const BUDGET_ENV: &str = "LIARS_MAX_TABLE_ENTRIES";

const MAGIC: &[u8; 4] = b"LFT1";
const VERSION: u32 = 1;
const CHUNK: usize = 1 << 18;

/// Prime-power factorization with primes strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs. The pairs are
    /// sorted; primality of each entry is the caller's responsibility.
    pub fn from_pairs(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.sort_unstable();
        let ok = factors.iter().all(|&(p, e)| p >= 2 && e >= 1)
            && factors.windows(2).all(|w| w[0].0 < w[1].0);
        if !ok {
            return Err(Error::InconsistentFactorization(0));
        }
        Ok(Self { factors })
    }

    /// Trial division; fine for `n` up to around 10^12.
    pub fn by_trial_division(mut n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange { n, min: 2, max: u64::MAX });
        }
        let mut factors = Vec::new();
        let mut d = 2u64;
        while d.saturating_mul(d) <= n {
            if n % d == 0 {
                let mut e = 0;
                while n % d == 0 {
                    n /= d;
                    e += 1;
                }
                factors.push((d, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n > 1 {
            factors.push((n, 1));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime divisors.
    pub fn distinct(&self) -> usize {
        self.factors.len()
    }

    /// Number of prime divisors counted with multiplicity.
    pub fn total(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// The factored integer, or `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            acc.checked_mul(p.checked_pow(e)?)
        })
    }

    /// Exponent of `p` in the factored integer.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn check(&self, n: u64) -> Result<()> {
        if self.value() == Some(n) {
            Ok(())
        } else {
            Err(Error::InconsistentFactorization(n))
        }
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Prime-divisor table over `[0, limit]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTable {
    limit: u64,
    entries: Vec<u32>,
}

/// Budget in entries, honoring [`BUDGET_ENV`] when it parses.
pub fn configured_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_MAX_ENTRIES)
}

fn integer_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

impl FactorTable {
    /// Builds the table with the configured memory budget.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with(limit, configured_budget(), Exec::default())
    }

    pub fn build_with(limit: u64, budget: u64, exec: Exec) -> Result<Self> {
        if limit < 4 {
            return Err(Error::OutOfRange { n: limit, min: 4, max: budget.saturating_sub(1) });
        }
        if limit + 1 > budget || limit >= u32::MAX as u64 {
            return Err(Error::MemoryBudget { requested: limit + 1, budget });
        }
        let root = integer_sqrt(limit);
        let base = small_primes(root);
        let mut entries = vec![SENTINEL; limit as usize + 1];
        // Every chunk walks the base primes in ascending order, so the last
        // write at each index is the largest qualifying prime regardless of
        // how chunks are scheduled.
        par::for_each_chunk_mut(exec, &mut entries, CHUNK, |ci, chunk| {
            let lo = (ci * CHUNK) as u64;
            let hi = lo + chunk.len() as u64;
            for &p in &base {
                let p = p as u64;
                let first = (2 * p).max(lo.div_ceil(p) * p);
                let mut m = first;
                while m < hi {
                    chunk[(m - lo) as usize] = p as u32;
                    m += p;
                }
            }
        });
        Ok(Self { limit, entries })
    }

    /// Direct transcription of the marking loop: scan for the next zero entry
    /// `p <= sqrt(limit)` and overwrite every proper multiple of `p` with `p`.
    pub fn build_sequential_reference(limit: u64) -> Result<Self> {
        if limit < 4 {
            return Err(Error::OutOfRange { n: limit, min: 4, max: u64::MAX });
        }
        let root = integer_sqrt(limit) as usize;
        let mut entries = vec![SENTINEL; limit as usize + 1];
        for p in 2..=root {
            if entries[p] != SENTINEL {
                continue;
            }
            let mut m = 2 * p;
            while m < entries.len() {
                entries[m] = p as u32;
                m += p;
            }
        }
        Ok(Self { limit, entries })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Raw table entry; `SENTINEL` for primes (and for 0 and 1).
    pub fn entry(&self, n: u64) -> u32 {
        self.entries[n as usize]
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.entries[n as usize] == SENTINEL
    }

    fn check_range(&self, n: u64) -> Result<()> {
        if n < 2 || n > self.limit {
            return Err(Error::OutOfRange { n, min: 2, max: self.limit });
        }
        Ok(())
    }

    /// Distinct prime divisors with exponents, in no particular order.
    pub fn prime_powers(&self, n: u64) -> Result<PrimePowers<'_>> {
        self.check_range(n)?;
        Ok(PrimePowers { table: self, rest: n })
    }

    pub(crate) fn prime_powers_unchecked(&self, n: u64) -> PrimePowers<'_> {
        PrimePowers { table: self, rest: n }
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        let mut factors: Vec<_> = self.prime_powers(n)?.collect();
        factors.sort_unstable();
        Ok(Factorization { factors })
    }

    /// Primes in `[2, x]`, ascending.
    pub fn primes_up_to(&self, x: u64) -> Result<Vec<u64>> {
        if x > self.limit {
            return Err(Error::OutOfRange { n: x, min: 0, max: self.limit });
        }
        Ok((2..=x).filter(|&n| self.entries[n as usize] == SENTINEL).collect())
    }

    /// Writes the table: 16-byte header (magic, version u32, limit u64) then
    /// `limit + 1` little-endian `u32` entries.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&self.limit.to_le_bytes())?;
        for e in &self.entries {
            w.write_all(&e.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut header = [0u8; 16];
        r.read_exact(&mut header)?;
        if &header[..4] != MAGIC {
            return Err(Error::BadTableFile("bad magic".into()));
        }
        let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
        if version != VERSION {
            return Err(Error::BadTableFile(format!("unsupported version {version}")));
        }
        let limit = u64::from_le_bytes(header[8..16].try_into().unwrap());
        if limit < 4 || limit >= u32::MAX as u64 {
            return Err(Error::BadTableFile(format!("implausible limit {limit}")));
        }
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        if bytes.len() as u64 != (limit + 1) * 4 {
            return Err(Error::BadTableFile(format!(
                "expected {} entry bytes, found {}",
                (limit + 1) * 4,
                bytes.len()
            )));
        }
        let entries = bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Self { limit, entries })
    }
}

/// Iterator over `(prime, exponent)` pairs of one integer, driven by table lookups.
///
/// Stored primes are non-increasing along the division chain; only the final
/// cofactor can exceed them, so equal primes always arrive consecutively.
pub struct PrimePowers<'a> {
    table: &'a FactorTable,
    rest: u64,
}

impl Iterator for PrimePowers<'_> {
    type Item = (u64, u32);

    fn next(&mut self) -> Option<(u64, u32)> {
        if self.rest <= 1 {
            return None;
        }
        let p = match self.table.entries[self.rest as usize] {
            SENTINEL => self.rest,
            q => q as u64,
        };
        let mut e = 0;
        while self.rest % p == 0 {
            self.rest /= p;
            e += 1;
        }
        Some((p, e))
    }
}

/// Primes up to `n` by a plain odd-only Eratosthenes sieve.
pub(crate) fn small_primes(n: u64) -> Vec<u32> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n / 2 + 1];
    let mut out = vec![2u32];
    let mut i = 3;
    while i <= n {
        if !composite[i / 2] {
            out.push(i as u32);
            let mut m = i * i;
            while m <= n {
                composite[m / 2] = true;
                m += 2 * i;
            }
        }
        i += 2;
    }
    out
}
