//! Census of odd `n` in `[3, x]` with exactly two strong liars.
//!
//! Besides odd composites this counts the prime 3, the one prime with
//! `|S(p)| = p - 1 = 2`; both algorithms below include it as written.
//!
//! Algorithm 1 factors each `n` through the table and applies the
//! two-liar characterization directly. Algorithm 2 never factors `n`:
//!
//! * phase A: for every prime `p <= x` and odd prime `r | p - 1`, every
//!   `n = p (1 + j r)`, `j >= 0`, has `r | gcd(p', (n/p)')`, so it is marked
//!   eliminated (`j = 0` removes the prime `p` itself);
//! * phase B: surviving odd multiples `n >= p` of primes `p = 3 mod 4` are
//!   marked counted.
//!
//! Afterwards an odd `n >= 3` is COUNTED exactly when `|S(n)| = 2`.
//!
//! The state array stores only odd `n`, two bits each.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::liars::{strong_count_from_primes, two_strong_liars_from_primes};
use crate::par::{self, Exec};
use crate::sieve::FactorTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum CellState {
    Eliminated = 0,
    Counted = 1,
    Candidate = 2,
}

const CELLS_PER_WORD: u64 = 32;
const LOW_BITS: u64 = 0x5555_5555_5555_5555;

/// Two-bit state per odd integer in `[1, limit]`; even integers read as eliminated.
pub struct SieveState {
    limit: u64,
    words: Vec<AtomicU64>,
}

impl SieveState {
    fn new(limit: u64) -> Self {
        let cells = limit.div_ceil(2);
        let words = cells.div_ceil(CELLS_PER_WORD);
        // every cell starts as CANDIDATE (0b10)
        let all_candidate = !LOW_BITS;
        Self { limit, words: (0..words).map(|_| AtomicU64::new(all_candidate)).collect() }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    fn locate(n: u64) -> (usize, u32) {
        let cell = n / 2;
        ((cell / CELLS_PER_WORD) as usize, ((cell % CELLS_PER_WORD) * 2) as u32)
    }

    pub fn get(&self, n: u64) -> CellState {
        if n % 2 == 0 || n > self.limit {
            return CellState::Eliminated;
        }
        let (w, shift) = Self::locate(n);
        match (self.words[w].load(Ordering::Relaxed) >> shift) & 3 {
            0 => CellState::Eliminated,
            1 => CellState::Counted,
            _ => CellState::Candidate,
        }
    }

    /// CANDIDATE or ELIMINATED -> ELIMINATED. Only valid while no cell is COUNTED.
    #[inline]
    fn eliminate(&self, n: u64, shared: bool) {
        let (w, shift) = Self::locate(n);
        let mask = !(3u64 << shift);
        let word = &self.words[w];
        if shared {
            word.fetch_and(mask, Ordering::Relaxed);
        } else {
            word.store(word.load(Ordering::Relaxed) & mask, Ordering::Relaxed);
        }
    }

    /// CANDIDATE -> COUNTED; other states untouched. Returns whether a write happened.
    #[inline]
    fn promote(&self, n: u64, shared: bool) -> bool {
        let (w, shift) = Self::locate(n);
        let word = &self.words[w];
        let flip = |x: u64| {
            if (x >> shift) & 3 == CellState::Candidate as u64 {
                Some(x ^ (3u64 << shift))
            } else {
                None
            }
        };
        if shared {
            word.fetch_update(Ordering::Relaxed, Ordering::Relaxed, flip).is_ok()
        } else {
            match flip(word.load(Ordering::Relaxed)) {
                Some(x) => {
                    word.store(x, Ordering::Relaxed);
                    true
                }
                None => false,
            }
        }
    }

    /// Number of COUNTED cells among odd `n <= x`.
    pub fn counted_up_to(&self, x: u64) -> u64 {
        let cells = x.min(self.limit).div_ceil(2) as usize;
        let full = cells / CELLS_PER_WORD as usize;
        let mut total: u64 = self.words[..full]
            .iter()
            .map(|w| (w.load(Ordering::Relaxed) & LOW_BITS).count_ones() as u64)
            .sum();
        let tail = cells % CELLS_PER_WORD as usize;
        if tail > 0 {
            let mask = LOW_BITS & ((1u64 << (2 * tail)) - 1);
            total += (self.words[full].load(Ordering::Relaxed) & mask).count_ones() as u64;
        }
        total
    }

    /// Raw words, for comparing runs bit for bit.
    pub fn snapshot(&self) -> Vec<u64> {
        self.words.iter().map(|w| w.load(Ordering::Relaxed)).collect()
    }
}

/// One census row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub x: u64,
    pub count: u64,
    /// `count * logloglog(x) / x`; absent for `x <= 16`.
    pub normalized: Option<f64>,
    /// `x e^{-gamma} / logloglog(x)`; absent for `x <= 16`.
    pub predicted: Option<f64>,
}

impl CensusRow {
    fn new(x: u64, count: u64) -> Self {
        Self {
            x,
            count,
            normalized: asymptotics::normalized_ratio(count, x).ok(),
            predicted: asymptotics::predict_two_liar_count(x).ok(),
        }
    }

    /// `x,count,normalized,predicted` with four decimals; undefined reals are empty.
    pub fn csv(&self) -> String {
        let fmt = |v: Option<f64>| v.map(|v| format!("{v:.4}")).unwrap_or_default();
        format!("{},{},{},{}", self.x, self.count, fmt(self.normalized), fmt(self.predicted))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub const CSV_HEADER: &'static str = "x,count,normalized,predicted";

    pub fn count_at(&self, x: u64) -> Option<u64> {
        self.rows.iter().find(|r| r.x == x).map(|r| r.count)
    }
}

fn check_checkpoints(x: u64, t: &FactorTable, checkpoints: &[u64]) -> Result<Vec<u64>> {
    if x > t.limit() {
        return Err(Error::OutOfRange { n: x, min: 1, max: t.limit() });
    }
    if let Some(&c) = checkpoints.iter().find(|&&c| c > x) {
        return Err(Error::CheckpointBeyondLimit { checkpoint: c, limit: x });
    }
    let mut cps = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    Ok(cps)
}

/// Per-`n` two-liar test through the table; false for 1 and even `n`.
#[inline]
fn two_liars_naive(t: &FactorTable, n: u64) -> bool {
    n % 2 == 1
        && n > 1
        && two_strong_liars_from_primes(n, t.prime_powers_unchecked(n).map(|(p, _)| p))
}

/// Algorithm 1: factor every `n`, test `gcd(p', n') = 1` factor by factor and
/// look for a prime divisor `= 3 mod 4`.
pub fn algorithm1_census(
    x: u64,
    t: &FactorTable,
    checkpoints: &[u64],
    exec: Exec,
) -> Result<CensusReport> {
    let cps = check_checkpoints(x, t, checkpoints)?;
    let mut rows = Vec::with_capacity(cps.len());
    let mut running = 0u64;
    let mut prev = 0u64;
    for &c in &cps {
        // odd n in (prev, c]
        let lo = (prev / 2) as usize;
        let hi = c.div_ceil(2) as usize;
        running += par::sum_over(exec, lo..hi, |i| two_liars_naive(t, 2 * i as u64 + 1) as u64);
        rows.push(CensusRow::new(c, running));
        prev = c;
    }
    Ok(CensusReport { rows })
}

/// Final state and write counts of one Algorithm 2 run.
pub struct Algorithm2Run {
    pub state: SieveState,
    /// Cells visited in phase A.
    pub phase_a_updates: u64,
    /// CANDIDATE -> COUNTED transitions in phase B.
    pub phase_b_updates: u64,
}

/// Runs both sieving phases of Algorithm 2 over `[1, x]`.
pub fn run_algorithm2(x: u64, t: &FactorTable, exec: Exec) -> Result<Algorithm2Run> {
    if x > t.limit() {
        return Err(Error::OutOfRange { n: x, min: 1, max: t.limit() });
    }
    let state = SieveState::new(x);
    let shared = exec.is_parallel();
    let primes = t.primes_up_to(x)?;

    let phase_a_updates = par::sum_over(exec, 0..primes.len(), |i| {
        let p = primes[i];
        let mut writes = 0;
        for (r, _) in t.prime_powers_unchecked(p - 1) {
            if r == 2 {
                continue;
            }
            // odd n = p(1 + j r) needs j even
            let step = 2 * p * r;
            let mut n = p;
            while n <= x {
                state.eliminate(n, shared);
                writes += 1;
                n += step;
            }
        }
        writes
    });

    let primes_b: Vec<u64> = t
        .primes_up_to(x)?
        .into_iter()
        .filter(|p| p % 4 == 3)
        .collect();
    let phase_b_updates = par::sum_over(exec, 0..primes_b.len(), |i| {
        let p = primes_b[i];
        let mut writes = 0;
        let mut n = p;
        while n <= x {
            writes += state.promote(n, shared) as u64;
            n += 2 * p;
        }
        writes
    });

    Ok(Algorithm2Run { state, phase_a_updates, phase_b_updates })
}

/// Algorithm 2: progression sieving, then one scan per checkpoint.
pub fn algorithm2_census(
    x: u64,
    t: &FactorTable,
    checkpoints: &[u64],
    exec: Exec,
) -> Result<CensusReport> {
    let cps = check_checkpoints(x, t, checkpoints)?;
    let run = run_algorithm2(x, t, exec)?;
    Ok(CensusReport {
        rows: cps.iter().map(|&c| CensusRow::new(c, run.state.counted_up_to(c))).collect(),
    })
}

/// Histogram of `|S(n)|` over odd composite `n <= x`.
pub fn strong_count_distribution(x: u64, t: &FactorTable, exec: Exec) -> Result<BTreeMap<u64, u64>> {
    if x > t.limit() {
        return Err(Error::OutOfRange { n: x, min: 1, max: t.limit() });
    }
    let cells = x.div_ceil(2) as usize;
    Ok(par::fold_reduce(
        exec,
        1..cells,
        BTreeMap::new,
        |mut acc, i| {
            let n = 2 * i as u64 + 1;
            if !t.is_prime(n) {
                let s = strong_count_from_primes(n, t.prime_powers_unchecked(n).map(|(p, _)| p));
                *acc.entry(s).or_insert(0u64) += 1;
            }
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_state_transitions() {
        let s = SieveState::new(200);
        assert_eq!(s.get(1), CellState::Candidate);
        assert_eq!(s.get(199), CellState::Candidate);
        assert_eq!(s.get(10), CellState::Eliminated);
        s.eliminate(63, false);
        assert_eq!(s.get(63), CellState::Eliminated);
        assert!(!s.promote(63, true));
        assert_eq!(s.get(63), CellState::Eliminated);
        assert!(s.promote(65, true));
        assert!(!s.promote(65, false));
        assert_eq!(s.get(65), CellState::Counted);
        assert_eq!(s.get(67), CellState::Candidate);
        assert_eq!(s.counted_up_to(64), 0);
        assert_eq!(s.counted_up_to(65), 1);
        assert_eq!(s.counted_up_to(1000), 1);
    }

    #[test]
    fn small_census() {
        let t = FactorTable::build(1000).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let a1 = algorithm1_census(1000, &t, &[100, 1000], exec).unwrap();
            let a2 = algorithm2_census(1000, &t, &[100, 1000], exec).unwrap();
            assert_eq!(a1.count_at(100), Some(21));
            assert_eq!(a1.count_at(1000), Some(243));
            assert_eq!(a1, a2);
        }
    }

    #[test]
    fn checkpoint_errors() {
        let t = FactorTable::build(1000).unwrap();
        assert!(matches!(
            algorithm2_census(10, &t, &[1000], Exec::Sequential),
            Err(Error::CheckpointBeyondLimit { checkpoint: 1000, limit: 10 })
        ));
        assert!(algorithm1_census(2000, &t, &[100], Exec::Sequential).is_err());
    }

    #[test]
    fn nine_and_three_are_counted() {
        let t = FactorTable::build(100).unwrap();
        let run = run_algorithm2(100, &t, Exec::Sequential).unwrap();
        assert_eq!(run.state.get(9), CellState::Counted);
        assert_eq!(run.state.get(3), CellState::Counted);
        // 3 | 7 - 1 eliminates 7 itself; 5 and 17 have no odd r | p - 1
        assert_eq!(run.state.get(7), CellState::Eliminated);
        assert_eq!(run.state.get(5), CellState::Candidate);
        assert_eq!(run.state.get(17), CellState::Candidate);
        assert_eq!(run.state.get(1), CellState::Candidate);
        // 91 = 7 * 13: 3 | 7 - 1 and 13 = 1 mod 3
        assert_eq!(run.state.get(91), CellState::Eliminated);
        assert_eq!(run.state.get(65), CellState::Candidate);
    }

    #[test]
    fn distribution_at_50() {
        let t = FactorTable::build(50).unwrap();
        let d = strong_count_distribution(50, &t, Exec::Sequential).unwrap();
        assert_eq!(d, BTreeMap::from([(2, 8), (4, 1), (6, 1)]));
    }

    #[test]
    fn csv_row_format() {
        let row = CensusRow::new(1000, 243);
        assert!(row.csv().starts_with("1000,243,0.1601,"));
        assert_eq!(row.csv(), "1000,243,0.1601,852.1301");
        assert_eq!(CensusRow::new(10, 1).csv(), "10,1,,");
    }
}
