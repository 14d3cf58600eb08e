//! Strong, Euler and Fermat liar counts for odd moduli, and exact census
//! tabulation of the odd composites with exactly two strong liars.
//!
//! The pipeline is built around [`FactorTable`], a prime-divisor table that
//! factors every integer up to a limit by repeated lookups. [`tabulate`]
//! runs the two census algorithms over it, [`semiprime`] counts the
//! two-prime case, and [`asymptotics`] supplies the leading-order
//! predictions the counts are compared against.

pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod liars;
pub mod par;
pub mod semiprime;
pub mod sieve;
pub mod tabulate;

pub use arith::{gcd, jacobi, mod_pow, odd_decompose, OddDecomposition};
pub use error::{Error, Result};
pub use liars::{
    classify_worst_case, enumerate_euler_liars, enumerate_fermat_liars, enumerate_strong_liars,
    euler_phi, fermat_count, has_two_euler_liars, has_two_strong_liars, monier_euler_count,
    monier_strong_count, LiarCounts, WorstCase, WorstCaseClass,
};
pub use par::Exec;
pub use semiprime::{count_semiprimes, SemiprimeCounts};
pub use sieve::{Factorization, FactorTable};
pub use tabulate::{algorithm1_census, algorithm2_census, strong_count_distribution, CensusReport, CensusRow};
