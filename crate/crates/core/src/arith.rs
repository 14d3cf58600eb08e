//! Word-sized modular arithmetic shared by the rest of the crate.
//!
//! Everything works on `u64`. Products are widened to `u128` so any modulus
//! below 2^64 is safe; moduli below 2^32 take a cheaper `u64` path.

use serde::Serialize;

use crate::error::{Error, Result};

/// `value = 2^k * odd` with `odd` odd.
///
/// Applied to `n - 1` this gives the `(k, n')` pair of the strong test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OddDecomposition {
    pub k: u32,
    pub odd: u64,
}

impl OddDecomposition {
    pub fn value(&self) -> u64 {
        self.odd << self.k
    }
}

pub fn odd_decompose(v: u64) -> Result<OddDecomposition> {
    if v == 0 {
        return Err(Error::Zero);
    }
    let k = v.trailing_zeros();
    Ok(OddDecomposition { k, odd: v >> k })
}

/// Odd part of `v`, with `odd_part(0) = 0`. Infallible form used in hot loops.
#[inline]
pub fn odd_part(v: u64) -> u64 {
    if v == 0 {
        0
    } else {
        v >> v.trailing_zeros()
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    if n <= u32::MAX as u64 {
        (a * b) % n
    } else {
        ((a as u128 * b as u128) % n as u128) as u64
    }
}

/// Square-and-multiply without argument checks; `a < n`, `n >= 2`.
#[inline]
pub(crate) fn pow_mod_unchecked(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    acc
}

/// `a^e mod n`.
pub fn mod_pow(a: u64, e: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    if a >= n {
        return Err(Error::OutOfRange { n: a, min: 0, max: n - 1 });
    }
    Ok(pow_mod_unchecked(a, e, n))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Jacobi symbol `(a | n)` for odd `n`, by binary reciprocity.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let a = (a as i128).rem_euclid(n as i128) as u64;
    Ok(jacobi_unsigned(a, n))
}

pub(crate) fn jacobi_unsigned(a: u64, n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2 | n) = -1 iff n = 3, 5 mod 8
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}
