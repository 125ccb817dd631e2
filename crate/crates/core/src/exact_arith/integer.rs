//! Small integer helpers: square roots, squarefree parts, divisors.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Floor square root of a nonnegative big integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Product of the primes dividing `n` to an odd power.
pub fn squarefree_part(n: u64) -> u64 {
    square_decompose(n).1
}

/// Writes `n = k² · d` with `d` squarefree. `n = 0` gives `(0, 0)`.
pub fn square_decompose(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let (mut k, mut d) = (1u64, 1u64);
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            k *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    d *= n;
    (k, d)
}

/// Prime factorization by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `|n|`, ascending. `n` must be nonzero and fit in u64.
pub fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("divisors of {n}")))?;
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "divisor argument",
            value: "0".into(),
        });
    }
    let mut divs = vec![1u64];
    for (p, e) in factorize(m) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}
