//! Oracles shared by the property suite and the acceptance target.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;

use tileprove::exact_arith::{QuadExt, Rational};
use tileprove::search_3a2b::BoundaryDecomposition;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `q^deg · f(p/q)`, in i128.
pub fn hom_eval(coeffs: &[i128], p: i128, q: i128) -> i128 {
    let deg = coeffs.len() - 1;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * p.pow(i as u32) * q.pow((deg - i) as u32))
        .sum()
}

/// Every rational root by trying all p/q with |p| ≤ |lowest nonzero coefficient|, 1 ≤ q ≤ |leading|.
pub fn roots_by_exhaustion(coeffs: &[i128]) -> Vec<Rational> {
    let mut out = Vec::new();
    let low = coeffs.iter().take_while(|c| **c == 0).count();
    if low > 0 {
        out.push(Rational::zero());
    }
    let top = coeffs.iter().rposition(|c| *c != 0).map_or(0, |i| i + 1);
    let rest = &coeffs[low.min(top)..top];
    if rest.len() > 1 {
        let pmax = rest[0].abs();
        let qmax = rest.last().unwrap().abs();
        for qd in 1..=qmax {
            for p in -pmax..=pmax {
                if p != 0 && p.gcd(&qd) == 1 && hom_eval(rest, p, qd) == 0 {
                    out.push(Rational::new(BigInt::from(p), BigInt::from(qd)));
                }
            }
        }
    }
    out.sort();
    out
}

pub fn poly_from_linear_factors(planted: &[(i64, i64)], extra: &[i64]) -> Vec<i128> {
    let mut coeffs: Vec<i128> = extra.iter().map(|&c| c as i128).collect();
    for &(p, qd) in planted {
        // multiply by (qd·x − p)
        let mut next = vec![0i128; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] -= c * p as i128;
            next[i + 1] += c * qd as i128;
        }
        coeffs = next;
    }
    coeffs
}

/// Residuals at a 50-digit rational approximation of s, from the side formulas directly.
pub fn residuals_numeric(dec: &BoundaryDecomposition, s: &QuadExt, n: i64) -> (f64, f64) {
    let (lo, hi) = s.enclosure(50);
    let s = (lo + hi) * q(1, 2);
    let t = Rational::from(1) - s.square();
    let side = |a: u32, b: u32, c: u32| {
        &s * Rational::from(a as i64) + &t * Rational::from(b as i64) + Rational::from(c as i64)
    };
    let xz = side(dec.p, dec.q, dec.r) * side(dec.u, dec.v, dec.w);
    let nn = Rational::from(n);
    ((&xz - &t * &nn).to_f64(), (&xz - &s * &nn).to_f64())
}

pub fn agree(exact: &QuadExt, numeric: f64) -> bool {
    exact.is_zero() == (numeric.abs() < 1e-9)
}

/// n = m² where m has no prime factor ≡ 1 (mod 4); such n have no witness with e, f ≥ 1.
pub fn square_without_prime_1mod4(n: u64) -> bool {
    let root = (n as f64).sqrt() as u64;
    if root * root != n {
        return false;
    }
    let mut m = root;
    let mut p = 2;
    while p * p <= m {
        while m % p == 0 {
            if p % 4 == 1 {
                return false;
            }
            m /= p;
        }
        p += 1;
    }
    m == 1 || m % 4 != 1
}
