use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::integer::divisors;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_i64(&[c])
    }

    /// The monomial `s`.
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::int(c.clone())
        })
    }

    /// `Σ a_i p^i q^(n-i)`, which is zero exactly when `p/q` is a root.
    fn homogeneous_eval(&self, p: &BigInt, q: &BigInt) -> BigInt {
        let n = self.coeffs.len() - 1;
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        // Horner from the top: acc = acc*p + a_i*q^(n-i)
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if i < n {
                qpow *= q;
            }
            acc = acc * p + c * &qpow;
        }
        acc
    }

    fn scalar(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*s"),
                _ => format!("{c}*s^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<'a, 'b> Add<&'b IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &'b IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'a> Neg for &'a IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a, 'b> Sub<&'b IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &'b IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl<'a, 'b> Mul<&'b IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &'b IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Mul<i64> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, k: i64) -> IntPoly {
        self.scalar(&BigInt::from(k))
    }
}

/// Every rational root of `p`, in lowest terms, deduplicated, ascending.
pub fn rational_roots(p: &IntPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = p.content();
    let mut coeffs: Vec<BigInt> = p.coeffs.iter().map(|c| c / &content).collect();
    let mut roots = Vec::new();
    let low = coeffs.iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..low);
    }
    let reduced = IntPoly::new(coeffs);
    if reduced.degree().unwrap_or(0) > 0 {
        let lead = reduced.coeffs.last().unwrap();
        let constant = &reduced.coeffs[0];
        let qs = divisors(lead)?;
        let ps = divisors(constant)?;
        for &q in &qs {
            let qb = BigInt::from(q);
            for &pv in &ps {
                if pv.gcd(&q) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let pb = BigInt::from(pv) * sign;
                    if reduced.homogeneous_eval(&pb, &qb).is_zero() {
                        roots.push(Rational::new(pb, qb.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Rational roots in the open interval `(lo, hi)`.
pub fn rational_roots_between(p: &IntPoly, lo: &Rational, hi: &Rational) -> Result<Vec<Rational>> {
    Ok(rational_roots(p)?
        .into_iter()
        .filter(|r| r > lo && r < hi)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn simple_roots() {
        assert!(rational_roots(&IntPoly::from_i64(&[-2, 0, 1]))
            .unwrap()
            .is_empty());
        assert_eq!(
            rational_roots(&IntPoly::from_i64(&[0, -1, 1])).unwrap(),
            vec![r(0, 1), r(1, 1)]
        );
        assert_eq!(rational_roots(&IntPoly::zero()), Err(Error::ZeroPolynomial));
        assert!(rational_roots(&IntPoly::constant(5)).unwrap().is_empty());
    }

    #[test]
    fn planted_roots_with_content_and_multiplicity() {
        // 6 (2s-1)^2 (3s+4)
        let f = &IntPoly::from_i64(&[-1, 2]) * &IntPoly::from_i64(&[-1, 2]);
        let f = &(&f * &IntPoly::from_i64(&[4, 3])) * 6;
        assert_eq!(rational_roots(&f).unwrap(), vec![r(-4, 3), r(1, 2)]);
    }

    #[test]
    fn eval_matches_expansion() {
        let f = &IntPoly::from_i64(&[1, 1]) * &IntPoly::from_i64(&[-3, 2]);
        assert_eq!(f.coeffs(), IntPoly::from_i64(&[-3, -1, 2]).coeffs());
        assert_eq!(f.eval(&r(3, 2)), Rational::zero());
        assert_eq!(f.degree(), Some(2));
    }
}
