//! Exact scalars: rationals, elements of Q(√d), integer polynomials and their roots.

mod integer;
mod poly;
mod quad_ext;
mod rational;

use std::cmp::Ordering;

pub use integer::{divisors, exact_sqrt, factorize, isqrt, square_decompose, squarefree_part};
pub use poly::{rational_roots, rational_roots_between, IntPoly};
pub use quad_ext::QuadExt;
pub use rational::Rational;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadraticRoots {
    /// Every coefficient is zero, so every s is a root.
    Degenerate,
    /// Real roots, ascending, without repetition.
    Roots(Vec<QuadExt>),
}

impl QuadraticRoots {
    pub fn roots(&self) -> &[QuadExt] {
        match self {
            QuadraticRoots::Degenerate => &[],
            QuadraticRoots::Roots(r) => r,
        }
    }
}

/// Real roots of `A·s² + B·s + C = 0`, exactly.
pub fn solve_quadratic_exact(a: &Rational, b: &Rational, c: &Rational) -> QuadraticRoots {
    if a.is_zero() {
        if !b.is_zero() {
            return QuadraticRoots::Roots(vec![QuadExt::rational(-c / b)]);
        }
        if c.is_zero() {
            return QuadraticRoots::Degenerate;
        }
        return QuadraticRoots::Roots(vec![]);
    }
    let disc = b.square() - a * c * 4;
    match disc.signum() {
        -1 => QuadraticRoots::Roots(vec![]),
        0 => QuadraticRoots::Roots(vec![QuadExt::rational(-b / (a * 2))]),
        _ => {
            let root = QuadExt::sqrt_of(&disc).expect("discriminant of small quadratic fits");
            let two_a = QuadExt::rational(a * 2);
            let minus_b = QuadExt::rational(-b);
            let mut v = vec![(&minus_b - &root) / &two_a, (&minus_b + &root) / &two_a];
            v.sort_by(|x, y| x.cmp_exact(y).unwrap_or(Ordering::Equal));
            QuadraticRoots::Roots(v)
        }
    }
}

/// The nonnegative rational square root of `x`, or `None` if `x` is not a rational square.
pub fn sqrt_rational_exact(x: &Rational) -> Result<Option<Rational>> {
    if x.is_negative() {
        return Err(Error::NegativeInput(x.to_string()));
    }
    let (Some(n), Some(d)) = (exact_sqrt(x.numer()), exact_sqrt(x.denom())) else {
        return Ok(None);
    };
    Ok(Some(Rational::new(n, d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn quadratic_with_surd_roots() {
        // s² + s - 1: roots (-1 ± √5)/2
        let roots = solve_quadratic_exact(&r(1), &r(1), &r(-1));
        let want: Vec<QuadExt> = ["-1/2-1/2*sqrt(5)", "-1/2+1/2*sqrt(5)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(roots, QuadraticRoots::Roots(want));
    }

    #[test]
    fn quadratic_edge_cases() {
        assert_eq!(
            solve_quadratic_exact(&r(0), &r(0), &r(0)),
            QuadraticRoots::Degenerate
        );
        assert_eq!(
            solve_quadratic_exact(&r(0), &r(0), &r(3)),
            QuadraticRoots::Roots(vec![])
        );
        assert_eq!(
            solve_quadratic_exact(&r(1), &r(-1), &r(0)),
            QuadraticRoots::Roots(vec![QuadExt::int(0), QuadExt::int(1)])
        );
        assert_eq!(
            solve_quadratic_exact(&r(0), &r(2), &r(-1)),
            QuadraticRoots::Roots(vec![QuadExt::rational(Rational::new(1, 2))])
        );
        assert_eq!(
            solve_quadratic_exact(&r(4), &r(-4), &r(1)),
            QuadraticRoots::Roots(vec![QuadExt::rational(Rational::new(1, 2))])
        );
        assert_eq!(
            solve_quadratic_exact(&r(1), &r(0), &r(1)),
            QuadraticRoots::Roots(vec![])
        );
        // negative leading coefficient keeps ascending order
        let v = solve_quadratic_exact(&r(-1), &r(0), &r(2));
        assert!(v.roots()[0].is_negative() && v.roots()[1].is_positive());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(
            sqrt_rational_exact(&Rational::new(49, 64)).unwrap(),
            Some(Rational::new(7, 8))
        );
        assert_eq!(sqrt_rational_exact(&r(0)).unwrap(), Some(r(0)));
        assert_eq!(sqrt_rational_exact(&Rational::new(1, 2)).unwrap(), None);
        assert!(sqrt_rational_exact(&r(-4)).is_err());
    }

    #[test]
    fn n40_quartic_has_root_five_eighths() {
        // 4(2s+2)²·4·(s²+1-s) - (40s - (2s+2)² - 4(s²+1-s))², expanded by hand:
        // lhs = 16(4s²+8s+4)(s²-s+1); inner = 40s - 4s²-8s-4 - 4s²+4s-4 = -8s²+36s-8
        let t = IntPoly::from_i64(&[4, 8, 4]);
        let u = IntPoly::from_i64(&[1, -1, 1]);
        let lhs = &(&t * &u) * 16;
        let inner = IntPoly::from_i64(&[-8, 36, -8]);
        let f = &lhs - &(&inner * &inner);
        assert!(rational_roots(&f).unwrap().contains(&Rational::new(5, 8)));
    }
}
