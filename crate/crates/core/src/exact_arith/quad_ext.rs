use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::integer::{isqrt, square_decompose};
use super::rational::Rational;
use crate::error::{Error, Result};

/// `rat + coef·√d` with `d` squarefree. Rational values always carry `d = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadExt {
    rat: Rational,
    coef: Rational,
    d: u64,
}

impl QuadExt {
    /// `rat + coef·√d` for any `d ≥ 0`; square factors of `d` are moved into `coef`.
    pub fn new(rat: Rational, coef: Rational, d: u64) -> Self {
        let (k, d) = square_decompose(d);
        let coef = coef * Rational::int(k);
        match d {
            0 => QuadExt::rational(rat),
            1 => QuadExt::rational(rat + coef),
            _ if coef.is_zero() => QuadExt::rational(rat),
            _ => QuadExt { rat, coef, d },
        }
    }

    pub fn rational(r: Rational) -> Self {
        QuadExt {
            rat: r,
            coef: Rational::zero(),
            d: 0,
        }
    }

    pub fn int(n: i64) -> Self {
        QuadExt::rational(Rational::from(n))
    }

    pub fn zero() -> Self {
        QuadExt::default()
    }

    pub fn one() -> Self {
        QuadExt::int(1)
    }

    /// Exact `√x` for rational `x ≥ 0`.
    pub fn sqrt_of(x: &Rational) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::NegativeInput(x.to_string()));
        }
        // √(p/q) = √(pq)/q
        let pq: BigInt = x.numer() * x.denom();
        let pq = pq
            .to_u64()
            .ok_or_else(|| Error::Overflow(format!("sqrt of {x}")))?;
        let q = Rational::int(x.denom().clone());
        Ok(QuadExt::new(Rational::zero(), Rational::one() / q, pq))
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn coef(&self) -> &Rational {
        &self.coef
    }

    /// 0 for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0 && self.rat.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.d == 0 && self.rat.is_integer()
    }

    pub fn signum(&self) -> i32 {
        let sx = self.rat.signum();
        let sy = self.coef.signum();
        if sy == 0 {
            return sx;
        }
        if sx == 0 || sx == sy {
            return sy;
        }
        let x2 = self.rat.square();
        let y2d = self.coef.square() * Rational::int(self.d);
        if x2 > y2d {
            sx
        } else {
            sy
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            rat: self.rat.clone(),
            coef: -&self.coef,
            d: self.d,
        }
    }

    /// `x · conj(x)`, always rational.
    pub fn norm(&self) -> Rational {
        self.rat.square() - self.coef.square() * Rational::int(self.d)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadExt {
            rat: &self.rat / &n,
            coef: -&self.coef / &n,
            d: self.d,
        })
    }

    /// The shared radicand of two operands, 0 if both are rational.
    pub fn common_d(a: &QuadExt, b: &QuadExt) -> Result<u64> {
        match (a.d, b.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::FieldMismatch(x, y)),
        }
    }

    pub fn checked_add(&self, rhs: &QuadExt) -> Result<Self> {
        let d = QuadExt::common_d(self, rhs)?;
        Ok(QuadExt::new(
            &self.rat + &rhs.rat,
            &self.coef + &rhs.coef,
            d,
        ))
    }

    pub fn checked_sub(&self, rhs: &QuadExt) -> Result<Self> {
        let d = QuadExt::common_d(self, rhs)?;
        Ok(QuadExt::new(
            &self.rat - &rhs.rat,
            &self.coef - &rhs.coef,
            d,
        ))
    }

    pub fn checked_mul(&self, rhs: &QuadExt) -> Result<Self> {
        let d = QuadExt::common_d(self, rhs)?;
        let rd = Rational::int(d);
        let rat = &self.rat * &rhs.rat + &self.coef * &rhs.coef * &rd;
        let coef = &self.rat * &rhs.coef + &self.coef * &rhs.rat;
        Ok(QuadExt::new(rat, coef, d))
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<Self> {
        QuadExt::common_d(self, rhs)?;
        self.checked_mul(&rhs.recip()?)
    }

    pub fn cmp_exact(&self, other: &QuadExt) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    pub fn mul_rat(&self, r: &Rational) -> Self {
        QuadExt::new(&self.rat * r, &self.coef * r, self.d)
    }

    pub fn add_rat(&self, r: &Rational) -> Self {
        QuadExt {
            rat: &self.rat + r,
            coef: self.coef.clone(),
            d: self.d,
        }
    }

    /// Rigorous rational enclosure `[lo, hi]` of the value, width at most `|coef|·10^-digits`.
    pub fn enclosure(&self, digits: u32) -> (Rational, Rational) {
        if self.d == 0 {
            return (self.rat.clone(), self.rat.clone());
        }
        let scale = BigInt::from(10u32).pow(digits);
        let s = isqrt(&(BigInt::from(self.d) * &scale * &scale));
        let lo = Rational::new(s.clone(), scale.clone());
        let hi = Rational::new(s + 1, scale);
        let a = &self.rat + &self.coef * &lo;
        let b = &self.rat + &self.coef * &hi;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.coef.to_f64() * (self.d as f64).sqrt()
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::int(n)
    }
}

/// Values over different radicands are unordered.
impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "{}", self.rat);
        }
        if self.coef.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.rat, -&self.coef, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.rat, self.coef, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(head) = s.strip_suffix(')') else {
            return Ok(QuadExt::rational(s.parse()?));
        };
        let (head, d) = head
            .rsplit_once("*sqrt(")
            .ok_or_else(|| Error::Parse(format!("not a quadratic surd: {s:?}")))?;
        let d: u64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad radicand in {s:?}")))?;
        // split "rat±coef" at the last sign that is not itself a sign of the coefficient
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| {
                matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'+' | b'-' | b'/')
            })
            .ok_or_else(|| Error::Parse(format!("missing rational part in {s:?}")))?;
        let rat: Rational = head[..split].parse()?;
        let coef_text = &head[split..];
        let coef: Rational = coef_text.strip_prefix('+').unwrap_or(coef_text).parse()?;
        Ok(QuadExt::new(rat, coef, d))
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            /// Panics when the operands live over different radicands.
            fn $m(self, rhs: &'b QuadExt) -> QuadExt {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &'b QuadExt) -> QuadExt {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rat: -self.rat,
            coef: -self.coef,
            d: self.d,
        }
    }
}

impl<'a> Neg for &'a QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rat: -&self.rat,
            coef: -&self.coef,
            d: self.d,
        }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::default()
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
}
