//! Tile shapes per angle case and the s-parametrization of the 3α+2β=π family.
//!
//! Side convention: `c` is always opposite the special angle γ. For the equilateral
//! outer triangle this means c² = a² + b² − ab when γ = π/3 and c² = a² + b² + ab when
//! γ = 2π/3.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{sqrt_rational_exact, QuadExt, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AngleCase {
    Commensurable,
    RightTileIsosceles,
    GammaEquals2Alpha,
    ThreeAlphaTwoBeta,
    GammaTwoPiOver3,
    GammaPiOver3Equilateral,
}

impl AngleCase {
    pub const ALL: [AngleCase; 6] = [
        AngleCase::Commensurable,
        AngleCase::RightTileIsosceles,
        AngleCase::GammaEquals2Alpha,
        AngleCase::ThreeAlphaTwoBeta,
        AngleCase::GammaTwoPiOver3,
        AngleCase::GammaPiOver3Equilateral,
    ];
}

/// Which special angle the equilateral search targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gamma {
    PiOver3,
    TwoPiOver3,
}

impl Gamma {
    /// The ± in c² = a² + b² ± ab.
    pub fn sign(self) -> i64 {
        match self {
            Gamma::PiOver3 => -1,
            Gamma::TwoPiOver3 => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Gamma::PiOver3 => "pi/3",
            Gamma::TwoPiOver3 => "2pi/3",
        }
    }
}

/// `s` with `0 < s < 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SParam(QuadExt);

impl SParam {
    pub fn new(s: QuadExt) -> Result<Self> {
        if !s.is_positive() || !(&QuadExt::one() - &s).is_positive() {
            return Err(Error::OutOfRange {
                what: "s",
                value: s.to_string(),
            });
        }
        Ok(SParam(s))
    }

    pub fn get(&self) -> &QuadExt {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileShape {
    pub a: QuadExt,
    pub b: QuadExt,
    pub c: QuadExt,
    pub case: AngleCase,
}

impl TileShape {
    pub fn new(a: QuadExt, b: QuadExt, c: QuadExt, case: AngleCase) -> Result<Self> {
        let t = TileShape { a, b, c, case };
        if !t.triangle_inequality()? {
            return Err(Error::DegenerateTile(format!(
                "({}, {}, {})",
                t.a, t.b, t.c
            )));
        }
        Ok(t)
    }

    pub fn triangle_inequality(&self) -> Result<bool> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let pos = |x: &QuadExt| x.is_positive();
        Ok(pos(a)
            && pos(b)
            && pos(c)
            && pos(&a.checked_add(b)?.checked_sub(c)?)
            && pos(&a.checked_add(c)?.checked_sub(b)?)
            && pos(&b.checked_add(c)?.checked_sub(a)?))
    }

    /// `c² − a² − b² − sign·ab`, zero when the angle opposite c is π/3 (sign −1) or 2π/3 (+1).
    pub fn cosine_defect(&self, sign: i64) -> Result<QuadExt> {
        let ab = self.a.checked_mul(&self.b)?.mul_rat(&Rational::from(sign));
        self.c
            .square()
            .checked_sub(&self.a.square())?
            .checked_sub(&self.b.square())?
            .checked_sub(&ab)
    }
}

/// `(a, b, c) = (s, 1 − s², 1)`.
pub fn sides_from_s(s: &SParam) -> TileShape {
    let s = s.get();
    let one = QuadExt::one();
    let b = &one - &s.square();
    TileShape {
        a: s.clone(),
        b,
        c: one,
        case: AngleCase::ThreeAlphaTwoBeta,
    }
}

/// Integer tile `(a, b, c)` with gcd 1, `a/b = s` and `c = b·√(s² + 1 + sign·s)`, if `c` is rational.
pub fn integer_tile_from_s(s: &Rational, sign: i64) -> Option<(u64, u64, u64)> {
    if !s.is_positive() || s >= &Rational::one() {
        return None;
    }
    let radicand = s.square() + Rational::one() + s * sign;
    let root = sqrt_rational_exact(&radicand).ok()??;
    let a = s.numer().clone();
    let b = s.denom().clone();
    let c = root * Rational::int(b.clone());
    let c = c.to_integer()?;
    let g = a.gcd(&b).gcd(&c);
    Some(((a / &g).to_u64()?, (b / &g).to_u64()?, (c / &g).to_u64()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn sides_at_one_half() {
        let t = sides_from_s(&SParam::new(QuadExt::rational(r(1, 2))).unwrap());
        assert_eq!(t.a, QuadExt::rational(r(1, 2)));
        assert_eq!(t.b, QuadExt::rational(r(3, 4)));
        assert_eq!(t.c, QuadExt::one());
    }

    #[test]
    fn sides_at_golden_conjugate() {
        // s = (√5 − 1)/2 gives 1 − s² = s, an isosceles tile
        let s: QuadExt = "-1/2+1/2*sqrt(5)".parse().unwrap();
        let t = sides_from_s(&SParam::new(s.clone()).unwrap());
        assert_eq!(t.b, s);
        assert!(t.b.is_positive() && (&QuadExt::one() - &t.b).is_positive());
        assert!(t.triangle_inequality().unwrap());
    }

    #[test]
    fn s_out_of_range() {
        assert!(SParam::new(QuadExt::int(1)).is_err());
        assert!(SParam::new(QuadExt::int(0)).is_err());
        assert!(SParam::new(QuadExt::rational(r(-1, 3))).is_err());
    }

    #[test]
    fn integer_tiles() {
        assert_eq!(integer_tile_from_s(&r(5, 8), -1), Some((5, 8, 7)));
        assert_eq!(integer_tile_from_s(&r(3, 5), 1), Some((3, 5, 7)));
        assert_eq!(integer_tile_from_s(&r(1, 2), -1), None);
        assert_eq!(integer_tile_from_s(&r(1, 1), -1), None);
    }

    #[test]
    fn cosine_defect_for_known_tiles() {
        let t = |a, b, c| {
            TileShape::new(
                QuadExt::int(a),
                QuadExt::int(b),
                QuadExt::int(c),
                AngleCase::GammaTwoPiOver3,
            )
            .unwrap()
        };
        assert!(t(3, 5, 7).cosine_defect(1).unwrap().is_zero());
        assert!(t(8, 7, 13).cosine_defect(1).unwrap().is_zero());
        assert!(t(5, 8, 7).cosine_defect(-1).unwrap().is_zero());
        assert!(TileShape::new(
            QuadExt::int(1),
            QuadExt::int(2),
            QuadExt::int(3),
            AngleCase::Commensurable
        )
        .is_err());
    }
}
