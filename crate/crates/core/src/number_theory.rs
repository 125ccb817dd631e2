//! Predicates placing N among the closed forms n², e²+f², 2n², 3n², 6n².

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_arith::{factorize, squarefree_part};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NFormKind {
    Square,
    TwiceSquare,
    ThriceSquare,
    SixTimesSquare,
    SumTwoSquares,
}

/// A form together with its witness: `(n, 0)` for the multiples of squares, `(e, f)` for e²+f².
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NForm {
    pub kind: NFormKind,
    pub witness: (u64, u64),
}

impl NForm {
    pub fn value(&self) -> u64 {
        let (e, f) = self.witness;
        match self.kind {
            NFormKind::Square => e * e,
            NFormKind::TwiceSquare => 2 * e * e,
            NFormKind::ThriceSquare => 3 * e * e,
            NFormKind::SixTimesSquare => 6 * e * e,
            NFormKind::SumTwoSquares => e * e + f * f,
        }
    }
}

impl fmt::Display for NForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.witness;
        match self.kind {
            NFormKind::Square => write!(f, "n² (n={a})"),
            NFormKind::TwiceSquare => write!(f, "2n² (n={a})"),
            NFormKind::ThriceSquare => write!(f, "3n² (n={a})"),
            NFormKind::SixTimesSquare => write!(f, "6n² (n={a})"),
            NFormKind::SumTwoSquares => write!(f, "e²+f² ({a},{b})"),
        }
    }
}

pub fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn square_root_of(n: u64) -> Option<u64> {
    let r = isqrt_u64(n);
    (r * r == n).then_some(r)
}

/// `e² + f² = n` with `e ≥ f ≥ 1`, taking the largest such `e`.
pub fn is_sum_of_two_squares(n: u64) -> Option<(u64, u64)> {
    let mut e = isqrt_u64(n.saturating_sub(1));
    while e >= 1 && 2 * e * e >= n {
        if let Some(f) = square_root_of(n - e * e) {
            if f >= 1 {
                return Some((e, f));
            }
        }
        e -= 1;
    }
    None
}

/// Factorization criterion: no prime ≡ 3 (mod 4) divides the squarefree part.
pub fn sum_of_two_squares_criterion(n: u64) -> bool {
    factorize(squarefree_part(n))
        .iter()
        .all(|&(p, _)| p % 4 != 3)
}

fn multiple_of_square(n: u64, k: u64) -> Option<u64> {
    if n % k != 0 {
        return None;
    }
    square_root_of(n / k).filter(|&m| m >= 1)
}

/// Every form `n` matches, in the fixed order Square, 2n², 3n², 6n², e²+f².
pub fn forms_of(n: u64) -> Vec<NForm> {
    let mut out = Vec::new();
    let mut push = |kind, witness: Option<(u64, u64)>| {
        if let Some(witness) = witness {
            out.push(NForm { kind, witness });
        }
    };
    push(NFormKind::Square, multiple_of_square(n, 1).map(|m| (m, 0)));
    push(
        NFormKind::TwiceSquare,
        multiple_of_square(n, 2).map(|m| (m, 0)),
    );
    push(
        NFormKind::ThriceSquare,
        multiple_of_square(n, 3).map(|m| (m, 0)),
    );
    push(
        NFormKind::SixTimesSquare,
        multiple_of_square(n, 6).map(|m| (m, 0)),
    );
    push(NFormKind::SumTwoSquares, is_sum_of_two_squares(n));
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}
