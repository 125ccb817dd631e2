//! Rational tiles for an equilateral N-tiling with γ = π/3 or 2π/3.
//!
//! One side of ABC is X = pa + qb + rc. With s = a/b the area equation X² = Nab becomes
//! (ps + q + r√(s² + 1 ± s))² = Ns, and squaring away the surd leaves a quartic in s.
//!
//! Side labels: c is opposite γ, so c² = a² + b² − ab for π/3 and a² + b² + ab for 2π/3.
//! Conventions that put the special angle at `a` swap a and c in the triple below.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{rational_roots_between, IntPoly, Rational};
use crate::tile_models::{integer_tile_from_s, Gamma};

pub type Tile = (u64, u64, u64);

/// Which square root of Nab the side takes. Squaring the surd away admits both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// (pa + qb + rc)² = Nab: a genuine side decomposition.
    Direct,
    /// Only (pa + qb − rc)² = Nab. No side can have a negative c count, so such a
    /// candidate cannot come from a tiling, but it is a root of the quartic.
    Conjugate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilateralCandidate {
    pub n: u32,
    pub gamma: Gamma,
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub s: Rational,
    pub tile: Tile,
    pub branch: Branch,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilateralDiagnostics {
    pub tuples_examined: u64,
    /// (p, q, r) whose quartic vanishes identically.
    pub degenerate_tuples: Vec<(u32, u32, u32)>,
    pub rational_roots_in_unit_interval: u64,
    /// Rational roots whose c = b·√(s² + 1 ± s) is irrational.
    pub irrational_c: u64,
    /// Roots on the conjugate branch only.
    pub conjugate_roots: u64,
    /// Every (p, q, r) that produced each tile.
    pub decompositions: BTreeMap<String, Vec<(u32, u32, u32)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilateralReport {
    pub n: u32,
    pub gamma: Gamma,
    pub candidates: Vec<EquilateralCandidate>,
    pub diagnostics: EquilateralDiagnostics,
}

/// 4(ps+q)²r²(s²+1+σs) − (Ns − (ps+q)² − r²(s²+1+σs))².
pub fn build_quartic(n: i64, p: i64, q: i64, r: i64, sign: i64) -> IntPoly {
    let lin = IntPoly::from_i64(&[q, p]);
    let lin2 = &lin * &lin;
    let t = IntPoly::from_i64(&[1, sign, 1]);
    let r2t = &t * (r * r);
    let lhs = &(&lin2 * &r2t) * 4;
    let inner = &(&IntPoly::from_i64(&[0, n]) - &lin2) - &r2t;
    &lhs - &(&inner * &inner)
}

/// Upper bound on p + q + r: floor(N/6 + 1).
pub fn pqr_bound(n: u32) -> u32 {
    n / 6 + 1
}

/// Every (p, q, r) allowed by the side-count bounds, lexicographic.
pub fn pqr_tuples(n: u32, gamma: Gamma) -> Vec<(u32, u32, u32)> {
    let lo = match gamma {
        Gamma::PiOver3 => 1,
        Gamma::TwoPiOver3 => 0,
    };
    let bound = pqr_bound(n);
    let mut out = Vec::new();
    for p in lo..=bound {
        for q in lo..=bound.saturating_sub(p) {
            for r in 2..=bound.saturating_sub(p + q) {
                out.push((p, q, r));
            }
        }
    }
    out
}

/// X² = N·a·b with X = pa + qb + rc.
pub fn area_equation_holds(n: u32, pqr: (u32, u32, u32), tile: Tile) -> bool {
    branch_of(n, pqr, tile) == Some(Branch::Direct)
}

/// The branch on which (pa + qb ± rc)² = Nab holds, preferring Direct.
pub fn branch_of(n: u32, (p, q, r): (u32, u32, u32), (a, b, c): Tile) -> Option<Branch> {
    let ab = p as i128 * a as i128 + q as i128 * b as i128;
    let rc = r as i128 * c as i128;
    let nab = n as i128 * a as i128 * b as i128;
    if (ab + rc) * (ab + rc) == nab {
        Some(Branch::Direct)
    } else if (ab - rc) * (ab - rc) == nab {
        Some(Branch::Conjugate)
    } else {
        None
    }
}

pub fn law_of_cosines_holds(gamma: Gamma, (a, b, c): Tile) -> bool {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    c * c == a * a + b * b + gamma.sign() as i128 * a * b
}

struct TupleResult {
    found: Vec<EquilateralCandidate>,
    degenerate: bool,
    roots: u64,
    irrational_c: u64,
    conjugate: u64,
}

fn examine(n: u32, gamma: Gamma, (p, q, r): (u32, u32, u32)) -> TupleResult {
    let mut res = TupleResult {
        found: Vec::new(),
        degenerate: false,
        roots: 0,
        irrational_c: 0,
        conjugate: 0,
    };
    let poly = build_quartic(n as i64, p as i64, q as i64, r as i64, gamma.sign());
    if poly.is_zero() {
        res.degenerate = true;
        return res;
    }
    let roots = rational_roots_between(&poly, &Rational::zero(), &Rational::one())
        .expect("quartic is nonzero and its coefficients stay small");
    for s in roots {
        res.roots += 1;
        let Some(tile) = integer_tile_from_s(&s, gamma.sign()) else {
            res.irrational_c += 1;
            continue;
        };
        let branch =
            branch_of(n, (p, q, r), tile).expect("every root of the quartic lies on one branch");
        if branch == Branch::Conjugate {
            res.conjugate += 1;
        }
        res.found.push(EquilateralCandidate {
            n,
            gamma,
            p,
            q,
            r,
            s,
            tile,
            branch,
        });
    }
    res
}

fn tile_key((a, b, c): Tile) -> String {
    format!("({a},{b},{c})")
}

pub fn search(n: u32, gamma: Gamma) -> Result<EquilateralReport> {
    if !(3..=200).contains(&n) {
        return Err(Error::OutOfRange {
            what: "N",
            value: n.to_string(),
        });
    }
    let results: Vec<TupleResult> = pqr_tuples(n, gamma)
        .into_par_iter()
        .map(|t| examine(n, gamma, t))
        .collect();
    let mut diagnostics = EquilateralDiagnostics::default();
    let mut by_tile: BTreeMap<Tile, EquilateralCandidate> = BTreeMap::new();
    for (t, res) in pqr_tuples(n, gamma).into_iter().zip(results) {
        diagnostics.tuples_examined += 1;
        if res.degenerate {
            diagnostics.degenerate_tuples.push(t);
        }
        diagnostics.rational_roots_in_unit_interval += res.roots;
        diagnostics.irrational_c += res.irrational_c;
        diagnostics.conjugate_roots += res.conjugate;
        for c in res.found {
            diagnostics
                .decompositions
                .entry(tile_key(c.tile))
                .or_default()
                .push(t);
            match by_tile.get(&c.tile) {
                Some(prev) if prev.branch <= c.branch => {}
                _ => {
                    by_tile.insert(c.tile, c);
                }
            }
        }
    }
    Ok(EquilateralReport {
        n,
        gamma,
        candidates: by_tile.into_values().collect(),
        diagnostics,
    })
}

/// Candidates deduplicated by tile, sorted by tile. Each keeps its first (p, q, r), taking a
/// Direct decomposition over a Conjugate one when both exist.
pub fn find_candidates(n: u32, gamma: Gamma) -> Result<Vec<EquilateralCandidate>> {
    Ok(search(n, gamma)?.candidates)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u32,
    pub gamma: Gamma,
    pub tiles: Vec<Tile>,
    /// Branch of each tile, parallel to `tiles`.
    pub branches: Vec<Branch>,
}

/// Nonempty rows over `lo..=hi`, ordered by N.
pub fn scan_range(lo: u32, hi: u32, gamma: Gamma) -> Result<Vec<ScanRow>> {
    if lo < 3 || hi > 200 || lo > hi {
        return Err(Error::OutOfRange {
            what: "range",
            value: format!("{lo}:{hi}"),
        });
    }
    let mut rows = Vec::new();
    for n in lo..=hi {
        let cands = find_candidates(n, gamma)?;
        if !cands.is_empty() {
            let tiles = cands.iter().map(|c| c.tile).collect();
            let branches = cands.iter().map(|c| c.branch).collect();
            rows.push(ScanRow {
                n,
                gamma,
                tiles,
                branches,
            });
        }
    }
    Ok(rows)
}

/// Both gammas, merged and ordered by (N, gamma).
pub fn scan_both(lo: u32, hi: u32) -> Result<Vec<ScanRow>> {
    let mut rows = scan_range(lo, hi, Gamma::PiOver3)?;
    rows.extend(scan_range(lo, hi, Gamma::TwoPiOver3)?);
    rows.sort_by_key(|r| (r.n, r.gamma));
    Ok(rows)
}

/// The published table of equilateral candidates, as (N, γ, tile).
pub const REFERENCE_TABLE: [(u32, Gamma, Tile); 10] = [
    (40, Gamma::PiOver3, (5, 8, 7)),
    (54, Gamma::PiOver3, (3, 8, 7)),
    (56, Gamma::TwoPiOver3, (7, 8, 13)),
    (60, Gamma::TwoPiOver3, (3, 5, 7)),
    (65, Gamma::PiOver3, (9, 65, 61)),
    (66, Gamma::TwoPiOver3, (11, 24, 31)),
    (70, Gamma::PiOver3, (7, 40, 37)),
    (80, Gamma::TwoPiOver3, (5, 16, 19)),
    (84, Gamma::PiOver3, (16, 20, 19)),
    (85, Gamma::PiOver3, (17, 80, 73)),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub n: u32,
    pub gamma: Gamma,
    /// The reference tile, or `None` for a computed row the reference lacks.
    pub reference: Option<Tile>,
    pub computed: Vec<Tile>,
    pub note: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} {}: {}", self.n, self.gamma.label(), self.note)
    }
}

/// Differences between `rows` and the reference table, over the N the rows cover.
pub fn compare_with_reference(rows: &[ScanRow], lo: u32, hi: u32) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for &(n, gamma, reference) in REFERENCE_TABLE.iter().filter(|e| (lo..=hi).contains(&e.0)) {
        let computed: Vec<Tile> = rows
            .iter()
            .filter(|r| r.n == n && r.gamma == gamma)
            .flat_map(|r| r.tiles.clone())
            .collect();
        if computed.contains(&reference) {
            continue;
        }
        let (a, b, c) = (
            reference.0 as i128,
            reference.1 as i128,
            reference.2 as i128,
        );
        let mut note = format!(
            "reference tile {} is not reproduced; a²+b²−ab = {}, a²+b²+ab = {}, c² = {}",
            tile_key(reference),
            a * a + b * b - a * b,
            a * a + b * b + a * b,
            c * c
        );
        let computed_list: Vec<String> = computed.iter().map(|&t| tile_key(t)).collect();
        if computed_list.is_empty() {
            note.push_str("; computed: none");
        } else {
            note.push_str(&format!("; computed: {}", computed_list.join(", ")));
        }
        out.push(Discrepancy {
            n,
            gamma,
            reference: Some(reference),
            computed,
            note,
        });
    }
    for row in rows {
        for (&tile, &branch) in row.tiles.iter().zip(&row.branches) {
            if REFERENCE_TABLE
                .iter()
                .any(|e| e.0 == row.n && e.1 == row.gamma && e.2 == tile)
            {
                continue;
            }
            if REFERENCE_TABLE
                .iter()
                .any(|e| e.0 == row.n && e.1 == row.gamma)
            {
                // already reported against the reference row
                continue;
            }
            let note = format!(
                "computed tile {} ({branch:?} branch) is absent from the reference",
                tile_key(tile)
            );
            out.push(Discrepancy {
                n: row.n,
                gamma: row.gamma,
                reference: None,
                computed: vec![tile],
                note,
            });
        }
    }
    out.sort_by_key(|d| (d.n, d.gamma));
    out
}
