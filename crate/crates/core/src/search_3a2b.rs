//! Exhaustive search over coloring and area equations for tiles with 3α + 2β = π.
//!
//! With s = a/c and 1 − s² = b/c, the coloring equation M(a+b+c) = X ± Y + Z becomes a
//! quadratic in s for each (M, P, Q, R). For each root in (0, 1) we enumerate the side
//! decompositions X = pa+qb+rc, Z = ua+vb+wc, Y = ka+ℓb+mc and test the area equations
//! XZ = N·bc and XZ = N·ac exactly.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{QuadExt, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    Isosceles,
    Scalene,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    IsoscelesBaseAlpha,
    IsoscelesBaseBeta,
    Scalene,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WhichArea {
    /// XZ = N·bc, angle B = α.
    BisAlpha,
    /// XZ = N·ac, angle B = β.
    BisBeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColoringParams {
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "P")]
    pub p: i64,
    #[serde(rename = "Q")]
    pub q: i64,
    #[serde(rename = "R")]
    pub r: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundaryDecomposition {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub u: u32,
    pub v: u32,
    pub w: u32,
    pub k: u32,
    pub ell: u32,
    pub m: u32,
}

impl BoundaryDecomposition {
    /// Number of tile edges on the boundary of ABC.
    pub fn boundary_edges(&self) -> u32 {
        self.p + self.q + self.r + self.u + self.v + self.w + self.k + self.ell + self.m
    }

    fn sort_key(&self) -> [u32; 6] {
        [self.p, self.q, self.r, self.u, self.v, self.w]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub variant: Variant,
    pub params: ColoringParams,
    pub decomposition: BoundaryDecomposition,
    pub s: QuadExt,
    pub which_area: WhichArea,
}

impl SearchHit {
    fn cmp_key(&self, other: &SearchHit) -> Ordering {
        (
            self.params,
            self.decomposition.sort_key(),
            self.which_area,
            self.variant,
        )
            .cmp(&(
                other.params,
                other.decomposition.sort_key(),
                other.which_area,
                other.variant,
            ))
            .then_with(|| {
                self.s
                    .cmp_exact(&other.s)
                    .unwrap_or_else(|_| self.s.d().cmp(&other.s.d()))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Pruning {
    /// Boundary-edge budget N − 2 and the two-c-edge lower limits.
    #[default]
    Standard,
    /// The printed loop bounds verbatim: budget N − 3 and P−p−u, Q−q−v, R−r−w ≥ 1.
    /// Reproduces the published runs; not a sound search.
    Listing,
    /// Lower limits kept, no boundary budget; each side has at most N edges.
    NoBudget,
    /// No budget and no lower limits; each side has at most N edges.
    Unpruned,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    pub pruning: Pruning,
    /// Stop after the first outer-loop slice that yields a hit. Deterministic for any thread count.
    pub stop_at_first_hit: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub tuples_examined: u64,
    /// Tuples whose coloring quadratic vanishes identically; skipped.
    pub degenerate_tuples: Vec<ColoringParams>,
    pub roots_in_unit_interval: u64,
    /// (root, X-side) combinations for which the Z-side was solved.
    pub side_combinations: u64,
    /// Integer solutions of the area equation that were then checked against all constraints.
    pub area_solutions: u64,
}

impl Diagnostics {
    fn absorb(&mut self, other: Diagnostics) {
        self.tuples_examined += other.tuples_examined;
        self.degenerate_tuples.extend(other.degenerate_tuples);
        self.roots_in_unit_interval += other.roots_in_unit_interval;
        self.side_combinations += other.side_combinations;
        self.area_solutions += other.area_solutions;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: u32,
    pub shape: Shape,
    pub pruning: Pruning,
    /// True when the search stopped early on a hit.
    pub stopped_early: bool,
    pub hits: Vec<SearchHit>,
    pub diagnostics: Diagnostics,
}

/// Coefficients (A, B, C) of A·s² + B·s + C from M(2 + s − s²) = Ps + Q(1 − s²) + R.
pub fn coloring_quadratic(params: ColoringParams) -> (Rational, Rational, Rational) {
    let (a, b, c) = coloring_coeffs(params);
    (Rational::from(a), Rational::from(b), Rational::from(c))
}

fn coloring_coeffs(c: ColoringParams) -> (i64, i64, i64) {
    (c.q - c.m, c.m - c.p, 2 * c.m - c.q - c.r)
}

pub fn coloring_discriminant(params: ColoringParams) -> i64 {
    let ColoringParams { m, p, q, r } = params;
    (m - p) * (m - p) - 4 * (q - m) * (2 * m - q - r)
}

/// `(X·Z − N(1 − s²), X·Z − N·s)` in units of c.
pub fn area_residuals(
    dec: &BoundaryDecomposition,
    s: &QuadExt,
    n: i64,
) -> Result<(QuadExt, QuadExt)> {
    if !s.is_positive() || !(&QuadExt::one() - s).is_positive() {
        return Err(Error::OutOfRange {
            what: "s",
            value: s.to_string(),
        });
    }
    let t = &QuadExt::one() - &s.square();
    let side = |lin_a: u32, lin_b: u32, lin_c: u32| {
        s.mul_rat(&Rational::from(lin_a as i64))
            + t.mul_rat(&Rational::from(lin_b as i64))
            + QuadExt::int(lin_c as i64)
    };
    let x = side(dec.p, dec.q, dec.r);
    let z = side(dec.u, dec.v, dec.w);
    let xz = &x * &z;
    let nn = Rational::from(n);
    Ok((&xz - &t.mul_rat(&nn), &xz - &s.mul_rat(&nn)))
}

/// Lower limit for r, w, m in the non-isosceles case, per root s.
pub fn scalene_lower_limit(s: &QuadExt) -> u32 {
    let t = &QuadExt::one() - &s.square();
    let is_int = |x: Result<QuadExt>| x.map(|v| v.is_integer()).unwrap_or(false);
    if s < &t && (s.is_rational() || !is_int(t.checked_div(s))) {
        2
    } else if &t < s && !is_int(s.checked_div(&t)) {
        2
    } else {
        1
    }
}

fn tuple_ranges(n: i64, shape: Shape) -> Vec<i64> {
    match shape {
        Shape::Isosceles => (1..n).collect(),
        Shape::Scalene => (-n..=n).collect(),
    }
}

/// Calls `f` on every (M, P, Q, R) of one outer slice, in lexicographic order of the inner indices.
fn for_each_tuple(n: i64, shape: Shape, outer: i64, mut f: impl FnMut(ColoringParams)) {
    match shape {
        Shape::Isosceles => {
            let m = outer;
            for p in 0..n {
                for q in 0..n - p {
                    for r in 6..n - p - q {
                        f(ColoringParams { m, p, q, r });
                    }
                }
            }
        }
        Shape::Scalene => {
            let p = outer;
            for m in 1..n {
                let qb = n - p.abs();
                for q in -qb..=qb {
                    let rb = n - p.abs() - q.abs();
                    for r in -rb..=rb {
                        f(ColoringParams { m, p, q, r });
                    }
                }
            }
        }
    }
}

/// Sign of `σ√D − k` for `D ≥ 0`.
fn cmp_signed_sqrt(sigma: i64, d: i128, k: i128) -> Ordering {
    if sigma > 0 {
        if k < 0 {
            Ordering::Greater
        } else {
            d.cmp(&(k * k))
        }
    } else if k >= 0 {
        if d == 0 && k == 0 {
            Ordering::Equal
        } else {
            Ordering::Less
        }
    } else {
        (k * k).cmp(&d)
    }
}

enum TupleRoots {
    Degenerate,
    Roots(Vec<QuadExt>),
}

/// Roots of the coloring quadratic in (0, 1), screened with integer arithmetic first.
fn unit_interval_roots(params: ColoringParams) -> TupleRoots {
    let (mut a, mut b, mut c) = coloring_coeffs(params);
    if a == 0 && b == 0 {
        return if c == 0 {
            TupleRoots::Degenerate
        } else {
            TupleRoots::Roots(vec![])
        };
    }
    if a == 0 {
        // s = -c/b
        if b < 0 {
            b = -b;
            c = -c;
        }
        let ok = -c > 0 && -c < b;
        return TupleRoots::Roots(if ok {
            vec![QuadExt::rational(Rational::new(-c, b))]
        } else {
            vec![]
        });
    }
    if a < 0 {
        a = -a;
        b = -b;
        c = -c;
    }
    let disc = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
    if disc < 0 {
        return TupleRoots::Roots(vec![]);
    }
    let mut out = Vec::new();
    let signs: &[i64] = if disc == 0 { &[1] } else { &[-1, 1] };
    for &sigma in signs {
        // 0 < (-b + σ√D)/(2a) < 1  ⟺  σ√D > b  and  σ√D < 2a + b
        if cmp_signed_sqrt(sigma, disc, b as i128) == Ordering::Greater
            && cmp_signed_sqrt(sigma, disc, 2 * a as i128 + b as i128) == Ordering::Less
        {
            let den = Rational::from(2 * a);
            let rat = Rational::from(-b) / &den;
            let coef = Rational::from(sigma) / &den;
            out.push(QuadExt::new(rat, coef, disc as u64));
        }
    }
    TupleRoots::Roots(out)
}

/// Every (params, s) the search visits: tuple order, roots ascending.
pub fn roots_for(n: u32, shape: Shape) -> Vec<(ColoringParams, QuadExt)> {
    let n = n as i64;
    let mut out = Vec::new();
    for o in tuple_ranges(n, shape) {
        for_each_tuple(n, shape, o, |params| {
            if let TupleRoots::Roots(rs) = unit_interval_roots(params) {
                out.extend(rs.into_iter().map(|s| (params, s)));
            }
        });
    }
    out
}

/// Constraints on the decomposition for a given tuple and root.
#[derive(Debug, Clone, Copy)]
struct Limits {
    /// +1: P = p+u+k (isosceles); −1: P = p+u−k.
    sigma: i64,
    lower: u32,
    budget: Option<u32>,
    side_cap: Option<u32>,
    /// The printed loops `range(0, P-p)` etc., which force P−p−u ≥ 1 and likewise for Q and R.
    listing_ranges: bool,
}

impl Limits {
    fn for_root(n: i64, shape: Shape, pruning: Pruning, s: &QuadExt) -> Limits {
        let sigma = match shape {
            Shape::Isosceles => 1,
            Shape::Scalene => -1,
        };
        let lower = match shape {
            Shape::Isosceles => 2,
            Shape::Scalene => scalene_lower_limit(s),
        };
        match pruning {
            Pruning::Standard => Limits {
                sigma,
                lower,
                budget: Some((n - 2).max(0) as u32),
                side_cap: None,
                listing_ranges: false,
            },
            Pruning::Listing => Limits {
                sigma,
                lower,
                // the listing skips boundarytiles >= N-2
                budget: Some((n - 3).max(0) as u32),
                side_cap: None,
                listing_ranges: true,
            },
            Pruning::NoBudget => Limits {
                sigma,
                lower,
                budget: None,
                side_cap: Some(n as u32),
                listing_ranges: false,
            },
            Pruning::Unpruned => Limits {
                sigma,
                lower: 0,
                budget: None,
                side_cap: Some(n as u32),
                listing_ranges: false,
            },
        }
    }

    /// Largest edge count one side can have.
    fn side_max(&self) -> i64 {
        let from_budget = self.budget.map(|b| b as i64 - 2 * self.lower as i64);
        let cap = self.side_cap.map(|c| c as i64);
        match (from_budget, cap) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("every mode bounds the sides"),
        }
    }

    /// Largest (p+q+r) + (u+v+w) when σ = −1, where the boundary count is
    /// 2((p+q+r) + (u+v+w)) − (P+Q+R).
    fn xz_max(&self, params: ColoringParams) -> i64 {
        let s = params.p + params.q + params.r;
        let mut cap = i64::MAX;
        if let Some(b) = self.budget {
            cap = cap.min((b as i64 + s).div_euclid(2));
        }
        if let Some(c) = self.side_cap {
            cap = cap.min(c as i64 + s).min(2 * c as i64);
        }
        cap
    }

    /// The third side's count from the aggregate, e.g. k from P, p, u.
    fn third(&self, total: i64, x: i64, z: i64) -> i64 {
        self.sigma * (total - x - z)
    }

    fn accept(&self, params: ColoringParams, d: &[i64; 6]) -> Option<BoundaryDecomposition> {
        let [p, q, r, u, v, w] = *d;
        let k = self.third(params.p, p, u);
        let ell = self.third(params.q, q, v);
        let m = self.third(params.r, r, w);
        let lower = self.lower as i64;
        if [p, q, u, v, k, ell].iter().any(|&x| x < 0) || r < lower || w < lower || m < lower {
            return None;
        }
        if self.listing_ranges
            && (p > params.p
                || u >= params.p - p
                || q > params.q
                || v >= params.q - q
                || r > params.r
                || w >= params.r - r)
        {
            return None;
        }
        if let Some(b) = self.budget {
            if p + q + r + u + v + w + k + ell + m > b as i64 {
                return None;
            }
        }
        if let Some(c) = self.side_cap {
            let c = c as i64;
            if p + q + r > c || u + v + w > c || k + ell + m > c {
                return None;
            }
        }
        let c = |x: i64| x as u32;
        Some(BoundaryDecomposition {
            p: c(p),
            q: c(q),
            r: c(r),
            u: c(u),
            v: c(v),
            w: c(w),
            k: c(k),
            ell: c(ell),
            m: c(m),
        })
    }
}

/// `x0 + x1·√d` with integer parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pair(i128, i128);

impl Pair {
    fn add(self, o: Pair) -> Pair {
        Pair(self.0 + o.0, self.1 + o.1)
    }
    fn scale(self, k: i128) -> Pair {
        Pair(self.0 * k, self.1 * k)
    }
    fn mul(self, o: Pair, d: i128) -> Pair {
        Pair(self.0 * o.0 + self.1 * o.1 * d, self.0 * o.1 + self.1 * o.0)
    }
}

/// s and 1 − s² scaled by den² into integer pairs.
struct ScaledRoot {
    d: i128,
    unit: Pair,
    s: Pair,
    t: Pair,
}

impl ScaledRoot {
    fn new(s: &QuadExt) -> Option<ScaledRoot> {
        let den = s.rat().denom().lcm(s.coef().denom());
        let a0 = (s.rat().numer() * &den / s.rat().denom()).to_i128()?;
        let a1 = (s.coef().numer() * &den / s.coef().denom()).to_i128()?;
        let den = den.to_i128()?;
        let d = s.d() as i128;
        let den2 = den * den;
        Some(ScaledRoot {
            d,
            unit: Pair(den2, 0),
            s: Pair(a0 * den, a1 * den),
            t: Pair(den2 - a0 * a0 - a1 * a1 * d, -2 * a0 * a1),
        })
    }

    fn side(&self, lin_a: i64, lin_b: i64, lin_c: i64) -> Pair {
        self.s
            .scale(lin_a as i128)
            .add(self.t.scale(lin_b as i128))
            .add(self.unit.scale(lin_c as i128))
    }
}

/// Box for the Z side: `u ≤ u_max`, `v ≤ v_max`, `u + v ≤ uv_max`.
#[derive(Debug, Clone, Copy)]
struct ZBox {
    u_max: i64,
    v_max: i64,
    uv_max: i64,
}

/// Integer solutions (u, v, w) of e_u·u + e_v·v + e_w·w = target with u, v in the box.
/// w is returned unchecked.
fn solve_z_side(
    e: [Pair; 3],
    target: Pair,
    irrational: bool,
    zb: ZBox,
    mut found: impl FnMut(i64, i64, i64),
) {
    let [eu, ev, ew] = e;
    let det = |a: Pair, b: Pair| a.0 * b.1 - b.0 * a.1;
    let u_max = zb.u_max.min(zb.uv_max);
    if irrational {
        // loop over the variable whose removal leaves an invertible 2×2 system
        let dt = det(ew, ev);
        if dt != 0 {
            for u in 0..=u_max {
                let rhs = Pair(target.0 - eu.0 * u as i128, target.1 - eu.1 * u as i128);
                let wn = rhs.0 * ev.1 - ev.0 * rhs.1;
                let vn = ew.0 * rhs.1 - rhs.0 * ew.1;
                if wn % dt == 0 && vn % dt == 0 {
                    let v = (vn / dt) as i64;
                    if (0..=zb.v_max.min(zb.uv_max - u)).contains(&v) {
                        found(u, v, (wn / dt) as i64);
                    }
                }
            }
        } else {
            let dt = det(ew, eu);
            if dt == 0 {
                return;
            }
            for v in 0..=zb.v_max.min(zb.uv_max) {
                let rhs = Pair(target.0 - ev.0 * v as i128, target.1 - ev.1 * v as i128);
                let wn = rhs.0 * eu.1 - eu.0 * rhs.1;
                let un = ew.0 * rhs.1 - rhs.0 * ew.1;
                if wn % dt == 0 && un % dt == 0 {
                    let u = (un / dt) as i64;
                    if (0..=u_max.min(zb.uv_max - v)).contains(&u) {
                        found(u, v, (wn / dt) as i64);
                    }
                }
            }
        }
    } else {
        if ew.0 == 0 {
            return;
        }
        for u in 0..=u_max {
            let base = target.0 - eu.0 * u as i128;
            for v in 0..=zb.v_max.min(zb.uv_max - u) {
                let rest = base - ev.0 * v as i128;
                if rest % ew.0 == 0 {
                    found(u, v, (rest / ew.0) as i64);
                }
            }
        }
    }
}

/// Hits for a single tuple and root.
fn search_root(
    n: i64,
    shape: Shape,
    params: ColoringParams,
    s: &QuadExt,
    lim: Limits,
    diag: &mut Diagnostics,
    hits: &mut Vec<SearchHit>,
) {
    let root = ScaledRoot::new(s).expect("coloring roots have small height");
    let irrational = !s.is_rational();
    let lower = lim.lower as i64;
    let side_max = lim.side_max();
    let iso = lim.sigma > 0;
    // total edge count on X and Z together (σ = −1 only)
    let xz_max = if iso { i64::MAX } else { lim.xz_max(params) };
    let x_max = side_max.min(xz_max.saturating_sub(lower));
    if x_max < lower {
        return;
    }
    // den⁴·N·t and den⁴·N·s
    let den2 = root.unit.0;
    let targets = [
        (WhichArea::BisAlpha, root.t.scale(den2 * n as i128)),
        (WhichArea::BisBeta, root.s.scale(den2 * n as i128)),
    ];
    let r_hi = if iso {
        (params.r - 2 * lower).min(x_max)
    } else {
        x_max
    };
    for r in lower..=r_hi {
        let p_hi = if iso {
            params.p.min(x_max - r)
        } else {
            x_max - r
        };
        for p in 0..=p_hi {
            let q_hi = if iso {
                params.q.min(x_max - r - p)
            } else {
                x_max - r - p
            };
            for q in 0..=q_hi {
                let zb = if iso {
                    ZBox {
                        u_max: params.p - p,
                        v_max: params.q - q,
                        uv_max: i64::MAX,
                    }
                } else {
                    let z_max = side_max.min(xz_max - (p + q + r));
                    ZBox {
                        u_max: z_max - lower,
                        v_max: z_max - lower,
                        uv_max: z_max - lower,
                    }
                };
                if zb.uv_max < 0 {
                    continue;
                }
                let x = root.side(p, q, r);
                let e = [
                    x.mul(root.s, root.d),
                    x.mul(root.t, root.d),
                    x.mul(root.unit, root.d),
                ];
                for &(which, target) in &targets {
                    diag.side_combinations += 1;
                    solve_z_side(e, target, irrational, zb, |u, v, w| {
                        diag.area_solutions += 1;
                        let Some(dec) = lim.accept(params, &[p, q, r, u, v, w]) else {
                            return;
                        };
                        let (ra, rb) = area_residuals(&dec, s, n).expect("root lies in (0,1)");
                        let exact_zero = match which {
                            WhichArea::BisAlpha => ra.is_zero(),
                            WhichArea::BisBeta => rb.is_zero(),
                        };
                        assert!(
                            exact_zero,
                            "integer and field arithmetic disagree at {params:?} {dec:?} s={s}"
                        );
                        let variant = match (shape, which) {
                            (Shape::Isosceles, WhichArea::BisAlpha) => Variant::IsoscelesBaseAlpha,
                            (Shape::Isosceles, WhichArea::BisBeta) => Variant::IsoscelesBaseBeta,
                            (Shape::Scalene, _) => Variant::Scalene,
                        };
                        hits.push(SearchHit {
                            variant,
                            params,
                            decomposition: dec,
                            s: s.clone(),
                            which_area: which,
                        });
                    });
                }
            }
        }
    }
}

fn search_slice(
    n: i64,
    shape: Shape,
    pruning: Pruning,
    outer: i64,
) -> (Vec<SearchHit>, Diagnostics) {
    let mut diag = Diagnostics::default();
    let mut hits = Vec::new();
    let budgeted = matches!(pruning, Pruning::Standard | Pruning::Listing);
    for_each_tuple(n, shape, outer, |params| {
        diag.tuples_examined += 1;
        if budgeted && shape == Shape::Isosceles && params.p + params.q + params.r > n - 2 {
            // P + Q + R is the number of boundary edges here
            return;
        }
        match unit_interval_roots(params) {
            TupleRoots::Degenerate => diag.degenerate_tuples.push(params),
            TupleRoots::Roots(roots) => {
                for s in roots {
                    diag.roots_in_unit_interval += 1;
                    let lim = Limits::for_root(n, shape, pruning, &s);
                    search_root(n, shape, params, &s, lim, &mut diag, &mut hits);
                }
            }
        }
    });
    (hits, diag)
}

/// Runs the search on the current rayon pool.
pub fn run_search(n: u32, shape: Shape, opts: SearchOptions) -> Result<SearchReport> {
    if !(3..=200).contains(&n) {
        return Err(Error::OutOfRange {
            what: "N",
            value: n.to_string(),
        });
    }
    let ni = n as i64;
    let outer = tuple_ranges(ni, shape);
    let first_hit = AtomicUsize::new(usize::MAX);
    let slices: Vec<Option<(Vec<SearchHit>, Diagnostics)>> = outer
        .par_iter()
        .enumerate()
        .map(|(idx, &o)| {
            if opts.stop_at_first_hit && idx > first_hit.load(AtomicOrdering::Relaxed) {
                return None;
            }
            let res = search_slice(ni, shape, opts.pruning, o);
            if opts.stop_at_first_hit && !res.0.is_empty() {
                first_hit.fetch_min(idx, AtomicOrdering::Relaxed);
            }
            Some(res)
        })
        .collect();
    let cutoff = if opts.stop_at_first_hit {
        first_hit.load(AtomicOrdering::Relaxed)
    } else {
        usize::MAX
    };
    let mut hits = Vec::new();
    let mut diagnostics = Diagnostics::default();
    for (idx, slice) in slices.into_iter().enumerate() {
        if idx > cutoff {
            break;
        }
        let (h, d) = slice.expect("slices up to the cutoff always run");
        hits.extend(h);
        diagnostics.absorb(d);
    }
    hits.sort_by(|a, b| a.cmp_key(b));
    diagnostics.degenerate_tuples.sort();
    Ok(SearchReport {
        n,
        shape,
        pruning: opts.pruning,
        stopped_early: cutoff != usize::MAX,
        hits,
        diagnostics,
    })
}

pub fn search_isosceles(n: u32) -> Result<Vec<SearchHit>> {
    Ok(run_search(n, Shape::Isosceles, SearchOptions::default())?.hits)
}

pub fn search_scalene(n: u32) -> Result<Vec<SearchHit>> {
    Ok(run_search(n, Shape::Scalene, SearchOptions::default())?.hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(m: i64, p: i64, q: i64, r: i64) -> ColoringParams {
        ColoringParams { m, p, q, r }
    }

    #[test]
    fn quadratic_coefficients() {
        let r = Rational::from;
        assert_eq!(coloring_quadratic(cp(1, 0, 2, 1)), (r(1), r(1), r(-1)));
        assert_eq!(coloring_quadratic(cp(1, 1, 1, 1)), (r(0), r(0), r(0)));
        assert_eq!(coloring_quadratic(cp(2, 3, 1, 3)), (r(-1), r(-1), r(0)));
        assert_eq!(coloring_discriminant(cp(1, 0, 2, 1)), 5);
    }

    #[test]
    fn residuals_by_hand() {
        let dec = BoundaryDecomposition {
            p: 0,
            q: 0,
            r: 3,
            u: 0,
            v: 0,
            w: 3,
            k: 0,
            ell: 0,
            m: 0,
        };
        let (a, b) = area_residuals(&dec, &QuadExt::rational(Rational::new(1, 2)), 7).unwrap();
        assert_eq!(a, QuadExt::rational(Rational::new(15, 4)));
        assert_eq!(b, QuadExt::rational(Rational::new(11, 2)));
        assert!(area_residuals(&dec, &QuadExt::int(1), 7).is_err());
    }

    #[test]
    fn residual_zero_when_constructed() {
        // s = 1/2, t = 3/4; X = 1 + 2·(1/2) = 2 and Z = 3 give XZ = 6 = 8·t
        let dec = BoundaryDecomposition {
            p: 2,
            q: 0,
            r: 1,
            u: 0,
            v: 0,
            w: 3,
            k: 0,
            ell: 0,
            m: 0,
        };
        let (a, _) = area_residuals(&dec, &QuadExt::rational(Rational::new(1, 2)), 8).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn degenerate_residual_when_x_vanishes() {
        let dec = BoundaryDecomposition {
            p: 0,
            q: 0,
            r: 0,
            u: 1,
            v: 1,
            w: 1,
            k: 0,
            ell: 0,
            m: 0,
        };
        let s = QuadExt::rational(Rational::new(1, 3));
        let (a, b) = area_residuals(&dec, &s, 5).unwrap();
        assert_eq!(a, QuadExt::rational(Rational::new(-40, 9)));
        assert_eq!(b, QuadExt::rational(Rational::new(-5, 3)));
    }

    #[test]
    fn prescreen_agrees_with_exact_solver() {
        use crate::exact_arith::solve_quadratic_exact;
        for m in 1..6 {
            for p in -6..7 {
                for q in -6..7 {
                    for r in -6..7 {
                        let params = cp(m, p, q, r);
                        let (a, b, c) = coloring_quadratic(params);
                        let exact = solve_quadratic_exact(&a, &b, &c);
                        match unit_interval_roots(params) {
                            TupleRoots::Degenerate => assert!(matches!(
                                exact,
                                crate::exact_arith::QuadraticRoots::Degenerate
                            )),
                            TupleRoots::Roots(got) => {
                                let want: Vec<QuadExt> = exact
                                    .roots()
                                    .iter()
                                    .filter(|s| {
                                        s.is_positive() && (&QuadExt::one() - *s).is_positive()
                                    })
                                    .cloned()
                                    .collect();
                                assert_eq!(got, want, "{params:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lower_limit_predicate() {
        let q = |s: &str| s.parse::<QuadExt>().unwrap();
        // rational s below the golden point
        assert_eq!(scalene_lower_limit(&q("1/2")), 2);
        // s = 2/3: t = 5/9 < s, s/t = 6/5 not an integer
        assert_eq!(scalene_lower_limit(&q("2/3")), 2);
        // golden conjugate: s = t
        assert_eq!(scalene_lower_limit(&q("-1/2+1/2*sqrt(5)")), 1);
        // s = √2 − 1: t = 2s, so t/s = 2 is an integer
        assert_eq!(scalene_lower_limit(&q("-1+1*sqrt(2)")), 1);
    }

    #[test]
    fn tiny_cases_are_empty() {
        for n in 3..=6 {
            assert!(search_isosceles(n).unwrap().is_empty());
            assert!(search_scalene(n).unwrap().is_empty());
        }
    }

    #[test]
    fn out_of_range_n() {
        assert!(run_search(2, Shape::Isosceles, SearchOptions::default()).is_err());
        assert!(run_search(201, Shape::Scalene, SearchOptions::default()).is_err());
    }
}
