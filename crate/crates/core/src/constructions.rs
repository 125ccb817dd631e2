//! Explicit tilings with exact coordinates, an exact verifier, the coloring number, and SVG.
//!
//! Points are coordinates in an affine basis (e1, e2) with an exact Gram matrix
//! (|e1|², e1·e2, |e2|²). Lengths come from the Gram matrix; orientation and incidence
//! are affine, so they are decided from the coordinates alone.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{QuadExt, Rational};

pub type Point = [QuadExt; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub field_d: u64,
    pub gram: [QuadExt; 3],
    pub points: Vec<Point>,
    pub outer: [usize; 3],
    pub tiles: Vec<[usize; 3]>,
    pub tile_sq_lengths: [QuadExt; 3],
}

fn q(n: i64) -> QuadExt {
    QuadExt::int(n)
}

fn qr(n: i64, d: i64) -> QuadExt {
    QuadExt::rational(Rational::new(n, d))
}

fn sub(a: &Point, b: &Point) -> Point {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn cross(u: &Point, v: &Point) -> QuadExt {
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// Twice the signed area of (a, b, c) in basis units.
fn orient(a: &Point, b: &Point, c: &Point) -> QuadExt {
    cross(&sub(b, a), &sub(c, a))
}

fn cmp(a: &QuadExt, b: &QuadExt) -> Ordering {
    a.cmp_exact(b).expect("tiling values share one field")
}

impl Tiling {
    pub fn n(&self) -> usize {
        self.tiles.len()
    }

    pub fn dot(&self, u: &Point, v: &Point) -> QuadExt {
        let [g11, g12, g22] = &self.gram;
        g11 * &(&u[0] * &v[0]) + g12 * &(&u[0] * &v[1] + &u[1] * &v[0]) + g22 * &(&u[1] * &v[1])
    }

    pub fn sq_dist(&self, i: usize, j: usize) -> QuadExt {
        let u = sub(&self.points[i], &self.points[j]);
        self.dot(&u, &u)
    }

    fn tri(&self, t: &[usize; 3]) -> [&Point; 3] {
        [&self.points[t[0]], &self.points[t[1]], &self.points[t[2]]]
    }

    /// Checks indices, repeated corners, and that every value lives in Q or Q(√field_d).
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedTiling(m));
        let np = self.points.len();
        for (k, t) in self
            .tiles
            .iter()
            .chain(std::iter::once(&self.outer))
            .enumerate()
        {
            if t.iter().any(|&i| i >= np) {
                return bad(format!("triangle {k} has a point index out of range"));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return bad(format!("triangle {k} repeats a point"));
            }
        }
        let values = self
            .points
            .iter()
            .flatten()
            .chain(&self.gram)
            .chain(&self.tile_sq_lengths);
        for v in values {
            if v.d() != 0 && v.d() != self.field_d {
                return bad(format!("value {v} is outside Q(sqrt({}))", self.field_d));
            }
        }
        if !self.gram[0].is_positive()
            || !(&(&self.gram[0] * &self.gram[2]) - &self.gram[1].square()).is_positive()
        {
            return bad("Gram matrix is not positive definite".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tiling serializes")
    }

    pub fn from_json(s: &str) -> Result<Tiling> {
        let t: Tiling = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    /// Index of the outer vertex with a right angle, if any.
    pub fn right_angle_vertex(&self) -> Option<usize> {
        (0..3).find(|&i| {
            let v = &self.points[self.outer[i]];
            let a = sub(&self.points[self.outer[(i + 1) % 3]], v);
            let b = sub(&self.points[self.outer[(i + 2) % 3]], v);
            self.dot(&a, &b).is_zero()
        })
    }
}

struct Builder {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    tiles: Vec<[usize; 3]>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            points: Vec::new(),
            index: HashMap::new(),
            tiles: Vec::new(),
        }
    }

    fn point(&mut self, p: Point) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        self.points.push(p.clone());
        self.index.insert(p, self.points.len() - 1);
        self.points.len() - 1
    }

    /// Adds a tile, counterclockwise in basis coordinates.
    fn tile(&mut self, a: Point, b: Point, c: Point) {
        let ccw = orient(&a, &b, &c).is_positive();
        let (ia, ib, ic) = (self.point(a), self.point(b), self.point(c));
        self.tiles
            .push(if ccw { [ia, ib, ic] } else { [ia, ic, ib] });
    }

    /// The n² subdivision of triangle (p0, p1, p2) by lines parallel to its sides.
    fn quadratic(&mut self, p0: &Point, p1: &Point, p2: &Point, n: u32) {
        let d1 = sub(p1, p0);
        let d2 = sub(p2, p0);
        let at = |i: u32, j: u32| -> Point {
            let (fi, fj) = (qr(i as i64, n as i64), qr(j as i64, n as i64));
            [
                &p0[0] + &(&fi * &d1[0] + &fj * &d2[0]),
                &p0[1] + &(&fi * &d1[1] + &fj * &d2[1]),
            ]
        };
        for j in 0..n {
            for i in 0..n - j {
                self.tile(at(i, j), at(i + 1, j), at(i, j + 1));
                if i + j + 2 <= n {
                    self.tile(at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
                }
            }
        }
    }

    fn finish(
        mut self,
        field_d: u64,
        gram: [QuadExt; 3],
        outer: [Point; 3],
        tile_sq: [QuadExt; 3],
    ) -> Tiling {
        let outer = [
            self.point(outer[0].clone()),
            self.point(outer[1].clone()),
            self.point(outer[2].clone()),
        ];
        Tiling {
            field_d,
            gram,
            points: self.points,
            outer,
            tiles: self.tiles,
            tile_sq_lengths: tile_sq,
        }
    }
}

fn field_of(values: &[&QuadExt]) -> Result<u64> {
    let mut d = 0;
    for v in values {
        d = QuadExt::common_d(&QuadExt::new(Rational::zero(), Rational::one(), d), v)?;
    }
    Ok(d)
}

fn pt(x: i64, y: i64) -> Point {
    [q(x), q(y)]
}

/// 16·area² of a triangle with squared sides x, y, z.
fn heron16(x: &QuadExt, y: &QuadExt, z: &QuadExt) -> QuadExt {
    let two = q(2);
    &two * &(&(x * y) + &(&(y * z) + &(z * x))) - &(&x.square() + &(&y.square() + &z.square()))
}

/// n² tiles similar to the outer triangle. `tile_sq` = (a², b², c²) with a opposite vertex A
/// of the outer triangle A = (0,0), B = (n,0), C = (0,n).
pub fn gen_quadratic(tile_sq: [QuadExt; 3], n: u32) -> Result<Tiling> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let field_d = field_of(&[&tile_sq[0], &tile_sq[1], &tile_sq[2]])?;
    let [a2, b2, c2] = &tile_sq;
    if !(a2.is_positive()
        && b2.is_positive()
        && c2.is_positive()
        && heron16(a2, b2, c2).is_positive())
    {
        return Err(Error::DegenerateTile(format!(
            "squared sides ({a2}, {b2}, {c2})"
        )));
    }
    let g12 = (&(b2 + c2) - a2).mul_rat(&Rational::new(1, 2));
    let mut b = Builder::new();
    let (p0, p1, p2) = (pt(0, 0), pt(n as i64, 0), pt(0, n as i64));
    b.quadratic(&p0, &p1, &p2, n);
    Ok(b.finish(
        field_d,
        [c2.clone(), g12, b2.clone()],
        [p0, p1, p2],
        tile_sq,
    ))
}

/// Right triangle with the right angle at C = (0,0), A = (1,0), B = (0,1), legs in ratio e : f,
/// split by the altitude from C into blocks of e² and f² tiles with legs e and f.
fn biquadratic_builder(e: u32, f: u32) -> (Builder, [QuadExt; 3]) {
    let (e2, f2) = (e as i64 * e as i64, f as i64 * f as i64);
    let s = e2 + f2;
    let gram = [q(e2 * s), q(0), q(f2 * s)];
    let (c, a, bv) = (pt(0, 0), pt(1, 0), pt(0, 1));
    let foot = [qr(f2, s), qr(e2, s)];
    let mut b = Builder::new();
    b.quadratic(&a, &foot, &c, e);
    b.quadratic(&bv, &c, &foot, f);
    (b, gram)
}

pub fn gen_biquadratic(e: u32, f: u32) -> Result<Tiling> {
    if !(e > f && f >= 1) {
        return Err(Error::InvalidParams(format!(
            "need e > f >= 1, got ({e}, {f})"
        )));
    }
    biquadratic(e, f)
}

/// As [`gen_biquadratic`] but also allows e = f and either order.
pub fn biquadratic(e: u32, f: u32) -> Result<Tiling> {
    if e == 0 || f == 0 {
        return Err(Error::InvalidParams(format!(
            "need e, f >= 1, got ({e}, {f})"
        )));
    }
    let (b, gram) = biquadratic_builder(e, f);
    let (e2, f2) = (e as i64 * e as i64, f as i64 * f as i64);
    Ok(b.finish(
        0,
        gram,
        [pt(1, 0), pt(0, 1), pt(0, 0)],
        [q(e2), q(f2), q(e2 + f2)],
    ))
}

/// Reflects across the leg from the right angle to the next outer vertex.
pub fn gen_double(t: &Tiling) -> Result<Tiling> {
    gen_double_across(t, 0)
}

/// Reflects across one leg: `leg = 0` takes the leg to the next outer vertex, `1` the other.
pub fn gen_double_across(t: &Tiling, leg: usize) -> Result<Tiling> {
    t.validate()?;
    if leg > 1 {
        return Err(Error::InvalidParams(format!(
            "leg must be 0 or 1, got {leg}"
        )));
    }
    let i = t.right_angle_vertex().ok_or(Error::NotRightTriangle)?;
    let v = t.points[t.outer[i]].clone();
    let apex = t.points[t.outer[(i + 1 + leg) % 3]].clone();
    let other = t.points[t.outer[(i + 2 - leg) % 3]].clone();
    let u = sub(&apex, &v);
    let uu = t.dot(&u, &u);
    let reflect = |x: &Point| -> Point {
        let y = sub(x, &v);
        let k = &t.dot(&y, &u) / &uu;
        let two_k = &k + &k;
        [
            &(&v[0] + &(&two_k * &u[0])) - &y[0],
            &(&v[1] + &(&two_k * &u[1])) - &y[1],
        ]
    };
    let mut b = Builder::new();
    for tile in &t.tiles {
        let [p, q, r] = t.tri(tile);
        b.tile(p.clone(), q.clone(), r.clone());
    }
    for tile in &t.tiles {
        let [p, q, r] = t.tri(tile);
        b.tile(reflect(p), reflect(q), reflect(r));
    }
    let mirrored = reflect(&other);
    Ok(b.finish(
        t.field_d,
        t.gram.clone(),
        [apex, other, mirrored],
        t.tile_sq_lengths.clone(),
    ))
}

/// Isosceles triangle of 2c² tiles with legs a, b: one half is the c²-quadratic tiling of the
/// right triangle with legs ac, bc, the other half its mirror image split into a² + b² tiles.
pub fn gen_pythagorean_mixed(a: u32, b: u32, c: u32) -> Result<Tiling> {
    let (a2, b2, c2) = (
        a as u64 * a as u64,
        b as u64 * b as u64,
        c as u64 * c as u64,
    );
    if a == 0 || b == 0 || a2 + b2 != c2 || a.gcd(&b).gcd(&c) != 1 {
        return Err(Error::NotPythagorean(format!("({a}, {b}, {c})")));
    }
    let (mut bld, gram) = biquadratic_builder(a, b);
    let (cv, av, mirrored) = (pt(0, 0), pt(1, 0), pt(0, -1));
    bld.quadratic(&cv, &av, &mirrored, c);
    let tile_sq = [q(a2 as i64), q(b2 as i64), q(c2 as i64)];
    Ok(bld.finish(0, gram, [av, pt(0, 1), mirrored], tile_sq))
}

pub fn hexagonal_count(k: u32) -> u64 {
    3 * (k as u64 + 1).pow(2)
}

/// Equilateral triangle of 3(k+1)² tiles with angles (π/6, π/6, 2π/3): 1 + 2 + … + k hexagons
/// of six tiles, and k + 1 tiles along each side. Basis vectors are unit length at 60°.
pub fn gen_hexagonal(k: u32) -> Result<Tiling> {
    if k > 10 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k.to_string(),
        });
    }
    let m = k as i64 + 1;
    let corners = [pt(0, 0), pt(m, m), pt(-m, 2 * m)];
    let inside =
        |p: &Point| (0..3).all(|i| orient(&corners[i], &corners[(i + 1) % 3], p).is_positive());
    let mut b = Builder::new();
    let off = |c: &Point, di: i64, dj: i64| -> Point { [&c[0] + &q(di), &c[1] + &q(dj)] };
    let third = qr(1, 3);
    for j in -2..=2 * m + 2 {
        for i in -m - 2..=m + 2 {
            if (i - j).rem_euclid(3) != 2 {
                continue;
            }
            let c = pt(i, j);
            // hexagon vertices alternate between the inner triangle and the three outer corners
            let inner = [off(&c, 1, 0), off(&c, 0, -1), off(&c, -1, 1)];
            let outer = [off(&c, 0, 1), off(&c, 1, -1), off(&c, -1, 0)];
            let mut cand = vec![
                [c.clone(), inner[0].clone(), inner[1].clone()],
                [c.clone(), inner[1].clone(), inner[2].clone()],
                [c.clone(), inner[2].clone(), inner[0].clone()],
            ];
            cand.push([outer[0].clone(), inner[2].clone(), inner[0].clone()]);
            cand.push([outer[1].clone(), inner[0].clone(), inner[1].clone()]);
            cand.push([outer[2].clone(), inner[1].clone(), inner[2].clone()]);
            for [p, r, s] in cand {
                let centroid = [
                    (&(&p[0] + &r[0]) + &s[0]) * &third,
                    (&(&p[1] + &r[1]) + &s[1]) * &third,
                ];
                if inside(&centroid) {
                    b.tile(p, r, s);
                }
            }
        }
    }
    Ok(b.finish(0, [q(1), qr(1, 2), q(1)], corners, [q(1), q(1), q(3)]))
}

/// Splits every tile of an isosceles-tile tiling along its axis of symmetry, doubling N.
pub fn bisect_tiles(t: &Tiling) -> Result<Tiling> {
    t.validate()?;
    let mut b = Builder::new();
    let half = Rational::new(1, 2);
    for tile in &t.tiles {
        let apex = (0..3).find(|&i| {
            t.sq_dist(tile[i], tile[(i + 1) % 3]) == t.sq_dist(tile[i], tile[(i + 2) % 3])
        });
        let Some(i) = apex else {
            return Err(Error::InvalidParams("tile is not isosceles".into()));
        };
        let (p, r, s) = (
            &t.points[tile[i]],
            &t.points[tile[(i + 1) % 3]],
            &t.points[tile[(i + 2) % 3]],
        );
        let mid = [
            (&r[0] + &s[0]).mul_rat(&half),
            (&r[1] + &s[1]).mul_rat(&half),
        ];
        b.tile(p.clone(), r.clone(), mid.clone());
        b.tile(p.clone(), mid, s.clone());
    }
    let sq = sorted(t.tile_sq_lengths.to_vec());
    let (leg, base) = if sq[0] == sq[1] {
        (&sq[0], &sq[2])
    } else {
        (&sq[1], &sq[0])
    };
    let quarter = base.mul_rat(&Rational::new(1, 4));
    let tile_sq = [leg - &quarter, quarter, leg.clone()];
    let outer = t.tri(&t.outer).map(|p| p.clone());
    Ok(b.finish(t.field_d, t.gram.clone(), outer, tile_sq))
}

pub const FAMILIES: [&str; 6] = [
    "quadratic",
    "biquadratic",
    "double",
    "pythagorean",
    "hexagonal",
    "bisected",
];

fn int_params(params: &str, want: usize) -> Result<Vec<u32>> {
    let v: std::result::Result<Vec<u32>, _> =
        params.split(',').map(|x| x.trim().parse::<u32>()).collect();
    match v {
        Ok(v) if v.len() == want => Ok(v),
        _ => Err(Error::InvalidParams(format!(
            "expected {want} comma-separated nonnegative integers, got {params:?}"
        ))),
    }
}

/// Builds a family member from its textual parameters: quadratic "a2,b2,c2,n" (squared tile sides),
/// biquadratic "e,f", pythagorean "a,b,c", hexagonal "k", bisected "k", double "FAMILY:PARAMS[:LEG]".
pub fn generate(family: &str, params: &str) -> Result<Tiling> {
    match family {
        "quadratic" => {
            let parts: Vec<&str> = params.split(',').collect();
            if parts.len() != 4 {
                return Err(Error::InvalidParams("quadratic takes a2,b2,c2,n".into()));
            }
            let sq = [
                parts[0].trim().parse()?,
                parts[1].trim().parse()?,
                parts[2].trim().parse()?,
            ];
            gen_quadratic(sq, int_params(parts[3], 1)?[0])
        }
        "biquadratic" => {
            let v = int_params(params, 2)?;
            gen_biquadratic(v[0], v[1])
        }
        "pythagorean" => {
            let v = int_params(params, 3)?;
            gen_pythagorean_mixed(v[0], v[1], v[2])
        }
        "hexagonal" => gen_hexagonal(int_params(params, 1)?[0]),
        "bisected" => bisect_tiles(&gen_hexagonal(int_params(params, 1)?[0])?),
        "double" => {
            let mut parts = params.splitn(3, ':');
            let inner = parts.next().unwrap_or_default();
            let inner_params = parts
                .next()
                .ok_or_else(|| Error::InvalidParams("double takes FAMILY:PARAMS[:LEG]".into()))?;
            let leg = match parts.next() {
                Some(l) => int_params(l, 1)?[0] as usize,
                None => 0,
            };
            gen_double_across(&generate(inner, inner_params)?, leg)
        }
        other => Err(Error::InvalidParams(format!(
            "unknown family {other:?}; expected one of {FAMILIES:?}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub congruent: bool,
    pub disjoint: bool,
    pub covers: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.congruent && self.disjoint && self.covers
    }
}

fn sorted(mut v: Vec<QuadExt>) -> Vec<QuadExt> {
    v.sort_by(cmp);
    v
}

fn congruent(t: &Tiling) -> bool {
    let want = sorted(t.tile_sq_lengths.to_vec());
    t.tiles.iter().all(|tile| {
        let got = sorted(vec![
            t.sq_dist(tile[1], tile[2]),
            t.sq_dist(tile[2], tile[0]),
            t.sq_dist(tile[0], tile[1]),
        ]);
        got == want
    })
}

/// True when some edge line of `a` or `b` has the other triangle in its closed far half-plane.
fn separated(a: [&Point; 3], b: [&Point; 3]) -> bool {
    let splits = |x: [&Point; 3], y: [&Point; 3]| {
        (0..3).any(|i| {
            let (p, r, s) = (x[i], x[(i + 1) % 3], x[(i + 2) % 3]);
            let side = orient(p, r, s).signum();
            y.iter().all(|v| orient(p, r, v).signum() * side <= 0)
        })
    };
    splits(a, b) || splits(b, a)
}

fn disjoint(t: &Tiling) -> bool {
    let n = t.tiles.len();
    (0..n)
        .into_par_iter()
        .all(|i| ((i + 1)..n).all(|j| separated(t.tri(&t.tiles[i]), t.tri(&t.tiles[j]))))
}

/// Canonical line through two distinct points: (a, b, c) with ax + by = c and the first nonzero
/// of (a, b) equal to 1. The flag says whether x (rather than y) parametrizes the line.
fn line_through(p: &Point, r: &Point) -> ([QuadExt; 3], bool) {
    let a = &r[1] - &p[1];
    let b = &p[0] - &r[0];
    let lead = if a.is_zero() { b.clone() } else { a.clone() };
    let a = &a / &lead;
    let b = &b / &lead;
    let c = &(&a * &p[0]) + &(&b * &p[1]);
    let use_x = !b.is_zero();
    ([a, b, c], use_x)
}

fn line_side(l: &[QuadExt; 3], p: &Point) -> i32 {
    (&(&(&l[0] * &p[0]) + &(&l[1] * &p[1])) - &l[2]).signum()
}

struct Segment {
    tile: usize,
    lo: QuadExt,
    hi: QuadExt,
    side: i32,
}

#[derive(Default)]
struct Line {
    segments: Vec<Segment>,
    /// Outer-boundary intervals on this line, with the side the outer triangle lies on.
    outer: Vec<(QuadExt, QuadExt, i32)>,
}

fn ordered(a: QuadExt, b: QuadExt) -> (QuadExt, QuadExt) {
    if cmp(&a, &b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    }
}

fn lines_of(t: &Tiling) -> HashMap<[QuadExt; 3], Line> {
    let mut lines: HashMap<[QuadExt; 3], Line> = HashMap::new();
    let param = |p: &Point, use_x: bool| if use_x { p[0].clone() } else { p[1].clone() };
    for (k, tile) in t.tiles.iter().enumerate() {
        for i in 0..3 {
            let (p, r, s) = (
                &t.points[tile[i]],
                &t.points[tile[(i + 1) % 3]],
                &t.points[tile[(i + 2) % 3]],
            );
            let (key, use_x) = line_through(p, r);
            let side = line_side(&key, s);
            let (lo, hi) = ordered(param(p, use_x), param(r, use_x));
            lines.entry(key).or_default().segments.push(Segment {
                tile: k,
                lo,
                hi,
                side,
            });
        }
    }
    for i in 0..3 {
        let [p, r, s] = [0, 1, 2].map(|o| &t.points[t.outer[(i + o) % 3]]);
        let (key, use_x) = line_through(p, r);
        let side = line_side(&key, s);
        let (lo, hi) = ordered(param(p, use_x), param(r, use_x));
        lines.entry(key).or_default().outer.push((lo, hi, side));
    }
    lines
}

/// Edge accounting along every line: each piece of an interior line is covered once from each
/// side, each piece of the outer boundary once from inside and never from outside. Returns the
/// pairs of tiles sharing a piece of positive length, or `None` if the accounting fails.
fn edge_accounting(t: &Tiling) -> Option<Vec<(usize, usize)>> {
    let mut adjacent = Vec::new();
    for line in lines_of(t).into_values() {
        let mut ends: Vec<QuadExt> = Vec::new();
        for s in &line.segments {
            ends.push(s.lo.clone());
            ends.push(s.hi.clone());
        }
        for (lo, hi, _) in &line.outer {
            ends.push(lo.clone());
            ends.push(hi.clone());
        }
        ends.sort_by(cmp);
        ends.dedup();
        for w in ends.windows(2) {
            let (u, v) = (&w[0], &w[1]);
            let covers = |lo: &QuadExt, hi: &QuadExt| {
                cmp(lo, u) != Ordering::Greater && cmp(v, hi) != Ordering::Greater
            };
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for s in line.segments.iter().filter(|s| covers(&s.lo, &s.hi)) {
                if s.side > 0 {
                    plus.push(s.tile);
                } else {
                    minus.push(s.tile);
                }
            }
            let boundary = line.outer.iter().find(|(lo, hi, _)| covers(lo, hi));
            match boundary {
                Some(&(_, _, inner)) => {
                    let (ins, outs) = if inner > 0 {
                        (&plus, &minus)
                    } else {
                        (&minus, &plus)
                    };
                    if ins.len() != 1 || !outs.is_empty() {
                        return None;
                    }
                }
                None => match (plus.len(), minus.len()) {
                    (0, 0) => {}
                    (1, 1) => adjacent.push((plus[0].min(minus[0]), plus[0].max(minus[0]))),
                    _ => return None,
                },
            }
        }
    }
    adjacent.sort();
    adjacent.dedup();
    Some(adjacent)
}

fn inside_closed(t: &Tiling, p: &Point) -> bool {
    let o = t.tri(&t.outer);
    let sign = orient(o[0], o[1], o[2]).signum();
    (0..3).all(|i| orient(o[i], o[(i + 1) % 3], p).signum() * sign >= 0)
}

fn covers(t: &Tiling) -> bool {
    let total = t.tiles.iter().fold(QuadExt::zero(), |acc, tile| {
        let [a, b, c] = t.tri(tile);
        &acc + &orient(a, b, c).abs()
    });
    let o = t.tri(&t.outer);
    if total != orient(o[0], o[1], o[2]).abs() {
        return false;
    }
    if !t
        .tiles
        .iter()
        .flatten()
        .all(|&i| inside_closed(t, &t.points[i]))
    {
        return false;
    }
    edge_accounting(t).is_some()
}

/// Exact checks that the tiles are congruent, have disjoint interiors, and fill the outer triangle.
pub fn verify(t: &Tiling) -> Result<VerifyReport> {
    t.validate()?;
    Ok(VerifyReport {
        n: t.n(),
        congruent: congruent(t),
        disjoint: disjoint(t),
        covers: covers(t),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

/// A failed hypothesis of the coloring theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypothesis {
    /// (i) no outer vertex carries exactly one tile.
    OneTileAtA,
    /// (ii) an even number of tiles at this boundary vertex.
    OddAtBoundary(usize),
    /// (iii) an odd number of tiles at this interior vertex.
    EvenAtInterior(usize),
    /// (iv) the tile counts at B and C differ in parity.
    ParityAtBAndC,
    /// The tiling fails verification, or colors clash or do not reach every tile.
    Propagation,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::OneTileAtA => {
                write!(f, "hypothesis (i): no vertex of ABC has exactly one tile")
            }
            Hypothesis::OddAtBoundary(p) => {
                write!(f, "hypothesis (ii): even tile count at boundary vertex {p}")
            }
            Hypothesis::EvenAtInterior(p) => {
                write!(f, "hypothesis (iii): odd tile count at interior vertex {p}")
            }
            Hypothesis::ParityAtBAndC => write!(
                f,
                "hypothesis (iv): tile counts at B and C differ in parity"
            ),
            Hypothesis::Propagation => write!(f, "colors cannot be propagated consistently"),
        }
    }
}

pub fn describe(violated: &[Hypothesis]) -> String {
    violated
        .iter()
        .map(|h| h.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringReport {
    /// Black minus white.
    pub m: i64,
    pub colors: Vec<Color>,
    /// +1 when the tile counts at B and C are odd, −1 when even.
    pub sign: i32,
    /// Point indices of A, B, C; A is the outer vertex with a single tile.
    pub abc: [usize; 3],
    /// Whether X ± Y + Z = M(a + b + c) holds exactly. `None` when a squared length is irrational.
    pub identity_holds: Option<bool>,
}

fn on_open_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if !orient(a, b, p).is_zero() {
        return false;
    }
    let between = |x: &QuadExt, y: &QuadExt, z: &QuadExt| {
        (cmp(y, x) == Ordering::Greater && cmp(x, z) == Ordering::Greater)
            || (cmp(z, x) == Ordering::Greater && cmp(x, y) == Ordering::Greater)
    };
    between(&p[0], &a[0], &b[0]) || (a[0] == b[0] && between(&p[1], &a[1], &b[1]))
}

/// Σ coefᵢ·√(xᵢ) == 0 exactly, for rational xᵢ ≥ 0; `None` if some xᵢ is irrational.
fn sqrt_sum_is_zero(terms: &[(i64, &QuadExt)]) -> Option<bool> {
    let mut by_d: BTreeMap<u64, Rational> = BTreeMap::new();
    for (c, x) in terms {
        let root = QuadExt::sqrt_of(x.as_rational()?).ok()?;
        let (d, k) = if root.is_rational() {
            (1, root.rat().clone())
        } else {
            (root.d(), root.coef().clone())
        };
        let e = by_d.entry(d).or_insert_with(Rational::zero);
        *e = &*e + &(k * Rational::from(*c));
    }
    Some(by_d.values().all(|v| v.is_zero()))
}

/// The coloring of the coloring theorem and its number M, or every hypothesis that fails.
pub fn coloring_number(t: &Tiling) -> Result<ColoringReport> {
    let report = verify(t)?;
    if !report.passed() {
        return Err(Error::NotColorable(vec![Hypothesis::Propagation]));
    }
    let mut count = vec![0usize; t.points.len()];
    for &i in t.tiles.iter().flatten() {
        count[i] += 1;
    }
    let mut violated = Vec::new();
    let a_pos = (0..3).find(|&i| count[t.outer[i]] == 1);
    if a_pos.is_none() {
        violated.push(Hypothesis::OneTileAtA);
    }
    let outer_pts = t.tri(&t.outer);
    let mut even_boundary = Vec::new();
    let mut odd_interior = Vec::new();
    for (v, &cnt) in count.iter().enumerate() {
        if cnt == 0 || t.outer.contains(&v) {
            continue;
        }
        let p = &t.points[v];
        let on_outer = (0..3).any(|i| on_open_segment(p, outer_pts[i], outer_pts[(i + 1) % 3]));
        let on_edge = on_outer
            || t.tiles.iter().any(|tile| {
                (0..3).any(|i| on_open_segment(p, &t.points[tile[i]], &t.points[tile[(i + 1) % 3]]))
            });
        if on_edge && cnt % 2 == 0 {
            even_boundary.push(Hypothesis::OddAtBoundary(v));
        }
        if !on_edge && cnt % 2 == 1 {
            odd_interior.push(Hypothesis::EvenAtInterior(v));
        }
    }
    violated.extend(even_boundary);
    violated.extend(odd_interior);
    let abc = a_pos.map(|a| [t.outer[a], t.outer[(a + 1) % 3], t.outer[(a + 2) % 3]]);
    if let Some(abc) = abc {
        if count[abc[1]] % 2 != count[abc[2]] % 2 {
            violated.push(Hypothesis::ParityAtBAndC);
        }
    }
    let Some(abc) = abc.filter(|_| violated.is_empty()) else {
        return Err(Error::NotColorable(violated));
    };
    let adjacent = edge_accounting(t).ok_or(Error::NotColorable(vec![Hypothesis::Propagation]))?;
    let mut nbrs = vec![Vec::new(); t.n()];
    for &(i, j) in &adjacent {
        nbrs[i].push(j);
        nbrs[j].push(i);
    }
    let start = t
        .tiles
        .iter()
        .position(|tile| tile.contains(&abc[0]))
        .expect("A has one tile");
    let mut colors: Vec<Option<Color>> = vec![None; t.n()];
    colors[start] = Some(Color::Black);
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        let flip = if colors[i] == Some(Color::Black) {
            Color::White
        } else {
            Color::Black
        };
        for &j in &nbrs[i] {
            match colors[j] {
                None => {
                    colors[j] = Some(flip);
                    queue.push_back(j);
                }
                Some(c) if c != flip => {
                    return Err(Error::NotColorable(vec![Hypothesis::Propagation]))
                }
                Some(_) => {}
            }
        }
    }
    let colors: Vec<Color> = colors
        .into_iter()
        .collect::<Option<_>>()
        .ok_or(Error::NotColorable(vec![Hypothesis::Propagation]))?;
    let black = colors.iter().filter(|&&c| c == Color::Black).count() as i64;
    let m = black - (colors.len() as i64 - black);
    let sign = if count[abc[1]] % 2 == 1 { 1 } else { -1 };
    let x = t.sq_dist(abc[0], abc[1]);
    let y = t.sq_dist(abc[1], abc[2]);
    let z = t.sq_dist(abc[2], abc[0]);
    let [a2, b2, c2] = &t.tile_sq_lengths;
    let identity_holds = sqrt_sum_is_zero(&[
        (1, &x),
        (sign as i64, &y),
        (1, &z),
        (-m, a2),
        (-m, b2),
        (-m, c2),
    ]);
    Ok(ColoringReport {
        m,
        colors,
        sign,
        abc,
        identity_holds,
    })
}

/// Cartesian coordinates realizing the Gram matrix: e1 along the x axis.
fn embed(t: &Tiling) -> Vec<(f64, f64)> {
    let [g11, g12, g22] = t.gram.clone().map(|g| g.to_f64());
    let e1 = (g11.sqrt(), 0.0);
    let e2 = (g12 / e1.0, (g22 - g12 * g12 / g11).sqrt());
    t.points
        .iter()
        .map(|p| {
            let (x, y) = (p[0].to_f64(), p[1].to_f64());
            (x * e1.0 + y * e2.0, x * e1.1 + y * e2.1)
        })
        .collect()
}

pub fn to_svg(t: &Tiling, colors: Option<&[Color]>) -> String {
    let pts = embed(t);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let size = 480.0;
    let scale = size / (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let map = |(x, y): (f64, f64)| ((x - x0) * scale + 10.0, (y1 - y) * scale + 10.0);
    let w = (x1 - x0) * scale + 20.0;
    let h = (y1 - y0) * scale + 20.0;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w:.2} {h:.2}\" width=\"{w:.0}\" height=\"{h:.0}\">\n"
    );
    for (k, tile) in t.tiles.iter().enumerate() {
        let fill = match colors.and_then(|c| c.get(k)) {
            Some(Color::Black) => "#333",
            Some(Color::White) => "#fff",
            None => "#e8eef7",
        };
        let coords: Vec<String> = tile
            .iter()
            .map(|&i| {
                let (x, y) = map(pts[i]);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        out.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"{fill}\" stroke=\"#000\" stroke-width=\"0.8\"/>\n",
            coords.join(" ")
        ));
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(t: &Tiling, path: &Path, colors: Option<&[Color]>) -> Result<()> {
    if path.as_os_str().is_empty() {
        return Err(Error::Io("empty output path".into()));
    }
    std::fs::write(path, to_svg(t, colors))?;
    Ok(())
}
