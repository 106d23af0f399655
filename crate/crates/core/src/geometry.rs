//! Exact planar geometry over the cyclotomic field.
//!
//! Points are field elements `x + iy`. A line is the zero set of
//! `w ↦ Im(u·w + b)` for a nonzero `u`; its two open sides are where that
//! quantity is positive or negative. All predicates go through the exact
//! sign oracle.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::cyclo::{CycloNum, Field, Sign};
use crate::dynamics::{AffineMap, Symbol};
use crate::error::{Error, Result};

/// `{w : Im(u·w + b) = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactLine {
    pub u: CycloNum,
    pub b: CycloNum,
}

impl ExactLine {
    pub fn new(u: CycloNum, b: CycloNum) -> Result<ExactLine> {
        if u.is_zero() {
            return Err(Error::Domain("line with zero normal".into()));
        }
        Ok(ExactLine { u, b })
    }

    /// The line through `p` and `q`; the `Plus` side lies to the left of `p → q`.
    pub fn through(p: &CycloNum, q: &CycloNum) -> Result<ExactLine> {
        let dir = q - p;
        let u = dir.conj();
        let b = -(&u * p);
        ExactLine::new(u, b)
    }

    /// `Im(u·w + b)` as a real field element.
    pub fn value(&self, w: &CycloNum) -> CycloNum {
        (&(&self.u * w) + &self.b).imag_part()
    }

    pub fn side_of(&self, w: &CycloNum) -> Sign {
        (&(&self.u * w) + &self.b).sign_im()
    }

    pub fn contains(&self, w: &CycloNum) -> bool {
        self.side_of(w) == Sign::Zero
    }

    /// A vector along the line.
    pub fn direction(&self) -> CycloNum {
        self.u.conj()
    }

    fn shadow(&self) -> ((f64, f64), (f64, f64)) {
        (self.u.to_f64_pair(), self.b.to_f64_pair())
    }
}

/// The open region `{w : side · Im(u·w + b) > 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub line: ExactLine,
    pub side: Symbol,
}

impl HalfPlane {
    /// Sign of `side · Im(u·w + b)`; `Positive` means strictly inside.
    pub fn classify(&self, w: &CycloNum) -> Sign {
        let s = self.line.side_of(w);
        match self.side {
            Symbol::Plus => s,
            Symbol::Minus => s.flip(),
        }
    }

    pub fn strictly_contains(&self, w: &CycloNum) -> bool {
        self.classify(w) == Sign::Positive
    }

    fn signed_value(&self, w: &CycloNum) -> CycloNum {
        let v = self.line.value(w);
        match self.side {
            Symbol::Plus => v,
            Symbol::Minus => -v,
        }
    }
}

/// `{w : s · Im(G(w)) > 0}`.
pub fn halfplane_from_constraint(g: &AffineMap, s: Symbol) -> HalfPlane {
    HalfPlane { line: ExactLine { u: g.linear_part(), b: g.offset.clone() }, side: s }
}

/// Outcome of intersecting two lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineMeet {
    Point(CycloNum),
    Parallel,
}

/// Solves `u₁w − ū₁w̄ = b̄₁ − b₁`, `u₂w − ū₂w̄ = b̄₂ − b₂` for `w`.
pub fn line_intersection(l1: &ExactLine, l2: &ExactLine) -> LineMeet {
    let (u1c, u2c) = (l1.u.conj(), l2.u.conj());
    let det = &(&u1c * &l2.u) - &(&l1.u * &u2c);
    if det.is_zero() {
        return LineMeet::Parallel;
    }
    let c1 = &l1.b.conj() - &l1.b;
    let c2 = &l2.b.conj() - &l2.b;
    let num = &(&u1c * &c2) - &(&u2c * &c1);
    LineMeet::Point(num.div(&det).expect("nonzero determinant"))
}

/// `Im(conj(a)·b)`: the 2D cross product `a × b`.
pub fn cross_sign(a: &CycloNum, b: &CycloNum) -> Sign {
    (&a.conj() * b).sign_im()
}

/// `Re(conj(a)·b)`: the dot product, as a real element.
pub fn dot(a: &CycloNum, b: &CycloNum) -> CycloNum {
    (&a.conj() * b).real_part()
}

/// Exact lexicographic comparison by `(Re, Im)`.
pub fn cmp_points(a: &CycloNum, b: &CycloNum) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    let d = a - b;
    match d.sign_re() {
        Sign::Negative => Less,
        Sign::Positive => Greater,
        Sign::Zero => match d.sign_im() {
            Sign::Negative => Less,
            Sign::Positive => Greater,
            Sign::Zero => Equal,
        },
    }
}

/// Where a point sits relative to a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Interior,
    Boundary,
    Exterior,
}

/// A strictly convex polygon, vertices counterclockwise, starting at the
/// lexicographically least vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<CycloNum>,
}

impl ConvexPolygon {
    /// Normalizes a convex vertex cycle: drops repeated and collinear vertices,
    /// orients counterclockwise and rotates to the least vertex. `None` when
    /// fewer than three vertices remain.
    pub fn from_vertices(mut vs: Vec<CycloNum>) -> Option<ConvexPolygon> {
        vs.dedup();
        while vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        let mut changed = true;
        while changed && vs.len() >= 3 {
            changed = false;
            let n = vs.len();
            for i in 0..n {
                let (a, b, c) = (&vs[(i + n - 1) % n], &vs[i], &vs[(i + 1) % n]);
                if a == b || cross_sign(&(b - a), &(c - b)) == Sign::Zero {
                    vs.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if vs.len() < 3 {
            return None;
        }
        if cross_sign(&(&vs[1] - &vs[0]), &(&vs[2] - &vs[1])) == Sign::Negative {
            vs.reverse();
        }
        let start = (0..vs.len())
            .min_by(|&i, &j| cmp_points(&vs[i], &vs[j]))
            .expect("nonempty");
        vs.rotate_left(start);
        Some(ConvexPolygon { vertices: vs })
    }

    pub fn vertices(&self) -> &[CycloNum] {
        &self.vertices
    }

    pub fn side_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (CycloNum, CycloNum)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
    }

    pub fn edge_vectors(&self) -> Vec<CycloNum> {
        self.edges().map(|(a, b)| &b - &a).collect()
    }

    pub fn contains(&self, z: &CycloNum) -> Containment {
        let mut on_edge = false;
        for (a, b) in self.edges() {
            match cross_sign(&(&b - &a), &(z - &a)) {
                Sign::Negative => return Containment::Exterior,
                Sign::Zero => on_edge = true,
                Sign::Positive => {}
            }
        }
        if on_edge {
            Containment::Boundary
        } else {
            Containment::Interior
        }
    }

    /// Equal sides and equal angles, decided exactly.
    pub fn is_regular(&self) -> bool {
        let es = self.edge_vectors();
        let n = es.len();
        let len0 = es[0].norm_sq();
        if es.iter().any(|e| e.norm_sq() != len0) {
            return false;
        }
        // equal side lengths: equal angles ⇔ equal consecutive dot products
        let dot0 = dot(&es[0], &es[1]);
        (0..n).all(|i| dot(&es[i], &es[(i + 1) % n]) == dot0)
    }

    /// Mean of the vertices; strictly interior.
    pub fn vertex_centroid(&self) -> CycloNum {
        let field = self.vertices[0].field();
        let sum = self.vertices.iter().fold(field.zero(), |acc, v| &acc + v);
        sum.scale_rational(&BigRational::new(1.into(), BigInt::from(self.vertices.len())))
    }

    /// Image under `w ↦ g(w)`; orientation is preserved by rotations.
    pub fn map(&self, f: impl Fn(&CycloNum) -> CycloNum) -> ConvexPolygon {
        ConvexPolygon::from_vertices(self.vertices.iter().map(f).collect()).expect("isometric image")
    }

    pub fn shadow(&self) -> Vec<(f64, f64)> {
        self.vertices.iter().map(CycloNum::to_f64_pair).collect()
    }
}

/// Outcome of a half-plane intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Polygon(ConvexPolygon),
    Empty,
    Unbounded,
}

/// The intersection clipped to `[-r, r]²` in floating point. Used only to
/// choose the starting box and to order the exact cuts.
fn float_polygon(planes: &[HalfPlane], r: f64) -> Option<Vec<(f64, f64)>> {
    let mut poly = vec![(-r, -r), (r, -r), (r, r), (-r, r)];
    for h in planes {
        let ((ur, ui), (_, bi)) = h.line.shadow();
        let s = if h.side == Symbol::Plus { 1.0 } else { -1.0 };
        let f = |(x, y): (f64, f64)| s * (ui * x + ur * y + bi);
        let mut next = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            let (fa, fb) = (f(a), f(b));
            if fa >= 0.0 {
                next.push(a);
            }
            if (fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0) {
                let t = fa / (fa - fb);
                next.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            }
        }
        poly = next;
        if poly.len() < 3 {
            return None;
        }
    }
    Some(poly)
}

fn square(field: &Field, r: i64) -> Vec<CycloNum> {
    let pt = |x: i64, y: i64| {
        field.embed_rational_point(&BigRational::from_integer(x.into()), &BigRational::from_integer(y.into()))
    };
    vec![pt(-r, -r), pt(r, -r), pt(r, r), pt(-r, r)]
}

type Enclosed = (CycloNum, Option<(f64, f64, f64)>);

/// Side of `w` relative to `h`, decided in `f64` when the rounding bound
/// separates the value from zero.
fn classify_fast(h: &HalfPlane, hf: Option<[f64; 5]>, w: &Enclosed) -> Sign {
    if let (Some([ur, ui, eu, bi, eb]), Some((x, y, ew))) = (hf, w.1) {
        let v = ui * x + ur * y + bi;
        let err = ui.abs() * ew
            + ur.abs() * ew
            + eu * (x.abs() + y.abs() + 2.0 * ew)
            + eb
            + 8.0 * f64::EPSILON * ((ui * x).abs() + (ur * y).abs() + bi.abs());
        if v.is_finite() && err.is_finite() && v.abs() > 2.0 * err {
            let s = if v > 0.0 { Sign::Positive } else { Sign::Negative };
            return if h.side == Symbol::Plus { s } else { s.flip() };
        }
    }
    h.classify(&w.0)
}

fn line_enclosure(h: &HalfPlane) -> Option<[f64; 5]> {
    let (ur, ui, eu) = h.line.u.enclosure()?;
    let (_, bi, eb) = h.line.b.enclosure()?;
    Some([ur, ui, eu, bi, eb])
}

fn enclose(v: CycloNum) -> Enclosed {
    let e = v.enclosure();
    (v, e)
}

/// Cuts a closed convex vertex cycle by the closure of `h`. Returns the empty
/// vector when no interior remains.
fn cut(poly: Vec<Enclosed>, h: &HalfPlane) -> Vec<Enclosed> {
    let hf = line_enclosure(h);
    let signs: Vec<Sign> = poly.iter().map(|v| classify_fast(h, hf, v)).collect();
    if signs.iter().all(|&s| s != Sign::Negative) {
        return poly;
    }
    if signs.iter().all(|&s| s != Sign::Positive) {
        return Vec::new();
    }
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        if signs[i] != Sign::Negative {
            out.push(poly[i].clone());
        }
        let crossing = matches!(
            (signs[i], signs[j]),
            (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive)
        );
        if crossing {
            let (a, b) = (&poly[i].0, &poly[j].0);
            let fa = h.signed_value(a);
            let fb = h.signed_value(b);
            let t = fa.div(&(&fa - &fb)).expect("values of opposite sign");
            out.push(enclose(a + &(&(b - a) * &t)));
        }
    }
    out
}

/// Exact intersection of open half-planes.
pub fn intersect_halfplanes(constraints: &[HalfPlane]) -> Region {
    assert!(!constraints.is_empty(), "intersect_halfplanes needs at least one constraint");
    let field = constraints[0].line.u.field().clone();
    let mut seen = HashSet::new();
    let planes: Vec<HalfPlane> = constraints.iter().filter(|h| seen.insert((*h).clone())).cloned().collect();

    // Recession cone: bounded iff no direction along a constraint line stays
    // inside every closed half-plane.
    let unbounded = || {
        let mut dirs = HashSet::new();
        for h in &planes {
            let d = h.line.direction();
            dirs.insert(-d.clone());
            dirs.insert(d);
        }
        dirs.iter().any(|dir| {
            planes.iter().all(|g| {
                let s = (&g.line.u * dir).sign_im();
                let s = if g.side == Symbol::Plus { s } else { s.flip() };
                s != Sign::Negative
            })
        })
    };

    let float_poly = float_polygon(&planes, 1e9);
    let mut radius = match &float_poly {
        Some(p) => {
            let m = p.iter().fold(1.0f64, |m, &(x, y)| m.max(x.abs()).max(y.abs()));
            (2.0 * m + 4.0).ceil().min(1e15) as i64
        }
        None => 4,
    };

    let mut ordered = planes.clone();
    if let Some(p) = &float_poly {
        let n = p.len() as f64;
        let cx = p.iter().map(|v| v.0).sum::<f64>() / n;
        let cy = p.iter().map(|v| v.1).sum::<f64>() / n;
        let dist = |h: &HalfPlane| {
            let ((ur, ui), (_, bi)) = h.line.shadow();
            let s = if h.side == Symbol::Plus { 1.0 } else { -1.0 };
            s * (ui * cx + ur * cy + bi) / ur.hypot(ui)
        };
        let mut keyed: Vec<(f64, HalfPlane)> = ordered.into_iter().map(|h| (dist(&h), h)).collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
        ordered = keyed.into_iter().map(|k| k.1).collect();
    }

    loop {
        let mut poly: Vec<Enclosed> = square(&field, radius).into_iter().map(enclose).collect();
        for h in &ordered {
            poly = cut(poly, h);
            if poly.is_empty() {
                return Region::Empty;
            }
        }
        let Some(p) = ConvexPolygon::from_vertices(poly.into_iter().map(|v| v.0).collect()) else {
            return Region::Empty;
        };
        let r = BigRational::from_integer(radius.into());
        let touches = p.vertices().iter().any(|v| {
            let re = v.real_part().as_rational();
            let im = v.imag_part().as_rational();
            [re, im].iter().flatten().any(|c| c.abs() == r)
        });
        if !touches {
            return Region::Polygon(p);
        }
        if unbounded() {
            return Region::Unbounded;
        }
        // the float bound was too small; widen and redo exactly
        radius = radius.saturating_mul(4);
    }
}

/// An axis-aligned closed rectangle with rational corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBox {
    pub x0: BigRational,
    pub y0: BigRational,
    pub x1: BigRational,
    pub y1: BigRational,
}

impl RationalBox {
    pub fn new(x0: BigRational, y0: BigRational, x1: BigRational, y1: BigRational) -> Result<RationalBox> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::Parameter("degenerate box".into()));
        }
        Ok(RationalBox { x0, y0, x1, y1 })
    }

    pub fn from_ints(x0: i64, y0: i64, x1: i64, y1: i64) -> Result<RationalBox> {
        let r = |v: i64| BigRational::from_integer(v.into());
        RationalBox::new(r(x0), r(y0), r(x1), r(y1))
    }

    /// The centered square `[-r, r]²`.
    pub fn square(r: BigRational) -> RationalBox {
        RationalBox { x0: -r.clone(), y0: -r.clone(), x1: r.clone(), y1: r }
    }

    /// Smallest integer `R` with the box inside the disk of radius `R` about 0.
    pub fn enclosing_radius(&self) -> BigInt {
        let mx = self.x0.abs().max(self.x1.abs());
        let my = self.y0.abs().max(self.y1.abs());
        let r2 = &mx * &mx + &my * &my;
        let mut r = BigInt::from(r2.to_f64().unwrap_or(f64::MAX).sqrt().floor() as i64);
        while BigRational::from_integer(&r * &r) < r2 {
            r += 1;
        }
        r
    }

    pub fn contains_point(&self, z: &CycloNum) -> bool {
        let f = z.field();
        let re = z.real_part();
        let im = z.imag_part();
        let ge = |a: &CycloNum, b: &BigRational| (a - &f.from_rational(b)).sign_re() != Sign::Negative;
        let le = |a: &CycloNum, b: &BigRational| (a - &f.from_rational(b)).sign_re() != Sign::Positive;
        ge(&re, &self.x0) && le(&re, &self.x1) && ge(&im, &self.y0) && le(&im, &self.y1)
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [&self.x0, &self.y0, &self.x1, &self.y1].map(|v| v.to_f64().unwrap_or(f64::NAN))
    }
}

/// A closed segment tagged with its pullback/push-forward depth.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactSegment {
    pub a: CycloNum,
    pub b: CycloNum,
    pub depth: usize,
}

impl ExactSegment {
    pub fn midpoint(&self) -> CycloNum {
        (&self.a + &self.b).scale_rational(&BigRational::new(1.into(), 2.into()))
    }

    pub fn point_at(&self, t: &BigRational) -> CycloNum {
        &self.a + &(&self.b - &self.a).scale_rational(t)
    }

    pub fn contains_point(&self, p: &CycloNum) -> bool {
        let d = &self.b - &self.a;
        if cross_sign(&d, &(p - &self.a)) != Sign::Zero {
            return false;
        }
        dot(&d, &(p - &self.a)).sign_re() != Sign::Negative && dot(&-&d, &(p - &self.b)).sign_re() != Sign::Negative
    }

    /// Direction class: the `j ∈ [0, q)` with the segment parallel to `ζ_q^j`,
    /// identified with `j + q/2` when `q` is even.
    pub fn slope_class(&self) -> Option<u32> {
        slope_class(&(&self.b - &self.a))
    }
}

/// The index `j` with `v` parallel to `ζ_q^j` (mod the ± identification).
pub fn slope_class(v: &CycloNum) -> Option<u32> {
    let field = v.field();
    let q = field.q();
    let m = field.conductor() as i64;
    let classes = if q.is_multiple_of(2) { q / 2 } else { q };
    (0..classes).find(|&j| {
        let dir = field.zeta_pow(-(j as i64) * (m / q as i64));
        (v * &dir).sign_im() == Sign::Zero
    })
}

/// Exact intersection of a segment with a closed box. Touching in a single
/// point counts as no intersection.
pub fn clip_segment_to_box(seg: &ExactSegment, bx: &RationalBox) -> Option<ExactSegment> {
    let field = seg.a.field();
    let (ain, bin) = (bx.contains_point(&seg.a), bx.contains_point(&seg.b));
    if seg.a == seg.b {
        return None;
    }
    if ain && bin {
        return Some(seg.clone());
    }
    let d = &seg.b - &seg.a;
    let (ar, ai) = (seg.a.real_part(), seg.a.imag_part());
    let (dr, di) = (d.real_part(), d.imag_part());
    // constraints g0 + g1·t ≥ 0
    let cons = [
        (&ar - &field.from_rational(&bx.x0), dr.clone()),
        (&field.from_rational(&bx.x1) - &ar, -&dr),
        (&ai - &field.from_rational(&bx.y0), di.clone()),
        (&field.from_rational(&bx.y1) - &ai, -&di),
    ];
    let mut lo = field.zero();
    let mut hi = field.one();
    for (g0, g1) in cons {
        match g1.sign_re() {
            Sign::Zero => {
                if g0.sign_re() == Sign::Negative {
                    return None;
                }
            }
            s => {
                let t = (-g0).div(&g1).expect("nonzero");
                if s == Sign::Positive {
                    if (&t - &lo).sign_re() == Sign::Positive {
                        lo = t;
                    }
                } else if (&t - &hi).sign_re() == Sign::Negative {
                    hi = t;
                }
            }
        }
    }
    if (&hi - &lo).sign_re() != Sign::Positive {
        return None;
    }
    let a = if ain { seg.a.clone() } else { &seg.a + &(&d * &lo) };
    let b = if bin { seg.b.clone() } else { &seg.a + &(&d * &hi) };
    Some(ExactSegment { a, b, depth: seg.depth })
}

/// Exact intersection of a segment with a closed convex polygon. Touching in a
/// single point counts as no intersection.
pub fn clip_segment_to_polygon(seg: &ExactSegment, poly: &ConvexPolygon) -> Option<ExactSegment> {
    let field = seg.a.field();
    let d = &seg.b - &seg.a;
    let mut lo = field.zero();
    let mut hi = field.one();
    for (p, q) in poly.edges() {
        // inside: Im(conj(e)·(z − p)) ≥ 0, i.e. g0 + g1·t ≥ 0
        let ec = (&q - &p).conj();
        let g0 = (&ec * &(&seg.a - &p)).imag_part();
        let g1 = (&ec * &d).imag_part();
        match g1.sign_re() {
            Sign::Zero => {
                if g0.sign_re() == Sign::Negative {
                    return None;
                }
            }
            s => {
                let t = (-g0).div(&g1).expect("nonzero");
                if s == Sign::Positive {
                    if (&t - &lo).sign_re() == Sign::Positive {
                        lo = t;
                    }
                } else if (&t - &hi).sign_re() == Sign::Negative {
                    hi = t;
                }
            }
        }
    }
    if (&hi - &lo).sign_re() != Sign::Positive {
        return None;
    }
    let a = if lo.is_zero() { seg.a.clone() } else { &seg.a + &(&d * &lo) };
    let b = if hi == field.one() { seg.b.clone() } else { &seg.a + &(&d * &hi) };
    Some(ExactSegment { a, b, depth: seg.depth })
}

/// Exact coefficients as strings plus a numeric shadow.
pub fn point_json(z: &CycloNum) -> serde_json::Value {
    let (x, y) = z.to_f64_pair();
    serde_json::json!({
        "coeffs": z.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "approx": [x, y],
    })
}

impl ConvexPolygon {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "vertices": self.vertices.iter().map(point_json).collect::<Vec<_>>() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::make_field;
    use crate::dynamics::PiecewiseRotation;

    fn pt(f: &Field, x: i64, y: i64) -> CycloNum {
        f.embed_rational_point(&BigRational::from_integer(x.into()), &BigRational::from_integer(y.into()))
    }

    fn upper(f: &Field) -> HalfPlane {
        halfplane_from_constraint(&AffineMap::identity(f), Symbol::Plus)
    }

    #[test]
    fn identity_constraints_are_half_planes() {
        let f = make_field(4, 5).unwrap();
        let up = upper(&f);
        let down = halfplane_from_constraint(&AffineMap::identity(&f), Symbol::Minus);
        assert!(up.strictly_contains(&pt(&f, 0, 1)));
        assert!(!up.strictly_contains(&pt(&f, 5, 0)));
        assert!(down.strictly_contains(&pt(&f, 3, -1)));
        assert_eq!(intersect_halfplanes(&[up.clone(), down]), Region::Empty);
        assert_eq!(intersect_halfplanes(&[up]), Region::Unbounded);
    }

    #[test]
    fn one_step_preimage_matches_dynamics() {
        let f = make_field(4, 5).unwrap();
        let map = PiecewiseRotation::new(f.clone());
        let g = map.affine_along(&[Symbol::Plus]);
        let h = halfplane_from_constraint(&g, Symbol::Plus);
        for x in -4..=4 {
            for y in 1..=4 {
                let z = pt(&f, x, y);
                let img = map.step(&z);
                assert_eq!(h.classify(&z), img.sign_im(), "at ({x},{y})");
            }
        }
    }

    #[test]
    fn intersections() {
        let f = make_field(4, 5).unwrap();
        let real_axis = ExactLine::new(f.one(), f.zero()).unwrap();
        // line through 0 at angle 2π/5: direction ζ5 = ζ20^4, Im(conj(ζ5)·w) = 0
        let slanted = ExactLine::new(f.zeta_pow(-4), f.zero()).unwrap();
        assert_eq!(line_intersection(&real_axis, &slanted), LineMeet::Point(f.zero()));
        assert_eq!(line_intersection(&real_axis, &real_axis), LineMeet::Parallel);
        let g = make_field(11, 12).unwrap();
        let axis = ExactLine::new(g.one(), g.zero()).unwrap();
        let vert = ExactLine::through(&pt(&g, 3, 0), &pt(&g, 3, 5)).unwrap();
        assert_eq!(line_intersection(&axis, &vert), LineMeet::Point(g.from_integer(3)));
    }

    #[test]
    fn triangle_from_three_lines() {
        let f = make_field(11, 12).unwrap();
        let (a, b, c) = (pt(&f, 0, 0), pt(&f, 4, 0), pt(&f, 0, 3));
        let hs: Vec<HalfPlane> = [(&a, &b), (&b, &c), (&c, &a)]
            .iter()
            .map(|(p, q)| HalfPlane { line: ExactLine::through(p, q).unwrap(), side: Symbol::Plus })
            .collect();
        let Region::Polygon(p) = intersect_halfplanes(&hs) else { panic!("expected a triangle") };
        assert_eq!(p.vertices(), &[a.clone(), b.clone(), c.clone()]);
        assert!(!p.is_regular());
        assert_eq!(p.contains(&pt(&f, 1, 1)), Containment::Interior);
        assert_eq!(p.contains(&pt(&f, 2, 0)), Containment::Boundary);
        assert_eq!(p.contains(&pt(&f, 5, 5)), Containment::Exterior);
        let mut rev = hs.clone();
        rev.reverse();
        assert_eq!(intersect_halfplanes(&rev), Region::Polygon(p));
    }

    #[test]
    fn clipping() {
        let f = make_field(4, 5).unwrap();
        let bx = RationalBox::from_ints(-3, -3, 3, 3).unwrap();
        let seg = ExactSegment { a: pt(&f, -10, 0), b: pt(&f, 10, 0), depth: 0 };
        let c = clip_segment_to_box(&seg, &bx).unwrap();
        assert_eq!((c.a, c.b), (pt(&f, -3, 0), pt(&f, 3, 0)));
        let inside = ExactSegment { a: pt(&f, -1, 1), b: pt(&f, 2, -2), depth: 3 };
        assert_eq!(clip_segment_to_box(&inside, &bx), Some(inside.clone()));
        let corner = ExactSegment { a: pt(&f, 3, 3), b: pt(&f, 5, 1), depth: 0 };
        assert_eq!(clip_segment_to_box(&corner, &bx), None);
        let outside = ExactSegment { a: pt(&f, 4, 4), b: pt(&f, 5, 9), depth: 0 };
        assert_eq!(clip_segment_to_box(&outside, &bx), None);
    }

    #[test]
    fn enclosing_radius_is_tight() {
        let bx = RationalBox::from_ints(-3, -4, 3, 4).unwrap();
        assert_eq!(bx.enclosing_radius(), BigInt::from(5));
        let bx = RationalBox::from_ints(-1, 0, 6, 3).unwrap();
        assert_eq!(bx.enclosing_radius(), BigInt::from(7));
    }
}
