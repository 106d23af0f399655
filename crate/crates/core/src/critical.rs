//! Exact segment families of the critical set `∪ F^{-j}(R)` and of the forward
//! set `∪ F^{j}(R)`, clipped to a box.
//!
//! Layer `j` of a depth-`D` bundle is clipped to the centered square of
//! half-width `R₀ + (D − j)`, where the user box lies in the disk of radius
//! `R₀`. Since `|F^{±1}(z)| ≤ |z| + 1`, every depth-`D` point inside the box
//! comes from (or goes through) segments kept at every earlier layer.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::cyclo::{CycloNum, Field, Sign};
use crate::dynamics::PiecewiseRotation;
use crate::geometry::{clip_segment_to_box, ExactSegment, RationalBox};

pub const DEFAULT_SEGMENT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Pullback,
    Forward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Directions {
    Pullback,
    Forward,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalLayer {
    pub depth: usize,
    pub direction: Direction,
    pub segments: Vec<ExactSegment>,
}

/// Emitted when the segment cap stops a bundle early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub direction: Direction,
    pub cap: usize,
    /// Last depth whose layer is complete.
    pub complete_depth: usize,
    pub dropped: usize,
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub layers: Vec<CriticalLayer>,
    pub truncations: Vec<Truncation>,
}

impl Bundle {
    pub fn layer(&self, direction: Direction, depth: usize) -> Option<&CriticalLayer> {
        self.layers.iter().find(|l| l.direction == direction && l.depth == depth)
    }

    pub fn segment_count(&self) -> usize {
        self.layers.iter().map(|l| l.segments.len()).sum()
    }

    /// One segment per line: direction, depth, exact endpoints, numeric shadows.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for l in &self.layers {
            for seg in &l.segments {
                let (ax, ay) = seg.a.to_f64_pair();
                let (bx, by) = seg.b.to_f64_pair();
                let coeffs = |z: &CycloNum| {
                    z.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                };
                let dir = if l.direction == Direction::Pullback { "pull" } else { "push" };
                let _ = writeln!(
                    s,
                    "{dir}\t{}\t[{}]\t[{}]\t{ax:.12}\t{ay:.12}\t{bx:.12}\t{by:.12}",
                    l.depth,
                    coeffs(&seg.a),
                    coeffs(&seg.b)
                );
            }
        }
        s
    }
}

/// Where `Im(u·z)` changes sign along `a → b`, with the sign at each end.
fn split(seg: &ExactSegment, u: &CycloNum) -> Vec<(ExactSegment, bool)> {
    let fa = (u * &seg.a).imag_part();
    let fb = (u * &seg.b).imag_part();
    let (sa, sb) = (fa.sign_re(), fb.sign_re());
    let upper = |s: Sign| s != Sign::Negative;
    match (sa, sb) {
        (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive) => {
            let t = fa.div(&(&fa - &fb)).expect("opposite signs");
            let c = &seg.a + &(&(&seg.b - &seg.a) * &t);
            vec![
                (ExactSegment { a: seg.a.clone(), b: c.clone(), depth: seg.depth }, upper(sa)),
                (ExactSegment { a: c, b: seg.b.clone(), depth: seg.depth }, upper(sb)),
            ]
        }
        _ => {
            // one closed side; a segment on the line itself takes the upper branch
            let up = sa == Sign::Positive || sb == Sign::Positive || (sa == Sign::Zero && sb == Sign::Zero);
            vec![(seg.clone(), up)]
        }
    }
}

fn square_box(r: &BigInt) -> RationalBox {
    RationalBox::square(BigRational::from_integer(r.clone()))
}

/// Depth-0 layer: `R` clipped to the square of half-width `half`.
fn base_layer(field: &Field, half: &BigInt, direction: Direction) -> CriticalLayer {
    let h = field.from_rational(&BigRational::from_integer(half.clone()));
    CriticalLayer { depth: 0, direction, segments: vec![ExactSegment { a: -h.clone(), b: h, depth: 0 }] }
}

fn dedup(segs: Vec<ExactSegment>) -> Vec<ExactSegment> {
    let mut seen = HashSet::new();
    segs.into_iter()
        .filter(|s| {
            let key = if crate::geometry::cmp_points(&s.a, &s.b).is_le() {
                (s.a.clone(), s.b.clone())
            } else {
                (s.b.clone(), s.a.clone())
            };
            seen.insert(key)
        })
        .collect()
}

fn next_layer(
    map: &PiecewiseRotation,
    prev: &CriticalLayer,
    clip: &RationalBox,
) -> CriticalLayer {
    let field = map.field();
    let depth = prev.depth + 1;
    let one = field.one();
    let segs: Vec<ExactSegment> = prev
        .segments
        .par_iter()
        .flat_map_iter(|seg| {
            let pieces = match prev.direction {
                // F^{-1}(z) = z/λ + H(z/λ): split where Im(z/λ) changes sign
                Direction::Pullback => split(seg, &field.lambda_pow(-1)),
                Direction::Forward => split(seg, &one),
            };
            pieces
                .into_iter()
                .filter_map(|(p, up)| {
                    let img = |z: &CycloNum| match prev.direction {
                        Direction::Pullback => {
                            let w = z.mul_lambda_pow(-1);
                            if up { &w + &one } else { &w - &one }
                        }
                        Direction::Forward => {
                            if up { (z - &one).mul_lambda_pow(1) } else { (z + &one).mul_lambda_pow(1) }
                        }
                    };
                    let s = ExactSegment { a: img(&p.a), b: img(&p.b), depth };
                    clip_segment_to_box(&s, clip)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    CriticalLayer { depth, direction: prev.direction, segments: dedup(segs) }
}

/// The half-width used for layer `j` of a depth-`total` bundle.
pub fn inflated_half_width(target: &RationalBox, total: usize, j: usize) -> BigInt {
    target.enclosing_radius() + BigInt::from(total - j)
}

/// Layer `prev.depth + 1` of the preimage family.
pub fn pullback_layer(
    map: &PiecewiseRotation,
    prev: &CriticalLayer,
    target: &RationalBox,
    total_depth: usize,
) -> CriticalLayer {
    assert_eq!(prev.direction, Direction::Pullback);
    assert!(prev.depth < total_depth);
    next_layer(map, prev, &square_box(&inflated_half_width(target, total_depth, prev.depth + 1)))
}

/// Layer `prev.depth + 1` of the forward family.
pub fn forward_layer(
    map: &PiecewiseRotation,
    prev: &CriticalLayer,
    target: &RationalBox,
    total_depth: usize,
) -> CriticalLayer {
    assert_eq!(prev.direction, Direction::Forward);
    assert!(prev.depth < total_depth);
    next_layer(map, prev, &square_box(&inflated_half_width(target, total_depth, prev.depth + 1)))
}

fn family(
    map: &PiecewiseRotation,
    total: usize,
    target: &RationalBox,
    direction: Direction,
    cap: usize,
) -> (Vec<CriticalLayer>, Option<Truncation>) {
    let mut layers = vec![base_layer(map.field(), &inflated_half_width(target, total, 0), direction)];
    let mut count = 1;
    let mut truncation = None;
    for j in 0..total {
        let mut next = match direction {
            Direction::Pullback => pullback_layer(map, &layers[j], target, total),
            Direction::Forward => forward_layer(map, &layers[j], target, total),
        };
        if count + next.segments.len() > cap {
            let keep = cap - count;
            truncation = Some(Truncation {
                direction,
                cap,
                complete_depth: j,
                dropped: next.segments.len() - keep,
            });
            next.segments.truncate(keep);
            layers.push(next);
            break;
        }
        count += next.segments.len();
        layers.push(next);
    }
    (layers, truncation)
}

/// Layers `0..=total_depth`, each re-clipped to `target`.
pub fn critical_bundle(
    map: &PiecewiseRotation,
    total_depth: usize,
    target: &RationalBox,
    directions: Directions,
    cap: usize,
) -> Bundle {
    let dirs: &[Direction] = match directions {
        Directions::Pullback => &[Direction::Pullback],
        Directions::Forward => &[Direction::Forward],
        Directions::Both => &[Direction::Pullback, Direction::Forward],
    };
    let mut layers = Vec::new();
    let mut truncations = Vec::new();
    for &d in dirs {
        let (ls, t) = family(map, total_depth, target, d, cap);
        truncations.extend(t);
        for l in ls {
            let segments = l.segments.par_iter().filter_map(|s| clip_segment_to_box(s, target)).collect();
            layers.push(CriticalLayer { depth: l.depth, direction: l.direction, segments });
        }
    }
    Bundle { layers, truncations }
}

/// Pullback layers `0..windows.len()` where layer `j` is clipped to
/// `windows[j]` instead of a centered square. Sound for any point whose
/// forward orbit stays strictly inside the windows in reverse order.
pub fn pullback_in_windows(map: &PiecewiseRotation, windows: &[RationalBox]) -> Vec<CriticalLayer> {
    let field = map.field();
    let w0 = &windows[0];
    let span = w0.enclosing_radius() + 1;
    let axis = base_layer(field, &span, Direction::Pullback);
    let segments = axis.segments.iter().filter_map(|s| clip_segment_to_box(s, w0)).collect();
    let mut layers = vec![CriticalLayer { depth: 0, direction: Direction::Pullback, segments }];
    for w in &windows[1..] {
        let next = next_layer(map, layers.last().expect("nonempty"), w);
        layers.push(next);
    }
    layers
}

fn window_around(z: &CycloNum) -> RationalBox {
    let (x, y) = z.to_f64_pair();
    let snap = |v: f64| BigRational::new(BigInt::from((v * 64.0).round() as i64), BigInt::from(64));
    let h = BigRational::new(1.into(), 2.into());
    let (cx, cy) = (snap(x), snap(y));
    RationalBox { x0: &cx - &h, y0: &cy - &h, x1: cx + &h, y1: cy + h }
}

/// Finds the first `j ≤ max_depth` with `Im F^j(v) = 0` and a depth-`j`
/// pullback segment of the critical line that contains `v`.
pub fn critical_segment_through(map: &PiecewiseRotation, v: &CycloNum, max_depth: u64) -> Option<ExactSegment> {
    let (h, _) = map.line_returns(v, max_depth).into_iter().next()?;
    let orbit = map.orbit(v, h as usize);
    let windows: Vec<RationalBox> = orbit.iter().rev().map(window_around).collect();
    let layers = pullback_in_windows(map, &windows);
    layers.last()?.segments.iter().find(|s| s.contains_point(v)).cloned()
}
