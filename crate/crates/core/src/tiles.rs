//! Tiles of the regular set: extraction from a periodic seed, the rotation
//! and side-count checks, and grid scans.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::cyclo::{CycloNum, Sign};
use crate::dynamics::{itinerary_period, rotation_order, AffineMap, Itinerary, PiecewiseRotation, Symbol};
use crate::error::{Error, Result};
use crate::geometry::{
    halfplane_from_constraint, intersect_halfplanes, point_json, slope_class, Containment, ConvexPolygon,
    RationalBox, Region,
};

/// A connected component of the regular set.
#[derive(Clone, Debug)]
pub struct Tile {
    pub polygon: ConvexPolygon,
    /// Minimal itinerary block, length `ell`.
    pub word: Itinerary,
    pub ell: u64,
    pub k: u64,
    pub center: CycloNum,
    /// `false` when `λ^ℓ = 1`; `center` is then just an interior point.
    pub rotational: bool,
    pub seed: CycloNum,
    pub seed_period: u64,
}

impl Tile {
    pub fn sides(&self) -> usize {
        self.polygon.side_count()
    }

    pub fn is_regular(&self) -> bool {
        self.polygon.is_regular()
    }

    /// Period of a generic interior point.
    pub fn interior_period(&self) -> u64 {
        self.k * self.ell
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ell": self.ell,
            "k": self.k,
            "word": self.word.to_string(),
            "rotational": self.rotational,
            "sides": self.sides(),
            "regular": self.is_regular(),
            "center": point_json(&self.center),
            "seed": point_json(&self.seed),
            "seed_period": self.seed_period,
            "vertices": self.polygon.vertices().iter().map(point_json).collect::<Vec<_>>(),
        })
    }
}

/// The branch maps `G_j` along `word` repeated, for `j = 0..count`.
fn branch_maps(map: &PiecewiseRotation, word: &[Symbol], count: usize) -> Vec<AffineMap> {
    let mut out = Vec::with_capacity(count + 1);
    out.push(AffineMap::identity(map.field()));
    for j in 0..count {
        let next = out[j].then_branch(word[j % word.len()]);
        out.push(next);
    }
    out
}

/// Extracts the tile containing a periodic seed.
pub fn tile_from_seed(map: &PiecewiseRotation, z: &CycloNum, budget: u64) -> Result<Tile> {
    let rec = map.minimal_period(z, budget)?;
    if let Some((index, _)) = rec.iterates_on_line.first() {
        return Err(Error::OnCriticalLine { index: *index as usize });
    }
    let n = rec.period.ok_or(Error::BudgetExhausted { budget })?;
    let full = map.itinerary(z, n as usize)?;
    let ell = itinerary_period(&full.word);
    let block: Vec<Symbol> = full.word[..ell].to_vec();
    let q = map.field().q();
    let rotational = !(ell as u64).is_multiple_of(q as u64);
    let k = if rotational { rotation_order(ell as u64, q) } else { 1 };
    let horizon = (k * ell as u64) as usize;

    let gs = branch_maps(map, &block, horizon);
    let constraints: Vec<_> = (0..horizon).map(|j| halfplane_from_constraint(&gs[j], block[j % ell])).collect();
    let polygon = match intersect_halfplanes(&constraints) {
        Region::Polygon(p) => p,
        other => return Err(Error::Falsified(format!("cell of a periodic seed is {other:?}"))),
    };
    if polygon.contains(z) != Containment::Interior {
        return Err(Error::Falsified("seed is not interior to its cell".into()));
    }
    let center = if rotational {
        map.rotation_center(&gs[ell])?
    } else {
        polygon.vertex_centroid()
    };
    Ok(Tile {
        polygon,
        word: Itinerary { word: block, period: Some(ell) },
        ell: if rotational { ell as u64 } else { n },
        k,
        center,
        rotational,
        seed: z.clone(),
        seed_period: n,
    })
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

/// A list of checks with a verdict.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
        s
    }
}

/// Random interior points: positive integer-weighted vertex averages.
pub fn interior_samples(polygon: &ConvexPolygon, count: usize, seed: u64) -> Vec<CycloNum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vs = polygon.vertices();
    let field = vs[0].field();
    (0..count)
        .map(|_| {
            let weights: Vec<i64> = vs.iter().map(|_| rng.gen_range(1..=9)).collect();
            let total: i64 = weights.iter().sum();
            let sum = vs.iter().zip(&weights).fold(field.zero(), |acc, (v, &w)| &acc + &v.scale_rational(&BigRational::from_integer(w.into())));
            sum.scale_rational(&BigRational::new(BigInt::one(), total.into()))
        })
        .collect()
}

fn is_cyclic_shift(a: &[CycloNum], b: &[CycloNum]) -> Option<usize> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    (0..n).find(|&s| (0..n).all(|i| a[(i + s) % n] == b[i]))
}

/// Checks the permutation/rotation structure of a tile exactly.
pub fn verify_theorem_a(map: &PiecewiseRotation, t: &Tile, samples: usize, seed: u64) -> Report {
    let mut r = Report::default();
    let ell = t.ell as usize;
    let gs = branch_maps(map, &t.word.word, ell.max(t.word.len()));

    // (1) the ℓ images are pairwise distinct and return at ℓ
    let images: Vec<ConvexPolygon> = (0..=ell).map(|j| t.polygon.map(|v| gs[j].apply(v))).collect();
    let distinct = (0..ell).all(|i| (i + 1..ell).all(|j| images[i] != images[j]));
    r.checks.push(check("images distinct", distinct, format!("{ell} images")));
    r.checks.push(check("images return", images[ell] == images[0], format!("P_{ell} = P_0")));

    // (2) F^ℓ cyclically rotates the vertex cycle about the center
    let moved: Vec<CycloNum> = t.polygon.vertices().iter().map(|v| gs[ell].apply(v)).collect();
    let shift = is_cyclic_shift(t.polygon.vertices(), &moved);
    let fixes_center = !t.rotational || gs[ell].apply(&t.center) == t.center;
    let order_ok = !t.rotational || {
        let q = map.field().q() as u64;
        let pow = gs[ell].power as u64;
        t.k == q / num_integer::gcd(pow, q) && t.k == rotation_order(t.ell, q as u32)
    };
    r.checks.push(check(
        "return map rotates vertices",
        shift.is_some() && fixes_center && order_ok,
        match shift {
            Some(s) => format!("shift {s} of {}, order k = {}", t.sides(), t.k),
            None => "not a cyclic shift".into(),
        },
    ));

    // (3) the center has period ℓ
    let cp = map.minimal_period(&t.center, t.ell.max(1) + 1).ok().and_then(|o| o.period);
    r.checks.push(check("center period", cp == Some(t.ell), format!("{cp:?}, expected {}", t.ell)));

    // (4) interior samples have period kℓ and the block as itinerary
    let kl = t.interior_period();
    let mut bad = Vec::new();
    let pts = interior_samples(&t.polygon, samples, seed);
    for (idx, p) in pts.iter().enumerate() {
        let expect = if *p == t.center { t.ell } else { kl };
        let rec = map.minimal_period(p, kl + 1);
        let ok = match rec {
            Ok(o) => {
                o.period == Some(expect)
                    && o.iterates_on_line.is_empty()
                    && map
                        .itinerary(p, kl as usize)
                        .map(|it| it.word.iter().enumerate().all(|(i, s)| *s == t.word.word[i % t.word.len()]))
                        .unwrap_or(false)
            }
            Err(_) => false,
        };
        if !ok {
            bad.push(idx);
        }
    }
    r.checks.push(check(
        "interior samples",
        bad.is_empty(),
        format!("{} samples with period {kl}, failing: {bad:?}", pts.len()),
    ));

    // vertices lie on the critical set
    let mut off = 0;
    for v in t.polygon.vertices() {
        let touches = map.line_returns(v, kl);
        if touches.is_empty() {
            off += 1;
        }
    }
    r.checks.push(check("vertices on critical set", off == 0, format!("{off} vertices never meet the line")));
    r
}

/// Distinct slope classes of the tile's edges, `None` entries for edges off Θ.
pub fn slope_census(t: &Tile) -> Vec<Option<u32>> {
    let mut v: Vec<Option<u32>> = t.polygon.edge_vectors().iter().map(slope_class).collect();
    v.sort();
    v.dedup();
    v
}

/// Checks the side bound, the coprime dichotomy and the edge slopes.
pub fn verify_theorem_b(t: &Tile) -> Report {
    let mut r = Report::default();
    let q = t.seed.field().q() as usize;
    let bound = if q.is_multiple_of(2) { q } else { 2 * q };
    let sides = t.sides();
    r.checks.push(check("side bound", sides <= bound, format!("{sides} <= {bound}")));
    let census = slope_census(t);
    let in_theta = census.iter().all(Option::is_some);
    let class_bound = if q.is_multiple_of(2) { q / 2 } else { q };
    r.checks.push(check(
        "edge slopes in Theta",
        in_theta && census.len() <= class_bound,
        format!("classes {census:?}"),
    ));
    if num_integer::gcd(t.ell as usize, q) == 1 {
        let regular = t.is_regular();
        let ok = (sides == q && regular) || (q % 2 == 1 && sides == 2 * q);
        r.checks.push(check("coprime dichotomy", ok, format!("{sides} sides, regular = {regular}")));
    }
    r
}

/// Per-sample result of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleOutcome {
    Period(u64),
    BudgetExceeded,
    OnCriticalSet { index: u64 },
}

/// A tile cycle found by a scan, keyed by its canonical itinerary.
#[derive(Clone, Debug)]
pub struct InventoryEntry {
    pub key: String,
    pub tile: Tile,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub bx: RationalBox,
    pub step: BigRational,
    pub budget: u64,
    pub samples: Vec<(CycloNum, SampleOutcome)>,
    pub inventory: Vec<InventoryEntry>,
    pub histogram: BTreeMap<u64, usize>,
}

impl ScanReport {
    /// `tile-id,ell,k,sides,regular,center_re,center_im,period`.
    pub fn inventory_csv(&self) -> String {
        let mut s = String::from("tile_id,ell,k,sides,regular,center_re,center_im,period\n");
        for (i, e) in self.inventory.iter().enumerate() {
            let (x, y) = e.tile.center.to_f64_pair();
            let _ = writeln!(
                s,
                "{i},{},{},{},{},{x:.12},{y:.12},{}",
                e.tile.ell,
                e.tile.k,
                e.tile.sides(),
                e.tile.is_regular(),
                e.tile.interior_period()
            );
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "box": self.bx.to_f64(),
            "step": self.step.to_string(),
            "budget": self.budget,
            "histogram": self.histogram.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
            "budget_exceeded": self.samples.iter().filter(|s| s.1 == SampleOutcome::BudgetExceeded).count(),
            "on_critical_set": self.samples.iter().filter(|s| matches!(s.1, SampleOutcome::OnCriticalSet { .. })).count(),
            "tiles": self.inventory.iter().map(|e| json!({
                "key": e.key,
                "multiplicity": e.multiplicity,
                "tile": e.tile.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Least rotation of `word` and its offset.
fn least_rotation_offset(word: &[Symbol]) -> usize {
    let n = word.len();
    (0..n)
        .min_by(|&a, &b| {
            (0..n).map(|i| word[(a + i) % n]).cmp((0..n).map(|i| word[(b + i) % n]))
        })
        .unwrap_or(0)
}

/// Samples a rational grid, finds exact periods and deduplicates tiles.
pub fn scan_region(map: &PiecewiseRotation, bx: &RationalBox, step: &BigRational, budget: u64) -> Result<ScanReport> {
    if *step <= BigRational::from_integer(0.into()) {
        return Err(Error::Parameter("grid step must be positive".into()));
    }
    let field = map.field();
    let axis = |lo: &BigRational, hi: &BigRational| {
        let n = ((hi - lo) / step).floor().to_integer().to_usize().unwrap_or(0);
        (0..=n).map(|i| lo + step * BigRational::from_integer(i.into())).collect::<Vec<_>>()
    };
    let xs = axis(&bx.x0, &bx.x1);
    let ys = axis(&bx.y0, &bx.y1);
    let points: Vec<CycloNum> =
        ys.iter().flat_map(|y| xs.iter().map(move |x| field.embed_rational_point(x, y))).collect();

    let results: Vec<(SampleOutcome, Option<(String, Option<CycloNum>)>)> = points
        .par_iter()
        .map(|p| {
            let rec = map.minimal_period(p, budget).expect("budget checked");
            if let Some((i, _)) = rec.iterates_on_line.first() {
                return (SampleOutcome::OnCriticalSet { index: *i }, None);
            }
            let Some(n) = rec.period else { return (SampleOutcome::BudgetExceeded, None) };
            let word = map.itinerary(p, n as usize).expect("no line touches").word;
            let ell = itinerary_period(&word);
            let block = &word[..ell];
            let off = least_rotation_offset(block);
            let canon: Vec<Symbol> = (0..ell).map(|i| block[(off + i) % ell]).collect();
            let g = map.affine_along(&canon);
            let center = if g.power != 0 { map.rotation_center(&g).ok() } else { None };
            let key: String = canon.iter().map(|s| s.as_char()).collect();
            (SampleOutcome::Period(n), Some((key, center)))
        })
        .collect();

    let mut first: BTreeMap<(String, String), (usize, usize)> = BTreeMap::new();
    let mut histogram = BTreeMap::new();
    for (i, (outcome, key)) in results.iter().enumerate() {
        if let SampleOutcome::Period(n) = outcome {
            *histogram.entry(*n).or_insert(0) += 1;
        }
        if let Some((w, c)) = key {
            let ck = c.as_ref().map(|c| format!("{:?}", c.coeffs())).unwrap_or_default();
            first.entry((w.clone(), ck)).and_modify(|e| e.1 += 1).or_insert((i, 1));
        }
    }
    let inventory: Vec<InventoryEntry> = first
        .into_par_iter()
        .map(|((w, _), (i, mult))| {
            let tile = tile_from_seed(map, &points[i], budget)?;
            Ok(InventoryEntry { key: w, tile, multiplicity: mult })
        })
        .collect::<Result<_>>()?;

    Ok(ScanReport {
        bx: bx.clone(),
        step: step.clone(),
        budget,
        samples: points.into_iter().zip(results.into_iter().map(|r| r.0)).collect(),
        inventory,
        histogram,
    })
}

/// The address of each image polygon relative to the critical line: `Some(s)`
/// when the open polygon lies in the open half-plane of sign `s`.
pub fn polygon_side(p: &ConvexPolygon) -> Option<Sign> {
    let signs: Vec<Sign> = p.vertices().iter().map(CycloNum::sign_im).collect();
    if signs.iter().all(|&s| s != Sign::Negative) && signs.contains(&Sign::Positive) {
        Some(Sign::Positive)
    } else if signs.iter().all(|&s| s != Sign::Positive) && signs.contains(&Sign::Negative) {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// The orbit of a tile's polygon under the branch maps, `0..=count`.
pub fn polygon_orbit(map: &PiecewiseRotation, t: &Tile, count: usize) -> Vec<ConvexPolygon> {
    let gs = branch_maps(map, &t.word.word, count);
    gs.iter().map(|g| t.polygon.map(|v| g.apply(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::make_field;

    fn pt(map: &PiecewiseRotation, x: (i64, i64), y: (i64, i64)) -> CycloNum {
        map.field().embed_rational_point(
            &BigRational::new(x.0.into(), x.1.into()),
            &BigRational::new(y.0.into(), y.1.into()),
        )
    }

    #[test]
    fn least_rotation_offsets() {
        use Symbol::*;
        assert_eq!(least_rotation_offset(&[Plus, Minus, Minus]), 0);
        assert_eq!(least_rotation_offset(&[Minus, Minus, Plus]), 2);
        assert_eq!(least_rotation_offset(&[Minus, Plus]), 1);
    }

    #[test]
    fn tile_near_origin_is_consistent() {
        let map = PiecewiseRotation::new(make_field(1, 3).unwrap());
        let z = pt(&map, (1, 7), (1, 5));
        let t = tile_from_seed(&map, &z, 10_000).unwrap();
        assert_eq!(t.polygon.contains(&z), Containment::Interior);
        assert_eq!(t.polygon.contains(&t.center), Containment::Interior);
        let a = verify_theorem_a(&map, &t, 5, 1);
        assert!(a.passed(), "{}", a.render());
        let b = verify_theorem_b(&t);
        assert!(b.passed(), "{}", b.render());
    }

    #[test]
    fn line_seed_rejected() {
        let map = PiecewiseRotation::new(make_field(4, 5).unwrap());
        let z = pt(&map, (1, 3), (0, 1));
        assert!(matches!(tile_from_seed(&map, &z, 100), Err(Error::OnCriticalLine { index: 0 })));
    }

    #[test]
    fn scan_records_line_points() {
        let map = PiecewiseRotation::new(make_field(1, 4).unwrap());
        let bx = RationalBox::from_ints(-1, -1, 1, 1).unwrap();
        let r = scan_region(&map, &bx, &BigRational::new(1.into(), 2.into()), 1000).unwrap();
        assert_eq!(r.samples.len(), 25);
        let on_line = r.samples.iter().filter(|(p, _)| p.sign_im() == Sign::Zero);
        for (_, o) in on_line {
            assert_eq!(*o, SampleOutcome::OnCriticalSet { index: 0 });
        }
        assert!(!r.inventory.is_empty());
    }
}
