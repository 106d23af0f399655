//! The two worked examples: the golden-ratio renormalization at `p/q = 4/5`
//! and the irregular hexagon at `p/q = 11/12`.

use std::fmt::Write as _;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::cyclo::{make_field, CycloNum, Field};
use crate::dynamics::PiecewiseRotation;
use crate::error::{Error, Result};
use crate::tiles::{polygon_orbit, polygon_side, tile_from_seed, Check, Report, Tile};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Constants of the `4/5` case.
#[derive(Clone, Debug)]
pub struct GoldenContext {
    pub field: Field,
    pub map: PiecewiseRotation,
    pub phi: CycloNum,
    /// `√(2+φ)`.
    pub root: CycloNum,
    /// `2φ − 3 = 1/φ³`.
    pub r_scale: CycloNum,
    pub p0: CycloNum,
    pub q: CycloNum,
    /// The apex as printed; see [`GoldenContext::triangle_apex`].
    pub r: CycloNum,
    pub s: CycloNum,
    /// `(1/2, φ√(φ+2)/2)`, the apex of the triangle `QR'S` bounded by critical lines.
    pub triangle_apex: CycloNum,
}

impl GoldenContext {
    pub fn new() -> Result<GoldenContext> {
        let field = make_field(4, 5)?;
        let phi = field.golden()?;
        let root = field.sqrt_two_plus_phi()?;
        let i = field.i_unit();
        let one = field.one();
        let two = field.from_integer(2);
        let r_scale = &(&phi * &two) - &field.from_integer(3);
        // P0 = (1/2, (2+φ)√(2+φ)/10)
        let p0_im = (&(&two + &phi) * &root).scale_rational(&rat(1, 10));
        let p0 = &field.from_rational(&rat(1, 2)) + &(&i * &p0_im);
        // R = (1/2, (1+2φ)φ√(φ+2)/2)
        let r_im = (&(&(&one + &(&two * &phi)) * &phi) * &root).scale_rational(&rat(1, 2));
        let r = &field.from_rational(&rat(1, 2)) + &(&i * &r_im);
        let apex_im = (&phi * &root).scale_rational(&rat(1, 2));
        let triangle_apex = &field.from_rational(&rat(1, 2)) + &(&i * &apex_im);
        Ok(GoldenContext {
            map: PiecewiseRotation::new(field.clone()),
            q: -phi.clone(),
            s: &one + &phi,
            field,
            phi,
            root,
            r_scale,
            p0,
            r,
            triangle_apex,
        })
    }

    /// `P_n = r^n(P_0)`.
    pub fn pentagon_center(&self, n: usize) -> CycloNum {
        (0..n).fold(self.p0.clone(), |z, _| golden_rescale(&z).expect("4/5 field"))
    }

    /// The named constants by their printed names.
    pub fn named(&self, name: &str) -> Option<CycloNum> {
        match name {
            "Q" => Some(self.q.clone()),
            "R" => Some(self.r.clone()),
            "R'" => Some(self.triangle_apex.clone()),
            "S" => Some(self.s.clone()),
            "phi" => Some(self.phi.clone()),
            _ => {
                let n: usize = name.strip_prefix('P')?.parse().ok()?;
                Some(self.pentagon_center(n))
            }
        }
    }
}

/// `r(z) = (2φ−3)z + 2 − 2φ`.
pub fn golden_rescale(z: &CycloNum) -> Result<CycloNum> {
    let f = z.field();
    if f.p() != 4 || f.q() != 5 {
        return Err(Error::WrongContext(format!(
            "the rescaling lives in the 4/5 field, not {}/{}",
            f.p(),
            f.q()
        )));
    }
    let phi = f.golden()?;
    let two = f.from_integer(2);
    let scale = &(&two * &phi) - &f.from_integer(3);
    Ok(&(&scale * z) + &(&two - &(&two * &phi)))
}

/// Minimal periods of `P_0..=P_n`, computed in parallel; `None` past `budget`.
pub fn pentagon_center_periods(n: usize, budget: u64) -> Result<Vec<(usize, Option<u64>)>> {
    let ctx = GoldenContext::new()?;
    let points: Vec<CycloNum> = (0..=n).map(|i| ctx.pentagon_center(i)).collect();
    points
        .par_iter()
        .enumerate()
        .map(|(i, p)| Ok((i, ctx.map.minimal_period(p, budget)?.period)))
        .collect()
}

/// Line hits of the orbit of `Q = −φ` in `0..=n`.
pub fn q_orbit_returns(n: u64) -> Result<Vec<(u64, CycloNum)>> {
    let ctx = GoldenContext::new()?;
    Ok(ctx.map.line_returns(&ctx.q, n))
}

/// Table of pentagon periods in text form.
pub fn format_period_table(rows: &[(usize, Option<u64>)]) -> String {
    let mut s = String::from("n\tperiod(P_n)\n");
    for (n, p) in rows {
        match p {
            Some(p) => {
                let _ = writeln!(s, "{n}\t{p}");
            }
            None => {
                let _ = writeln!(s, "{n}\tbudget exhausted");
            }
        }
    }
    s
}

/// Constants of the `11/12` case.
#[derive(Clone, Debug)]
pub struct HexagonContext {
    pub field: Field,
    pub map: PiecewiseRotation,
    pub sqrt3: CycloNum,
    pub vertices: [CycloNum; 6],
    pub center: CycloNum,
}

impl HexagonContext {
    pub fn new() -> Result<HexagonContext> {
        let field = make_field(11, 12)?;
        let s3 = field.sqrt3()?;
        let i = field.i_unit();
        // a + b√3 as a real element
        let lin = |a: (i64, i64), b: (i64, i64)| &field.from_rational(&rat(a.0, a.1)) + &s3.scale_rational(&rat(b.0, b.1));
        let pt = |x: CycloNum, y: CycloNum| &x + &(&i * &y);
        let zero = field.zero();
        let vertices = [
            pt(field.from_integer(2), zero.clone()),
            pt(lin((3, 2), (1, 2)), zero),
            pt(lin((3, 2), (1, 2)), lin((-1, 2), (1, 2))),
            pt(lin((7, 4), (1, 4)), lin((1, 4), (1, 4))),
            pt(lin((1, 1), (1, 2)), field.from_rational(&rat(1, 2))),
            pt(lin((5, 4), (1, 4)), lin((-1, 4), (1, 4))),
        ];
        let center = pt(lin((3, 2), (1, 3)), lin((0, 1), (1, 6)));
        Ok(HexagonContext { map: PiecewiseRotation::new(field.clone()), field, sqrt3: s3, vertices, center })
    }

    pub fn named(&self, name: &str) -> Option<CycloNum> {
        match name {
            "C" => Some(self.center.clone()),
            _ => {
                let n: usize = name.strip_prefix("H.v")?.parse().ok()?;
                self.vertices.get(n.checked_sub(1)?).cloned()
            }
        }
    }
}

/// Runs the exact checks on the hexagon and returns them with its tile.
pub fn hexagon_case() -> Result<(Report, Tile)> {
    let ctx = HexagonContext::new()?;
    let mut r = Report::default();
    let period = ctx.map.minimal_period(&ctx.center, 1000)?.period;
    r.checks.push(Check { name: "center period", passed: period == Some(20), detail: format!("{period:?}") });

    let tile = tile_from_seed(&ctx.map, &ctx.center, 1000)?;
    let mut got = tile.polygon.vertices().to_vec();
    let mut want = ctx.vertices.to_vec();
    let key = |v: &CycloNum| format!("{:?}", v.coeffs());
    got.sort_by_key(key);
    want.sort_by_key(key);
    r.checks.push(Check {
        name: "tile vertices",
        passed: got == want,
        detail: format!("{} vertices", tile.sides()),
    });
    let regular = tile.is_regular();
    r.checks.push(Check { name: "not regular", passed: !regular, detail: format!("regular = {regular}") });

    let images = polygon_orbit(&ctx.map, &tile, 20);
    let distinct = (0..20).all(|i| (i + 1..20).all(|j| images[i] != images[j]));
    r.checks.push(Check {
        name: "20 distinct images",
        passed: distinct && images[20] == images[0],
        detail: format!("distinct = {distinct}, H_20 = H_0: {}", images[20] == images[0]),
    });
    let crossing: Vec<usize> = (0..20).filter(|&j| polygon_side(&images[j]).is_none()).collect();
    r.checks.push(Check {
        name: "images miss the line",
        passed: crossing.is_empty(),
        detail: format!("crossing: {crossing:?}"),
    });
    Ok((r, tile))
}
