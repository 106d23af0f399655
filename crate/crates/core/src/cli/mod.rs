//! Command-line front end.
//!
//! Exit codes: 0 success, 2 budget exhausted, 3 falsified check, 4 bad input.

pub mod expr;
pub mod svg;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::casestudy::{format_period_table, golden_rescale, hexagon_case, GoldenContext};
use crate::critical::{critical_bundle, Direction, Directions, DEFAULT_SEGMENT_CAP};
use crate::cyclo::{make_field, CycloNum, Field};
use crate::dynamics::PiecewiseRotation;
use crate::error::{Error, Result};
use crate::geometry::{point_json, RationalBox};
use crate::tiles::{polygon_orbit, scan_region, tile_from_seed, verify_theorem_a, verify_theorem_b, Tile};

use self::expr::{parse_alpha, parse_box, parse_point, parse_step};
use self::svg::Scene;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;
pub const EXIT_BAD_INPUT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "pwrot", version, about = "Exact dynamics of the piecewise rotation z -> lambda(z - H(z))")]
pub struct Cli {
    /// key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an orbit.
    Iterate(IterateArgs),
    /// Exact minimal period of a point.
    Period(PeriodArgs),
    /// The tile containing a periodic seed.
    Tile(TileArgs),
    /// Critical segments up to a depth, clipped to a box.
    Critical(CriticalArgs),
    /// Grid scan with a deduplicated tile inventory.
    Scan(ScanArgs),
    /// The worked examples.
    Casestudy(CasestudyArgs),
    /// Rotation and side-count checks on a tile.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Coeff,
    Phi,
    Csv,
    Svg,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Rotation as a fraction of a full turn: alpha = 2*pi*p/q.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct IterateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PeriodArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct TileArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Pullback,
    Forward,
    Both,
}

#[derive(Args, Debug)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub depth: Option<usize>,
    /// x0,y0,x1,y1
    #[arg(long = "box", allow_hyphen_values = true)]
    pub bx: Option<String>,
    #[arg(long, value_enum)]
    pub direction: Option<DirectionArg>,
    /// Segment cap; exceeding it truncates and exits with 2.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long = "box", allow_hyphen_values = true)]
    pub bx: Option<String>,
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CasestudyArgs {
    #[command(subcommand)]
    pub which: CaseStudy,
}

#[derive(Subcommand, Debug)]
pub enum CaseStudy {
    /// The 4/5 renormalization: pentagon periods, Q returns, triangles.
    Golden(GoldenArgs),
    /// The 11/12 irregular hexagon.
    Hexagon(HexagonArgs),
}

#[derive(Args, Debug)]
pub struct GoldenArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Print the pentagon period table.
    #[arg(long)]
    pub table: bool,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Print the line returns of Q within this many steps.
    #[arg(long)]
    pub returns: Option<u64>,
}

#[derive(Args, Debug)]
pub struct HexagonArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for interior sampling.
    #[arg(long)]
    pub rng_seed: Option<u64>,
    #[arg(long)]
    pub budget: Option<u64>,
}

/// Text output with an exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: EXIT_OK }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted { .. } => EXIT_BUDGET,
        Error::Falsified(_) => EXIT_FALSIFIED,
        _ => EXIT_BAD_INPUT,
    }
}

/// `key = value` lines; `#` starts a comment.
#[derive(Debug, Default, Clone)]
pub struct Config(HashMap<String, String>);

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut map = HashMap::new();
        let mut pos = 0;
        for line in text.lines() {
            let body = line.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                let (k, v) = body
                    .split_once('=')
                    .ok_or_else(|| Error::Parse { pos, msg: format!("expected key=value, got '{body}'") })?;
                map.insert(k.trim().replace('_', "-"), v.trim().to_string());
            }
            pos += line.len() + 1;
        }
        Ok(Config(map))
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn string(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.get(key).map(str::to_string))
    }

    fn number<T: std::str::FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(s) => s.parse().map_err(|_| Error::Parameter(format!("config key '{key}': bad value '{s}'"))),
            None => Ok(default),
        }
    }

    fn format(&self, flag: Option<Format>, default: Format) -> Result<Format> {
        if let Some(f) = flag {
            return Ok(f);
        }
        match self.get("format") {
            Some(s) => Format::from_str(s, true).map_err(|_| Error::Parameter(format!("unknown format '{s}'"))),
            None => Ok(default),
        }
    }
}

fn field_from(cfg: &Config, common: &Common) -> Result<Field> {
    let alpha = cfg
        .string(&common.alpha, "alpha")
        .ok_or_else(|| Error::Parameter("--alpha p/q is required".into()))?;
    let (p, q) = parse_alpha(&alpha)?;
    make_field(p, q)
}

fn required(cfg: &Config, flag: &Option<String>, key: &str) -> Result<String> {
    cfg.string(flag, key).ok_or_else(|| Error::Parameter(format!("--{key} is required")))
}

fn show(z: &CycloNum, format: Format) -> String {
    match format {
        Format::Phi => z.format_phi(),
        _ => z.to_string(),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = match &cli.config {
        Some(path) => Config::parse(&std::fs::read_to_string(path)?)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Iterate(a) => cmd_iterate(&cfg, a),
        Command::Period(a) => cmd_period(&cfg, a),
        Command::Tile(a) => cmd_tile(&cfg, a),
        Command::Critical(a) => cmd_critical(&cfg, a),
        Command::Scan(a) => cmd_scan(&cfg, a),
        Command::Casestudy(a) => match &a.which {
            CaseStudy::Golden(g) => cmd_golden(&cfg, g),
            CaseStudy::Hexagon(h) => cmd_hexagon(&cfg, h),
        },
        Command::Verify(a) => cmd_verify(&cfg, a),
    }
}

pub fn cmd_iterate(cfg: &Config, a: &IterateArgs) -> Result<Outcome> {
    let field = field_from(cfg, &a.common)?;
    let z = parse_point(&field, &required(cfg, &a.point, "point")?)?;
    let n = cfg.number(a.n, "n", 10)?;
    let format = cfg.format(a.common.format, Format::Coeff)?;
    let map = PiecewiseRotation::new(field);
    let orbit = map.orbit(&z, n);
    let mut s = String::new();
    match format {
        Format::Csv => {
            s.push_str("n,re,im,address\n");
            for (i, w) in orbit.iter().enumerate() {
                let (x, y) = w.to_f64_pair();
                let _ = writeln!(s, "{i},{x:.15},{y:.15},{}", map.address(w).as_char());
            }
        }
        Format::Json => {
            let v: Vec<_> = orbit.iter().map(point_json).collect();
            s = serde_json::to_string_pretty(&v).expect("json") + "\n";
        }
        Format::Svg => {
            let pts: Vec<(f64, f64)> = orbit.iter().map(CycloNum::to_f64_pair).collect();
            let mut sc = Scene::new(viewport_of(&pts, 0.5));
            sc.segments.push(((sc.viewport[0], 0.0), (sc.viewport[2], 0.0), 0));
            sc.points = pts.into_iter().enumerate().map(|(i, p)| (p, i.to_string())).collect();
            s = sc.render();
        }
        _ => {
            for (i, w) in orbit.iter().enumerate() {
                let _ = writeln!(s, "{i}\t{}", show(w, format));
            }
        }
    }
    Ok(Outcome::ok(s))
}

pub fn cmd_period(cfg: &Config, a: &PeriodArgs) -> Result<Outcome> {
    let field = field_from(cfg, &a.common)?;
    let z = parse_point(&field, &required(cfg, &a.point, "point")?)?;
    let budget = cfg.number(a.budget, "budget", 10_000_000)?;
    let format = cfg.format(a.common.format, Format::Coeff)?;
    let map = PiecewiseRotation::new(field);
    let rec = map.minimal_period(&z, budget)?;
    let hits: Vec<u64> = rec.iterates_on_line.iter().map(|h| h.0).collect();
    let s = if format == Format::Json {
        serde_json::to_string_pretty(&json!({
            "period": rec.period,
            "budget": budget,
            "steps": rec.budget_used,
            "line_hits": hits,
        }))
        .expect("json")
            + "\n"
    } else {
        let mut s = String::new();
        match rec.period {
            Some(p) => {
                let _ = writeln!(s, "period\t{p}");
            }
            None => {
                let _ = writeln!(s, "period\tnone within {budget} steps");
            }
        }
        let _ = writeln!(s, "line_hits\t{}", hits.len());
        if !hits.is_empty() {
            let shown: Vec<String> = hits.iter().take(50).map(u64::to_string).collect();
            let _ = writeln!(s, "hit_indices\t{}", shown.join(","));
        }
        s
    };
    Ok(Outcome { text: s, code: if rec.period.is_some() { EXIT_OK } else { EXIT_BUDGET } })
}

fn tile_text(t: &Tile, format: Format) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ell\t{}", t.ell);
    let _ = writeln!(s, "k\t{}", t.k);
    let _ = writeln!(s, "interior_period\t{}", t.interior_period());
    let _ = writeln!(s, "word\t{}", t.word);
    let _ = writeln!(s, "sides\t{}", t.sides());
    let _ = writeln!(s, "shape\t{}", if t.is_regular() { "regular" } else { "irregular" });
    let _ = writeln!(s, "center\t{}", show(&t.center, format));
    for (i, v) in t.polygon.vertices().iter().enumerate() {
        let (x, y) = v.to_f64_pair();
        let _ = writeln!(s, "vertex{}\t{}\t~({x:.12}, {y:.12})", i + 1, show(v, format));
    }
    s
}

fn viewport_of(pts: &[(f64, f64)], margin: f64) -> [f64; 4] {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if pts.is_empty() {
        return [-1.0, -1.0, 1.0, 1.0];
    }
    [x0 - margin, y0 - margin, x1 + margin, y1 + margin]
}

pub fn cmd_tile(cfg: &Config, a: &TileArgs) -> Result<Outcome> {
    let field = field_from(cfg, &a.common)?;
    let z = parse_point(&field, &required(cfg, &a.seed, "seed")?)?;
    let budget = cfg.number(a.budget, "budget", 10_000_000)?;
    let format = cfg.format(a.common.format, Format::Coeff)?;
    let map = PiecewiseRotation::new(field);
    let t = tile_from_seed(&map, &z, budget)?;
    let s = match format {
        Format::Json => serde_json::to_string_pretty(&t.to_json()).expect("json") + "\n",
        Format::Svg => {
            let images = polygon_orbit(&map, &t, t.ell as usize);
            let all: Vec<(f64, f64)> = images.iter().flat_map(|p| p.shadow()).collect();
            let mut sc = Scene::new(viewport_of(&all, 0.25));
            sc.segments.push(((sc.viewport[0], 0.0), (sc.viewport[2], 0.0), 0));
            sc.polygons = images[..t.ell as usize].iter().map(|p| (p.shadow(), t.interior_period())).collect();
            sc.points.push((t.center.to_f64_pair(), "center".into()));
            sc.render()
        }
        Format::Csv => {
            let mut s = String::from("vertex,re,im\n");
            for (i, (x, y)) in t.polygon.shadow().into_iter().enumerate() {
                let _ = writeln!(s, "{},{x:.15},{y:.15}", i + 1);
            }
            s
        }
        _ => tile_text(&t, format),
    };
    Ok(Outcome::ok(s))
}

fn box_from(cfg: &Config, flag: &Option<String>, default: &str) -> Result<RationalBox> {
    parse_box(&cfg.string(flag, "box").unwrap_or_else(|| default.to_string()))
}

pub fn cmd_critical(cfg: &Config, a: &CriticalArgs) -> Result<Outcome> {
    let field = field_from(cfg, &a.common)?;
    let depth = cfg.number(a.depth, "depth", 8)?;
    let bx = box_from(cfg, &a.bx, "-4,-4,4,4")?;
    let cap = cfg.number(a.cap, "cap", DEFAULT_SEGMENT_CAP)?;
    let direction = match a.direction.or_else(|| {
        cfg.get("direction").and_then(|d| DirectionArg::from_str(d, true).ok())
    }) {
        Some(DirectionArg::Forward) => Directions::Forward,
        Some(DirectionArg::Both) => Directions::Both,
        _ => Directions::Pullback,
    };
    let format = cfg.format(a.common.format, Format::Coeff)?;
    let map = PiecewiseRotation::new(field);
    let b = critical_bundle(&map, depth, &bx, direction, cap);
    let mut s = match format {
        Format::Svg => {
            let mut sc = Scene::new(bx.to_f64());
            for l in &b.layers {
                for seg in &l.segments {
                    sc.segments.push((seg.a.to_f64_pair(), seg.b.to_f64_pair(), l.depth));
                }
            }
            sc.render()
        }
        Format::Json => {
            let layers: Vec<_> = b
                .layers
                .iter()
                .map(|l| {
                    json!({
                        "direction": if l.direction == Direction::Pullback { "pullback" } else { "forward" },
                        "depth": l.depth,
                        "segments": l.segments.iter().map(|s| json!([point_json(&s.a), point_json(&s.b)])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "layers": layers })).expect("json") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("direction,depth,ax,ay,bx,by\n");
            for l in &b.layers {
                for seg in &l.segments {
                    let ((ax, ay), (bx, by)) = (seg.a.to_f64_pair(), seg.b.to_f64_pair());
                    let d = if l.direction == Direction::Pullback { "pullback" } else { "forward" };
                    let _ = writeln!(s, "{d},{},{ax:.15},{ay:.15},{bx:.15},{by:.15}", l.depth);
                }
            }
            s
        }
        _ => b.dump(),
    };
    let mut code = EXIT_OK;
    for t in &b.truncations {
        code = EXIT_BUDGET;
        if matches!(format, Format::Coeff | Format::Phi) {
            let _ = writeln!(
                s,
                "# truncated: cap {} reached after depth {}, {} segments dropped",
                t.cap, t.complete_depth, t.dropped
            );
        }
    }
    Ok(Outcome { text: s, code })
}

pub fn cmd_scan(cfg: &Config, a: &ScanArgs) -> Result<Outcome> {
    let field = field_from(cfg, &a.common)?;
    let bx = box_from(cfg, &a.bx, "-3,-3,3,3")?;
    let step = parse_step(&cfg.string(&a.grid, "grid").unwrap_or_else(|| "1/4".into()))?;
    let budget = cfg.number(a.budget, "budget", 100_000)?;
    let format = cfg.format(a.common.format, Format::Csv)?;
    let map = PiecewiseRotation::new(field);
    let r = scan_region(&map, &bx, &step, budget)?;
    let s = match format {
        Format::Json => serde_json::to_string_pretty(&r.to_json()).expect("json") + "\n",
        Format::Svg => {
            let mut sc = Scene::new(bx.to_f64());
            sc.segments.push(((sc.viewport[0], 0.0), (sc.viewport[2], 0.0), 0));
            for e in &r.inventory {
                for p in polygon_orbit(&map, &e.tile, e.tile.ell as usize).iter().take(e.tile.ell as usize) {
                    sc.polygons.push((p.shadow(), e.tile.interior_period()));
                }
            }
            sc.render()
        }
        _ => r.inventory_csv(),
    };
    Ok(Outcome::ok(s))
}

pub fn cmd_golden(cfg: &Config, a: &GoldenArgs) -> Result<Outcome> {
    let ctx = GoldenContext::new()?;
    let format = cfg.format(a.format, Format::Phi)?;
    if format == Format::Svg {
        return Ok(Outcome::ok(golden_svg(&ctx)?));
    }
    let mut s = String::new();
    let mut code = EXIT_OK;
    let want_returns = a.returns.or(if a.table { None } else { Some(220) });
    if a.table {
        let max_n = cfg.number(a.max_n, "max-n", 6)?;
        let budget = cfg.number(a.budget, "budget", 20_000_000)?;
        let rows = crate::casestudy::pentagon_center_periods(max_n, budget)?;
        if rows.iter().any(|r| r.1.is_none()) {
            code = EXIT_BUDGET;
        }
        s.push_str(&format_period_table(&rows));
    }
    if let Some(n) = want_returns {
        let _ = writeln!(s, "index\tvalue");
        for (i, v) in crate::casestudy::q_orbit_returns(n)? {
            let note = match v.to_phi_form()? {
                Some(p) if p.a.is_integer() && p.b.is_integer() => "",
                _ => "\t(non-integer coordinates)",
            };
            let _ = writeln!(s, "{i}\t{}{note}", show(&v, format));
        }
    }
    Ok(Outcome { text: s, code })
}

fn golden_svg(ctx: &GoldenContext) -> Result<String> {
    let bx = parse_box("-2,-1/2,3,2")?;
    let b = critical_bundle(&ctx.map, 30, &bx, Directions::Pullback, DEFAULT_SEGMENT_CAP);
    let mut sc = Scene::new(bx.to_f64());
    for l in &b.layers {
        for seg in &l.segments {
            sc.segments.push((seg.a.to_f64_pair(), seg.b.to_f64_pair(), l.depth));
        }
    }
    let (mut r, mut s) = (ctx.triangle_apex.clone(), ctx.s.clone());
    for _ in 0..3 {
        let pts = [ctx.q.to_f64_pair(), s.to_f64_pair(), r.to_f64_pair()];
        for i in 0..3 {
            sc.segments.push((pts[i], pts[(i + 1) % 3], 1));
        }
        r = golden_rescale(&r)?;
        s = golden_rescale(&s)?;
    }
    for n in 0..3 {
        sc.points.push((ctx.pentagon_center(n).to_f64_pair(), format!("P{n}")));
    }
    Ok(sc.render())
}

pub fn cmd_hexagon(cfg: &Config, a: &HexagonArgs) -> Result<Outcome> {
    let format = cfg.format(a.format, Format::Coeff)?;
    let (report, tile) = hexagon_case()?;
    let mut s = report.render();
    s.push_str(&tile_text(&tile, format));
    Ok(Outcome { text: s, code: if report.passed() { EXIT_OK } else { EXIT_FALSIFIED } })
}

pub fn cmd_verify(cfg: &Config, a: &VerifyArgs) -> Result<Outcome> {
    let field = field_from(cfg, &a.common)?;
    let z = parse_point(&field, &required(cfg, &a.seed, "seed")?)?;
    let samples = cfg.number(a.samples, "samples", 25)?;
    let rng_seed = cfg.number(a.rng_seed, "rng-seed", 1)?;
    let budget = cfg.number(a.budget, "budget", 10_000_000)?;
    let map = PiecewiseRotation::new(field);
    let t = tile_from_seed(&map, &z, budget)?;
    let ra = verify_theorem_a(&map, &t, samples, rng_seed);
    let rb = verify_theorem_b(&t);
    let mut s = String::new();
    let _ = writeln!(s, "tile: ell = {}, k = {}, sides = {}", t.ell, t.k, t.sides());
    s.push_str("rotation structure\n");
    s.push_str(&ra.render());
    s.push_str("side count and slopes\n");
    s.push_str(&rb.render());
    let ok = ra.passed() && rb.passed();
    let _ = writeln!(s, "{}", if ok { "all checks passed" } else { "FALSIFIED" });
    Ok(Outcome { text: s, code: if ok { EXIT_OK } else { EXIT_FALSIFIED } })
}

/// Parses `args`, runs the command, writes output; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text).map_err(Error::from),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(out.text.as_bytes()).map_err(Error::from)
                }
            };
            match written {
                Ok(()) => out.code,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_BAD_INPUT
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
