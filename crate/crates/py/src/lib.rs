//! Python bindings: `import pwrot`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use pwrot::casestudy::{hexagon_case, pentagon_center_periods};
use pwrot::cli::expr::{parse_box, parse_point, parse_step};
use pwrot::critical::{critical_bundle, Direction, Directions, DEFAULT_SEGMENT_CAP};
use pwrot::dynamics::PiecewiseRotation;
use pwrot::tiles::{scan_region, tile_from_seed, verify_theorem_a, verify_theorem_b};
use pwrot::{Error, Sign};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parameter(_) | Error::Parse { .. } | Error::WrongContext(_) | Error::Domain(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::OnCriticalLine { .. } | Error::DegenerateRotation => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn sign_int(s: Sign) -> i8 {
    match s {
        Sign::Negative => -1,
        Sign::Zero => 0,
        Sign::Positive => 1,
    }
}

/// The field `Q(ζ_m)` attached to the rotation `2πp/q`.
#[pyclass(module = "pwrot", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Field {
    inner: pwrot::Field,
}

#[pymethods]
impl Field {
    #[new]
    fn new(p: u32, q: u32) -> PyResult<Self> {
        Ok(Field { inner: pwrot::make_field(p, q).map_err(py_err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn conductor(&self) -> usize {
        self.inner.conductor()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn zero(&self) -> CycloNum {
        CycloNum { inner: self.inner.zero() }
    }

    fn one(&self) -> CycloNum {
        CycloNum { inner: self.inner.one() }
    }

    fn lam(&self) -> CycloNum {
        CycloNum { inner: self.inner.lambda() }
    }

    /// Parses a point expression such as `"(1/2, 3)"`, `"phi + i"` or `"P1"`.
    fn parse(&self, text: &str) -> PyResult<CycloNum> {
        Ok(CycloNum { inner: parse_point(&self.inner, text).map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, q={})", self.inner.p(), self.inner.q())
    }
}

/// An exact element of the field.
#[pyclass(module = "pwrot", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct CycloNum {
    inner: pwrot::CycloNum,
}

#[pymethods]
impl CycloNum {
    fn __add__(&self, o: &CycloNum) -> CycloNum {
        CycloNum { inner: &self.inner + &o.inner }
    }

    fn __sub__(&self, o: &CycloNum) -> CycloNum {
        CycloNum { inner: &self.inner - &o.inner }
    }

    fn __mul__(&self, o: &CycloNum) -> CycloNum {
        CycloNum { inner: &self.inner * &o.inner }
    }

    fn __truediv__(&self, o: &CycloNum) -> PyResult<CycloNum> {
        Ok(CycloNum { inner: self.inner.div(&o.inner).map_err(py_err)? })
    }

    fn __neg__(&self) -> CycloNum {
        CycloNum { inner: -self.inner.clone() }
    }

    fn conj(&self) -> CycloNum {
        CycloNum { inner: self.inner.conj() }
    }

    fn real_part(&self) -> CycloNum {
        CycloNum { inner: self.inner.real_part() }
    }

    fn imag_part(&self) -> CycloNum {
        CycloNum { inner: self.inner.imag_part() }
    }

    fn norm_sq(&self) -> CycloNum {
        CycloNum { inner: self.inner.norm_sq() }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn sign_re(&self) -> i8 {
        sign_int(self.inner.sign_re())
    }

    fn sign_im(&self) -> i8 {
        sign_int(self.inner.sign_im())
    }

    /// Power-basis coefficients as strings (`"3/2"`).
    fn coeffs(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(ToString::to_string).collect()
    }

    /// Floating-point shadow, for display only.
    fn to_complex(&self) -> (f64, f64) {
        self.inner.to_f64_pair()
    }

    fn format_phi(&self) -> String {
        self.inner.format_phi()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CycloNum({})", self.inner)
    }
}

/// The map `z -> λ(z - H(z))`.
#[pyclass(module = "pwrot", name = "PiecewiseRotation", frozen)]
struct PiecewiseRotationPy {
    inner: PiecewiseRotation,
}

#[pymethods]
impl PiecewiseRotationPy {
    #[new]
    fn new(field: &Field) -> Self {
        PiecewiseRotationPy { inner: PiecewiseRotation::new(field.inner.clone()) }
    }

    fn step(&self, z: &CycloNum) -> CycloNum {
        CycloNum { inner: self.inner.step(&z.inner) }
    }

    fn inverse_step(&self, z: &CycloNum) -> CycloNum {
        CycloNum { inner: self.inner.inverse_step(&z.inner) }
    }

    fn orbit(&self, z: &CycloNum, n: usize) -> Vec<CycloNum> {
        self.inner.orbit(&z.inner, n).into_iter().map(|inner| CycloNum { inner }).collect()
    }

    fn iterate(&self, py: Python<'_>, z: &CycloNum, n: u64) -> CycloNum {
        let inner = py.detach(|| self.inner.iterate(&z.inner, n));
        CycloNum { inner }
    }

    /// `(period or None, indices where the orbit meets the real axis)`.
    fn minimal_period(&self, py: Python<'_>, z: &CycloNum, budget: u64) -> PyResult<(Option<u64>, Vec<u64>)> {
        let rec = py.detach(|| self.inner.minimal_period(&z.inner, budget)).map_err(py_err)?;
        Ok((rec.period, rec.iterates_on_line.iter().map(|h| h.0).collect()))
    }

    fn line_returns(&self, z: &CycloNum, n: u64) -> Vec<(u64, CycloNum)> {
        self.inner.line_returns(&z.inner, n).into_iter().map(|(i, inner)| (i, CycloNum { inner })).collect()
    }

    /// The address word as a `+`/`-` string.
    fn itinerary(&self, z: &CycloNum, n: usize) -> PyResult<String> {
        Ok(self.inner.itinerary(&z.inner, n).map_err(py_err)?.to_string())
    }
}

/// A periodic tile.
#[pyclass(module = "pwrot", frozen)]
struct Tile {
    inner: pwrot::tiles::Tile,
}

#[pymethods]
impl Tile {
    #[getter]
    fn ell(&self) -> u64 {
        self.inner.ell
    }

    #[getter]
    fn k(&self) -> u64 {
        self.inner.k
    }

    #[getter]
    fn sides(&self) -> usize {
        self.inner.sides()
    }

    #[getter]
    fn regular(&self) -> bool {
        self.inner.is_regular()
    }

    #[getter]
    fn center(&self) -> CycloNum {
        CycloNum { inner: self.inner.center.clone() }
    }

    #[getter]
    fn word(&self) -> String {
        self.inner.word.to_string()
    }

    fn vertices(&self) -> Vec<CycloNum> {
        self.inner.polygon.vertices().iter().map(|v| CycloNum { inner: v.clone() }).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tile(ell={}, k={}, sides={})", self.inner.ell, self.inner.k, self.inner.sides())
    }
}

#[pyfunction]
#[pyo3(name = "tile_from_seed", signature = (map, seed, budget = 10_000_000))]
fn py_tile_from_seed(py: Python<'_>, map: &PiecewiseRotationPy, seed: &CycloNum, budget: u64) -> PyResult<Tile> {
    let inner = py.detach(|| tile_from_seed(&map.inner, &seed.inner, budget)).map_err(py_err)?;
    Ok(Tile { inner })
}

/// Runs the rotation and side-count checks; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (map, tile, samples = 25, seed = 1))]
fn verify(py: Python<'_>, map: &PiecewiseRotationPy, tile: &Tile, samples: usize, seed: u64) -> (bool, String) {
    py.detach(|| {
        let a = verify_theorem_a(&map.inner, &tile.inner, samples, seed);
        let b = verify_theorem_b(&tile.inner);
        (a.passed() && b.passed(), format!("{}{}", a.render(), b.render()))
    })
}

/// Grid scan; returns the deduplicated tiles.
#[pyfunction]
#[pyo3(signature = (map, bbox, step = "1/4", budget = 100_000))]
fn scan(py: Python<'_>, map: &PiecewiseRotationPy, bbox: &str, step: &str, budget: u64) -> PyResult<Vec<Tile>> {
    let bx = parse_box(bbox).map_err(py_err)?;
    let step = parse_step(step).map_err(py_err)?;
    let r = py.detach(|| scan_region(&map.inner, &bx, &step, budget)).map_err(py_err)?;
    Ok(r.inventory.into_iter().map(|e| Tile { inner: e.tile }).collect())
}

/// Pullback critical segments as `(depth, a, b)`.
#[pyfunction]
#[pyo3(signature = (map, depth, bbox))]
fn critical_segments(
    py: Python<'_>,
    map: &PiecewiseRotationPy,
    depth: usize,
    bbox: &str,
) -> PyResult<Vec<(usize, CycloNum, CycloNum)>> {
    let bx = parse_box(bbox).map_err(py_err)?;
    let b = py.detach(|| critical_bundle(&map.inner, depth, &bx, Directions::Pullback, DEFAULT_SEGMENT_CAP));
    Ok(b.layers
        .iter()
        .filter(|l| l.direction == Direction::Pullback)
        .flat_map(|l| {
            l.segments.iter().map(move |s| (l.depth, CycloNum { inner: s.a.clone() }, CycloNum { inner: s.b.clone() }))
        })
        .collect())
}

/// Minimal periods of the pentagon centers `P_0..=P_n` at `4/5`.
#[pyfunction]
#[pyo3(signature = (n, budget = 20_000_000))]
fn pentagon_periods(py: Python<'_>, n: usize, budget: u64) -> PyResult<Vec<Option<u64>>> {
    let rows = py.detach(|| pentagon_center_periods(n, budget)).map_err(py_err)?;
    Ok(rows.into_iter().map(|r| r.1).collect())
}

/// The `11/12` hexagon checks; returns `(passed, report)`.
#[pyfunction]
fn hexagon() -> PyResult<(bool, String)> {
    let (r, _) = hexagon_case().map_err(py_err)?;
    Ok((r.passed(), r.render()))
}

#[pymodule]
#[pyo3(name = "pwrot")]
pub fn pwrot_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<CycloNum>()?;
    m.add_class::<PiecewiseRotationPy>()?;
    m.add_class::<Tile>()?;
    m.add_function(wrap_pyfunction!(py_tile_from_seed, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(critical_segments, m)?)?;
    m.add_function(wrap_pyfunction!(pentagon_periods, m)?)?;
    m.add_function(wrap_pyfunction!(hexagon, m)?)?;
    Ok(())
}
