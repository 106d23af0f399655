use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};

fn run(code: &std::ffi::CStr) -> PyResult<()> {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "pwrot")?;
        pwrot_py::pwrot_module(&m)?;
        let globals = PyDict::new(py);
        globals.set_item("pwrot", m)?;
        py.run(code, Some(&globals), None)
    })
}

#[test]
fn golden_orbit_from_python() {
    run(c"
f = pwrot.Field(4, 5)
m = pwrot.PiecewiseRotation(f)
q = f.parse('Q')
assert m.orbit(q, 10)[10] == f.parse('phi')
assert [i for i, _ in m.line_returns(q, 20)] == [0, 3, 10, 15]
assert m.minimal_period(f.parse('P2'), 1000) == (38, [])
")
    .unwrap();
}

#[test]
fn tiles_from_python() {
    run(c"
h = pwrot.Field(11, 12)
m = pwrot.PiecewiseRotation(h)
t = pwrot.tile_from_seed(m, h.parse('C'))
assert (t.ell, t.k, t.sides, t.regular) == (20, 3, 6, False)
assert len(t.vertices()) == 6
ok, report = pwrot.verify(m, t, 5)
assert ok, report
")
    .unwrap();
}

#[test]
fn errors_map_to_value_error() {
    run(c"
try:
    pwrot.Field(3, 6)
    raise AssertionError('accepted a non-coprime pair')
except ValueError:
    pass
f = pwrot.Field(4, 5)
try:
    f.parse('1 +')
    raise AssertionError('accepted bad input')
except ValueError as e:
    assert 'position' in str(e)
")
    .unwrap();
}
