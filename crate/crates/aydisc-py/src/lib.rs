use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::pyclass::CompareOp;

use aydisc::affine::match_directions;
use aydisc::periodic::{decompose, slope_direction, Labeling, Marking, DEFAULT_MAX_STEPS};
use aydisc::report::{ratner_check as ratner_report, verify_appendix as appendix_report, AppendixOptions};
use aydisc::splitting::split_2t2c as split;
use aydisc::surface::{build_ay, spin_parity as spin, stratum_dim as dim, StratumSignature};
use aydisc::{Error, Fe};

fn err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZero | Error::ZeroElement => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Parsed JSON text as Python objects.
fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

/// Element a + bα + cα² of ℚ(α), α³ + α² + α = 1.
#[pyclass(name = "FieldElement", module = "aydisc_py", frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFe(Fe);

#[derive(FromPyObject)]
enum FeLike {
    Fe(PyFe),
    Int(i64),
    Text(String),
}

impl FeLike {
    fn value(self) -> PyResult<Fe> {
        match self {
            FeLike::Fe(x) => Ok(x.0),
            FeLike::Int(n) => Ok(Fe::int(n)),
            FeLike::Text(s) => s.parse().map_err(err),
        }
    }
}

#[pymethods]
impl PyFe {
    /// FieldElement("1-x^2"), FieldElement("1,0,-1"), or FieldElement(1, 0, -1).
    #[new]
    #[pyo3(signature = (a, b=None, c=None))]
    fn new(a: FeLike, b: Option<i64>, c: Option<i64>) -> PyResult<Self> {
        match (a, b, c) {
            (FeLike::Int(a), b, c) => Ok(PyFe(Fe::from_ints(a, b.unwrap_or(0), c.unwrap_or(0)))),
            (other, None, None) => Ok(PyFe(other.value()?)),
            _ => Err(PyValueError::new_err("give three integers or one textual element")),
        }
    }

    #[staticmethod]
    fn alpha() -> Self {
        PyFe(Fe::alpha())
    }

    /// Rational coefficients (a, b, c) as strings.
    fn coeffs(&self) -> (String, String, String) {
        let [a, b, c] = self.0.coeffs();
        (a.to_string(), b.to_string(), c.to_string())
    }

    fn sign(&self) -> i8 {
        self.0.sign()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inv().map(PyFe).map_err(err)
    }

    /// Coefficients c0..cn of the minimal polynomial over ℚ.
    fn minpoly(&self) -> Vec<String> {
        self.0.minpoly().coeffs().iter().map(|c| c.to_string()).collect()
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FieldElement(\"{}\")", self.0)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }

    fn __richcmp__(&self, o: FeLike, op: CompareOp) -> PyResult<bool> {
        Ok(op.matches(self.0.cmp(&o.value()?)))
    }

    fn __add__(&self, o: FeLike) -> PyResult<Self> {
        Ok(PyFe(&self.0 + &o.value()?))
    }

    fn __radd__(&self, o: FeLike) -> PyResult<Self> {
        self.__add__(o)
    }

    fn __sub__(&self, o: FeLike) -> PyResult<Self> {
        Ok(PyFe(&self.0 - &o.value()?))
    }

    fn __rsub__(&self, o: FeLike) -> PyResult<Self> {
        Ok(PyFe(&o.value()? - &self.0))
    }

    fn __mul__(&self, o: FeLike) -> PyResult<Self> {
        Ok(PyFe(&self.0 * &o.value()?))
    }

    fn __rmul__(&self, o: FeLike) -> PyResult<Self> {
        self.__mul__(o)
    }

    fn __truediv__(&self, o: FeLike) -> PyResult<Self> {
        self.0.checked_div(&o.value()?).map(PyFe).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyFe(-&self.0)
    }

    fn __pow__(&self, e: u32, _m: Option<Py<PyAny>>) -> Self {
        PyFe(self.0.pow(e))
    }
}

fn signature(text: &str, abelian: bool) -> PyResult<StratumSignature> {
    let mut s: StratumSignature = text.parse().map_err(err)?;
    s.quadratic = !abelian;
    Ok(s)
}

#[pyfunction]
#[pyo3(signature = (orders, abelian=false))]
fn spin_parity(orders: &str, abelian: bool) -> PyResult<u8> {
    spin(&signature(orders, abelian)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (orders, abelian=false))]
fn stratum_dim(orders: &str, abelian: bool) -> PyResult<i64> {
    dim(&signature(orders, abelian)?).map_err(err)
}

/// Minimal polynomial of √x as "c0 + c1*X + ...".
#[pyfunction]
fn minpoly_sqrt(x: FeLike) -> PyResult<String> {
    aydisc::polyalg::minpoly_of_sqrt(&x.value()?).map(|p| p.to_string()).map_err(err)
}

/// Cylinder decomposition of the AY surface in direction (1, slope), as a dict.
#[pyfunction]
#[pyo3(signature = (slope, marking="smallest", n0=0, max_steps=DEFAULT_MAX_STEPS))]
fn decompose_direction(py: Python<'_>, slope: FeLike, marking: &str, n0: i64, max_steps: usize) -> PyResult<Py<PyAny>> {
    let m = Marking::preset(marking).map_err(err)?;
    let d = decompose(&build_ay(), &slope_direction(&slope.value()?), &m, n0, &Labeling::Auto, max_steps).map_err(err)?;
    to_py(py, &d.to_json())
}

/// Affine certificates between the directions of two slopes.
#[pyfunction]
#[pyo3(signature = (from_slope, to_slope, from_marking="smallest", to_marking="smallest", n0_lo=-8, n0_hi=8))]
fn affine_search(
    py: Python<'_>,
    from_slope: FeLike,
    to_slope: FeLike,
    from_marking: &str,
    to_marking: &str,
    n0_lo: i64,
    n0_hi: i64,
) -> PyResult<Py<PyAny>> {
    let ay = build_ay();
    let d = |s: Fe, m: &str| decompose(&ay, &slope_direction(&s), &Marking::preset(m)?, 0, &Labeling::Auto, DEFAULT_MAX_STEPS);
    let d1 = d(from_slope.value()?, from_marking).map_err(err)?;
    let d2 = d(to_slope.value()?, to_marking).map_err(err)?;
    let found = match_directions(&d1, &d2, n0_lo..=n0_hi).map_err(err)?;
    to_py(py, &serde_json::Value::Array(found.iter().map(|c| c.to_json()).collect()))
}

/// 2T2C splitting of the AY surface in direction (1, slope).
#[pyfunction]
#[pyo3(signature = (slope, max_steps=aydisc::splitting::DEFAULT_MAX_STEPS))]
fn split_2t2c(py: Python<'_>, slope: FeLike, max_steps: usize) -> PyResult<Py<PyAny>> {
    let s = split(&build_ay(), &slope_direction(&slope.value()?), max_steps).map_err(err)?;
    to_py(py, &s.to_json())
}

#[pyfunction]
#[pyo3(signature = (perturb_twist=false))]
fn verify_appendix(py: Python<'_>, perturb_twist: bool) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| appendix_report(&AppendixOptions { perturb_twist, ..Default::default() })).map_err(err)?;
    to_py(py, &r.to_json())
}

#[pyfunction]
#[pyo3(signature = (grid=0))]
fn ratner_check(py: Python<'_>, grid: usize) -> PyResult<Py<PyAny>> {
    let (r, details) = py.detach(|| ratner_report(grid)).map_err(err)?;
    to_py(py, &serde_json::json!({"report": r.to_json(), "details": details}))
}

#[pymodule]
fn aydisc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFe>()?;
    m.add_function(wrap_pyfunction!(spin_parity, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_dim, m)?)?;
    m.add_function(wrap_pyfunction!(minpoly_sqrt, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_direction, m)?)?;
    m.add_function(wrap_pyfunction!(affine_search, m)?)?;
    m.add_function(wrap_pyfunction!(split_2t2c, m)?)?;
    m.add_function(wrap_pyfunction!(verify_appendix, m)?)?;
    m.add_function(wrap_pyfunction!(ratner_check, m)?)?;
    Ok(())
}
