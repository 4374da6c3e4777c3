//! Python module `rotnum_py`.
//!
//! Parameters accept an `Interval`, a decimal string (enclosed tightly) or a
//! float (taken as an exact point).

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rotnum::interval::compact_decimal;
use rotnum::report::{certificate_json, result_json};
use rotnum::rotation::{self, RotationError, DEFAULT_BUDGET};
use rotnum::shooting::{self, PeriodicCertificate, ShootingError};
use rotnum::{Interval as CoreInterval, MapDescriptor};

create_exception!(rotnum_py, CertificationError, PyRuntimeError);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn shooting_error(e: ShootingError) -> PyErr {
    match e {
        ShootingError::InvalidInput(_) | ShootingError::Map(_) => value_error(e),
        other => CertificationError::new_err(other.to_string()),
    }
}

fn rotation_error(e: RotationError) -> PyErr {
    match e {
        RotationError::Shooting(s) => shooting_error(s),
        other => value_error(other),
    }
}

#[pyclass(name = "Interval", frozen, from_py_object)]
#[derive(Clone, Copy)]
pub struct PyInterval(CoreInterval);

#[pymethods]
impl PyInterval {
    #[new]
    #[pyo3(signature = (lo, hi = None))]
    fn new(lo: f64, hi: Option<f64>) -> PyResult<Self> {
        CoreInterval::new(lo, hi.unwrap_or(lo)).map(PyInterval).map_err(value_error)
    }

    /// Tightest enclosure of a decimal literal.
    #[staticmethod]
    fn from_decimal(text: &str) -> PyResult<Self> {
        CoreInterval::from_decimal(text).map(PyInterval).map_err(value_error)
    }

    #[getter]
    fn lo(&self) -> f64 {
        self.0.lo()
    }

    #[getter]
    fn hi(&self) -> f64 {
        self.0.hi()
    }

    #[getter]
    fn mid(&self) -> f64 {
        self.0.mid()
    }

    #[getter]
    fn rad(&self) -> f64 {
        self.0.rad()
    }

    #[getter]
    fn width(&self) -> f64 {
        self.0.width()
    }

    fn contains(&self, x: f64) -> bool {
        self.0.contains(x)
    }

    fn overlaps(&self, other: PyInterval) -> bool {
        self.0.overlaps(other.0)
    }

    fn sin_2pi(&self) -> Self {
        PyInterval(self.0.sin_2pi())
    }

    fn cos_2pi(&self) -> Self {
        PyInterval(self.0.cos_2pi())
    }

    fn __add__(&self, other: Param) -> PyResult<Self> {
        self.0.add(other.0).map(PyInterval).map_err(value_error)
    }

    fn __sub__(&self, other: Param) -> PyResult<Self> {
        self.0.sub(other.0).map(PyInterval).map_err(value_error)
    }

    fn __mul__(&self, other: Param) -> PyResult<Self> {
        self.0.mul(other.0).map(PyInterval).map_err(value_error)
    }

    fn __truediv__(&self, other: Param) -> PyResult<Self> {
        self.0.div(other.0).map(PyInterval).map_err(value_error)
    }

    fn __eq__(&self, other: PyRef<'_, PyInterval>) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        compact_decimal(self.0)
    }

    fn __repr__(&self) -> String {
        format!("Interval({:?}, {:?})", self.0.lo(), self.0.hi())
    }
}

/// A map parameter as passed from Python.
struct Param(CoreInterval);

impl<'a, 'py> FromPyObject<'a, 'py> for Param {
    type Error = PyErr;

    fn extract(ob: Borrowed<'a, 'py, PyAny>) -> PyResult<Self> {
        if let Ok(x) = ob.extract::<PyInterval>() {
            return Ok(Param(x.0));
        }
        if let Ok(s) = ob.extract::<String>() {
            return CoreInterval::from_decimal(&s).map(Param).map_err(value_error);
        }
        let x: f64 = ob.extract()?;
        Ok(Param(CoreInterval::point(x)))
    }
}

#[pyclass(name = "Map", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyMap(MapDescriptor);

#[pymethods]
impl PyMap {
    /// `x ↦ x + alpha − epsilon·sin(2πx)`.
    #[staticmethod]
    fn arnold(alpha: Param, epsilon: Param) -> PyResult<Self> {
        MapDescriptor::arnold(alpha.0, epsilon.0).map(PyMap).map_err(value_error)
    }

    #[staticmethod]
    fn rigid(alpha: Param) -> Self {
        PyMap(MapDescriptor::rigid(alpha.0))
    }

    #[staticmethod]
    #[pyo3(signature = (lam, allow_outside = false))]
    fn delayed_logistic(lam: Param, allow_outside: bool) -> PyResult<Self> {
        MapDescriptor::delayed_logistic(lam.0, allow_outside).map(PyMap).map_err(value_error)
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    #[getter]
    fn conditional(&self) -> bool {
        self.0.is_conditional()
    }

    fn params(&self) -> Vec<(String, PyInterval)> {
        self.0
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), PyInterval(v)))
            .collect()
    }

    fn __repr__(&self) -> String {
        let params: Vec<String> = self
            .0
            .params()
            .into_iter()
            .map(|(k, v)| format!("{k}={}", compact_decimal(v)))
            .collect();
        format!("Map({})", params.join(", "))
    }
}

#[pyclass(name = "RotationResult", frozen)]
pub struct PyRotationResult(rotation::RotationResult);

#[pymethods]
impl PyRotationResult {
    #[getter]
    fn enclosure(&self) -> PyInterval {
        PyInterval(self.0.enclosure)
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.0.radius()
    }

    #[getter]
    fn status(&self) -> String {
        serde_json::to_value(self.0.status)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }

    #[getter]
    fn iterates(&self) -> u64 {
        self.0.iterates
    }

    #[getter]
    fn conditional(&self) -> bool {
        self.0.conditional
    }

    /// `(p, q)` when the rotation number was proved rational.
    #[getter]
    fn rational(&self) -> Option<(i64, u64)> {
        self.0.rational.as_ref().map(|r| (r.p, r.q))
    }

    /// Continued-fraction coefficients `[a0, a1, ...]`, `a0` being the shift.
    #[getter]
    fn coefficients(&self) -> Option<Vec<i64>> {
        self.0.cf.as_ref().map(|cf| {
            std::iter::once(cf.shift)
                .chain(cf.a.iter().map(|&a| a as i64))
                .collect()
        })
    }

    #[getter]
    fn seconds(&self) -> f64 {
        self.0.seconds
    }

    fn to_json(&self) -> String {
        result_json(&self.0).to_string()
    }

    fn __repr__(&self) -> String {
        format!("RotationResult({}, status={})", compact_decimal(self.0.enclosure), self.status())
    }
}

#[pyclass(name = "PeriodicCertificate", frozen)]
pub struct PyCertificate(PeriodicCertificate<1>);

#[pymethods]
impl PyCertificate {
    #[getter]
    fn p(&self) -> i64 {
        self.0.p
    }

    #[getter]
    fn q(&self) -> usize {
        self.0.q
    }

    #[getter]
    fn orbit(&self) -> Vec<PyInterval> {
        self.0.orbit.iter().map(|b| PyInterval(b[0])).collect()
    }

    fn to_json(&self) -> String {
        certificate_json(&self.0).to_string()
    }
}

#[pyfunction]
#[pyo3(signature = (map, n, x0 = 0.0))]
fn rho_linear(py: Python<'_>, map: PyMap, n: u64, x0: f64) -> PyResult<PyRotationResult> {
    py.detach(|| rotation::rho_linear(&map.0, x0, n))
        .map(PyRotationResult)
        .map_err(rotation_error)
}

#[pyfunction]
#[pyo3(signature = (map, stages = 10, budget = DEFAULT_BUDGET))]
fn rho_cf(py: Python<'_>, map: PyMap, stages: usize, budget: u64) -> PyResult<PyRotationResult> {
    py.detach(|| rotation::rho_cf(&map.0, budget, stages))
        .map(PyRotationResult)
        .map_err(rotation_error)
}

/// Certifies a period-`q` orbit. Without `candidate`, one is found by
/// iterating from 0.5.
#[pyfunction]
#[pyo3(signature = (map, q, candidate = None))]
fn verify_periodic(py: Python<'_>, map: PyMap, q: usize, candidate: Option<Vec<f64>>) -> PyResult<PyCertificate> {
    if q == 0 {
        return Err(PyValueError::new_err("q must be at least 1"));
    }
    py.detach(|| {
        let candidate = match candidate {
            Some(c) => c,
            None => shooting::periodic_candidate(&map.0, 0.5, (100 * q).max(1000), q)
                .map_err(ShootingError::Map)?,
        };
        shooting::verify_periodic(&map.0, &candidate, q)
    })
    .map(PyCertificate)
    .map_err(shooting_error)
}

/// Interval between the last two convergents of `[0; a1, a2, ...]`.
#[pyfunction]
fn convergent_enclosure(a: Vec<u64>) -> PyResult<PyInterval> {
    rotation::convergent_enclosure(&a).map(PyInterval).map_err(rotation_error)
}

#[pymodule]
fn rotnum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInterval>()?;
    m.add_class::<PyMap>()?;
    m.add_class::<PyRotationResult>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(rho_linear, m)?)?;
    m.add_function(wrap_pyfunction!(rho_cf, m)?)?;
    m.add_function(wrap_pyfunction!(verify_periodic, m)?)?;
    m.add_function(wrap_pyfunction!(convergent_enclosure, m)?)?;
    m.add("CertificationError", m.py().get_type::<CertificationError>())?;
    Ok(())
}
