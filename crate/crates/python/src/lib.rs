//! Python module `modalqt`.
//!
//! States, measurements and operators are passed either as objects of the
//! classes below or as registry references such as `"mobit:sigma"`,
//! `"bell:S"`, `"mobit:Z"` or `"GF(3)^2:[1,2]"`. Structured results come back
//! as plain dicts and lists.

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use mqt_core::composite::{self, Bipartition, CompositeSystem};
use mqt_core::field::FieldSpec;
use mqt_core::linalg::Matrix;
use mqt_core::modal::{self, MeasurementBasis, StateVector, SystemSpec, DEFAULT_OPERATOR_BOUND, DEFAULT_STATE_BOUND};
use mqt_core::nonclassical::{self, DEFAULT_ASSIGNMENT_BOUND};
use mqt_core::protocols::{self, Message};
use mqt_core::registry;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

macro_rules! py_err {
    ($e:expr) => {{
        let e = $e;
        if e.is_bound_exceeded() {
            PyOverflowError::new_err(e.to_string())
        } else {
            value_error(e)
        }
    }};
}

/// Serialize through JSON into native Python objects.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A finite field GF(p^n).
#[pyclass(module = "modalqt", name = "Field", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyField {
    inner: FieldSpec,
}

#[pymethods]
impl PyField {
    /// `Field("GF(4)")`, `Field("GF(3^2)")`, `Field("GF(8);poly=[1,0,1,1]")`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(|inner| Self { inner }).map_err(|e: mqt_core::field::FieldError| {
            py_err!(mqt_core::modal::ModalError::from(e))
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.inner.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    /// Elements in canonical order, rendered as strings.
    fn elements(&self) -> Vec<String> {
        self.inner.elements().iter().map(ToString::to_string).collect()
    }

    /// Operate on canonical element indices.
    fn add(&self, a: u64, b: u64) -> PyResult<u16> {
        let (a, b) = (self.element(a)?, self.element(b)?);
        Ok(a.add(&b).map_err(value_error)?.value())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u16> {
        let (a, b) = (self.element(a)?, self.element(b)?);
        Ok(a.mul(&b).map_err(value_error)?.value())
    }

    fn inverse(&self, a: u64) -> PyResult<u16> {
        Ok(self.element(a)?.inverse().map_err(value_error)?.value())
    }

    fn format(&self, a: u64) -> PyResult<String> {
        Ok(self.element(a)?.to_string())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Field({:?})", self.inner.to_string())
    }
}

impl PyField {
    fn element(&self, value: u64) -> PyResult<mqt_core::field::FieldElement> {
        self.inner.element(value).map_err(value_error)
    }
}

/// A nonzero vector of `F^d`.
#[pyclass(module = "modalqt", name = "State", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyState {
    inner: StateVector,
}

#[pymethods]
impl PyState {
    /// `State("GF(3)", [1, 2])` with canonical element indices.
    #[new]
    fn new(field: &str, coeffs: Vec<u64>) -> PyResult<Self> {
        let field: FieldSpec = field.parse().map_err(value_error)?;
        let system = SystemSpec::new(&field, coeffs.len()).map_err(|e| py_err!(e))?;
        let inner = StateVector::from_values(&system, &coeffs).map_err(|e| py_err!(e))?;
        Ok(Self { inner })
    }

    /// Resolve a registry reference such as `"mobit:sigma"`.
    #[staticmethod]
    fn named(reference: &str) -> PyResult<Self> {
        registry::resolve_state(reference).map(|inner| Self { inner }).map_err(|e| py_err!(e))
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.system().field().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.system().dim()
    }

    #[getter]
    fn coeffs(&self) -> Vec<u16> {
        self.inner.vector().values().to_vec()
    }

    /// Ket notation over the given factor dimensions (default: one factor).
    #[pyo3(signature = (dims=None))]
    fn ket(&self, dims: Option<Vec<usize>>) -> String {
        let dims = dims.unwrap_or_else(|| vec![self.dim()]);
        composite::ket_notation(self.inner.vector(), &dims)
    }

    fn projectively_equal(&self, other: &PyState) -> bool {
        self.inner.projectively_equal(&other.inner)
    }

    /// Apply an invertible operator given as rows of element indices.
    fn evolve(&self, rows: Vec<Vec<u64>>) -> PyResult<PyState> {
        let op = Matrix::from_rows(self.inner.system().field(), &rows).map_err(value_error)?;
        modal::evolve(&self.inner, &op).map(|inner| PyState { inner }).map_err(|e| py_err!(e))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(|inner| Self { inner }).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("State({:?}, {:?})", self.field(), self.coeffs())
    }
}

/// A measurement: a basis of effects with outcome labels.
#[pyclass(module = "modalqt", name = "Measurement", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMeasurement {
    inner: MeasurementBasis,
}

#[pymethods]
impl PyMeasurement {
    /// Resolve a registry reference such as `"mobit:Z"` or `"bell"`.
    #[staticmethod]
    fn named(reference: &str) -> PyResult<Self> {
        registry::resolve_measurement(reference).map(|inner| Self { inner }).map_err(|e| py_err!(e))
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// Outcome labels possible for `state`.
    fn possible(&self, state: &PyState) -> PyResult<Vec<String>> {
        Ok(modal::possible_outcomes(&state.inner, &self.inner).map_err(|e| py_err!(e))?.outcomes)
    }

    fn __repr__(&self) -> String {
        format!("Measurement({:?}, {:?})", self.name(), self.labels())
    }
}

fn state_arg(state: &Bound<'_, PyAny>) -> PyResult<StateVector> {
    if let Ok(s) = state.cast::<PyState>() {
        return Ok(s.get().inner.clone());
    }
    registry::resolve_state(&state.extract::<String>()?).map_err(|e| py_err!(e))
}

fn measurement_arg(m: &Bound<'_, PyAny>) -> PyResult<MeasurementBasis> {
    if let Ok(b) = m.cast::<PyMeasurement>() {
        return Ok(b.get().inner.clone());
    }
    registry::resolve_measurement(&m.extract::<String>()?).map_err(|e| py_err!(e))
}

/// Possible outcomes of `measurement` on `state`.
#[pyfunction]
fn possible(state: &Bound<'_, PyAny>, measurement: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
    let set = modal::possible_outcomes(&state_arg(state)?, &measurement_arg(measurement)?).map_err(|e| py_err!(e))?;
    Ok(set.outcomes)
}

/// Product/entangled counts of `F^d1 ⊗ F^d2`.
#[pyfunction]
#[pyo3(signature = (field, d1, d2, projective=false, bound=DEFAULT_STATE_BOUND))]
fn census(py: Python<'_>, field: &str, d1: usize, d2: usize, projective: bool, bound: u64) -> PyResult<Py<PyAny>> {
    let field: FieldSpec = field.parse().map_err(|e: mqt_core::field::FieldError| py_err!(modal::ModalError::from(e)))?;
    let pair = SystemSpec::new(&field, d1)
        .and_then(|a| SystemSpec::new(&field, d2).map(|b| (a, b)))
        .map_err(|e| py_err!(e))?;
    let system = CompositeSystem::pair(&pair.0, &pair.1).map_err(|e| py_err!(e))?;
    let c = composite::census(&system, &Bipartition::at(1), projective, bound).map_err(|e| py_err!(e))?;
    to_py(py, &c)
}

/// Basis (RREF rows) of the mixed state of factor `keep` of a two-factor
/// state with equal factor dimensions.
#[pyfunction]
#[pyo3(signature = (state, keep=1))]
fn reduce(state: &Bound<'_, PyAny>, keep: usize) -> PyResult<Vec<Vec<u16>>> {
    let s = state_arg(state)?;
    let n = s.system().dim();
    let d = (2..=n).find(|d| d * d >= n).filter(|d| d * d == n).ok_or_else(|| value_error(format!("dimension {n} is not a square")))?;
    let factor = SystemSpec::new(s.system().field(), d).map_err(|e| py_err!(e))?;
    let pair = CompositeSystem::pair(&factor, &factor).map_err(|e| py_err!(e))?;
    let basis = MeasurementBasis::computational(&factor);
    let mixed = composite::reduce(&pair, &s, keep, &basis).map_err(|e| py_err!(e))?;
    Ok(mixed.subspace().basis_vectors().iter().map(|v| v.values().to_vec()).collect())
}

/// X/Y/Z joint-outcome table of a two-mobit state and the hidden-variable
/// search over it.
#[pyfunction]
#[pyo3(signature = (state="bell:S".to_string(), bound=DEFAULT_ASSIGNMENT_BOUND))]
fn bell(py: Python<'_>, state: String, bound: u64) -> PyResult<Py<PyAny>> {
    let m = modal::mobit();
    let pair = CompositeSystem::pair(&m.system, &m.system).map_err(|e| py_err!(e))?;
    let s = registry::resolve_state(&state).map_err(|e| py_err!(e))?;
    let menu = [m.x.clone(), m.y.clone(), m.z.clone()];
    let table = nonclassical::joint_outcome_table(&pair, &s, &menu, &menu).map_err(|e| py_err!(e))?;
    let search = nonclassical::lhv_exclusion_search(&table, bound).map_err(|e| py_err!(e))?;
    to_py(py, &serde_json::json!({ "table": table, "search": search }))
}

/// No-cloning witnesses for every mobit input pair and the exhaustive
/// operator search.
#[pyfunction]
fn no_cloning(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let m = modal::mobit();
    let sweep = nonclassical::no_cloning_sweep(&m.system, &m.zero, DEFAULT_STATE_BOUND).map_err(|e| py_err!(e))?;
    let search = nonclassical::cloning_machine_search(&m.system, DEFAULT_OPERATOR_BOUND).map_err(|e| py_err!(e))?;
    to_py(py, &serde_json::json!({ "witnesses": sweep, "search": search }))
}

/// Superdense-coding transcript for a two-bit message such as `"10"`.
#[pyfunction]
fn superdense(py: Python<'_>, message: &str) -> PyResult<Py<PyAny>> {
    let msg: Message = message.parse().map_err(value_error)?;
    to_py(py, &protocols::superdense_send(msg).map_err(|e| py_err!(e))?)
}

/// Teleportation transcripts for every possible Bell outcome.
#[pyfunction]
fn teleport(py: Python<'_>, state: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let psi = state_arg(state)?;
    to_py(py, &protocols::teleport_sweep(&psi).map_err(|e| py_err!(e))?)
}

#[pymodule]
fn modalqt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyMeasurement>()?;
    m.add_function(wrap_pyfunction!(possible, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(bell, m)?)?;
    m.add_function(wrap_pyfunction!(no_cloning, m)?)?;
    m.add_function(wrap_pyfunction!(superdense, m)?)?;
    m.add_function(wrap_pyfunction!(teleport, m)?)?;
    Ok(())
}
