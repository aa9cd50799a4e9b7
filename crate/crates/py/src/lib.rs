//! Python bindings for the qrg library.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use qrg::catalog::{build_group, emit_table as emit, verify_suite, AnyGroup, Config};
use qrg::conj::{verify_conjugacy_theorem, ConjOptions};
use qrg::extpoly::theta_embed;
use qrg::sgroups::{parse_quat_label, Tag};
use qrg::{Error, Quat, Rat};

fn err(e: Error) -> PyErr {
    match e {
        Error::InvalidDescriptor(_) | Error::Parse(_) | Error::InvalidParams(_) | Error::UnknownConstant(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let l = PyList::empty(py);
            for x in a {
                l.append(to_py(py, x)?)?;
            }
            l.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn serial<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &value)
}

fn rat(s: &str) -> PyResult<Rat> {
    s.parse().map_err(err)
}

/// An exact quaternion with cyclotomic coefficients.
#[pyclass(name = "Quat", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyQuat(Quat);

#[pymethods]
impl PyQuat {
    /// Rational coordinates a + bi + cj + dk, given as strings like "1/2".
    #[new]
    #[pyo3(signature = (a="0", b="0", c="0", d="0"))]
    fn new(a: &str, b: &str, c: &str, d: &str) -> PyResult<Self> {
        Ok(PyQuat(Quat::from_rats([rat(a)?, rat(b)?, rat(c)?, rat(d)?])))
    }

    /// Named constants such as `delta`, `zeta(5)` or `-j`.
    #[staticmethod]
    fn named(label: &str) -> PyResult<Self> {
        parse_quat_label(label).map(PyQuat).map_err(err)
    }

    fn __mul__(&self, o: &PyQuat) -> PyQuat {
        PyQuat(&self.0 * &o.0)
    }

    fn __add__(&self, o: &PyQuat) -> PyQuat {
        PyQuat(&self.0 + &o.0)
    }

    fn __neg__(&self) -> PyQuat {
        PyQuat(-&self.0)
    }

    fn conj(&self) -> PyQuat {
        PyQuat(self.0.conj())
    }

    fn inverse(&self) -> PyResult<PyQuat> {
        self.0.inv().map(PyQuat).map_err(err)
    }

    /// The reduced norm, as a rational string when it is rational.
    fn norm(&self) -> String {
        let n = self.0.norm();
        n.to_rat().map(|r| r.to_string()).unwrap_or_else(|| n.to_string())
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    /// Floating approximations of the four real coordinates.
    fn approx(&self) -> Vec<f64> {
        self.0.coords().iter().map(|c| c.to_complex_f64().0).collect()
    }

    fn __repr__(&self) -> String {
        format!("Quat({})", self.0)
    }
}

/// A finite rank-two group built from a descriptor.
#[pyclass(name = "Group", frozen)]
struct PyGroup(AnyGroup);

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (descriptor, closure_cap=40_000))]
    fn new(descriptor: &str, closure_cap: usize) -> PyResult<Self> {
        build_group(descriptor, closure_cap).map(PyGroup).map_err(err)
    }

    #[getter]
    fn descriptor(&self) -> String {
        self.0.descriptor()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn reflection_count(&self) -> PyResult<usize> {
        Ok(self.0.record().map_err(err)?.reflection_count)
    }

    fn record<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        match &self.0 {
            AnyGroup::Ext(e) => serial(py, &e.record()),
            g => serial(py, &g.record().map_err(err)?),
        }
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.0)
    }
}

#[pyfunction]
fn soi_classify<'py>(py: Python<'py>, descriptor: &str) -> PyResult<Bound<'py, PyAny>> {
    serial(py, &qrg::soi::soi_classify(descriptor).map_err(err)?.report())
}

#[pyfunction]
#[pyo3(signature = (theorem, m=None, r=None))]
fn verify_conjugacy<'py>(py: Python<'py>, theorem: &str, m: Option<u32>, r: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let r = r.map(rat).transpose()?;
    serial(py, &verify_conjugacy_theorem(theorem, &ConjOptions { m, r }).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (which, max_m=12))]
fn emit_table<'py>(py: Python<'py>, which: u8, max_m: u32) -> PyResult<Bound<'py, PyAny>> {
    serial(py, &emit(which, &Config { max_m, ..Config::default() }).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (max_m=12, closure_cap=40_000))]
fn verify<'py>(py: Python<'py>, max_m: u32, closure_cap: usize) -> PyResult<Bound<'py, PyAny>> {
    let cfg = Config { max_m, closure_cap, ..Config::default() };
    let rep = py.detach(|| verify_suite(&cfg)).map_err(err)?;
    serial(py, &rep)
}

#[pyfunction]
fn extpoly_is_reflection_group(d: u32, f: u32, k: &str) -> PyResult<bool> {
    let tag = Tag::parse_ambient(k).map_err(err)?;
    Ok(qrg::extpoly::extpoly_is_reflection_group(d, f, tag))
}

/// θ(α,ξ) as four strings, row by row.
#[pyfunction]
fn theta(alpha: &PyQuat, xi: &PyQuat) -> PyResult<Vec<String>> {
    let m = theta_embed(&alpha.0, &xi.0).map_err(err)?;
    Ok(m.e.iter().flatten().map(|q| q.to_string()).collect())
}

#[pymodule]
fn pyqrg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuat>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(soi_classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_conjugacy, m)?)?;
    m.add_function(wrap_pyfunction!(emit_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(extpoly_is_reflection_group, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    Ok(())
}
