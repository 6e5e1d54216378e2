//! Python bindings: spectra, profile solves, certificates, tables and the
//! claim report.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use cone_certify::catalog::{self, Side};
use cone_certify::certifier;
use cone_certify::claims;
use cone_certify::factors;
use cone_certify::products;
use cone_certify::profile::{self, SolverSettings};
use cone_certify::qmodel::{QModel, Spectrum as CoreSpectrum};
use cone_certify::table;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Deserializes a serde value into the Python object tree via the stdlib
/// json module.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(value).map_err(runtime_err)?;
    py.import("json")?.call_method1("loads", (s,))
}

fn parse_side(side: &str) -> PyResult<Side> {
    match side {
        "plus" | "+" => Ok(Side::Plus),
        "minus" | "-" => Ok(Side::Minus),
        _ => Err(value_err("side must be 'plus' or 'minus'")),
    }
}

/// Trace-free eigenvalue multiset of a shape operator.
#[pyclass(name = "Spectrum", from_py_object)]
#[derive(Clone)]
struct PySpectrum {
    inner: CoreSpectrum,
}

#[pymethods]
impl PySpectrum {
    #[new]
    fn new(entries: Vec<(f64, u32)>) -> PyResult<Self> {
        Ok(Self {
            inner: CoreSpectrum::new(entries).map_err(value_err)?,
        })
    }

    #[getter]
    fn entries(&self) -> Vec<(f64, u32)> {
        self.inner.entries().to_vec()
    }

    fn alpha_sq(&self) -> f64 {
        self.inner.alpha_sq()
    }

    fn dimension(&self) -> u32 {
        self.inner.dimension()
    }

    fn __repr__(&self) -> String {
        format!("Spectrum({:?})", self.inner.entries())
    }
}

/// A cone certificate with the numbers that justify its verdict.
#[pyclass(name = "Certificate", from_py_object)]
#[derive(Clone)]
struct PyCertificate {
    inner: certifier::Certificate,
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn verdict(&self) -> String {
        self.inner.verdict.to_string()
    }

    #[getter]
    fn minimizing(&self) -> bool {
        self.inner.verdict == certifier::Verdict::Minimizing
    }

    #[getter]
    fn cone_dim(&self) -> u32 {
        self.inner.cone_dim
    }

    #[getter]
    fn alpha_sq_used(&self) -> f64 {
        self.inner.alpha_sq_used
    }

    #[getter]
    fn theta0_upper_deg(&self) -> Option<f64> {
        self.inner.theta0_upper.map(f64::to_degrees)
    }

    #[getter]
    fn threshold_deg(&self) -> f64 {
        self.inner.threshold.to_degrees()
    }

    #[getter]
    fn margin_rad(&self) -> f64 {
        self.inner.margin
    }

    #[getter]
    fn q_model_used(&self) -> Option<String> {
        self.inner.q_model_used.clone()
    }

    #[getter]
    fn tan_phi_sq_lb(&self) -> Option<f64> {
        self.inner.tan_phi_sq_lb
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(runtime_err)
    }

    /// Re-derives the certificate from its subject and checks consistency.
    fn recheck(&self) -> PyResult<bool> {
        let report = certifier::recheck_certificate(&self.inner, &SolverSettings::from_env())
            .map_err(runtime_err)?;
        Ok(report.ok)
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(verdict={}, cone_dim={}, theta0_deg={:?})",
            self.inner.verdict,
            self.inner.cone_dim,
            self.inner.theta0_upper.map(f64::to_degrees)
        )
    }
}

fn build_model(
    model: &str,
    alpha2: Option<f64>,
    spectrum: Option<&PySpectrum>,
    dim: u32,
    ell: Option<u32>,
) -> PyResult<QModel> {
    match model {
        "exact" => {
            let s = spectrum.ok_or_else(|| value_err("model 'exact' requires a spectrum"))?;
            Ok(QModel::exact(s.inner.clone()))
        }
        "F" | "f" => {
            let a = alpha2.ok_or_else(|| value_err("model 'F' requires alpha2"))?;
            QModel::f_bound(a.sqrt(), ell.unwrap_or_else(|| dim.saturating_sub(1)))
                .map_err(value_err)
        }
        "exp" => {
            let a = alpha2.ok_or_else(|| value_err("model 'exp' requires alpha2"))?;
            QModel::exp_bound(a.sqrt()).map_err(value_err)
        }
        _ => Err(value_err("model must be 'exact', 'F' or 'exp'")),
    }
}

/// Integrates the fastest-vanishing profile for one model; returns a dict
/// with the outcome and solver diagnostics.
#[pyfunction]
#[pyo3(signature = (dim, alpha2=None, model="exp", spectrum=None, ell=None))]
fn solve_angle<'py>(
    py: Python<'py>,
    dim: u32,
    alpha2: Option<f64>,
    model: &str,
    spectrum: Option<PySpectrum>,
    ell: Option<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    let m = build_model(model, alpha2, spectrum.as_ref(), dim, ell)?;
    let r = profile::solve_profile(&m, dim, &SolverSettings::from_env()).map_err(runtime_err)?;
    to_py(py, &r)
}

/// Certified vanishing-angle upper bound (best strategy) in radians, with
/// the strategy tag.
#[pyfunction]
#[pyo3(signature = (dim, alpha2, spectrum=None))]
fn theta_upper_bound(
    dim: u32,
    alpha2: f64,
    spectrum: Option<PySpectrum>,
) -> PyResult<(f64, String)> {
    match profile::theta_upper_bound(
        dim,
        alpha2,
        spectrum.as_ref().map(|s| &s.inner),
        &SolverSettings::from_env(),
    ) {
        Ok(b) => Ok((b.theta, b.strategy.tag().to_string())),
        Err(e) => Err(runtime_err(e)),
    }
}

/// Descriptor of one focal submanifold as a dict.
#[pyfunction]
#[pyo3(signature = (g, m1, m2, side="plus"))]
fn focal_descriptor<'py>(
    py: Python<'py>,
    g: u8,
    m1: u32,
    m2: u32,
    side: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let d = catalog::focal_descriptor(g, m1, m2, parse_side(side)?).map_err(value_err)?;
    to_py(py, &d)
}

#[pyfunction]
#[pyo3(signature = (g, m1, m2, side="plus"))]
fn certify_focal(g: u8, m1: u32, m2: u32, side: &str) -> PyResult<PyCertificate> {
    let cert =
        certifier::certify_focal_cone(g, m1, m2, parse_side(side)?, &SolverSettings::from_env())
            .map_err(value_err)?;
    Ok(PyCertificate { inner: cert })
}

#[pyfunction]
fn certify_union(g: u8, m1: u32, m2: u32) -> PyResult<PyCertificate> {
    let cert = certifier::certify_focal_union(g, m1, m2, &SolverSettings::from_env())
        .map_err(value_err)?;
    Ok(PyCertificate { inner: cert })
}

/// Certifies the cone over a minimal product given a factor list in the
/// compact grammar, e.g. `"g=4,m1=1,m2=2,side=plus; g=3,m=2; sphere=4"`.
#[pyfunction]
fn certify_product(factors: &str) -> PyResult<PyCertificate> {
    let parsed = factors::parse_factor_list(factors).map_err(value_err)?;
    let cert = certifier::certify_product(parsed, &SolverSettings::from_env())
        .map_err(value_err)?;
    Ok(PyCertificate { inner: cert })
}

/// Minimal-product quantities (weights, shape-norm supremum, normal-radius
/// bound) as a dict.
#[pyfunction]
fn minimal_product<'py>(py: Python<'py>, factors: &str) -> PyResult<Bound<'py, PyAny>> {
    let parsed = factors::parse_factor_list(factors).map_err(value_err)?;
    let spec = products::minimal_product(parsed).map_err(value_err)?;
    to_py(py, &spec)
}

/// Vanishing-angle upper bounds over a grid; dict with `dims`, `alpha_sqs`
/// and `cells_deg` (None cells mean no vanishing angle).
#[pyfunction]
fn angle_table<'py>(
    py: Python<'py>,
    dims: Vec<u32>,
    alpha_sqs: Vec<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let t = table::generate_angle_table(&dims, &alpha_sqs, &SolverSettings::from_env())
        .map_err(value_err)?;
    to_py(py, &t.to_json())
}

/// Runs the aggregated claim report; dict with `claims` and `all_pass`.
#[pyfunction]
fn verify_claims<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let report = claims::verify_claims(&SolverSettings::from_env()).map_err(runtime_err)?;
    to_py(py, &report)
}

#[pyfunction]
fn clifford_delta(m: u32) -> PyResult<u64> {
    if m == 0 {
        return Err(value_err("m must be >= 1"));
    }
    Ok(catalog::clifford_delta(m))
}

/// `(m1, m2, provenance)` tuples of the g = 4 families with m1 + m2 <= max_sum.
#[pyfunction]
fn enumerate_g4_families(max_sum: u32) -> Vec<(u32, u32, String)> {
    catalog::enumerate_g4_families(max_sum)
        .into_iter()
        .map(|f| {
            let tag = match f.provenance {
                catalog::Provenance::OtFkm => "OT-FKM",
                catalog::Provenance::HomogeneousExceptional => "homogeneous-exceptional",
                catalog::Provenance::LowGFamily => "g<=3-or-6 family",
            };
            (f.m1, f.m2, tag.to_string())
        })
        .collect()
}

/// Hypercone classification predicate; returns (minimizing, strictly).
#[pyfunction]
fn wang_minimizing(g: u8, m1: u32, m2: u32, n: u32) -> PyResult<(bool, bool)> {
    let v = catalog::wang_minimizing(g, m1, m2, n).map_err(value_err)?;
    Ok((v.minimizing, v.strictly_minimizing))
}

/// Family catalog (both sides of every family) as a dict.
#[pyfunction]
fn catalog_dump<'py>(py: Python<'py>, max_sum: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &catalog::catalog_json(max_sum))
}

#[pymodule]
fn cone_certify_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpectrum>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(solve_angle, m)?)?;
    m.add_function(wrap_pyfunction!(theta_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(focal_descriptor, m)?)?;
    m.add_function(wrap_pyfunction!(certify_focal, m)?)?;
    m.add_function(wrap_pyfunction!(certify_union, m)?)?;
    m.add_function(wrap_pyfunction!(certify_product, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_product, m)?)?;
    m.add_function(wrap_pyfunction!(angle_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claims, m)?)?;
    m.add_function(wrap_pyfunction!(clifford_delta, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_g4_families, m)?)?;
    m.add_function(wrap_pyfunction!(wang_minimizing, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_dump, m)?)?;
    Ok(())
}
