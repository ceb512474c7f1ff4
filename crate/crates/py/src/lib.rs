//! Python bindings: `import mixsq`.

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use ::mixsq as core;
use core::survey::{self, Source};
use core::{DomainFilter, Error, FormSpec, MixedFormId, Mode, Survey};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Width(_) => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn form_spec(spec: &str) -> PyResult<FormSpec> {
    spec.parse().map_err(to_py)
}

/// A representation `n = form(x, y, z)`.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "mixsq")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Certificate {
    inner: core::Certificate,
}

#[pymethods]
impl Certificate {
    #[new]
    fn new(form: &str, n: u64, x: i64, y: i64, z: i64) -> PyResult<Self> {
        let form = form.parse().map_err(to_py)?;
        Ok(Self { inner: core::Certificate { form, n, x, y, z } })
    }

    #[getter]
    fn form(&self) -> &'static str {
        self.inner.form.name()
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n
    }

    #[getter]
    fn x(&self) -> i64 {
        self.inner.x
    }

    #[getter]
    fn y(&self) -> i64 {
        self.inner.y
    }

    #[getter]
    fn z(&self) -> i64 {
        self.inner.z
    }

    fn verify(&self) -> PyResult<bool> {
        self.inner.verify().map_err(to_py)
    }

    fn to_json(&self) -> String {
        // field order form, n, x, y, z; identical to the CLI's --json output
        format!(
            r#"{{"form":"{}","n":{},"x":{},"y":{},"z":{}}}"#,
            self.inner.form, self.inner.n, self.inner.x, self.inner.y, self.inner.z
        )
    }

    fn __repr__(&self) -> String {
        let c = &self.inner;
        format!("Certificate(form={:?}, n={}, x={}, y={}, z={})", c.form.name(), c.n, c.x, c.y, c.z)
    }
}

#[pyclass(frozen, get_all, module = "mixsq")]
struct RangeReport {
    entry: String,
    source: String,
    lo: u64,
    hi: u64,
    verified: u64,
    counterexamples: Vec<u64>,
    mode: String,
    wall_ms: u128,
}

#[pymethods]
impl RangeReport {
    fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn __repr__(&self) -> String {
        format!(
            "RangeReport(entry={:?}, lo={}, hi={}, verified={}, counterexamples={})",
            self.entry,
            self.lo,
            self.hi,
            self.verified,
            self.counterexamples.len()
        )
    }
}

impl From<core::RangeReport> for RangeReport {
    fn from(r: core::RangeReport) -> Self {
        Self {
            source: r.entry.source.name().to_string(),
            entry: r.entry.name,
            lo: r.lo,
            hi: r.hi,
            verified: r.verified,
            counterexamples: r.counterexamples,
            mode: r.mode.name().to_string(),
            wall_ms: r.wall_time.as_millis(),
        }
    }
}

#[pyfunction]
fn triangular(i: i64) -> PyResult<u64> {
    core::triangular(i).map_err(to_py)
}

#[pyfunction]
fn isqrt(m: u64) -> u64 {
    core::isqrt(m)
}

#[pyfunction]
fn is_square(m: u64) -> bool {
    core::is_square(m)
}

#[pyfunction]
fn strip_fours(m: u64) -> PyResult<(u32, u64)> {
    core::strip_fours(m).map_err(to_py)
}

#[pyfunction]
fn is_three_square_feasible(m: u64) -> bool {
    core::is_three_square_feasible(m)
}

#[pyfunction]
fn two_squares(m: u64) -> Option<(u64, u64)> {
    core::two_squares(m)
}

#[pyfunction]
fn three_squares(m: u64) -> PyResult<(u64, u64, u64)> {
    let r = core::three_squares(m).map_err(to_py)?;
    Ok((r.x, r.y, r.z))
}

#[pyfunction]
fn jacobi_transform(x: i64, y: i64, z: i64) -> PyResult<(i64, i64, i64)> {
    let img = core::jacobi_transform(core::SignedTriple::new(x, y, z)).map_err(to_py)?;
    Ok((img.s, img.u, img.v))
}

#[pyfunction]
fn align_mod3(x: i64, y: i64, z: i64) -> PyResult<(i64, i64, i64)> {
    let t = core::align_mod3(core::SignedTriple::new(x, y, z)).map_err(to_py)?;
    Ok((t.x, t.y, t.z))
}

/// Names of the five mixed forms, e.g. `"4x2+2t+t"`.
#[pyfunction]
fn forms() -> Vec<&'static str> {
    MixedFormId::ALL.iter().map(|f| f.name()).collect()
}

#[pyfunction]
fn represent(form: &str, n: u64) -> PyResult<Certificate> {
    let form: MixedFormId = form.parse().map_err(to_py)?;
    core::represent(form, n).map(|inner| Certificate { inner }).map_err(to_py)
}

#[pyfunction]
fn rep_eps(n: u64, eps: u8) -> PyResult<Certificate> {
    core::rep_eps(n, eps).map(|inner| Certificate { inner }).map_err(to_py)
}

#[pyfunction]
fn verify(cert: &Certificate) -> PyResult<bool> {
    cert.verify()
}

#[pyfunction]
fn exists(spec: &str, n: u64) -> PyResult<bool> {
    Ok(form_spec(spec)?.exists(n))
}

#[pyfunction]
fn count(spec: &str, n: u64) -> PyResult<u64> {
    Ok(form_spec(spec)?.count(n))
}

#[pyfunction]
#[pyo3(signature = (spec, n, limit = 10))]
fn witnesses(spec: &str, n: u64, limit: usize) -> PyResult<Vec<(i64, i64, i64)>> {
    let list = form_spec(spec)?.witnesses(n, limit);
    Ok(list.witnesses.into_iter().map(|[x, y, z]| (x, y, z)).collect())
}

#[pyfunction]
#[pyo3(signature = (spec, lo, hi, odd_only = false))]
fn first_counterexample(spec: &str, lo: u64, hi: u64, odd_only: bool) -> PyResult<Option<u64>> {
    if lo > hi {
        return Err(PyValueError::new_err("lo must not exceed hi"));
    }
    let filter = if odd_only { DomainFilter::PositiveOdd } else { DomainFilter::All };
    Ok(form_spec(spec)?.first_counterexample(lo, hi, filter))
}

fn engine(jobs: usize) -> PyResult<Survey> {
    Survey::with_jobs(jobs).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (lo, hi, mode = "constructive", jobs = 1))]
fn verify_theorem2_range(py: Python<'_>, lo: u64, hi: u64, mode: &str, jobs: usize) -> PyResult<Vec<RangeReport>> {
    let mode: Mode = mode.parse().map_err(to_py)?;
    let engine = engine(jobs)?;
    let reports = py.detach(|| engine.verify_theorem2_range(lo, hi, mode)).map_err(to_py)?;
    Ok(reports.into_iter().map(Into::into).collect())
}

#[pyfunction]
#[pyo3(signature = (lo, hi, source = None, jobs = 1))]
fn verify_catalog(
    py: Python<'_>,
    lo: u64,
    hi: u64,
    source: Option<&str>,
    jobs: usize,
) -> PyResult<Vec<RangeReport>> {
    let source: Option<Source> = source.map(str::parse).transpose().map_err(to_py)?;
    let engine = engine(jobs)?;
    let reports = py.detach(|| engine.verify_catalog(source, lo, hi)).map_err(to_py)?;
    Ok(reports.into_iter().map(Into::into).collect())
}

#[pyfunction]
fn negative_control(py: Python<'_>, lo: u64, hi: u64) -> PyResult<RangeReport> {
    py.detach(|| survey::negative_control(lo, hi)).map(Into::into).map_err(to_py)
}

#[pymodule(name = "mixsq")]
fn mixsq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MAX_N", core::MAX_N)?;
    m.add_class::<Certificate>()?;
    m.add_class::<RangeReport>()?;
    m.add_function(wrap_pyfunction!(triangular, m)?)?;
    m.add_function(wrap_pyfunction!(isqrt, m)?)?;
    m.add_function(wrap_pyfunction!(is_square, m)?)?;
    m.add_function(wrap_pyfunction!(strip_fours, m)?)?;
    m.add_function(wrap_pyfunction!(is_three_square_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(two_squares, m)?)?;
    m.add_function(wrap_pyfunction!(three_squares, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_transform, m)?)?;
    m.add_function(wrap_pyfunction!(align_mod3, m)?)?;
    m.add_function(wrap_pyfunction!(forms, m)?)?;
    m.add_function(wrap_pyfunction!(represent, m)?)?;
    m.add_function(wrap_pyfunction!(rep_eps, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(exists, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(first_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem2_range, m)?)?;
    m.add_function(wrap_pyfunction!(verify_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(negative_control, m)?)?;
    Ok(())
}
