//! Python bindings for `cuspfill`.

use cuspfill::filling;
use cuspfill::{verify, Complex64, Error, Slope, TheoremInput};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Flat cusp torus with translations `tau_alpha`, `tau_beta` at height `height`.
#[pyclass(name = "CuspShape", frozen, from_py_object)]
#[derive(Clone)]
struct PyCuspShape {
    inner: cuspfill::CuspShape,
}

#[pymethods]
impl PyCuspShape {
    #[new]
    fn new(tau_alpha: Complex64, tau_beta: Complex64, height: f64) -> PyResult<Self> {
        cuspfill::CuspShape::new(tau_alpha, tau_beta, height)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[getter]
    fn tau_alpha(&self) -> Complex64 {
        self.inner.tau_alpha()
    }

    #[getter]
    fn tau_beta(&self) -> Complex64 {
        self.inner.tau_beta()
    }

    #[getter]
    fn height(&self) -> f64 {
        self.inner.height()
    }

    fn flat_length(&self, p: i64, q: i64) -> PyResult<f64> {
        Ok(self.inner.flat_length(Slope::new(p, q).map_err(py_err)?))
    }

    fn normalized_length(&self, p: i64, q: i64) -> PyResult<f64> {
        Ok(self
            .inner
            .normalized_length(Slope::new(p, q).map_err(py_err)?))
    }

    fn torus_area(&self) -> f64 {
        self.inner.torus_area()
    }

    fn systole(&self) -> f64 {
        self.inner.systole()
    }

    fn injectivity_radius(&self) -> f64 {
        self.inner.injectivity_radius()
    }

    fn __repr__(&self) -> String {
        let (a, b) = (self.inner.tau_alpha(), self.inner.tau_beta());
        format!(
            "CuspShape(({}+{}j), ({}+{}j), {})",
            a.re,
            a.im,
            b.re,
            b.im,
            self.inner.height()
        )
    }
}

/// Outcome of a seeded verification run.
#[pyclass(name = "TrialReport", frozen, get_all)]
struct PyTrialReport {
    trials: u64,
    failures: u64,
    worst_margin: f64,
    seed: u64,
    wall_ms: Option<u64>,
}

#[pymethods]
impl PyTrialReport {
    fn passed(&self) -> bool {
        self.failures == 0
    }

    fn __repr__(&self) -> String {
        format!(
            "TrialReport(trials={}, failures={}, worst_margin={}, seed={})",
            self.trials, self.failures, self.worst_margin, self.seed
        )
    }
}

impl From<verify::TrialReport> for PyTrialReport {
    fn from(r: verify::TrialReport) -> Self {
        Self {
            trials: r.trials,
            failures: r.failures,
            worst_margin: r.worst_margin,
            seed: r.seed,
            wall_ms: r.wall_ms,
        }
    }
}

/// `(epsilon, r_eps)` for a closed surface of the given genus.
#[pyfunction]
fn margulis(genus: i64) -> PyResult<(f64, f64)> {
    filling::margulis(genus)
        .map(|m| (m.epsilon, m.r_eps))
        .map_err(py_err)
}

/// Smallest twist power for which the worst-case bounds apply.
#[pyfunction]
fn min_admissible_twist(genus: i64) -> PyResult<i64> {
    filling::min_admissible_twist(genus).map_err(py_err)
}

/// Length window for the core curve given normalized length `l`.
#[pyfunction]
fn hk_window(l: f64) -> PyResult<(f64, f64)> {
    filling::hk_window(l).map(|b| (b.lo, b.hi)).map_err(py_err)
}

/// Worst-case `(lo, hi)` core-curve length bounds.
#[pyfunction]
fn theorem_bounds(genus: i64, n: i64) -> PyResult<(f64, f64)> {
    let input = TheoremInput::new(genus, n).map_err(py_err)?;
    filling::theorem_bounds(input)
        .map(|b| (b.lo, b.hi))
        .map_err(py_err)
}

/// Simplified `(lo, hi)` bounds for genus >= 3 and n >= 14.
#[pyfunction]
fn intro_bounds(genus: i64, n: i64) -> PyResult<(f64, f64)> {
    let input = TheoremInput::new(genus, n).map_err(py_err)?;
    filling::intro_bounds(input)
        .map(|b| (b.lo, b.hi))
        .map_err(py_err)
}

/// Length bounds, using the exact normalized length when `shape` is given.
#[pyfunction]
#[pyo3(signature = (genus, n, shape=None, outward=false))]
fn pipeline(genus: i64, n: i64, shape: Option<PyCuspShape>, outward: bool) -> PyResult<(f64, f64)> {
    let input = TheoremInput::new(genus, n).map_err(py_err)?;
    let report = filling::pipeline(input, shape.as_ref().map(|s| &s.inner)).map_err(py_err)?;
    let b = report
        .interval()
        .expect("admissible report carries lengths");
    let b = if outward {
        b.widened(filling::OUTWARD_ULPS)
    } else {
        b
    };
    Ok((b.lo, b.hi))
}

/// Full randomized campaign: chains, shadows and crossings per trial.
#[pyfunction]
#[pyo3(signature = (trials, seed=0))]
fn run_campaign(py: Python<'_>, trials: u64, seed: u64) -> PyTrialReport {
    py.detach(|| verify::run_campaign_timed(trials, seed))
        .into()
}

#[pyfunction]
#[pyo3(signature = (trials, seed=0))]
fn lemma_campaign(py: Python<'_>, trials: u64, seed: u64) -> PyTrialReport {
    py.detach(|| verify::lemma_campaign(trials, seed)).into()
}

#[pyfunction]
#[pyo3(signature = (trials, seed=0))]
fn shadow_sweep(py: Python<'_>, trials: u64, seed: u64) -> PyTrialReport {
    py.detach(|| verify::shadow_sweep(trials, seed)).into()
}

#[pyfunction]
#[pyo3(signature = (trials, seed=0))]
fn crossing_sweep(py: Python<'_>, trials: u64, seed: u64) -> PyTrialReport {
    py.detach(|| verify::crossing_sweep(trials, seed)).into()
}

/// `(min_area, floor)` from a grid scan of tori with injectivity radius `r`.
#[pyfunction]
#[pyo3(signature = (r, grid=400))]
fn min_torus_area(py: Python<'_>, r: f64, grid: usize) -> PyResult<(f64, f64)> {
    py.detach(|| verify::min_torus_area_scan(r, grid))
        .map(|s| (s.min_area, s.floor))
        .map_err(py_err)
}

#[pymodule]
fn pycuspfill(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCuspShape>()?;
    m.add_class::<PyTrialReport>()?;
    m.add_function(wrap_pyfunction!(margulis, m)?)?;
    m.add_function(wrap_pyfunction!(min_admissible_twist, m)?)?;
    m.add_function(wrap_pyfunction!(hk_window, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(intro_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(run_campaign, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_campaign, m)?)?;
    m.add_function(wrap_pyfunction!(shadow_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(min_torus_area, m)?)?;
    Ok(())
}
