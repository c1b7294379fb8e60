//! Python module `polychain`: convex polytopes and mechanism checks.

use ::polychain::kernel::{self, HRep, Polytope as Inner, DEFAULT_EPS};
use ::polychain::mech::{run_check, CheckOptions, MechanismFile};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Bounded convex polytope in 1 to 6 dimensions.
#[pyclass(name = "Polytope", module = "polychain", frozen, skip_from_py_object)]
struct Polytope(Inner);

#[pymethods]
impl Polytope {
    /// Convex hull of points.
    #[staticmethod]
    #[pyo3(signature = (points, eps = DEFAULT_EPS))]
    fn from_points(points: Vec<Vec<f64>>, eps: f64) -> PyResult<Self> {
        let dim = points.first().map_or(0, Vec::len);
        Inner::from_points(dim, points, eps).map(Self).map_err(err)
    }

    /// Solution set of `a . x <= b` for each `(a, b)` row.
    #[staticmethod]
    #[pyo3(signature = (rows, eps = DEFAULT_EPS))]
    fn from_halfspaces(rows: Vec<(Vec<f64>, f64)>, eps: f64) -> PyResult<Self> {
        let dim = rows.first().map_or(0, |r| r.0.len());
        let h = HRep::from_rows(dim, &rows).map_err(err)?;
        Inner::from_hrep(h, eps).map(Self).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn vertices(&self) -> Vec<Vec<f64>> {
        self.0.vertices().to_vec()
    }

    fn halfspaces(&self) -> Vec<(Vec<f64>, f64)> {
        self.0.halfspaces().iter().map(|h| (h.normal().to_vec(), h.offset())).collect()
    }

    fn support(&self, direction: Vec<f64>) -> PyResult<f64> {
        kernel::support(&self.0, &direction).map_err(err)
    }

    fn contains_point(&self, x: Vec<f64>) -> bool {
        self.0.contains_point(&x)
    }

    fn minkowski_sum(&self, other: &Polytope) -> PyResult<Self> {
        kernel::minkowski_sum(&self.0, &other.0).map(Self).map_err(err)
    }

    /// `None` when the intersection is empty.
    fn intersect(&self, other: &Polytope) -> PyResult<Option<Self>> {
        Ok(kernel::intersect(&self.0, &other.0).map_err(err)?.map(Self))
    }

    #[pyo3(signature = (inner, eps = DEFAULT_EPS))]
    fn contains(&self, inner: &Polytope, eps: f64) -> PyResult<bool> {
        kernel::contains(&self.0, &inner.0, eps).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, vertices={}, halfspaces={})",
            self.0.dim(),
            self.0.vertices().len(),
            self.0.halfspaces().len()
        )
    }
}

/// Check a mechanism file. Returns a dict with the verdict, margin, exit code
/// and the plain-text report.
#[pyfunction]
#[pyo3(signature = (path, eps = None, reduction_point = None))]
fn check<'py>(
    py: Python<'py>,
    path: &str,
    eps: Option<f64>,
    reduction_point: Option<[f64; 3]>,
) -> PyResult<Bound<'py, PyDict>> {
    let file = MechanismFile::load(path).map_err(err)?;
    let opts = CheckOptions {
        eps,
        reduction_point,
        ..CheckOptions::default()
    };
    let r = run_check(&file, &opts).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let d = PyDict::new(py);
    d.set_item("verdict", r.verdict.label())?;
    d.set_item("margin", r.margin())?;
    d.set_item("exit_code", r.exit_code())?;
    d.set_item("chain", &r.chain)?;
    d.set_item("report", r.to_string())?;
    Ok(d)
}

#[pymodule]
fn polychain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polytope>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
