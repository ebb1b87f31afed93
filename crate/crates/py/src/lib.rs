//! Python bindings: `import limcycle`.

use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use limcycle::cycles::{distribution as distribution_at, lambda_bands, CurveSet, CycleFinding};
use limcycle::detection::{detection_curve_with, Detector, DEFAULT_TOL};
use limcycle::ode::{verify_prediction, Verification, DEFAULT_ODE_TOL};
use limcycle::{Error, Family};

fn to_py(e: Error) -> PyErr {
    match e.exit_code() {
        2 | 4 => PyValueError::new_err(e.to_string()),
        3 => PyArithmeticError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn family(i: usize) -> PyResult<Family> {
    Family::from_index(i)
        .ok_or_else(|| PyValueError::new_err(format!("family must be 1..=4, got {i}")))
}

/// Constants of the perturbed system. Keyword arguments default to the
/// case study a = 1/3, b = 1/2, n = 12, u = 0.007, v = -0.028.
#[pyclass(name = "SystemParams", module = "limcycle", from_py_object)]
#[derive(Clone)]
struct Params {
    inner: limcycle::SystemParams,
}

#[pymethods]
impl Params {
    #[new]
    #[pyo3(signature = (*, a=None, b=None, u=None, v=None, lambda0=None, epsilon=None, n=None, mu=None, beta=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        a: Option<f64>,
        b: Option<f64>,
        u: Option<f64>,
        v: Option<f64>,
        lambda0: Option<f64>,
        epsilon: Option<f64>,
        n: Option<u32>,
        mu: Option<u32>,
        beta: Option<u32>,
    ) -> PyResult<Self> {
        let d = limcycle::SystemParams::default();
        let mut p = limcycle::SystemParams {
            a: a.unwrap_or(d.a),
            b: b.unwrap_or(d.b),
            u: u.unwrap_or(d.u),
            v: v.unwrap_or(d.v),
            lambda0: lambda0.unwrap_or(d.lambda0),
            epsilon: epsilon.unwrap_or(d.epsilon),
            ..d
        };
        p = limcycle::io::apply_degree(p, n, mu, beta);
        p.validate().map_err(to_py)?;
        Ok(Self { inner: p })
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a
    }
    #[getter]
    fn b(&self) -> f64 {
        self.inner.b
    }
    #[getter]
    fn u(&self) -> f64 {
        self.inner.u
    }
    #[getter]
    fn v(&self) -> f64 {
        self.inner.v
    }
    #[getter]
    fn lambda0(&self) -> f64 {
        self.inner.lambda0
    }
    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon
    }
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }
    #[getter]
    fn mu(&self) -> u32 {
        self.inner.mu
    }
    #[getter]
    fn beta(&self) -> u32 {
        self.inner.beta
    }

    /// H(x, y).
    fn hamiltonian(&self, x: f64, y: f64) -> f64 {
        self.inner.hamiltonian().value(x, y)
    }

    /// Critical energies `(0, 1/b, 1/a, H(A))`.
    fn critical_energies(&self) -> (f64, f64, f64, f64) {
        let e = self.inner.hamiltonian().critical_energies();
        (e.origin, e.heteroclinic, e.homoclinic, e.centers)
    }

    /// `[(label, x, y, kind, energy)]` for the nine finite singular points.
    fn singular_points(&self) -> Vec<(String, f64, f64, String, f64)> {
        self.inner
            .hamiltonian()
            .singular_points()
            .into_iter()
            .map(|s| (s.label.to_string(), s.x, s.y, s.kind.to_string(), s.energy))
            .collect()
    }

    /// Family numbers whose orbits make up the level set `H = h`.
    fn classify(&self, h: f64) -> Vec<usize> {
        self.inner
            .hamiltonian()
            .classify(h)
            .families
            .iter()
            .map(|f| f.index())
            .collect()
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "SystemParams(a={}, b={}, u={}, v={}, lambda0={}, epsilon={}, n={}, mu={}, beta={})",
            p.a, p.b, p.u, p.v, p.lambda0, p.epsilon, p.n, p.mu, p.beta
        )
    }
}

fn params_or_default(p: Option<Params>) -> limcycle::SystemParams {
    p.map(|p| p.inner).unwrap_or_default()
}

/// `(cu, cv, area)` of λ_family at energy `h`; λ = cu·u + cv·v.
#[pyfunction]
#[pyo3(signature = (family_index, h, params=None, tol=DEFAULT_TOL))]
fn lambda_j(
    family_index: usize,
    h: f64,
    params: Option<Params>,
    tol: f64,
) -> PyResult<(f64, f64, f64)> {
    let p = params_or_default(params);
    let s = Detector::new(&p, tol)
        .sample(family(family_index)?, h)
        .map_err(to_py)?;
    Ok((s.cu, s.cv, s.area))
}

/// `[(h, cu, cv, area)]` over a grid of energies.
#[pyfunction]
#[pyo3(signature = (family_index, grid, params=None, tol=DEFAULT_TOL))]
fn detection_table(
    py: Python<'_>,
    family_index: usize,
    grid: Vec<f64>,
    params: Option<Params>,
    tol: f64,
) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    let p = params_or_default(params);
    let fam = family(family_index)?;
    let curve = py
        .detach(|| detection_curve_with(Detector::new(&p, tol), fam, &grid))
        .map_err(to_py)?;
    Ok(curve
        .samples()
        .iter()
        .map(|s| (s.h, s.cu, s.cv, s.area))
        .collect())
}

fn finding_dict<'py>(py: Python<'py>, f: &CycleFinding) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("family", f.family.id.index())?;
    d.set_item("h", f.h_root)?;
    d.set_item("slope", f.slope)?;
    d.set_item("stability", f.stability.to_string())?;
    d.set_item("count", f.count)?;
    d.set_item("near_critical", f.near_critical)?;
    Ok(d)
}

fn sampled(py: Python<'_>, p: &limcycle::SystemParams, tol: f64) -> PyResult<CurveSet> {
    py.detach(|| CurveSet::sample(p, tol)).map_err(to_py)
}

/// Predicted cycles at `lambda0`: one dict per root of λ_j(h) = lambda0.
#[pyfunction]
#[pyo3(signature = (lambda0, params=None, tol=DEFAULT_TOL))]
fn distribution<'py>(
    py: Python<'py>,
    lambda0: f64,
    params: Option<Params>,
    tol: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let p = params_or_default(params);
    let set = sampled(py, &p, tol)?;
    let rep = distribution_at(lambda0, &set).map_err(to_py)?;
    rep.findings.iter().map(|f| finding_dict(py, f)).collect()
}

/// λ intervals of constant cycle pattern, as dicts with `lo`, `hi`,
/// `pattern` (cycles per family) and `total`.
#[pyfunction]
#[pyo3(signature = (params=None, tol=DEFAULT_TOL))]
fn bands<'py>(
    py: Python<'py>,
    params: Option<Params>,
    tol: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let p = params_or_default(params);
    let set = sampled(py, &p, tol)?;
    let bands = py.detach(|| lambda_bands(&set)).map_err(to_py)?;
    bands
        .iter()
        .map(|b| {
            let d = PyDict::new(py);
            d.set_item("lo", b.lo)?;
            d.set_item("hi", b.hi)?;
            d.set_item("pattern", b.pattern.to_vec())?;
            d.set_item("total", b.total)?;
            Ok(d)
        })
        .collect()
}

fn verification_dict<'py>(py: Python<'py>, v: &Verification) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("family", v.family.index())?;
    d.set_item("h_root", v.h_root)?;
    d.set_item("predicted", v.predicted.to_string())?;
    d.set_item("observed", v.observed.map(|s| s.to_string()))?;
    d.set_item("h_star", v.fixed_point.as_ref().map(|f| f.h_star))?;
    d.set_item("derivative", v.fixed_point.as_ref().map(|f| f.derivative))?;
    d.set_item("h_error", v.h_error)?;
    d.set_item("verified", v.verified)?;
    d.set_item("failure", v.failure.clone())?;
    Ok(d)
}

/// Integrates the perturbed flow near every predicted cycle at `lambda0`
/// and reports whether a fixed point of the return map confirms it.
#[pyfunction]
#[pyo3(signature = (lambda0, params=None, epsilon=None, family_index=None, tol=DEFAULT_TOL, ode_tol=DEFAULT_ODE_TOL))]
fn verify<'py>(
    py: Python<'py>,
    lambda0: f64,
    params: Option<Params>,
    epsilon: Option<f64>,
    family_index: Option<usize>,
    tol: f64,
    ode_tol: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let p = params_or_default(params);
    let eps = epsilon.unwrap_or(p.epsilon);
    let only = family_index.map(family).transpose()?;
    let set = sampled(py, &p, tol)?;
    let rep = distribution_at(lambda0, &set).map_err(to_py)?;
    let records = py
        .detach(|| {
            rep.findings
                .iter()
                .filter(|f| only.is_none_or(|o| f.family.id == o))
                .map(|f| verify_prediction(f, &p, eps, ode_tol))
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(to_py)?;
    records.iter().map(|r| verification_dict(py, r)).collect()
}

#[pymodule]
#[pyo3(name = "limcycle")]
fn limcycle_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Params>()?;
    m.add_function(wrap_pyfunction!(lambda_j, m)?)?;
    m.add_function(wrap_pyfunction!(detection_table, m)?)?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(bands, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
