//! Python bindings: Riemann problems and wave-speed estimates, the beta
//! family of advection schemes and von Neumann stability sweeps.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wavebound_core::error::Error;
use wavebound_core::estimators::{self, EstimatorId};
use wavebound_core::euler;
use wavebound_core::fluxes;
use wavebound_core::schemes1d::{self, BetaSpec};
use wavebound_core::schemes2d::SchemeCoefficients2D;
use wavebound_core::vonneumann::{self, DEFAULT_ANGLES, DEFAULT_GRID, DEFAULT_TOLERANCE};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NoConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A beta given as a number or as a scheme name such as `"force"` or
/// `"force-alpha:2"`.
#[derive(FromPyObject)]
enum BetaArg {
    Number(f64),
    Name(String),
}

impl BetaArg {
    fn spec(self) -> PyResult<BetaSpec> {
        let spec = match self {
            BetaArg::Number(b) => BetaSpec::Constant(b),
            BetaArg::Name(s) => s.parse().map_err(to_py)?,
        };
        spec.validate().map_err(to_py)?;
        Ok(spec)
    }
}

#[pyclass(name = "PrimitiveState", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyPrimitiveState(euler::PrimitiveState);

#[pymethods]
impl PyPrimitiveState {
    #[new]
    fn new(rho: f64, u: f64, p: f64) -> PyResult<Self> {
        euler::PrimitiveState::new(rho, u, p).map(Self).map_err(to_py)
    }

    #[getter]
    fn rho(&self) -> f64 {
        self.0.rho
    }

    #[getter]
    fn u(&self) -> f64 {
        self.0.u
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.p
    }

    #[pyo3(signature = (gamma = 1.4))]
    fn sound_speed(&self, gamma: f64) -> PyResult<f64> {
        euler::sound_speed(&self.0, gamma).map_err(to_py)
    }

    /// `(rho, rho u, E)`.
    #[pyo3(signature = (gamma = 1.4))]
    fn conserved(&self, gamma: f64) -> PyResult<(f64, f64, f64)> {
        let q = euler::primitive_to_conserved(&self.0, gamma).map_err(to_py)?;
        Ok((q.rho, q.mom, q.energy))
    }

    #[pyo3(signature = (gamma = 1.4))]
    fn flux(&self, gamma: f64) -> PyResult<(f64, f64, f64)> {
        let f = euler::physical_flux(&self.0, gamma).map_err(to_py)?;
        Ok((f[0], f[1], f[2]))
    }

    fn __repr__(&self) -> String {
        format!("PrimitiveState(rho={}, u={}, p={})", self.0.rho, self.0.u, self.0.p)
    }
}

#[pyclass(name = "RiemannProblem", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyRiemannProblem(euler::RiemannProblem);

#[pymethods]
impl PyRiemannProblem {
    #[new]
    #[pyo3(signature = (left, right, gamma = 1.4))]
    fn new(left: PyPrimitiveState, right: PyPrimitiveState, gamma: f64) -> PyResult<Self> {
        euler::RiemannProblem::new(left.0, right.0, gamma).map(Self).map_err(to_py)
    }

    #[getter]
    fn left(&self) -> PyPrimitiveState {
        PyPrimitiveState(self.0.left)
    }

    #[getter]
    fn right(&self) -> PyPrimitiveState {
        PyPrimitiveState(self.0.right)
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma
    }

    /// `(p_star, u_star)`.
    fn solve_star(&self) -> PyResult<(f64, f64)> {
        let s = euler::solve_star(&self.0).map_err(to_py)?;
        Ok((s.p_star, s.u_star))
    }

    /// `(S_L, S_R)` of the exact solution.
    fn exact_wave_speeds(&self) -> PyResult<(f64, f64)> {
        euler::exact_wave_speeds(&self.0).map_err(to_py)
    }

    /// `(S_L, S_R)` from one of `davis_a`, `davis_b`, `einfeldt`, `batten`, `toro`.
    fn estimate(&self, estimator: &str) -> PyResult<(f64, f64)> {
        let id: EstimatorId = estimator.parse().map_err(to_py)?;
        let pair = id.estimate(&self.0).map_err(to_py)?;
        Ok((pair.s_left, pair.s_right))
    }

    fn __repr__(&self) -> String {
        let (l, r) = (self.0.left, self.0.right);
        format!(
            "RiemannProblem(left=({}, {}, {}), right=({}, {}, {}), gamma={})",
            l.rho, l.u, l.p, r.rho, r.u, r.p, self.0.gamma
        )
    }
}

/// The seven built-in shock-tube problems as `(label, problem)` pairs.
#[pyfunction]
fn reference_problems() -> Vec<(String, PyRiemannProblem)> {
    euler::reference_problems()
        .into_iter()
        .map(|(l, rp)| (l, PyRiemannProblem(rp)))
        .collect()
}

/// Maximal-wave-speed table for the given problems (default: built-ins) as CSV.
#[pyfunction]
#[pyo3(signature = (problems = None))]
fn estimator_table_csv(problems: Option<Vec<(String, PyRiemannProblem)>>) -> String {
    let problems: Vec<(String, euler::RiemannProblem)> = match problems {
        Some(list) => list.into_iter().map(|(l, rp)| (l, rp.0)).collect(),
        None => euler::reference_problems(),
    };
    estimators::estimator_table(problems.iter().map(|(l, rp)| (l.as_str(), rp))).to_csv()
}

#[pyfunction]
fn hll_flux(
    q_l: [f64; 3],
    q_r: [f64; 3],
    f_l: [f64; 3],
    f_r: [f64; 3],
    s_l: f64,
    s_r: f64,
) -> PyResult<[f64; 3]> {
    fluxes::hll_flux(&q_l, &q_r, &f_l, &f_r, s_l, s_r).map_err(to_py)
}

#[pyfunction]
fn rusanov_flux(q_l: [f64; 3], q_r: [f64; 3], f_l: [f64; 3], f_r: [f64; 3], s_hat: f64) -> [f64; 3] {
    fluxes::rusanov_flux(&q_l, &q_r, &f_l, &f_r, s_hat)
}

/// `beta(c)` for a number or scheme name.
#[pyfunction]
fn beta_value(beta: BetaArg, c: f64) -> PyResult<f64> {
    Ok(beta.spec()?.beta(c))
}

/// `(b_-1, b_0, b_1)` of the three-point scheme.
#[pyfunction]
fn coefficients(beta: BetaArg, c: f64) -> PyResult<(f64, f64, f64)> {
    let k = beta.spec()?.coefficients(c);
    Ok((k.b_m1, k.b_0, k.b_p1))
}

#[pyfunction]
fn is_monotone(beta: f64, c: f64) -> bool {
    schemes1d::is_monotone(beta, c)
}

/// Analytic 1D stability limit.
#[pyfunction]
fn stability_limit(beta: BetaArg) -> PyResult<f64> {
    Ok(beta.spec()?.stability_limit())
}

#[pyfunction]
#[pyo3(signature = (beta, c_resolution = 512, angle_resolution = DEFAULT_ANGLES, tol = DEFAULT_TOLERANCE))]
fn stability_limit_1d_numeric(
    py: Python<'_>,
    beta: BetaArg,
    c_resolution: usize,
    angle_resolution: usize,
    tol: f64,
) -> PyResult<f64> {
    let spec = beta.spec()?;
    py.detach(|| vonneumann::stability_limit_1d_numeric(&spec, c_resolution, angle_resolution, tol))
        .map_err(to_py)
}

#[pyfunction]
fn amplification_1d(beta: BetaArg, c: f64, theta: f64) -> PyResult<f64> {
    Ok(vonneumann::amplification_1d(&beta.spec()?.coefficients(c), theta))
}

#[pyfunction]
fn amplification_2d(beta: BetaArg, cx: f64, cy: f64, theta_x: f64, theta_y: f64) -> PyResult<f64> {
    let spec = beta.spec()?;
    let k = SchemeCoefficients2D::from_beta_specs(&spec, &spec, cx, cy);
    Ok(vonneumann::amplification_2d(&k, theta_x, theta_y))
}

#[pyclass(name = "AdvectionResult", frozen)]
struct PyAdvectionResult(schemes1d::AdvectionResult);

#[pymethods]
impl PyAdvectionResult {
    #[getter]
    fn x(&self) -> Vec<f64> {
        self.0.x.clone()
    }

    #[getter]
    fn numerical(&self) -> Vec<f64> {
        self.0.numerical.clone()
    }

    #[getter]
    fn exact(&self) -> Vec<f64> {
        self.0.exact.clone()
    }

    #[getter]
    fn linf(&self) -> f64 {
        self.0.linf
    }

    #[getter]
    fn l1(&self) -> f64 {
        self.0.l1
    }

    #[getter]
    fn qmax(&self) -> f64 {
        self.0.qmax
    }

    #[getter]
    fn qmin(&self) -> f64 {
        self.0.qmin
    }

    #[getter]
    fn steps(&self) -> usize {
        self.0.steps
    }

    fn profile_csv(&self) -> String {
        self.0.profile_csv()
    }

    fn norms_csv(&self) -> String {
        self.0.norms_csv()
    }
}

/// Square pulse on the periodic unit interval, unit speed.
#[pyfunction]
#[pyo3(signature = (beta, c, t_out, n_cells = 100))]
fn advect_square_wave(beta: BetaArg, c: f64, t_out: f64, n_cells: usize) -> PyResult<PyAdvectionResult> {
    schemes1d::advect_square_wave(n_cells, beta.spec()?, c, t_out)
        .map(PyAdvectionResult)
        .map_err(to_py)
}

#[pyclass(name = "StabilityMap", frozen)]
struct PyStabilityMap(vonneumann::StabilityMap);

#[pymethods]
impl PyStabilityMap {
    #[getter]
    fn cx_values(&self) -> Vec<f64> {
        self.0.cx_values.clone()
    }

    #[getter]
    fn cy_values(&self) -> Vec<f64> {
        self.0.cy_values.clone()
    }

    /// `stable[i][j]` for `(cx_values[i], cy_values[j])`.
    #[getter]
    fn stable(&self) -> Vec<Vec<bool>> {
        self.0
            .stable
            .chunks(self.0.cy_values.len())
            .map(|row| row.to_vec())
            .collect()
    }

    fn area(&self) -> f64 {
        vonneumann::region_area(&self.0)
    }

    fn axis_intercepts(&self) -> (f64, f64) {
        self.0.axis_intercepts()
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }

    fn to_pgm(&self) -> String {
        self.0.to_pgm()
    }
}

#[pyfunction]
#[pyo3(signature = (beta, cx_max = 1.0, cy_max = 1.0, grid_n = DEFAULT_GRID, angle_n = DEFAULT_ANGLES, tol = DEFAULT_TOLERANCE))]
fn stability_map_2d(
    py: Python<'_>,
    beta: BetaArg,
    cx_max: f64,
    cy_max: f64,
    grid_n: usize,
    angle_n: usize,
    tol: f64,
) -> PyResult<PyStabilityMap> {
    let spec = beta.spec()?;
    py.detach(|| vonneumann::stability_map_2d(&spec, cx_max, cy_max, grid_n, angle_n, tol))
        .map(PyStabilityMap)
        .map_err(to_py)
}

#[pymodule]
fn wavebound(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPrimitiveState>()?;
    m.add_class::<PyRiemannProblem>()?;
    m.add_class::<PyAdvectionResult>()?;
    m.add_class::<PyStabilityMap>()?;
    m.add_function(wrap_pyfunction!(reference_problems, m)?)?;
    m.add_function(wrap_pyfunction!(estimator_table_csv, m)?)?;
    m.add_function(wrap_pyfunction!(hll_flux, m)?)?;
    m.add_function(wrap_pyfunction!(rusanov_flux, m)?)?;
    m.add_function(wrap_pyfunction!(beta_value, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(is_monotone, m)?)?;
    m.add_function(wrap_pyfunction!(stability_limit, m)?)?;
    m.add_function(wrap_pyfunction!(stability_limit_1d_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(amplification_1d, m)?)?;
    m.add_function(wrap_pyfunction!(amplification_2d, m)?)?;
    m.add_function(wrap_pyfunction!(advect_square_wave, m)?)?;
    m.add_function(wrap_pyfunction!(stability_map_2d, m)?)?;
    Ok(())
}
