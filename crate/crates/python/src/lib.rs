//! Python bindings: analytic spectra, single solves and the command-line driver.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rotspec::discretize::{assemble_operator, build_grid};
use rotspec::eigensolve::lowest_eigenpairs;
use rotspec::geometry::{Domain, Point};

fn to_py(e: rotspec::Error) -> PyErr {
    if e.is_solver_failure() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// `J_m(x)`.
#[pyfunction]
fn bessel_j(m: u32, x: f64) -> PyResult<f64> {
    rotspec::specfun::bessel_j(m, x).map_err(to_py)
}

/// The `k`-th positive zero of `J_m`.
#[pyfunction]
fn bessel_j_zero(m: u32, k: u32) -> PyResult<f64> {
    rotspec::specfun::bessel_j_zero(m, k).map(|z| z.value).map_err(to_py)
}

/// Ground state of the rotating disk: `(eigenvalue, [m, ...], degenerate)`.
#[pyfunction]
fn disk_ground_state(radius: f64, omega: f64) -> PyResult<(f64, Vec<i64>, bool)> {
    let g = rotspec::analytic::disk_ground_state(radius, omega).map_err(to_py)?;
    Ok((g.eigenvalue, g.modes.iter().map(|m| m.m).collect(), g.degenerate))
}

/// Right-hand side of the comparison bound for a star-shaped domain given as JSON.
#[pyfunction]
fn comparison_bound(domain_json: &str, omega: f64) -> PyResult<f64> {
    let d = Domain::from_json(domain_json).map_err(to_py)?;
    rotspec::analytic::fk_reverse_bound_for_domain(&d, omega)
        .map(|r| r.rhs)
        .map_err(to_py)
}

/// The `k` lowest eigenvalues of the discretized operator on a JSON domain.
#[pyfunction]
#[pyo3(signature = (domain_json, omega, h, k = 1, center = None, tol = 1e-9))]
fn solve(domain_json: &str, omega: f64, h: f64, k: usize, center: Option<(f64, f64)>, tol: f64) -> PyResult<Vec<f64>> {
    let d = Domain::from_json(domain_json).map_err(to_py)?;
    let c = center.map_or_else(|| d.center(), |(x, y)| Point::new(x, y));
    let grid = build_grid(&d, h).map_err(to_py)?;
    let op = assemble_operator(&grid, omega, c).map_err(to_py)?;
    lowest_eigenpairs(&op, k, tol).map(|s| s.eigenvalues).map_err(to_py)
}

/// Runs the command-line driver with `args` (without the program name);
/// returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rotspec".to_string()).chain(args);
    let code = rotspec::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

#[pymodule]
fn rotspec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j_zero, m)?)?;
    m.add_function(wrap_pyfunction!(disk_ground_state, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_bound, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
