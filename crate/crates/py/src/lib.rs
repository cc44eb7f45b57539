//! Python bindings: interactions, Green's functions, evolution, spectra and
//! the verification suites.

use pointgreen::contour_quadrature::QuadratureConfig;
use pointgreen::evolution::{evolve_point, psi_plane_wave, DatumSpec, Method};
use pointgreen::spectral::bound_states;
use pointgreen::superoscillation::SuperoscillatingSequence;
use pointgreen::verify::{run_criterion, Level, CRITERIA};
use pointgreen::{green, special_functions, Complex64, Error, InteractionCase, Mat2, UnitaryInteraction};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::NotUnitary(_) | Error::ZeroStrength | Error::NonPositiveA(_) | Error::IndexOutOfRange { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

/// Self-adjoint point interaction at the origin.
#[pyclass(name = "Interaction", module = "pointgreen", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInteraction {
    inner: UnitaryInteraction,
}

#[pymethods]
impl PyInteraction {
    #[staticmethod]
    fn free() -> Self {
        Self { inner: UnitaryInteraction::free() }
    }

    #[staticmethod]
    fn dirichlet() -> Self {
        Self { inner: UnitaryInteraction::dirichlet() }
    }

    #[staticmethod]
    fn neumann() -> Self {
        Self { inner: UnitaryInteraction::neumann() }
    }

    #[staticmethod]
    fn delta(c: f64) -> PyResult<Self> {
        Ok(Self { inner: UnitaryInteraction::delta(c).map_err(to_py)? })
    }

    #[staticmethod]
    fn delta_prime(c: f64) -> PyResult<Self> {
        Ok(Self { inner: UnitaryInteraction::delta_prime(c).map_err(to_py)? })
    }

    #[staticmethod]
    fn robin(a: f64, b: f64) -> PyResult<Self> {
        Ok(Self { inner: UnitaryInteraction::robin(a, b).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_parameters(phi: f64, alpha: Complex64, beta: Complex64) -> PyResult<Self> {
        Ok(Self { inner: UnitaryInteraction::from_parameters(phi, alpha, beta).map_err(to_py)? })
    }

    /// From a 2x2 unitary given as nested lists.
    #[staticmethod]
    fn from_matrix(m: [[Complex64; 2]; 2]) -> PyResult<Self> {
        Ok(Self { inner: UnitaryInteraction::from_matrix(&Mat2(m)).map_err(to_py)? })
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.inner.phi()
    }

    #[getter]
    fn alpha(&self) -> Complex64 {
        self.inner.alpha()
    }

    #[getter]
    fn beta(&self) -> Complex64 {
        self.inner.beta()
    }

    #[getter]
    fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.inner.matrix().0
    }

    /// "I", "II" or "III" by the rank of I + J.
    #[getter]
    fn case(&self) -> &'static str {
        match self.inner.coefficients().case {
            InteractionCase::CaseI => "I",
            InteractionCase::CaseII => "II",
            InteractionCase::CaseIII => "III",
        }
    }

    #[getter]
    fn omega(&self) -> (f64, f64) {
        let c = self.inner.coefficients();
        (c.omega_plus, c.omega_minus)
    }

    /// G(t, x, y) for t > 0 and x, y nonzero.
    fn green(&self, t: f64, x: f64, y: f64) -> PyResult<Complex64> {
        green::green(&self.inner.coefficients(), t, x, y).map_err(to_py)
    }

    /// Closed-form evolution of the plane wave e^{ikx}.
    fn plane_wave(&self, t: f64, x: f64, k: f64) -> PyResult<Complex64> {
        psi_plane_wave(&self.inner, t, x, k).map_err(to_py)
    }

    /// Ψ(t, x) for a datum; returns (value, error estimate).
    #[pyo3(signature = (datum, t, x, method="auto", abs_tol=None, rel_tol=None, theta_rot=None, max_panels=None))]
    #[allow(clippy::too_many_arguments)]
    fn evolve(
        &self,
        datum: &PyDatum,
        t: f64,
        x: f64,
        method: &str,
        abs_tol: Option<f64>,
        rel_tol: Option<f64>,
        theta_rot: Option<f64>,
        max_panels: Option<usize>,
    ) -> PyResult<(Complex64, f64)> {
        let method = match method {
            "auto" => Method::Auto,
            "closed" => Method::Closed,
            "quadrature" => Method::Quadrature,
            _ => return Err(PyValueError::new_err(format!("unknown method '{method}'"))),
        };
        let mut cfg = QuadratureConfig::default();
        cfg.abs_tol = abs_tol.unwrap_or(cfg.abs_tol);
        cfg.rel_tol = rel_tol.unwrap_or(cfg.rel_tol);
        cfg.theta_rot = theta_rot.unwrap_or(cfg.theta_rot);
        cfg.max_panels = max_panels.unwrap_or(cfg.max_panels);
        cfg.validate().map_err(to_py)?;
        let e = evolve_point(&self.inner, &datum.inner, method, t, x, &cfg).map_err(to_py)?;
        Ok((e.value, e.error))
    }

    /// Negative eigenvalues as dicts with energy, omega, multiplicity and
    /// eigenfunction coefficients (even, odd).
    fn bound_states<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        bound_states(&self.inner)
            .into_iter()
            .map(|s| {
                let d = PyDict::new(py);
                d.set_item("energy", s.energy)?;
                d.set_item("omega", s.omega)?;
                d.set_item("multiplicity", s.multiplicity)?;
                let efs: Vec<(Complex64, Complex64)> = s.eigenfunctions.iter().map(|e| (e.even, e.odd)).collect();
                d.set_item("eigenfunctions", efs)?;
                Ok(d)
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Interaction({})", self.inner)
    }
}

/// Initial datum for `Interaction.evolve`.
#[pyclass(name = "Datum", module = "pointgreen", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDatum {
    inner: DatumSpec,
}

#[pymethods]
impl PyDatum {
    #[staticmethod]
    fn plane_wave(k: f64) -> Self {
        Self { inner: DatumSpec::PlaneWave { k } }
    }

    #[staticmethod]
    fn constant() -> Self {
        Self { inner: DatumSpec::Constant }
    }

    /// F_n(x) = (cos(x/n) + ik sin(x/n))^n with |k| > 1.
    #[staticmethod]
    fn superoscillation(n: u32, k: f64) -> PyResult<Self> {
        SuperoscillatingSequence::new(n, k).map_err(to_py)?;
        Ok(Self { inner: DatumSpec::Superoscillation { n, k } })
    }

    /// Value of the datum at complex z.
    fn __call__(&self, z: Complex64) -> PyResult<Complex64> {
        Ok(self.inner.holomorphic().map_err(to_py)?.eval(z))
    }

    /// Condition number of the spectral route (1 for single waves).
    #[getter]
    fn conditioning(&self) -> f64 {
        match self.inner {
            DatumSpec::Superoscillation { n, k } => pointgreen::superoscillation::conditioning(n, k),
            _ => 1.0,
        }
    }

    fn __repr__(&self) -> String {
        format!("Datum({:?})", self.inner)
    }
}

/// Λ(z) = e^{z²} erfc(z).
#[pyfunction]
fn lambda_fn(z: Complex64) -> PyResult<Complex64> {
    special_functions::lambda_fn(z).map_err(to_py)
}

/// Run verification suites; returns (id, name, passed, detail) tuples.
#[pyfunction]
#[pyo3(signature = (level="quick", criteria=None))]
fn verify(py: Python<'_>, level: &str, criteria: Option<Vec<u8>>) -> PyResult<Vec<(u8, &'static str, bool, String)>> {
    let level = match level {
        "quick" => Level::Quick,
        "full" => Level::Full,
        _ => return Err(PyValueError::new_err(format!("unknown level '{level}'"))),
    };
    let ids = criteria.unwrap_or_else(|| CRITERIA.iter().map(|c| c.0).collect());
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err(PyValueError::new_err(format!("no criterion {bad}")));
    }
    Ok(py.detach(|| {
        ids.iter()
            .map(|&id| {
                let r = run_criterion(id, level);
                (r.id, r.name, r.passed, r.detail)
            })
            .collect()
    }))
}

#[pymodule]
fn _pointgreen(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInteraction>()?;
    m.add_class::<PyDatum>()?;
    m.add_function(wrap_pyfunction!(lambda_fn, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
