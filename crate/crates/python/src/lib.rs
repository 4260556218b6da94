//! Python bindings for `pauli-bose`.
//!
//! Operators come back as [`PyOperator`] objects; kets as lists of complex
//! numbers. Library errors are raised as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pauli_bose::bosonization::{self, BosonizationParams};
use pauli_bose::coherent::{self, NonlinearF, ResolutionVariant};
use pauli_bose::fock::{self, FockSpace, Ket, Operator};
use pauli_bose::grassmann::{self, GrassmannScalar};
use pauli_bose::report;
use pauli_bose::C64;

fn err(e: pauli_bose::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn space(dim: usize) -> PyResult<FockSpace> {
    FockSpace::new(dim).map_err(err)
}

fn params(l: u32, dim: usize) -> PyResult<BosonizationParams> {
    BosonizationParams::new(l, space(dim)?).map_err(err)
}

fn ket_values(k: &Ket) -> Vec<C64> {
    k.amplitudes().to_vec()
}

/// Dense complex matrix on a truncated Fock space.
#[pyclass(name = "Operator", module = "pauli_bose", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyOperator {
    inner: Operator,
}

impl From<Operator> for PyOperator {
    fn from(inner: Operator) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyOperator {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.space().dim()
    }

    fn entry(&self, row: usize, col: usize) -> PyResult<C64> {
        let d = self.dim();
        if row >= d || col >= d {
            return Err(PyValueError::new_err(format!(
                "index ({row}, {col}) out of range for dimension {d}"
            )));
        }
        Ok(self.inner.get(row, col))
    }

    fn to_list(&self) -> Vec<Vec<C64>> {
        self.inner
            .entries()
            .rows()
            .into_iter()
            .map(|r| r.to_vec())
            .collect()
    }

    fn two_level(&self) -> Vec<Vec<C64>> {
        bosonization::two_level_restriction(&self.inner)
            .iter()
            .map(|r| r.to_vec())
            .collect()
    }

    fn matmul(&self, other: &PyOperator) -> PyResult<PyOperator> {
        self.inner.matmul(&other.inner).map(Into::into).map_err(err)
    }

    fn __matmul__(&self, other: &PyOperator) -> PyResult<PyOperator> {
        self.matmul(other)
    }

    fn __add__(&self, other: &PyOperator) -> PyResult<PyOperator> {
        self.inner.add(&other.inner).map(Into::into).map_err(err)
    }

    fn __sub__(&self, other: &PyOperator) -> PyResult<PyOperator> {
        self.inner.sub(&other.inner).map(Into::into).map_err(err)
    }

    fn scale(&self, c: C64) -> PyOperator {
        self.inner.scale(c).into()
    }

    fn dagger(&self) -> PyOperator {
        self.inner.dagger().into()
    }

    fn commutator(&self, other: &PyOperator) -> PyResult<PyOperator> {
        self.inner
            .commutator(&other.inner)
            .map(Into::into)
            .map_err(err)
    }

    fn anticommutator(&self, other: &PyOperator) -> PyResult<PyOperator> {
        self.inner
            .anticommutator(&other.inner)
            .map(Into::into)
            .map_err(err)
    }

    fn max_abs_norm(&self) -> f64 {
        self.inner.max_abs_norm()
    }

    fn apply(&self, amplitudes: Vec<C64>) -> PyResult<Vec<C64>> {
        let v = Ket::from_amplitudes(self.inner.space(), amplitudes).map_err(err)?;
        self.inner.apply(&v).map(|k| ket_values(&k)).map_err(err)
    }

    fn __eq__(&self, other: &PyOperator) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Operator(dim={})", self.dim())
    }
}

#[pyfunction]
fn identity(dim: usize) -> PyResult<PyOperator> {
    Ok(Operator::identity(space(dim)?).into())
}

#[pyfunction]
fn annihilator(dim: usize) -> PyResult<PyOperator> {
    Ok(fock::annihilator(space(dim)?).into())
}

#[pyfunction]
fn creator(dim: usize) -> PyResult<PyOperator> {
    Ok(fock::creator(space(dim)?).into())
}

#[pyfunction]
fn number_operator(dim: usize) -> PyResult<PyOperator> {
    Ok(fock::number_operator(space(dim)?).into())
}

#[pyfunction]
fn f_coefficient(n: usize, l: u32) -> f64 {
    bosonization::f_coefficient(n, l)
}

#[pyfunction]
fn verify_functional_equation(l: u32, n_max: usize) -> f64 {
    bosonization::verify_functional_equation(l, n_max)
}

#[pyfunction]
fn sigma_minus(l: u32, dim: usize) -> PyResult<PyOperator> {
    Ok(bosonization::sigma_minus(&params(l, dim)?).into())
}

#[pyfunction]
fn closed_form_sigma_minus(l: u32, dim: usize) -> PyResult<PyOperator> {
    Ok(bosonization::closed_form_sigma_minus(&params(l, dim)?).into())
}

#[pyfunction]
fn sigma_three(dim: usize) -> PyResult<PyOperator> {
    bosonization::sigma_three(space(dim)?)
        .map(Into::into)
        .map_err(err)
}

#[pyfunction]
fn parity_projectors(dim: usize) -> PyResult<(PyOperator, PyOperator)> {
    let (even, odd) = bosonization::parity_projectors(space(dim)?);
    Ok((even.into(), odd.into()))
}

/// Dict with keys sigma_minus, sigma_plus, sigma_one, sigma_two, sigma_three.
#[pyfunction]
fn pauli_set<'py>(py: Python<'py>, l: u32, dim: usize) -> PyResult<Bound<'py, PyDict>> {
    let set = bosonization::pauli_set(&params(l, dim)?);
    let out = PyDict::new(py);
    out.set_item("sigma_minus", PyOperator::from(set.sigma_minus))?;
    out.set_item("sigma_plus", PyOperator::from(set.sigma_plus))?;
    out.set_item("sigma_one", PyOperator::from(set.sigma_one))?;
    out.set_item("sigma_two", PyOperator::from(set.sigma_two))?;
    out.set_item("sigma_three", PyOperator::from(set.sigma_three))?;
    Ok(out)
}

/// List of `(identity_id, equation, residual)`.
#[pyfunction]
fn algebra_residuals(l: u32, dim: usize) -> PyResult<Vec<(String, String, f64)>> {
    Ok(bosonization::algebra_residuals(&params(l, dim)?)
        .into_iter()
        .map(|r| (r.id, r.equation.to_string(), r.residual))
        .collect())
}

#[pyfunction]
fn coherent_ket(dim: usize, z: C64) -> PyResult<Vec<C64>> {
    Ok(ket_values(&coherent::coherent_ket(space(dim)?, z)))
}

#[pyfunction]
fn even_ket(dim: usize, z: C64) -> PyResult<Vec<C64>> {
    Ok(ket_values(&coherent::even_ket(space(dim)?, z)))
}

#[pyfunction]
fn odd_ket(dim: usize, z: C64) -> PyResult<Vec<C64>> {
    Ok(ket_values(&coherent::odd_ket(space(dim)?, z)))
}

#[pyfunction]
fn phase_relation_residual(dim: usize, z: C64) -> PyResult<f64> {
    Ok(coherent::phase_relation_residual(space(dim)?, z))
}

/// `(residual, under_resolved)` for one resolution variant.
#[pyfunction]
fn resolution_residual(
    dim: usize,
    variant: &str,
    radial: usize,
    angular: usize,
) -> PyResult<(f64, bool)> {
    let variant: ResolutionVariant = variant.parse().map_err(PyValueError::new_err)?;
    let grid = coherent::quadrature_grid(radial, angular).map_err(err)?;
    let r = coherent::resolution_residual(space(dim)?, variant, &grid);
    Ok((r.residual, r.under_resolved))
}

#[pyfunction]
#[pyo3(signature = (f_values, z, normalize = true))]
fn nonlinear_coherent_ket(f_values: Vec<C64>, z: C64, normalize: bool) -> PyResult<Vec<C64>> {
    let s = space(f_values.len())?;
    let f = NonlinearF::from_values(f_values).map_err(err)?;
    coherent::nonlinear_coherent_ket(s, &f, z, normalize)
        .map(|k| ket_values(&k))
        .map_err(err)
}

#[pyfunction]
fn ladder_commutator_residual(f_values: Vec<C64>, margin: usize) -> PyResult<f64> {
    let s = space(f_values.len())?;
    let f = NonlinearF::from_values(f_values).map_err(err)?;
    coherent::ladder_commutator_residual(s, &f, margin).map_err(err)
}

/// `(eigen_residual, nilpotent_residual)` for the eigenvalue `soul·θ`.
#[pyfunction]
fn eigen_check(dim: usize, l: u32, soul: C64) -> PyResult<(f64, f64)> {
    let r = grassmann::eigen_check(space(dim)?, l, GrassmannScalar::pure(soul)).map_err(err)?;
    Ok((r.eigen, r.nilpotent))
}

/// JSON report of the algebra suite, as printed by `pauli-bose verify`.
#[pyfunction]
#[pyo3(signature = (dims, ls, tol = 0.0))]
fn verify_report(dims: Vec<usize>, ls: Vec<u32>, tol: f64) -> PyResult<String> {
    let records = report::verify_suite(&dims, &ls, tol).map_err(err)?;
    Ok(report::VerificationReport::new(records).to_json())
}

#[pymodule]
#[pyo3(name = "pauli_bose")]
fn pauli_bose_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", report::TOOL_VERSION)?;
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(identity, m)?)?;
    m.add_function(wrap_pyfunction!(annihilator, m)?)?;
    m.add_function(wrap_pyfunction!(creator, m)?)?;
    m.add_function(wrap_pyfunction!(number_operator, m)?)?;
    m.add_function(wrap_pyfunction!(f_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(verify_functional_equation, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_minus, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_sigma_minus, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_three, m)?)?;
    m.add_function(wrap_pyfunction!(parity_projectors, m)?)?;
    m.add_function(wrap_pyfunction!(pauli_set, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_residuals, m)?)?;
    m.add_function(wrap_pyfunction!(coherent_ket, m)?)?;
    m.add_function(wrap_pyfunction!(even_ket, m)?)?;
    m.add_function(wrap_pyfunction!(odd_ket, m)?)?;
    m.add_function(wrap_pyfunction!(phase_relation_residual, m)?)?;
    m.add_function(wrap_pyfunction!(resolution_residual, m)?)?;
    m.add_function(wrap_pyfunction!(nonlinear_coherent_ket, m)?)?;
    m.add_function(wrap_pyfunction!(ladder_commutator_residual, m)?)?;
    m.add_function(wrap_pyfunction!(eigen_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_report, m)?)?;
    Ok(())
}
