//! Python bindings: the main exact operations behind one flat module.
//!
//! Rationals cross the boundary as `fractions.Fraction` (or int) in both
//! directions; anything without exact numerator/denominator attributes,
//! floats in particular, is refused so exactness cannot silently leak.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::intern;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use johnson::intertwiner::DEFAULT_SIZE_CAP;

fn err(e: johnson::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, x: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let ctor = py
        .import(intern!(py, "fractions"))?
        .getattr(intern!(py, "Fraction"))?;
    ctor.call1((x.numer().clone(), x.denom().clone()))
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    let py = obj.py();
    let exact = (|| -> PyResult<(BigInt, BigInt)> {
        Ok((
            obj.getattr(intern!(py, "numerator"))?.extract()?,
            obj.getattr(intern!(py, "denominator"))?.extract()?,
        ))
    })();
    match exact {
        Ok((numer, denom)) if !denom.is_zero() => Ok(BigRational::new(numer, denom)),
        _ => Err(PyTypeError::new_err(format!(
            "expected an int or fractions.Fraction, got {}",
            obj.get_type().name()?
        ))),
    }
}

fn to_parameters(obj: &Bound<'_, PyAny>) -> PyResult<Vec<BigRational>> {
    let items: Vec<Bound<'_, PyAny>> = obj.extract()?;
    items.iter().map(to_rational).collect()
}

/// C(n, k) with the zero convention outside 0 <= k <= n.
#[pyfunction]
fn binomial(n: u64, k: i64) -> BigInt {
    johnson::combinatorics::binomial(n, k)
}

/// Dimension of the irreducible constituent indexed by k: C(n,k) - C(n,k-1).
#[pyfunction]
fn multiplicity(n: u32, k: u32) -> PyResult<BigInt> {
    johnson::spectrum::multiplicity(n, k).map_err(err)
}

/// The m-subsets of {1,...,n} in the index order every matrix and vector uses.
#[pyfunction]
fn subsets(n: u32, m: u32) -> PyResult<Vec<Vec<u32>>> {
    let dim = johnson::combinatorics::binomial(u64::from(n), i64::from(m));
    if dim > BigInt::from(DEFAULT_SIZE_CAP) {
        return Err(PyValueError::new_err(format!(
            "size cap exceeded: dimension C({n},{m}) = {dim} > {DEFAULT_SIZE_CAP}"
        )));
    }
    Ok(johnson::combinatorics::all_subsets(n, m)
        .map_err(err)?
        .into_iter()
        .map(|s| s.elements().to_vec())
        .collect())
}

/// B(b) as a dense Fraction matrix.
#[pyfunction]
fn matrix<'py>(
    py: Python<'py>,
    n: u32,
    m: u32,
    b: &Bound<'py, PyAny>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    let b = to_parameters(b)?;
    let matrix = johnson::intertwiner::build_specialized(n, m, &b).map_err(err)?;
    let d = matrix.dim();
    (0..d)
        .map(|r| (0..d).map(|c| fraction(py, matrix.entry(r, c))).collect())
        .collect()
}

/// Symbolic B as a dim x dim x (m+1) tensor of integer coefficients.
#[pyfunction]
fn matrix_symbolic(n: u32, m: u32) -> PyResult<Vec<Vec<Vec<BigInt>>>> {
    let matrix = johnson::intertwiner::build_symbolic(n, m).map_err(err)?;
    let d = matrix.dim();
    Ok((0..d)
        .map(|r| (0..d).map(|c| matrix.entry(r, c).coeffs().to_vec()).collect())
        .collect())
}

/// Coefficients (c_0,...,c_m) of λ_k = Σ_p c_p b_p.
#[pyfunction]
fn eigenvalue_coefficients(n: u32, m: u32, k: u32) -> PyResult<Vec<BigInt>> {
    Ok(johnson::spectrum::eigenvalue_form(n, m, k)
        .map_err(err)?
        .coeffs()
        .to_vec())
}

/// λ_k evaluated at the parameter vector b.
#[pyfunction]
fn eigenvalue_at<'py>(
    py: Python<'py>,
    n: u32,
    m: u32,
    k: u32,
    b: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let b = to_parameters(b)?;
    let value = johnson::spectrum::eigenvalue_at(n, m, k, &b).map_err(err)?;
    fraction(py, &value)
}

/// The (m+1) x (m+1) eigenmatrix P, rows indexed by k, columns by p.
#[pyfunction]
fn eigenmatrix(n: u32, m: u32) -> PyResult<Vec<Vec<BigInt>>> {
    johnson::spectrum::eigenmatrix_p(n, m).map_err(err)
}

/// Eberlein value E_k(u) for the scheme on m-subsets of an n-set.
#[pyfunction]
fn eberlein(n: u32, m: u32, k: u32, u: u32) -> PyResult<BigInt> {
    johnson::spectrum::eberlein(n, m, k, u).map_err(err)
}

/// Integer eigenvector from the Young symmetrizer, last coordinate 1.
#[pyfunction]
fn young_eigenvector(n: u32, m: u32, k: u32) -> PyResult<Vec<BigInt>> {
    Ok(johnson::symmetrizer::young_eigenvector(n, m, k)
        .map_err(err)?
        .coords)
}

/// The ELK parameter vector (b_0,...,b_m).
#[pyfunction]
fn elk_parameters<'py>(py: Python<'py>, m: u32) -> PyResult<Vec<Bound<'py, PyAny>>> {
    johnson::elk::elk_parameters(m)
        .map_err(err)?
        .iter()
        .map(|x| fraction(py, x))
        .collect()
}

/// The ELK eigenvalues (-1)^m (2m+1)/(2m-2k+1) for k = 0..m.
#[pyfunction]
fn elk_eigenvalues<'py>(py: Python<'py>, m: u32) -> PyResult<Vec<Bound<'py, PyAny>>> {
    (0..=m)
        .map(|k| {
            let value = johnson::elk::elk_closed_form(m, k).map_err(err)?;
            fraction(py, &value)
        })
        .collect()
}

/// Multiplicity of λ_k at generic b as the rank defect of B(b) - λ_k I.
#[pyfunction]
fn multiplicity_by_rank(n: u32, m: u32, k: u32, b: &Bound<'_, PyAny>) -> PyResult<BigInt> {
    let b = to_parameters(b)?;
    johnson::verify::multiplicity_by_rank(n, m, k, &b).map_err(err)
}

/// Run the full oracle at a seeded generic draw; returns b, the named
/// checks, and the overall verdict.
#[pyfunction]
#[pyo3(signature = (n, m, seed = 0))]
fn verify(py: Python<'_>, n: u32, m: u32, seed: u64) -> PyResult<Py<PyDict>> {
    let mut rng = johnson::verify::seeded_rng(seed);
    let b = johnson::verify::draw_generic_parameters(n, m, &mut rng).map_err(err)?;
    let report = johnson::verify::full_spectrum_check(n, m, &b).map_err(err)?;

    let out = PyDict::new(py);
    let params = report
        .b
        .iter()
        .map(|x| fraction(py, x))
        .collect::<PyResult<Vec<_>>>()?;
    out.set_item("b", params)?;
    let checks = PyList::empty(py);
    for check in &report.checks {
        let item = PyDict::new(py);
        item.set_item("name", &check.name)?;
        item.set_item("expected", &check.expected)?;
        item.set_item("actual", &check.actual)?;
        item.set_item("pass", check.pass)?;
        checks.append(item)?;
    }
    out.set_item("checks", checks)?;
    out.set_item("all_pass", report.all_pass())?;
    Ok(out.unbind())
}

#[pymodule]
fn johnson_scheme(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SIZE_CAP", DEFAULT_SIZE_CAP)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(subsets, m)?)?;
    m.add_function(wrap_pyfunction!(matrix, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalue_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalue_at, m)?)?;
    m.add_function(wrap_pyfunction!(eigenmatrix, m)?)?;
    m.add_function(wrap_pyfunction!(eberlein, m)?)?;
    m.add_function(wrap_pyfunction!(young_eigenvector, m)?)?;
    m.add_function(wrap_pyfunction!(elk_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(elk_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity_by_rank, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
