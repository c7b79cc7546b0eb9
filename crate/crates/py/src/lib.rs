//! Python bindings: `import leibniz`.
//!
//! Rationals cross the boundary as `"p/q"` strings and matrices as nested
//! lists of such strings, so nothing is rounded.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use leibniz_core::inner::{inner_bider_pairs_in, inner_derivation_space, Convention, InnerSpaces};
use leibniz_core::linalg::RatMatrix;
use leibniz_core::parse::{parse_algebra_named, to_bracket_text};
use leibniz_core::report::{render, Format, InnerReport};
use leibniz_core::solver::{self, general_element, FormStyle, SpaceKind};
use leibniz_core::{catalog, table, Error, Rational};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn core_err(e: Error) -> PyErr {
    match e {
        Error::Shape(_) => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    }
}

fn format_arg(format: &str) -> PyResult<Format> {
    format.parse().map_err(core_err)
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(Rational::to_fraction_string).collect())
        .collect()
}

/// An algebra given by structure constants.
#[pyclass(name = "Algebra", module = "leibniz", frozen)]
struct PyAlgebra {
    inner: leibniz_core::Algebra,
}

#[pymethods]
impl PyAlgebra {
    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Structure constant of `e_k` in `[e_i, e_j]` (0-based), as `"p/q"`.
    fn gamma(&self, i: usize, j: usize, k: usize) -> PyResult<String> {
        let n = self.inner.dim();
        if i >= n || j >= n || k >= n {
            return Err(value_err(format!("index out of range for dim {n}")));
        }
        Ok(self.inner.gamma(i, j, k).to_fraction_string())
    }

    fn is_leibniz(&self) -> bool {
        self.inner.check_leibniz().holds
    }

    /// `(dims, nilpotent, nil_index)` of the descending series.
    fn series(&self) -> (Vec<usize>, bool, Option<usize>) {
        let s = self.inner.lower_central_series();
        (s.dims, s.nilpotent, s.nil_index)
    }

    fn bracket_text(&self) -> String {
        to_bracket_text(&self.inner)
    }

    fn check(&self, format: &str) -> PyResult<String> {
        Ok(render(&self.inner.check_leibniz(), format_arg(format)?))
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, dim={})", self.inner.name(), self.inner.dim())
    }
}

/// A solved Der, AntiDer or BiDer space.
#[pyclass(name = "SolutionSpace", module = "leibniz", frozen)]
struct PySolutionSpace {
    inner: solver::SolutionSpace,
}

#[pymethods]
impl PySolutionSpace {
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.as_str()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn free_labels(&self) -> Vec<String> {
        self.inner
            .free_labels()
            .into_iter()
            .map(str::to_owned)
            .collect()
    }

    /// Basis element `b` as a list of blocks, each a matrix of `"p/q"` strings.
    fn basis_element(&self, b: usize) -> PyResult<Vec<Vec<Vec<String>>>> {
        if b >= self.inner.dim() {
            return Err(value_err(format!("basis index {b} out of range")));
        }
        Ok(self.inner.blocks(b).iter().map(matrix_strings).collect())
    }

    /// The general element: one matrix of linear forms per block.
    fn general_element(&self) -> Vec<Vec<Vec<String>>> {
        let g = general_element(&self.inner);
        (0..self.inner.kind.blocks())
            .map(|b| {
                (0..self.inner.n)
                    .map(|r| {
                        (0..self.inner.n)
                            .map(|c| g.render_entry(b, r, c, FormStyle::Plain))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn render(&self, format: &str) -> PyResult<String> {
        Ok(render(&self.inner, format_arg(format)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "SolutionSpace({} of {}, dim={})",
            self.inner.kind,
            self.inner.algebra,
            self.inner.dim()
        )
    }
}

/// Catalog entry such as `"L7"` or `"L20(2/3)"`.
#[pyfunction]
fn catalog_get(spec: &str) -> PyResult<PyAlgebra> {
    catalog::get_spec(spec)
        .map(|inner| PyAlgebra { inner })
        .map_err(core_err)
}

/// Names of all catalog entries.
#[pyfunction]
fn catalog_ids() -> Vec<String> {
    catalog::list().iter().map(|e| e.name()).collect()
}

/// Parses a bracket table (`dim n` followed by `[ei,ej] = ...` lines).
#[pyfunction]
#[pyo3(signature = (text, name = "input"))]
fn parse_algebra(text: &str, name: &str) -> PyResult<PyAlgebra> {
    parse_algebra_named(text, name)
        .map(|inner| PyAlgebra { inner })
        .map_err(value_err)
}

/// Solves `space` ("der", "antider" or "bider") for an algebra.
#[pyfunction]
fn solve(algebra: &PyAlgebra, space: &str) -> PyResult<PySolutionSpace> {
    let kind: SpaceKind = space.parse().map_err(core_err)?;
    if !algebra.inner.check_leibniz().holds {
        return Err(value_err(format!(
            "{} is not a Leibniz algebra",
            algebra.inner.name()
        )));
    }
    Ok(PySolutionSpace {
        inner: solver::solve(&algebra.inner, kind),
    })
}

/// Recomputed comparison table `which` (1, 2 or 3), rendered in `format`.
#[pyfunction]
#[pyo3(signature = (which, format = "json", alpha_samples = Vec::new()))]
fn comparison_table(which: u8, format: &str, alpha_samples: Vec<String>) -> PyResult<String> {
    let samples = alpha_samples
        .iter()
        .map(|s| s.parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(core_err)?;
    let report = table::cmd_table(which, &samples).map_err(core_err)?;
    Ok(render(&report, format_arg(format)?))
}

/// Inner derivations and inner-biderivation candidates, rendered in `format`.
#[pyfunction]
#[pyo3(signature = (algebra, format = "json", convention = None))]
fn inner(algebra: &PyAlgebra, format: &str, convention: Option<&str>) -> PyResult<String> {
    let a = &algebra.inner;
    if !a.check_leibniz().holds {
        return Err(value_err(format!("{} is not a Leibniz algebra", a.name())));
    }
    let conventions = match convention {
        Some(c) => vec![c.parse::<Convention>().map_err(core_err)?],
        None => Convention::ALL.to_vec(),
    };
    let spaces = InnerSpaces::compute(a);
    let report = InnerReport {
        derivations: inner_derivation_space(a),
        pairs: conventions
            .into_iter()
            .map(|c| inner_bider_pairs_in(a, c, &spaces))
            .collect(),
    };
    Ok(render(&report, format_arg(format)?))
}

#[pymodule]
fn leibniz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PySolutionSpace>()?;
    m.add_function(wrap_pyfunction!(catalog_get, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_ids, m)?)?;
    m.add_function(wrap_pyfunction!(parse_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_table, m)?)?;
    m.add_function(wrap_pyfunction!(inner, m)?)?;
    Ok(())
}
