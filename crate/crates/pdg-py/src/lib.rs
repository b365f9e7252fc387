//! Python bindings: the explicit digraph plus the closed-form
//! structure, spectrum, automorphism and isomorphism operations.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use pdg_core::digraph;
use pdg_core::{aut, canon, numtheory, report, spectral, structure, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// The functional digraph on 0..n-1 with the edge a -> k*a mod n.
#[pyclass]
struct PowerDigraph {
    inner: digraph::PowerDigraph,
}

#[pymethods]
impl PowerDigraph {
    #[new]
    fn new(n: u64, k: u64) -> PyResult<Self> {
        Ok(PowerDigraph {
            inner: digraph::PowerDigraph::build(n, k).map_err(py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    /// The exponent, normalized into 1..=n.
    #[getter]
    fn k(&self) -> u64 {
        self.inner.k()
    }

    fn succ(&self, a: u64) -> PyResult<u64> {
        if a >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {a} out of range")));
        }
        Ok(self.inner.succ(a))
    }

    fn succ_table(&self) -> Vec<u64> {
        self.inner.succ_table().to_vec()
    }

    fn preimages(&self, a: u64) -> PyResult<Vec<u64>> {
        self.inner.preimages(a).map_err(py_err)
    }

    fn vertex_order(&self, a: u64) -> PyResult<u64> {
        self.inner.vertex_order(a).map_err(py_err)
    }

    fn indegree_zero_count(&self) -> u64 {
        self.inner.indegree_zero_count()
    }

    /// Sorted (length, count) pairs found by walking the graph.
    fn cycle_lengths(&self) -> Vec<(u64, u64)> {
        digraph::brute_cycle_length_multiset(&self.inner)
    }

    /// Level sizes (whole graph, tree at the identity).
    fn level_sizes(&self) -> (Vec<u64>, Vec<u64>) {
        digraph::brute_level_sizes(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("PowerDigraph(n={}, k={})", self.inner.n(), self.inner.k())
    }
}

/// (t, w): the largest divisor of n coprime to k, and n/t.
#[pyfunction]
fn coprime_split(n: u64, k: u64) -> PyResult<(u64, u64)> {
    let s = numtheory::coprime_split(n, k).map_err(py_err)?;
    Ok((s.t, s.w))
}

#[pyfunction]
fn euler_phi(m: u64) -> PyResult<u64> {
    numtheory::euler_phi(m).map_err(py_err)
}

#[pyfunction]
fn moebius(m: u64) -> PyResult<i32> {
    numtheory::moebius(m).map_err(py_err)
}

#[pyfunction]
fn mult_order(k: u64, d: u64) -> PyResult<u64> {
    numtheory::mult_order(k, d).map_err(py_err)
}

/// (order, length, count) triples, one per divisor of t.
#[pyfunction]
fn cycle_structure(n: u64, k: u64) -> PyResult<Vec<(u64, u64, u64)>> {
    let c = structure::cycle_structure(n, k).map_err(py_err)?;
    Ok(c.per_order
        .iter()
        .map(|r| (r.order, r.length, r.count))
        .collect())
}

#[pyfunction]
fn cycles_of_length(n: u64, k: u64, r: u64) -> PyResult<u64> {
    structure::cycles_of_length(n, k, r).map_err(py_err)
}

/// (h0, per-tree level sizes, whole-graph level sizes).
#[pyfunction]
fn tree_profile(n: u64, k: u64) -> PyResult<(u64, Vec<u64>, Vec<u64>)> {
    let p = structure::tree_profile(n, k).map_err(py_err)?;
    Ok((p.h0, p.per_tree_levels, p.total_levels))
}

#[pyfunction]
fn vertex_height(n: u64, k: u64, a: u64) -> PyResult<u64> {
    structure::vertex_height(n, k, a).map_err(py_err)
}

/// Factored characteristic polynomial, e.g. "x^21 * (x - 1) * (x^3 - 1)^2".
#[pyfunction]
#[pyo3(signature = (n, k, expand = false))]
fn char_poly(n: u64, k: u64, expand: bool) -> PyResult<String> {
    let p = spectral::char_poly(n, k).map_err(py_err)?;
    Ok(if expand {
        p.expand().to_string()
    } else {
        p.to_string()
    })
}

#[pyfunction]
#[pyo3(signature = (n, k, expand = false))]
fn min_poly(n: u64, k: u64, expand: bool) -> PyResult<String> {
    let p = spectral::min_poly(n, k).map_err(py_err)?;
    Ok(if expand {
        p.expand().to_string()
    } else {
        p.to_string()
    })
}

/// (total order, tree order, structure string); orders are decimal
/// strings since they outgrow machine integers quickly.
#[pyfunction]
fn aut_order(n: u64, k: u64) -> PyResult<(String, String, String)> {
    let r = aut::aut_order(n, k).map_err(py_err)?;
    Ok((
        r.total_order.to_string(),
        r.tree_aut_order.to_string(),
        r.structure,
    ))
}

/// Canonical certificate "n|treecode|r1^m1,...".
#[pyfunction]
fn certificate(n: u64, k: u64) -> PyResult<String> {
    Ok(canon::certificate(n, k).map_err(py_err)?.to_string())
}

#[pyfunction]
fn is_isomorphic(n1: u64, k1: u64, n2: u64, k2: u64) -> PyResult<bool> {
    canon::is_isomorphic(n1, k1, n2, k2).map_err(py_err)
}

/// The full analysis report as a JSON string.
#[pyfunction]
fn analyze_json(n: u64, k: u64) -> PyResult<String> {
    let r = report::analyze(n, k).map_err(py_err)?;
    serde_json::to_string(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn pdg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PowerDigraph>()?;
    m.add_function(wrap_pyfunction!(coprime_split, m)?)?;
    m.add_function(wrap_pyfunction!(euler_phi, m)?)?;
    m.add_function(wrap_pyfunction!(moebius, m)?)?;
    m.add_function(wrap_pyfunction!(mult_order, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_structure, m)?)?;
    m.add_function(wrap_pyfunction!(cycles_of_length, m)?)?;
    m.add_function(wrap_pyfunction!(tree_profile, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_height, m)?)?;
    m.add_function(wrap_pyfunction!(char_poly, m)?)?;
    m.add_function(wrap_pyfunction!(min_poly, m)?)?;
    m.add_function(wrap_pyfunction!(aut_order, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(is_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_json, m)?)?;
    Ok(())
}
