//! Python bindings: graphs, digraphs, their polynomials and the named scans.
//!
//! Polynomials in the binomial basis come back as `{shift: coefficient}`
//! dicts, monomial polynomials as `{power: "p/q"}`, and Δ as
//! `{exponent: coefficient}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use orderpoly_core::gn::{gn_membership, vanishing_characterization};
use orderpoly_core::order_poly::{order_polynomial, strict_order_polynomial};
use orderpoly_core::psi::{
    chromatic, delta_poly, digraph_witnesses, graph_witnesses, psi_digraph, psi_graph, verify_graph_identity,
};
use orderpoly_core::relabel::{sink_elimination_orderings, sink_elimination_sequence, theorem_defect};
use orderpoly_core::scan::{run_scan, Limits, ScanConfig};
use orderpoly_core::structures::parse;
use orderpoly_core::{AcyclicDigraph, BinomPoly, Error, Instance, LabeledGraph, Ordering, RatPoly, Vertex};

create_exception!(orderpoly, FindingError, PyRuntimeError, "A checked identity failed on this instance.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Finding(f) => FindingError::new_err(format!("{f}\n{}", f.instance)),
        e if e.exit_code() == 2 => PyValueError::new_err(e.to_string()),
        e => PyRuntimeError::new_err(e.to_string()),
    }
}

fn binom(p: &BinomPoly) -> BTreeMap<usize, BigInt> {
    p.iter().map(|(i, c)| (i, c.clone())).collect()
}

fn monomial(p: &RatPoly) -> BTreeMap<usize, String> {
    p.iter().map(|(k, c)| (k, c.to_string())).collect()
}

/// A labelled graph on vertices 1..n.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(LabeledGraph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> PyResult<Self> {
        LabeledGraph::from_edges(n, &edges).map(PyGraph).map_err(py_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.0.edges()
    }

    fn psi(&self) -> BTreeMap<usize, BigInt> {
        binom(&psi_graph(&self.0))
    }

    fn chromatic(&self) -> BTreeMap<usize, String> {
        monomial(&chromatic(&self.0))
    }

    fn witnesses(&self) -> Vec<[Vertex; 3]> {
        graph_witnesses(&self.0).triples.into_iter().collect()
    }

    /// (holds, defect) where defect is None below three vertices.
    fn identity(&self) -> PyResult<(bool, Option<BTreeMap<usize, BigInt>>)> {
        let r = verify_graph_identity(&self.0).map_err(py_err)?;
        Ok((r.holds, r.defect.as_ref().map(binom)))
    }

    fn vanishing(&self) -> PyResult<bool> {
        vanishing_characterization(&self.0).map_err(py_err)
    }

    /// The lexicographically least ω with no witnesses, or None.
    fn relabeling(&self) -> PyResult<Option<Vec<Vertex>>> {
        Ok(gn_membership(&self.0).map_err(py_err)?.omega)
    }

    fn to_text(&self) -> String {
        Instance::Graph(self.0.clone()).to_text()
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.0.order(), self.0.edges())
    }
}

/// An acyclic digraph on arbitrary positive labels.
#[pyclass(name = "Digraph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDigraph(AcyclicDigraph);

#[pymethods]
impl PyDigraph {
    #[new]
    fn new(vertices: Vec<Vertex>, arcs: Vec<(Vertex, Vertex)>) -> PyResult<Self> {
        AcyclicDigraph::new(&vertices, &arcs).map(PyDigraph).map_err(py_err)
    }

    #[getter]
    fn vertices(&self) -> Vec<Vertex> {
        self.0.vertices().to_vec()
    }

    #[getter]
    fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        self.0.arcs()
    }

    fn linear_extensions(&self) -> Vec<Vec<Vertex>> {
        self.0.linear_extensions().into_iter().map(Ordering::into_vec).collect()
    }

    fn psi(&self) -> BTreeMap<usize, BigInt> {
        binom(&psi_digraph(&self.0))
    }

    fn delta(&self) -> BTreeMap<i32, BigInt> {
        delta_poly(&self.0).iter().map(|(e, c)| (e, c.clone())).collect()
    }

    fn omega(&self) -> PyResult<BTreeMap<usize, String>> {
        order_polynomial(&self.0.poset()).map(|p| monomial(&p)).map_err(py_err)
    }

    fn strict_omega(&self) -> PyResult<BTreeMap<usize, String>> {
        strict_order_polynomial(&self.0.poset()).map(|p| monomial(&p)).map_err(py_err)
    }

    fn witnesses(&self) -> Vec<[Vertex; 3]> {
        digraph_witnesses(&self.0).triples.into_iter().collect()
    }

    /// d_i of Ψ - Ω on C(x+i, n-2), as a list.
    fn defect(&self) -> PyResult<Vec<BigInt>> {
        theorem_defect(&self.0).map(|d| d.to_vec()).map_err(py_err)
    }

    fn sink_elimination_orderings(&self) -> Vec<Vec<Vertex>> {
        sink_elimination_orderings(&self.0).into_iter().map(Ordering::into_vec).collect()
    }

    /// The relabelled digraphs of the sink-elimination sequence along `alpha`.
    fn gamma(&self, alpha: Vec<Vertex>) -> PyResult<Vec<PyDigraph>> {
        let alpha = Ordering::new(alpha).map_err(py_err)?;
        let g = sink_elimination_sequence(&self.0, &alpha).map_err(py_err)?;
        Ok(g.digraphs.into_iter().map(PyDigraph).collect())
    }

    fn to_text(&self) -> String {
        Instance::Digraph(self.0.clone()).to_text()
    }

    fn __repr__(&self) -> String {
        format!("Digraph({:?}, {:?})", self.0.vertices(), self.0.arcs())
    }
}

/// Parses the canonical text format into a Graph or a Digraph.
#[pyfunction]
fn from_text(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(match parse(text).map_err(py_err)? {
        Instance::Graph(g) => Py::new(py, PyGraph(g))?.into_any(),
        Instance::Digraph(d) => Py::new(py, PyDigraph(d))?.into_any(),
    })
}

/// Runs a named check over a class; returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (class_name, order, check, pool = 6))]
fn scan(py: Python<'_>, class_name: &str, order: usize, check: &str, pool: Vertex) -> PyResult<String> {
    let cfg = ScanConfig { class: class_name.parse().map_err(py_err)?, order, pool, check: check.to_string() };
    let report = py.detach(|| run_scan(&cfg, &Limits::default())).map_err(py_err)?;
    serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn orderpoly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDigraph>()?;
    m.add_function(wrap_pyfunction!(from_text, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add("FindingError", m.py().get_type::<FindingError>())?;
    Ok(())
}
