//! Python bindings: graphs, clique-width terms, the exact solvers, the graph
//! families and the experiment pipelines.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cwlab::experiments::{self, Checkpoint, ExactBackend, SearchConfig};
use cwlab::io::{format_graph, parse_graph, to_dot};
use cwlab::solvers::{self, CwdBudget};
use cwlab::{constructions, CwTerm, Edge};

fn py_err(e: cwlab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[pyclass(name = "Graph", module = "cwlab_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: cwlab::Graph,
}

impl From<cwlab::Graph> for PyGraph {
    fn from(inner: cwlab::Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (vertices, edges = Vec::new()))]
    fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        Ok(cwlab::Graph::new(vertices, edges).map_err(py_err)?.into())
    }

    /// Parses the `v name` / `e a b` text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(parse_graph(text).map_err(py_err)?.into())
    }

    fn to_text(&self) -> String {
        format_graph(&self.inner)
    }

    #[pyo3(signature = (name = "g"))]
    fn to_dot(&self, name: &str) -> String {
        to_dot(&self.inner, name)
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    fn edges(&self) -> Vec<Edge> {
        self.inner.edges()
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn has_edge(&self, a: &str, b: &str) -> PyResult<bool> {
        self.inner.has_edge(a, b).map_err(py_err)
    }

    fn neighbours(&self, v: &str) -> PyResult<Vec<String>> {
        Ok(self.inner.neighbours(v).map_err(py_err)?.into_iter().map(str::to_string).collect())
    }

    fn degree(&self, v: &str) -> PyResult<usize> {
        self.inner.degree(v).map_err(py_err)
    }

    fn distance(&self, a: &str, b: &str) -> PyResult<Option<usize>> {
        self.inner.distance(a, b).map_err(py_err)
    }

    fn delete_vertex(&self, v: &str) -> PyResult<Self> {
        Ok(self.inner.delete_vertex(v).map_err(py_err)?.into())
    }

    fn delete_vertices(&self, vs: Vec<String>) -> PyResult<Self> {
        Ok(self.inner.delete_vertices(vs.iter().map(String::as_str)).map_err(py_err)?.into())
    }

    fn local_complement(&self, v: &str) -> PyResult<Self> {
        Ok(self.inner.local_complement(v).map_err(py_err)?.into())
    }

    fn erase_vertex(&self, v: &str) -> PyResult<Self> {
        Ok(self.inner.erase_vertex(v).map_err(py_err)?.into())
    }

    /// Contracts a set of edges; returns the graph and the merge map.
    fn contract(&self, edges: Vec<(String, String)>) -> PyResult<(Self, BTreeMap<String, String>)> {
        let f: Vec<Edge> = edges.into_iter().map(|(a, b)| cwlab::edge(a, b)).collect();
        let r = self.inner.contract_edges(&f).map_err(py_err)?;
        Ok((r.graph.into(), r.merge_map))
    }

    fn is_stable(&self, vs: Vec<String>) -> PyResult<bool> {
        self.inner.is_stable(vs.iter().map(String::as_str)).map_err(py_err)
    }

    fn complement(&self) -> Self {
        self.inner.complement().into()
    }

    fn __repr__(&self) -> String {
        format!("Graph({} vertices, {} edges)", self.inner.vertex_count(), self.inner.edge_count())
    }
}

#[pyclass(name = "Term", module = "cwlab_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyTerm {
    inner: CwTerm,
}

#[pymethods]
impl PyTerm {
    /// Parses an s-expression such as `(add 1 2 (u (v 1 a) (v 2 b)))`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyTerm { inner: text.parse().map_err(py_err)? })
    }

    fn width(&self) -> usize {
        cwlab::term_width(&self.inner)
    }

    fn is_linear(&self) -> bool {
        cwlab::is_linear(&self.inner)
    }

    /// The graph built by the term and the final label of every vertex.
    fn evaluate(&self) -> PyResult<(PyGraph, BTreeMap<String, u32>)> {
        let lg = cwlab::eval_term(&self.inner).map_err(py_err)?;
        Ok((lg.graph.into(), lg.labels))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.inner.to_string())
    }
}

fn budget(max_states: Option<usize>) -> CwdBudget {
    let mut b = CwdBudget { max_vertices: 16, ..CwdBudget::default() };
    if let Some(s) = max_states {
        b.max_states = s;
    }
    b
}

/// Exact clique-width and a witness term.
#[pyfunction]
#[pyo3(signature = (g, max_states = None))]
fn cwd(g: &PyGraph, max_states: Option<usize>) -> PyResult<(usize, PyTerm)> {
    let out = solvers::cwd_exact(&g.inner, &budget(max_states)).map_err(py_err)?;
    Ok((out.value, PyTerm { inner: out.witness }))
}

/// Exact linear clique-width and a witness term.
#[pyfunction]
#[pyo3(signature = (g, max_states = None))]
fn lcwd(g: &PyGraph, max_states: Option<usize>) -> PyResult<(usize, PyTerm)> {
    let out = solvers::lcwd_exact(&g.inner, &budget(max_states)).map_err(py_err)?;
    Ok((out.value, PyTerm { inner: out.witness }))
}

/// A width-`k` term for `g`, or `None`.
#[pyfunction]
#[pyo3(signature = (g, k, linear = false))]
fn cwd_leq(g: &PyGraph, k: usize, linear: bool) -> PyResult<Option<PyTerm>> {
    let b = budget(None);
    let d = if linear { solvers::lcwd_leq(&g.inner, k, &b) } else { solvers::cwd_leq(&g.inner, k, &b) }
        .map_err(py_err)?;
    Ok(d.witness.map(|inner| PyTerm { inner }))
}

/// Exact rank-width and its branch decomposition as JSON.
#[pyfunction]
fn rwd(g: &PyGraph) -> PyResult<(usize, String)> {
    let rw = solvers::rank_width_exact(&g.inner).map_err(py_err)?;
    Ok((rw.value, to_json(&rw.certificate)))
}

#[pyfunction]
fn cut_rank(g: &PyGraph, side: Vec<String>) -> PyResult<usize> {
    solvers::cut_rank(&g.inner, side.iter().map(String::as_str)).map_err(py_err)
}

#[pyfunction]
fn is_cograph(g: &PyGraph) -> bool {
    solvers::is_cograph(&g.inner)
}

#[pyfunction]
fn isomorphic(a: &PyGraph, b: &PyGraph) -> PyResult<bool> {
    cwlab::canonical_iso_equal(&a.inner, &b.inner).map_err(py_err)
}

/// One of the families `G`, `H`, `Hprime`, `grid`.
#[pyfunction]
fn generate(family: &str, n: usize) -> PyResult<PyGraph> {
    let g = match family {
        "G" => constructions::gen_g(n),
        "H" => constructions::gen_h(n),
        "Hprime" => constructions::gen_hprime(n),
        "grid" => constructions::gen_grid(n),
        other => return Err(PyValueError::new_err(format!("unknown family `{other}`"))),
    };
    Ok(g.map_err(py_err)?.into())
}

/// Distance-2 graph on a stable set.
#[pyfunction]
fn alpha(g: &PyGraph, xs: Vec<String>) -> PyResult<PyGraph> {
    Ok(constructions::alpha(&g.inner, xs.iter().map(String::as_str)).map_err(py_err)?.into())
}

/// Runs `prop1` or `prop1alt` and returns the report as JSON.
#[pyfunction]
fn pipeline(name: &str, size: usize) -> PyResult<String> {
    let r = match name {
        "prop1" => experiments::prop1_pipeline(size, false),
        "prop1alt" => experiments::prop1_alt_pipeline(size, false),
        other => return Err(PyValueError::new_err(format!("unknown pipeline `{other}`"))),
    };
    Ok(to_json(&r.map_err(py_err)?))
}

/// Runs the witness search and returns the outcome as JSON.
#[pyfunction]
#[pyo3(signature = (n_max = 3, max_candidates = None, resume = None))]
fn witness_search(n_max: usize, max_candidates: Option<u64>, resume: Option<&str>) -> PyResult<String> {
    let resume = resume.map(Checkpoint::from_json).transpose().map_err(py_err)?;
    let config = SearchConfig { n_max, max_candidates, ..SearchConfig::default() };
    let out = experiments::witness_search(&ExactBackend::default(), &config, resume.as_ref()).map_err(py_err)?;
    Ok(to_json(&out))
}

#[pymodule]
fn cwlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyTerm>()?;
    m.add_function(wrap_pyfunction!(cwd, m)?)?;
    m.add_function(wrap_pyfunction!(lcwd, m)?)?;
    m.add_function(wrap_pyfunction!(cwd_leq, m)?)?;
    m.add_function(wrap_pyfunction!(rwd, m)?)?;
    m.add_function(wrap_pyfunction!(cut_rank, m)?)?;
    m.add_function(wrap_pyfunction!(is_cograph, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(witness_search, m)?)?;
    Ok(())
}
