//! Python bindings. Structured results (folds, searches, reports) come back as
//! plain dicts and lists, with exact rationals as `"p/q"` strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use homthresh::canon::is_isomorphic;
use homthresh::generators::{self, BlowupSpec};
use homthresh::harness::{self, CampaignConfig, DegreeBound, EnumerationConstraints};
use homthresh::homomorphism::{self as hom, FoldOptions, HomOptions, Homomorphism};
use homthresh::io::{from_graph6, to_graph6};
use homthresh::optimizer::{optimal_blowup_weights, parse_ratio};
use homthresh::structure;

fn err(e: homthresh::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serialises through JSON into native Python objects.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "homthresh", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: homthresh::Graph,
}

impl From<homthresh::Graph> for PyGraph {
    fn from(inner: homthresh::Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        homthresh::make_graph(n, &edges).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        from_graph6(text.trim()).map(Into::into).map_err(err)
    }

    fn graph6(&self) -> String {
        to_graph6(&self.inner)
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.order() && v < self.inner.order() && self.inner.has_edge(u, v)
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn min_degree(&self) -> PyResult<usize> {
        self.inner.min_degree().map_err(err)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    /// Length of the shortest odd cycle, or `None` for bipartite graphs.
    fn odd_girth(&self) -> Option<usize> {
        structure::shortest_odd_cycle(&self.inner).map(|c| c.len())
    }

    #[pyo3(signature = (ell = 3))]
    fn is_free(&self, ell: usize) -> bool {
        structure::is_free(&self.inner, ell)
    }

    #[pyo3(signature = (ell = 3))]
    fn is_maximal_free(&self, ell: usize) -> bool {
        structure::is_maximal_free(&self.inner, ell)
    }

    #[pyo3(signature = (ell = 3))]
    fn saturate(&self, ell: usize) -> PyResult<PyGraph> {
        structure::saturate(&self.inner, ell).map(Into::into).map_err(err)
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        is_isomorphic(&self.inner, &other.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Graph(order={}, size={}, graph6='{}')", self.inner.order(), self.inner.size(), self.graph6())
    }
}

#[pyfunction]
#[pyo3(signature = (k, ell = 3))]
fn andrasfai(k: usize, ell: usize) -> PyResult<PyGraph> {
    generators::andrasfai(k, ell).map(Into::into).map_err(err)
}

#[pyfunction]
fn complement_power_cycle(n: usize, p: usize) -> PyResult<PyGraph> {
    generators::complement_power_cycle(n, p).map(Into::into).map_err(err)
}

#[pyfunction]
fn mycielski(g: &PyGraph) -> PyGraph {
    generators::mycielski(&g.inner).into()
}

#[pyfunction]
fn subdivided_k4(ell: usize) -> PyResult<PyGraph> {
    generators::subdivided_k4(ell).map(Into::into).map_err(err)
}

/// `cycle`, `path`, `complete` (these need `n`), `grotzsch` or `moebius`.
#[pyfunction]
#[pyo3(signature = (name, n = None))]
fn named(name: &str, n: Option<usize>) -> PyResult<PyGraph> {
    generators::named_family(name, n).map(Into::into).map_err(err)
}

#[pyfunction]
fn blow_up(pattern: &PyGraph, sizes: Vec<usize>) -> PyResult<PyGraph> {
    let spec = BlowupSpec::new(pattern.inner.clone(), sizes).map_err(err)?;
    generators::blow_up(&spec).map(Into::into).map_err(err)
}

/// Searches for a homomorphism; returns `{"status", "nodes", "hom"?}`.
#[pyfunction]
#[pyo3(signature = (g, h, budget = None, symmetry_breaking = true))]
fn find_hom<'py>(
    py: Python<'py>,
    g: &PyGraph,
    h: &PyGraph,
    budget: Option<u64>,
    symmetry_breaking: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = HomOptions { budget, symmetry_breaking };
    let search = py.detach(|| hom::find_hom_with(&g.inner, &h.inner, opts));
    to_py(py, &search)
}

#[pyfunction]
fn verify_hom(g: &PyGraph, h: &PyGraph, map: Vec<usize>) -> PyResult<bool> {
    hom::verify_hom(&g.inner, &h.inner, &Homomorphism { map }).map_err(err)
}

/// Least `k` with `g -> F_k`; `g` must be maximal free for `ell`.
#[pyfunction]
#[pyo3(signature = (g, ell = 3, k_max = None, budget = None, structural = false))]
fn fold<'py>(
    py: Python<'py>,
    g: &PyGraph,
    ell: usize,
    k_max: Option<usize>,
    budget: Option<u64>,
    structural: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = FoldOptions { ell, k_max, budget, structural };
    let res = py.detach(|| hom::fold_to_andrasfai(&g.inner, opts)).map_err(err)?;
    to_py(py, &res)
}

#[pyfunction]
fn chromatic_number(py: Python<'_>, g: &PyGraph) -> PyResult<usize> {
    py.detach(|| hom::chromatic_number(&g.inner)).map_err(err)
}

#[pyfunction]
fn is_core(py: Python<'_>, g: &PyGraph) -> bool {
    py.detach(|| hom::is_core(&g.inner))
}

/// Optimal blow-up weights of a pattern, exactly; `certified` re-checks duality.
#[pyfunction]
fn optimize<'py>(py: Python<'py>, pattern: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let res = optimal_blowup_weights(&pattern.inner).map_err(err)?;
    let out = to_py(py, &res)?;
    out.set_item("certified", res.certify(&pattern.inner))?;
    Ok(out)
}

/// All graphs up to isomorphism with the given properties. `min_degree_above`
/// is a `"p/q"` slope for `δ > slope·n + offset`.
#[pyfunction]
#[pyo3(signature = (n_max, n_min = None, connected = false, odd_girth = None, forbid_c5 = false,
                    min_degree = None, min_degree_above = None, offset = "0"))]
#[allow(clippy::too_many_arguments)]
fn enumerate(
    py: Python<'_>,
    n_max: usize,
    n_min: Option<usize>,
    connected: bool,
    odd_girth: Option<usize>,
    forbid_c5: bool,
    min_degree: Option<usize>,
    min_degree_above: Option<&str>,
    offset: &str,
) -> PyResult<Vec<PyGraph>> {
    let bound = match (min_degree, min_degree_above) {
        (Some(_), Some(_)) => return Err(PyValueError::new_err("give min_degree or min_degree_above, not both")),
        (Some(value), None) => DegreeBound::AtLeast { value },
        (None, Some(slope)) => {
            DegreeBound::above(parse_ratio(slope).map_err(err)?, parse_ratio(offset).map_err(err)?)
        }
        (None, None) => DegreeBound::None,
    };
    let c = EnumerationConstraints {
        min_order: n_min.unwrap_or(1),
        max_order: n_max,
        connected,
        odd_girth_at_least: odd_girth,
        forbid_c5,
        min_degree: bound,
    };
    let graphs = py.detach(|| harness::enumerate_graphs(&c)).map_err(err)?;
    Ok(graphs.into_iter().map(Into::into).collect())
}

/// Runs one campaign (or `"all"`). `config` holds any `CampaignConfig` fields.
#[pyfunction]
#[pyo3(signature = (name, config = None))]
fn campaign<'py>(py: Python<'py>, name: &str, config: Option<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
    let cfg: CampaignConfig = match config {
        Some(c) => {
            let text: String = py.import("json")?.call_method1("dumps", (c,))?.extract()?;
            serde_json::from_str(&text).map_err(|e| PyValueError::new_err(format!("bad config: {e}")))?
        }
        None => CampaignConfig::default(),
    };
    if name == "all" {
        let report = py.detach(|| harness::campaign_all(&cfg)).map_err(err)?;
        to_py(py, &report)
    } else {
        let report = py.detach(|| harness::run_campaign(name, &cfg)).map_err(err)?;
        to_py(py, &report)
    }
}

/// Checks one structural statement on `g`; returns the verdict dict.
#[pyfunction]
fn check<'py>(py: Python<'py>, statement: &str, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let verdict = harness::run_statement(statement, &g.inner).ok_or_else(|| {
        PyValueError::new_err(format!(
            "unknown statement '{statement}'; expected one of {:?}",
            harness::STRUCTURE_STATEMENTS
        ))
    })?;
    to_py(py, &verdict)
}

#[pymodule]
#[pyo3(name = "homthresh")]
fn homthresh_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(andrasfai, m)?)?;
    m.add_function(wrap_pyfunction!(complement_power_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(mycielski, m)?)?;
    m.add_function(wrap_pyfunction!(subdivided_k4, m)?)?;
    m.add_function(wrap_pyfunction!(named, m)?)?;
    m.add_function(wrap_pyfunction!(blow_up, m)?)?;
    m.add_function(wrap_pyfunction!(find_hom, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hom, m)?)?;
    m.add_function(wrap_pyfunction!(fold, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(is_core, m)?)?;
    m.add_function(wrap_pyfunction!(optimize, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(campaign, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add("CAMPAIGNS", harness::CAMPAIGNS.to_vec())?;
    m.add("STATEMENTS", harness::STRUCTURE_STATEMENTS.to_vec())?;
    Ok(())
}
