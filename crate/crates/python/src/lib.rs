//! Python module `tkc`: temporal graphs, k-core queries and their results.

use std::collections::BTreeSet;
use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tkc_core::ingest::{open_path, ColumnOrder};
use tkc_core::{
    components_of, edge_fingerprint, graph_from_triples, graph_stats, parse_edge_list, run_query,
    Algorithm, CoreSummary, IngestError, ParseConfig, QuerySpec, QueryStats, TemporalEdge,
    TimeInterval, Timestamp,
};

fn ingest_err(e: IngestError) -> PyErr {
    match e {
        IngestError::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Immutable temporal multigraph. Vertex ids are the caller's; timestamps
/// are 1-based offsets when the graph was normalized.
#[pyclass(name = "TemporalGraph", module = "tkc", frozen)]
pub struct PyTemporalGraph {
    inner: tkc_core::TemporalGraph,
}

#[pymethods]
impl PyTemporalGraph {
    #[new]
    #[pyo3(signature = (edges, normalize = false))]
    fn new(edges: Vec<(u64, u64, Timestamp)>, normalize: bool) -> PyResult<Self> {
        let parsed = graph_from_triples(edges, normalize).map_err(ingest_err)?;
        Ok(PyTemporalGraph {
            inner: parsed.graph,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    /// Sorted distinct timestamps.
    #[getter]
    fn timeline(&self) -> Vec<Timestamp> {
        self.inner.timeline().to_vec()
    }

    /// Raw timestamp of offset 1, or None if timestamps are raw.
    #[getter]
    fn time_origin(&self) -> Option<Timestamp> {
        self.inner.time_origin()
    }

    /// `(src, dst, t)` triples in timestamp order.
    fn edges(&self) -> Vec<(u64, u64, Timestamp)> {
        self.inner
            .edges()
            .iter()
            .map(|e| external(&self.inner, e))
            .collect()
    }

    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = graph_stats(&self.inner);
        let d = PyDict::new(py);
        d.set_item("vertices", s.vertices)?;
        d.set_item("edges", s.edges)?;
        d.set_item("distinct_timestamps", s.distinct_timestamps)?;
        d.set_item("t_min", s.t_min)?;
        d.set_item("t_max", s.t_max)?;
        d.set_item("span_days", s.span_days)?;
        Ok(d)
    }

    /// Distinct temporal k-cores of subintervals of `[ts, te]`.
    #[pyo3(signature = (k, ts, te, algorithm = "otcd", min_strength = 1, max_span = None, top_shortest = None, materialize = false))]
    #[allow(clippy::too_many_arguments)]
    fn query(
        &self,
        py: Python<'_>,
        k: u32,
        ts: Timestamp,
        te: Timestamp,
        algorithm: &str,
        min_strength: u32,
        max_span: Option<u64>,
        top_shortest: Option<usize>,
        materialize: bool,
    ) -> PyResult<PyResultSet> {
        let spec = build_spec(
            k,
            ts,
            te,
            algorithm,
            min_strength,
            max_span,
            top_shortest,
            materialize,
        )?;
        let results =
            run_query(&self.inner, &spec).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let cores = results
            .iter()
            .map(|c| Py::new(py, PyCore::from_summary(&self.inner, c)))
            .collect::<PyResult<_>>()?;
        Ok(PyResultSet {
            algorithm: results.algorithm,
            cores,
            stats: results.stats.clone(),
        })
    }

    /// Runs all three algorithms; returns `(agree, core_count)`.
    #[pyo3(signature = (k, ts, te, min_strength = 1))]
    fn verify(
        &self,
        k: u32,
        ts: Timestamp,
        te: Timestamp,
        min_strength: u32,
    ) -> PyResult<(bool, usize)> {
        let spec = build_spec(k, ts, te, "otcd", min_strength, None, None, true)?;
        let mut sets = Vec::new();
        for algo in Algorithm::ALL {
            let r = run_query(&self.inner, &spec.clone().with_algorithm(algo))
                .map_err(|e| PyValueError::new_err(e.to_string()))?;
            sets.push(r.signatures().expect("materialized"));
        }
        let agree = sets.windows(2).all(|w| w[0] == w[1]);
        Ok((agree, sets[0].len()))
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "TemporalGraph(vertices={}, edges={}, timestamps={})",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.timeline().len()
        )
    }
}

fn external(g: &tkc_core::TemporalGraph, e: &TemporalEdge) -> (u64, u64, Timestamp) {
    (g.external_id(e.src), g.external_id(e.dst), e.t)
}

#[allow(clippy::too_many_arguments)]
fn build_spec(
    k: u32,
    ts: Timestamp,
    te: Timestamp,
    algorithm: &str,
    min_strength: u32,
    max_span: Option<u64>,
    top_shortest: Option<usize>,
    materialize: bool,
) -> PyResult<QuerySpec> {
    let range = TimeInterval::try_new(ts, te)
        .ok_or_else(|| PyValueError::new_err(format!("ts {ts} is after te {te}")))?;
    let algorithm: Algorithm = algorithm
        .parse()
        .map_err(|e: tkc_core::QueryError| PyValueError::new_err(e.to_string()))?;
    let mut spec = QuerySpec::new(k, range)
        .with_sigma(min_strength)
        .with_algorithm(algorithm);
    spec.max_span = max_span;
    spec.top_n_shortest = top_shortest;
    spec.materialize = materialize;
    spec.validate()
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(spec)
}

/// One distinct temporal k-core.
#[pyclass(name = "Core", module = "tkc", frozen)]
pub struct PyCore {
    #[pyo3(get)]
    tti: (Timestamp, Timestamp),
    #[pyo3(get)]
    vertex_count: usize,
    #[pyo3(get)]
    edge_count: usize,
    /// Input vertex ids, or None unless materialized.
    #[pyo3(get)]
    vertices: Option<Vec<u64>>,
    /// `(src, dst, t)` triples, or None unless materialized.
    #[pyo3(get)]
    edges: Option<Vec<(u64, u64, Timestamp)>>,
    fingerprint: Option<String>,
    components: Option<Vec<Vec<u64>>>,
}

impl PyCore {
    fn from_summary(g: &tkc_core::TemporalGraph, c: &CoreSummary) -> Self {
        let edges = c.edges.as_deref();
        PyCore {
            tti: (c.tti.start, c.tti.end),
            vertex_count: c.vertex_count,
            edge_count: c.edge_count,
            vertices: c.vertices.as_ref().map(|vs| {
                let ids: BTreeSet<u64> = vs.iter().map(|&v| g.external_id(v)).collect();
                ids.into_iter().collect()
            }),
            edges: edges.map(|es| es.iter().map(|e| external(g, e)).collect()),
            fingerprint: edges.map(|es| edge_fingerprint(es).to_hex()),
            components: edges.map(|es| {
                components_of(es)
                    .into_iter()
                    .map(|comp| {
                        let mut ids: Vec<u64> =
                            comp.into_iter().map(|v| g.external_id(v)).collect();
                        ids.sort_unstable();
                        ids
                    })
                    .collect()
            }),
        }
    }
}

#[pymethods]
impl PyCore {
    /// SHA-256 hex of the core's edge multiset over the graph's dense ids;
    /// None unless materialized.
    #[getter]
    fn fingerprint(&self) -> Option<String> {
        self.fingerprint.clone()
    }

    /// Connected components as sorted vertex id lists; None unless
    /// materialized.
    fn components(&self) -> Option<Vec<Vec<u64>>> {
        self.components.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Core(tti=[{},{}], vertices={}, edges={})",
            self.tti.0, self.tti.1, self.vertex_count, self.edge_count
        )
    }
}

/// Cores of one query in ascending TTI order, plus statistics.
#[pyclass(name = "ResultSet", module = "tkc", frozen)]
pub struct PyResultSet {
    algorithm: Algorithm,
    cores: Vec<Py<PyCore>>,
    stats: QueryStats,
}

#[pymethods]
impl PyResultSet {
    #[getter]
    fn algorithm(&self) -> &'static str {
        self.algorithm.name()
    }

    #[getter]
    fn cores(&self, py: Python<'_>) -> Vec<Py<PyCore>> {
        self.cores.iter().map(|c| c.clone_ref(py)).collect()
    }

    fn ttis(&self, py: Python<'_>) -> Vec<(Timestamp, Timestamp)> {
        self.cores.iter().map(|c| c.bind(py).get().tti).collect()
    }

    #[getter]
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        stats_dict(py, &self.stats)
    }

    fn __len__(&self) -> usize {
        self.cores.len()
    }

    fn __getitem__(&self, py: Python<'_>, i: isize) -> PyResult<Py<PyCore>> {
        let n = self.cores.len() as isize;
        let j = if i < 0 { i + n } else { i };
        if !(0..n).contains(&j) {
            return Err(pyo3::exceptions::PyIndexError::new_err(
                "core index out of range",
            ));
        }
        Ok(self.cores[j as usize].clone_ref(py))
    }

    fn __repr__(&self) -> String {
        format!(
            "ResultSet(algorithm={}, cores={})",
            self.algorithm,
            self.cores.len()
        )
    }
}

fn stats_dict<'py>(py: Python<'py>, s: &QueryStats) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("total_cells", s.total_cells)?;
    d.set_item("cells_visited", s.cells_visited)?;
    d.set_item("tcd_ops", s.tcd_ops)?;
    d.set_item("head_advances", s.head_advances)?;
    d.set_item("nonempty_inductions", s.nonempty_inductions)?;
    d.set_item("empties", s.empties)?;
    d.set_item("pruned_por", s.pruned_cells.por)?;
    d.set_item("pruned_pou", s.pruned_cells.pou)?;
    d.set_item("pruned_pol", s.pruned_cells.pol)?;
    d.set_item("pruned_pct", s.pruned_percentage())?;
    d.set_item("triggers_por", s.triggers.por)?;
    d.set_item("triggers_pou", s.triggers.pou)?;
    d.set_item("triggers_pol", s.triggers.pol)?;
    d.set_item("peak_tel_edges", s.peak_tel_edges)?;
    d.set_item("edges_deleted", s.edges_deleted)?;
    d.set_item("wall_time_s", s.wall_time.as_secs_f64())?;
    Ok(d)
}

/// Reads a SNAP/KONECT edge list; `.gz` files are decompressed.
#[pyfunction]
#[pyo3(signature = (path, weighted = false, normalize = true, lenient = false))]
fn load(
    path: PathBuf,
    weighted: bool,
    normalize: bool,
    lenient: bool,
) -> PyResult<PyTemporalGraph> {
    let config = ParseConfig {
        column_order: if weighted {
            ColumnOrder::SrcDstWT
        } else {
            ColumnOrder::SrcDstT
        },
        normalize,
        lenient,
        ..ParseConfig::default()
    };
    let reader =
        open_path(&path).map_err(|e| PyIOError::new_err(format!("{}: {e}", path.display())))?;
    let parsed = parse_edge_list(reader, &config).map_err(ingest_err)?;
    Ok(PyTemporalGraph {
        inner: parsed.graph,
    })
}

/// SHA-256 hex of an edge multiset given as `(u, v, t)` triples with
/// non-negative 32-bit ids; orientation and order do not matter.
#[pyfunction]
fn fingerprint(edges: Vec<(u32, u32, Timestamp)>) -> String {
    let edges: Vec<TemporalEdge> = edges
        .into_iter()
        .map(|(u, v, t)| TemporalEdge::new(u, v, t))
        .collect();
    edge_fingerprint(&edges).to_hex()
}

#[pymodule]
fn tkc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTemporalGraph>()?;
    m.add_class::<PyCore>()?;
    m.add_class::<PyResultSet>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(fingerprint, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
