//! Temporal k-core queries.
//!
//! Given a temporal multigraph, an integer `k` and a query range `[Ts, Te]`,
//! enumerate every distinct temporal k-core induced by a subinterval of the
//! range. Cores are induced decrementally on a [`tel::Tel`] by temporal core
//! decomposition, and the optimized enumeration skips subintervals whose core
//! is already known from its tightest time interval.

pub mod decomposition;
pub mod engine;
pub mod ingest;
pub mod model;
pub mod tel;

pub use decomposition::{simple_core_decompose, tcd, DegreeState};
pub use engine::{
    brute_force_enumerate, components_of, connected_components, otcd_enumerate, register_result,
    run_query, run_query_on_tel, tcd_enumerate, Algorithm, QueryError, QuerySpec, QueryStats,
    ResultSet,
};
pub use ingest::{
    graph_from_triples, graph_stats, load_path, parse_edge_list, ColumnOrder, GraphStats,
    IngestError, ParseConfig, ParsedGraph,
};
pub use model::{
    edge_fingerprint, interval_contains, CoreSummary, Fingerprint, TemporalEdge, TemporalGraph,
    TimeInterval, Timestamp, VertexId,
};
pub use tel::{EdgeHandle, Tel, TelError, TlHandle};
