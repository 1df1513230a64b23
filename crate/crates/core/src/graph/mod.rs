//! Road networks and shortest-path travel metrics.

mod io;
mod metrics;
pub mod synthetic;

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub use io::{load_graph, parse_graph, write_graph, GraphFormat};
pub use metrics::{MetricsMode, TravelMetrics, DEFAULT_TIME_FACTOR};

/// Dense internal POI index. Original dataset labels are kept by the
/// [`RoadNetwork`] and only used for I/O.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PoiId(pub u32);

impl PoiId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PoiId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: edge weight {weight} is not strictly positive")]
    NonPositiveWeight { line: usize, weight: f64 },
    #[error("graph has no edges")]
    Empty,
    #[error("unknown graph format '{0}' (expected edgelist, oldenburg or mtx)")]
    UnknownFormat(String),
    #[error("time factor must be a positive number, got {0}")]
    InvalidTimeFactor(f64),
    #[error("poi label {0} is not in the network")]
    UnknownLabel(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: PoiId,
    pub v: PoiId,
    pub weight: f64,
}

/// What the loader had to clean up while building the network.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

/// Simple, weighted, undirected graph of POIs.
///
/// Edges are stored once with `u < v`; adjacency is a CSR layout holding
/// both directions.
#[derive(Clone, Debug)]
pub struct RoadNetwork {
    labels: Vec<u64>,
    label_index: HashMap<u64, PoiId>,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    neighbors: Vec<(PoiId, f64)>,
    report: LoadReport,
}

impl PartialEq for RoadNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl RoadNetwork {
    pub fn builder() -> NetworkBuilder {
        NetworkBuilder::default()
    }

    /// Convenience constructor for labelled `(u, v, w)` triples.
    pub fn from_edges(edges: &[(u64, u64, f64)]) -> Result<Self, GraphError> {
        let mut b = Self::builder();
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            b.add_edge(i + 1, u, v, w)?;
        }
        b.finish()
    }

    pub fn poi_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn pois(&self) -> impl Iterator<Item = PoiId> + '_ {
        (0..self.labels.len() as u32).map(PoiId)
    }

    pub fn contains(&self, poi: PoiId) -> bool {
        poi.index() < self.labels.len()
    }

    pub fn neighbors(&self, poi: PoiId) -> &[(PoiId, f64)] {
        let i = poi.index();
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, poi: PoiId) -> usize {
        self.neighbors(poi).len()
    }

    pub fn label(&self, poi: PoiId) -> u64 {
        self.labels[poi.index()]
    }

    pub fn poi_by_label(&self, label: u64) -> Option<PoiId> {
        self.label_index.get(&label).copied()
    }

    pub fn load_report(&self) -> LoadReport {
        self.report
    }

    pub fn mean_edge_weight(&self) -> f64 {
        if self.edges.is_empty() {
            return 0.0;
        }
        self.edges.iter().map(|e| e.weight).sum::<f64>() / self.edges.len() as f64
    }

    /// `2m / (n (n - 1))`.
    pub fn density(&self) -> f64 {
        let n = self.poi_count() as f64;
        if n < 2.0 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / (n * (n - 1.0))
    }

    pub fn average_degree(&self) -> f64 {
        if self.labels.is_empty() {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.poi_count() as f64
    }

    /// Number of connected components (isolated POIs count as one each).
    pub fn component_count(&self) -> usize {
        let n = self.poi_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(PoiId(s as u32));
            while let Some(x) = stack.pop() {
                for &(y, _) in self.neighbors(x) {
                    if !seen[y.index()] {
                        seen[y.index()] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    /// Induced subgraph on the POIs for which `keep` returns true.
    /// Labels are carried over unchanged.
    pub fn induced_subgraph(&self, keep: impl Fn(PoiId) -> bool) -> Result<Self, GraphError> {
        let mut b = Self::builder();
        for p in self.pois().filter(|&p| keep(p)) {
            b.add_node(self.label(p));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if keep(e.u) && keep(e.v) {
                b.add_edge(i + 1, self.label(e.u), self.label(e.v), e.weight)?;
            }
        }
        b.finish()
    }
}

/// Accumulates labelled edges, dropping self-loops and collapsing
/// duplicate undirected edges to their minimum weight.
#[derive(Default)]
pub struct NetworkBuilder {
    nodes: Vec<u64>,
    edges: HashMap<(u64, u64), f64>,
    report: LoadReport,
}

impl NetworkBuilder {
    pub fn add_node(&mut self, label: u64) {
        self.nodes.push(label);
    }

    /// `line` is only used for error messages.
    pub fn add_edge(&mut self, line: usize, u: u64, v: u64, weight: f64) -> Result<(), GraphError> {
        if !weight.is_finite() {
            return Err(GraphError::Malformed {
                line,
                message: format!("weight {weight} is not finite"),
            });
        }
        if weight <= 0.0 {
            return Err(GraphError::NonPositiveWeight { line, weight });
        }
        self.nodes.push(u);
        self.nodes.push(v);
        if u == v {
            self.report.self_loops_dropped += 1;
            return Ok(());
        }
        let key = (u.min(v), u.max(v));
        match self.edges.get_mut(&key) {
            Some(w) => {
                self.report.duplicates_collapsed += 1;
                *w = w.min(weight);
            }
            None => {
                self.edges.insert(key, weight);
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<RoadNetwork, GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::Empty);
        }
        self.nodes.sort_unstable();
        self.nodes.dedup();
        let labels = self.nodes;
        let label_index: HashMap<u64, PoiId> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, PoiId(i as u32)))
            .collect();

        let mut edges: Vec<Edge> = self
            .edges
            .into_iter()
            .map(|((a, b), weight)| Edge {
                u: label_index[&a],
                v: label_index[&b],
                weight,
            })
            .collect();
        edges.sort_unstable_by_key(|e| (e.u, e.v));

        let n = labels.len();
        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u.index()] += 1;
            degree[e.v.index()] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![(PoiId(0), 0.0); offsets[n]];
        for e in &edges {
            neighbors[fill[e.u.index()]] = (e.v, e.weight);
            fill[e.u.index()] += 1;
            neighbors[fill[e.v.index()]] = (e.u, e.weight);
            fill[e.v.index()] += 1;
        }

        Ok(RoadNetwork {
            labels,
            label_index,
            edges,
            offsets,
            neighbors,
            report: self.report,
        })
    }
}

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    poi: u32,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.poi.cmp(&self.poi))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `source`; unreachable POIs get `f64::INFINITY`.
pub fn single_source_costs(net: &RoadNetwork, source: PoiId) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; net.poi_count()];
    let mut heap = BinaryHeap::new();
    dist[source.index()] = 0.0;
    heap.push(HeapEntry {
        dist: 0.0,
        poi: source.0,
    });
    while let Some(HeapEntry { dist: d, poi }) = heap.pop() {
        if d > dist[poi as usize] {
            continue;
        }
        for &(next, w) in net.neighbors(PoiId(poi)) {
            let nd = d + w;
            if nd < dist[next.index()] {
                dist[next.index()] = nd;
                heap.push(HeapEntry {
                    dist: nd,
                    poi: next.0,
                });
            }
        }
    }
    dist
}

/// Shortest-path travel cost between two POIs, `None` when disconnected.
///
/// The search always runs from the smaller id so that the result is
/// bit-for-bit symmetric.
pub fn shortest_cost(net: &RoadNetwork, u: PoiId, v: PoiId) -> Option<f64> {
    if u == v {
        return Some(0.0);
    }
    let (s, t) = if u < v { (u, v) } else { (v, u) };
    let d = single_source_costs(net, s)[t.index()];
    d.is_finite().then_some(d)
}
