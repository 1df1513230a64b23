use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{single_source_costs, GraphError, PoiId, RoadNetwork};

/// Travel time per unit of distance used in the experiments.
pub const DEFAULT_TIME_FACTOR: f64 = 0.2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MetricsMode {
    /// All-pairs table, `n²` entries, built eagerly.
    #[value(name = "full")]
    #[serde(alias = "full")]
    FullApsp,
    /// One Dijkstra per source, computed on first use and cached.
    #[default]
    OnDemand,
}

/// Shortest-path travel cost `C(u, v)` and travel time `T(u, v) = α·C(u, v)`.
///
/// Every query `(u, v)` is answered from the row of `min(u, v)`, which makes
/// both quantities exactly symmetric. Rows are computed at most once and
/// are safe to fill from several threads.
pub struct TravelMetrics {
    network: Arc<RoadNetwork>,
    time_factor: f64,
    mode: MetricsMode,
    rows: Vec<OnceLock<Box<[f64]>>>,
}

impl std::fmt::Debug for TravelMetrics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TravelMetrics")
            .field("poi_count", &self.rows.len())
            .field("time_factor", &self.time_factor)
            .field("mode", &self.mode)
            .field("cached_rows", &self.cached_rows())
            .finish()
    }
}

impl TravelMetrics {
    pub fn new(
        network: Arc<RoadNetwork>,
        time_factor: f64,
        mode: MetricsMode,
    ) -> Result<Self, GraphError> {
        if !(time_factor.is_finite() && time_factor > 0.0) {
            return Err(GraphError::InvalidTimeFactor(time_factor));
        }
        let rows = (0..network.poi_count()).map(|_| OnceLock::new()).collect();
        let metrics = Self {
            network,
            time_factor,
            mode,
            rows,
        };
        if mode == MetricsMode::FullApsp {
            let all: Vec<PoiId> = metrics.network.pois().collect();
            metrics.warm(&all);
        }
        Ok(metrics)
    }

    pub fn network(&self) -> &Arc<RoadNetwork> {
        &self.network
    }

    pub fn time_factor(&self) -> f64 {
        self.time_factor
    }

    pub fn mode(&self) -> MetricsMode {
        self.mode
    }

    pub fn cached_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.get().is_some()).count()
    }

    fn row(&self, source: PoiId) -> &[f64] {
        self.rows[source.index()].get_or_init(|| single_source_costs(&self.network, source).into())
    }

    /// Precompute, in parallel, every row that a query among `pois` can touch.
    pub fn warm(&self, pois: &[PoiId]) {
        let mut sources: Vec<PoiId> = pois.to_vec();
        sources.sort_unstable();
        sources.dedup();
        // the largest id of the set is never the smaller end of a pair among them
        sources.pop();
        sources.par_iter().for_each(|&s| {
            self.row(s);
        });
    }

    /// Raw cost with `f64::INFINITY` for disconnected pairs.
    pub fn cost_or_inf(&self, u: PoiId, v: PoiId) -> f64 {
        if u == v {
            return 0.0;
        }
        let (s, t) = if u < v { (u, v) } else { (v, u) };
        self.row(s)[t.index()]
    }

    pub fn cost(&self, u: PoiId, v: PoiId) -> Option<f64> {
        let c = self.cost_or_inf(u, v);
        c.is_finite().then_some(c)
    }

    pub fn time(&self, u: PoiId, v: PoiId) -> Option<f64> {
        self.cost(u, v).map(|c| self.time_of(c))
    }

    /// Travel time for a given travel cost.
    pub fn time_of(&self, cost: f64) -> f64 {
        self.time_factor * cost
    }

    pub fn reachable(&self, u: PoiId, v: PoiId) -> bool {
        self.cost_or_inf(u, v).is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::cycle4;

    #[test]
    fn time_is_scaled_cost() {
        let net = Arc::new(RoadNetwork::from_edges(&[(0, 1, 10.0)]).unwrap());
        let m = TravelMetrics::new(net, 0.2, MetricsMode::OnDemand).unwrap();
        assert_eq!(m.cost(PoiId(0), PoiId(1)), Some(10.0));
        assert_eq!(m.time(PoiId(0), PoiId(1)), Some(2.0));
        assert_eq!(m.time(PoiId(1), PoiId(1)), Some(0.0));
    }

    #[test]
    fn modes_agree_on_cycle() {
        let net = Arc::new(cycle4());
        let full = TravelMetrics::new(net.clone(), 0.2, MetricsMode::FullApsp).unwrap();
        let lazy = TravelMetrics::new(net.clone(), 0.2, MetricsMode::OnDemand).unwrap();
        assert_eq!(lazy.cached_rows(), 0);
        for u in net.pois() {
            for v in net.pois() {
                assert_eq!(full.cost(u, v), lazy.cost(u, v));
                assert_eq!(full.time(u, v), lazy.time(u, v));
            }
        }
        assert!(lazy.cached_rows() <= 3);
    }

    #[test]
    fn warm_fills_only_needed_rows() {
        let net = Arc::new(cycle4());
        let m = TravelMetrics::new(net, 1.0, MetricsMode::OnDemand).unwrap();
        m.warm(&[PoiId(3), PoiId(1), PoiId(1)]);
        assert_eq!(m.cached_rows(), 1);
    }

    #[test]
    fn unreachable_pairs() {
        let net = Arc::new(RoadNetwork::from_edges(&[(1, 2, 1.0), (3, 4, 1.0)]).unwrap());
        let m = TravelMetrics::new(net, 0.2, MetricsMode::FullApsp).unwrap();
        assert!(!m.reachable(PoiId(0), PoiId(3)));
        assert_eq!(m.cost(PoiId(3), PoiId(0)), None);
        assert_eq!(m.time(PoiId(0), PoiId(3)), None);
    }

    #[test]
    fn bad_time_factor_rejected() {
        let net = Arc::new(cycle4());
        for tf in [0.0, -1.0, f64::NAN] {
            assert!(TravelMetrics::new(net.clone(), tf, MetricsMode::OnDemand).is_err());
        }
    }
}
