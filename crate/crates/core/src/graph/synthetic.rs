//! Seeded synthetic networks.
//!
//! `road_like` builds sparse, planar-ish graphs resembling the road
//! datasets (average degree a little above 2): a nearest-earlier-point
//! spanning tree over random points in a square, plus short extra edges
//! taken from each point's nearest neighbours.

use std::collections::HashSet;

use super::{GraphError, RoadNetwork};
use crate::rng::SeededRng;

const SIDE: f64 = 1000.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoadLikeParams {
    pub pois: usize,
    pub edges: usize,
    /// Unit weights instead of Euclidean lengths.
    pub unit_weights: bool,
    pub seed: u64,
}

impl RoadLikeParams {
    /// Same size as the Europe road network (1,174 POIs, 1,417 unweighted roads).
    pub fn europe_sized(seed: u64) -> Self {
        Self {
            pois: 1174,
            edges: 1417,
            unit_weights: true,
            seed,
        }
    }

    /// Same size as the Oldenburg network (6,105 POIs, 7,035 roads).
    pub fn oldenburg_sized(seed: u64) -> Self {
        Self {
            pois: 6105,
            edges: 7035,
            unit_weights: false,
            seed,
        }
    }
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Connected road-like network with exactly `params.edges` edges when
/// `pois - 1 <= edges` and enough short candidate edges exist.
pub fn road_like(params: RoadLikeParams) -> Result<RoadNetwork, GraphError> {
    let n = params.pois;
    if n < 2 {
        return Err(GraphError::Empty);
    }
    let mut rng = SeededRng::new(params.seed);
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.uniform(0.0, SIDE), rng.uniform(0.0, SIDE)))
        .collect();

    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(params.edges);
    let mut present = HashSet::new();
    for i in 1..n {
        let j = (0..i)
            .min_by(|&a, &b| dist(pts[i], pts[a]).total_cmp(&dist(pts[i], pts[b])))
            .unwrap();
        chosen.push((j, i));
        present.insert((j, i));
    }

    let extra = params.edges.saturating_sub(n - 1);
    let mut k = 3;
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    while candidates.len() < extra && k < n {
        candidates.clear();
        let mut seen = HashSet::new();
        for i in 0..n {
            let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            order.select_nth_unstable_by(k.min(n - 2), |&a, &b| {
                dist(pts[i], pts[a]).total_cmp(&dist(pts[i], pts[b]))
            });
            for &j in &order[..k.min(n - 1)] {
                let key = (i.min(j), i.max(j));
                if !present.contains(&key) && seen.insert(key) {
                    candidates.push(key);
                }
            }
        }
        k *= 2;
    }
    candidates.sort_unstable();
    for i in (1..candidates.len()).rev() {
        let j = rng.index(i + 1);
        candidates.swap(i, j);
    }
    chosen.extend(candidates.into_iter().take(extra));

    let mut b = RoadNetwork::builder();
    for (line, &(u, v)) in chosen.iter().enumerate() {
        let w = if params.unit_weights {
            1.0
        } else {
            // keep lengths strictly positive even for coincident points
            (dist(pts[u], pts[v]) * 1000.0).round().max(1.0) / 1000.0
        };
        b.add_edge(line + 1, u as u64, v as u64, w)?;
    }
    b.finish()
}

/// Erdős–Rényi graph on labels `0..pois` with uniform weights in
/// `weights`. Falls back to a single edge `0-1` if no edge is drawn.
pub fn random_graph(
    pois: usize,
    edge_prob: f64,
    weights: (f64, f64),
    seed: u64,
) -> Result<RoadNetwork, GraphError> {
    let mut rng = SeededRng::new(seed);
    let mut b = RoadNetwork::builder();
    let mut line = 0;
    for u in 0..pois as u64 {
        b.add_node(u);
        for v in (u + 1)..pois as u64 {
            if rng.unit() < edge_prob {
                line += 1;
                b.add_edge(line, u, v, rng.uniform(weights.0, weights.1))?;
            }
        }
    }
    if line == 0 && pois >= 2 {
        b.add_edge(1, 0, 1, rng.uniform(weights.0, weights.1))?;
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn road_like_has_requested_size_and_is_connected() {
        let net = road_like(RoadLikeParams {
            pois: 300,
            edges: 360,
            unit_weights: false,
            seed: 5,
        })
        .unwrap();
        assert_eq!(net.poi_count(), 300);
        assert_eq!(net.edge_count(), 360);
        assert_eq!(net.component_count(), 1);
        assert!(net.edges().iter().all(|e| e.weight > 0.0));
    }

    #[test]
    fn road_like_is_deterministic() {
        let p = RoadLikeParams {
            pois: 100,
            edges: 120,
            unit_weights: true,
            seed: 11,
        };
        assert_eq!(road_like(p).unwrap(), road_like(p).unwrap());
    }

    #[test]
    fn random_graph_never_empty() {
        let net = random_graph(5, 0.0, (1.0, 2.0), 1).unwrap();
        assert_eq!(net.edge_count(), 1);
        assert_eq!(net.poi_count(), 5);
    }
}
