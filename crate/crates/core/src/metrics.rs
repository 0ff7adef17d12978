//! Node-level network indicators and graph-level summaries.
//!
//! Conventions:
//!
//! * Distances are unweighted directed hop counts. Nodes that cannot be
//!   reached from `v` are left out of `v`'s closeness and eccentricity; a node
//!   that reaches nothing has no closeness (`None`), never zero.
//! * Degree centrality and clustering use the undirected projection, where
//!   `u` and `v` are neighbors if an edge runs in either direction.
//! * Betweenness is directed, unweighted and unnormalized.
//!
//! Closeness comes in three flavors:
//!
//! ```text
//! reciprocal(v)     = r / Σ_j d(v, j)
//! mean_distance(v)  = Σ_j d(v, j) / r        (indicator N8, lower = more central)
//! normalized(v)     = reciprocal(v) / (n - 1)
//! ```
//!
//! where the sums run over the `r` nodes reachable from `v`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{CountryCode, DistanceMatrix, GraphError, YearGraph};
use crate::indicators::NetworkIndicator;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{what} needs at least {min} nodes, graph has {actual}")]
    TooFewNodes {
        what: &'static str,
        min: usize,
        actual: usize,
    },
    #[error("closeness is undefined for nodes that reach no other node: {0:?}")]
    UndefinedCloseness(Vec<CountryCode>),
    #[error("mean degree is zero")]
    ZeroMeanDegree,
}

fn require_nodes(g: &YearGraph, what: &'static str, min: usize) -> Result<(), MetricError> {
    if g.node_count() < min {
        return Err(MetricError::TooFewNodes {
            what,
            min,
            actual: g.node_count(),
        });
    }
    Ok(())
}

/// Reachability summary of one distance row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Reach {
    reached: u64,
    total: u64,
    farthest: u32,
}

impl Reach {
    fn from_row(source: usize, row: impl Iterator<Item = Option<u32>>) -> Option<Self> {
        let mut reach = Reach {
            reached: 0,
            total: 0,
            farthest: 0,
        };
        for (j, d) in row.enumerate() {
            if let (true, Some(d)) = (j != source, d) {
                reach.reached += 1;
                reach.total += u64::from(d);
                reach.farthest = reach.farthest.max(d);
            }
        }
        (reach.reached > 0).then_some(reach)
    }

    fn of(g: &YearGraph, v: usize) -> Option<Self> {
        Self::from_row(v, g.bfs_distances(v).into_iter())
    }

    fn reciprocal(self) -> f64 {
        self.reached as f64 / self.total as f64
    }

    fn mean_distance(self) -> f64 {
        self.total as f64 / self.reached as f64
    }
}

/// Undirected-projection degree divided by `n - 1`.
pub fn degree_centrality(g: &YearGraph, code: &str) -> Result<f64, MetricError> {
    let v = g.require(code)?;
    require_nodes(g, "degree centrality", 2)?;
    Ok(g.undirected_neighbors(v).len() as f64 / (g.node_count() - 1) as f64)
}

/// Freeman degree centralization on the undirected projection.
///
/// `Σ (d_max - d_i) / ((n - 1)(n - 2))`, which is 1 for a star and 0 for any
/// regular graph.
pub fn degree_centralization(g: &YearGraph) -> Result<f64, MetricError> {
    require_nodes(g, "degree centralization", 3)?;
    let n = g.node_count();
    let degrees: Vec<usize> = (0..n).map(|i| g.undirected_neighbors(i).len()).collect();
    let max = degrees.iter().copied().max().unwrap_or(0);
    let spread: usize = degrees.iter().map(|&d| max - d).sum();
    Ok(spread as f64 / ((n - 1) * (n - 2)) as f64)
}

/// `r / Σ d(v, j)` over the `r` nodes reachable from `v`.
pub fn closeness_reciprocal(g: &YearGraph, code: &str) -> Result<Option<f64>, MetricError> {
    let v = g.require(code)?;
    Ok(Reach::of(g, v).map(Reach::reciprocal))
}

/// Mean hop distance from `v` to the nodes it reaches (indicator N8).
pub fn closeness_mean_distance(g: &YearGraph, code: &str) -> Result<Option<f64>, MetricError> {
    let v = g.require(code)?;
    Ok(Reach::of(g, v).map(Reach::mean_distance))
}

/// [`closeness_reciprocal`] divided by `n - 1`.
pub fn closeness_normalized(g: &YearGraph, code: &str) -> Result<Option<f64>, MetricError> {
    let v = g.require(code)?;
    let n = g.node_count();
    Ok(Reach::of(g, v).map(|r| r.reciprocal() / (n - 1) as f64))
}

/// Freeman closeness centralization over reciprocal closeness values.
///
/// `Σ (C_max - C_i)` divided by the star maximum `(n - 1)(n - 2) / (2n - 3)`.
pub fn closeness_centralization(g: &YearGraph) -> Result<f64, MetricError> {
    require_nodes(g, "closeness centralization", 3)?;
    let n = g.node_count();
    let mut values = Vec::with_capacity(n);
    let mut undefined = Vec::new();
    for v in 0..n {
        match Reach::of(g, v) {
            Some(r) => values.push(r.reciprocal()),
            None => undefined.push(g.node(v).clone()),
        }
    }
    if !undefined.is_empty() {
        return Err(MetricError::UndefinedCloseness(undefined));
    }
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    let spread: f64 = values.iter().map(|&c| max - c).sum();
    let (n1, n2) = ((n - 1) as f64, (n - 2) as f64);
    Ok(spread / (n1 * n2 / (2.0 * n1 - 1.0)))
}

/// Largest finite hop distance from `v` (indicator N7).
pub fn eccentricity(g: &YearGraph, code: &str) -> Result<Option<u32>, MetricError> {
    let v = g.require(code)?;
    Ok(Reach::of(g, v).map(|r| r.farthest))
}

/// Directed, unnormalized betweenness of one node (indicator N9).
pub fn betweenness(g: &YearGraph, code: &str) -> Result<f64, MetricError> {
    let v = g.require(code)?;
    Ok(betweenness_all(g)[v])
}

/// Brandes accumulation over unweighted directed geodesics for every node.
pub fn betweenness_all(g: &YearGraph) -> Vec<f64> {
    let n = g.node_count();
    let mut centrality = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist: Vec<Option<u32>> = vec![None; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(None);
        delta.fill(0.0);
        preds.iter_mut().for_each(Vec::clear);
        order.clear();

        sigma[s] = 1.0;
        dist[s] = Some(0);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let dv = dist[v].unwrap_or(0);
            for &(w, _) in g.out_edges(v) {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
                if dist[w] == Some(dv + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }

        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    centrality
}

fn neighbor_links(adjacency: &[Vec<usize>], v: usize) -> usize {
    let nbrs = &adjacency[v];
    let mut links = 0;
    for (a, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[a + 1..] {
            if adjacency[x].binary_search(&y).is_ok() {
                links += 1;
            }
        }
    }
    links
}

fn local_clustering_at(adjacency: &[Vec<usize>], v: usize) -> f64 {
    let k = adjacency[v].len();
    if k < 2 {
        return 0.0;
    }
    neighbor_links(adjacency, v) as f64 / (k * (k - 1) / 2) as f64
}

/// Fraction of linked neighbor pairs in the undirected projection (indicator N10).
///
/// Nodes with fewer than two neighbors score 0.
pub fn local_clustering(g: &YearGraph, code: &str) -> Result<f64, MetricError> {
    let v = g.require(code)?;
    Ok(local_clustering_at(&g.undirected_adjacency(), v))
}

pub fn clustering_all(g: &YearGraph) -> Vec<f64> {
    let adjacency = g.undirected_adjacency();
    (0..g.node_count())
        .map(|v| local_clustering_at(&adjacency, v))
        .collect()
}

/// Mean of the local clustering coefficients.
pub fn average_clustering(g: &YearGraph) -> Result<f64, MetricError> {
    require_nodes(g, "average clustering", 1)?;
    let values = clustering_all(g);
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Closed triples over connected triples (`3 × triangles / triples`).
///
/// `None` when the projection has no connected triple.
pub fn global_clustering_triangles(g: &YearGraph) -> Option<f64> {
    let adjacency = g.undirected_adjacency();
    let mut closed = 0usize;
    let mut triples = 0usize;
    for v in 0..g.node_count() {
        let k = adjacency[v].len();
        triples += k * k.saturating_sub(1) / 2;
        closed += neighbor_links(&adjacency, v);
    }
    (triples > 0).then(|| closed as f64 / triples as f64)
}

/// Configuration-model expectation `(1/n)·(⟨k²⟩ − ⟨k⟩)² / ⟨k⟩³` over the
/// undirected degree sequence.
pub fn random_expected_clustering(g: &YearGraph) -> Result<f64, MetricError> {
    require_nodes(g, "expected clustering", 1)?;
    let n = g.node_count() as f64;
    let degrees: Vec<f64> = (0..g.node_count())
        .map(|v| g.undirected_neighbors(v).len() as f64)
        .collect();
    let k1 = degrees.iter().sum::<f64>() / n;
    if k1 == 0.0 {
        return Err(MetricError::ZeroMeanDegree);
    }
    let k2 = degrees.iter().map(|k| k * k).sum::<f64>() / n;
    let excess = k2 - k1;
    Ok(excess * excess / (k1 * k1 * k1) / n)
}

/// The eleven network indices of one node in one year.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NodeIndicators {
    pub country: CountryCode,
    pub year: i32,
    pub n1_in_degree: usize,
    pub n2_out_degree: usize,
    pub n3_degree: usize,
    pub n4_weighted_degree: f64,
    pub n5_weighted_in: f64,
    pub n6_weighted_out: f64,
    pub n7_eccentricity: Option<u32>,
    pub n8_closeness: Option<f64>,
    pub n9_betweenness: f64,
    pub n10_clustering: f64,
    pub n11_strength: f64,
}

impl NodeIndicators {
    /// Value of one indicator; `None` for undefined entries.
    pub fn value(&self, indicator: NetworkIndicator) -> Option<f64> {
        use NetworkIndicator::*;
        match indicator {
            N1 => Some(self.n1_in_degree as f64),
            N2 => Some(self.n2_out_degree as f64),
            N3 => Some(self.n3_degree as f64),
            N4 => Some(self.n4_weighted_degree),
            N5 => Some(self.n5_weighted_in),
            N6 => Some(self.n6_weighted_out),
            N7 => self.n7_eccentricity.map(f64::from),
            N8 => self.n8_closeness,
            N9 => Some(self.n9_betweenness),
            N10 => Some(self.n10_clustering),
            N11 => Some(self.n11_strength),
        }
    }
}

fn assemble(
    g: &YearGraph,
    v: usize,
    reach: Option<Reach>,
    betweenness: f64,
    clustering: f64,
) -> NodeIndicators {
    let n1 = g.in_degree_at(v);
    let n2 = g.out_degree_at(v);
    let n5 = g.weighted_in_degree_at(v);
    let n6 = g.weighted_out_degree_at(v);
    NodeIndicators {
        country: g.node(v).clone(),
        year: g.year(),
        n1_in_degree: n1,
        n2_out_degree: n2,
        n3_degree: n1 + n2,
        n4_weighted_degree: n5 + n6,
        n5_weighted_in: n5,
        n6_weighted_out: n6,
        n7_eccentricity: reach.map(|r| r.farthest),
        n8_closeness: reach.map(Reach::mean_distance),
        n9_betweenness: betweenness,
        n10_clustering: clustering,
        n11_strength: n5 + n6,
    }
}

/// N1–N11 for one node.
pub fn node_indicator_vector(g: &YearGraph, code: &str) -> Result<NodeIndicators, MetricError> {
    let v = g.require(code)?;
    let between = betweenness_all(g)[v];
    let clustering = local_clustering_at(&g.undirected_adjacency(), v);
    Ok(assemble(g, v, Reach::of(g, v), between, clustering))
}

/// N1–N11 for every node, in canonical node order.
pub fn node_indicators(g: &YearGraph) -> Vec<NodeIndicators> {
    let dist = g.shortest_paths();
    let between = betweenness_all(g);
    let clustering = clustering_all(g);
    (0..g.node_count())
        .map(|v| {
            let reach = Reach::from_row(v, dist.row(v));
            assemble(g, v, reach, between[v], clustering[v])
        })
        .collect()
}

/// Graph-level indicators; entries are `None` where undefined for this graph.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GraphSummary {
    pub year: i32,
    pub n: usize,
    pub degree_centralization: Option<f64>,
    pub closeness_centralization: Option<f64>,
    pub global_clustering: Option<f64>,
    pub average_clustering: Option<f64>,
    pub random_expected_clustering: Option<f64>,
}

pub fn summarize(g: &YearGraph) -> GraphSummary {
    GraphSummary {
        year: g.year(),
        n: g.node_count(),
        degree_centralization: degree_centralization(g).ok(),
        closeness_centralization: closeness_centralization(g).ok(),
        global_clustering: global_clustering_triangles(g),
        average_clustering: average_clustering(g).ok(),
        random_expected_clustering: random_expected_clustering(g).ok(),
    }
}

/// Mean hop distance from every node, read off a precomputed matrix.
pub fn mean_distances(dist: &DistanceMatrix) -> Vec<Option<f64>> {
    (0..dist.len())
        .map(|v| Reach::from_row(v, dist.row(v)).map(Reach::mean_distance))
        .collect()
}
