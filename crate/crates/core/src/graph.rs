//! Immutable yearly investment graphs.
//!
//! A [`YearGraph`] is a directed, weighted snapshot of bilateral positions
//! for one year. Nodes are kept in lexicographic [`CountryCode`] order and
//! every matrix or export built on top of a graph uses that order.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use thiserror::Error;

/// Errors raised while building or querying a [`YearGraph`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("invalid country code {0:?}: expected ASCII letters, digits or '_'")]
    InvalidCountryCode(String),
    #[error("country {0} listed more than once")]
    DuplicateNode(CountryCode),
    #[error("self-loop record {0} -> {0}")]
    SelfLoop(CountryCode),
    #[error("unknown country {0}")]
    UnknownNode(String),
    #[error("edge {from} -> {to} has non-positive or non-finite weight {weight}")]
    InvalidWeight {
        from: CountryCode,
        to: CountryCode,
        weight: f64,
    },
}

/// Uppercase country identifier, e.g. `DEU`.
///
/// Construction trims surrounding whitespace and uppercases ASCII letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "String", into = "String"))]
pub struct CountryCode(String);

impl CountryCode {
    pub fn new(raw: &str) -> Result<Self, GraphError> {
        let trimmed = raw.trim();
        if trimmed.is_empty()
            || !trimmed
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_')
        {
            return Err(GraphError::InvalidCountryCode(String::from(raw)));
        }
        Ok(Self(trimmed.to_ascii_uppercase()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for CountryCode {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for CountryCode {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for CountryCode {
    type Error = GraphError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Self::new(&value)
    }
}

impl From<CountryCode> for String {
    fn from(code: CountryCode) -> Self {
        code.0
    }
}

/// One bilateral position: `source` holds `weight` (USD millions) of assets in `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionRecord {
    pub source: CountryCode,
    pub target: CountryCode,
    pub weight: f64,
}

impl PositionRecord {
    pub fn new(source: CountryCode, target: CountryCode, weight: f64) -> Self {
        Self {
            source,
            target,
            weight,
        }
    }
}

/// A directed edge between node indices of a [`YearGraph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// Position of a node with respect to the direction of its edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowRole {
    Source,
    Sink,
    Intermediate,
    Isolated,
}

/// Directed weighted graph for a single year.
#[derive(Debug, Clone, PartialEq)]
pub struct YearGraph {
    year: i32,
    nodes: Vec<CountryCode>,
    // (neighbor, weight), sorted by neighbor index
    out_adj: Vec<Vec<(usize, f64)>>,
    in_adj: Vec<Vec<(usize, f64)>>,
    edge_count: usize,
}

impl YearGraph {
    /// Builds a canonical graph from a node list and position records.
    ///
    /// Records for the same ordered pair are summed. The summation runs over
    /// the weights in ascending order, so any permutation of `records` yields
    /// a bit-identical graph.
    pub fn build<I>(year: i32, nodes: I, records: &[PositionRecord]) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = CountryCode>,
    {
        let mut nodes: Vec<CountryCode> = nodes.into_iter().collect();
        nodes.sort();
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateNode(w[0].clone()));
        }

        let lookup = |code: &CountryCode| {
            nodes
                .binary_search(code)
                .map_err(|_| GraphError::UnknownNode(String::from(code.as_str())))
        };

        let mut grouped: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
        for rec in records {
            if rec.source == rec.target {
                return Err(GraphError::SelfLoop(rec.source.clone()));
            }
            let s = lookup(&rec.source)?;
            let t = lookup(&rec.target)?;
            if !(rec.weight.is_finite() && rec.weight > 0.0) {
                return Err(GraphError::InvalidWeight {
                    from: rec.source.clone(),
                    to: rec.target.clone(),
                    weight: rec.weight,
                });
            }
            grouped.entry((s, t)).or_default().push(rec.weight);
        }

        let n = nodes.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let edge_count = grouped.len();
        for ((s, t), mut weights) in grouped {
            weights.sort_by(f64::total_cmp);
            let w: f64 = weights.iter().sum();
            out_adj[s].push((t, w));
            in_adj[t].push((s, w));
        }
        for list in &mut in_adj {
            list.sort_by_key(|&(s, _)| s);
        }

        Ok(Self {
            year,
            nodes,
            out_adj,
            in_adj,
            edge_count,
        })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn nodes(&self) -> &[CountryCode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn index_of(&self, code: &str) -> Option<usize> {
        self.nodes.binary_search_by(|c| c.as_str().cmp(code)).ok()
    }

    /// Resolves a code to its node index, normalizing case first.
    pub fn require(&self, code: &str) -> Result<usize, GraphError> {
        let normalized = code.trim().to_ascii_uppercase();
        self.index_of(&normalized)
            .ok_or_else(|| GraphError::UnknownNode(String::from(code)))
    }

    pub fn node(&self, index: usize) -> &CountryCode {
        &self.nodes[index]
    }

    /// Edges in canonical (source, target) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out_adj.iter().enumerate().flat_map(|(s, list)| {
            list.iter().map(move |&(t, w)| Edge {
                source: s,
                target: t,
                weight: w,
            })
        })
    }

    pub fn out_edges(&self, index: usize) -> &[(usize, f64)] {
        &self.out_adj[index]
    }

    pub fn in_edges(&self, index: usize) -> &[(usize, f64)] {
        &self.in_adj[index]
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.out_adj[source]
            .binary_search_by_key(&target, |&(t, _)| t)
            .is_ok()
    }

    pub fn weight(&self, source: usize, target: usize) -> Option<f64> {
        let list = &self.out_adj[source];
        list.binary_search_by_key(&target, |&(t, _)| t)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn in_degree_at(&self, index: usize) -> usize {
        self.in_adj[index].len()
    }

    pub fn out_degree_at(&self, index: usize) -> usize {
        self.out_adj[index].len()
    }

    pub fn weighted_in_degree_at(&self, index: usize) -> f64 {
        self.in_adj[index].iter().map(|&(_, w)| w).sum()
    }

    pub fn weighted_out_degree_at(&self, index: usize) -> f64 {
        self.out_adj[index].iter().map(|&(_, w)| w).sum()
    }

    pub fn in_degree(&self, code: &str) -> Result<usize, GraphError> {
        self.require(code).map(|i| self.in_degree_at(i))
    }

    pub fn out_degree(&self, code: &str) -> Result<usize, GraphError> {
        self.require(code).map(|i| self.out_degree_at(i))
    }

    /// In-degree plus out-degree.
    pub fn degree(&self, code: &str) -> Result<usize, GraphError> {
        self.require(code)
            .map(|i| self.in_degree_at(i) + self.out_degree_at(i))
    }

    pub fn weighted_in_degree(&self, code: &str) -> Result<f64, GraphError> {
        self.require(code).map(|i| self.weighted_in_degree_at(i))
    }

    pub fn weighted_out_degree(&self, code: &str) -> Result<f64, GraphError> {
        self.require(code).map(|i| self.weighted_out_degree_at(i))
    }

    /// Weighted in-degree plus weighted out-degree. Identical to node strength.
    pub fn weighted_degree(&self, code: &str) -> Result<f64, GraphError> {
        self.require(code)
            .map(|i| self.weighted_in_degree_at(i) + self.weighted_out_degree_at(i))
    }

    pub fn strength(&self, code: &str) -> Result<f64, GraphError> {
        self.weighted_degree(code)
    }

    pub fn flow_role(&self, code: &str) -> Result<FlowRole, GraphError> {
        let i = self.require(code)?;
        Ok(match (self.in_degree_at(i), self.out_degree_at(i)) {
            (0, 0) => FlowRole::Isolated,
            (0, _) => FlowRole::Source,
            (_, 0) => FlowRole::Sink,
            _ => FlowRole::Intermediate,
        })
    }

    /// Neighbors in the undirected projection (an edge in either direction), sorted.
    pub fn undirected_neighbors(&self, index: usize) -> Vec<usize> {
        let out = &self.out_adj[index];
        let inn = &self.in_adj[index];
        let mut merged = Vec::with_capacity(out.len() + inn.len());
        let (mut a, mut b) = (0, 0);
        while a < out.len() || b < inn.len() {
            let next = match (out.get(a), inn.get(b)) {
                (Some(&(x, _)), Some(&(y, _))) if x == y => {
                    a += 1;
                    b += 1;
                    x
                }
                (Some(&(x, _)), Some(&(y, _))) if x < y => {
                    a += 1;
                    x
                }
                (Some(&(x, _)), None) => {
                    a += 1;
                    x
                }
                (_, Some(&(y, _))) => {
                    b += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            merged.push(next);
        }
        merged
    }

    /// Undirected adjacency lists for every node.
    pub fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.node_count())
            .map(|i| self.undirected_neighbors(i))
            .collect()
    }

    /// Hop distances from `source` following edge direction; `None` when unreachable.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = alloc::collections::VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &(w, _) in &self.out_adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs unweighted directed hop distances.
    pub fn shortest_paths(&self) -> DistanceMatrix {
        let n = self.node_count();
        let mut data = Vec::with_capacity(n * n);
        for s in 0..n {
            data.extend(
                self.bfs_distances(s)
                    .into_iter()
                    .map(|d| d.unwrap_or(DistanceMatrix::UNREACHABLE)),
            );
        }
        DistanceMatrix { n, data }
    }
}

/// Row-major matrix of hop counts between node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    const UNREACHABLE: u32 = u32::MAX;

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance from `i` to `j`, or `None` when `j` is unreachable from `i`.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        match self.data[i * self.n + j] {
            Self::UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = Option<u32>> + '_ {
        self.data[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&d| (d != Self::UNREACHABLE).then_some(d))
    }
}
