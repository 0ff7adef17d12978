//! Brute-force reference computations for small directed graphs.
//!
//! Everything here works from a dense adjacency matrix and explicit path
//! enumeration, and shares no code with the library's BFS/Brandes routes.

#![allow(dead_code)]

use cpis_netlab_core::{metrics, CountryCode, PositionRecord, YearGraph};

pub const TOL: f64 = 1e-12;

/// Dense directed graph with weights; `w[i][j] > 0` iff edge i -> j.
#[derive(Debug, Clone)]
pub struct Dense {
    pub n: usize,
    pub w: Vec<Vec<f64>>,
}

impl Dense {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            w: vec![vec![0.0; n]; n],
        }
    }

    pub fn add(&mut self, i: usize, j: usize, weight: f64) {
        assert!(i != j && weight > 0.0);
        self.w[i][j] = weight;
    }

    pub fn adj(&self, i: usize, j: usize) -> bool {
        self.w[i][j] > 0.0
    }

    pub fn und(&self, i: usize, j: usize) -> bool {
        i != j && (self.adj(i, j) || self.adj(j, i))
    }

    pub fn label(i: usize) -> String {
        format!("V{i}")
    }

    pub fn to_graph(&self) -> YearGraph {
        let nodes = (0..self.n).map(|i| CountryCode::new(&Self::label(i)).unwrap());
        let mut recs = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.adj(i, j) {
                    recs.push(PositionRecord::new(
                        CountryCode::new(&Self::label(i)).unwrap(),
                        CountryCode::new(&Self::label(j)).unwrap(),
                        self.w[i][j],
                    ));
                }
            }
        }
        YearGraph::build(2001, nodes, &recs).unwrap()
    }

    /// Every simple directed path from `s` to `t`, as node sequences.
    pub fn simple_paths(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        fn walk(g: &Dense, path: &mut Vec<usize>, t: usize, out: &mut Vec<Vec<usize>>) {
            let last = *path.last().unwrap();
            if last == t {
                out.push(path.clone());
                return;
            }
            for next in 0..g.n {
                if g.adj(last, next) && !path.contains(&next) {
                    path.push(next);
                    walk(g, path, t, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut vec![s], t, &mut out);
        out
    }

    pub fn geodesics(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let paths = self.simple_paths(s, t);
        let Some(best) = paths.iter().map(Vec::len).min() else {
            return Vec::new();
        };
        paths.into_iter().filter(|p| p.len() == best).collect()
    }

    pub fn distance(&self, s: usize, t: usize) -> Option<u32> {
        self.simple_paths(s, t)
            .iter()
            .map(|p| (p.len() - 1) as u32)
            .min()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.adj(u, v)).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.adj(v, u)).count()
    }

    pub fn weighted_in(&self, v: usize) -> f64 {
        (0..self.n).map(|u| self.w[u][v]).sum()
    }

    pub fn weighted_out(&self, v: usize) -> f64 {
        (0..self.n).map(|u| self.w[v][u]).sum()
    }

    pub fn und_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.und(v, u)).count()
    }

    fn reached(&self, v: usize) -> Vec<u32> {
        (0..self.n)
            .filter(|&j| j != v)
            .filter_map(|j| self.distance(v, j))
            .collect()
    }

    pub fn closeness_reciprocal(&self, v: usize) -> Option<f64> {
        let d = self.reached(v);
        (!d.is_empty()).then(|| d.len() as f64 / d.iter().sum::<u32>() as f64)
    }

    pub fn closeness_mean(&self, v: usize) -> Option<f64> {
        let d = self.reached(v);
        (!d.is_empty()).then(|| d.iter().sum::<u32>() as f64 / d.len() as f64)
    }

    pub fn eccentricity(&self, v: usize) -> Option<u32> {
        self.reached(v).into_iter().max()
    }

    /// Σ over ordered pairs (s, t), s ≠ v ≠ t, of the share of s→t geodesics through v.
    pub fn betweenness(&self, v: usize) -> f64 {
        let mut total = 0.0;
        for s in 0..self.n {
            for t in 0..self.n {
                if s == t || s == v || t == v {
                    continue;
                }
                let paths = self.geodesics(s, t);
                if paths.is_empty() {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count();
                total += through as f64 / paths.len() as f64;
            }
        }
        total
    }

    /// Ordered-pair triangle form: Σ_jk e_ij e_jk e_ki / (k (k - 1)).
    pub fn local_clustering(&self, i: usize) -> f64 {
        let k = self.und_degree(i);
        if k < 2 {
            return 0.0;
        }
        let mut closed = 0usize;
        for j in 0..self.n {
            for l in 0..self.n {
                if self.und(i, j) && self.und(j, l) && self.und(l, i) {
                    closed += 1;
                }
            }
        }
        closed as f64 / (k * (k - 1)) as f64
    }

    pub fn average_clustering(&self) -> f64 {
        (0..self.n).map(|i| self.local_clustering(i)).sum::<f64>() / self.n as f64
    }

    /// 3 × triangles / connected triples, each counted by explicit enumeration.
    pub fn global_clustering(&self) -> Option<f64> {
        let mut triangles = 0usize;
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    if self.und(a, b) && self.und(b, c) && self.und(a, c) {
                        triangles += 1;
                    }
                }
            }
        }
        let mut triples = 0usize;
        for center in 0..self.n {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    if self.und(center, a) && self.und(center, b) {
                        triples += 1;
                    }
                }
            }
        }
        (triples > 0).then(|| 3.0 * triangles as f64 / triples as f64)
    }

    pub fn degree_centrality(&self, v: usize) -> f64 {
        self.und_degree(v) as f64 / (self.n - 1) as f64
    }

    /// Σ (c_max − c_i) over normalized centralities, divided by the star value n − 2.
    pub fn degree_centralization(&self) -> Option<f64> {
        if self.n < 3 {
            return None;
        }
        let c: Vec<f64> = (0..self.n).map(|v| self.degree_centrality(v)).collect();
        let max = c.iter().cloned().fold(0.0, f64::max);
        Some(c.iter().map(|ci| (max - ci).abs()).sum::<f64>() / (self.n - 2) as f64)
    }

    /// Σ (C_max − C_i) divided by the star's sum, evaluated by building the
    /// bidirectional star on n nodes and summing its closeness gaps.
    pub fn closeness_centralization(&self) -> Option<f64> {
        if self.n < 3 {
            return None;
        }
        let c: Option<Vec<f64>> = (0..self.n).map(|v| self.closeness_reciprocal(v)).collect();
        let c = c?;
        let max = c.iter().cloned().fold(0.0, f64::max);
        let spread: f64 = c.iter().map(|ci| max - ci).sum();
        Some(spread / star_closeness_spread(self.n))
    }

    pub fn expected_clustering(&self) -> Option<f64> {
        let n = self.n as f64;
        let k: Vec<f64> = (0..self.n).map(|v| self.und_degree(v) as f64).collect();
        let k1 = k.iter().sum::<f64>() / n;
        if k1 == 0.0 {
            return None;
        }
        let k2 = k.iter().map(|x| x * x).sum::<f64>() / n;
        Some((k2 - k1).powi(2) / k1.powi(3) / n)
    }
}

/// Closeness spread of the bidirectional star on `n` nodes, computed by brute force.
pub fn star_closeness_spread(n: usize) -> f64 {
    let mut star = Dense::new(n);
    for leaf in 1..n {
        star.add(0, leaf, 1.0);
        star.add(leaf, 0, 1.0);
    }
    let c: Vec<f64> = (0..n).map(|v| star.closeness_reciprocal(v).unwrap()).collect();
    let max = c.iter().cloned().fold(0.0, f64::max);
    c.iter().map(|ci| max - ci).sum()
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}

fn near_opt(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => near(a, b),
        (None, None) => true,
        _ => false,
    }
}

/// Compares every indicator and graph quantity against the oracle.
pub fn check(d: &Dense) -> Result<(), String> {
    let g = d.to_graph();
    let dist = g.shortest_paths();
    let indicators = metrics::node_indicators(&g);
    macro_rules! ensure {
        ($cond:expr, $($msg:tt)+) => {
            if !$cond {
                return Err(format!("{:?}: {}", d.w, format!($($msg)+)));
            }
        };
    }
    ensure!(indicators.len() == d.n, "indicator rows: {}", indicators.len());
    for (v, ni) in indicators.iter().enumerate() {
        let code = Dense::label(v);
        for j in 0..d.n {
            let want = if v == j { Some(0) } else { d.distance(v, j) };
            ensure!(dist.get(v, j) == want, "distance {v}->{j}");
        }
        ensure!(ni.n1_in_degree == d.in_degree(v), "N1 of {v}");
        ensure!(ni.n2_out_degree == d.out_degree(v), "N2 of {v}");
        ensure!(ni.n3_degree == d.in_degree(v) + d.out_degree(v), "N3 of {v}");
        let win = d.weighted_in(v);
        let wout = d.weighted_out(v);
        ensure!(near(ni.n4_weighted_degree, win + wout), "N4 of {v}");
        ensure!(near(ni.n5_weighted_in, win), "N5 of {v}");
        ensure!(near(ni.n6_weighted_out, wout), "N6 of {v}");
        ensure!(ni.n7_eccentricity == d.eccentricity(v), "N7 of {v}");
        ensure!(near_opt(ni.n8_closeness, d.closeness_mean(v)), "N8 of {v}");
        ensure!(near(ni.n9_betweenness, d.betweenness(v)), "N9 of {v}: {} vs {}", ni.n9_betweenness, d.betweenness(v));
        ensure!(near(ni.n10_clustering, d.local_clustering(v)), "N10 of {v}");
        ensure!(near(ni.n11_strength, win + wout), "N11 of {v}");
        ensure!(*ni == metrics::node_indicator_vector(&g, &code).unwrap(), "single-node vector of {v}");

        if d.n >= 2 {
            ensure!(
                near(metrics::degree_centrality(&g, &code).unwrap(), d.degree_centrality(v)),
                "degree centrality of {v}"
            );
            let norm = d.closeness_reciprocal(v).map(|c| c / (d.n - 1) as f64);
            ensure!(
                near_opt(metrics::closeness_normalized(&g, &code).unwrap(), norm),
                "normalized closeness of {v}"
            );
        }
        ensure!(
            near_opt(metrics::closeness_reciprocal(&g, &code).unwrap(), d.closeness_reciprocal(v)),
            "closeness of {v}"
        );
        ensure!(
            near_opt(metrics::closeness_mean_distance(&g, &code).unwrap(), d.closeness_mean(v)),
            "mean distance of {v}"
        );
        ensure!(metrics::eccentricity(&g, &code).unwrap() == d.eccentricity(v), "eccentricity of {v}");
        ensure!(near(metrics::betweenness(&g, &code).unwrap(), d.betweenness(v)), "betweenness of {v}");
        ensure!(near(metrics::local_clustering(&g, &code).unwrap(), d.local_clustering(v)), "clustering of {v}");
    }
    ensure!(
        near_opt(metrics::degree_centralization(&g).ok(), d.degree_centralization()),
        "degree centralization"
    );
    ensure!(
        near_opt(metrics::closeness_centralization(&g).ok(), d.closeness_centralization()),
        "closeness centralization"
    );
    if d.n > 0 {
        ensure!(near(metrics::average_clustering(&g).unwrap(), d.average_clustering()), "average clustering");
    }
    ensure!(
        near_opt(metrics::global_clustering_triangles(&g), d.global_clustering()),
        "global clustering"
    );
    ensure!(
        near_opt(metrics::random_expected_clustering(&g).ok(), d.expected_clustering()),
        "expected clustering"
    );
    Ok(())
}

/// Named canonical shapes on `n` nodes: out-star, bidirectional star,
/// directed and bidirectional cycle and path, complete, and edgeless.
pub fn canonical_shapes(n: usize) -> Vec<(String, Dense)> {
    let mut out = Vec::new();
    let mut star = Dense::new(n);
    let mut star2 = Dense::new(n);
    for leaf in 1..n {
        star.add(0, leaf, 1.0);
        star2.add(0, leaf, 1.0);
        star2.add(leaf, 0, 1.0);
    }
    out.push((format!("out-star{n}"), star));
    out.push((format!("star{n}"), star2));
    if n >= 3 {
        let mut cycle = Dense::new(n);
        let mut cycle2 = Dense::new(n);
        for i in 0..n {
            cycle.add(i, (i + 1) % n, 1.0);
            cycle2.add(i, (i + 1) % n, 1.0);
            cycle2.add((i + 1) % n, i, 1.0);
        }
        out.push((format!("cycle{n}"), cycle));
        out.push((format!("bicycle{n}"), cycle2));
    }
    let mut path = Dense::new(n);
    let mut path2 = Dense::new(n);
    for i in 1..n {
        path.add(i - 1, i, 1.0);
        path2.add(i - 1, i, 1.0);
        path2.add(i, i - 1, 1.0);
    }
    out.push((format!("path{n}"), path));
    out.push((format!("bipath{n}"), path2));
    let mut complete = Dense::new(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                complete.add(i, j, 1.0 + (i * n + j) as f64);
            }
        }
    }
    out.push((format!("complete{n}"), complete));
    out.push((format!("disjoint{n}"), Dense::new(n)));
    if n >= 4 {
        let mut two = Dense::new(n);
        let half = n / 2;
        for i in 0..half {
            for j in 0..half {
                if i != j {
                    two.add(i, j, 2.0);
                }
            }
        }
        for i in half..n {
            for j in half..n {
                if i != j {
                    two.add(i, j, 3.0);
                }
            }
        }
        out.push((format!("two-cliques{n}"), two));
    }
    out
}

/// Random directed graph with 1..=6 nodes and per-graph edge density.
pub fn random_dense<R: rand::Rng>(rng: &mut R) -> Dense {
    let n = rng.gen_range(1..=6);
    let p: f64 = rng.gen_range(0.05..0.95);
    let mut d = Dense::new(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                let w = (rng.gen_range(1..100_000) as f64) / 100.0;
                d.add(i, j, w);
            }
        }
    }
    d
}
