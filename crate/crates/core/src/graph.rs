//! Connected undirected graphs carrying a price on every vertex.
//!
//! Vertices are `0..n`. The price of a vertex is the number of pebbles
//! removed from it by a single pebbling move; every price is at least 2.
//! All-pairs hop distances are computed once at construction since every
//! consumer (solver cost tables, bounds, shape checks) needs them.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The price every vertex carries when none is given.
pub const STANDARD_PRICE: u64 = 2;

/// On-disk graph description: `{"n": 3, "edges": [[0,1],[1,2]], "prices": [2,3,2]}`.
///
/// `prices` may be omitted, in which case every vertex gets [`STANDARD_PRICE`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prices: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PricedGraph {
    prices: Vec<u64>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    distances: Vec<Vec<usize>>,
}

impl PricedGraph {
    /// Validates and builds a priced graph.
    pub fn new(n: usize, edges: &[(usize, usize)], prices: &[u64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if prices.len() != n {
            return Err(Error::PriceCount {
                expected: n,
                got: prices.len(),
            });
        }
        if let Some((vertex, &price)) = prices.iter().enumerate().find(|(_, &p)| p < 2) {
            return Err(Error::PriceBelowTwo { vertex, price });
        }

        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::BadEdge(u, v, "endpoint out of range"));
            }
            if u == v {
                return Err(Error::BadEdge(u, v, "self-loop"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::BadEdge(u, v, "duplicate edge"));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let distances: Vec<Vec<usize>> = (0..n).map(|s| bfs(&adjacency, s)).collect();
        if let Some(unreached) = distances[0].iter().position(|&d| d == usize::MAX) {
            return Err(Error::NotConnected(unreached));
        }

        Ok(Self {
            prices: prices.to_vec(),
            edges: seen.into_iter().collect(),
            adjacency,
            distances,
        })
    }

    /// Same as [`PricedGraph::new`] with the standard price on every vertex.
    pub fn standard(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges, &vec![STANDARD_PRICE; n])
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        match &file.prices {
            Some(prices) => Self::new(file.n, &edges, prices),
            None => Self::standard(file.n, &edges),
        }
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.n(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            prices: Some(self.prices.clone()),
        }
    }

    /// Returns a copy of this graph with a different price function.
    pub fn with_prices(&self, prices: &[u64]) -> Result<Self> {
        Self::new(self.n(), &self.edges, prices)
    }

    pub fn n(&self) -> usize {
        self.prices.len()
    }

    pub fn price(&self, v: usize) -> u64 {
        self.prices[v]
    }

    pub fn prices(&self) -> &[u64] {
        &self.prices
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_standard(&self) -> bool {
        self.prices.iter().all(|&p| p == STANDARD_PRICE)
    }

    /// Hop distance between two vertices.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.distances[u][v]
    }

    pub fn diameter(&self) -> usize {
        self.distances
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Every shortest path whose length equals the diameter, as vertex
    /// sequences. Both orientations of each path are listed; output is
    /// sorted lexicographically.
    pub fn diameter_paths(&self) -> Vec<Vec<usize>> {
        let d = self.diameter();
        let n = self.n();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if self.distances[s][t] != d {
                    continue;
                }
                let mut path = vec![s];
                self.extend_shortest(&mut path, t, &mut out);
            }
        }
        out.sort();
        out
    }

    fn extend_shortest(&self, path: &mut Vec<usize>, target: usize, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("path is never empty");
        if last == target {
            out.push(path.clone());
            return;
        }
        let remaining = self.distances[last][target];
        for &next in &self.adjacency[last] {
            if self.distances[next][target] + 1 == remaining {
                path.push(next);
                self.extend_shortest(path, target, out);
                path.pop();
            }
        }
    }

    /// Vertex ids ordered by ascending price, ties broken by id.
    pub fn sorted_by_price(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| (self.prices[v], v));
        order
    }

    /// Prices in ascending order.
    pub fn sorted_prices(&self) -> Vec<u64> {
        self.sorted_by_price()
            .into_iter()
            .map(|v| self.prices[v])
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edges.len() == n * (n - 1) / 2
    }

    /// If the graph is a path, its vertices in order starting from the
    /// lower-numbered endpoint.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if n == 1 {
            return Some(vec![0]);
        }
        if self.edges.len() != n - 1 || self.adjacency.iter().any(|a| a.len() > 2) {
            return None;
        }
        let start = (0..n).find(|&v| self.degree(v) == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.adjacency[cur].iter().find(|&&x| x != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        (order.len() == n).then_some(order)
    }

    /// If the graph is a star with at least one leaf, its center. For the
    /// single-edge star the lower id is taken as the center.
    pub fn star_center(&self) -> Option<usize> {
        let n = self.n();
        if n < 2 || self.edges.len() != n - 1 {
            return None;
        }
        (0..n).find(|&v| self.degree(v) == n - 1)
    }
}

fn bfs(adjacency: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adjacency.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}
