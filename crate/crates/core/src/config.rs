//! Configurations, pebbling moves and covering targets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PricedGraph;

/// Pebble counts per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration {
    counts: Vec<u64>,
}

impl Configuration {
    pub fn new(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    /// Checks that the configuration has one entry per vertex of `g`.
    pub fn for_graph(counts: Vec<u64>, g: &PricedGraph) -> Result<Self> {
        if counts.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                got: counts.len(),
            });
        }
        Ok(Self { counts })
    }

    pub fn empty(n: usize) -> Self {
        Self { counts: vec![0; n] }
    }

    /// All `size` pebbles on vertex `v`.
    pub fn stack(n: usize, v: usize, size: u64) -> Self {
        let mut counts = vec![0; n];
        counts[v] = size;
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, v: usize) -> u64 {
        self.counts[v]
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Adds one pebble on `v`.
    pub fn with_extra(&self, v: usize) -> Self {
        let mut counts = self.counts.clone();
        counts[v] += 1;
        Self { counts }
    }

    /// True if `self[v] >= other[v]` everywhere.
    pub fn dominates(&self, other: &Configuration) -> bool {
        self.counts.iter().zip(&other.counts).all(|(a, b)| a >= b)
    }

    /// Applies a pebbling move: `from` pays its price, `to` gains one pebble.
    pub fn apply(&self, m: PebblingMove, g: &PricedGraph) -> Result<Self> {
        if !g.has_edge(m.from, m.to) {
            return Err(Error::NotAnEdge(m.from, m.to));
        }
        let price = g.price(m.from);
        let have = self.counts[m.from];
        if have < price {
            return Err(Error::InsufficientPebbles {
                vertex: m.from,
                have,
                price,
            });
        }
        let mut counts = self.counts.clone();
        counts[m.from] -= price;
        counts[m.to] += 1;
        Ok(Self { counts })
    }

    /// Every affordable move, ascending by `(from, to)`.
    pub fn legal_moves(&self, g: &PricedGraph) -> Vec<PebblingMove> {
        (0..g.n())
            .filter(|&v| self.counts[v] >= g.price(v))
            .flat_map(|from| {
                g.neighbors(from)
                    .iter()
                    .map(move |&to| PebblingMove { from, to })
            })
            .collect()
    }

    /// Replays a move sequence from this configuration.
    pub fn replay(&self, moves: &[PebblingMove], g: &PricedGraph) -> Result<Self> {
        moves.iter().try_fold(self.clone(), |c, &m| c.apply(m, g))
    }

    pub fn covers(&self, spec: &Spec) -> bool {
        match spec {
            Spec::Targets(t) => t.vertices().iter().all(|&v| self.counts[v] >= 1),
            Spec::Weights(w) => self.meets(w),
        }
    }

    pub fn meets(&self, w: &WeightFunction) -> bool {
        self.counts.iter().zip(w.weights()).all(|(c, w)| c >= w)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PebblingMove {
    pub from: usize,
    pub to: usize,
}

impl PebblingMove {
    pub fn new(from: usize, to: usize) -> Self {
        Self { from, to }
    }
}

impl fmt::Display for PebblingMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// Minimum pebble count demanded at each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightFunction {
    weights: Vec<u64>,
}

impl WeightFunction {
    pub fn new(weights: Vec<u64>) -> Self {
        Self { weights }
    }

    pub fn for_graph(weights: Vec<u64>, g: &PricedGraph) -> Result<Self> {
        if weights.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                got: weights.len(),
            });
        }
        Ok(Self { weights })
    }

    pub fn ones(n: usize) -> Self {
        Self {
            weights: vec![1; n],
        }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn size(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|&w| w >= 1)
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }
}

/// A set of distinct target vertices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TargetSet {
    vertices: Vec<usize>,
}

impl TargetSet {
    pub fn new(n: usize, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::BadTargets("no target vertices".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadTargets("duplicate target vertex".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(Error::BadTargets(format!("vertex {v} out of range")));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// All `t`-subsets of `0..n` in lexicographic order.
    pub fn all_of_size(n: usize, t: usize) -> impl Iterator<Item = TargetSet> {
        let mut current: Option<Vec<usize>> = (t <= n).then(|| (0..t).collect());
        std::iter::from_fn(move || {
            let out = current.clone()?;
            current = next_subset(&out, n);
            Some(TargetSet { vertices: out })
        })
    }
}

fn next_subset(s: &[usize], n: usize) -> Option<Vec<usize>> {
    let t = s.len();
    let i = (0..t).rev().find(|&i| s[i] < n - t + i)?;
    let mut next = s.to_vec();
    next[i] += 1;
    for j in i + 1..t {
        next[j] = next[j - 1] + 1;
    }
    Some(next)
}

/// What a configuration must be pebbled to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spec {
    Targets(TargetSet),
    Weights(WeightFunction),
}

impl Spec {
    /// Per-vertex demand: 1 on each target, or the weight.
    pub fn demand(&self, n: usize) -> Vec<u64> {
        match self {
            Spec::Targets(t) => {
                let mut d = vec![0; n];
                for &v in t.vertices() {
                    d[v] = 1;
                }
                d
            }
            Spec::Weights(w) => w.weights().to_vec(),
        }
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spec::Targets(t) => write!(f, "targets {:?}", t.vertices()),
            Spec::Weights(w) => write!(f, "weights {:?}", w.weights()),
        }
    }
}

/// `C(n, k)` with overflow reported as `None`.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

/// Number of configurations of `k` pebbles on `n` vertices.
pub fn configuration_count(n: usize, k: u64) -> Option<u64> {
    if n == 0 {
        return Some(u64::from(k == 0));
    }
    binomial(k + n as u64 - 1, n as u64 - 1)
}

/// Weak compositions of `size` into `n` parts, in descending lexicographic
/// order: `(k,0,..,0)` first, `(0,..,0,k)` last.
///
/// The stream can start at any index, so ranges of the enumeration can be
/// handed to independent workers.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u64>>,
    remaining: u64,
}

impl Compositions {
    pub fn new(n: usize, size: u64) -> Self {
        Self::range(n, size, 0, u64::MAX)
    }

    /// At most `len` compositions starting at position `start`.
    pub fn range(n: usize, size: u64, start: u64, len: u64) -> Self {
        let total = configuration_count(n, size).unwrap_or(u64::MAX);
        let current = if n == 0 || start >= total {
            None
        } else {
            Some(unrank(n, size, start))
        };
        Self {
            current,
            remaining: len.min(total.saturating_sub(start)),
        }
    }
}

impl Iterator for Compositions {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current.take()?;
        self.remaining -= 1;
        self.current = successor(&out);
        Some(Configuration::new(out))
    }
}

fn successor(c: &[u64]) -> Option<Vec<u64>> {
    let n = c.len();
    let i = (0..n.saturating_sub(1)).rev().find(|&i| c[i] > 0)?;
    let mut next = c.to_vec();
    let tail: u64 = c[i + 1..].iter().sum();
    next[i] -= 1;
    next[i + 1] = tail + 1;
    for x in &mut next[i + 2..] {
        *x = 0;
    }
    Some(next)
}

fn unrank(n: usize, size: u64, mut index: u64) -> Vec<u64> {
    let mut out = vec![0; n];
    let mut rest = size;
    for (i, slot) in out.iter_mut().enumerate().take(n - 1) {
        let parts_after = n - i - 1;
        let mut value = rest;
        loop {
            let block = configuration_count(parts_after, rest - value).unwrap_or(u64::MAX);
            if index < block {
                break;
            }
            index -= block;
            value -= 1;
        }
        *slot = value;
        rest -= value;
    }
    out[n - 1] = rest;
    out
}

/// Every configuration of `k` pebbles on `g`.
pub fn enumerate_configurations(g: &PricedGraph, k: u64) -> Compositions {
    Compositions::new(g.n(), k)
}
