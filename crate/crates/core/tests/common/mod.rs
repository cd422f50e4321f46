//! Brute-force reference values, independent of the crate's solver and
//! enumeration: plain reachable-set search over every move sequence.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use pebblekit::families::{complete_edges, cycle_edges, path_edges, star_edges};
use pebblekit::PricedGraph;

/// Every configuration reachable from `start`, `start` included.
pub fn reachable(g: &PricedGraph, start: &[u64]) -> HashSet<Vec<u64>> {
    let mut seen = HashSet::from([start.to_vec()]);
    let mut stack = vec![start.to_vec()];
    while let Some(c) = stack.pop() {
        for v in 0..g.n() {
            if c[v] < g.price(v) {
                continue;
            }
            for &u in g.neighbors(v) {
                let mut next = c.clone();
                next[v] -= g.price(v);
                next[u] += 1;
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen
}

pub fn meets(c: &[u64], demand: &[u64]) -> bool {
    c.iter().zip(demand).all(|(a, b)| a >= b)
}

pub fn solvable(g: &PricedGraph, c: &[u64], demand: &[u64]) -> bool {
    reachable(g, c).iter().any(|r| meets(r, demand))
}

/// All configurations of `k` pebbles on `n` vertices.
pub fn configs(n: usize, k: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in configs(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == t)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

/// Target sets of size `t` that `c` can be pebbled to cover.
fn coverable_masks(g: &PricedGraph, c: &[u64]) -> HashSet<u32> {
    reachable(g, c)
        .iter()
        .map(|r| {
            (0..g.n())
                .filter(|&v| r[v] > 0)
                .fold(0u32, |m, v| m | 1 << v)
        })
        .collect()
}

pub fn t_solvable(g: &PricedGraph, c: &[u64], t: usize) -> bool {
    let masks = coverable_masks(g, c);
    subsets(g.n(), t).iter().all(|s| {
        let want = s.iter().fold(0u32, |m, &v| m | 1 << v);
        masks.iter().any(|&m| m & want == want)
    })
}

pub fn pi(g: &PricedGraph, t: usize) -> u64 {
    (0..)
        .find(|&k| configs(g.n(), k).iter().all(|c| t_solvable(g, c, t)))
        .unwrap()
}

pub fn gamma(g: &PricedGraph, w: &[u64]) -> u64 {
    (0..)
        .find(|&k| configs(g.n(), k).iter().all(|c| solvable(g, c, w)))
        .unwrap()
}

/// Non-`t`-solvable configurations of `pi - 1` pebbles, sorted.
pub fn critical(g: &PricedGraph, t: usize) -> BTreeSet<Vec<u64>> {
    let p = pi(g, t);
    configs(g.n(), p - 1)
        .into_iter()
        .filter(|c| !t_solvable(g, c, t))
        .collect()
}

pub fn path(n: usize) -> PricedGraph {
    PricedGraph::standard(n, &path_edges(n)).unwrap()
}

pub fn complete(n: usize) -> PricedGraph {
    PricedGraph::standard(n, &complete_edges(n)).unwrap()
}

pub fn star(leaves: usize) -> PricedGraph {
    PricedGraph::standard(leaves + 1, &star_edges(leaves)).unwrap()
}

pub fn cycle(n: usize) -> PricedGraph {
    PricedGraph::standard(n, &cycle_edges(n)).unwrap()
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of every connected graph on `n` vertices up to
/// isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut canon = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << all.len() {
        let edges: Vec<_> = (0..all.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| all[i])
            .collect();
        if !connected(n, &edges) {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                let mut e: Vec<_> = edges
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if canon.insert(key) {
            out.push(edges);
        }
    }
    out
}
