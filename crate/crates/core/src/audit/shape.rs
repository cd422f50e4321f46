//! Shape predicate for critical configurations: every vertex holds either
//! nothing or one pebble short of its price, except possibly one free
//! vertex `r`. Under the standard price, `r` must also see a vertex at
//! diameter distance through a shortest path carrying no other pebbles.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::graph::PricedGraph;

/// Where a configuration matches the shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeMatch {
    /// The one vertex allowed an arbitrary count, if any vertex needed it.
    pub free_vertex: Option<usize>,
    /// The vertex `r` the path condition was checked from.
    pub anchor: Option<usize>,
    /// A vertex at diameter distance from `anchor` reached through empty
    /// vertices. Only set when the path condition applies.
    pub far_vertex: Option<usize>,
}

/// Count condition alone. `None` if two or more vertices hold something
/// other than `0` or `price - 1`; otherwise the single exception, if any.
pub fn count_shape(counts: &[u64], prices: &[u64]) -> Option<Option<usize>> {
    let mut free = None;
    for (v, (&c, &p)) in counts.iter().zip(prices).enumerate() {
        if c != 0 && c != p - 1 {
            if free.is_some() {
                return None;
            }
            free = Some(v);
        }
    }
    Some(free)
}

/// A vertex `s` with `dist(r, s) = diameter` joined to `r` by a path of that
/// length whose vertices other than `r` are all empty. Smallest such `s`.
pub fn far_empty_vertex(g: &PricedGraph, c: &Configuration, r: usize) -> Option<usize> {
    let d = g.diameter();
    if d == 0 {
        return Some(r);
    }
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    dist[r] = 0;
    let mut queue = VecDeque::from([r]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX && c.count(v) == 0 {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    (0..n).find(|&s| dist[s] == d && g.distance(r, s) == d)
}

/// Full shape check. The path condition is applied only under the
/// standard price. With no free vertex, any pebbled vertex (any vertex, if
/// none is pebbled) may serve as `r`.
pub fn match_shape(g: &PricedGraph, c: &Configuration) -> Option<ShapeMatch> {
    let free_vertex = count_shape(c.counts(), g.prices())?;
    if !g.is_standard() {
        return Some(ShapeMatch {
            free_vertex,
            anchor: free_vertex,
            far_vertex: None,
        });
    }
    let candidates: Vec<usize> = match free_vertex {
        Some(r) => vec![r],
        None => {
            let pebbled: Vec<usize> = (0..g.n()).filter(|&v| c.count(v) > 0).collect();
            if pebbled.is_empty() {
                (0..g.n()).collect()
            } else {
                pebbled
            }
        }
    };
    candidates.into_iter().find_map(|r| {
        far_empty_vertex(g, c, r).map(|s| ShapeMatch {
            free_vertex,
            anchor: Some(r),
            far_vertex: Some(s),
        })
    })
}
