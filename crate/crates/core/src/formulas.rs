//! Closed forms and bounds for generalized pebbling numbers.
//!
//! Notation follows one convention throughout: `p_i` is the price of the
//! `i`-th vertex of some labeling (path order, orientation), and the sorted
//! view `p^1 <= p^2 <= ... <= p^n` is taken from
//! [`PricedGraph::sorted_prices`]. Neither labeling is stored on the graph.
//!
//! All arithmetic is checked; overflow surfaces as [`Error::Overflow`].

use serde::{Deserialize, Serialize};

use crate::budget::Meter;
use crate::config::{Configuration, Spec, WeightFunction};
use crate::error::{Error, Result};
use crate::graph::PricedGraph;
use crate::solver::Solver;

/// A formula value, noting whether the `t = n` case was obtained from the
/// `t = n - 1` value through the cover identity `pi^n = pi^(n-1) + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub value: u64,
    pub via_cover_identity: bool,
}

impl FormulaValue {
    fn direct(value: u64) -> Self {
        Self {
            value,
            via_cover_identity: false,
        }
    }
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow("formula sum"))
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow("formula product"))
}

fn product<'a>(prices: impl IntoIterator<Item = &'a u64>) -> Result<u64> {
    prices.into_iter().try_fold(1u64, |acc, &p| mul(acc, p))
}

fn pow(base: u64, exp: usize) -> Result<u64> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or(Error::Overflow("power"))
}

fn check_t(g: &PricedGraph, t: usize, max: usize) -> Result<()> {
    if t == 0 || t > max {
        return Err(Error::Domain(format!(
            "t = {t} outside 1..={max} for a graph on {} vertices",
            g.n()
        )));
    }
    Ok(())
}

/// Spread lower bound: `sum_{i=t+1}^{n} (p^i - 1) + p^n (t - 1) + 1`, for `t < n`.
pub fn lower_bound_spread(g: &PricedGraph, t: usize) -> Result<u64> {
    let n = g.n();
    if t == n {
        return Err(Error::Domain("spread bound needs t < n".into()));
    }
    check_t(g, t, n)?;
    let p = g.sorted_prices();
    let spread = p[t..].iter().try_fold(0u64, |acc, &x| add(acc, x - 1))?;
    let top = mul(p[n - 1], t as u64 - 1)?;
    add(add(spread, top)?, 1)
}

/// Stack lower bound along a diameter path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackBound {
    /// Value with the off-path term read as `p_1 p_2 |t - d|`.
    pub value: u64,
    /// Value with the off-path term taken literally as `p_1 p_2 (d - t)`.
    /// Equal to `value` when `t <= d`.
    pub literal: i128,
    /// The labeled path the bound was evaluated on.
    pub path: Vec<usize>,
}

/// Picks the diameter path (with orientation) maximizing `p_1 ... p_m`,
/// `m = min(n - d, d + 1)`; ties go to the lexicographically smallest vertex
/// sequence.
pub fn stack_bound_path(g: &PricedGraph) -> Result<Vec<usize>> {
    let d = g.diameter();
    let m = (g.n() - d).min(d + 1);
    let mut best: Option<(u64, Vec<usize>)> = None;
    for path in g.diameter_paths() {
        let key = product(path[..m].iter().map(|&v| &g.prices()[v]))?;
        if best.as_ref().is_none_or(|(b, _)| key > *b) {
            best = Some((key, path));
        }
    }
    Ok(best.expect("every graph has a diameter path").1)
}

/// `sum_{j=1}^{terms} prod_{i=1}^{len-j} p_i` over prices listed in path order.
fn stacked_sum(prices: &[u64], terms: usize) -> Result<u64> {
    let len = prices.len();
    (1..=terms).try_fold(0u64, |acc, j| add(acc, product(&prices[..len - j])?))
}

/// Stack lower bound. For `t <= d` it is the cost of covering the `t`
/// farthest path vertices from a stack on the path's first vertex; for
/// `t > d` the `d` path vertices plus `t - d` vertices off the path.
pub fn lower_bound_stack(g: &PricedGraph, t: usize) -> Result<StackBound> {
    let n = g.n();
    let d = g.diameter();
    if d == 0 {
        return Err(Error::Domain("stack bound needs diameter >= 1".into()));
    }
    check_t(g, t, n)?;
    let path = stack_bound_path(g)?;
    let prices: Vec<u64> = path.iter().map(|&v| g.price(v)).collect();
    if t <= d {
        let value = stacked_sum(&prices, t)?;
        return Ok(StackBound {
            value,
            literal: i128::from(value),
            path,
        });
    }
    if t == n {
        return Err(Error::Domain("stack bound with t > d needs t < n".into()));
    }
    let on_path = stacked_sum(&prices, d)?;
    let hop = mul(prices[0], prices[1])?;
    let off = (t - d) as u64;
    Ok(StackBound {
        value: add(on_path, mul(hop, off)?)?,
        literal: i128::from(on_path) - i128::from(hop) * i128::from(off),
        path,
    })
}

/// Pigeonhole upper bound `t [ (prod of the d largest prices - 1)(n - 1) + 1 ]`.
pub fn upper_bound(g: &PricedGraph, t: usize) -> Result<u64> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let n = g.n();
    let d = g.diameter();
    let p = g.sorted_prices();
    let top = product(&p[n - d..])?;
    let single = add(mul(top - 1, n as u64 - 1)?, 1)?;
    mul(t as u64, single)
}

/// Classical standard-price bounds `(max(n, 2^d), (2^d - 1)(n - 1) + 1)`.
pub fn classic_bounds(n: usize, d: usize) -> Result<(u64, u64)> {
    let consistent = match n {
        0 => false,
        1 => d == 0,
        _ => (1..n).contains(&d),
    };
    if !consistent {
        return Err(Error::Domain(format!(
            "no connected graph on {n} vertices has diameter {d}"
        )));
    }
    let two_d = pow(2, d)?;
    let lower = two_d.max(n as u64);
    let upper = add(mul(two_d - 1, n as u64 - 1)?, 1)?;
    Ok((lower, upper))
}

/// `pi^n = pi^(n-1) + 1`.
pub fn cover_from_penultimate(pi_penultimate: u64) -> Result<u64> {
    add(pi_penultimate, 1)
}

/// Closed form for complete graphs: the spread bound is exact for `t < n`;
/// `t = n` goes through the cover identity.
pub fn pi_complete(g: &PricedGraph, t: usize) -> Result<FormulaValue> {
    if !g.is_complete() {
        return Err(Error::NotComplete);
    }
    let n = g.n();
    check_t(g, t, n)?;
    if t < n {
        return lower_bound_spread(g, t).map(FormulaValue::direct);
    }
    let below = if n == 1 {
        0
    } else {
        lower_bound_spread(g, n - 1)?
    };
    Ok(FormulaValue {
        value: cover_from_penultimate(below)?,
        via_cover_identity: true,
    })
}

/// Orientation of a path maximizing `p_1 ... p_t`; ties go to the
/// lexicographically smaller vertex sequence.
pub fn path_orientation(g: &PricedGraph, t: usize) -> Result<Vec<usize>> {
    let forward = g.path_order().ok_or(Error::NotPath)?;
    let backward: Vec<usize> = forward.iter().rev().copied().collect();
    let lead =
        |order: &[usize]| product(order[..t.min(order.len())].iter().map(|&v| &g.prices()[v]));
    let (f, b) = (lead(&forward)?, lead(&backward)?);
    Ok(match f.cmp(&b) {
        std::cmp::Ordering::Greater => forward,
        std::cmp::Ordering::Less => backward,
        std::cmp::Ordering::Equal => forward.min(backward),
    })
}

/// Closed form for paths: `sum_{j=1}^{t} prod_{i=1}^{n-j} p_i` in the
/// orientation from [`path_orientation`]; `t = n` goes through the cover
/// identity.
pub fn pi_path(g: &PricedGraph, t: usize) -> Result<FormulaValue> {
    let n = g.n();
    g.path_order().ok_or(Error::NotPath)?;
    check_t(g, t, n)?;
    if t == n {
        let below = if n == 1 { 0 } else { pi_path(g, n - 1)?.value };
        return Ok(FormulaValue {
            value: cover_from_penultimate(below)?,
            via_cover_identity: true,
        });
    }
    let order = path_orientation(g, t)?;
    let prices: Vec<u64> = order.iter().map(|&v| g.price(v)).collect();
    stacked_sum(&prices, t).map(FormulaValue::direct)
}

/// The path sum with its product read literally as `prod_{i=1}^{n-j} p_j`,
/// i.e. `sum_{j=1}^{t} p_j^(n-j)`, in the same orientation as [`pi_path`].
pub fn pi_path_literal_index(g: &PricedGraph, t: usize) -> Result<u64> {
    let n = g.n();
    g.path_order().ok_or(Error::NotPath)?;
    check_t(g, t, n.saturating_sub(1).max(1))?;
    let order = path_orientation(g, t)?;
    (1..=t).try_fold(0u64, |acc, j| add(acc, pow(g.price(order[j - 1]), n - j)?))
}

/// Closed form for the star with `L` leaves (`L + 1` vertices), `1 <= t <= L`:
/// `sum_{i=t+1}^{L-1} (p^i - 1) + t p_0 p^L` for `t < L` and
/// `L p_0 p^L + p^L` for `t = L`, where `p_0` is the center price and
/// `p^1..p^L` the sorted leaf prices.
pub fn pi_star(g: &PricedGraph, t: usize) -> Result<u64> {
    let center = g.star_center().ok_or(Error::NotStar)?;
    let leaves = g.n() - 1;
    if t == 0 || t > leaves {
        return Err(Error::Domain(format!(
            "star with {leaves} leaves: t must be in 1..={leaves}, got {t}"
        )));
    }
    let mut leaf_prices: Vec<u64> = (0..g.n())
        .filter(|&v| v != center)
        .map(|v| g.price(v))
        .collect();
    leaf_prices.sort_unstable();
    let p0 = g.price(center);
    let top = leaf_prices[leaves - 1];
    if t < leaves {
        // sum over i = t+1 ..= L-1, one-based
        let spread = leaf_prices[t..leaves - 1]
            .iter()
            .try_fold(0u64, |acc, &x| add(acc, x - 1))?;
        add(spread, mul(mul(t as u64, p0)?, top)?)
    } else {
        add(mul(mul(leaves as u64, p0)?, top)?, top)
    }
}

/// Standard-price complete-graph value as it appears in the limit argument
/// for complete graphs: `n - t + 2^n (t - 1) + 1`.
pub fn complete_limit_argument_value(n: usize, t: usize) -> Result<u64> {
    let body = add(mul(pow(2, n)?, t as u64 - 1)?, n as u64 + 1)?;
    body.checked_sub(t as u64)
        .ok_or(Error::Overflow("complete limit value"))
}

/// Standard-price star value from the star limit argument: `3t + L - 1`.
pub fn star_limit_argument_value(leaves: usize, t: usize) -> Result<u64> {
    add(mul(3, t as u64)?, leaves as u64 - 1)
}

/// Standard-price path value `2^n - 2^(n-t)`.
pub fn path_standard_value(n: usize, t: usize) -> Result<u64> {
    if t > n {
        return Err(Error::Domain(format!("t = {t} > n = {n}")));
    }
    Ok(pow(2, n)? - pow(2, n - t)?)
}

/// Smallest stack on `v` that can be pebbled to meet `w`, found by doubling
/// then bisection over solver queries.
pub fn simple_config_cost(
    solver: &Solver<'_>,
    w: &WeightFunction,
    v: usize,
    meter: &Meter,
) -> Result<u64> {
    let g = solver.graph();
    if w.weights().len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: w.weights().len(),
        });
    }
    if v >= g.n() {
        return Err(Error::Domain(format!("vertex {v} out of range")));
    }
    if w.is_zero() {
        return Ok(0);
    }
    let spec = Spec::Weights(w.clone());
    let solves = |size: u64| solver.reaches(&Configuration::stack(g.n(), v, size), &spec, meter);
    // fewer than |W| pebbles can never meet W
    let mut fail = w.size() - 1;
    let mut pass = w.size();
    while !solves(pass)? {
        fail = pass;
        pass = pass.checked_mul(2).ok_or(Error::Overflow("stack size"))?;
    }
    while pass - fail > 1 {
        let mid = fail + (pass - fail) / 2;
        if solves(mid)? {
            pass = mid;
        } else {
            fail = mid;
        }
    }
    Ok(pass)
}

/// `max_v (cost_v - 1) + 1`: a stack one short of `cost_v` fails, so this
/// is a lower bound on the weighted cover number.
pub fn simple_config_bound(solver: &Solver<'_>, w: &WeightFunction, meter: &Meter) -> Result<u64> {
    (0..solver.graph().n()).try_fold(0u64, |acc, v| {
        Ok(acc.max(simple_config_cost(solver, w, v, meter)?))
    })
}
