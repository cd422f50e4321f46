//! Derivability and t-solvability by memoized depth-first search.
//!
//! Every pebbling move loses `price - 1 >= 1` pebbles, so the move relation
//! on configurations is acyclic and a search from `k` pebbles is at most
//! `k` moves deep. A state is expanded at most once per query.
//!
//! ## Pruning
//!
//! Let `cost(v, u)` be the cheapest product of prices along a walk from `v`
//! to `u`, counting every vertex the pebbles leave (so `cost(u, u) = 1`).
//! For any target `u`, the potential `sum_v c_v / cost(v, u)` never grows
//! under a move: moving off `x` towards neighbor `y` trades `p_x / cost(x, u)`
//! for `1 / cost(y, u)`, and `cost(x, u) <= p_x * cost(y, u)`. The same holds
//! for `sum_v c_v / min_u cost(v, u)` over all demanded vertices. A state
//! whose potentials are already below the demand can never reach it.
//!
//! The potentials are compared exactly, scaled by the lcm of the costs
//! involved. If that lcm overflows, the corresponding check is skipped.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::budget::Meter;
use crate::config::{Configuration, PebblingMove, Spec, TargetSet};
use crate::error::{Error, Result};
use crate::graph::PricedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub solvable: bool,
    /// Moves reaching a covering configuration. Only set for single-spec
    /// queries that succeed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<PebblingMove>>,
    /// First target set (lexicographically) that cannot be reached.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_target: Option<TargetSet>,
}

impl SolveResult {
    fn unsolvable() -> Self {
        Self {
            solvable: false,
            witness: None,
            failing_target: None,
        }
    }
}

/// Cheapest-product walk costs between every ordered pair of vertices.
#[derive(Debug, Clone)]
pub struct CostTable {
    /// `cost[v][u]`, `None` when the product overflows `u64`.
    cost: Vec<Vec<Option<u64>>>,
}

impl CostTable {
    pub fn new(g: &PricedGraph) -> Self {
        let n = g.n();
        let cost = (0..n).map(|u| costs_towards(g, u)).collect::<Vec<_>>();
        // stored as cost[v][u]
        let cost = (0..n)
            .map(|v| (0..n).map(|u| cost[u][v]).collect())
            .collect();
        Self { cost }
    }

    /// Pebbles needed on `from` to deliver one pebble to `to`.
    pub fn cost(&self, from: usize, to: usize) -> Option<u64> {
        self.cost[from][to]
    }
}

/// Dijkstra on the multiplicative metric, run backwards from `target`.
fn costs_towards(g: &PricedGraph, target: usize) -> Vec<Option<u64>> {
    let n = g.n();
    // u128 keeps every product exact; anything past u64 is reported as None.
    let mut best: Vec<Option<u128>> = vec![None; n];
    let mut done = vec![false; n];
    best[target] = Some(1);
    for _ in 0..n {
        let Some(x) = (0..n)
            .filter(|&v| !done[v] && best[v].is_some())
            .min_by_key(|&v| best[v])
        else {
            break;
        };
        done[x] = true;
        let via = best[x].expect("selected vertices have a cost");
        for &v in g.neighbors(x) {
            let candidate = via.saturating_mul(u128::from(g.price(v)));
            if best[v].is_none_or(|b| candidate < b) {
                best[v] = Some(candidate);
            }
        }
    }
    best.into_iter()
        .map(|b| b.and_then(|b| u64::try_from(b).ok()))
        .collect()
}

/// Decides reachability questions on one graph. Cheap to share between
/// threads; every query owns its own memo.
#[derive(Debug, Clone)]
pub struct Solver<'g> {
    graph: &'g PricedGraph,
    costs: CostTable,
    pruning: bool,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g PricedGraph) -> Self {
        Self {
            graph,
            costs: CostTable::new(graph),
            pruning: true,
        }
    }

    /// Plain exhaustive search without potential pruning.
    pub fn reference(graph: &'g PricedGraph) -> Self {
        Self {
            pruning: false,
            ..Self::new(graph)
        }
    }

    pub fn with_pruning(mut self, pruning: bool) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn graph(&self) -> &'g PricedGraph {
        self.graph
    }

    pub fn costs(&self) -> &CostTable {
        &self.costs
    }

    /// Can `c` be pebbled (in zero or more moves) to a configuration covering `spec`?
    pub fn can_reach_spec(
        &self,
        c: &Configuration,
        spec: &Spec,
        meter: &Meter,
    ) -> Result<SolveResult> {
        self.check_len(c)?;
        let demand = spec.demand(self.graph.n());
        if demand.len() != c.len() {
            return Err(Error::LengthMismatch {
                expected: c.len(),
                got: demand.len(),
            });
        }
        let mut search = Search::new(self, demand, meter);
        let mut counts = c.counts().to_vec();
        if search.dfs(&mut counts)? {
            Ok(SolveResult {
                solvable: true,
                witness: Some(search.path),
                failing_target: None,
            })
        } else {
            Ok(SolveResult::unsolvable())
        }
    }

    /// Is `c` able to cover every `t`-subset of vertices? On failure the
    /// lexicographically first unreachable subset is reported.
    pub fn is_t_solvable(&self, c: &Configuration, t: usize, meter: &Meter) -> Result<SolveResult> {
        self.check_len(c)?;
        let n = self.graph.n();
        if t == 0 || t > n {
            return Err(Error::Domain(format!("t must be in 1..={n}, got {t}")));
        }
        Ok(match self.first_failing_target(c, t, meter)? {
            Some(target) => SolveResult {
                solvable: false,
                witness: None,
                failing_target: Some(target),
            },
            None => SolveResult {
                solvable: true,
                witness: None,
                failing_target: None,
            },
        })
    }

    /// The first `t`-subset `c` cannot cover, if any.
    pub fn first_failing_target(
        &self,
        c: &Configuration,
        t: usize,
        meter: &Meter,
    ) -> Result<Option<TargetSet>> {
        for target in TargetSet::all_of_size(self.graph.n(), t) {
            let spec = Spec::Targets(target);
            if c.covers(&spec) {
                continue;
            }
            let mut search = Search::new(self, spec.demand(self.graph.n()), meter);
            let mut counts = c.counts().to_vec();
            if !search.dfs(&mut counts)? {
                let Spec::Targets(target) = spec else {
                    unreachable!()
                };
                return Ok(Some(target));
            }
        }
        Ok(None)
    }

    /// Spec-satisfiability check that skips certificate construction.
    pub fn reaches(&self, c: &Configuration, spec: &Spec, meter: &Meter) -> Result<bool> {
        self.check_len(c)?;
        if c.covers(spec) {
            return Ok(true);
        }
        let mut search = Search::new(self, spec.demand(self.graph.n()), meter);
        let mut counts = c.counts().to_vec();
        search.dfs(&mut counts)
    }

    fn check_len(&self, c: &Configuration) -> Result<()> {
        if c.len() != self.graph.n() {
            return Err(Error::LengthMismatch {
                expected: self.graph.n(),
                got: c.len(),
            });
        }
        Ok(())
    }
}

/// One scaled potential: `sum_v counts[v] * scale[v] >= threshold`.
#[derive(Debug)]
struct Potential {
    scale: Vec<u64>,
    threshold: u128,
}

impl Potential {
    /// Builds the check `sum_v c_v / cost[v] >= need`. Returns `None` (no
    /// check) if a cost overflowed or the common denominator does.
    fn new(costs: &[Option<u64>], need: u64) -> Option<Self> {
        let mut lcm: u64 = 1;
        for c in costs {
            lcm = checked_lcm(lcm, (*c)?)?;
        }
        let scale = costs
            .iter()
            .map(|c| lcm / c.expect("checked above"))
            .collect();
        Some(Self {
            scale,
            threshold: u128::from(need) * u128::from(lcm),
        })
    }

    fn holds(&self, counts: &[u64]) -> bool {
        let total: u128 = counts
            .iter()
            .zip(&self.scale)
            .map(|(&c, &s)| u128::from(c) * u128::from(s))
            .sum();
        total >= self.threshold
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    (a / gcd(a, b)).checked_mul(b)
}

struct Search<'s, 'g> {
    graph: &'g PricedGraph,
    costs: &'s CostTable,
    demand: Vec<u64>,
    potentials: Vec<Potential>,
    visited: HashSet<Vec<u64>>,
    path: Vec<PebblingMove>,
    meter: &'s Meter,
}

impl<'s, 'g> Search<'s, 'g> {
    fn new(solver: &'s Solver<'g>, demand: Vec<u64>, meter: &'s Meter) -> Self {
        let potentials = if solver.pruning {
            build_potentials(solver, &demand)
        } else {
            Vec::new()
        };
        Self {
            graph: solver.graph,
            costs: &solver.costs,
            demand,
            potentials,
            visited: HashSet::new(),
            path: Vec::new(),
            meter,
        }
    }

    fn satisfied(&self, counts: &[u64]) -> bool {
        counts.iter().zip(&self.demand).all(|(c, d)| c >= d)
    }

    fn dfs(&mut self, counts: &mut Vec<u64>) -> Result<bool> {
        if self.satisfied(counts) {
            return Ok(true);
        }
        if !self.potentials.iter().all(|p| p.holds(counts)) {
            return Ok(false);
        }
        if !self.visited.insert(counts.clone()) {
            return Ok(false);
        }
        self.meter.charge_state()?;

        for m in self.ordered_moves(counts) {
            let price = self.graph.price(m.from);
            counts[m.from] -= price;
            counts[m.to] += 1;
            self.path.push(m);
            let found = self.dfs(counts)?;
            counts[m.from] += price;
            counts[m.to] -= 1;
            if found {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }

    /// Legal moves, those landing on an unmet demand first, then by how
    /// cheaply the receiving vertex reaches the nearest unmet demand. The
    /// order only affects which witness is found, never the answer.
    fn ordered_moves(&self, counts: &[u64]) -> Vec<PebblingMove> {
        let g = self.graph;
        let mut moves: Vec<(bool, u64, PebblingMove)> = Vec::new();
        for from in 0..g.n() {
            if counts[from] < g.price(from) {
                continue;
            }
            for &to in g.neighbors(from) {
                let short = counts[to] < self.demand[to];
                let reach = (0..g.n())
                    .filter(|&u| counts[u] < self.demand[u])
                    .filter_map(|u| self.costs.cost(to, u))
                    .min()
                    .unwrap_or(u64::MAX);
                moves.push((!short, reach, PebblingMove { from, to }));
            }
        }
        moves.sort_unstable();
        moves.into_iter().map(|(_, _, m)| m).collect()
    }
}

fn build_potentials(solver: &Solver<'_>, demand: &[u64]) -> Vec<Potential> {
    let n = solver.graph.n();
    let targets: Vec<usize> = (0..n).filter(|&u| demand[u] > 0).collect();
    if targets.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &u in &targets {
        let costs: Vec<Option<u64>> = (0..n).map(|v| solver.costs.cost(v, u)).collect();
        out.extend(Potential::new(&costs, demand[u]));
    }
    if targets.len() > 1 {
        let nearest: Vec<Option<u64>> = (0..n)
            .map(|v| {
                targets
                    .iter()
                    .map(|&u| solver.costs.cost(v, u))
                    .try_fold(u64::MAX, |acc, c| c.map(|c| acc.min(c)))
            })
            .collect();
        out.extend(Potential::new(&nearest, demand.iter().sum()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::WeightFunction;
    use std::collections::BTreeSet;

    fn path(prices: &[u64]) -> PricedGraph {
        let n = prices.len();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        PricedGraph::new(n, &edges, prices).unwrap()
    }

    fn cfg(v: &[u64]) -> Configuration {
        Configuration::new(v.to_vec())
    }

    fn targets(n: usize, v: &[usize]) -> Spec {
        Spec::Targets(TargetSet::new(n, v.to_vec()).unwrap())
    }

    /// Breadth-first closure of the move relation, independent of the DFS.
    fn reachable_set(c: &Configuration, g: &PricedGraph) -> BTreeSet<Configuration> {
        let mut seen = BTreeSet::from([c.clone()]);
        let mut frontier = vec![c.clone()];
        while let Some(cur) = frontier.pop() {
            for m in cur.legal_moves(g) {
                let next = cur.apply(m, g).unwrap();
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen
    }

    #[test]
    fn stack_of_four_reaches_far_end_of_p3() {
        let g = path(&[2, 2, 2]);
        let c = cfg(&[4, 0, 0]);
        let spec = targets(3, &[2]);
        let r = Solver::new(&g)
            .can_reach_spec(&c, &spec, &Meter::unlimited())
            .unwrap();
        assert!(r.solvable);
        let moves = r.witness.unwrap();
        assert_eq!(moves.len(), 3);
        assert!(c.replay(&moves, &g).unwrap().covers(&spec));
    }

    #[test]
    fn stack_of_three_cannot_reach_far_end_of_p3() {
        let g = path(&[2, 2, 2]);
        let c = cfg(&[3, 0, 0]);
        let closure = reachable_set(&c, &g);
        assert_eq!(closure, BTreeSet::from([cfg(&[3, 0, 0]), cfg(&[1, 1, 0])]));
        let spec = targets(3, &[2]);
        assert!(!closure.iter().any(|x| x.covers(&spec)));
        let r = Solver::new(&g)
            .can_reach_spec(&c, &spec, &Meter::unlimited())
            .unwrap();
        assert_eq!(r, SolveResult::unsolvable());
    }

    #[test]
    fn middle_stack_cannot_cover_both_ends() {
        let g = path(&[2, 2, 2]);
        let c = cfg(&[0, 3, 0]);
        let spec = targets(3, &[0, 2]);
        let closure = reachable_set(&c, &g);
        assert!(!closure.iter().any(|x| x.covers(&spec)));
        let r = Solver::new(&g)
            .can_reach_spec(&c, &spec, &Meter::unlimited())
            .unwrap();
        assert!(!r.solvable);
    }

    #[test]
    fn empty_move_sequence_counts() {
        let g = path(&[2, 2, 2]);
        let r = Solver::new(&g)
            .can_reach_spec(
                &cfg(&[1, 1, 1]),
                &targets(3, &[0, 1, 2]),
                &Meter::unlimited(),
            )
            .unwrap();
        assert!(r.solvable);
        assert_eq!(r.witness, Some(vec![]));
    }

    #[test]
    fn t_solvability_examples() {
        let g = path(&[2, 2, 2]);
        let solver = Solver::new(&g);
        let meter = Meter::unlimited();
        assert!(
            solver
                .is_t_solvable(&cfg(&[1, 1, 1]), 3, &meter)
                .unwrap()
                .solvable
        );
        assert!(
            solver
                .is_t_solvable(&cfg(&[4, 0, 0]), 1, &meter)
                .unwrap()
                .solvable
        );
        let r = solver.is_t_solvable(&cfg(&[0, 3, 0]), 2, &meter).unwrap();
        assert!(!r.solvable);
        assert_eq!(
            r.failing_target,
            Some(TargetSet::new(3, vec![0, 2]).unwrap())
        );
    }

    #[test]
    fn t_out_of_range() {
        let g = path(&[2, 2]);
        let solver = Solver::new(&g);
        assert!(solver
            .is_t_solvable(&cfg(&[1, 1]), 0, &Meter::unlimited())
            .is_err());
        assert!(solver
            .is_t_solvable(&cfg(&[1, 1]), 3, &Meter::unlimited())
            .is_err());
        assert!(solver
            .is_t_solvable(&cfg(&[1]), 1, &Meter::unlimited())
            .is_err());
    }

    #[test]
    fn weight_demands() {
        let g = path(&[2, 2]);
        let solver = Solver::new(&g);
        let w = Spec::Weights(WeightFunction::new(vec![1, 1]));
        let meter = Meter::unlimited();
        assert!(
            !solver
                .can_reach_spec(&cfg(&[2, 0]), &w, &meter)
                .unwrap()
                .solvable
        );
        assert!(
            solver
                .can_reach_spec(&cfg(&[3, 0]), &w, &meter)
                .unwrap()
                .solvable
        );
    }

    #[test]
    fn cost_table_uses_cheapest_product() {
        // 0 -(p=3)- 1 -(p=2)- 2, and a detour 0 - 3 - 2 through a pricier vertex.
        let g = PricedGraph::new(4, &[(0, 1), (1, 2), (0, 3), (3, 2)], &[3, 2, 2, 5]).unwrap();
        let table = CostTable::new(&g);
        assert_eq!(table.cost(0, 0), Some(1));
        assert_eq!(table.cost(0, 1), Some(3));
        assert_eq!(table.cost(0, 2), Some(6));
        assert_eq!(table.cost(3, 2), Some(5));
        assert_eq!(table.cost(3, 1), Some(10));
    }

    #[test]
    fn floor_of_individual_shares_would_be_unsound() {
        // (2,1,0) on P_3: 0->1 then 1->2 works, although neither vertex
        // alone holds enough to reach vertex 2.
        let g = path(&[2, 2, 2]);
        let r = Solver::new(&g)
            .can_reach_spec(&cfg(&[2, 1, 0]), &targets(3, &[2]), &Meter::unlimited())
            .unwrap();
        assert!(r.solvable);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = path(&[2, 2, 2, 2]);
        let meter = Meter::new(crate::budget::Budget::new(None, Some(1)));
        let r =
            Solver::reference(&g).can_reach_spec(&cfg(&[7, 0, 0, 0]), &targets(4, &[3]), &meter);
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }
}
