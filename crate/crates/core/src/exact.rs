//! Exact pebbling and weighted cover numbers by exhaustive enumeration.
//!
//! For a given size `k`, every configuration of `k` pebbles is checked with
//! the solver. Adding a pebble never hurts, so the answer is the first `k`
//! at which no configuration fails. The scan starts from the best formula
//! lower bound, after confirming that one size below it really has a
//! failing configuration.
//!
//! Within one size the enumeration is split into index ranges that run in
//! parallel; the first failure in enumeration order wins and later ranges
//! are abandoned, so results do not depend on the number of workers.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Meter;
use crate::config::{configuration_count, Compositions, Configuration, Spec, WeightFunction};
use crate::error::{Error, Result};
use crate::formulas;
use crate::graph::PricedGraph;
use crate::solver::Solver;

/// An exact value together with a configuration one pebble short that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberResult {
    pub value: u64,
    /// Unsolvable configuration of size `value - 1`; absent only when `value == 0`.
    pub witness_config: Option<Configuration>,
    pub witness_target: Option<Spec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalConfiguration {
    pub config: Configuration,
    pub target: Spec,
}

/// Every unsolvable configuration of size `pi - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalSet {
    pub pi: u64,
    pub members: Vec<CriticalConfiguration>,
}

/// What a number is computed for: `t` targets (`pi^t`) or a weight
/// function (`gamma_W`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumberQuery {
    Targets(usize),
    Weights(WeightFunction),
}

/// Oracle for exact values on one graph.
#[derive(Debug, Clone)]
pub struct Exact<'g> {
    solver: Solver<'g>,
}

impl<'g> Exact<'g> {
    pub fn new(graph: &'g PricedGraph) -> Self {
        Self {
            solver: Solver::new(graph),
        }
    }

    pub fn with_solver(solver: Solver<'g>) -> Self {
        Self { solver }
    }

    pub fn solver(&self) -> &Solver<'g> {
        &self.solver
    }

    pub fn graph(&self) -> &'g PricedGraph {
        self.solver.graph()
    }

    /// `pi_P^t(G)`.
    pub fn pebbling_number(&self, t: usize, meter: &Meter) -> Result<NumberResult> {
        let n = self.graph().n();
        if t == 0 || t > n {
            return Err(Error::Domain(format!("t must be in 1..={n}, got {t}")));
        }
        let start = self.starting_size(t);
        self.ascend(&NumberQuery::Targets(t), start, meter)
    }

    /// `gamma_W(G)`; zero for the all-zero weight function.
    pub fn weighted_cover_number(&self, w: &WeightFunction, meter: &Meter) -> Result<NumberResult> {
        let n = self.graph().n();
        if w.weights().len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: w.weights().len(),
            });
        }
        if w.is_zero() {
            return Ok(NumberResult {
                value: 0,
                witness_config: None,
                witness_target: None,
            });
        }
        // fewer than |W| pebbles can never meet W
        self.ascend(&NumberQuery::Weights(w.clone()), w.size(), meter)
    }

    pub fn number(&self, query: &NumberQuery, meter: &Meter) -> Result<NumberResult> {
        match query {
            NumberQuery::Targets(t) => self.pebbling_number(*t, meter),
            NumberQuery::Weights(w) => self.weighted_cover_number(w, meter),
        }
    }

    /// The first configuration of `size` (in enumeration order) that fails
    /// the query, with the spec it fails.
    pub fn first_unsolvable(
        &self,
        query: &NumberQuery,
        size: u64,
        meter: &Meter,
    ) -> Result<Option<CriticalConfiguration>> {
        self.first_failure(query, size, meter)
    }

    /// All non-`t`-solvable configurations of size `pi^t - 1`, in
    /// enumeration order.
    pub fn critical_configurations(&self, t: usize, meter: &Meter) -> Result<CriticalSet> {
        let pi = self.pebbling_number(t, meter)?.value;
        let members = self.failures_of_size(&NumberQuery::Targets(t), pi - 1, meter)?;
        Ok(CriticalSet { pi, members })
    }

    /// All unsolvable configurations of a given size for `t` targets.
    pub fn unsolvable_of_size(
        &self,
        t: usize,
        size: u64,
        meter: &Meter,
    ) -> Result<Vec<CriticalConfiguration>> {
        self.failures_of_size(&NumberQuery::Targets(t), size, meter)
    }

    /// Best lower bound the formulas offer. Only bounds that hold for every
    /// graph in the stated range are used, and the result is re-verified.
    fn starting_size(&self, t: usize) -> u64 {
        let g = self.graph();
        let n = g.n();
        let mut best = t as u64;
        if t < n {
            if let Ok(b) = formulas::lower_bound_spread(g, t) {
                best = best.max(b);
            }
        } else if n > 1 {
            if let Ok(b) = formulas::lower_bound_spread(g, n - 1) {
                best = best.max(b.saturating_add(1));
            }
        }
        if t <= g.diameter() {
            if let Ok(b) = formulas::lower_bound_stack(g, t) {
                best = best.max(b.value);
            }
        }
        best
    }

    fn ascend(&self, query: &NumberQuery, start: u64, meter: &Meter) -> Result<NumberResult> {
        let mut k = start.max(1);
        // Confirm the bound: size k - 1 must have a failure. If it does not,
        // the bound was too optimistic and we walk down.
        let mut witness = loop {
            match self.first_failure(query, k - 1, meter)? {
                Some(f) => break f,
                None if k > 1 => k -= 1,
                None => {
                    return Err(Error::Domain(
                        "no failing configuration even at size 0".into(),
                    ))
                }
            }
        };
        loop {
            match self.first_failure(query, k, meter)? {
                Some(f) => {
                    witness = f;
                    k = k
                        .checked_add(1)
                        .ok_or(Error::Overflow("configuration size"))?;
                }
                None => {
                    return Ok(NumberResult {
                        value: k,
                        witness_config: Some(witness.config),
                        witness_target: Some(witness.target),
                    })
                }
            }
        }
    }

    fn failure(
        &self,
        query: &NumberQuery,
        c: &Configuration,
        meter: &Meter,
    ) -> Result<Option<Spec>> {
        meter.charge_config()?;
        match query {
            NumberQuery::Targets(t) => Ok(self
                .solver
                .first_failing_target(c, *t, meter)?
                .map(Spec::Targets)),
            NumberQuery::Weights(w) => {
                let spec = Spec::Weights(w.clone());
                Ok((!self.solver.reaches(c, &spec, meter)?).then_some(spec))
            }
        }
    }

    fn chunks(&self, size: u64) -> Result<(u64, u64)> {
        let n = self.graph().n();
        let total = configuration_count(n, size).ok_or(Error::Overflow("configuration count"))?;
        let workers = rayon::current_num_threads() as u64;
        let pieces = total.clamp(1, workers * 16);
        Ok((total, total.div_ceil(pieces)))
    }

    /// First failing configuration of `size` in enumeration order.
    fn first_failure(
        &self,
        query: &NumberQuery,
        size: u64,
        meter: &Meter,
    ) -> Result<Option<CriticalConfiguration>> {
        let n = self.graph().n();
        let (total, chunk) = self.chunks(size)?;
        let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
        // start index of the earliest range known to contain a failure
        let earliest = AtomicU64::new(u64::MAX);
        starts
            .into_par_iter()
            .map(|start| -> Result<Option<CriticalConfiguration>> {
                for config in Compositions::range(n, size, start, chunk) {
                    if earliest.load(Ordering::Relaxed) < start {
                        return Ok(None);
                    }
                    if let Some(target) = self.failure(query, &config, meter)? {
                        earliest.fetch_min(start, Ordering::Relaxed);
                        return Ok(Some(CriticalConfiguration { config, target }));
                    }
                }
                Ok(None)
            })
            .find_map_first(|r| r.transpose())
            .transpose()
    }

    fn failures_of_size(
        &self,
        query: &NumberQuery,
        size: u64,
        meter: &Meter,
    ) -> Result<Vec<CriticalConfiguration>> {
        let n = self.graph().n();
        let (total, chunk) = self.chunks(size)?;
        let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
        let parts: Vec<Vec<CriticalConfiguration>> = starts
            .into_par_iter()
            .map(|start| {
                let mut out = Vec::new();
                for config in Compositions::range(n, size, start, chunk) {
                    if let Some(target) = self.failure(query, &config, meter)? {
                        out.push(CriticalConfiguration { config, target });
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(parts.into_iter().flatten().collect())
    }
}

/// `pi_P^t(G)` with a fresh solver.
pub fn pebbling_number(g: &PricedGraph, t: usize, meter: &Meter) -> Result<NumberResult> {
    Exact::new(g).pebbling_number(t, meter)
}

/// `gamma_W(G)` with a fresh solver.
pub fn weighted_cover_number(
    g: &PricedGraph,
    w: &WeightFunction,
    meter: &Meter,
) -> Result<NumberResult> {
    Exact::new(g).weighted_cover_number(w, meter)
}

/// Critical set for `t` targets with a fresh solver.
pub fn critical_configurations(g: &PricedGraph, t: usize, meter: &Meter) -> Result<CriticalSet> {
    Exact::new(g).critical_configurations(t, meter)
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    use super::*;
    use crate::families::Family;

    fn pi(g: &PricedGraph, t: usize) -> u64 {
        pebbling_number(g, t, &Meter::unlimited()).unwrap().value
    }

    fn gamma(g: &PricedGraph, w: &[u64]) -> u64 {
        weighted_cover_number(g, &WeightFunction::new(w.to_vec()), &Meter::unlimited())
            .unwrap()
            .value
    }

    /// Witness fails, and a sample of size-`value` configurations succeeds.
    fn certify(g: &PricedGraph, query: &NumberQuery, r: &NumberResult, rng: &mut StdRng) {
        let meter = Meter::unlimited();
        let solver = Solver::reference(g);
        let spec_ok = |c: &Configuration| match query {
            NumberQuery::Targets(t) => solver.is_t_solvable(c, *t, &meter).unwrap().solvable,
            NumberQuery::Weights(w) => solver
                .reaches(c, &Spec::Weights(w.clone()), &meter)
                .unwrap(),
        };
        let c = r.witness_config.as_ref().unwrap();
        assert_eq!(c.size() + 1, r.value);
        assert!(!solver
            .reaches(c, r.witness_target.as_ref().unwrap(), &meter)
            .unwrap());
        let total = configuration_count(g.n(), r.value).unwrap();
        let samples: Vec<u64> = if total <= 100 {
            (0..total).collect()
        } else {
            (0..100).map(|_| rng.gen_range(0..total)).collect()
        };
        for i in samples {
            let c = Compositions::range(g.n(), r.value, i, 1).next().unwrap();
            assert!(spec_ok(&c), "{c} should be solvable");
        }
    }

    #[test]
    fn pebbling_numbers() {
        let p3 = Family::Path.member(3).unwrap();
        assert_eq!(pi(&p3, 1), 4);
        assert_eq!(pi(&p3, 2), 6);
        assert_eq!(pi(&p3, 3), 7);
        let k3 = Family::Complete.member(3).unwrap();
        assert_eq!(
            (1..=3).map(|t| pi(&k3, t)).collect::<Vec<_>>(),
            vec![3, 4, 5]
        );
        let s3 = Family::Star.member(3).unwrap();
        assert_eq!(pi(&s3, 3), 10);
        assert_eq!(pi(&Family::Path.member(1).unwrap(), 1), 1);
    }

    #[test]
    fn weighted_cover_numbers() {
        let p2 = Family::Path.member(2).unwrap();
        assert_eq!(gamma(&p2, &[1, 1]), 3);
        assert_eq!(gamma(&p2, &[0, 1]), 2);
        assert_eq!(gamma(&p2, &[0, 0]), 0);
        let p3 = Family::Path.member(3).unwrap();
        assert_eq!(gamma(&p3, &[1, 1, 1]), 7);
        assert!(
            weighted_cover_number(&p3, &WeightFunction::new(vec![1]), &Meter::unlimited()).is_err()
        );
    }

    #[test]
    fn t_out_of_range() {
        let p3 = Family::Path.member(3).unwrap();
        assert!(pebbling_number(&p3, 0, &Meter::unlimited()).is_err());
        assert!(pebbling_number(&p3, 4, &Meter::unlimited()).is_err());
    }

    #[test]
    fn critical_sets() {
        let m = Meter::unlimited();
        let p2 = Family::Path.member(2).unwrap();
        let set = critical_configurations(&p2, 1, &m).unwrap();
        assert_eq!(set.pi, 2);
        let configs: Vec<_> = set.members.iter().map(|c| c.config.clone()).collect();
        assert_eq!(
            configs,
            vec![
                Configuration::new(vec![1, 0]),
                Configuration::new(vec![0, 1])
            ]
        );

        let k3 = Family::Complete.member(3).unwrap();
        let set = critical_configurations(&k3, 1, &m).unwrap();
        assert!(set
            .members
            .iter()
            .any(|c| c.config == Configuration::new(vec![1, 1, 0])));

        let p3 = Family::Path.member(3).unwrap();
        let set = critical_configurations(&p3, 1, &m).unwrap();
        assert!(set
            .members
            .iter()
            .any(|c| c.config == Configuration::new(vec![3, 0, 0])));
    }

    #[test]
    fn results_are_certified() {
        let mut rng = StdRng::seed_from_u64(7);
        let graphs = [
            Family::Path.member(4).unwrap(),
            Family::Complete.member(4).unwrap(),
            Family::Star.member(3).unwrap(),
            Family::Path
                .member_with_prices(3, Some(&[3, 2, 4]))
                .unwrap(),
        ];
        for g in &graphs {
            for t in 1..=g.n() {
                let q = NumberQuery::Targets(t);
                let r = Exact::new(g).number(&q, &Meter::unlimited()).unwrap();
                certify(g, &q, &r, &mut rng);
            }
            let q = NumberQuery::Weights(WeightFunction::ones(g.n()));
            let r = Exact::new(g).number(&q, &Meter::unlimited()).unwrap();
            certify(g, &q, &r, &mut rng);
        }
    }

    #[test]
    fn pruned_and_reference_agree() {
        let g = Family::Star
            .member_with_prices(3, Some(&[2, 3, 2, 5]))
            .unwrap();
        for t in 1..=g.n() {
            let fast = Exact::new(&g)
                .pebbling_number(t, &Meter::unlimited())
                .unwrap();
            let slow = Exact::with_solver(Solver::reference(&g))
                .pebbling_number(t, &Meter::unlimited())
                .unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = Family::Path.member(4).unwrap();
        let meter = Meter::new(crate::budget::Budget::new(Some(10), None));
        assert!(matches!(
            pebbling_number(&g, 2, &meter),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn result_does_not_depend_on_workers() {
        let g = Family::Complete.member(4).unwrap();
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| critical_configurations(&g, 2, &Meter::unlimited()).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
