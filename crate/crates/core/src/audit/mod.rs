//! Cross-checks of closed forms, bounds and structural claims against the
//! exhaustive oracle.
//!
//! Every check yields a [`ClaimVerdict`]. A refutation always carries a
//! [`Witness`] that [`Witness::verify`] re-derives from scratch with the
//! unpruned reference solver, so a verdict never rests on the pruned search
//! alone. Checks that run out of budget come back inconclusive instead of
//! failing the whole report.

pub mod series;
pub mod shape;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use series::{
    alpha_from_formula, alpha_sequence, beta_estimate, family_formula_value, limit_verdict,
    rho_series, RatioSeries, SeriesEntry, SeriesKind, ValueSource,
};
pub use shape::{count_shape, far_empty_vertex, match_shape, ShapeMatch};

use crate::budget::{Budget, Meter};
use crate::config::{Configuration, Spec, WeightFunction};
use crate::error::{Error, Result};
use crate::exact::{CriticalSet, Exact, NumberQuery, NumberResult};
use crate::families::Family;
use crate::formulas;
use crate::graph::{GraphFile, PricedGraph};
use crate::ratio::Rational;
use crate::solver::Solver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    ConfirmedAtScale,
    RefutedAtScale,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Integer(i64),
    Rational(Rational),
    Series(Vec<Rational>),
    Named(BTreeMap<String, ClaimValue>),
    Text(String),
}

impl ClaimValue {
    fn int(v: impl TryInto<i64>) -> Self {
        ClaimValue::Integer(v.try_into().unwrap_or(i64::MAX))
    }

    fn named<const N: usize>(pairs: [(&str, ClaimValue); N]) -> Self {
        ClaimValue::Named(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }
}

impl fmt::Display for ClaimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimValue::Integer(v) => write!(f, "{v}"),
            ClaimValue::Rational(r) => write!(f, "{r}"),
            ClaimValue::Series(values) => {
                let parts: Vec<String> = values.iter().map(Rational::to_string).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            ClaimValue::Named(map) => {
                let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            ClaimValue::Text(t) => f.write_str(t),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::ConfirmedAtScale => "confirmed-at-scale",
            Verdict::RefutedAtScale => "refuted-at-scale",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim: String,
    pub paper_value: Option<ClaimValue>,
    pub computed_value: Option<ClaimValue>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimVerdict {
    fn new(
        claim: impl Into<String>,
        claimed: Option<ClaimValue>,
        computed: Option<ClaimValue>,
        verdict: Verdict,
    ) -> Self {
        Self {
            claim: claim.into(),
            paper_value: claimed,
            computed_value: computed,
            verdict,
            witness: None,
            note: None,
        }
    }

    /// A refutation; the witness is mandatory.
    fn refuted(
        claim: impl Into<String>,
        claimed: Option<ClaimValue>,
        computed: Option<ClaimValue>,
        witness: Witness,
    ) -> Self {
        Self::new(claim, claimed, computed, Verdict::RefutedAtScale).with_witness(witness)
    }

    fn inconclusive(claim: impl Into<String>, claimed: Option<ClaimValue>, err: &Error) -> Self {
        Self::new(claim, claimed, None, Verdict::Inconclusive).with_note(err.to_string())
    }

    fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Evidence attached to a verdict, checkable without trusting the audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// An exact number and a configuration one pebble short that fails.
    ExactValue {
        graph: GraphFile,
        query: NumberQuery,
        value: u64,
        unsolvable: Option<Configuration>,
        target: Option<Spec>,
    },
    /// A configuration that cannot reach `target`.
    Unsolvable {
        graph: GraphFile,
        config: Configuration,
        target: Spec,
    },
    /// Ratio entries over family members, each recomputable from its source.
    Series {
        family: Family,
        entries: Vec<SeriesEntry>,
    },
    /// A critical configuration of the conjectured shape.
    Shape {
        graph: GraphFile,
        t: usize,
        pi: u64,
        config: Configuration,
        target: Spec,
        shape: ShapeMatch,
    },
    /// The complete critical set, none of whose members has the shape.
    CriticalSet {
        graph: GraphFile,
        t: usize,
        pi: u64,
        members: Vec<Configuration>,
    },
    /// Every single-vertex stack of `size` meets the weights.
    SimpleStacks {
        graph: GraphFile,
        weights: WeightFunction,
        size: u64,
    },
    AllOf {
        parts: Vec<Witness>,
    },
}

impl Witness {
    fn exact(g: &PricedGraph, query: NumberQuery, r: &NumberResult) -> Self {
        Witness::ExactValue {
            graph: g.to_file(),
            query,
            value: r.value,
            unsolvable: r.witness_config.clone(),
            target: r.witness_target.clone(),
        }
    }

    /// Re-derive the evidence with the unpruned reference solver.
    pub fn verify(&self, meter: &Meter) -> Result<bool> {
        match self {
            Witness::ExactValue {
                graph,
                query,
                value,
                unsolvable,
                target,
            } => {
                let g = PricedGraph::from_file(graph)?;
                let reference = Exact::with_solver(Solver::reference(&g));
                if reference.number(query, meter)?.value != *value {
                    return Ok(false);
                }
                match (unsolvable, target) {
                    (Some(c), Some(s)) => Ok(c.len() == g.n()
                        && c.size() + 1 == *value
                        && !reference.solver().reaches(c, s, meter)?),
                    (None, None) => Ok(*value == 0),
                    _ => Ok(false),
                }
            }
            Witness::Unsolvable {
                graph,
                config,
                target,
            } => {
                let g = PricedGraph::from_file(graph)?;
                Ok(config.len() == g.n()
                    && !Solver::reference(&g).reaches(config, target, meter)?)
            }
            Witness::Series { family, entries } => {
                for e in entries {
                    let Some(n) = e.member else { return Ok(false) };
                    let value = |t: usize| -> Result<u64> {
                        match e.source {
                            ValueSource::Oracle => {
                                let g = family.member(n)?;
                                Ok(Exact::with_solver(Solver::reference(&g))
                                    .pebbling_number(t, meter)?
                                    .value)
                            }
                            ValueSource::Formula => family_formula_value(*family, n, t),
                            ValueSource::ProofFormula => proof_formula_value(*family, n, t),
                        }
                    };
                    if value(e.t)? != e.denominator
                        || value(e.t + 1)? != e.numerator
                        || Rational::of(e.numerator, e.denominator)? != e.value
                    {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Witness::Shape {
                graph,
                t,
                pi,
                config,
                target,
                shape,
            } => {
                let g = PricedGraph::from_file(graph)?;
                let reference = Exact::with_solver(Solver::reference(&g));
                let is_t_target = matches!(target, Spec::Targets(s) if s.len() == *t);
                Ok(is_t_target
                    && config.len() == g.n()
                    && config.size() + 1 == *pi
                    && match_shape(&g, config).as_ref() == Some(shape)
                    && !reference.solver().reaches(config, target, meter)?
                    && reference.pebbling_number(*t, meter)?.value == *pi)
            }
            Witness::CriticalSet {
                graph,
                t,
                pi,
                members,
            } => {
                let g = PricedGraph::from_file(graph)?;
                let reference = Exact::with_solver(Solver::reference(&g));
                if reference.pebbling_number(*t, meter)?.value != *pi || members.is_empty() {
                    return Ok(false);
                }
                let all: Vec<Configuration> = reference
                    .unsolvable_of_size(*t, pi - 1, meter)?
                    .into_iter()
                    .map(|c| c.config)
                    .collect();
                Ok(&all == members && all.iter().all(|c| match_shape(&g, c).is_none()))
            }
            Witness::SimpleStacks {
                graph,
                weights,
                size,
            } => {
                let g = PricedGraph::from_file(graph)?;
                let solver = Solver::reference(&g);
                let spec = Spec::Weights(weights.clone());
                for v in 0..g.n() {
                    if !solver.reaches(&Configuration::stack(g.n(), v, *size), &spec, meter)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Witness::AllOf { parts } => {
                for p in parts {
                    if !p.verify(meter)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// Values the limit arguments derive their limits from, as printed there.
pub fn proof_formula_value(family: Family, n: usize, t: usize) -> Result<u64> {
    match family {
        Family::Complete => formulas::complete_limit_argument_value(n, t),
        Family::Star => formulas::star_limit_argument_value(n, t),
        Family::Path => formulas::path_standard_value(n, t),
    }
}

type GraphKey = (Vec<u64>, Vec<(usize, usize)>);

fn key(g: &PricedGraph) -> GraphKey {
    (g.prices().to_vec(), g.edges().to_vec())
}

/// Memoizing front for the exact oracle, shared by concurrent checks. Each
/// computation gets its own meter with the configured budget.
#[derive(Debug, Default)]
pub struct Oracle {
    budget: Budget,
    numbers: Mutex<HashMap<(GraphKey, NumberQuery), NumberResult>>,
    critical: Mutex<HashMap<(GraphKey, usize), CriticalSet>>,
}

impl Oracle {
    pub fn new(budget: Budget) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn number(&self, g: &PricedGraph, query: &NumberQuery) -> Result<NumberResult> {
        let k = (key(g), query.clone());
        if let Some(r) = self.numbers.lock().expect("oracle cache").get(&k) {
            return Ok(r.clone());
        }
        let r = Exact::new(g).number(query, &Meter::new(self.budget))?;
        self.numbers
            .lock()
            .expect("oracle cache")
            .insert(k, r.clone());
        Ok(r)
    }

    pub fn pi(&self, g: &PricedGraph, t: usize) -> Result<NumberResult> {
        self.number(g, &NumberQuery::Targets(t))
    }

    pub fn gamma(&self, g: &PricedGraph, w: &WeightFunction) -> Result<NumberResult> {
        self.number(g, &NumberQuery::Weights(w.clone()))
    }

    pub fn critical(&self, g: &PricedGraph, t: usize) -> Result<CriticalSet> {
        let k = (key(g), t);
        if let Some(s) = self.critical.lock().expect("oracle cache").get(&k) {
            return Ok(s.clone());
        }
        let pi = self.pi(g, t)?.value;
        let members = Exact::new(g).unsolvable_of_size(t, pi - 1, &Meter::new(self.budget))?;
        let set = CriticalSet { pi, members };
        self.critical
            .lock()
            .expect("oracle cache")
            .insert(k, set.clone());
        Ok(set)
    }
}

pub fn default_tolerance() -> Rational {
    Rational::of(1, 4).expect("nonzero denominator")
}

fn claim_id(base: &str, t: usize) -> String {
    format!("{base}[t={t}]")
}

/// How a claimed value relates to the exact number it describes.
#[derive(Debug, Clone, Copy)]
enum Relation {
    Equal(i128),
    /// A lower bound: `value <= pi`.
    Below(i128),
    /// An upper bound: `pi <= value`.
    Above(i128),
    Between(i128, i128),
}

impl Relation {
    fn holds(self, pi: u64) -> bool {
        let pi = i128::from(pi);
        match self {
            Relation::Equal(v) => v == pi,
            Relation::Below(v) => v <= pi,
            Relation::Above(v) => pi <= v,
            Relation::Between(lo, hi) => lo <= pi && pi <= hi,
        }
    }

    fn paper_value(self) -> ClaimValue {
        match self {
            Relation::Equal(v) | Relation::Below(v) | Relation::Above(v) => ClaimValue::int(v),
            Relation::Between(lo, hi) => ClaimValue::named([
                ("lower", ClaimValue::int(lo)),
                ("upper", ClaimValue::int(hi)),
            ]),
        }
    }
}

/// Compare a claimed value against `pi^t`. The exact value is attached as
/// evidence either way.
fn compare(
    oracle: &Oracle,
    g: &PricedGraph,
    claim: String,
    t: usize,
    rel: Relation,
) -> ClaimVerdict {
    let claimed = Some(rel.paper_value());
    match oracle.pi(g, t) {
        Err(e) => ClaimVerdict::inconclusive(claim, claimed, &e),
        Ok(r) => {
            let witness = Witness::exact(g, NumberQuery::Targets(t), &r);
            let computed = Some(ClaimValue::int(r.value));
            if rel.holds(r.value) {
                ClaimVerdict::new(claim, claimed, computed, Verdict::Confirmed)
                    .with_witness(witness)
            } else {
                ClaimVerdict::refuted(claim, claimed, computed, witness)
            }
        }
    }
}

/// `pi^(n-1) + 1 = pi^n`.
pub fn check_cover_identity(oracle: &Oracle, g: &PricedGraph) -> ClaimVerdict {
    let n = g.n();
    let claim = "Thm6";
    if n < 2 {
        return ClaimVerdict::new(claim, None, None, Verdict::Inconclusive)
            .with_note("needs at least two vertices");
    }
    let pair = oracle
        .pi(g, n - 1)
        .and_then(|lo| oracle.pi(g, n).map(|hi| (lo, hi)));
    let (lo, hi) = match pair {
        Ok(p) => p,
        Err(e) => return ClaimVerdict::inconclusive(claim, None, &e),
    };
    let claimed = Some(ClaimValue::int(lo.value + 1));
    let computed = Some(ClaimValue::int(hi.value));
    let witness = Witness::AllOf {
        parts: vec![
            Witness::exact(g, NumberQuery::Targets(n - 1), &lo),
            Witness::exact(g, NumberQuery::Targets(n), &hi),
        ],
    };
    if lo.value + 1 == hi.value {
        ClaimVerdict::new(claim, claimed, computed, Verdict::Confirmed).with_witness(witness)
    } else {
        ClaimVerdict::refuted(claim, claimed, computed, witness)
    }
}

/// Whether some single-vertex stack of `gamma_W - 1` pebbles fails `w`.
///
/// For positive `w` a failing stack is claimed to always exist. For other
/// `w` it is claimed that this can break down; there a missing stack
/// confirms the remark and a found one is inconclusive.
pub fn check_simple_cover(oracle: &Oracle, g: &PricedGraph, w: &WeightFunction) -> ClaimVerdict {
    let positive = w.is_positive();
    let claim = if positive {
        "Thm24-simple"
    } else {
        "Thm24-nonpositive"
    };
    let claim = format!("{claim}[w={}]", join(w.weights()));
    let claimed = Some(ClaimValue::Text(if positive {
        "a simple configuration of size gamma - 1 is unsolvable".into()
    } else {
        "does not hold for some non-positive weight function".into()
    }));
    let run = || -> Result<ClaimVerdict> {
        let gamma = oracle.gamma(g, w)?;
        if gamma.value == 0 {
            return Ok(ClaimVerdict::new(
                claim.clone(),
                claimed.clone(),
                Some(ClaimValue::int(0)),
                Verdict::Inconclusive,
            )
            .with_note("zero weight function, nothing to cover"));
        }
        let meter = Meter::new(oracle.budget());
        let solver = Solver::new(g);
        let size = gamma.value - 1;
        let spec = Spec::Weights(w.clone());
        let mut failing = None;
        for v in 0..g.n() {
            let stack = Configuration::stack(g.n(), v, size);
            if !solver.reaches(&stack, &spec, &meter)? {
                failing = Some(stack);
                break;
            }
        }
        let bound = formulas::simple_config_bound(&solver, w, &meter)?;
        let computed = Some(ClaimValue::named([
            ("gamma", ClaimValue::int(gamma.value)),
            ("simple-bound", ClaimValue::int(bound)),
        ]));
        let exact = Witness::exact(g, NumberQuery::Weights(w.clone()), &gamma);
        Ok(match (failing, positive) {
            (Some(config), true) => {
                ClaimVerdict::new(claim.clone(), claimed.clone(), computed, Verdict::Confirmed)
                    .with_witness(Witness::Unsolvable {
                        graph: g.to_file(),
                        config,
                        target: spec,
                    })
            }
            (None, true) => ClaimVerdict::refuted(
                claim.clone(),
                claimed.clone(),
                computed,
                Witness::AllOf {
                    parts: vec![
                        exact,
                        Witness::SimpleStacks {
                            graph: g.to_file(),
                            weights: w.clone(),
                            size,
                        },
                    ],
                },
            ),
            (Some(config), false) => ClaimVerdict::new(
                claim.clone(),
                claimed.clone(),
                computed,
                Verdict::Inconclusive,
            )
            .with_witness(Witness::Unsolvable {
                graph: g.to_file(),
                config,
                target: spec,
            })
            .with_note("simple property holds for this weight function"),
            (None, false) => {
                ClaimVerdict::new(claim.clone(), claimed.clone(), computed, Verdict::Confirmed)
                    .with_witness(Witness::AllOf {
                        parts: vec![
                            exact,
                            Witness::SimpleStacks {
                                graph: g.to_file(),
                                weights: w.clone(),
                                size,
                            },
                        ],
                    })
                    .with_note("no simple configuration of size gamma - 1 fails")
            }
        })
    };
    run().unwrap_or_else(|e| ClaimVerdict::inconclusive(claim.clone(), claimed.clone(), &e))
}

/// Scan the full critical set for a member of the conjectured shape.
pub fn check_critical_shape(oracle: &Oracle, g: &PricedGraph, t: usize) -> ClaimVerdict {
    let claim = claim_id("Conj25-shape", t);
    let claimed = Some(ClaimValue::Text(
        "some critical configuration has every count in {0, p-1} but one".into(),
    ));
    let set = match oracle.critical(g, t) {
        Ok(s) => s,
        Err(e) => return ClaimVerdict::inconclusive(claim, claimed, &e),
    };
    let total = set.members.len();
    let matching = set
        .members
        .iter()
        .filter(|m| match_shape(g, &m.config).is_some())
        .count();
    let computed = Some(ClaimValue::named([
        ("critical", ClaimValue::int(total)),
        ("matching", ClaimValue::int(matching)),
        ("pi", ClaimValue::int(set.pi)),
    ]));
    let found = set
        .members
        .iter()
        .find_map(|m| match_shape(g, &m.config).map(|s| (m, s)));
    match found {
        Some((m, shape)) => ClaimVerdict::new(claim, claimed, computed, Verdict::Confirmed)
            .with_witness(Witness::Shape {
                graph: g.to_file(),
                t,
                pi: set.pi,
                config: m.config.clone(),
                target: m.target.clone(),
                shape,
            }),
        None => ClaimVerdict::refuted(
            claim,
            claimed,
            computed,
            Witness::CriticalSet {
                graph: g.to_file(),
                t,
                pi: set.pi,
                members: set.members.iter().map(|m| m.config.clone()).collect(),
            },
        ),
    }
}

fn monotone(oracle: &Oracle, g: &PricedGraph, ts: &[usize]) -> ClaimVerdict {
    let claim = "pi-monotone";
    let values: Result<Vec<NumberResult>> = ts.iter().map(|&t| oracle.pi(g, t)).collect();
    let values = match values {
        Ok(v) => v,
        Err(e) => return ClaimVerdict::inconclusive(claim, None, &e),
    };
    let computed = Some(ClaimValue::Series(
        values
            .iter()
            .map(|r| Rational::of(r.value, 1))
            .collect::<Result<_>>()
            .unwrap_or_default(),
    ));
    let claimed = Some(ClaimValue::Text("non-decreasing in t".into()));
    let drop = (1..values.len()).find(|&i| values[i].value < values[i - 1].value);
    match drop {
        None => ClaimVerdict::new(claim, claimed, computed, Verdict::Confirmed),
        Some(i) => ClaimVerdict::refuted(
            claim,
            claimed,
            computed,
            Witness::AllOf {
                parts: vec![
                    Witness::exact(g, NumberQuery::Targets(ts[i - 1]), &values[i - 1]),
                    Witness::exact(g, NumberQuery::Targets(ts[i]), &values[i]),
                ],
            },
        ),
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

type Task<'a> = Box<dyn Fn() -> ClaimVerdict + Send + Sync + 'a>;

/// Every applicable claim for one graph and the `t` values in `t_range`
/// (clamped to `1..=n`), in a fixed order. Checks run concurrently and
/// share the oracle's cache.
pub fn audit_graph(
    oracle: &Oracle,
    g: &PricedGraph,
    t_range: RangeInclusive<usize>,
) -> Vec<ClaimVerdict> {
    let n = g.n();
    let d = g.diameter();
    let ts: Vec<usize> = t_range.filter(|&t| (1..=n).contains(&t)).collect();
    let standard = g.is_standard();
    let mut tasks: Vec<Task<'_>> = Vec::new();
    let relation = |claim: String, t: usize, rel: Relation| -> Task<'_> {
        Box::new(move || compare(oracle, g, claim.clone(), t, rel))
    };

    for &t in &ts {
        let spread = (t < n)
            .then(|| formulas::lower_bound_spread(g, t).ok())
            .flatten();
        let upper = formulas::upper_bound(g, t).ok();
        if let Some(lo) = spread {
            tasks.push(relation(
                claim_id("Thm8-lower", t),
                t,
                Relation::Below(lo.into()),
            ));
        }
        if let Ok(stack) = formulas::lower_bound_stack(g, t) {
            tasks.push(relation(
                claim_id("Thm9-lower", t),
                t,
                Relation::Below(stack.value.into()),
            ));
            if t > d {
                tasks.push(relation(
                    claim_id("Thm9-lower-literal", t),
                    t,
                    Relation::Below(stack.literal),
                ));
            }
        }
        if let Some(hi) = upper {
            tasks.push(relation(
                claim_id("Thm10-upper", t),
                t,
                Relation::Above(hi.into()),
            ));
        }
        if let (Some(lo), Some(hi)) = (spread, upper) {
            tasks.push(relation(
                claim_id("bounds-sandwich", t),
                t,
                Relation::Between(lo.into(), hi.into()),
            ));
        }
        if t == 1 && standard {
            if let Ok((lo, hi)) = formulas::classic_bounds(n, d) {
                tasks.push(relation(
                    claim_id("Cor11", t),
                    t,
                    Relation::Between(lo.into(), hi.into()),
                ));
            }
        }
        if let Ok(v) = formulas::pi_complete(g, t) {
            tasks.push(relation(
                claim_id("Thm12", t),
                t,
                Relation::Equal(v.value.into()),
            ));
            if standard {
                if let Ok(v) = formulas::complete_limit_argument_value(n, t) {
                    tasks.push(relation(
                        claim_id("Thm18-proof-formula", t),
                        t,
                        Relation::Equal(v.into()),
                    ));
                }
            }
        }
        if let Ok(v) = formulas::pi_path(g, t) {
            tasks.push(relation(
                claim_id("Thm13", t),
                t,
                Relation::Equal(v.value.into()),
            ));
            if t < n {
                if let Ok(v) = formulas::pi_path_literal_index(g, t) {
                    tasks.push(relation(
                        claim_id("Thm13-literal-index", t),
                        t,
                        Relation::Equal(v.into()),
                    ));
                }
            }
        }
        if g.star_center().is_some() && n >= 3 {
            let leaves = n - 1;
            let limit_argument = standard
                .then(|| formulas::star_limit_argument_value(leaves, t).ok())
                .flatten();
            match formulas::pi_star(g, t) {
                Ok(v) if t < leaves => {
                    tasks.push(relation(claim_id("Thm14", t), t, Relation::Equal(v.into())))
                }
                Ok(v) => {
                    let claim = claim_id("Thm14-t-eq-n", t);
                    tasks.push(Box::new(move || {
                        let mut verdict =
                            compare(oracle, g, claim.clone(), t, Relation::Equal(v.into()));
                        let mut claimed = vec![("thm14", ClaimValue::int(v))];
                        if let Some(s) = limit_argument {
                            claimed.push(("thm19", ClaimValue::int(s)));
                        }
                        verdict.paper_value = Some(ClaimValue::Named(
                            claimed
                                .into_iter()
                                .map(|(k, v)| (k.to_string(), v))
                                .collect(),
                        ));
                        verdict.note =
                            Some("verdict judges the thm14 value; thm19 has its own claim".into());
                        verdict
                    }));
                }
                Err(_) => {}
            }
            if let Some(s) = limit_argument.filter(|_| t <= leaves) {
                tasks.push(relation(claim_id("Thm19", t), t, Relation::Equal(s.into())));
            }
        }
        tasks.push(Box::new(move || check_critical_shape(oracle, g, t)));
    }

    if ts.contains(&n) {
        tasks.push(Box::new(move || check_cover_identity(oracle, g)));
        tasks.push(Box::new(move || {
            check_simple_cover(oracle, g, &WeightFunction::ones(n))
        }));
        if n >= 2 {
            let mut w = vec![1; n];
            w[0] = 0;
            tasks.push(Box::new(move || {
                check_simple_cover(oracle, g, &WeightFunction::new(w.clone()))
            }));
        }
    }
    if ts.len() >= 2 {
        let ts = ts.clone();
        tasks.push(Box::new(move || monotone(oracle, g, &ts)));
    }

    tasks.par_iter().map(|task| task()).collect()
}

/// Closed form the path constancy argument derives from `2^n - 2^(n-t)`.
pub fn path_constant_from_proof(t: usize) -> Result<Rational> {
    let p = |e: usize| -> Result<i64> {
        u32::try_from(e)
            .ok()
            .and_then(|e| 2i64.checked_pow(e))
            .ok_or(Error::Overflow("power"))
    };
    Rational::new(p(t + 1)? - 1, 2 * (p(t)? - 1))
}

/// The constant as displayed with the path constancy claim.
pub fn path_constant_displayed(t: usize) -> Result<Rational> {
    let p = |e: usize| -> Result<i64> {
        u32::try_from(e)
            .ok()
            .and_then(|e| 2i64.checked_pow(e))
            .ok_or(Error::Overflow("power"))
    };
    Rational::new(p(t + 2)? - 1, 2 * (p(t)? - 1))
}

fn series_witness(s: &RatioSeries) -> Option<Witness> {
    Some(Witness::Series {
        family: s.family?,
        entries: s.entries.clone(),
    })
}

fn limit_claim(
    claim: String,
    series: &RatioSeries,
    limit: Rational,
    tolerance: Rational,
) -> ClaimVerdict {
    let values = series.values();
    let verdict = limit_verdict(&values, Some(limit), tolerance);
    let mut v = ClaimVerdict::new(
        claim,
        Some(ClaimValue::Rational(limit)),
        Some(ClaimValue::Series(values)),
        verdict,
    );
    v.witness = series_witness(series);
    v.with_note("judged on a finite prefix only")
}

fn path_claims(oracle: &Oracle, t: usize, n_max: usize) -> Vec<ClaimVerdict> {
    let displayed = path_constant_displayed(t).ok();
    let series = match alpha_sequence(oracle, Family::Path, t, n_max) {
        Ok(s) => s,
        Err(e) => {
            return vec![
                ClaimVerdict::inconclusive(claim_id("Thm17-constancy", t), None, &e),
                ClaimVerdict::inconclusive(
                    claim_id("Thm17-constant", t),
                    displayed.map(ClaimValue::Rational),
                    &e,
                ),
            ]
        }
    };
    let witness = series_witness(&series);
    let values = series.values();
    let computed = Some(ClaimValue::Series(values.clone()));
    let claimed = Some(ClaimValue::Text("constant".into()));
    let constancy_claim = claim_id("Thm17-constancy", t);
    let constancy = match (values.len() >= 2, series.is_constant(), witness.clone()) {
        (false, _, _) | (_, _, None) => {
            ClaimVerdict::new(constancy_claim, claimed, computed, Verdict::Inconclusive)
                .with_note("fewer than two family members in range")
        }
        (true, true, Some(w)) => {
            ClaimVerdict::new(constancy_claim, claimed, computed, Verdict::Confirmed)
                .with_witness(w)
        }
        (true, false, Some(w)) => ClaimVerdict::refuted(constancy_claim, claimed, computed, w),
    };

    let constant_claim = claim_id("Thm17-constant", t);
    let from_proof = path_constant_from_proof(t).ok();
    let constant = match (displayed, values.first().copied(), witness) {
        (Some(paper_c), Some(first), Some(w)) if series.is_constant() => {
            let mut computed = vec![("oracle", ClaimValue::Rational(first))];
            if let Some(p) = from_proof {
                computed.push(("from-proof-formula", ClaimValue::Rational(p)));
            }
            let computed = Some(ClaimValue::Named(
                computed
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect(),
            ));
            let claimed = Some(ClaimValue::Rational(paper_c));
            if first == paper_c {
                ClaimVerdict::new(constant_claim, claimed, computed, Verdict::Confirmed)
                    .with_witness(w)
            } else {
                ClaimVerdict::refuted(constant_claim, claimed, computed, w)
            }
        }
        _ => ClaimVerdict::new(
            constant_claim,
            displayed.map(ClaimValue::Rational),
            None,
            Verdict::Inconclusive,
        )
        .with_note("series empty or not constant"),
    };
    vec![constancy, constant]
}

/// Family-level claims: the ratio sequences for each `t` in `t_range`
/// (members up to `n_max`) and the estimate of their limits across `t`,
/// followed by [`audit_graph`] on member `n`.
pub fn audit_family(
    oracle: &Oracle,
    family: Family,
    n: usize,
    t_range: RangeInclusive<usize>,
    n_max: usize,
    tolerance: Rational,
) -> Result<Vec<ClaimVerdict>> {
    let g = family.member(n)?;
    let mut out = audit_graph(oracle, &g, t_range.clone());
    let ts: Vec<usize> = t_range
        .filter(|&t| t >= 1 && family.first_member(t) < n_max)
        .collect();
    let two = Rational::integer(2);
    let one = Rational::integer(1);

    let per_t: Vec<(Vec<ClaimVerdict>, Option<RatioSeries>)> = ts
        .par_iter()
        .map(|&t| {
            let mut claims = Vec::new();
            let alpha = alpha_sequence(oracle, family, t, n_max);
            match family {
                Family::Path => claims.extend(path_claims(oracle, t, n_max)),
                Family::Complete => {
                    match &alpha {
                        Ok(s) => {
                            claims.push(limit_claim(claim_id("Thm18-limit", t), s, two, tolerance))
                        }
                        Err(e) => claims.push(ClaimVerdict::inconclusive(
                            claim_id("Thm18-limit", t),
                            None,
                            e,
                        )),
                    }
                    let claim = claim_id("Thm18-limit-proof-formula", t);
                    match alpha_from_formula(family, t, n_max, ValueSource::ProofFormula, |n, t| {
                        proof_formula_value(family, n, t)
                    }) {
                        Ok(s) => claims.push(limit_claim(claim, &s, two, tolerance)),
                        Err(e) => claims.push(ClaimVerdict::inconclusive(claim, None, &e)),
                    }
                }
                Family::Star => match &alpha {
                    Ok(s) => {
                        claims.push(limit_claim(claim_id("Thm19-limit", t), s, one, tolerance))
                    }
                    Err(e) => claims.push(ClaimVerdict::inconclusive(
                        claim_id("Thm19-limit", t),
                        None,
                        e,
                    )),
                },
            }
            (claims, alpha.ok())
        })
        .collect();

    let mut alphas = Vec::new();
    for (claims, alpha) in per_t {
        out.extend(claims);
        alphas.extend(alpha);
    }
    if !alphas.is_empty() {
        let beta = beta_estimate(&alphas);
        let limit = match family {
            Family::Path | Family::Complete => two,
            Family::Star => one,
        };
        out.push(limit_claim(
            format!("Beta-{family}"),
            &beta,
            limit,
            tolerance,
        ));
    }
    Ok(out)
}
