//! Ratio series `pi^(t+1) / pi^t`: along `t` on one graph (rho), along a
//! family for fixed `t` (alpha), and the last alpha terms across `t`
//! (beta estimate). All values are exact rationals.

use serde::{Deserialize, Serialize};

use super::{Oracle, Verdict};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::formulas;
use crate::graph::PricedGraph;
use crate::ratio::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Rho,
    Alpha,
    BetaEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueSource {
    Oracle,
    /// The audited closed form for the family.
    Formula,
    /// The value a limit argument starts from, taken as printed there.
    ProofFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    /// `t` for rho and beta estimates, the member index `n` for alpha.
    pub index: usize,
    /// Family member the ratio was taken on, when there is a family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<usize>,
    /// `t` the ratio was taken at (`pi^(t+1) / pi^t`).
    pub t: usize,
    pub numerator: u64,
    pub denominator: u64,
    pub value: Rational,
    pub source: ValueSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioSeries {
    pub kind: SeriesKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub entries: Vec<SeriesEntry>,
}

impl RatioSeries {
    pub fn values(&self) -> Vec<Rational> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].value == w[1].value)
    }
}

fn entry(
    index: usize,
    member: Option<usize>,
    t: usize,
    below: u64,
    above: u64,
    source: ValueSource,
) -> Result<SeriesEntry> {
    Ok(SeriesEntry {
        index,
        member,
        t,
        numerator: above,
        denominator: below,
        value: Rational::of(above, below)?,
        source,
    })
}

/// `(pi^(i+1) / pi^i)` for `i = 1..n-1`, from the oracle.
pub fn rho_series(oracle: &Oracle, g: &PricedGraph) -> Result<RatioSeries> {
    let pis = (1..=g.n())
        .map(|t| oracle.pi(g, t).map(|r| r.value))
        .collect::<Result<Vec<u64>>>()?;
    let entries = pis
        .windows(2)
        .enumerate()
        .map(|(i, w)| entry(i + 1, None, i + 1, w[0], w[1], ValueSource::Oracle))
        .collect::<Result<_>>()?;
    Ok(RatioSeries {
        kind: SeriesKind::Rho,
        family: None,
        t: None,
        entries,
    })
}

/// Standard-price closed-form value for a family member, covering `t` up
/// to the member's vertex count (the last case via the cover identity).
pub fn family_formula_value(family: Family, n: usize, t: usize) -> Result<u64> {
    let g = family.member(n)?;
    match family {
        Family::Path => Ok(formulas::pi_path(&g, t)?.value),
        Family::Complete => Ok(formulas::pi_complete(&g, t)?.value),
        Family::Star if t <= n => formulas::pi_star(&g, t),
        Family::Star if t == n + 1 => formulas::cover_from_penultimate(formulas::pi_star(&g, n)?),
        Family::Star => Err(Error::Domain(format!("t = {t} exceeds S_{n}"))),
    }
}

/// `rho_t(F_n)` for members `n = first..=n_max`. Values come from the
/// oracle; if the oracle exceeds its budget for a member, that member's
/// entry falls back to the closed form and is marked as such.
pub fn alpha_sequence(
    oracle: &Oracle,
    family: Family,
    t: usize,
    n_max: usize,
) -> Result<RatioSeries> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let mut entries = Vec::new();
    for n in family.first_member(t)..=n_max {
        let g = family.member(n)?;
        let oracle_pair = oracle
            .pi(&g, t)
            .and_then(|lo| oracle.pi(&g, t + 1).map(|hi| (lo.value, hi.value)));
        let (lo, hi, source) = match oracle_pair {
            Ok((lo, hi)) => (lo, hi, ValueSource::Oracle),
            Err(Error::ResourceLimit(_)) => (
                family_formula_value(family, n, t)?,
                family_formula_value(family, n, t + 1)?,
                ValueSource::Formula,
            ),
            Err(e) => return Err(e),
        };
        entries.push(entry(n, Some(n), t, lo, hi, source)?);
    }
    Ok(RatioSeries {
        kind: SeriesKind::Alpha,
        family: Some(family),
        t: Some(t),
        entries,
    })
}

/// Alpha sequence computed from an arbitrary closed form `value(n, t)`.
pub fn alpha_from_formula(
    family: Family,
    t: usize,
    n_max: usize,
    source: ValueSource,
    value: impl Fn(usize, usize) -> Result<u64>,
) -> Result<RatioSeries> {
    let entries = (family.first_member(t)..=n_max)
        .map(|n| entry(n, Some(n), t, value(n, t)?, value(n, t + 1)?, source))
        .collect::<Result<_>>()?;
    Ok(RatioSeries {
        kind: SeriesKind::Alpha,
        family: Some(family),
        t: Some(t),
        entries,
    })
}

/// Last term of each alpha sequence, one per `t`: the desk-scale stand-in
/// for the limits the beta sequence is made of.
pub fn beta_estimate(alphas: &[RatioSeries]) -> RatioSeries {
    let entries = alphas
        .iter()
        .filter_map(|a| {
            let last = a.entries.last()?;
            Some(SeriesEntry {
                index: a.t.unwrap_or(last.t),
                ..last.clone()
            })
        })
        .collect();
    RatioSeries {
        kind: SeriesKind::BetaEstimate,
        family: alphas.first().and_then(|a| a.family),
        t: None,
        entries,
    }
}

/// Desk-scale judgement of a claimed limit from a finite prefix.
///
/// * confirmed-at-scale: at least two terms, distances to the claim
///   strictly shrinking, last distance within `tolerance` (or the series is
///   constant at the claim);
/// * refuted-at-scale: at least two terms and the series is monotone with
///   its last term strictly on the far side of the claim, so continuing the
///   same trend can never reach it (a constant series elsewhere included);
/// * inconclusive otherwise, or when there is no claim.
pub fn limit_verdict(values: &[Rational], claim: Option<Rational>, tolerance: Rational) -> Verdict {
    let Some(claim) = claim else {
        return Verdict::Inconclusive;
    };
    if values.len() < 2 {
        return Verdict::Inconclusive;
    }
    let last = *values.last().expect("checked length");
    let non_decreasing = values.windows(2).all(|w| w[0] <= w[1]);
    let non_increasing = values.windows(2).all(|w| w[0] >= w[1]);
    if (non_decreasing && last > claim) || (non_increasing && last < claim) {
        return Verdict::RefutedAtScale;
    }
    if values.iter().all(|v| *v == claim) {
        return Verdict::ConfirmedAtScale;
    }
    let distances: Vec<Rational> = values.iter().map(|v| v.distance(&claim)).collect();
    let shrinking = distances.windows(2).all(|w| w[1] < w[0]);
    if shrinking && last.distance(&claim) <= tolerance {
        return Verdict::ConfirmedAtScale;
    }
    Verdict::Inconclusive
}
