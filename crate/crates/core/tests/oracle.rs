mod common;

use pebblekit::exact::{critical_configurations, pebbling_number, weighted_cover_number};
use pebblekit::families::Family;
use pebblekit::formulas;
use pebblekit::{Meter, PricedGraph, WeightFunction};

fn small_graphs() -> Vec<PricedGraph> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for edges in common::connected_graphs(n) {
            let g = PricedGraph::standard(n, &edges).unwrap();
            out.push(g.clone());
            // keep brute force affordable on four vertices
            let varied: Vec<u64> = match n {
                4 => vec![3, 2, 2, 2],
                _ => (0..n as u64).map(|v| 2 + v % 3).collect(),
            };
            if n > 1 {
                out.push(g.with_prices(&varied).unwrap());
            }
        }
    }
    out
}

#[test]
fn exact_matches_brute_force() {
    for g in small_graphs() {
        for t in 1..=g.n() {
            let fast = pebbling_number(&g, t, &Meter::unlimited()).unwrap().value;
            assert_eq!(
                fast,
                common::pi(&g, t),
                "{:?} {:?} t={t}",
                g.edges(),
                g.prices()
            );
        }
    }
}

#[test]
fn weighted_cover_matches_brute_force() {
    for g in small_graphs().into_iter().filter(|g| g.n() <= 3) {
        let n = g.n();
        for code in 0..3u64.pow(n as u32) {
            let w: Vec<u64> = (0..n).map(|i| code / 3u64.pow(i as u32) % 3).collect();
            let fast =
                weighted_cover_number(&g, &WeightFunction::new(w.clone()), &Meter::unlimited())
                    .unwrap()
                    .value;
            assert_eq!(
                fast,
                common::gamma(&g, &w),
                "{:?} {:?} w={w:?}",
                g.edges(),
                g.prices()
            );
        }
    }
}

#[test]
fn critical_sets_match_brute_force() {
    for g in [
        common::path(3),
        common::complete(3),
        common::star(3),
        common::cycle(4),
    ] {
        for t in 1..=g.n() {
            let set = critical_configurations(&g, t, &Meter::unlimited()).unwrap();
            let got: std::collections::BTreeSet<Vec<u64>> = set
                .members
                .iter()
                .map(|m| m.config.counts().to_vec())
                .collect();
            assert_eq!(got, common::critical(&g, t));
            assert_eq!(got.len(), set.members.len());
        }
    }
}

#[test]
fn standard_closed_forms_match_brute_force() {
    for n in 2..=4 {
        let p = common::path(n);
        let k = common::complete(n);
        for t in 1..=n {
            assert_eq!(formulas::pi_path(&p, t).unwrap().value, common::pi(&p, t));
            assert_eq!(
                formulas::pi_complete(&k, t).unwrap().value,
                common::pi(&k, t)
            );
        }
    }
    for leaves in 2..=3 {
        let s = common::star(leaves);
        for t in 1..leaves {
            assert_eq!(formulas::pi_star(&s, t).unwrap(), common::pi(&s, t));
        }
    }
}

#[test]
fn priced_closed_forms_against_brute_force() {
    // complete graphs and paths: the closed forms hold for arbitrary prices
    for prices in [[2, 3, 4], [5, 2, 3], [3, 3, 2]] {
        let k = Family::Complete
            .member_with_prices(3, Some(&prices))
            .unwrap();
        let p = Family::Path.member_with_prices(3, Some(&prices)).unwrap();
        for t in 1..=3 {
            assert_eq!(
                formulas::pi_complete(&k, t).unwrap().value,
                common::pi(&k, t),
                "K3 {prices:?} t={t}"
            );
            assert_eq!(
                formulas::pi_path(&p, t).unwrap().value,
                common::pi(&p, t),
                "P3 {prices:?} t={t}"
            );
        }
    }
}
