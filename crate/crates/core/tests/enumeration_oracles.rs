//! Canonical augmentation against filtering every labelled graph.

use std::collections::{HashMap, HashSet};

use homthresh::canon::{canonical_form, CanonicalCode};
use homthresh::harness::{enumerate_graphs, DegreeBound, EnumerationConstraints};
use homthresh::structure::{enumerate_cycles, odd_girth};
use homthresh::{make_graph, Graph};
use num_rational::BigRational;

/// One representative per isomorphism class, from all `2^(n choose 2)` labelled graphs.
fn all_classes(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen: HashMap<CanonicalCode, Graph> = HashMap::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = make_graph(n, &edges).unwrap();
        seen.entry(canonical_form(&g)).or_insert(g);
    }
    seen.into_values().collect()
}

fn has_c5(g: &Graph) -> bool {
    !enumerate_cycles(g, 5).is_empty()
}

fn codes(gs: &[Graph]) -> HashSet<CanonicalCode> {
    gs.iter().map(canonical_form).collect()
}

fn compare(classes: &[Graph], c: &EnumerationConstraints, keep: impl Fn(&Graph) -> bool) {
    let got = enumerate_graphs(c).unwrap();
    let got_codes = codes(&got);
    assert_eq!(got_codes.len(), got.len(), "isomorphic duplicates for {c:?}");
    let want: Vec<Graph> = classes.iter().filter(|g| keep(g)).cloned().collect();
    assert_eq!(got_codes, codes(&want), "{c:?}");
}

#[test]
fn enumeration_matches_all_graphs_filter() {
    for n in 1..=7 {
        let classes = all_classes(n);
        let base = EnumerationConstraints::order(n);
        compare(&classes, &base, |_| true);
        compare(&classes, &EnumerationConstraints { connected: true, ..base.clone() }, Graph::is_connected);
        for og in [3, 5, 7] {
            compare(
                &classes,
                &EnumerationConstraints { odd_girth_at_least: Some(og), ..base.clone() },
                |g| odd_girth(g).at_least(og),
            );
            compare(
                &classes,
                &EnumerationConstraints { connected: true, odd_girth_at_least: Some(og), ..base.clone() },
                |g| g.is_connected() && odd_girth(g).at_least(og),
            );
        }
        compare(&classes, &EnumerationConstraints { forbid_c5: true, ..base.clone() }, |g| !has_c5(g));
        let fifth = DegreeBound::above(BigRational::new(1.into(), 5.into()), BigRational::from_integer(0.into()));
        compare(
            &classes,
            &EnumerationConstraints {
                connected: true,
                odd_girth_at_least: Some(7),
                min_degree: fifth,
                ..base.clone()
            },
            |g| g.is_connected() && odd_girth(g).at_least(7) && 5 * g.min_degree().unwrap() > n,
        );
        let sixth = DegreeBound::above(BigRational::new(1.into(), 6.into()), BigRational::from_integer(1.into()));
        compare(
            &classes,
            &EnumerationConstraints { forbid_c5: true, min_degree: sixth, ..base.clone() },
            |g| !has_c5(g) && 6 * g.min_degree().unwrap() > n + 6,
        );
    }
}

#[test]
fn order_ranges_concatenate() {
    let c = EnumerationConstraints { connected: true, ..EnumerationConstraints::up_to(5) };
    let orders: Vec<usize> = enumerate_graphs(&c).unwrap().iter().map(Graph::order).collect();
    // connected graphs on 1..=5 vertices: 1, 1, 2, 6, 21
    assert_eq!(orders.len(), 31);
    assert!(orders.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn c7_and_connected_bipartite_order_seven() {
    let c = EnumerationConstraints { connected: true, odd_girth_at_least: Some(7), ..EnumerationConstraints::order(7) };
    let got = enumerate_graphs(&c).unwrap();
    assert!(codes(&got).contains(&canonical_form(&homthresh::generators::cycle(7).unwrap())));
    // the connected bipartite graphs of order 7 number 44; C7 is the only other class
    assert_eq!(got.iter().filter(|g| g.is_bipartite()).count(), 44);
    assert_eq!(got.len(), 45);
}
