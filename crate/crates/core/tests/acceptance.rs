//! Acceptance criteria, one printed line each.
//!
//! Tolerances are pinned: every numeric comparison is exact rational arithmetic
//! (tolerance zero), and each criterion carries a wall-clock limit.

use std::time::{Duration, Instant};

use homthresh::canon::{canonical_form, is_isomorphic};
use homthresh::generators::{
    andrasfai, complement_power_cycle, grotzsch, grotzsch_weights, subdivided_k4, subdivided_k4_weights,
};
use homthresh::harness::{
    campaign_forbidden_structures, campaign_theorem_main, enumerate_graphs, CampaignConfig,
    EnumerationConstraints,
};
use homthresh::homomorphism::{find_hom, find_hom_with, is_core, HomOptions, HomSearch};
use homthresh::optimizer::{optimal_blowup_weights, realize_weights, RationalWeights};
use homthresh::structure::{enumerate_cycles, half_set, is_maximal_free, odd_girth, OddGirth};
use homthresh::{make_graph, Graph, VertexSet};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOLERANCE: i64 = 0;

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Prints the criterion line and fails the test when it does not hold.
fn report(id: &str, what: &str, failures: &[String], start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed <= limit;
    println!(
        "criterion {id:<3} {} {what} ({:.2?} of {:?}, tolerance {TOLERANCE}){}",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit,
        if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
    );
    assert!(failures.is_empty(), "criterion {id}: {failures:?}");
    assert!(elapsed <= limit, "criterion {id}: took {elapsed:?}");
}

#[test]
fn criterion_1_family_fidelity() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for ell in 2..=4 {
        for k in 1..=8 {
            let f = andrasfai(k, ell).unwrap();
            let n = (2 * ell - 1) * (k - 1) + 2;
            if f.order() != n {
                bad.push(format!("|F_{k}^{ell}| = {}", f.order()));
            }
            if k >= 2 {
                if !f.is_regular(k) {
                    bad.push(format!("F_{k}^{ell} not {k}-regular"));
                }
                if odd_girth(&f) != OddGirth::Cycle(2 * ell + 1) {
                    bad.push(format!("F_{k}^{ell} odd girth {:?}", odd_girth(&f)));
                }
            }
            if !is_maximal_free(&f, ell) {
                bad.push(format!("F_{k}^{ell} not maximal"));
            }
        }
    }
    for k in 2..=8 {
        // corrected form: complement of the (ℓ−1)(k−1)-th power
        let f = andrasfai(k, 3).unwrap();
        if !is_isomorphic(&f, &complement_power_cycle(f.order(), 2 * (k - 1)).unwrap()) {
            bad.push(format!("F_{k} vs complement of the {}-th power", 2 * (k - 1)));
        }
    }
    report("1", "family fidelity: order, regularity, odd girth, maximality (l = 2, 3, 4; k <= 8)", &bad, start, Duration::from_secs(10));
}

#[test]
fn criterion_1_complement_of_square_of_cycle() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 2..=8 {
        let f = andrasfai(k, 3).unwrap();
        // the clause as stated: complement of the (ℓ−1)-th power, ℓ = 3
        if !is_isomorphic(&f, &complement_power_cycle(f.order(), 2).unwrap()) {
            bad.push(format!("F_{k} is not the complement of the square of C_{}", f.order()));
        }
    }
    report("1b", "F_k isomorphic to the complement of the square of its cycle (k <= 8)", &bad, start, Duration::from_secs(10));
}

#[test]
fn criterion_2_reference_numbers() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let g = grotzsch();
    let lp = optimal_blowup_weights(&g).unwrap();
    if lp.t < r(10, 29) {
        bad.push(format!("Grötzsch LP value {} < 10/29", lp.t));
    }
    if !lp.certify(&g) {
        bad.push("Grötzsch LP certificate rejected".into());
    }
    let w = RationalWeights::from_integers(&grotzsch_weights()).unwrap();
    let real = realize_weights(&g, &w, 29).unwrap();
    if real.min_degree != 10 || real.ratio != r(10, 29) {
        bad.push(format!("Grötzsch blow-up at n = 29 has δ = {}", real.min_degree));
    }
    let t4 = subdivided_k4(4).unwrap();
    let w4 = RationalWeights::from_integers(&subdivided_k4_weights(4).unwrap()).unwrap();
    let t_star = realize_weights(&t4, &w4, 20).unwrap();
    if t_star.ratio != r(3, 20) || t_star.ratio <= r(1, 7) {
        bad.push(format!("T*_4 ratio {}", t_star.ratio));
    }
    for k in 1..=5 {
        let f = andrasfai(k, 3).unwrap();
        let n = f.order();
        let bal = realize_weights(&f, &RationalWeights::uniform(n).unwrap(), n).unwrap();
        let want = if k == 1 { r(1, 2) } else { r(k as i64, 5 * k as i64 - 3) };
        if bal.ratio != want {
            bad.push(format!("F_{k} balanced ratio {} != {want}", bal.ratio));
        }
    }
    report("2", "Grötzsch 10/29 at n = 29, T*_4 ratio 3/20 > 1/7, F_k ratio k/(5k-3)", &bad, start, Duration::from_secs(10));
}

#[test]
fn criterion_3_hom_minimality() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 2..=4 {
        let f = andrasfai(k, 3).unwrap();
        if !is_core(&f) {
            bad.push(format!("F_{k} is not a core"));
        }
        match find_hom(&f, &andrasfai(k - 1, 3).unwrap(), None) {
            HomSearch::Absent { .. } => {}
            other => bad.push(format!("F_{k} -> F_{}: {other:?}", k - 1)),
        }
    }
    report("3", "F_2, F_3, F_4 are cores and F_k -/-> F_(k-1) exhaustively", &bad, start, Duration::from_secs(300));
}

#[test]
fn criterion_4_theorem_at_desk_scale() {
    let start = Instant::now();
    let rep = campaign_theorem_main(&CampaignConfig::default()).unwrap();
    let mut bad: Vec<String> = rep.violations.iter().map(|v| format!("{} on {}", v.statement, v.graph6)).collect();
    if rep.instances == 0 {
        bad.push("empty corpus".into());
    }
    let what = format!("{} connected graphs, n <= 11, odd girth >= 7, δ > n/5 fold with verified homomorphisms", rep.instances);
    report("4", &what, &bad, start, Duration::from_secs(900));
}

#[test]
fn criterion_5_forbidden_structures() {
    let start = Instant::now();
    let rep = campaign_forbidden_structures(&CampaignConfig::default()).unwrap();
    let mut bad: Vec<String> = rep.violations.iter().map(|v| format!("{} on {}", v.statement, v.graph6)).collect();
    let blowups = rep.details["hosts_by_source"]["blowup"].as_u64().unwrap_or(0);
    if blowups < 200 {
        bad.push(format!("only {blowups} blow-ups"));
    }
    if rep.statements.len() != 6 || rep.statements.values().any(|s| s.checked == 0) {
        bad.push(format!("statements {:?}", rep.statements.keys().collect::<Vec<_>>()));
    }
    let what = format!("six structural statements on {} hosts ({blowups} blow-ups)", rep.instances);
    report("5", &what, &bad, start, Duration::from_secs(900));
}

#[test]
fn criterion_6_counterexample() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let t = subdivided_k4(4).unwrap();
    if !is_maximal_free(&t, 4) {
        bad.push("T_4 not maximal {C3, C5, C7}-free".into());
    }
    for k in 1..=5 {
        let res = find_hom_with(&t, &andrasfai(k, 4).unwrap(), HomOptions { budget: None, symmetry_breaking: true });
        if !res.is_absent() {
            bad.push(format!("T_4 -> F_{k}^4: {res:?}"));
        }
    }
    report("6", "T_4 maximal free, no homomorphism to F_k^4 for k <= 5 (exhausted searches)", &bad, start, Duration::from_secs(600));
}

fn brute_hom_exists(g: &Graph, h: &Graph) -> bool {
    let (n, m) = (g.order(), h.order());
    if n == 0 {
        return true;
    }
    if m == 0 {
        return false;
    }
    let edges = g.edges();
    let mut f = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| h.has_edge(f[u], f[v])) {
            return true;
        }
        let mut i = 0;
        while i < n {
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
    }
}

fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        make_graph(n, &e).unwrap()
    })
}

fn valid_half_set(h: &Graph, x: &VertexSet) -> bool {
    2 * x.len() >= h.order() && x.iter().all(|v| h.neighbours(v).any(|w| !x.contains(w)))
}

#[test]
fn criterion_7_oracle_suites() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let classes = |n: usize| {
        let mut v = vec![Graph::empty(0)];
        v.extend(enumerate_graphs(&EnumerationConstraints::up_to(n)).unwrap());
        v
    };
    // homomorphism search, every pair of classes
    let (gs, hs) = (classes(6), classes(5));
    let mut pairs = 0;
    for g in &gs {
        for h in &hs {
            pairs += 1;
            if find_hom(g, h, None).hom().is_some() != brute_hom_exists(g, h) {
                bad.push(format!("hom {g:?} -> {h:?}"));
            }
        }
    }
    // half sets: exhaustive labelled n <= 6, then 10^4 random n <= 30
    for n in 2..=6 {
        for g in labelled_graphs(n).filter(|g| !g.degrees().contains(&0)) {
            if !valid_half_set(&g, &half_set(&g).unwrap()) {
                bad.push(format!("half_set {g:?}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=30);
        let p = rng.gen_range(1.0..4.0) / n as f64;
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p.min(1.0)) {
                    e.push((u, v));
                }
            }
        }
        for v in 0..n {
            if !e.iter().any(|&(a, b)| a == v || b == v) {
                e.push((v, (v + 1) % n));
            }
        }
        let g = make_graph(n, &e).unwrap();
        if !valid_half_set(&g, &half_set(&g).unwrap()) {
            bad.push(format!("half_set random {g:?}"));
        }
    }
    // odd girth over every class of order <= 8
    for g in enumerate_graphs(&EnumerationConstraints::up_to(8)).unwrap() {
        let brute = (3..=g.order())
            .step_by(2)
            .find(|&l| !enumerate_cycles(&g, l).is_empty())
            .map_or(OddGirth::Bipartite, OddGirth::Cycle);
        if odd_girth(&g) != brute {
            bad.push(format!("odd girth {g:?}"));
        }
    }
    // enumeration against the all-graphs filter, n <= 7
    for n in 1..=7 {
        let mut codes: Vec<_> = labelled_graphs(n).map(|g| canonical_form(&g)).collect();
        codes.sort_unstable_by(|a, b| a.as_words().cmp(b.as_words()));
        codes.dedup();
        let mut got: Vec<_> = enumerate_graphs(&EnumerationConstraints::order(n))
            .unwrap()
            .iter()
            .map(canonical_form)
            .collect();
        got.sort_unstable_by(|a, b| a.as_words().cmp(b.as_words()));
        if got != codes {
            bad.push(format!("enumeration at n = {n}: {} vs {}", got.len(), codes.len()));
        }
    }
    let what = format!("oracle suites ({pairs} hom pairs, half sets, odd girth n <= 8, enumeration n <= 7)");
    report("7", &what, &bad, start, Duration::from_secs(1200));
}

#[test]
fn criterion_8_scope_note() {
    println!(
        "criterion 8   N/A  the threshold statement for all n is not desk-reproducible; criteria 1-4 cover its finite mechanisms"
    );
}
