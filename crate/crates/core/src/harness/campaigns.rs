//! The verification campaigns.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonical_form, is_isomorphic};
use crate::error::{Error, Result};
use crate::generators::{andrasfai, blow_up, cycle, subdivided_k4, subdivided_k4_weights, BlowupSpec};
use crate::graph::Graph;
use crate::homomorphism::{
    chromatic_number, find_hom_with, fold_to_andrasfai, is_core, verify_hom, FoldOptions, HomOptions,
    HomSearch,
};
use crate::io::to_graph6;
use crate::optimizer::{optimal_blowup_weights, ratio_string, realize_weights, Exact, RationalWeights};
use crate::structure::{
    check_common_neighbour_obs, check_induced_c6, check_seven_cycle_domination, check_twelve_cycle_lemma,
    check_two_seven_cycles_lemma, check_well_behaved_cycles, first_addable_edge, for_each_embedding,
    half_set, is_free, is_maximal_free, saturate, shortest_odd_cycle, triangular_edge_bound,
    two_seven_cycles_gadget, Verdict,
};

use super::enumerate::{enumerate_graphs, DegreeBound, EnumerationConstraints};
use super::report::{
    copy_neighbours, fk_neighbourhood_ok, has_short_odd_path, is_valid_half_set, on_common_seven_cycle,
    triangular_edges_at, triangular_neighbourhood, CampaignReport, ConsolidatedReport, Item, Witness,
};
use super::{CampaignConfig, DEFAULT_ORDER_LIMIT};

pub const CAMPAIGNS: [&str; 5] = [
    "theorem_main",
    "forbidden_structures",
    "fk_properties",
    "c5_triangle_free",
    "counterexample_t",
];

/// The structural statements, by report name.
pub const STRUCTURE_STATEMENTS: [&str; 6] = [
    "well-behaved-7-cycles",
    "seven-cycle-domination",
    "common-neighbour",
    "induced-c6",
    "two-seven-cycles",
    "twelve-cycle-diagonals",
];

pub fn run_campaign(name: &str, cfg: &CampaignConfig) -> Result<CampaignReport> {
    match name.replace('-', "_").as_str() {
        "theorem_main" => campaign_theorem_main(cfg),
        "forbidden_structures" => campaign_forbidden_structures(cfg),
        "fk_properties" => campaign_fk_properties(cfg),
        "c5_triangle_free" => campaign_c5_triangle_free(cfg),
        "counterexample_t" => campaign_counterexample_t(cfg),
        _ => Err(Error::Parameter(format!(
            "unknown campaign '{name}'; expected one of {}",
            CAMPAIGNS.join(", ")
        ))),
    }
}

pub fn campaign_all(cfg: &CampaignConfig) -> Result<ConsolidatedReport> {
    let start = Instant::now();
    let campaigns = CAMPAIGNS
        .iter()
        .map(|c| run_campaign(c, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConsolidatedReport {
        config: cfg.clone(),
        violations: campaigns.iter().map(|c| c.violations.len()).sum(),
        findings: campaigns.iter().map(|c| c.findings.len()).sum(),
        campaigns,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs a structural statement by its report name.
pub fn run_statement(name: &str, g: &Graph) -> Option<Verdict> {
    Some(match name {
        "well-behaved-7-cycles" => check_well_behaved_cycles(g, 7),
        "seven-cycle-domination" => check_seven_cycle_domination(g),
        "common-neighbour" => check_common_neighbour_obs(g),
        "induced-c6" => check_induced_c6(g),
        "two-seven-cycles" => check_two_seven_cycles_lemma(g),
        "twelve-cycle-diagonals" => check_twelve_cycle_lemma(g),
        _ => return None,
    })
}

/// Whole-graph invariants reported for `F_k`.
pub(crate) fn fk_invariant(g: &Graph, property: &str) -> Option<String> {
    Some(match property {
        "order" => g.order().to_string(),
        "regular-degree" => {
            let d = g.max_degree();
            if g.is_regular(d) {
                d.to_string()
            } else {
                "irregular".into()
            }
        }
        "maximal-free" => is_maximal_free(g, 3).to_string(),
        "three-colourable" => (chromatic_number(g).ok()? <= 3).to_string(),
        "core" => is_core(g).to_string(),
        _ => return None,
    })
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// `5δ > n` style test: `δ > n/(2ℓ−1)`.
fn above_threshold(g: &Graph, ell: usize) -> bool {
    g.order() > 0 && g.min_degree().unwrap_or(0) * (2 * ell - 1) > g.order()
}

fn finish(mut r: CampaignReport, start: Instant) -> CampaignReport {
    r.runtime_ms = start.elapsed().as_millis() as u64;
    r
}

fn corpus_constraints(cfg: &CampaignConfig) -> Result<EnumerationConstraints> {
    let limit = if cfg.allow_large { super::MAX_EXHAUSTIVE_ORDER } else { DEFAULT_ORDER_LIMIT };
    if cfg.n_max > limit {
        return Err(Error::TooLarge {
            order: cfg.n_max,
            bound: limit,
            hint: "orders 12 and 13 need allow_large; order 12 takes about half a minute and order 13 several minutes"
                .into(),
        });
    }
    if cfg.ell < 2 {
        return Err(Error::Parameter(format!("ell must be at least 2, got {}", cfg.ell)));
    }
    let slope = rat(1, 2 * cfg.ell as i64 - 1) + &cfg.epsilon.0;
    Ok(EnumerationConstraints {
        min_order: 1,
        max_order: cfg.n_max,
        connected: true,
        odd_girth_at_least: Some(2 * cfg.ell + 1),
        forbid_c5: false,
        min_degree: DegreeBound::above(slope, rat(0, 1)),
    })
}

/// Saturations of the exhaustive corpus, deduplicated, in generation order.
fn saturated_corpus(cfg: &CampaignConfig) -> Result<Vec<Graph>> {
    let graphs = enumerate_graphs(&corpus_constraints(cfg)?)?;
    let sat = graphs
        .par_iter()
        .map(|g| saturate(g, cfg.ell))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    Ok(sat.into_iter().filter(|g| seen.insert(canonical_form(g))).collect())
}

/// A seeded blow-up of some `F_k`, saturated.
struct Blowup {
    k: usize,
    sizes: Vec<usize>,
    graph: Graph,
}

/// Pseudorandom saturated blow-ups of `F_2..F_{k_max}` with `δ > n/5`, cycling
/// through the levels; a draw is retried a bounded number of times and then
/// counted as rejected.
fn sample_blowups(cfg: &CampaignConfig) -> Result<(Vec<Blowup>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut specs = Vec::new();
    let mut failed = 0;
    let levels: Vec<usize> = (2..=cfg.k_max.min(8)).collect();
    if !levels.is_empty() {
        for i in 0..cfg.blowup_count {
            let k = levels[i % levels.len()];
            let f = andrasfai(k, 3)?;
            let cap = (cfg.blowup_max_order / f.order()).max(1);
            let mut accepted = None;
            for _ in 0..1024 {
                // a random floor keeps the classes comparable, which the degree bound favours
                let lo = rng.gen_range(1..=cap);
                let sizes: Vec<usize> = (0..f.order()).map(|_| rng.gen_range(lo.div_ceil(2)..=lo)).collect();
                let spec = BlowupSpec::new(f.clone(), sizes)?;
                if spec.order() > cfg.blowup_max_order.max(f.order()) {
                    continue;
                }
                let g = blow_up(&spec)?;
                if above_threshold(&g, 3) {
                    accepted = Some((k, spec.sizes));
                    break;
                }
            }
            match accepted {
                Some(s) => specs.push(s),
                None => failed += 1,
            }
        }
    }
    let out = specs
        .into_par_iter()
        .map(|(k, sizes)| {
            let g = blow_up(&BlowupSpec::new(andrasfai(k, 3)?, sizes.clone())?)?;
            Ok(Blowup { k, sizes, graph: saturate(&g, 3)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((out, failed))
}

/// Every connected graph of odd girth at least `2ℓ+1` and `δ > (1/(2ℓ−1) + ε)n`
/// is saturated and folded onto the least possible `F_k^ℓ`.
pub fn campaign_theorem_main(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let start = Instant::now();
    let mut r = CampaignReport::new("theorem_main", cfg);
    let graphs = enumerate_graphs(&corpus_constraints(cfg)?)?;
    let opts = FoldOptions { ell: cfg.ell, budget: cfg.budget, ..FoldOptions::default() };
    let results = graphs
        .par_iter()
        .map(|g| {
            let s = saturate(g, cfg.ell)?;
            let fold = fold_to_andrasfai(&s, opts)?;
            let verified = match (&fold.k, &fold.hom) {
                (Some(k), Some(h)) => verify_hom(&s, &andrasfai(*k, cfg.ell)?, h)?,
                _ => false,
            };
            Ok((s, fold, verified))
        })
        .collect::<Result<Vec<_>>>()?;
    let c7 = cycle(2 * cfg.ell + 1)?;
    let mut by_k: BTreeMap<String, u64> = BTreeMap::new();
    let mut by_order: BTreeMap<usize, u64> = BTreeMap::new();
    let mut budget_cut = Vec::new();
    let mut odd_cycle_folds = Vec::new();
    for (g, (s, fold, verified)) in graphs.iter().zip(results) {
        r.instances += 1;
        *by_order.entry(g.order()).or_default() += 1;
        r.check("fold");
        match fold.k.filter(|_| verified) {
            Some(k) => *by_k.entry(k.to_string()).or_default() += 1,
            None => r.violation(Item::new("fold", &s, Witness::NoFold { ell: cfg.ell, k_max: fold.k_max })),
        }
        if !fold.budget_cut.is_empty() {
            budget_cut.push(to_graph6(&s));
        }
        if s.is_bipartite() {
            r.check("bipartite-folds-to-k2");
            if fold.k != Some(1) {
                r.violation(Item::new("bipartite-folds-to-k2", &s, Witness::NoFold { ell: cfg.ell, k_max: 1 }));
            }
        }
        if is_isomorphic(&s, &c7) {
            odd_cycle_folds.push(fold.k);
        }
    }
    r.detail("corpus_by_order", by_order);
    r.detail("fold_level_histogram", by_k);
    r.detail("budget_exhausted_instances", budget_cut);
    r.detail("odd_cycle_fold_levels", odd_cycle_folds);
    Ok(finish(r, start))
}

fn negative_controls() -> Vec<(&'static str, &'static str, Graph)> {
    let c7 = cycle(7).unwrap();
    let with_isolate = c7.disjoint_union(&Graph::empty(1));
    let mut bad_attachment = with_isolate.clone();
    bad_attachment.link(7, 0);
    bad_attachment.link(7, 3);
    // a vertex off the cycle whose neighbour sees two cycle vertices
    let mut two_seen = c7.disjoint_union(&Graph::empty(2));
    two_seen.link(7, 8);
    two_seen.link(8, 0);
    two_seen.link(8, 2);
    let mut twelve = cycle(12).unwrap();
    twelve.link(0, 6);
    twelve.link(1, 7);
    vec![
        ("two-seven-cycle gadget", "two-seven-cycles", two_seven_cycles_gadget()),
        ("6-cycle", "induced-c6", cycle(6).unwrap()),
        ("7-cycle plus isolated vertex", "seven-cycle-domination", with_isolate),
        ("7-cycle plus vertex on x1 and x4", "well-behaved-7-cycles", bad_attachment),
        ("7-cycle plus pendant cherry", "common-neighbour", two_seen),
        ("12-cycle with two consecutive diagonals", "twelve-cycle-diagonals", twelve),
    ]
}

/// The six structural statements on the saturated corpus and on seeded blow-ups.
pub fn campaign_forbidden_structures(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let start = Instant::now();
    let mut r = CampaignReport::new("forbidden_structures", cfg);
    let corpus = saturated_corpus(cfg)?;
    let (blowups, failed) = sample_blowups(cfg)?;
    let mut hosts: Vec<(&str, Graph)> = corpus.into_iter().map(|g| ("corpus", g)).collect();
    let mut by_level: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for b in &blowups {
        by_level.entry(b.k.to_string()).or_default().push(b.sizes.iter().sum());
    }
    hosts.extend(blowups.into_iter().map(|b| ("blowup", b.graph)));
    // a balanced blow-up of F_3 of order 24
    hosts.push(("blowup", saturate(&blow_up(&BlowupSpec::new(andrasfai(3, 3)?, vec![2; 12])?)?, 3)?));
    r.skipped += failed as u64;
    let verdicts: Vec<Option<Vec<Verdict>>> = hosts
        .par_iter()
        .map(|(_, g)| {
            (is_maximal_free(g, 3) && above_threshold(g, 3))
                .then(|| STRUCTURE_STATEMENTS.iter().map(|s| run_statement(s, g).unwrap()).collect())
        })
        .collect();
    let mut per_source: BTreeMap<&str, u64> = BTreeMap::new();
    let mut configurations: BTreeMap<String, u64> = BTreeMap::new();
    for ((source, g), vs) in hosts.iter().zip(verdicts) {
        r.instances += 1;
        *per_source.entry(source).or_default() += 1;
        match vs {
            Some(vs) => {
                for v in vs {
                    *configurations.entry(v.statement.clone()).or_default() += v.examined;
                    r.verdict(g, v);
                }
            }
            None => {
                r.skipped += 1;
                for s in STRUCTURE_STATEMENTS {
                    r.skip(s);
                }
            }
        }
    }
    let mut controls = BTreeMap::new();
    for (name, statement, g) in negative_controls() {
        let v = run_statement(statement, &g).unwrap();
        let caught = v.witness.as_ref().is_some_and(|w| w.recheck(&g));
        controls.insert(name, serde_json::json!({ "statement": statement, "detected": caught }));
        if !caught {
            r.violation(Item::new(statement, &g, Witness::ControlMissed { statement: statement.into() }));
        }
    }
    r.detail("hosts_by_source", per_source);
    r.detail("blowup_orders_by_level", by_level);
    r.detail("blowup_draws_rejected", failed);
    r.detail("configurations_examined", configurations);
    r.detail("negative_controls", controls);
    Ok(finish(r, start))
}

/// Neighbour-count and neighbourhood checks on one host, for up to `copies`
/// copies of each `F_k` with `k ≤ level`.
fn fk_host_checks(host: &Graph, level: usize, copies: usize, k_cap: usize) -> (u64, Vec<Item>) {
    let mut checked = 0;
    let mut items = Vec::new();
    for k in 2..=level.min(k_cap) {
        let f = andrasfai(k, 3).unwrap();
        if f.order() > host.order() {
            break;
        }
        let mut found: Vec<Vec<usize>> = Vec::new();
        for_each_embedding(host, &f, false, |emb| {
            found.push(emb.to_vec());
            found.len() >= copies
        });
        for copy in found {
            for u in 0..host.order() {
                checked += 1;
                let count = copy_neighbours(host, &copy, u).len();
                if count != k && count + 1 != k {
                    items.push(Item::new(
                        "fk-neighbour-count",
                        host,
                        Witness::FkCount { k, copy: copy.clone(), vertex: u, count },
                    ));
                }
                if !fk_neighbourhood_ok(&f, host, &copy, u) {
                    items.push(Item::new(
                        "fk-neighbourhood",
                        host,
                        Witness::FkNeighbourhood { k, copy: copy.clone(), vertex: u },
                    ));
                }
            }
        }
    }
    (checked, items)
}

/// Order, regularity, maximality, 3-colourability, the core property and
/// the seven-cycle and odd-path pair properties of `F_k`; neighbour counts and
/// neighbourhoods on hosts containing copies of `F_k`.
pub fn campaign_fk_properties(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let start = Instant::now();
    let mut r = CampaignReport::new("fk_properties", cfg);
    let mut chromatic = BTreeMap::new();
    for k in 1..=cfg.fk_k_max {
        let f = andrasfai(k, 3)?;
        r.instances += 1;
        let expected = [
            ("order", if k == 1 { 2 } else { 5 * k - 3 }.to_string()),
            ("regular-degree", k.to_string()),
            ("maximal-free", "true".to_string()),
            ("three-colourable", "true".to_string()),
            ("core", "true".to_string()),
        ];
        for (property, want) in expected {
            let statement = format!("fk-{property}");
            r.check(&statement);
            let got = fk_invariant(&f, property).unwrap_or_default();
            if got != want {
                r.violation(Item::new(
                    statement,
                    &f,
                    Witness::FkInvariant { k, property: property.into(), expected: want, actual: got },
                ));
            }
        }
        chromatic.insert(k.to_string(), chromatic_number(&f)?);
        let n = f.order();
        let mut on_cycle = vec![vec![false; n]; n];
        for c in crate::structure::enumerate_cycles(&f, 7) {
            for &a in &c.vertices {
                for &b in &c.vertices {
                    on_cycle[a][b] = true;
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if k >= 2 {
                    r.check("fk-pairs-on-seven-cycle");
                    if !on_cycle[a][b] {
                        r.violation(Item::new(
                            "fk-pairs-on-seven-cycle",
                            &f,
                            Witness::FkPair { k, property: "seven-cycle".into(), pair: [a, b] },
                        ));
                    }
                }
                r.check("fk-odd-paths");
                if !has_short_odd_path(&f, a, b) {
                    r.violation(Item::new(
                        "fk-odd-paths",
                        &f,
                        Witness::FkPair { k, property: "odd-path".into(), pair: [a, b] },
                    ));
                }
            }
        }
        debug_assert!(k < 2 || on_common_seven_cycle(&f, 0, n - 1));
    }
    r.detail("chromatic_numbers", chromatic);

    // hosts for the copy checks; the last one fails the premises on purpose
    let corpus = saturated_corpus(cfg)?;
    let (blowups, failed) = sample_blowups(cfg)?;
    r.skipped += failed as u64;
    let mut hosts: Vec<Graph> = corpus;
    hosts.extend(blowups.into_iter().map(|b| b.graph));
    let mut control = andrasfai(3, 3)?.disjoint_union(&Graph::empty(1));
    control.link(12, 0);
    hosts.push(control);
    let fold_opts = FoldOptions { budget: cfg.budget, ..FoldOptions::default() };
    let outcomes: Vec<Option<(u64, Vec<Item>)>> = hosts
        .par_iter()
        .map(|h| {
            if !(is_maximal_free(h, 3) && above_threshold(h, 3)) {
                return None;
            }
            // a copy of F_k forces G → F_m to give F_k → F_m, hence k ≤ m
            let level = fold_to_andrasfai(h, fold_opts).ok()?.k.unwrap_or(cfg.fk_k_max);
            Some(fk_host_checks(h, level, cfg.fk_copies.max(1), cfg.fk_k_max))
        })
        .collect();
    let mut premise_failures = 0u64;
    for out in outcomes {
        r.instances += 1;
        match out {
            Some((checked, items)) => {
                r.tally("fk-neighbour-count").checked += checked;
                r.tally("fk-neighbourhood").checked += checked;
                for it in items {
                    r.violation(it);
                }
            }
            None => {
                premise_failures += 1;
                r.skipped += 1;
                r.skip("fk-neighbour-count");
                r.skip("fk-neighbourhood");
            }
        }
    }
    r.detail("hosts_failing_premises", premise_failures);
    Ok(finish(r, start))
}

/// Triangle-freeness of `C5`-free graphs with `δ > n/6 + c` at small orders,
/// plus the triangular-edge and half-set machinery on every instance.
pub fn campaign_c5_triangle_free(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let start = Instant::now();
    let mut r = CampaignReport::new("c5_triangle_free", cfg);
    let constraints = EnumerationConstraints {
        min_order: 1,
        max_order: cfg.c5_n_max,
        connected: false,
        odd_girth_at_least: None,
        forbid_c5: true,
        min_degree: DegreeBound::above(rat(1, 6), cfg.c5_offset.0.clone()),
    };
    let graphs = enumerate_graphs(&constraints)?;
    let items: Vec<(Vec<Item>, Vec<Item>, usize)> = graphs.par_iter().map(c5_instance).collect();
    let mut by_order: BTreeMap<usize, [u64; 2]> = BTreeMap::new();
    let mut max_triangular = 0;
    for (g, (findings, violations, tri)) in graphs.iter().zip(items) {
        r.instances += 1;
        max_triangular = max_triangular.max(tri);
        let e = by_order.entry(g.order()).or_default();
        e[0] += 1;
        for s in ["triangle-free", "triangular-edge-count", "at-most-13-triangular-edges", "half-set"] {
            r.check(s);
        }
        if findings.iter().any(|f| f.statement == "triangle-free") {
            e[1] += 1;
        }
        findings.into_iter().for_each(|f| r.finding(f));
        violations.into_iter().for_each(|v| r.violation(v));
    }
    r.detail("instances_and_triangle_findings_by_order", by_order);
    r.detail("max_triangular_edges_at_a_vertex", max_triangular);
    if cfg.c5_probe_12 {
        // equality case δ = n/6 + 1 at n = 12, connected graphs only
        let probe = EnumerationConstraints {
            min_order: 12,
            max_order: 12,
            connected: true,
            odd_girth_at_least: None,
            forbid_c5: true,
            min_degree: DegreeBound::AtLeast { value: 3 },
        };
        let found: Vec<Graph> = enumerate_graphs(&probe)?
            .into_par_iter()
            .filter(|g| shortest_odd_cycle(g).is_some_and(|c| c.len() == 3))
            .collect();
        r.detail("probe_12_triangle_graphs", found.len());
        for g in found {
            let c = shortest_odd_cycle(&g).unwrap();
            r.finding(Item::new(
                "tightness-probe-12",
                &g,
                Witness::Triangle { vertices: [c[0], c[1], c[2]] },
            ));
        }
    }
    Ok(finish(r, start))
}

fn c5_instance(g: &Graph) -> (Vec<Item>, Vec<Item>, usize) {
    let mut findings = Vec::new();
    let mut violations = Vec::new();
    if let Some(c) = shortest_odd_cycle(g).filter(|c| c.len() == 3) {
        findings.push(Item::new("triangle-free", g, Witness::Triangle { vertices: [c[0], c[1], c[2]] }));
    }
    let counts: Vec<usize> = (0..g.order()).map(|v| triangular_edges_at(g, v)).collect();
    let (best, arg) = triangular_edge_bound(g);
    let naive_best = counts.iter().copied().max().unwrap_or(0);
    if best != naive_best || arg.is_some_and(|v| counts[v] != best) {
        let v = (0..g.order()).find(|&v| counts[v] == naive_best).unwrap_or(0);
        violations.push(Item::new("triangular-edge-count", g, Witness::TriangularEdges { vertex: v, count: naive_best }));
    }
    if naive_best >= 14 {
        let v = (0..g.order()).find(|&v| counts[v] == naive_best).unwrap();
        findings.push(Item::new(
            "at-most-13-triangular-edges",
            g,
            Witness::TriangularEdges { vertex: v, count: naive_best },
        ));
    }
    for v in 0..g.order() {
        let support = triangular_neighbourhood(g, v);
        if support.is_empty() {
            continue;
        }
        let h = g.induced(&support);
        let set: Vec<usize> = match half_set(&h) {
            Ok(x) => x.iter().map(|i| support[i]).collect(),
            Err(_) => vec![],
        };
        if !is_valid_half_set(g, &support, &set) {
            violations.push(Item::new("half-set", g, Witness::HalfSet { vertex: v, set }));
        }
    }
    (findings, violations, naive_best)
}

/// `T_ℓ` is maximal free, has no homomorphism to small `F_k^ℓ`, and its
/// weighted blow-up beats the `1/(2ℓ−1)` threshold.
pub fn campaign_counterexample_t(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let start = Instant::now();
    let mut r = CampaignReport::new("counterexample_t", cfg);
    let mut per_ell = BTreeMap::new();
    for &ell in &cfg.t_ells {
        let t = subdivided_k4(ell)?;
        r.instances += 1;
        r.check("t-maximal-free");
        if !is_free(&t, ell) {
            let c = shortest_odd_cycle(&t).unwrap();
            r.violation(Item::new("t-maximal-free", &t, Witness::ShortOddCycle { ell, cycle: c }));
        } else if let Some((u, v)) = first_addable_edge(&t, ell) {
            r.violation(Item::new("t-maximal-free", &t, Witness::AddableEdge { ell, edge: [u, v] }));
        }
        let mut certificates = BTreeMap::new();
        for k in 1..=cfg.t_k_max {
            let f = andrasfai(k, ell)?;
            let search = find_hom_with(&t, &f, HomOptions { budget: cfg.budget, symmetry_breaking: true });
            r.check("t-no-hom");
            let status = match &search {
                HomSearch::Absent { .. } => "absent",
                HomSearch::Found { hom, .. } => {
                    r.violation(Item::new("t-no-hom", &t, Witness::HomFound { ell, k, map: hom.map.clone() }));
                    "found"
                }
                HomSearch::BudgetExhausted { .. } => {
                    r.skip("t-no-hom");
                    "budget-exhausted"
                }
            };
            certificates.insert(
                k.to_string(),
                serde_json::json!({ "target_order": f.order(), "status": status, "nodes": search.nodes() }),
            );
        }
        let lp = optimal_blowup_weights(&t)?;
        let mut entry = serde_json::json!({
            "order": t.order(),
            "graph6": to_graph6(&t),
            "lp_optimum": ratio_string(&lp.t),
            "lp_certified": lp.certify(&t),
            "hom_search": certificates,
        });
        if ell % 2 == 0 {
            let w = RationalWeights::from_integers(&subdivided_k4_weights(ell)?)?;
            let n = 6 * ell - 4;
            let real = realize_weights(&t, &w, n)?;
            let expected = Exact(rat(3, n as i64));
            let actual = Exact(real.ratio.clone());
            r.check("t-star-ratio");
            if actual != expected {
                r.violation(Item::new("t-star-ratio", &real.graph, Witness::Ratio { expected: expected.clone(), actual: actual.clone() }));
            }
            r.check("t-star-above-threshold");
            let threshold = rat(1, 2 * ell as i64 - 1);
            if actual.0 <= threshold {
                r.violation(Item::new(
                    "t-star-above-threshold",
                    &real.graph,
                    Witness::Ratio { expected: Exact(threshold.clone()), actual: actual.clone() },
                ));
            }
            r.check("t-star-free");
            if let Some(c) = shortest_odd_cycle(&real.graph).filter(|c| c.len() < 2 * ell + 1) {
                r.violation(Item::new("t-star-free", &real.graph, Witness::ShortOddCycle { ell, cycle: c }));
            }
            entry["t_star"] = serde_json::json!({
                "order": n,
                "min_degree": real.min_degree,
                "ratio": actual.to_string(),
                "threshold": ratio_string(&threshold),
            });
        }
        per_ell.insert(ell.to_string(), entry);
    }
    r.detail("by_ell", per_ell);
    Ok(finish(r, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CampaignConfig {
        CampaignConfig {
            n_max: 8,
            blowup_count: 6,
            blowup_max_order: 30,
            fk_k_max: 4,
            c5_n_max: 7,
            t_ells: vec![4],
            t_k_max: 3,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn small_campaigns_pass() {
        let all = campaign_all(&small()).unwrap();
        for c in &all.campaigns {
            assert!(c.passed(), "{}: {:?}", c.campaign, c.violations);
            assert!(c.findings.iter().all(Item::recheck));
        }
        let c5 = &all.campaigns[3];
        assert!(c5.findings.iter().any(|f| f.graph6 == to_graph6(&Graph::complete(4))));
    }

    #[test]
    fn seeded_runs_are_identical() {
        let cfg = small();
        let a = campaign_forbidden_structures(&cfg).unwrap();
        let b = campaign_forbidden_structures(&cfg).unwrap();
        assert_eq!(a.instances, b.instances);
        assert_eq!(a.statements, b.statements);
        assert_eq!(a.details, b.details);
    }

    #[test]
    fn large_orders_need_opt_in() {
        let cfg = CampaignConfig { n_max: 12, ..CampaignConfig::default() };
        assert!(matches!(campaign_theorem_main(&cfg), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn controls_are_caught() {
        for (name, statement, g) in negative_controls() {
            let v = run_statement(statement, &g).unwrap();
            assert!(!v.holds, "{name}");
            let item = Item::new(statement, &g, Witness::Lemma { counterexample: v.witness.unwrap() });
            assert!(item.recheck(), "{name}");
        }
    }

    #[test]
    fn witnesses_survive_serialisation() {
        let g = Graph::complete(4);
        let item = Item::new("triangle-free", &g, Witness::Triangle { vertices: [0, 1, 2] });
        let back: Item = serde_json::from_str(&serde_json::to_string(&item).unwrap()).unwrap();
        assert!(back.recheck());
        let fake = Item::new("triangle-free", &cycle(5).unwrap(), Witness::Triangle { vertices: [0, 1, 2] });
        assert!(!fake.recheck());
    }
}
