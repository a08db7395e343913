//! Campaign reports and self-contained witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::generators::andrasfai;
use crate::graph::Graph;
use crate::homomorphism::{find_hom, verify_hom, Homomorphism};
use crate::io::{from_graph6, to_graph6};
use crate::optimizer::Exact;
use crate::structure::{enumerate_cycles, is_free, Counterexample, PatternWitness, Verdict};

use super::CampaignConfig;

/// Evidence for one violation or finding, interpreted on the graph stored next to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A structural statement fails.
    Lemma { counterexample: Counterexample },
    /// The graph is maximal free but maps to no `F_k^ℓ` with `k ≤ k_max`.
    NoFold { ell: usize, k_max: usize },
    Triangle { vertices: [usize; 3] },
    /// `vertex` has `count` incident edges lying on triangles.
    TriangularEdges { vertex: usize, count: usize },
    /// `set` fails the half-set conditions on the triangular part of `N(vertex)`.
    HalfSet { vertex: usize, set: Vec<usize> },
    /// `vertex` has `count ∉ {k−1, k}` neighbours in the `F_k` copy `copy`.
    FkCount { k: usize, copy: Vec<usize>, vertex: usize, count: usize },
    /// No `x_i` of the copy has (almost) the same neighbourhood in the copy as `vertex`.
    FkNeighbourhood { k: usize, copy: Vec<usize>, vertex: usize },
    /// The graph is `F_k`; `pair` lies on no 7-cycle, or has no path of length 1, 3 or 5.
    FkPair { k: usize, property: String, pair: [usize; 2] },
    /// A whole-graph invariant of `F_k` differs from the expected value.
    FkInvariant { k: usize, property: String, expected: String, actual: String },
    HomFound { ell: usize, k: usize, map: Vec<usize> },
    /// An odd cycle shorter than `2ℓ+1`.
    ShortOddCycle { ell: usize, cycle: Vec<usize> },
    /// Adding `edge` keeps the graph free of short odd cycles.
    AddableEdge { ell: usize, edge: [usize; 2] },
    /// A negative control passed a checker that should have rejected it.
    ControlMissed { statement: String },
    /// Minimum degree over order differs from the expected ratio.
    Ratio { expected: Exact, actual: Exact },
}

/// One violation or finding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub statement: String,
    pub graph6: String,
    pub witness: Witness,
}

impl Item {
    pub fn new(statement: impl Into<String>, g: &Graph, witness: Witness) -> Item {
        Item {
            statement: statement.into(),
            graph6: to_graph6(g),
            witness,
        }
    }

    /// Re-verifies the item from its serialised form alone.
    pub fn recheck(&self) -> bool {
        match from_graph6(&self.graph6) {
            Ok(g) => recheck_witness(&self.statement, &g, &self.witness),
            Err(_) => false,
        }
    }
}

/// Per-statement tallies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementSummary {
    pub checked: u64,
    pub skipped: u64,
    pub violations: u64,
    pub findings: u64,
}

impl StatementSummary {
    pub fn verdict(&self) -> &'static str {
        if self.violations > 0 {
            "fail"
        } else if self.findings > 0 {
            "findings"
        } else if self.checked == 0 {
            "vacuous"
        } else {
            "pass"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub config: CampaignConfig,
    pub instances: u64,
    pub skipped: u64,
    pub findings: Vec<Item>,
    pub violations: Vec<Item>,
    pub runtime_ms: u64,
    pub statements: BTreeMap<String, StatementSummary>,
    /// Campaign-specific figures (histograms, certificates, controls).
    pub details: BTreeMap<String, serde_json::Value>,
}

impl CampaignReport {
    pub(crate) fn new(campaign: &str, config: &CampaignConfig) -> CampaignReport {
        CampaignReport {
            campaign: campaign.to_string(),
            config: config.clone(),
            instances: 0,
            skipped: 0,
            findings: vec![],
            violations: vec![],
            runtime_ms: 0,
            statements: BTreeMap::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn tally(&mut self, statement: &str) -> &mut StatementSummary {
        self.statements.entry(statement.to_string()).or_default()
    }

    pub(crate) fn check(&mut self, statement: &str) {
        self.tally(statement).checked += 1;
    }

    pub(crate) fn skip(&mut self, statement: &str) {
        self.tally(statement).skipped += 1;
    }

    pub(crate) fn violation(&mut self, item: Item) {
        self.tally(&item.statement).violations += 1;
        self.violations.push(item);
    }

    pub(crate) fn finding(&mut self, item: Item) {
        self.tally(&item.statement).findings += 1;
        self.findings.push(item);
    }

    /// Records a structural verdict on `g`.
    pub(crate) fn verdict(&mut self, g: &Graph, v: Verdict) {
        self.check(&v.statement);
        if let Some(w) = v.witness {
            self.violation(Item::new(v.statement, g, Witness::Lemma { counterexample: w }));
        }
    }

    pub(crate) fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details
            .insert(key.to_string(), serde_json::to_value(value).expect("serialisable detail"));
    }
}

/// Every campaign of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsolidatedReport {
    pub config: CampaignConfig,
    pub campaigns: Vec<CampaignReport>,
    pub violations: usize,
    pub findings: usize,
    pub runtime_ms: u64,
}

impl ConsolidatedReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn has_triangle_at(g: &Graph, a: usize, b: usize, c: usize) -> bool {
    a != b && b != c && a != c && g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)
}

/// Incident edges of `v` on triangles, counted from the definition.
pub(crate) fn triangular_edges_at(g: &Graph, v: usize) -> usize {
    g.neighbours(v)
        .filter(|&w| g.neighbours(v).any(|x| x != w && g.has_edge(w, x)))
        .count()
}

/// The non-isolated part of `G[N(v)]`, as host vertex ids.
pub(crate) fn triangular_neighbourhood(g: &Graph, v: usize) -> Vec<usize> {
    g.neighbours(v)
        .filter(|&w| g.neighbours(v).any(|x| x != w && g.has_edge(w, x)))
        .collect()
}

/// Half-set conditions, from the definition, on the graph induced by `support`.
pub(crate) fn is_valid_half_set(g: &Graph, support: &[usize], set: &[usize]) -> bool {
    set.iter().all(|x| support.contains(x))
        && 2 * set.len() >= support.len()
        && set
            .iter()
            .all(|&x| support.iter().any(|&y| !set.contains(&y) && g.has_edge(x, y)))
}

/// Neighbours of `u` among the copy's vertices.
pub(crate) fn copy_neighbours(g: &Graph, copy: &[usize], u: usize) -> Vec<usize> {
    (0..copy.len()).filter(|&i| g.has_edge(u, copy[i])).collect()
}

/// Whether some `x_i` has the in-copy neighbourhood of `u`, up to dropping one of `x_{i±1}`.
pub(crate) fn fk_neighbourhood_ok(f: &Graph, g: &Graph, copy: &[usize], u: usize) -> bool {
    let m = f.order();
    let nu = copy_neighbours(g, copy, u);
    (0..m).any(|i| {
        let ni: Vec<usize> = f.neighbours(i).collect();
        if nu == ni {
            return true;
        }
        [(i + m - 1) % m, (i + 1) % m].iter().any(|&drop| {
            ni.contains(&drop) && ni.iter().copied().filter(|&x| x != drop).eq(nu.iter().copied())
        })
    })
}

/// Simple paths of odd length at most 5 between `a` and `b`, by depth-first search.
pub(crate) fn has_short_odd_path(g: &Graph, a: usize, b: usize) -> bool {
    fn go(g: &Graph, v: usize, b: usize, len: usize, seen: &mut Vec<bool>) -> bool {
        if v == b {
            return len % 2 == 1;
        }
        if len == 5 {
            return false;
        }
        for w in g.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                let hit = go(g, w, b, len + 1, seen);
                seen[w] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    let mut seen = vec![false; g.order()];
    seen[a] = true;
    go(g, a, b, 0, &mut seen)
}

/// Whether `a` and `b` lie together on some 7-cycle.
pub(crate) fn on_common_seven_cycle(g: &Graph, a: usize, b: usize) -> bool {
    enumerate_cycles(g, 7)
        .iter()
        .any(|c| c.vertices.contains(&a) && c.vertices.contains(&b))
}

fn recheck_witness(statement: &str, g: &Graph, w: &Witness) -> bool {
    let n = g.order();
    match w {
        Witness::Lemma { counterexample } => counterexample.recheck(g),
        Witness::NoFold { ell, k_max } => {
            *ell >= 2
                && is_free(g, *ell)
                && !g.is_bipartite()
                && (2..=*k_max).all(|k| find_hom(g, &andrasfai(k, *ell).unwrap(), None).is_absent())
        }
        Witness::Triangle { vertices: [a, b, c] } => {
            *a < n && *b < n && *c < n && has_triangle_at(g, *a, *b, *c)
        }
        Witness::TriangularEdges { vertex, count } => {
            *vertex < n && triangular_edges_at(g, *vertex) == *count
        }
        Witness::HalfSet { vertex, set } => {
            *vertex < n && !is_valid_half_set(g, &triangular_neighbourhood(g, *vertex), set)
        }
        Witness::FkCount { k, copy, vertex, count } => {
            let Ok(f) = andrasfai(*k, 3) else { return false };
            *vertex < n
                && PatternWitness::new("F_k", copy.clone()).realises(g, &f, false)
                && copy_neighbours(g, copy, *vertex).len() == *count
                && *count + 1 != *k
                && *count != *k
        }
        Witness::FkNeighbourhood { k, copy, vertex } => {
            let Ok(f) = andrasfai(*k, 3) else { return false };
            *vertex < n
                && PatternWitness::new("F_k", copy.clone()).realises(g, &f, false)
                && !fk_neighbourhood_ok(&f, g, copy, *vertex)
        }
        Witness::FkPair { k, property, pair: [a, b] } => {
            let ok = andrasfai(*k, 3).is_ok_and(|f| crate::canon::is_isomorphic(&f, g));
            ok && *a < n
                && *b < n
                && a != b
                && match property.as_str() {
                    "seven-cycle" => !on_common_seven_cycle(g, *a, *b),
                    "odd-path" => !has_short_odd_path(g, *a, *b),
                    _ => false,
                }
        }
        Witness::FkInvariant { k, property, expected, actual } => {
            let ok = andrasfai(*k, 3).is_ok_and(|f| crate::canon::is_isomorphic(&f, g));
            ok && expected != actual && super::campaigns::fk_invariant(g, property).as_deref() == Some(actual.as_str())
        }
        Witness::HomFound { ell, k, map } => andrasfai(*k, *ell)
            .and_then(|h| verify_hom(g, &h, &Homomorphism { map: map.clone() }))
            .unwrap_or(false),
        Witness::ShortOddCycle { ell, cycle } => {
            cycle.len() % 2 == 1
                && cycle.len() < 2 * ell + 1
                && PatternWitness::new("cycle", cycle.clone()).is_cycle_in(g)
        }
        Witness::AddableEdge { ell, edge: [u, v] } => {
            *u < n
                && *v < n
                && u != v
                && !g.has_edge(*u, *v)
                && g.with_edge(*u, *v).is_ok_and(|h| is_free(&h, *ell))
        }
        Witness::ControlMissed { statement: s } => {
            s == statement && super::campaigns::run_statement(s, g).is_some_and(|v| v.holds)
        }
        Witness::Ratio { expected, actual } => {
            n > 0
                && expected != actual
                && actual.0
                    == num_rational::BigRational::new(
                        g.min_degree().unwrap_or(0).into(),
                        n.into(),
                    )
        }
    }
}
