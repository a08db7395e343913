//! Isomorph-free generation by vertex augmentation with canonical-deletion rejection.
//!
//! A child `C = P + x` is kept only when `x` is in the orbit of the canonical
//! deletion vertex of `C`: among the eligible vertices (all vertices, or the
//! non-cut vertices in connected mode) the one whose individualised canonical
//! code is largest. Each isomorphism class then has a unique parent class;
//! isomorphic children of one parent are merged by canonical code.

use std::collections::HashSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::canon::{canonical_form, canonical_form_coloured, refine, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::optimizer::Exact;
use crate::structure::parity_distances;

/// Largest order enumerated exhaustively.
pub const MAX_EXHAUSTIVE_ORDER: usize = 13;

/// Lower bound on the minimum degree of a completed graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreeBound {
    None,
    AtLeast { value: usize },
    /// `δ > slope·n + offset`, compared exactly.
    Above { slope: Exact, offset: Exact },
}

impl DegreeBound {
    pub fn above(slope: BigRational, offset: BigRational) -> DegreeBound {
        DegreeBound::Above {
            slope: Exact(slope),
            offset: Exact(offset),
        }
    }

    pub fn admits(&self, n: usize, delta: usize) -> bool {
        match self {
            DegreeBound::None => true,
            DegreeBound::AtLeast { value } => delta >= *value,
            DegreeBound::Above { slope, offset } => {
                let n = BigRational::from_integer(n.into());
                BigRational::from_integer(delta.into()) > &slope.0 * n + &offset.0
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConstraints {
    pub min_order: usize,
    pub max_order: usize,
    pub connected: bool,
    /// No odd cycle shorter than this (odd, at least 3); pruned during generation.
    pub odd_girth_at_least: Option<usize>,
    /// No 5-cycle as a (not necessarily induced) subgraph; pruned during generation.
    pub forbid_c5: bool,
    /// Applied to completed graphs only.
    pub min_degree: DegreeBound,
}

impl EnumerationConstraints {
    /// All graphs of exactly order `n`.
    pub fn order(n: usize) -> Self {
        EnumerationConstraints {
            min_order: n,
            max_order: n,
            connected: false,
            odd_girth_at_least: None,
            forbid_c5: false,
            min_degree: DegreeBound::None,
        }
    }

    pub fn up_to(n: usize) -> Self {
        EnumerationConstraints {
            min_order: 1,
            ..Self::order(n)
        }
    }

    fn accepts_final(&self, g: &Graph) -> bool {
        let n = g.order();
        n >= self.min_order
            && (!self.connected || g.is_connected())
            && self.min_degree.admits(n, g.min_degree().unwrap_or(0))
    }
}

/// Rough count of graphs visited at the top level, for refusal messages.
fn cost_estimate(n: usize) -> String {
    // number of labelled graphs divided by n! bounds the isomorphism classes from below
    let log2_classes = (n * (n - 1) / 2) as f64 - (1..=n).map(|i| (i as f64).log2()).sum::<f64>();
    format!(
        "an unconstrained search at order {n} visits roughly 2^{:.0} isomorphism classes",
        log2_classes.max(0.0)
    )
}

/// All graphs with order in `min_order..=max_order` satisfying the constraints,
/// one per isomorphism class, ordered by order and then by generation order.
pub fn enumerate_graphs(c: &EnumerationConstraints) -> Result<Vec<Graph>> {
    if c.max_order > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::TooLarge {
            order: c.max_order,
            bound: MAX_EXHAUSTIVE_ORDER,
            hint: cost_estimate(c.max_order),
        });
    }
    if let Some(g) = c.odd_girth_at_least {
        if g < 3 || g % 2 == 0 {
            return Err(Error::Parameter(format!("odd girth bound must be odd and at least 3, got {g}")));
        }
    }
    let mut out = Vec::new();
    if c.max_order == 0 {
        return Ok(out);
    }
    let mut level = vec![Graph::empty(1)];
    for n in 1..=c.max_order {
        if n > 1 {
            level = next_level(&level, c);
        }
        if n >= c.min_order {
            out.extend(level.iter().filter(|g| c.accepts_final(g)).cloned());
        }
    }
    Ok(out)
}

fn next_level(parents: &[Graph], c: &EnumerationConstraints) -> Vec<Graph> {
    parents
        .par_iter()
        .map(|p| children(p, c))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Masks of parent vertices the new vertex may be joined to without breaking
/// the hereditary constraints.
fn admissible_sets(p: &Graph, c: &EnumerationConstraints) -> Vec<u64> {
    let n = p.order();
    // conflict[a] bit b: a and b may not both be neighbours of the new vertex
    let mut conflict = vec![0u64; n];
    if let Some(g) = c.odd_girth_at_least {
        for (a, row) in conflict.iter_mut().enumerate() {
            let d = parity_distances(p, a);
            for (b, db) in d.iter().enumerate() {
                if b != a && db[1] <= g.saturating_sub(4) {
                    *row |= 1 << b;
                }
            }
        }
    }
    if c.forbid_c5 {
        // a simple path a-x-y-b of length 3 closes a 5-cycle through the new vertex
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let hit = p.neighbours(a).filter(|&x| x != b).any(|x| {
                    p.neighbours(x)
                        .any(|y| y != a && y != b && p.has_edge(y, b))
                });
                if hit {
                    conflict[a] |= 1 << b;
                }
            }
        }
    }
    let mut sets = Vec::new();
    let min_size = usize::from(c.connected);
    extend_sets(n, 0, 0, &conflict, &mut sets);
    sets.retain(|s| s.count_ones() as usize >= min_size);
    sets
}

fn extend_sets(n: usize, from: usize, cur: u64, conflict: &[u64], out: &mut Vec<u64>) {
    out.push(cur);
    for v in from..n {
        if conflict[v] & cur == 0 {
            extend_sets(n, v + 1, cur | 1 << v, conflict, out);
        }
    }
}

fn children(p: &Graph, c: &EnumerationConstraints) -> Vec<Graph> {
    let n = p.order();
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut out = Vec::new();
    for s in admissible_sets(p, c) {
        let mut edges = p.edges();
        edges.extend(bits::ones(&[s]).map(|u| (u, n)));
        let child = Graph::new(n + 1, &edges).expect("valid augmentation");
        if c.connected && !child.is_connected() {
            continue;
        }
        if !is_canonical_extension(&child, c.connected) {
            continue;
        }
        if seen.insert(canonical_form(&child)) {
            out.push(child);
        }
    }
    out
}

/// Whether the last vertex is in the orbit of the canonical deletion vertex.
fn is_canonical_extension(g: &Graph, connected: bool) -> bool {
    let n = g.order();
    let last = n - 1;
    let eligible: Vec<bool> = if connected {
        g.cut_vertices().iter().map(|&cut| !cut).collect()
    } else {
        vec![true; n]
    };
    if !eligible[last] {
        return false;
    }
    // cheap invariant first: the refined cell of the deletion vertex must be maximal
    let mut cell = vec![0u32; n];
    refine(g, &mut cell);
    let top = (0..n).filter(|&v| eligible[v]).map(|v| cell[v]).max().unwrap();
    if cell[last] != top {
        return false;
    }
    let rivals: Vec<usize> = (0..n).filter(|&v| eligible[v] && cell[v] == top).collect();
    if rivals.len() == 1 {
        return true;
    }
    let code = |v: usize| {
        let mut col: Vec<u32> = cell.iter().map(|&c| 2 * c).collect();
        col[v] += 1;
        canonical_form_coloured(g, &col)
    };
    let mine = code(last);
    rivals.iter().filter(|&&v| v != last).all(|&v| code(v) <= mine)
}
