//! Forbidden-structure predicates for maximal free graphs of large minimum degree.
//!
//! Blow-ups contain many open twins (vertices with equal neighbourhoods), and
//! every predicate here is invariant under permuting twins. Searches therefore
//! only ever step into the lowest-indexed unused member of a twin class, which
//! visits every configuration up to twin permutation exactly as often as the
//! plain search would visit it in a twin-free graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::graph::{Graph, VertexSet};

use super::pattern::find_induced_pattern;

const NONE: usize = usize::MAX;

/// Partition of the vertices into open-twin classes and the graph on one
/// representative per class.
#[derive(Clone, Debug)]
pub struct TwinQuotient {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub quotient: Graph,
    /// previous member of the same class, or `usize::MAX` for the first member
    prev_twin: Vec<usize>,
}

impl TwinQuotient {
    pub fn new(g: &Graph) -> TwinQuotient {
        let n = g.order();
        let mut by_row: std::collections::HashMap<&[u64], usize> = Default::default();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; n];
        let mut prev_twin = vec![NONE; n];
        for v in 0..n {
            let c = *by_row.entry(g.row(v)).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            if let Some(&p) = classes[c].last() {
                prev_twin[v] = p;
            }
            classes[c].push(v);
            class_of[v] = c;
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let quotient = g.induced(&reps);
        TwinQuotient {
            classes,
            class_of,
            quotient,
            prev_twin,
        }
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// `v` is unused and every lower member of its class is already used.
    fn next_in_class(&self, used: &[u64], v: usize) -> bool {
        !bits::test(used, v) && (self.prev_twin[v] == NONE || bits::test(used, self.prev_twin[v]))
    }
}

/// A concrete violation of one of the statements, re-checkable on the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// `vertex` has no neighbour on `cycle`.
    UndominatedCycle { vertex: usize, cycle: Vec<usize> },
    /// No vertex of `subgraph` covers the neighbours of `vertex` inside it.
    NotWellBehaved { vertex: usize, subgraph: Vec<usize> },
    /// A 12-cycle `x1..x12` with diagonals `x1x7`, `x2x8` inducing neither ladder.
    TwelveCycle { cycle: Vec<usize> },
    /// Induced copy of a forbidden pattern; `vertices[i]` is pattern vertex `i`.
    InducedPattern { pattern: String, vertices: Vec<usize> },
    /// `vertex` misses `cycle` but its neighbour `via` has two neighbours on it.
    NeighbourSeesTwo { vertex: usize, via: usize, cycle: Vec<usize> },
    /// `vertex` misses `cycle` but shares neighbours `via` with two cycle vertices `on_cycle`.
    TwoCommonNeighbours {
        vertex: usize,
        on_cycle: [usize; 2],
        via: [usize; 2],
        cycle: Vec<usize>,
    },
}

impl Counterexample {
    /// Re-verifies the violation directly from the definitions.
    pub fn recheck(&self, g: &Graph) -> bool {
        let n = g.order();
        let in_range = |vs: &[usize]| vs.iter().all(|&v| v < n);
        match self {
            Counterexample::UndominatedCycle { vertex, cycle } => {
                in_range(cycle)
                    && *vertex < n
                    && is_cycle(g, cycle)
                    && cycle.iter().all(|&x| !g.has_edge(*vertex, x))
            }
            Counterexample::NotWellBehaved { vertex, subgraph } => {
                in_range(subgraph)
                    && *vertex < n
                    && !subgraph.is_empty()
                    && VertexSet::from_iter_in(n, subgraph.iter().copied())
                        .is_ok_and(|h| is_well_behaved(g, &h).is_err_and(|u| u == *vertex))
            }
            Counterexample::TwelveCycle { cycle } => {
                in_range(cycle)
                    && cycle.len() == 12
                    && is_cycle(g, cycle)
                    && g.has_edge(cycle[0], cycle[6])
                    && g.has_edge(cycle[1], cycle[7])
                    && !induces_either_ladder(g, cycle)
            }
            Counterexample::InducedPattern { pattern, vertices } => {
                let p = match pattern.as_str() {
                    "c6" => crate::generators::cycle(6).unwrap(),
                    "two-seven-cycles" => two_seven_cycles_gadget(),
                    _ => return false,
                };
                in_range(vertices)
                    && super::PatternWitness::new(pattern.clone(), vertices.clone())
                        .realises(g, &p, true)
            }
            Counterexample::NeighbourSeesTwo { vertex, via, cycle } => {
                in_range(cycle)
                    && *vertex < n
                    && *via < n
                    && is_cycle(g, cycle)
                    && cycle.iter().all(|&x| !g.has_edge(*vertex, x))
                    && g.has_edge(*vertex, *via)
                    && cycle.iter().filter(|&&x| g.has_edge(*via, x)).count() >= 2
            }
            Counterexample::TwoCommonNeighbours {
                vertex,
                on_cycle,
                via,
                cycle,
            } => {
                in_range(cycle)
                    && in_range(on_cycle)
                    && in_range(via)
                    && *vertex < n
                    && is_cycle(g, cycle)
                    && cycle.iter().all(|&x| !g.has_edge(*vertex, x))
                    && on_cycle[0] != on_cycle[1]
                    && on_cycle.iter().all(|x| cycle.contains(x))
                    && (0..2).all(|i| g.has_edge(*vertex, via[i]) && g.has_edge(via[i], on_cycle[i]))
            }
        }
    }
}

/// Outcome of checking one statement on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub statement: String,
    pub holds: bool,
    /// Number of configurations (cycles, seeds, …) examined.
    pub examined: u64,
    pub witness: Option<Counterexample>,
}

impl Verdict {
    fn new(statement: &str, examined: u64, witness: Option<Counterexample>) -> Verdict {
        Verdict {
            statement: statement.to_string(),
            holds: witness.is_none(),
            examined,
            witness,
        }
    }
}

fn is_cycle(g: &Graph, c: &[usize]) -> bool {
    super::PatternWitness::new("cycle", c.to_vec()).is_cycle_in(g)
}

/// The graph formed by two 7-cycles sharing a path with three edges.
/// Vertices 0..7 are the first cycle `x1..x7`; 7, 8, 9 are `u`, `v`, `w`
/// with the second cycle `u v x1 x2 x3 x4 w`.
pub fn two_seven_cycles_gadget() -> Graph {
    let mut e: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    e.extend([(7, 8), (8, 0), (7, 9), (9, 3)]);
    Graph::new(10, &e).expect("fixed gadget")
}

/// `Ok` when for every vertex `u` some `v` in `H` has `N(u) ∩ H ⊆ N_H(v)`;
/// otherwise the first violating `u`.
pub fn is_well_behaved(g: &Graph, h: &VertexSet) -> Result<(), usize> {
    let hw = h.words();
    let hv = h.to_vec();
    let nbr_in_h: Vec<Vec<u64>> = hv.iter().map(|&v| and(g.row(v), hw)).collect();
    for u in 0..g.order() {
        let nu = and(g.row(u), hw);
        if !nbr_in_h.iter().any(|nv| bits::is_subset(&nu, nv)) {
            return Err(u);
        }
    }
    Ok(())
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Visits cycles of length `len` up to twin permutation, starting from each
/// class's first member. `visit` returns `false` to stop; the search runs in
/// parallel over start vertices and reports the first stop in start order.
fn find_cycle<T: Send>(
    g: &Graph,
    tq: &TwinQuotient,
    len: usize,
    visit: impl Fn(&[usize], &[u64]) -> Option<T> + Sync,
) -> (u64, Option<T>) {
    let starts: Vec<usize> = tq.representatives();
    let results: Vec<(u64, Option<T>)> = starts
        .par_iter()
        .map(|&s| {
            let mut used = vec![0u64; g.stride()];
            bits::set(&mut used, s);
            let mut path = vec![s];
            let mut count = 0;
            let hit = extend(g, tq, len, &mut path, &mut used, &mut count, &visit);
            (count, hit)
        })
        .collect();
    let mut total = 0;
    let mut first = None;
    for (c, hit) in results {
        total += c;
        if first.is_none() {
            first = hit;
        }
    }
    (total, first)
}

fn extend<T>(
    g: &Graph,
    tq: &TwinQuotient,
    len: usize,
    path: &mut Vec<usize>,
    used: &mut [u64],
    count: &mut u64,
    visit: &impl Fn(&[usize], &[u64]) -> Option<T>,
) -> Option<T> {
    let last = *path.last().unwrap();
    if path.len() == len {
        if g.has_edge(last, path[0]) {
            *count += 1;
            return visit(path, used);
        }
        return None;
    }
    let cand: Vec<usize> = g.neighbours(last).filter(|&w| tq.next_in_class(used, w)).collect();
    for w in cand {
        path.push(w);
        bits::set(used, w);
        let hit = extend(g, tq, len, path, used, count, visit);
        bits::clear(used, w);
        path.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Every cycle of length `len` is well-behaved.
pub fn check_well_behaved_cycles(g: &Graph, len: usize) -> Verdict {
    let tq = TwinQuotient::new(g);
    let (examined, hit) = find_cycle(g, &tq, len, |cycle, used| {
        let h = VertexSet::from_words(g.order(), used.to_vec());
        is_well_behaved(g, &h).err().map(|u| Counterexample::NotWellBehaved {
            vertex: u,
            subgraph: cycle.to_vec(),
        })
    });
    Verdict::new(&format!("well-behaved-{len}-cycles"), examined, hit)
}

/// Every vertex has a neighbour on every 7-cycle.
pub fn check_seven_cycle_domination(g: &Graph) -> Verdict {
    let tq = TwinQuotient::new(g);
    let n = g.order();
    let (examined, hit) = find_cycle(g, &tq, 7, |cycle, _| {
        let mut dom = vec![0u64; g.stride()];
        for &x in cycle {
            for (d, r) in dom.iter_mut().zip(g.row(x)) {
                *d |= r;
            }
        }
        (0..n).find(|&v| !bits::test(&dom, v)).map(|v| Counterexample::UndominatedCycle {
            vertex: v,
            cycle: cycle.to_vec(),
        })
    });
    Verdict::new("seven-cycle-domination", examined, hit)
}

/// For a vertex `u` with no neighbour on a 7-cycle `C`: (a) no neighbour of `u`
/// has two neighbours on `C`, and (b) `u` has a common neighbour with at most
/// one vertex of `C`. Vertices with a neighbour on `C` pass vacuously.
pub fn check_common_neighbour_obs(g: &Graph) -> Verdict {
    let tq = TwinQuotient::new(g);
    let n = g.order();
    let (examined, hit) = find_cycle(g, &tq, 7, |cycle, cyc| {
        let mut dom = vec![0u64; g.stride()];
        for &x in cycle {
            for (d, r) in dom.iter_mut().zip(g.row(x)) {
                *d |= r;
            }
        }
        for u in (0..n).filter(|&u| !bits::test(&dom, u) && !bits::test(cyc, u)) {
            for w in g.neighbours(u) {
                if bits::count(&and(g.row(w), cyc)) >= 2 {
                    return Some(Counterexample::NeighbourSeesTwo {
                        vertex: u,
                        via: w,
                        cycle: cycle.to_vec(),
                    });
                }
            }
            let mut seen: Option<(usize, usize)> = None;
            for &x in cycle {
                if let Some(w) = bits::first(&and(g.row(u), g.row(x))) {
                    if let Some((x0, w0)) = seen {
                        return Some(Counterexample::TwoCommonNeighbours {
                            vertex: u,
                            on_cycle: [x0, x],
                            via: [w0, w],
                            cycle: cycle.to_vec(),
                        });
                    }
                    seen = Some((x, w));
                }
            }
        }
        None
    });
    Verdict::new("common-neighbour", examined, hit)
}

/// Induced twin-free patterns never use two twins, so searching the quotient suffices.
fn forbid_induced(g: &Graph, pattern: &Graph, name: &str, statement: &str) -> Verdict {
    let tq = TwinQuotient::new(g);
    let reps = tq.representatives();
    let hit = find_induced_pattern(&tq.quotient, pattern).map(|w| Counterexample::InducedPattern {
        pattern: name.to_string(),
        vertices: w.vertices.iter().map(|&i| reps[i]).collect(),
    });
    Verdict::new(statement, 1, hit)
}

/// No induced 6-cycle.
pub fn check_induced_c6(g: &Graph) -> Verdict {
    forbid_induced(g, &crate::generators::cycle(6).unwrap(), "c6", "induced-c6")
}

/// No induced copy of two 7-cycles sharing a 3-edge path.
pub fn check_two_seven_cycles_lemma(g: &Graph) -> Verdict {
    forbid_induced(g, &two_seven_cycles_gadget(), "two-seven-cycles", "two-seven-cycles")
}

/// Ladder edges of the cyclic order `c`: the cycle plus its six long diagonals.
fn ladder_edges(c: &[usize]) -> Vec<(usize, usize)> {
    let mut e = Vec::with_capacity(18);
    for i in 0..12 {
        e.push(ord(c[i], c[(i + 1) % 12]));
    }
    for i in 0..6 {
        e.push(ord(c[i], c[i + 6]));
    }
    e.sort_unstable();
    e
}

fn ord(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// The 12 vertices induce exactly the ladder on `x1..x12` or on
/// `x2 x3 … x7 x1 x12 x11 … x8`.
fn induces_either_ladder(g: &Graph, x: &[usize]) -> bool {
    let mut induced = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            if g.has_edge(x[i], x[j]) {
                induced.push(ord(x[i], x[j]));
            }
        }
    }
    induced.sort_unstable();
    let other = [x[1], x[2], x[3], x[4], x[5], x[6], x[0], x[11], x[10], x[9], x[8], x[7]];
    induced == ladder_edges(x) || induced == ladder_edges(&other)
}

/// Every 12-cycle `x1..x12` with diagonals `x1x7` and `x2x8` induces a ladder on
/// one of the two named cyclic orders.
///
/// Seeds are 4-cycles `x1 x2 x8 x7`; the two 5-edge paths `x2..x7` and
/// `x8..x12 x1` are then filled in, pruned by exact walk-length reachability.
pub fn check_twelve_cycle_lemma(g: &Graph) -> Verdict {
    let n = g.order();
    if n < 12 {
        return Verdict::new("twelve-cycle-diagonals", 0, None);
    }
    let tq = TwinQuotient::new(g);
    // reach[b][v] bit t: a walk of length t from v to b (t ≤ 5)
    let reach: Vec<Vec<u8>> = (0..n)
        .map(|b| {
            let mut r = vec![0u8; n];
            r[b] = 1;
            for t in 1..=5 {
                let prev = r.clone();
                for v in 0..n {
                    if g.neighbours(v).any(|w| prev[w] >> (t - 1) & 1 == 1) {
                        r[v] |= 1 << t;
                    }
                }
            }
            r
        })
        .collect();
    let starts = tq.representatives();
    let results: Vec<(u64, Option<Counterexample>)> = starts
        .par_iter()
        .map(|&x1| {
            let mut used = vec![0u64; g.stride()];
            let mut x = [NONE; 12];
            let mut count = 0u64;
            bits::set(&mut used, x1);
            x[0] = x1;
            let hit = seed(g, &tq, &reach, &mut x, &mut used, &mut count);
            (count, hit)
        })
        .collect();
    let mut examined = 0;
    let mut first = None;
    for (c, h) in results {
        examined += c;
        if first.is_none() {
            first = h;
        }
    }
    Verdict::new("twelve-cycle-diagonals", examined, first)
}

fn candidates(g: &Graph, tq: &TwinQuotient, used: &[u64], from: usize) -> Vec<usize> {
    g.neighbours(from).filter(|&w| tq.next_in_class(used, w)).collect()
}

fn seed(
    g: &Graph,
    tq: &TwinQuotient,
    reach: &[Vec<u8>],
    x: &mut [usize; 12],
    used: &mut [u64],
    count: &mut u64,
) -> Option<Counterexample> {
    // choice order x1, x2, x7, x8 (indices 0, 1, 6, 7)
    for x2 in candidates(g, tq, used, x[0]) {
        x[1] = x2;
        bits::set(used, x2);
        for x7 in candidates(g, tq, used, x[0]) {
            x[6] = x7;
            bits::set(used, x7);
            for x8 in candidates(g, tq, used, x2).into_iter().filter(|&v| g.has_edge(v, x7)) {
                x[7] = x8;
                bits::set(used, x8);
                let hit = fill(g, tq, reach, x, used, count, 2);
                bits::clear(used, x8);
                if hit.is_some() {
                    return hit;
                }
            }
            bits::clear(used, x7);
        }
        bits::clear(used, x2);
    }
    None
}

/// Fills position `pos` of the cycle: 2..=5 on the path to `x7`, then 8..=11 on
/// the path back to `x1`.
fn fill(
    g: &Graph,
    tq: &TwinQuotient,
    reach: &[Vec<u8>],
    x: &mut [usize; 12],
    used: &mut [u64],
    count: &mut u64,
    pos: usize,
) -> Option<Counterexample> {
    if pos == 12 {
        *count += 1;
        if induces_either_ladder(g, x) {
            return None;
        }
        return Some(Counterexample::TwelveCycle { cycle: x.to_vec() });
    }
    if pos == 6 {
        return fill(g, tq, reach, x, used, count, 8);
    }
    let (target, end) = if pos < 6 { (x[6], 6) } else { (x[0], 12) };
    let steps_left = (end - pos) as u32;
    for w in candidates(g, tq, used, x[pos - 1]) {
        if reach[target][w] >> steps_left & 1 == 0 {
            continue;
        }
        x[pos] = w;
        bits::set(used, w);
        let hit = fill(g, tq, reach, x, used, count, pos + 1);
        bits::clear(used, w);
        if hit.is_some() {
            x[pos] = NONE;
            return hit;
        }
    }
    x[pos] = NONE;
    None
}
