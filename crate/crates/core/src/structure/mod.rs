//! Odd girth, freeness, saturation and the small structural predicates.

mod lemmas;
mod pattern;

pub use lemmas::{
    check_common_neighbour_obs, check_induced_c6, check_seven_cycle_domination,
    check_twelve_cycle_lemma, check_two_seven_cycles_lemma, check_well_behaved_cycles,
    is_well_behaved, two_seven_cycles_gadget, Counterexample, TwinQuotient, Verdict,
};
pub use pattern::{
    enumerate_cycles, find_induced_pattern, find_subgraph, for_each_embedding, PatternWitness,
};

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Length of a shortest odd cycle, or the bipartite marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OddGirth {
    Bipartite,
    Cycle(usize),
}

impl OddGirth {
    /// True when there is no odd cycle shorter than `bound`.
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            OddGirth::Bipartite => true,
            OddGirth::Cycle(l) => l >= bound,
        }
    }
}

/// Parity BFS: `dist[v][p]` is the length of a shortest walk from `s` to `v` of parity `p`.
pub(crate) fn parity_distances(g: &Graph, s: usize) -> Vec<[usize; 2]> {
    let n = g.order();
    let mut dist = vec![[usize::MAX; 2]; n];
    dist[s][0] = 0;
    let mut queue = std::collections::VecDeque::from([(s, 0usize)]);
    while let Some((v, p)) = queue.pop_front() {
        let d = dist[v][p];
        for w in g.neighbours(v) {
            if dist[w][1 - p] == usize::MAX {
                dist[w][1 - p] = d + 1;
                queue.push_back((w, 1 - p));
            }
        }
    }
    dist
}

pub fn odd_girth(g: &Graph) -> OddGirth {
    match shortest_odd_cycle(g) {
        Some(c) => OddGirth::Cycle(c.len()),
        None => OddGirth::Bipartite,
    }
}

/// A shortest odd cycle as a vertex sequence. A globally shortest odd closed walk
/// cannot revisit a vertex (it would split into a shorter odd closed walk), so the
/// walk recovered from the parity BFS is a cycle.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    let mut best: Option<(usize, usize)> = None;
    for s in 0..n {
        let d = parity_distances(g, s)[s][1];
        if d != usize::MAX && best.is_none_or(|(b, _)| d < b) {
            best = Some((d, s));
        }
    }
    let (len, s) = best?;
    // walk back from (s, odd) to (s, even) through predecessor states
    let dist = parity_distances(g, s);
    let mut walk = vec![s];
    let (mut v, mut p) = (s, 1usize);
    for step in (0..len).rev() {
        let u = g
            .neighbours(v)
            .find(|&u| dist[u][1 - p] == step)
            .expect("predecessor on a shortest parity walk");
        v = u;
        p = 1 - p;
        walk.push(v);
    }
    walk.pop();
    walk.reverse();
    Some(walk)
}

/// No odd cycle of length below `2ℓ+1`.
pub fn is_free(g: &Graph, ell: usize) -> bool {
    odd_girth(g).at_least(2 * ell + 1)
}

/// For a free graph: is `uv` a non-edge whose addition keeps the graph free?
/// That fails exactly when some even walk of length at most `2ℓ−2` joins `u` and `v`.
fn addable_from(g: &Graph, ell: usize, dist: &[[usize; 2]], u: usize, v: usize) -> bool {
    u != v && !g.has_edge(u, v) && dist[v][0] > 2 * ell - 2
}

/// First pair (lexicographically) that could be added without creating a short odd cycle.
pub fn first_addable_edge(g: &Graph, ell: usize) -> Option<(usize, usize)> {
    for u in 0..g.order() {
        let dist = parity_distances(g, u);
        if let Some(v) = (u + 1..g.order()).find(|&v| addable_from(g, ell, &dist, u, v)) {
            return Some((u, v));
        }
    }
    None
}

/// Free and edge-maximal with respect to `{C3, …, C_{2ℓ−1}}`.
pub fn is_maximal_free(g: &Graph, ell: usize) -> bool {
    is_free(g, ell) && first_addable_edge(g, ell).is_none()
}

/// Adds edges in lexicographic pair order until no further edge can be added.
/// A single pass suffices: adding edges only shortens walks, so a rejected
/// pair stays rejected.
pub fn saturate(g: &Graph, ell: usize) -> Result<Graph> {
    if ell < 2 {
        return Err(Error::Parameter(format!("ell must be at least 2, got {ell}")));
    }
    if let Some(c) = shortest_odd_cycle(g).filter(|c| c.len() < 2 * ell + 1) {
        return Err(Error::Premise(format!(
            "input contains the odd cycle {c:?} of length {} < {}",
            c.len(),
            2 * ell + 1
        )));
    }
    let mut h = g.clone();
    for u in 0..h.order() {
        let mut dist = parity_distances(&h, u);
        for v in u + 1..h.order() {
            if addable_from(&h, ell, &dist, u, v) {
                h.link(u, v);
                dist = parity_distances(&h, u);
            }
        }
    }
    Ok(h)
}

/// Maximum over vertices of the number of incident edges lying on a triangle,
/// with the first vertex attaining it.
pub fn triangular_edge_bound(g: &Graph) -> (usize, Option<usize>) {
    let mut best = (0, None);
    for v in 0..g.order() {
        let t = g
            .neighbours(v)
            .filter(|&w| bits::intersects(g.row(v), g.row(w)))
            .count();
        if best.1.is_none() || t > best.0 {
            best = (t, Some(v));
        }
    }
    best
}

/// A set `X` with `|X| ≥ n/2` in which every vertex has a neighbour outside `X`,
/// built component by component: take a vertex `u` whose removal keeps the
/// component connected and a neighbour `v`, recurse on the components of the
/// rest, adopt singleton components outright, and add `u`.
pub fn half_set(h: &Graph) -> Result<VertexSet> {
    if let Some(v) = (0..h.order()).find(|&v| h.degree(v) == 0) {
        return Err(Error::Premise(format!("vertex {v} is isolated")));
    }
    let mut out = VertexSet::empty(h.order());
    let all: Vec<usize> = (0..h.order()).collect();
    for comp in components_within(h, &all) {
        half_set_connected(h, &comp, &mut out);
    }
    Ok(out)
}

fn components_within(h: &Graph, vertices: &[usize]) -> Vec<Vec<usize>> {
    let sub = h.induced(vertices);
    sub.components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| vertices[i]).collect())
        .collect()
}

fn half_set_connected(h: &Graph, comp: &[usize], out: &mut VertexSet) {
    debug_assert!(comp.len() >= 2);
    let sub = h.induced(comp);
    let cut = sub.cut_vertices();
    let ui = (0..comp.len()).find(|&i| !cut[i]).expect("every connected graph has a non-cut vertex");
    let u = comp[ui];
    let v = h
        .neighbours(u)
        .filter(|w| comp.contains(w))
        .last()
        .expect("component of order >= 2");
    let rest: Vec<usize> = comp.iter().copied().filter(|&x| x != u && x != v).collect();
    for part in components_within(h, &rest) {
        if part.len() == 1 {
            out.insert(part[0]);
        } else {
            half_set_connected(h, &part, out);
        }
    }
    out.insert(u);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{andrasfai, cycle, grotzsch, path};
    use crate::graph::make_graph;

    fn k33() -> Graph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        make_graph(6, &e).unwrap()
    }

    #[test]
    fn odd_girth_examples() {
        assert_eq!(odd_girth(&cycle(7).unwrap()), OddGirth::Cycle(7));
        assert_eq!(odd_girth(&k33()), OddGirth::Bipartite);
        assert_eq!(odd_girth(&grotzsch()), OddGirth::Cycle(5));
        let c = shortest_odd_cycle(&grotzsch()).unwrap();
        assert_eq!(c.len(), 5);
        for i in 0..5 {
            assert!(grotzsch().has_edge(c[i], c[(i + 1) % 5]));
        }
    }

    #[test]
    fn freeness_examples() {
        assert!(is_free(&cycle(7).unwrap(), 3));
        assert!(!is_free(&grotzsch(), 3));
        assert!(is_free(&andrasfai(4, 3).unwrap(), 3));
        assert!(is_maximal_free(&andrasfai(4, 3).unwrap(), 3));
    }

    #[test]
    fn saturation_examples() {
        let c7 = cycle(7).unwrap();
        assert_eq!(saturate(&c7, 3).unwrap(), c7);
        let sat = saturate(&cycle(6).unwrap(), 3).unwrap();
        assert!(crate::canon::is_isomorphic(&sat, &k33()));
        let k2 = Graph::complete(2);
        assert_eq!(saturate(&k2, 3).unwrap(), k2);
        assert!(matches!(saturate(&grotzsch(), 3), Err(Error::Premise(_))));
    }

    #[test]
    fn saturation_is_idempotent_and_maximal() {
        let g = path(9).unwrap();
        let s = saturate(&g, 3).unwrap();
        assert!(is_maximal_free(&s, 3));
        assert_eq!(saturate(&s, 3).unwrap(), s);
        for (u, v) in g.edges() {
            assert!(s.has_edge(u, v));
        }
    }

    #[test]
    fn triangular_edges() {
        assert_eq!(triangular_edge_bound(&Graph::complete(3)).0, 2);
        assert_eq!(triangular_edge_bound(&cycle(7).unwrap()).0, 0);
        assert_eq!(triangular_edge_bound(&Graph::complete(4)), (3, Some(0)));
    }

    fn half_set_ok(h: &Graph, x: &VertexSet) -> bool {
        2 * x.len() >= h.order() && x.iter().all(|v| h.neighbours(v).any(|w| !x.contains(w)))
    }

    #[test]
    fn half_set_examples() {
        let k2 = Graph::complete(2);
        let x = half_set(&k2).unwrap();
        assert_eq!(x.len(), 1);
        let p4 = path(4).unwrap();
        assert!(half_set_ok(&p4, &half_set(&p4).unwrap()));
        let c4 = cycle(4).unwrap();
        let x = half_set(&c4).unwrap().to_vec();
        assert_eq!(x.len(), 2);
        assert!(c4.has_edge(x[0], x[1]));
        assert!(matches!(half_set(&Graph::empty(3)), Err(Error::Premise(_))));
    }
}
