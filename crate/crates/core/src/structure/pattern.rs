//! Embedding search for small patterns and cycle enumeration.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::graph::Graph;

/// Vertex tuple in a host graph realising a named pattern; `vertices[i]` is the
/// image of pattern vertex `i` (for cycles, the cycle in order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternWitness {
    pub kind: String,
    pub vertices: Vec<usize>,
}

impl PatternWitness {
    pub fn new(kind: impl Into<String>, vertices: Vec<usize>) -> Self {
        PatternWitness {
            kind: kind.into(),
            vertices,
        }
    }

    /// Re-checks that the tuple is injective and realises `pattern` in `host`
    /// (exactly, when `induced`).
    pub fn realises(&self, host: &Graph, pattern: &Graph, induced: bool) -> bool {
        let vs = &self.vertices;
        if vs.len() != pattern.order() || vs.iter().any(|&v| v >= host.order()) {
            return false;
        }
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if vs[i] == vs[j] {
                    return false;
                }
                let (p, h) = (pattern.has_edge(i, j), host.has_edge(vs[i], vs[j]));
                if (p && !h) || (induced && h && !p) {
                    return false;
                }
            }
        }
        true
    }

    /// True when the tuple is a cycle of the host (consecutive and closing pairs adjacent).
    pub fn is_cycle_in(&self, host: &Graph) -> bool {
        let vs = &self.vertices;
        let k = vs.len();
        if k < 3 || vs.iter().any(|&v| v >= host.order()) {
            return false;
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == k && (0..k).all(|i| host.has_edge(vs[i], vs[(i + 1) % k]))
    }
}

/// Pattern vertices ordered so each one (after the first of its component) has a
/// placed neighbour; ties prefer more placed neighbours, then higher degree.
fn pivot_order(p: &Graph) -> Vec<usize> {
    let m = p.order();
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    while order.len() < m {
        let next = (0..m)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = p.neighbours(v).filter(|&u| placed[u]).count();
                (links, p.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Calls `visit` on every injective embedding of `pattern` into `host` (induced or
/// not); `visit` returns `false` to stop. Returns whether the search was stopped.
pub fn for_each_embedding(
    host: &Graph,
    pattern: &Graph,
    induced: bool,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    let m = pattern.order();
    if m > host.order() {
        return false;
    }
    if m == 0 {
        return !visit(&[]);
    }
    let order = pivot_order(pattern);
    let w = host.stride();
    let host_deg = host.degrees();
    let mut eligible = vec![bits::full(host.order()); m];
    for (p, row) in eligible.iter_mut().enumerate() {
        for v in 0..host.order() {
            if host_deg[v] < pattern.degree(p) {
                bits::clear(row, v);
            }
        }
    }
    let mut image = vec![usize::MAX; m];
    let mut used = vec![0u64; w];
    let mut stopped = false;
    search(
        host, pattern, induced, &order, 0, &eligible, &mut image, &mut used, &mut visit,
        &mut stopped,
    );
    stopped
}

#[allow(clippy::too_many_arguments)]
fn search(
    host: &Graph,
    pattern: &Graph,
    induced: bool,
    order: &[usize],
    depth: usize,
    eligible: &[Vec<u64>],
    image: &mut [usize],
    used: &mut [u64],
    visit: &mut impl FnMut(&[usize]) -> bool,
    stopped: &mut bool,
) {
    if depth == order.len() {
        if !visit(image) {
            *stopped = true;
        }
        return;
    }
    let p = order[depth];
    let mut cand = eligible[p].clone();
    for (c, u) in cand.iter_mut().zip(used.iter()) {
        *c &= !u;
    }
    for &q in &order[..depth] {
        let row = host.row(image[q]);
        if pattern.has_edge(p, q) {
            for (c, r) in cand.iter_mut().zip(row) {
                *c &= r;
            }
        } else if induced {
            for (c, r) in cand.iter_mut().zip(row) {
                *c &= !r;
            }
        }
    }
    let cands: Vec<usize> = bits::ones(&cand).collect();
    for v in cands {
        image[p] = v;
        bits::set(used, v);
        search(
            host,
            pattern,
            induced,
            order,
            depth + 1,
            eligible,
            image,
            used,
            visit,
            stopped,
        );
        bits::clear(used, v);
        image[p] = usize::MAX;
        if *stopped {
            return;
        }
    }
}

/// An induced copy of `pattern` in `host`, or `None` after exhaustive search.
pub fn find_induced_pattern(host: &Graph, pattern: &Graph) -> Option<PatternWitness> {
    find_embedding(host, pattern, true)
}

/// A (not necessarily induced) copy of `pattern` in `host`.
pub fn find_subgraph(host: &Graph, pattern: &Graph) -> Option<PatternWitness> {
    find_embedding(host, pattern, false)
}

fn find_embedding(host: &Graph, pattern: &Graph, induced: bool) -> Option<PatternWitness> {
    let mut found = None;
    for_each_embedding(host, pattern, induced, |img| {
        found = Some(img.to_vec());
        false
    });
    found.map(|v| {
        PatternWitness::new(
            if induced { "induced-pattern" } else { "subgraph" },
            v,
        )
    })
}

/// All cycles of length `len`, one per vertex set and cyclic order, written with
/// the smallest vertex first and the smaller of its two cycle neighbours second.
pub fn enumerate_cycles(g: &Graph, len: usize) -> Vec<PatternWitness> {
    assert!(len >= 3, "cycles have length at least 3");
    let n = g.order();
    let mut out = Vec::new();
    for s in 0..n {
        // distances from s inside the vertices >= s bound how far a path may wander
        let allowed: Vec<usize> = (s..n).collect();
        let sub = g.induced(&allowed);
        let dist = bfs(&sub, 0);
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        extend_cycle(g, s, len, &dist, &mut path, &mut on_path, &mut out);
    }
    out
}

fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.order()];
    d[s] = 0;
    let mut q = std::collections::VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for w in g.neighbours(v) {
            if d[w] == usize::MAX {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

fn extend_cycle(
    g: &Graph,
    s: usize,
    len: usize,
    dist: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<PatternWitness>,
) {
    let last = *path.last().unwrap();
    if path.len() == len {
        if g.has_edge(last, s) && path[1] < path[len - 1] {
            out.push(PatternWitness::new(format!("cycle-{len}"), path.clone()));
        }
        return;
    }
    let remaining = len - path.len();
    for w in g.neighbours(last) {
        if w <= s || on_path[w] || dist[w - s] > remaining {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        extend_cycle(g, s, len, dist, path, on_path, out);
        on_path[w] = false;
        path.pop();
    }
}
