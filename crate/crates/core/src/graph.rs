//! Immutable simple undirected graphs on the dense vertex range `0..n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};

/// A subset of the vertex range of some graph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; bits::words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            universe,
            words: bits::full(universe),
        }
    }

    pub fn from_iter_in(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(universe);
        for v in members {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: universe,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_words(universe: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), bits::words_for(universe));
        VertexSet { universe, words }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && bits::test(&self.words, v)
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        bits::set(&mut self.words, v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            bits::clear(&mut self.words, v);
        }
    }

    pub fn len(&self) -> usize {
        bits::count(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        bits::is_empty(&self.words)
    }

    pub fn iter(&self) -> bits::Ones<'_> {
        bits::ones(&self.words)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        bits::is_subset(&self.words, &other.words)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph. Adjacency rows are stored as contiguous bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating repeated pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        let stride = bits::words_for(n);
        Graph {
            n,
            stride,
            rows: vec![0; stride * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        g
    }

    pub(crate) fn link(&mut self, u: usize, v: usize) {
        let s = self.stride;
        bits::set(&mut self.rows[u * s..(u + 1) * s], v);
        bits::set(&mut self.rows[v * s..(v + 1) * s], u);
    }

    pub(crate) fn unlink(&mut self, u: usize, v: usize) {
        let s = self.stride;
        bits::clear(&mut self.rows[u * s..(u + 1) * s], v);
        bits::clear(&mut self.rows[v * s..(v + 1) * s], u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && bits::test(self.row(u), v)
    }

    pub fn neighbourhood(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn neighbours(&self, v: usize) -> bits::Ones<'_> {
        bits::ones(self.row(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn size(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbours(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> Result<usize> {
        (0..self.n).map(|v| self.degree(v)).min().ok_or(Error::EmptyGraph)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    /// Graph obtained by adding the edge `uv`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                order: self.n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let mut g = self.clone();
        g.link(u, v);
        Ok(g)
    }

    /// Subgraph induced on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.link(i, j);
                }
            }
        }
        g
    }

    /// Graph with vertex `v` deleted; remaining vertices keep their relative order.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.link(perm[u], perm[v]);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::complete(self.n);
        for (u, v) in self.edges() {
            g.unlink(u, v);
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.link(u, v);
        }
        for (u, v) in other.edges() {
            g.link(u + self.n, v + self.n);
        }
        g
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbours(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// A proper 2-colouring if one exists.
    pub fn two_colouring(&self) -> Option<Vec<usize>> {
        let mut colour = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != usize::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbours(u) {
                    if colour[w] == usize::MAX {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// Vertices whose removal disconnects their component.
    pub fn cut_vertices(&self) -> Vec<bool> {
        // iterative Tarjan low-link
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, usize::MAX, self.neighbours(root).collect(), 0));
            let mut root_children = 0;
            while let Some(frame) = stack.last_mut() {
                let (u, parent) = (frame.0, frame.1);
                if frame.3 < frame.2.len() {
                    let w = frame.2[frame.3];
                    frame.3 += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, self.neighbours(w).collect(), 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = stack.last() {
                        let p = p.0;
                        low[p] = low[p].min(low[u]);
                        if p != root && low[u] >= disc[p] {
                            cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                cut[root] = true;
            }
        }
        cut
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Builds a graph from `n` and an edge list. See [`Graph::new`].
pub fn make_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edges)
}

pub fn min_degree(g: &Graph) -> Result<usize> {
    g.min_degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_from_single_edge() {
        let g = make_graph(2, &[(0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn single_vertex() {
        let g = make_graph(1, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.size(), 0);
        assert_eq!(min_degree(&g).unwrap(), 0);
    }

    #[test]
    fn duplicate_pairs_collapse() {
        let g = make_graph(4, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            make_graph(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        );
        assert_eq!(make_graph(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(min_degree(&Graph::empty(0)), Err(Error::EmptyGraph));
    }

    #[test]
    fn min_degree_examples() {
        let c7 = make_graph(7, &(0..7).map(|i| (i, (i + 1) % 7)).collect::<Vec<_>>()).unwrap();
        assert_eq!(min_degree(&c7).unwrap(), 2);
        let star = make_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(min_degree(&star).unwrap(), 1);
    }

    #[test]
    fn cut_vertices_of_path_and_cycle() {
        let p4 = make_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.cut_vertices(), vec![false, true, true, false]);
        let c5 = make_graph(5, &(0..5).map(|i| (i, (i + 1) % 5)).collect::<Vec<_>>()).unwrap();
        assert!(c5.cut_vertices().iter().all(|&c| !c));
        let bowtie = make_graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(bowtie.cut_vertices(), vec![false, false, true, false, false]);
    }

    #[test]
    fn wide_graphs_span_multiple_words() {
        let n = 130;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = make_graph(n, &edges).unwrap();
        assert!(g.is_regular(2));
        assert!(g.is_connected());
        assert_eq!(g.neighbours(129).collect::<Vec<_>>(), vec![0, 128]);
    }
}
