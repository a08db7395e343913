//! Canonical forms, isomorphism tests and automorphism orbits.
//!
//! The search is individualisation-refinement over an equitable colouring.
//! Before searching, vertices with identical open (or closed) neighbourhoods
//! are collapsed into one weighted vertex, which keeps blow-ups cheap: their
//! automorphism groups are huge, but the collapsed pattern is small.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Total-order key identifying a graph (with optional vertex colours) up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode(Vec<u64>);

impl CanonicalCode {
    pub fn as_words(&self) -> &[u64] {
        &self.0
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalCode {
    canonical_labelling(g, None).0
}

pub fn canonical_form_coloured(g: &Graph, colours: &[u32]) -> CanonicalCode {
    canonical_labelling(g, Some(colours)).0
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && g.size() == h.size() && canonical_form(g) == canonical_form(h)
}

/// Canonical code together with a labelling `vertex -> canonical position`.
///
/// Two graphs with equal codes are mapped onto each other by composing their labellings.
pub fn canonical_labelling(g: &Graph, colours: Option<&[u32]>) -> (CanonicalCode, Vec<usize>) {
    let n = g.order();
    let base: Vec<u32> = match colours {
        Some(c) => {
            assert_eq!(c.len(), n, "one colour per vertex");
            c.to_vec()
        }
        None => vec![0; n],
    };
    let twins = TwinReduction::new(g, &base);
    let q = &twins.quotient;
    let m = q.order();

    // rank the class descriptors so colours are small dense integers
    let mut keys: Vec<(u32, u8, usize)> = twins.descriptor.clone();
    keys.sort_unstable();
    keys.dedup();
    let colour: Vec<u32> = twins
        .descriptor
        .iter()
        .map(|d| keys.binary_search(d).unwrap() as u32)
        .collect();

    let mut search = Search {
        g: q,
        best: None,
        autos: Vec::new(),
    };
    let mut col = colour.clone();
    refine(q, &mut col);
    search.descend(&mut Vec::new(), col);
    let (best_code, best_lab) = search.best.expect("search visits at least one leaf");

    let mut code = Vec::with_capacity(2 + 3 * m + best_code.len());
    code.push(n as u64);
    code.push(m as u64);
    let mut inv = vec![0usize; m];
    for (v, &p) in best_lab.iter().enumerate() {
        inv[p] = v;
    }
    for &v in &inv {
        let (c, kind, size) = twins.descriptor[v];
        code.push(c as u64);
        code.push(kind as u64);
        code.push(size as u64);
    }
    code.extend(best_code);

    // expand quotient positions to a labelling of the original vertices
    let mut lab = vec![0usize; n];
    let mut pos = 0;
    for &cls in &inv {
        for &v in &twins.classes[cls] {
            lab[v] = pos;
            pos += 1;
        }
    }
    (CanonicalCode(code), lab)
}

/// Orbit id per vertex under the automorphism group (the least vertex of each orbit).
pub fn orbits(g: &Graph) -> Vec<usize> {
    orbits_coloured(g, &vec![0; g.order()])
}

pub fn orbits_coloured(g: &Graph, colours: &[u32]) -> Vec<usize> {
    let n = g.order();
    let mut uf = UnionFind::new(n);
    let mut known: Vec<Option<(CanonicalCode, Vec<usize>)>> = vec![None; n];
    let mut cell: Vec<u32> = colours.to_vec();
    refine(g, &mut cell);
    for v in 0..n {
        if uf.find(v) != v {
            continue;
        }
        let mut ind = colours.iter().map(|&c| 2 * c).collect::<Vec<_>>();
        ind[v] += 1;
        let (code, lab) = canonical_labelling(g, Some(&ind));
        for u in 0..v {
            if cell[u] != cell[v] || uf.find(u) != u {
                continue;
            }
            let Some((cu, lu)) = &known[u] else { continue };
            if *cu == code {
                // lu^-1 ∘ lab maps v to u: merge the cycles of that automorphism
                let mut inv = vec![0usize; n];
                for (x, &p) in lu.iter().enumerate() {
                    inv[p] = x;
                }
                for x in 0..n {
                    uf.union(x, inv[lab[x]]);
                }
                break;
            }
        }
        known[v] = Some((code, lab));
    }
    (0..n).map(|v| uf.min_of(v)).collect()
}

/// One vertex per automorphism orbit, in increasing order.
pub fn orbit_representatives(g: &Graph) -> Vec<usize> {
    let o = orbits(g);
    (0..g.order()).filter(|&v| o[v] == v).collect()
}

struct TwinReduction {
    quotient: Graph,
    classes: Vec<Vec<usize>>,
    descriptor: Vec<(u32, u8, usize)>,
}

impl TwinReduction {
    fn new(g: &Graph, colour: &[u32]) -> Self {
        let n = g.order();
        let mut open: HashMap<(u32, &[u64]), Vec<usize>> = HashMap::new();
        for v in 0..n {
            open.entry((colour[v], g.row(v))).or_default().push(v);
        }
        let mut closed_rows: Vec<Vec<u64>> = (0..n).map(|v| g.row(v).to_vec()).collect();
        for (v, row) in closed_rows.iter_mut().enumerate() {
            crate::bits::set(row, v);
        }
        let mut closed: HashMap<(u32, &[u64]), Vec<usize>> = HashMap::new();
        for v in 0..n {
            closed.entry((colour[v], &closed_rows[v])).or_default().push(v);
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut descriptor = Vec::new();
        for v in 0..n {
            if class_of[v] != usize::MAX {
                continue;
            }
            let o = &open[&(colour[v], g.row(v))];
            let c = &closed[&(colour[v], closed_rows[v].as_slice())];
            let (members, kind) = if o.len() > 1 {
                (o.clone(), 1u8)
            } else if c.len() > 1 {
                (c.clone(), 2u8)
            } else {
                (vec![v], 0u8)
            };
            let id = classes.len();
            for &u in &members {
                class_of[u] = id;
            }
            descriptor.push((colour[v], kind, members.len()));
            classes.push(members);
        }
        let mut quotient = Graph::empty(classes.len());
        for (a, ca) in classes.iter().enumerate() {
            for (b, cb) in classes.iter().enumerate().skip(a + 1) {
                if g.has_edge(ca[0], cb[0]) {
                    quotient.link(a, b);
                }
            }
        }
        TwinReduction {
            quotient,
            classes,
            descriptor,
        }
    }
}

/// Equitable refinement: repeatedly split colour classes by neighbour-colour multisets.
/// The new colours are ranks of (old colour, sorted neighbour colours), hence label-invariant.
pub(crate) fn refine(g: &Graph, col: &mut [u32]) {
    let n = g.order();
    let mut distinct = count_distinct(col);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbours(v).map(|u| col[u]).collect();
                nb.sort_unstable();
                (col[v], nb, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            col[sigs[i].2] = rank;
        }
        let now = if n == 0 { 0 } else { rank as usize + 1 };
        if now == distinct {
            return;
        }
        distinct = now;
    }
}

fn count_distinct(col: &[u32]) -> usize {
    let mut c = col.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, path: &mut Vec<usize>, col: Vec<u32>) {
        let n = self.g.order();
        // first non-singleton cell in colour order
        let mut size = vec![0usize; n.max(1)];
        for &c in &col {
            size[c as usize] += 1;
        }
        let target = (0..n).find(|&c| size[c] > 1);
        let Some(target) = target else {
            self.leaf(col.iter().map(|&c| c as usize).collect());
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| col[v] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit_as_explored(path, v, &explored) {
                continue;
            }
            let mut child = col.clone();
            for c in child.iter_mut() {
                if *c as usize > target {
                    *c += 1;
                }
            }
            for &u in &cell {
                if u != v {
                    child[u] += 1;
                }
            }
            refine(self.g, &mut child);
            path.push(v);
            self.descend(path, child);
            path.pop();
            explored.push(v);
        }
    }

    fn same_orbit_as_explored(&self, path: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.g.order();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for a in &self.autos {
            if path.iter().all(|&p| a[p] == p) {
                any = true;
                for x in 0..n {
                    uf.union(x, a[x]);
                }
            }
        }
        any && explored.iter().any(|&u| uf.find(u) == uf.find(v))
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let code = adjacency_code(self.g, &lab);
        match &self.best {
            None => self.best = Some((code, lab)),
            Some((best, best_lab)) => match code.cmp(best) {
                Ordering::Greater => self.best = Some((code, lab)),
                Ordering::Equal => {
                    // best_lab^-1 ∘ lab is an automorphism
                    let n = lab.len();
                    let mut inv = vec![0usize; n];
                    for (x, &p) in best_lab.iter().enumerate() {
                        inv[p] = x;
                    }
                    let auto: Vec<usize> = (0..n).map(|x| inv[lab[x]]).collect();
                    if auto.iter().enumerate().any(|(i, &x)| i != x) {
                        self.autos.push(auto);
                    }
                }
                Ordering::Less => {}
            },
        }
    }
}

/// Upper triangle of the relabelled adjacency matrix, packed row by row.
fn adjacency_code(g: &Graph, lab: &[usize]) -> Vec<u64> {
    let n = g.order();
    let mut inv = vec![0usize; n];
    for (v, &p) in lab.iter().enumerate() {
        inv[p] = v;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for i in 0..n {
        let row = g.row(inv[i]);
        for &vj in inv.iter().skip(i + 1) {
            if crate::bits::test(row, vj) {
                out[k >> 6] |= 1 << (63 - (k & 63));
            }
            k += 1;
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so roots are orbit minima
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn min_of(&mut self, x: usize) -> usize {
        self.find(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_graph;

    fn cycle(n: usize) -> Graph {
        make_graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn relabelled_c7_has_same_code() {
        let c7 = cycle(7);
        let perm = [3, 6, 0, 5, 1, 4, 2];
        assert_eq!(canonical_form(&c7), canonical_form(&c7.permuted(&perm)));
    }

    #[test]
    fn c6_differs_from_two_triangles() {
        let two_c3 = cycle(3).disjoint_union(&cycle(3));
        assert_ne!(canonical_form(&cycle(6)), canonical_form(&two_c3));
    }

    #[test]
    fn blow_up_twins_are_collapsed_consistently() {
        // K_{3,4} under two labellings
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..7 {
                e.push((a, b));
            }
        }
        let g = make_graph(7, &e).unwrap();
        let h = g.permuted(&[6, 0, 3, 1, 5, 2, 4]);
        assert!(is_isomorphic(&g, &h));
        assert!(!is_isomorphic(&g, &make_graph(7, &e[..11]).unwrap()));
    }

    #[test]
    fn complete_graph_uses_closed_twins() {
        assert!(is_isomorphic(&Graph::complete(9), &Graph::complete(9)));
        assert_ne!(canonical_form(&Graph::complete(5)), canonical_form(&Graph::empty(5)));
    }

    #[test]
    fn orbits_of_path_and_cycle() {
        let p4 = make_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(orbits(&p4), vec![0, 1, 1, 0]);
        assert_eq!(orbit_representatives(&cycle(9)), vec![0]);
        let star = make_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(orbit_representatives(&star), vec![0, 1]);
    }

    #[test]
    fn labelling_maps_isomorphic_graphs_onto_each_other() {
        let g = cycle(8).with_edge(0, 4).unwrap();
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        let h = g.permuted(&perm);
        let (cg, lg) = canonical_labelling(&g, None);
        let (ch, lh) = canonical_labelling(&h, None);
        assert_eq!(cg, ch);
        let mut inv = vec![0; 8];
        for (x, &p) in lh.iter().enumerate() {
            inv[p] = x;
        }
        let iso: Vec<usize> = (0..8).map(|v| inv[lg[v]]).collect();
        assert_eq!(g.permuted(&iso), h);
    }
}
