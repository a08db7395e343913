//! Homomorphism search, folding onto Andrásfai graphs, cores and chromatic number.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::canon::orbit_representatives;
use crate::error::{Error, Result};
use crate::generators::andrasfai;
use crate::graph::Graph;
use crate::structure::{find_subgraph, first_addable_edge, shortest_odd_cycle, PatternWitness};

/// Vertex map `map[v]` from a source graph into a target graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

/// Outcome of a bounded search. `Absent` is only reported after the whole tree
/// was explored without hitting the node budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HomSearch {
    Found { hom: Homomorphism, nodes: u64 },
    Absent { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl HomSearch {
    pub fn hom(&self) -> Option<&Homomorphism> {
        match self {
            HomSearch::Found { hom, .. } => Some(hom),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, HomSearch::Absent { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            HomSearch::Found { nodes, .. }
            | HomSearch::Absent { nodes }
            | HomSearch::BudgetExhausted { nodes } => *nodes,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomOptions {
    /// Maximum number of search nodes (assignments tried); `None` is unlimited.
    pub budget: Option<u64>,
    /// Restrict the first vertex of each source component to one vertex per
    /// target orbit. Sound for existence; turn off to explore every map.
    pub symmetry_breaking: bool,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions {
            budget: None,
            symmetry_breaking: true,
        }
    }
}

pub fn find_hom(g: &Graph, h: &Graph, budget: Option<u64>) -> HomSearch {
    find_hom_with(
        g,
        h,
        HomOptions {
            budget,
            ..HomOptions::default()
        },
    )
}

/// Backtracking over source vertices in a fixed order (most placed neighbours,
/// then highest degree), with arc consistency after every assignment.
///
/// The only degree filter used is that a non-isolated source vertex cannot map
/// to an isolated target vertex; a homomorphism may lower degrees arbitrarily.
pub fn find_hom_with(g: &Graph, h: &Graph, opts: HomOptions) -> HomSearch {
    let n = g.order();
    if n == 0 {
        return HomSearch::Found {
            hom: Homomorphism { map: vec![] },
            nodes: 0,
        };
    }
    let hn = h.order();
    let mut nonisolated = vec![0u64; h.stride()];
    let mut everything = vec![0u64; h.stride()];
    for b in 0..hn {
        bits::set(&mut everything, b);
        if h.degree(b) > 0 {
            bits::set(&mut nonisolated, b);
        }
    }
    let mut dom: Vec<Vec<u64>> = (0..n)
        .map(|v| if g.degree(v) > 0 { nonisolated.clone() } else { everything.clone() })
        .collect();
    let mut s = Search {
        g,
        h,
        order: search_order(g),
        first_in_component: vec![false; n],
        reps: if opts.symmetry_breaking {
            let mut r = vec![0u64; h.stride()];
            for b in orbit_representatives(h) {
                bits::set(&mut r, b);
            }
            Some(r)
        } else {
            None
        },
        budget: opts.budget,
        nodes: 0,
        cut: false,
        map: vec![usize::MAX; n],
    };
    let mut placed = vec![false; n];
    for &v in &s.order {
        if !g.neighbours(v).any(|w| placed[w]) {
            s.first_in_component[v] = true;
        }
        placed[v] = true;
    }
    if !s.propagate(&mut dom, (0..n).collect()) {
        return HomSearch::Absent { nodes: 0 };
    }
    let found = s.dfs(0, &mut dom);
    if found {
        HomSearch::Found {
            hom: Homomorphism { map: s.map },
            nodes: s.nodes,
        }
    } else if s.cut {
        HomSearch::BudgetExhausted { nodes: s.nodes }
    } else {
        HomSearch::Absent { nodes: s.nodes }
    }
}

fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for w in g.neighbours(v) {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    first_in_component: Vec<bool>,
    reps: Option<Vec<u64>>,
    budget: Option<u64>,
    nodes: u64,
    cut: bool,
    map: Vec<usize>,
}

impl Search<'_> {
    /// Union of target neighbourhoods over a domain.
    fn support(&self, d: &[u64]) -> Vec<u64> {
        let mut s = vec![0u64; self.h.stride()];
        for b in bits::ones(d) {
            for (x, r) in s.iter_mut().zip(self.h.row(b)) {
                *x |= r;
            }
        }
        s
    }

    /// AC-3 from the given changed vertices; false on a wiped-out domain.
    fn propagate(&self, dom: &mut [Vec<u64>], changed: Vec<usize>) -> bool {
        let n = self.g.order();
        let mut queued = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        for v in changed {
            if !queued[v] {
                queued[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(x) = queue.pop_front() {
            queued[x] = false;
            let sup = self.support(&dom[x]);
            for w in self.g.neighbours(x) {
                let mut shrunk = false;
                for (d, s) in dom[w].iter_mut().zip(&sup) {
                    let nd = *d & s;
                    shrunk |= nd != *d;
                    *d = nd;
                }
                if shrunk {
                    if bits::is_empty(&dom[w]) {
                        return false;
                    }
                    if !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize, dom: &mut Vec<Vec<u64>>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let mut cand = dom[v].clone();
        if self.first_in_component[v] {
            if let Some(r) = &self.reps {
                for (c, x) in cand.iter_mut().zip(r) {
                    *c &= x;
                }
            }
        }
        for b in bits::ones(&cand).collect::<Vec<_>>() {
            if self.budget.is_some_and(|lim| self.nodes >= lim) {
                self.cut = true;
                return false;
            }
            self.nodes += 1;
            let mut next = dom.clone();
            next[v].iter_mut().for_each(|x| *x = 0);
            bits::set(&mut next[v], b);
            if self.propagate(&mut next, vec![v]) {
                self.map[v] = b;
                if self.dfs(depth + 1, &mut next) {
                    return true;
                }
                if self.cut {
                    return false;
                }
            }
        }
        self.map[v] = usize::MAX;
        false
    }
}

/// True iff every source edge maps onto a target edge. A map of the wrong
/// length, or with an image outside the target, is an error.
pub fn verify_hom(g: &Graph, h: &Graph, f: &Homomorphism) -> Result<bool> {
    if f.map.len() != g.order() {
        return Err(Error::PartialMap {
            expected: g.order(),
            got: f.map.len(),
        });
    }
    if let Some(&b) = f.map.iter().find(|&&b| b >= h.order()) {
        return Err(Error::VertexOutOfRange {
            vertex: b,
            order: h.order(),
        });
    }
    Ok(g.edges().into_iter().all(|(u, v)| h.has_edge(f.map[u], f.map[v])))
}

/// A graph is a core when every endomorphism is bijective, i.e. it has no
/// homomorphism into itself with one vertex deleted. One vertex per orbit suffices.
pub fn is_core(g: &Graph) -> bool {
    orbit_representatives(g)
        .into_iter()
        .all(|v| !matches!(find_hom(g, &g.without_vertex(v), None), HomSearch::Found { .. }))
}

pub const CHROMATIC_BOUND: usize = 32;

/// Exact chromatic number by DSATUR branch and bound.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > CHROMATIC_BOUND {
        return Err(Error::TooLarge {
            order: n,
            bound: CHROMATIC_BOUND,
            hint: "use a homomorphism into a known graph for an upper bound instead".into(),
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut colour = vec![usize::MAX; n];
    let mut best = n + 1;
    dsatur(g, &mut colour, 0, 0, &mut best);
    Ok(best)
}

fn dsatur(g: &Graph, colour: &mut [usize], coloured: usize, used: usize, best: &mut usize) {
    let n = g.order();
    if used >= *best {
        return;
    }
    if coloured == n {
        *best = used;
        return;
    }
    // uncoloured vertex with most distinct neighbour colours, then highest degree
    let mut pick = usize::MAX;
    let mut key = (0, 0);
    let mut pick_mask = 0u64;
    for v in (0..n).filter(|&v| colour[v] == usize::MAX) {
        let mask = g
            .neighbours(v)
            .filter(|&w| colour[w] != usize::MAX)
            .fold(0u64, |m, w| m | 1 << colour[w]);
        let k = (mask.count_ones() as usize, g.degree(v));
        if pick == usize::MAX || k > key {
            pick = v;
            key = k;
            pick_mask = mask;
        }
    }
    for c in 0..=used.min(n - 1) {
        if pick_mask >> c & 1 == 1 {
            continue;
        }
        let new_used = used.max(c + 1);
        if new_used >= *best {
            break;
        }
        colour[pick] = c;
        dsatur(g, colour, coloured + 1, new_used, best);
        colour[pick] = usize::MAX;
    }
}

/// Result of folding a graph onto the smallest possible Andrásfai graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldResult {
    /// Least level with a homomorphism (1 means bipartite, via `K2`).
    pub k: Option<usize>,
    pub hom: Option<Homomorphism>,
    pub k_max: usize,
    /// A copy of `F_{k_max+1}` when no level up to `k_max` admits a homomorphism.
    pub fk_witness: Option<PatternWitness>,
    /// Levels whose search hit the node budget (so minimality of `k` is unproven there).
    pub budget_cut: Vec<usize>,
    /// `Z_i = X_i ∪ Y_i` class partition from the structural construction.
    pub classes: Option<Vec<Vec<usize>>>,
    /// Why the structural construction produced no partition, when requested.
    pub structural_note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldOptions {
    pub ell: usize,
    pub k_max: Option<usize>,
    pub budget: Option<u64>,
    pub structural: bool,
}

impl Default for FoldOptions {
    fn default() -> Self {
        FoldOptions {
            ell: 3,
            k_max: None,
            budget: None,
            structural: false,
        }
    }
}

/// Default fold bound: the largest level whose Andrásfai graph could fit in `n` vertices,
/// rounded up.
pub fn default_k_max(n: usize, ell: usize) -> usize {
    let step = 2 * ell - 1;
    n.saturating_sub(2).div_ceil(step) + 1
}

/// Smallest `k ≤ k_max` with `G → F_k^ℓ`, found by the generic search; the
/// input must be maximal free.
pub fn fold_to_andrasfai(g: &Graph, opts: FoldOptions) -> Result<FoldResult> {
    let ell = opts.ell;
    if ell < 2 {
        return Err(Error::Parameter(format!("ell must be at least 2, got {ell}")));
    }
    if let Some(c) = shortest_odd_cycle(g).filter(|c| c.len() < 2 * ell + 1) {
        return Err(Error::Premise(format!(
            "not free: odd cycle {c:?} of length {}",
            c.len()
        )));
    }
    if let Some((u, v)) = first_addable_edge(g, ell) {
        return Err(Error::Premise(format!(
            "not maximal: the edge {u}-{v} can be added without creating a short odd cycle"
        )));
    }
    let k_max = opts.k_max.unwrap_or_else(|| default_k_max(g.order(), ell));
    let mut out = FoldResult {
        k: None,
        hom: None,
        k_max,
        fk_witness: None,
        budget_cut: vec![],
        classes: None,
        structural_note: None,
    };
    if let Some(col) = g.two_colouring() {
        out.k = Some(1);
        out.hom = Some(Homomorphism { map: col });
        return Ok(out);
    }
    for k in 2..=k_max {
        let target = andrasfai(k, ell)?;
        match find_hom(g, &target, opts.budget) {
            HomSearch::Found { hom, .. } => {
                out.k = Some(k);
                out.hom = Some(hom);
                break;
            }
            HomSearch::BudgetExhausted { .. } => out.budget_cut.push(k),
            HomSearch::Absent { .. } => {}
        }
    }
    match out.k {
        None => {
            let next = andrasfai(k_max + 1, ell)?;
            out.fk_witness = find_subgraph(g, &next).map(|w| PatternWitness::new(format!("F_{}", k_max + 1), w.vertices));
        }
        Some(k) if opts.structural => {
            if ell != 3 || k < 2 {
                out.structural_note = Some("structural mode covers odd girth 7 and k >= 2 only".into());
            } else {
                match structural_classes(g, k) {
                    Ok(z) => out.classes = Some(z),
                    Err(note) => out.structural_note = Some(note),
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Builds `Z_i = X_i ∪ Y_i` for a graph containing `F_m`: a vertex-maximal
/// blow-up `X` of a copy of `F_m`, then each leftover vertex goes to `Y_i` when
/// it is joined to `X_{i+1}, X_{i+6}, …, X_{i+1+5(m−2)}`. The partition is
/// checked to be a blow-up pattern of `F_m` (independent classes, edges only
/// between adjacent indices).
pub fn structural_classes(g: &Graph, m: usize) -> std::result::Result<Vec<Vec<usize>>, String> {
    let f = andrasfai(m, 3).map_err(|e| e.to_string())?;
    let classes_n = f.order();
    let copy = find_subgraph(g, &f).ok_or_else(|| format!("no copy of F_{m} found"))?;
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut x: Vec<Vec<usize>> = vec![vec![]; classes_n];
    for (i, &v) in copy.vertices.iter().enumerate() {
        x[i].push(v);
        label[v] = i;
    }
    let joined = |u: usize, set: &[usize]| set.iter().all(|&w| g.has_edge(u, w));
    // greedy maximal extension; joins only get harder as classes grow
    loop {
        let mut grew = false;
        for u in 0..n {
            if label[u] != usize::MAX {
                continue;
            }
            if let Some(i) = (0..classes_n).find(|&i| f.neighbours(i).all(|j| joined(u, &x[j]))) {
                x[i].push(u);
                label[u] = i;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut z = x.clone();
    for u in 0..n {
        if label[u] != usize::MAX {
            continue;
        }
        let i = (0..classes_n)
            .find(|&i| (0..m - 1).all(|t| joined(u, &x[(i + 1 + 5 * t) % classes_n])))
            .ok_or_else(|| format!("vertex {u} is joined to no admissible class pattern"))?;
        z[i].push(u);
    }
    for (i, c) in z.iter().enumerate() {
        for &u in c {
            label[u] = i;
        }
    }
    if !verify_hom(g, &f, &Homomorphism { map: label }).unwrap_or(false) {
        return Err("Z classes do not form a blow-up pattern of F_m".into());
    }
    for c in &mut z {
        c.sort_unstable();
    }
    Ok(z)
}
