//! Constructions of the graph families used throughout the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parameters of the generalised Andrásfai graph `F_k^ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AndrasfaiParams {
    pub k: usize,
    pub ell: usize,
}

impl AndrasfaiParams {
    pub fn new(k: usize, ell: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("level k must be at least 1".into()));
        }
        if ell < 2 {
            return Err(Error::Parameter(format!("ell must be at least 2, got {ell}")));
        }
        Ok(AndrasfaiParams { k, ell })
    }

    /// Cycle length `(2ℓ−1)(k−1)+2`.
    pub fn order(&self) -> usize {
        (2 * self.ell - 1) * (self.k - 1) + 2
    }
}

/// `F_k^ℓ`: vertices `0..N`, with `i ~ j` iff `|i − j| ≡ 1 (mod 2ℓ−1)`.
pub fn andrasfai(k: usize, ell: usize) -> Result<Graph> {
    let p = AndrasfaiParams::new(k, ell)?;
    let n = p.order();
    let m = 2 * ell - 1;
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if (j - i) % m == 1 {
                g.link(i, j);
            }
        }
    }
    Ok(g)
}

/// Complement of the `p`-th power of `C_N`: `i ~ j` iff their cyclic distance exceeds `p`.
pub fn complement_power_cycle(n: usize, p: usize) -> Result<Graph> {
    if n < 3 || p < 1 {
        return Err(Error::Parameter(format!(
            "need N >= 3 and p >= 1, got N={n}, p={p}"
        )));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let d = (j - i).min(n - (j - i));
            if d > p {
                g.link(i, j);
            }
        }
    }
    Ok(g)
}

/// Mycielski graph: `V ∪ V′ ∪ {z}` where `u′` copies the neighbourhood of `u`
/// and `z` is joined to every `u′`. Vertex `u′` is `n + u`, `z` is `2n`.
pub fn mycielski(g: &Graph) -> Graph {
    let n = g.order();
    let mut m = Graph::empty(2 * n + 1);
    for (u, v) in g.edges() {
        m.link(u, v);
        m.link(n + u, v);
        m.link(n + v, u);
    }
    for u in 0..n {
        m.link(n + u, 2 * n);
    }
    m
}

/// `T_ℓ`: `K4` on `0..4` whose independent edges `01` and `23` are replaced by
/// paths with `2ℓ−6` interior vertices, and whose other four edges get two
/// interior vertices each. Interior vertices follow the lexicographic edge order
/// `01, 02, 03, 12, 13, 23`, each path listed from its lower endpoint.
pub fn subdivided_k4(ell: usize) -> Result<Graph> {
    Ok(subdivided_k4_layout(ell)?.0)
}

fn subdivided_k4_layout(ell: usize) -> Result<(Graph, Vec<Vec<usize>>)> {
    if ell < 4 {
        return Err(Error::Parameter(format!("T_ell needs ell >= 4, got {ell}")));
    }
    let long = 2 * ell - 6;
    let n = 4 + 2 * long + 8;
    let mut g = Graph::empty(n);
    let mut next = 4;
    let mut paths = Vec::new();
    for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let inner = if (a, b) == (0, 1) || (a, b) == (2, 3) { long } else { 2 };
        let mut path = vec![a];
        path.extend(next..next + inner);
        path.push(b);
        next += inner;
        for w in path.windows(2) {
            g.link(w[0], w[1]);
        }
        paths.push(path);
    }
    debug_assert_eq!(next, n);
    Ok((g, paths))
}

/// Integer vertex weights for `T*_ℓ` (ℓ even): 2 on the `K4` vertices and on
/// `ℓ−4` interior vertices of each long path, 1 elsewhere. Every vertex then
/// sees weight exactly 3 in its neighbourhood and the weights total `6ℓ−4`.
pub fn subdivided_k4_weights(ell: usize) -> Result<Vec<u64>> {
    if ell % 2 != 0 {
        return Err(Error::Parameter(format!("T*_ell weights need ell even, got {ell}")));
    }
    let (g, paths) = subdivided_k4_layout(ell)?;
    let mut w = vec![1u64; g.order()];
    for x in w.iter_mut().take(4) {
        *x = 2;
    }
    // along a long path the weights read 2,1,1,2,2,1,1,2,... from its lower end
    for &p in &[0usize, 5] {
        for (i, &v) in paths[p].iter().enumerate() {
            if i % 4 == 0 || i % 4 == 3 {
                w[v] = 2;
            }
        }
    }
    Ok(w)
}

/// Pattern graph and per-vertex class sizes for a blow-up.
#[derive(Clone, Debug)]
pub struct BlowupSpec {
    pub pattern: Graph,
    pub sizes: Vec<usize>,
}

impl BlowupSpec {
    pub fn new(pattern: Graph, sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() != pattern.order() {
            return Err(Error::Parameter(format!(
                "{} class sizes given for a pattern of order {}",
                sizes.len(),
                pattern.order()
            )));
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::Parameter(format!("class {i} has size 0")));
        }
        Ok(BlowupSpec { pattern, sizes })
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Class index of every blow-up vertex (classes are consecutive ranges).
    pub fn projection(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect()
    }
}

/// Replaces pattern vertex `i` by an independent class of `sizes[i]` vertices and
/// every pattern edge by a complete bipartite join.
pub fn blow_up(spec: &BlowupSpec) -> Result<Graph> {
    let spec = BlowupSpec::new(spec.pattern.clone(), spec.sizes.clone())?;
    let proj = spec.projection();
    let n = proj.len();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if spec.pattern.has_edge(proj[u], proj[v]) {
                g.link(u, v);
            }
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("path needs n >= 1".into()));
    }
    Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

pub fn grotzsch() -> Graph {
    mycielski(&cycle(5).expect("C5"))
}

/// Class weights for the unbalanced Grötzsch blow-up with minimum degree
/// `10n/29`: 3 on the 5-cycle, 2 on its shadow copies, 4 on the apex.
pub fn grotzsch_weights() -> Vec<u64> {
    let mut w = vec![3; 5];
    w.extend([2; 5]);
    w.push(4);
    w
}

pub fn moebius_ladder() -> Graph {
    andrasfai(3, 3).expect("F_3")
}

/// Looks up a named family. `n` is ignored for the fixed graphs.
pub fn named_family(name: &str, n: Option<usize>) -> Result<Graph> {
    let need = || n.ok_or_else(|| Error::Parameter(format!("family '{name}' needs an order")));
    match name {
        "cycle" => cycle(need()?),
        "path" => path(need()?),
        "complete" => Ok(Graph::complete(need()?)),
        "grotzsch" => Ok(grotzsch()),
        "moebius" => Ok(moebius_ladder()),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}
