//! Dense two-phase simplex over exact rationals with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<BigRational>,
    pub sense: Sense,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

/// Maximise `c·x` subject to `rows`, `x ≥ 0`.
pub fn maximise(c: &[BigRational], rows: &[Row]) -> Outcome {
    let nv = c.len();
    let zero = BigRational::zero();
    let one = BigRational::one();
    // normalise to nonnegative right-hand sides
    let rows: Vec<Row> = rows
        .iter()
        .map(|r| {
            if r.rhs.is_negative() {
                Row {
                    coeffs: r.coeffs.iter().map(|a| -a).collect(),
                    sense: match r.sense {
                        Sense::Le => Sense::Ge,
                        Sense::Ge => Sense::Le,
                        Sense::Eq => Sense::Eq,
                    },
                    rhs: -&r.rhs,
                }
            } else {
                r.clone()
            }
        })
        .collect();
    let n_slack = rows.iter().filter(|r| r.sense != Sense::Eq).count();
    let n_art = rows.iter().filter(|r| r.sense != Sense::Le).count();
    let cols = nv + n_slack + n_art;
    let art_start = nv + n_slack;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut s, mut a) = (nv, art_start);
    for r in &rows {
        let mut line = vec![zero.clone(); cols + 1];
        line[..nv].clone_from_slice(&r.coeffs);
        line[cols] = r.rhs.clone();
        match r.sense {
            Sense::Le => {
                line[s] = one.clone();
                basis.push(s);
                s += 1;
            }
            Sense::Ge => {
                line[s] = -one.clone();
                s += 1;
                line[a] = one.clone();
                basis.push(a);
                a += 1;
            }
            Sense::Eq => {
                line[a] = one.clone();
                basis.push(a);
                a += 1;
            }
        }
        t.push(line);
    }
    let mut tab = Tableau { t, basis, cols };
    if n_art > 0 {
        let mut phase1 = vec![zero.clone(); cols];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -one.clone();
        }
        tab.optimise(&phase1, cols);
        let infeasibility: BigRational = tab
            .basis
            .iter()
            .zip(&tab.t)
            .filter(|(&b, _)| b >= art_start)
            .map(|(_, row)| row[cols].clone())
            .sum();
        if !infeasibility.is_zero() {
            return Outcome::Infeasible;
        }
        // pivot remaining zero-valued artificials out, dropping redundant rows
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| !tab.t[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
    let mut obj = vec![zero.clone(); cols];
    obj[..nv].clone_from_slice(c);
    if !tab.optimise(&obj, art_start) {
        return Outcome::Unbounded;
    }
    let mut x = vec![zero.clone(); nv];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < nv {
            x[b] = tab.t[i][cols].clone();
        }
    }
    let value = x.iter().zip(c).map(|(a, b)| a * b).sum();
    Outcome::Optimal { x, value }
}

struct Tableau {
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximises `obj` using columns `< allowed`; false when unbounded.
    fn optimise(&mut self, obj: &[BigRational], allowed: usize) -> bool {
        loop {
            // reduced profit of column j: obj_j − Σ_i obj_{basis_i} t_ij
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.t[i][j].is_zero() {
                        r -= &obj[b] * &self.t[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][j];
                if a.is_positive() {
                    let ratio = &self.t[i][self.cols] / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((i, _)) = leave else { return false };
            self.pivot(i, j);
        }
    }
}
