//! Exact blow-up weights maximising the minimum weighted degree.
//!
//! For a pattern `H` the LP is: maximise `t` subject to `w(N(v)) ≥ t` for all
//! `v`, `Σ w = 1`, `w ≥ 0`. Its dual asks for a distribution `y` minimising
//! `max_u y(N(u))`; an optimal `y` is returned as a certificate.

mod simplex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::generators::{blow_up, BlowupSpec};
use crate::graph::Graph;

pub use simplex::{maximise, Outcome, Row, Sense};

/// `p/q` (or `p` when integral).
pub fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::Parameter(format!("'{s}' is not a rational number"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

fn ser_ratios<S: Serializer>(r: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(ratio_string))
}

/// A rational that serialises as the string `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exact(pub BigRational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_ratio(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map(Exact).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Exact {
    type Err = Error;
    fn from_str(s: &str) -> Result<Exact> {
        parse_ratio(s).map(Exact)
    }
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&ratio_string(&self.0))
    }
}

/// Nonnegative exact weights summing to one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RationalWeights(#[serde(serialize_with = "ser_ratios")] Vec<BigRational>);

impl RationalWeights {
    pub fn new(w: Vec<BigRational>) -> Result<RationalWeights> {
        if w.iter().any(|x| x.is_negative()) {
            return Err(Error::Parameter("weights must be nonnegative".into()));
        }
        let total: BigRational = w.iter().sum();
        if !total.is_one() {
            return Err(Error::Parameter(format!("weights sum to {}, not 1", ratio_string(&total))));
        }
        Ok(RationalWeights(w))
    }

    /// Normalises nonnegative integers by their sum.
    pub fn from_integers(w: &[u64]) -> Result<RationalWeights> {
        let total: u64 = w.iter().sum();
        if total == 0 {
            return Err(Error::Parameter("weights sum to zero".into()));
        }
        Ok(RationalWeights(
            w.iter()
                .map(|&x| BigRational::new(x.into(), total.into()))
                .collect(),
        ))
    }

    pub fn uniform(m: usize) -> Result<RationalWeights> {
        RationalWeights::from_integers(&vec![1; m])
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least `n` with every `n·w_v` an integer.
    pub fn least_order(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |l, w| l.lcm(w.denom()))
    }
}

/// Weighted degree `w(N(v))` of every vertex.
pub fn weighted_degrees(h: &Graph, w: &[BigRational]) -> Vec<BigRational> {
    (0..h.order())
        .map(|v| h.neighbours(v).map(|u| w[u].clone()).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPResult {
    pub weights: RationalWeights,
    #[serde(serialize_with = "ser_ratio")]
    pub t: BigRational,
    pub tight_vertices: Vec<usize>,
    /// Optimal dual distribution `y` with `max_u y(N(u)) = t`.
    #[serde(serialize_with = "ser_ratios")]
    pub dual: Vec<BigRational>,
    pub warning: Option<String>,
}

impl LPResult {
    /// Re-checks primal feasibility, the tight set, dual feasibility, equal
    /// objective values and complementary slackness, all exactly.
    pub fn certify(&self, h: &Graph) -> bool {
        let w = self.weights.as_slice();
        let y = &self.dual;
        let m = h.order();
        if w.len() != m || y.len() != m {
            return false;
        }
        let one = BigRational::one();
        let wd = weighted_degrees(h, w);
        let yd = weighted_degrees(h, y);
        let primal = w.iter().all(|x| !x.is_negative()) && w.iter().sum::<BigRational>() == one;
        let dual = y.iter().all(|x| !x.is_negative()) && y.iter().sum::<BigRational>() == one;
        let tight: Vec<usize> = (0..m).filter(|&v| wd[v] == self.t).collect();
        primal
            && dual
            && wd.iter().all(|d| *d >= self.t)
            && yd.iter().all(|d| *d <= self.t)
            && tight == self.tight_vertices
            && (0..m).all(|v| y[v].is_zero() || wd[v] == self.t)
            && (0..m).all(|u| w[u].is_zero() || yd[u] == self.t)
    }
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Maximises the minimum weighted degree; among optimal weightings returns the
/// lexicographically least one (minimising `w_0`, then `w_1`, …).
pub fn optimal_blowup_weights(h: &Graph) -> Result<LPResult> {
    let m = h.order();
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    let zero = BigRational::zero();
    // variables w_0..w_{m−1}, t
    let degree_rows = |t_coeff: BigRational| -> Vec<Row> {
        (0..m)
            .map(|v| {
                let mut c = vec![zero.clone(); m + 1];
                for u in h.neighbours(v) {
                    c[u] = int(1);
                }
                c[m] = t_coeff.clone();
                Row { coeffs: c, sense: Sense::Ge, rhs: zero.clone() }
            })
            .collect()
    };
    let simplex_row = |width: usize| Row {
        coeffs: (0..width).map(|i| if i < m { int(1) } else { zero.clone() }).collect(),
        sense: Sense::Eq,
        rhs: int(1),
    };
    let mut rows = degree_rows(int(-1));
    rows.push(simplex_row(m + 1));
    let mut c = vec![zero.clone(); m + 1];
    c[m] = int(1);
    let t = match maximise(&c, &rows) {
        Outcome::Optimal { value, .. } => value,
        other => unreachable!("bounded feasible LP returned {other:?}"),
    };
    // lexicographic refinement with t pinned: w(N(v)) ≥ t*, earlier weights fixed
    let mut rows: Vec<Row> = (0..m)
        .map(|v| {
            let mut c = vec![zero.clone(); m];
            for u in h.neighbours(v) {
                c[u] = int(1);
            }
            Row { coeffs: c, sense: Sense::Ge, rhs: t.clone() }
        })
        .collect();
    rows.push(simplex_row(m));
    let mut w = Vec::with_capacity(m);
    for i in 0..m {
        let mut c = vec![zero.clone(); m];
        c[i] = int(-1);
        let wi = match maximise(&c, &rows) {
            Outcome::Optimal { x, .. } => x[i].clone(),
            other => unreachable!("refinement LP returned {other:?}"),
        };
        let mut fix = vec![zero.clone(); m];
        fix[i] = int(1);
        rows.push(Row { coeffs: fix, sense: Sense::Eq, rhs: wi.clone() });
        w.push(wi);
    }
    // dual: variables y_0..y_{m−1}, z; y(N(u)) ≤ z, Σ y = 1, minimise z
    let mut drows: Vec<Row> = degree_rows(int(-1))
        .into_iter()
        .map(|r| Row { sense: Sense::Le, ..r })
        .collect();
    drows.push(simplex_row(m + 1));
    let mut dc = vec![zero.clone(); m + 1];
    dc[m] = int(-1);
    let dual = match maximise(&dc, &drows) {
        Outcome::Optimal { mut x, value } => {
            debug_assert_eq!(-value, t);
            x.truncate(m);
            x
        }
        other => unreachable!("dual LP returned {other:?}"),
    };
    let wd = weighted_degrees(h, &w);
    let tight_vertices = (0..m).filter(|&v| wd[v] == t).collect();
    let warning = (0..m)
        .find(|&v| h.degree(v) == 0)
        .map(|v| format!("vertex {v} is isolated, so every weighting has minimum weighted degree 0"));
    Ok(LPResult {
        weights: RationalWeights(w),
        t,
        tight_vertices,
        dual,
        warning,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realization {
    #[serde(skip)]
    pub graph: Graph,
    pub sizes: Vec<usize>,
    pub order: usize,
    pub min_degree: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: BigRational,
}

/// Blow-up with class sizes `n·w_v`, which must all be integers.
pub fn realize_weights(h: &Graph, w: &RationalWeights, n: usize) -> Result<Realization> {
    if w.len() != h.order() {
        return Err(Error::Parameter(format!(
            "{} weights for a pattern of order {}",
            w.len(),
            h.order()
        )));
    }
    let least = w.least_order();
    let nn = BigRational::from_integer(n.into());
    let sizes: Option<Vec<usize>> = w
        .as_slice()
        .iter()
        .map(|x| {
            let s = x * &nn;
            if s.is_integer() {
                s.to_integer().to_usize()
            } else {
                None
            }
        })
        .collect();
    let Some(sizes) = sizes.filter(|_| n > 0) else {
        return Err(Error::NonIntegralSizes {
            order: n,
            least: least.to_usize().unwrap_or(usize::MAX),
        });
    };
    // zero-weight vertices are dropped from the pattern
    let keep: Vec<usize> = (0..h.order()).filter(|&v| sizes[v] > 0).collect();
    let pattern = h.induced(&keep);
    let kept: Vec<usize> = keep.iter().map(|&v| sizes[v]).collect();
    let graph = blow_up(&BlowupSpec::new(pattern, kept)?)?;
    let min_degree = graph.min_degree()?;
    Ok(Realization {
        graph,
        sizes,
        order: n,
        min_degree,
        ratio: BigRational::new(min_degree.into(), n.into()),
    })
}
