//! Closed-form values and bounds for `wsp`, `ssp` and `c_k`.
//!
//! All exact quantities use integer arithmetic. The only real-valued formula
//! is the binary-tree upper bound, which is rounded up.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{gen_graph, GraphSpec, TreeStats};
use crate::system::Palette;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u64,
    /// `None` is unbounded.
    pub hi: Option<u64>,
}

impl Interval {
    pub fn exact(v: u64) -> Self {
        Interval { lo: v, hi: Some(v) }
    }

    pub fn new(lo: u64, hi: u64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi: Some(hi) }
    }

    pub fn contains(&self, v: u64) -> bool {
        v >= self.lo && self.hi.map_or(true, |h| v <= h)
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) if h == self.lo => write!(f, "{h}"),
            Some(h) => write!(f, "[{}, {h}]", self.lo),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Wsp,
    Ssp,
    Ck,
    /// Upper bound on `c_k` of a complete binary tree.
    BinaryUpper,
    /// Counting lower bound on `c_k` of a clique.
    CliqueCkLower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub quantity: Quantity,
    pub graph: GraphSpec,
    pub k: Option<Palette>,
}

impl BoundQuery {
    pub fn ck(graph: GraphSpec, k: Palette) -> Self {
        BoundQuery { quantity: Quantity::Ck, graph, k: Some(k) }
    }

    pub fn ssp(graph: GraphSpec) -> Self {
        BoundQuery { quantity: Quantity::Ssp, graph, k: None }
    }

    pub fn wsp(graph: GraphSpec) -> Self {
        BoundQuery { quantity: Quantity::Wsp, graph, k: None }
    }
}

fn unsupported<T>(q: &BoundQuery) -> Result<T> {
    Err(Error::Unsupported(format!("{:?} for {}", q.quantity, q.graph.class_name())))
}

fn div_ceil(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub fn closed_form(q: &BoundQuery) -> Result<Interval> {
    match q.quantity {
        Quantity::Ssp => ssp(q),
        Quantity::Wsp => wsp(q),
        Quantity::Ck => match q.k {
            Some(Palette::Infinite) => ssp(q),
            Some(Palette::Finite(k)) if k >= 2 => ck(q, k as u64),
            _ => Err(Error::Unsupported("c_k needs k >= 2".into())),
        },
        Quantity::BinaryUpper => match (&q.graph, q.k) {
            (GraphSpec::CompleteBinaryTree { depth }, Some(Palette::Finite(k))) if k >= 3 => {
                Ok(Interval::exact(binary_upper(*depth as u32, k as u64)))
            }
            _ => unsupported(q),
        },
        Quantity::CliqueCkLower => match (&q.graph, q.k) {
            (GraphSpec::Complete { n }, Some(Palette::Finite(k))) => Ok(Interval::exact(clique_ck_lower(*n as u64, k as u64))),
            _ => unsupported(q),
        },
    }
}

fn stats(spec: &GraphSpec) -> Result<(u64, TreeStats)> {
    let g = gen_graph(spec)?;
    Ok((g.n() as u64, g.tree_stats()?))
}

/// `ssp` of a tree from its leaf and degree-2 counts.
pub fn tree_ssp(n: u64, st: &TreeStats) -> u64 {
    if n <= 2 {
        0
    } else if st.is_path {
        (st.d1 + st.d2) as u64 - 1
    } else {
        (st.d1 + st.d2) as u64
    }
}

/// Weak separation bounds for a tree from its leaf and degree-2 counts.
pub fn tree_wsp(n: u64, st: &TreeStats) -> Interval {
    if n <= 2 {
        return Interval::exact(0);
    }
    let (d1, d2) = (st.d1 as u64, st.d2 as u64);
    let lo = div_ceil(2 * (d1 - 1) + d2, 3);
    let hi = div_ceil(2 * d1 + d2, 3).max(div_ceil(d1 + d2, 2));
    Interval::new(lo, hi)
}

fn ssp(q: &BoundQuery) -> Result<Interval> {
    match &q.graph {
        GraphSpec::Cycle { n } => Ok(Interval::exact(*n as u64)),
        GraphSpec::Complete { n } if *n >= 3 => Ok(Interval::new(*n as u64 - 1, *n as u64 + 9)),
        spec if spec.is_tree_class() => {
            let (n, st) = stats(spec)?;
            Ok(Interval::exact(tree_ssp(n, &st)))
        }
        _ => unsupported(q),
    }
}

fn wsp(q: &BoundQuery) -> Result<Interval> {
    match &q.graph {
        GraphSpec::Star { n } if *n >= 1 => Ok(Interval::exact(2 * (*n as u64 - 1) / 3)),
        GraphSpec::Complete { n } if *n >= 3 => Ok(Interval::new(*n as u64 - 1, *n as u64 + 1)),
        spec if spec.is_tree_class() => {
            let (n, st) = stats(spec)?;
            Ok(tree_wsp(n, &st))
        }
        _ => unsupported(q),
    }
}

/// `c_2` of the path on `n` vertices.
pub fn c2_path(n: u64) -> u64 {
    match n {
        0..=2 => 0,
        3 => 2,
        4..=6 => n,
        _ => n + 1,
    }
}

/// `c_k` of the path on `n` vertices for `k >= 3`.
pub fn ck_path(n: u64, k: u64) -> u64 {
    if n <= 2 {
        0
    } else if n <= k + 1 {
        n - 1
    } else {
        n
    }
}

pub fn c2_cycle(n: u64) -> u64 {
    2 * n.div_ceil(2)
}

/// `c_2` of the star on `n >= 4` vertices.
pub fn c2_star(n: u64) -> u64 {
    2 * (2 * (n - 1) / 3)
}

/// `c_2` of the spider with `q` legs all of length two.
pub fn c2_short_spider(q: u64) -> u64 {
    let n = 2 * q + 1;
    if q % 3 == 1 || q == 3 {
        n - 1 + 2 * q / 3
    } else {
        n - 2 + 2 * q / 3
    }
}

/// `c_2` of a spider with `q >= 3` legs, all of length at least two; an
/// interval of width one in the case the value is not determined.
pub fn c2_spider(legs: &[usize]) -> Interval {
    let q = legs.len() as u64;
    let n = 1 + legs.iter().sum::<usize>() as u64;
    let short = legs.iter().filter(|&&l| l == 2).count();
    let base = n - 2 + 2 * q / 3;
    if q == 3 || q % 3 == 1 {
        Interval::exact(base + 1)
    } else if short >= 2 {
        Interval::exact(base)
    } else {
        Interval::new(base, base + 1)
    }
}

/// Lower bound `17(n-1)/16 - 3` on `c_3` of a spider with all legs of length two.
pub fn c3_short_spider_lower(q: u64) -> u64 {
    let n = 2 * q + 1;
    (17 * (n - 1)).div_ceil(16).saturating_sub(3)
}

/// Tree upper bound on `c_k` valid for every tree on `n` vertices (`k <= 3`)
/// or every non-path tree (`k >= 4`).
pub fn tree_ck_upper(n: u64, k: u64) -> u64 {
    let m = n.saturating_sub(1);
    match k {
        2 => 4 * m / 3,
        3 => 5 * m / 4,
        _ => m,
    }
}

/// `ceil((n+1)/k * (k + 2 log2 k + 6) / 2)` for the complete binary tree of depth `r`.
pub fn binary_upper(r: u32, k: u64) -> u64 {
    let leaves2 = 1u64 << r;
    if k.is_power_of_two() {
        let lg = k.trailing_zeros() as u64;
        (leaves2 * (k + 2 * lg + 6)).div_ceil(2 * k)
    } else {
        let v = leaves2 as f64 / k as f64 * (k as f64 + 2.0 * (k as f64).log2() + 6.0) / 2.0;
        v.ceil() as u64
    }
}

/// `ceil(3(C(n,2) - (k/2+1)(2n+10)) / (n-1))`, clamped at zero.
pub fn clique_ck_lower(n: u64, k: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    let pairs = n * (n - 1) / 2;
    let low = (k + 2) * (n + 5);
    if pairs <= low {
        return 0;
    }
    (3 * (pairs - low)).div_ceil(n - 1)
}

/// Intersects `[lo, hi]` with the general sandwich from weak and strong bounds.
fn sandwich(lo: u64, hi: u64, k: u64, w: Interval, s: Interval) -> Interval {
    let lo = lo.max(div_ceil(k * w.lo, k - 1)).max(s.lo);
    let hi = match (w.hi, s.hi) {
        (Some(a), Some(b)) => hi.min(a + b),
        _ => hi,
    };
    Interval::new(lo, hi.max(lo))
}

fn ck(q: &BoundQuery, k: u64) -> Result<Interval> {
    let spec = &q.graph;
    match spec {
        GraphSpec::Cycle { n } => {
            let n = *n as u64;
            return Ok(Interval::exact(if k == 2 { c2_cycle(n) } else { n }));
        }
        GraphSpec::Complete { n } if *n >= 3 => {
            let n = *n as u64;
            let lo = clique_ck_lower(n, k).max(div_ceil(k * (n - 1), k - 1)).max(n - 1);
            return Ok(Interval::new(lo, 2 * n + 10));
        }
        _ if !spec.is_tree_class() => return unsupported(q),
        _ => {}
    }
    let (n, st) = stats(spec)?;
    if st.is_path {
        return Ok(Interval::exact(if k == 2 { c2_path(n) } else { ck_path(n, k) }));
    }
    let s = tree_ssp(n, &st);
    let w = match spec {
        GraphSpec::Star { n } => Interval::exact(2 * (*n as u64 - 1) / 3),
        _ => tree_wsp(n, &st),
    };
    if st.is_spider {
        let legs = &st.leg_vector;
        let q = legs.len() as u64;
        let star = legs.iter().all(|&l| l == 1);
        match k {
            2 if star => return Ok(Interval::exact(c2_star(n))),
            2 if legs.iter().all(|&l| l >= 2) => return Ok(c2_spider(legs)),
            3 if star => return Ok(Interval::exact(n - 1)),
            3 if legs.iter().all(|&l| l == 2) => {
                let lo = c3_short_spider_lower(q);
                return Ok(sandwich(lo, tree_ck_upper(n, 3), k, w, Interval::exact(s)));
            }
            _ if k >= 4 => return Ok(Interval::exact(n - 1)),
            _ => {}
        }
    }
    let mut hi = tree_ck_upper(n, k);
    if let GraphSpec::CompleteBinaryTree { depth } = spec {
        if k >= 3 {
            hi = hi.min(binary_upper(*depth as u32, k));
        }
    }
    Ok(sandwich(s, hi, k, w, Interval::exact(s)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioInterval {
    pub lo: Ratio<u64>,
    pub hi: Ratio<u64>,
}

/// Bounds on `c_k(G) / c_inf(G)`, clipped to `[1, 2]`.
pub fn rk_ratio_bounds(spec: &GraphSpec, k: Palette) -> Result<RatioInterval> {
    let one = Ratio::from_integer(1);
    if k == Palette::Infinite {
        return Ok(RatioInterval { lo: one, hi: one });
    }
    let c = closed_form(&BoundQuery::ck(spec.clone(), k))?;
    let s = closed_form(&BoundQuery::ssp(spec.clone()))?;
    let (Some(chi), Some(shi)) = (c.hi, s.hi) else {
        return Err(Error::Unsupported("unbounded interval".into()));
    };
    if s.lo == 0 {
        return Ok(RatioInterval { lo: one, hi: one });
    }
    let two = Ratio::from_integer(2);
    let lo = Ratio::new(c.lo, shi).max(one).min(two);
    let hi = Ratio::new(chi, s.lo).min(two).max(lo);
    Ok(RatioInterval { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ck_of(spec: GraphSpec, k: u32) -> Interval {
        closed_form(&BoundQuery::ck(spec, Palette::Finite(k))).unwrap()
    }

    #[test]
    fn path_values() {
        let vals: Vec<u64> = (3..=10).map(|n| ck_of(GraphSpec::Path { n }, 2).lo).collect();
        assert_eq!(vals, vec![2, 4, 5, 6, 8, 9, 10, 11]);
        assert_eq!(ck_of(GraphSpec::Path { n: 4 }, 3), Interval::exact(3));
        assert_eq!(ck_of(GraphSpec::Path { n: 7 }, 3), Interval::exact(7));
        assert_eq!(ck_of(GraphSpec::Path { n: 10 }, 5), Interval::exact(10));
    }

    #[test]
    fn star_and_cycle_values() {
        let stars: Vec<u64> = (4..=9).map(|n| ck_of(GraphSpec::Star { n }, 2).lo).collect();
        assert_eq!(stars, vec![4, 4, 6, 8, 8, 10]);
        assert_eq!(ck_of(GraphSpec::Cycle { n: 9 }, 2), Interval::exact(10));
        assert_eq!(ck_of(GraphSpec::Cycle { n: 8 }, 3), Interval::exact(8));
        assert_eq!(ck_of(GraphSpec::Star { n: 7 }, 3), Interval::exact(6));
    }

    #[test]
    fn spider_values() {
        assert_eq!(ck_of(GraphSpec::Spider { legs: vec![3, 3, 3, 3, 3] }, 2), Interval::new(17, 18));
        assert_eq!(ck_of(GraphSpec::Spider { legs: vec![5, 4, 3] }, 2), Interval::exact(14));
        assert_eq!(ck_of(GraphSpec::Spider { legs: vec![2, 2, 2, 2] }, 4), Interval::exact(8));
        for q in 3..12 {
            assert_eq!(c2_spider(&vec![2; q as usize]), Interval::exact(c2_short_spider(q)));
        }
    }

    #[test]
    fn tree_values() {
        let t = GraphSpec::CompleteBinaryTree { depth: 3 };
        assert_eq!(closed_form(&BoundQuery::ssp(t.clone())).unwrap(), Interval::exact(5));
        assert_eq!(closed_form(&BoundQuery::ck(t, Palette::Infinite)).unwrap(), Interval::exact(5));
    }

    #[test]
    fn clique_counting_bound() {
        assert_eq!(clique_ck_lower(100, 2), 138);
        let q = BoundQuery { quantity: Quantity::CliqueCkLower, graph: GraphSpec::Complete { n: 100 }, k: Some(Palette::Finite(2)) };
        assert_eq!(closed_form(&q).unwrap(), Interval::exact(138));
    }

    #[test]
    fn binary_bound_values() {
        assert_eq!(binary_upper(5, 4), 56);
        assert_eq!(binary_upper(3, 3), 17);
    }

    #[test]
    fn ratio_examples() {
        let r = rk_ratio_bounds(&GraphSpec::Path { n: 100 }, Palette::Finite(2)).unwrap();
        assert_eq!((r.lo, r.hi), (Ratio::new(101, 99), Ratio::new(101, 99)));
        let r = rk_ratio_bounds(&GraphSpec::Star { n: 100 }, Palette::Finite(2)).unwrap();
        assert_eq!((r.lo, r.hi), (Ratio::new(132, 99), Ratio::new(132, 99)));
        let r = rk_ratio_bounds(&GraphSpec::Cycle { n: 9 }, Palette::Infinite).unwrap();
        assert_eq!((r.lo, r.hi), (Ratio::from_integer(1), Ratio::from_integer(1)));
    }

    #[test]
    fn unsupported_queries() {
        assert!(closed_form(&BoundQuery::wsp(GraphSpec::Cycle { n: 5 })).is_err());
        let q = BoundQuery { quantity: Quantity::BinaryUpper, graph: GraphSpec::Path { n: 5 }, k: Some(Palette::Finite(3)) };
        assert!(closed_form(&q).is_err());
    }
}
