//! Not-all-equal coloring of a fixed strongly separating path set.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::system::{path_edges, ColoredPath};

/// For each unordered edge pair, the indices of paths containing exactly one
/// of the two edges. A coloring is rainbow iff no such set is monochromatic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIndex {
    pub npaths: usize,
    pub sets: Vec<Vec<usize>>,
}

impl PairIndex {
    /// Builds the index; errors if some pair is not strongly separated.
    pub fn build(g: &Graph, paths: &[Vec<usize>]) -> Result<PairIndex> {
        let mut masks = Vec::with_capacity(paths.len());
        for (i, p) in paths.iter().enumerate() {
            let es = path_edges(g, &ColoredPath::new(p.clone(), 0)).ok_or(Error::PathNotInGraph { index: i })?;
            masks.push(es);
        }
        let m = g.edge_count();
        let mut cover = vec![vec![false; paths.len()]; m];
        for (i, es) in masks.iter().enumerate() {
            for &e in es {
                cover[e][i] = true;
            }
        }
        let mut sets = Vec::new();
        for e in 0..m {
            for f in e + 1..m {
                let a = (0..paths.len()).any(|i| cover[e][i] && !cover[f][i]);
                let b = (0..paths.len()).any(|i| cover[f][i] && !cover[e][i]);
                if !a || !b {
                    return Err(Error::PreconditionViolated(format!("pair ({e},{f}) is not strongly separated")));
                }
                sets.push((0..paths.len()).filter(|&i| cover[e][i] != cover[f][i]).collect());
            }
        }
        sets.sort();
        sets.dedup();
        Ok(PairIndex { npaths: paths.len(), sets })
    }
}

/// A coloring with at most `k` colors in which no set of `index` is
/// monochromatic, or `None` if there is none. `k = None` means unbounded.
pub fn coloring_feasible(index: &PairIndex, k: Option<u32>) -> Option<Vec<u32>> {
    let n = index.npaths;
    let k = match k {
        Some(k) if (k as usize) < n => k,
        _ => return Some((0..n as u32).collect()),
    };
    if k < 2 {
        return if index.sets.is_empty() { Some(vec![0; n]) } else { None };
    }
    let mut occurs = vec![Vec::new(); n];
    for (s, set) in index.sets.iter().enumerate() {
        for &v in set {
            occurs[v].push(s);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(occurs[v].len()), v));
    let mut solver = Nae { sets: &index.sets, occurs: &occurs, color: vec![u32::MAX; n], k };
    let full = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
    let domains = vec![full; n];
    if solver.assign_next(&order, 0, domains, -1) {
        Some(solver.color)
    } else {
        None
    }
}

struct Nae<'a> {
    sets: &'a [Vec<usize>],
    occurs: &'a [Vec<usize>],
    color: Vec<u32>,
    k: u32,
}

impl Nae<'_> {
    fn assign_next(&mut self, order: &[usize], depth: usize, domains: Vec<u32>, max_used: i64) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let mut dom = domains[v];
        // colors above max_used+1 are interchangeable with max_used+1
        if max_used + 2 < self.k as i64 {
            dom &= (1u32 << (max_used + 2)) - 1;
        }
        while dom != 0 {
            let c = dom.trailing_zeros();
            dom &= dom - 1;
            self.color[v] = c;
            let mut next = domains.clone();
            next[v] = 1 << c;
            if self.propagate(v, &mut next) && self.assign_next(order, depth + 1, next, max_used.max(c as i64)) {
                return true;
            }
            self.color[v] = u32::MAX;
        }
        false
    }

    /// Checks the sets through `v`; when a set has one open variable and all
    /// others share a color, that color is removed from its domain.
    fn propagate(&self, v: usize, domains: &mut [u32]) -> bool {
        let mut queue = vec![v];
        while let Some(u) = queue.pop() {
            for &s in &self.occurs[u] {
                let mut open = None;
                let mut open_count = 0;
                let mut shared: Option<u32> = None;
                let mut mixed = false;
                for &w in &self.sets[s] {
                    let d = domains[w];
                    if d.count_ones() == 1 {
                        let c = d.trailing_zeros();
                        match shared {
                            None => shared = Some(c),
                            Some(x) if x != c => mixed = true,
                            _ => {}
                        }
                    } else {
                        open = Some(w);
                        open_count += 1;
                    }
                }
                if mixed {
                    continue;
                }
                match (open_count, shared) {
                    (0, _) => return false,
                    (1, Some(c)) => {
                        let w = open.unwrap();
                        let before = domains[w];
                        domains[w] &= !(1 << c);
                        if domains[w] == 0 {
                            return false;
                        }
                        if domains[w] != before && domains[w].count_ones() == 1 {
                            queue.push(w);
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_graph, GraphSpec};

    fn singles(n: usize) -> (Graph, Vec<Vec<usize>>) {
        let g = gen_graph(&GraphSpec::Path { n }).unwrap();
        let paths = (0..n - 1).map(|i| vec![i, i + 1]).collect();
        (g, paths)
    }

    #[test]
    fn two_singles_on_p3() {
        let (g, paths) = singles(3);
        let idx = PairIndex::build(&g, &paths).unwrap();
        let c = coloring_feasible(&idx, Some(2)).unwrap();
        assert_ne!(c[0], c[1]);
    }

    #[test]
    fn six_singles_on_p7_need_more_than_two_colors() {
        let (g, paths) = singles(7);
        let idx = PairIndex::build(&g, &paths).unwrap();
        assert!(coloring_feasible(&idx, Some(2)).is_none());
        assert!(coloring_feasible(&idx, Some(6)).is_some());
        assert_eq!(coloring_feasible(&idx, None).unwrap(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn brute_force_agreement() {
        let (g, paths) = singles(5);
        let idx = PairIndex::build(&g, &paths).unwrap();
        for k in 2..5u32 {
            let mut any = false;
            let total = k.pow(4);
            for code in 0..total {
                let col: Vec<u32> = (0..4).map(|i| code / k.pow(i) % k).collect();
                if idx.sets.iter().all(|s| s.iter().any(|&v| col[v] != col[s[0]])) {
                    any = true;
                    break;
                }
            }
            assert_eq!(coloring_feasible(&idx, Some(k)).is_some(), any, "k={k}");
        }
    }

    #[test]
    fn unseparated_pair_rejected() {
        let g = gen_graph(&GraphSpec::Path { n: 3 }).unwrap();
        assert!(PairIndex::build(&g, &[vec![0, 1, 2]]).is_err());
    }
}
