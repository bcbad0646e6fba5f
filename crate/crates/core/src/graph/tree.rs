use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeStats {
    pub d1: usize,
    pub d2: usize,
    pub is_path: bool,
    pub is_spider: bool,
    /// Leg lengths in non-increasing order; empty unless `is_spider`.
    pub leg_vector: Vec<usize>,
}

/// A bare spider: head `h`, legs as vertex sequences starting at `h`, and the
/// attachment vertex (absent when the spider is the whole tree).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BareSpider {
    pub head: usize,
    pub legs: Vec<Vec<usize>>,
    pub attachment: Option<usize>,
}

impl BareSpider {
    pub fn hat(&self) -> Option<(usize, usize)> {
        self.attachment.map(|v| (self.head, v))
    }

    pub fn leg_lengths(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.len() - 1).collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = vec![self.head];
        for leg in &self.legs {
            vs.extend_from_slice(&leg[1..]);
        }
        vs
    }
}

impl Graph {
    pub fn tree_stats(&self) -> Result<TreeStats> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        let deg: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        let d1 = deg.iter().filter(|&&d| d == 1).count();
        let d2 = deg.iter().filter(|&&d| d == 2).count();
        let branch = deg.iter().filter(|&&d| d >= 3).count();
        let is_path = branch == 0;
        let is_spider = branch <= 1;
        let mut leg_vector = Vec::new();
        if is_spider && self.n() >= 2 {
            let center = deg.iter().position(|&d| d >= 3).unwrap_or_else(|| deg.iter().position(|&d| d == 1).unwrap());
            let adj = adjacency(self);
            leg_vector = self
                .neighbors(center)
                .map(|w| walk_leg(&adj, center, w).map(|l| l.len() - 1).unwrap_or(0))
                .collect();
            leg_vector.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(TreeStats { d1, d2, is_path, is_spider, leg_vector })
    }

    /// All maximal bare spiders, ordered by head.
    pub fn bare_spider_decomposition(&self) -> Result<Vec<BareSpider>> {
        if !self.is_tree() || self.n() < 2 {
            return Err(Error::NotATree);
        }
        Ok(bare_spiders(&adjacency(self)))
    }
}

pub(crate) fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).collect()).collect()
}

/// Follows degree-2 vertices from `from -> next` until a leaf; `None` if a
/// branching vertex is reached first.
fn walk_leg(adj: &[Vec<usize>], from: usize, next: usize) -> Option<Vec<usize>> {
    let mut leg = vec![from, next];
    let (mut prev, mut cur) = (from, next);
    loop {
        match adj[cur].len() {
            1 => return Some(leg),
            2 => {
                let nxt = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                leg.push(nxt);
                prev = cur;
                cur = nxt;
            }
            _ => return None,
        }
    }
}

/// Bare spiders of the tree formed by the non-isolated vertices of `adj`.
pub(crate) fn bare_spiders(adj: &[Vec<usize>]) -> Vec<BareSpider> {
    let active: Vec<usize> = (0..adj.len()).filter(|&v| !adj[v].is_empty()).collect();
    let branching: Vec<usize> = active.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    if branching.len() <= 1 {
        let Some(&head) = branching.first().or(active.first()) else {
            return Vec::new();
        };
        let legs = adj[head].iter().map(|&w| walk_leg(adj, head, w).expect("spider leg")).collect();
        return vec![BareSpider { head, legs, attachment: None }];
    }
    let mut out = Vec::new();
    for &h in &branching {
        let mut legs = Vec::new();
        let mut other = Vec::new();
        for &w in &adj[h] {
            match walk_leg(adj, h, w) {
                Some(leg) => legs.push(leg),
                None => other.push(w),
            }
        }
        if other.len() == 1 {
            out.push(BareSpider { head: h, legs, attachment: Some(other[0]) });
        }
    }
    out
}

/// Parent array of a uniformly random labelled tree on `n` vertices (Prüfer
/// decoding), rooted at 0.
pub fn random_tree_parents(n: usize, seed: u64) -> Vec<Option<usize>> {
    if n <= 1 {
        return vec![None; n];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![Vec::new(); n];
    if n == 2 {
        adj[0].push(1);
        adj[1].push(0);
    } else {
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut deg = vec![1usize; n];
        for &c in &code {
            deg[c] += 1;
        }
        let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        for &c in &code {
            let leaf = *leaves.iter().next().unwrap();
            leaves.remove(&leaf);
            adj[leaf].push(c);
            adj[c].push(leaf);
            deg[c] -= 1;
            if deg[c] == 1 {
                leaves.insert(c);
            }
        }
        let rest: Vec<usize> = leaves.into_iter().collect();
        adj[rest[0]].push(rest[1]);
        adj[rest[1]].push(rest[0]);
    }
    let mut parents = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parents[w] = Some(v);
                stack.push(w);
            }
        }
    }
    parents
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_graph, GraphSpec};

    #[test]
    fn stats_of_standard_trees() {
        let p = gen_graph(&GraphSpec::Path { n: 7 }).unwrap().tree_stats().unwrap();
        assert_eq!((p.d1, p.d2, p.is_path), (2, 5, true));
        let s = gen_graph(&GraphSpec::Spider { legs: vec![2, 2, 2] }).unwrap().tree_stats().unwrap();
        assert_eq!((s.d1, s.d2, s.is_spider, s.leg_vector.clone()), (3, 3, true, vec![2, 2, 2]));
        let t = gen_graph(&GraphSpec::CompleteBinaryTree { depth: 3 }).unwrap().tree_stats().unwrap();
        assert_eq!((t.d1, t.d2, t.is_spider), (4, 1, false));
    }

    #[test]
    fn whole_spider_is_one_bare_spider() {
        let g = gen_graph(&GraphSpec::Spider { legs: vec![2, 2, 2, 2] }).unwrap();
        let d = g.bare_spider_decomposition().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].head, 0);
        assert_eq!(d[0].hat(), None);
        assert_eq!(d[0].leg_lengths(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn two_stars_joined_at_centers() {
        let g = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6), (4, 7)]).unwrap();
        let d = g.bare_spider_decomposition().unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].hat(), Some((0, 4)));
        assert_eq!(d[1].hat(), Some((4, 0)));
    }

    #[test]
    fn binary_tree_cherries() {
        let g = gen_graph(&GraphSpec::CompleteBinaryTree { depth: 3 }).unwrap();
        let d = g.bare_spider_decomposition().unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].hat(), Some((1, 0)));
        assert_eq!(d[1].hat(), Some((2, 0)));
    }

    #[test]
    fn path_head_is_smallest_vertex() {
        let g = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let d = g.bare_spider_decomposition().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].head, 0);
        assert_eq!(d[0].leg_lengths(), vec![1, 2]);
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..20 {
            let parents = random_tree_parents(30, seed);
            let g = gen_graph(&GraphSpec::Tree { parents }).unwrap();
            assert!(g.is_tree());
        }
        assert_eq!(random_tree_parents(25, 7), random_tree_parents(25, 7));
    }
}
