//! Bookkeeping for constructions that peel bare spiders off a tree.

use std::cmp::Reverse;

use crate::graph::tree::{adjacency, bare_spiders};
use crate::graph::{BareSpider, Graph};
use crate::system::ColoredPath;

/// The part of the tree not yet covered by a block.
pub(crate) struct Remaining {
    adj: Vec<Vec<usize>>,
}

impl Remaining {
    pub(crate) fn new(g: &Graph) -> Self {
        Remaining { adj: adjacency(g) }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.adj.iter().all(Vec::is_empty)
    }

    pub(crate) fn spiders(&self) -> Vec<BareSpider> {
        bare_spiders(&self.adj)
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].retain(|&w| w != v);
        self.adj[v].retain(|&w| w != u);
    }

    pub(crate) fn remove_walk(&mut self, vertices: &[usize]) {
        for w in vertices.windows(2) {
            self.remove_edge(w[0], w[1]);
        }
    }

    /// Vertices of the path from `a` to `b` in what remains.
    pub(crate) fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.adj.len()];
        prev[a] = a;
        let mut stack = vec![a];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if prev[w] == usize::MAX {
                    prev[w] = u;
                    stack.push(w);
                }
            }
        }
        if prev[b] == usize::MAX {
            return None;
        }
        let mut out = vec![b];
        while *out.last().unwrap() != a {
            out.push(prev[*out.last().unwrap()]);
        }
        out.reverse();
        Some(out)
    }
}

/// True if the spider is all that remains.
pub(crate) fn is_whole(spiders: &[BareSpider]) -> bool {
    spiders.len() == 1 && spiders[0].attachment.is_none()
}

/// Legs (vertex sequences from the head) by non-increasing length, ties by
/// the first vertex.
pub(crate) fn sorted_legs(sp: &BareSpider) -> Vec<Vec<usize>> {
    let mut legs = sp.legs.clone();
    legs.sort_by_key(|l| (Reverse(l.len()), l[1]));
    legs
}

pub(crate) fn lengths(legs: &[Vec<usize>]) -> Vec<usize> {
    legs.iter().map(|l| l.len() - 1).collect()
}

/// Vertex sequence of the walk out along `a` reversed and back along `b`.
pub(crate) fn join_legs(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().rev().chain(&b[1..]).copied().collect()
}

/// Applies the vertex map `map` to every path.
pub(crate) fn relabel(paths: Vec<ColoredPath>, map: &[usize]) -> Vec<ColoredPath> {
    paths
        .into_iter()
        .map(|p| ColoredPath::new(p.vertices.iter().map(|&v| map[v]).collect(), p.color))
        .collect()
}

/// Map from the standard spider on `legs` (vertex sequences from the head)
/// to the host.
pub(crate) fn host_spider_map(legs: &[Vec<usize>]) -> Vec<usize> {
    let mut map = vec![legs[0][0]];
    for l in legs {
        map.extend_from_slice(&l[1..]);
    }
    map
}
