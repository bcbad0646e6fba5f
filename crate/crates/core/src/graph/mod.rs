//! Simple undirected graphs with canonical edge indexing, and generators for
//! the graph classes used throughout the crate.
//!
//! Vertex numbering per class:
//! - path, cycle: vertices `0..n` in order around the path or cycle;
//! - star: center `0`, leaves `1..n`;
//! - spider: center `0`, then each leg in turn numbered outward from the center;
//! - complete binary tree: level order, children of `i` are `2i+1` and `2i+2`;
//! - tree: as given by the parent array;
//! - merged binary: the shared vertex is `0`; copy `c` owns `1+6c ..= 6+6c` as
//!   root, right child, the two children of the shared vertex, and the two
//!   children of the right child.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; the
//! edge index is the position in that list.

pub(crate) mod tree;

pub use tree::{random_tree_parents, BareSpider, TreeStats};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "params", rename_all = "kebab-case")]
pub enum GraphSpec {
    Path { n: usize },
    Cycle { n: usize },
    Star { n: usize },
    Spider { legs: Vec<usize> },
    Complete { n: usize },
    CompleteBinaryTree { depth: usize },
    /// `parents[v]` is the parent of `v`; exactly one entry is `None`.
    Tree { parents: Vec<Option<usize>> },
    /// `t` copies of the depth-3 complete binary tree glued at the left child of each root.
    MergedBinary { t: usize },
}

impl GraphSpec {
    pub fn class_name(&self) -> &'static str {
        match self {
            GraphSpec::Path { .. } => "path",
            GraphSpec::Cycle { .. } => "cycle",
            GraphSpec::Star { .. } => "star",
            GraphSpec::Spider { .. } => "spider",
            GraphSpec::Complete { .. } => "complete",
            GraphSpec::CompleteBinaryTree { .. } => "complete-binary-tree",
            GraphSpec::Tree { .. } => "tree",
            GraphSpec::MergedBinary { .. } => "merged-binary",
        }
    }

    /// Short parameter string, e.g. `n=7` or `legs=2-2-2`.
    pub fn params_string(&self) -> String {
        match self {
            GraphSpec::Path { n }
            | GraphSpec::Cycle { n }
            | GraphSpec::Star { n }
            | GraphSpec::Complete { n } => format!("n={n}"),
            GraphSpec::Spider { legs } => {
                let parts: Vec<String> = legs.iter().map(|l| l.to_string()).collect();
                format!("legs={}", parts.join("-"))
            }
            GraphSpec::CompleteBinaryTree { depth } => format!("depth={depth}"),
            GraphSpec::Tree { parents } => format!("n={}", parents.len()),
            GraphSpec::MergedBinary { t } => format!("t={t}"),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GraphSpec::Path { n }
            | GraphSpec::Cycle { n }
            | GraphSpec::Star { n }
            | GraphSpec::Complete { n } => *n,
            GraphSpec::Spider { legs } => 1 + legs.iter().sum::<usize>(),
            GraphSpec::CompleteBinaryTree { depth } => (1usize << depth) - 1,
            GraphSpec::Tree { parents } => parents.len(),
            GraphSpec::MergedBinary { t } => 1 + 6 * t,
        }
    }

    pub fn is_tree_class(&self) -> bool {
        match self {
            GraphSpec::Cycle { .. } => false,
            GraphSpec::Complete { n } => *n <= 2,
            _ => true,
        }
    }
}

/// JSON interchange form: `{"n": .., "edges": [[u, v], ..], "meta": {"class": .., "params": ..}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Per vertex, `(neighbor, edge index)` sorted by neighbor.
    incidence: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from an arbitrary edge list, canonicalizing edge order.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidSpec(format!("self-loop at {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidSpec(format!("edge ({a},{b}) out of range")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSpec("duplicate edge".into()));
        }
        let mut incidence = vec![Vec::new(); n];
        for (i, &(u, v)) in list.iter().enumerate() {
            incidence[u].push((v, i));
            incidence[v].push((u, i));
        }
        for inc in &mut incidence {
            inc.sort_unstable();
        }
        Ok(Graph { n, edges: list, incidence })
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Graph> {
        Graph::from_edges(doc.n, doc.edges.iter().copied())
    }

    pub fn to_doc(&self, spec: Option<&GraphSpec>) -> GraphDoc {
        GraphDoc {
            n: self.n,
            edges: self.edges.clone(),
            meta: spec.map(|s| serde_json::to_value(s).expect("spec serializes")),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(|&(w, _)| w)
    }

    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let inc = &self.incidence[u];
        inc.binary_search_by_key(&v, |&(w, _)| w).ok().map(|p| inc[p].1)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Edge indices along a vertex sequence, or `None` if consecutive vertices are not adjacent.
    pub fn walk_edges(&self, vertices: &[usize]) -> Option<Vec<usize>> {
        vertices.windows(2).map(|w| self.edge_index(w[0], w[1])).collect()
    }

    /// The unique path between two vertices of a tree, as a vertex sequence.
    pub fn tree_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                break;
            }
            for w in self.neighbors(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut out = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            out.push(cur);
        }
        out.reverse();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            s.push_str(&format!("  {u} -- {v} [label=\"e{i}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub fn gen_graph(spec: &GraphSpec) -> Result<Graph> {
    let bad = |m: &str| Err(Error::InvalidSpec(m.to_string()));
    match spec {
        GraphSpec::Path { n } => {
            if *n == 0 {
                return bad("path needs n >= 1");
            }
            Graph::from_edges(*n, (1..*n).map(|i| (i - 1, i)))
        }
        GraphSpec::Cycle { n } => {
            if *n < 3 {
                return bad("cycle needs n >= 3");
            }
            Graph::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n)))
        }
        GraphSpec::Star { n } => {
            if *n == 0 {
                return bad("star needs n >= 1");
            }
            Graph::from_edges(*n, (1..*n).map(|i| (0, i)))
        }
        GraphSpec::Complete { n } => {
            if *n == 0 {
                return bad("complete graph needs n >= 1");
            }
            Graph::from_edges(*n, (0..*n).flat_map(|u| (u + 1..*n).map(move |v| (u, v))))
        }
        GraphSpec::Spider { legs } => {
            if legs.is_empty() || legs.contains(&0) {
                return bad("spider legs must be nonempty with lengths >= 1");
            }
            let n = 1 + legs.iter().sum::<usize>();
            let mut edges = Vec::with_capacity(n - 1);
            let mut next = 1;
            for &len in legs {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Graph::from_edges(n, edges)
        }
        GraphSpec::CompleteBinaryTree { depth } => {
            if *depth == 0 || *depth > 24 {
                return bad("binary tree depth must be in 1..=24");
            }
            let n = (1usize << depth) - 1;
            Graph::from_edges(n, (1..n).map(|v| ((v - 1) / 2, v)))
        }
        GraphSpec::Tree { parents } => {
            let n = parents.len();
            if n == 0 {
                return bad("empty parent array");
            }
            let roots = parents.iter().filter(|p| p.is_none()).count();
            if roots != 1 {
                return bad("parent array needs exactly one root");
            }
            let edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .filter_map(|(v, p)| p.map(|p| (p, v)))
                .collect();
            if edges.iter().any(|&(p, _)| p >= n) {
                return bad("parent out of range");
            }
            let g = Graph::from_edges(n, edges).map_err(|_| Error::InvalidSpec("malformed parent array".into()))?;
            if !g.is_tree() {
                return bad("parent array has a cycle");
            }
            Ok(g)
        }
        GraphSpec::MergedBinary { t } => {
            if *t == 0 {
                return bad("merged binary needs t >= 1");
            }
            let mut edges = Vec::new();
            for c in 0..*t {
                let b = 1 + 6 * c;
                edges.extend([(0, b), (b, b + 1), (0, b + 2), (0, b + 3), (b + 1, b + 4), (b + 1, b + 5)]);
            }
            Graph::from_edges(1 + 6 * t, edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_edges_follow_vertex_order() {
        let g = gen_graph(&GraphSpec::Path { n: 7 }).unwrap();
        assert_eq!(g.edge_count(), 6);
        for i in 0..6 {
            assert_eq!(g.edge(i), (i, i + 1));
        }
    }

    #[test]
    fn spider_center_degree() {
        let g = gen_graph(&GraphSpec::Spider { legs: vec![2, 2, 2] }).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.degree(0)), (7, 6, 3));
        assert_eq!(g.edge_index(1, 2), Some(3));
    }

    #[test]
    fn binary_tree_shape() {
        let g = gen_graph(&GraphSpec::CompleteBinaryTree { depth: 3 }).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.degree(0), 2);
        assert_eq!((0..7).filter(|&v| g.degree(v) == 1).count(), 4);
    }

    #[test]
    fn merged_binary_shape() {
        let g = gen_graph(&GraphSpec::MergedBinary { t: 3 }).unwrap();
        assert!(g.is_tree());
        assert_eq!(g.degree(0), 9);
        assert_eq!((0..g.n()).filter(|&v| g.degree(v) == 1).count(), 12);
        assert_eq!((0..g.n()).filter(|&v| g.degree(v) == 2).count(), 3);
    }

    #[test]
    fn invalid_specs() {
        assert!(gen_graph(&GraphSpec::Spider { legs: vec![2, 0] }).is_err());
        assert!(gen_graph(&GraphSpec::CompleteBinaryTree { depth: 0 }).is_err());
        assert!(gen_graph(&GraphSpec::Tree { parents: vec![None, Some(2), Some(1)] }).is_err());
        assert!(gen_graph(&GraphSpec::Tree { parents: vec![None, None] }).is_err());
    }

    #[test]
    fn spec_json_shape() {
        let s = serde_json::to_string(&GraphSpec::Spider { legs: vec![2, 1] }).unwrap();
        assert_eq!(s, r#"{"class":"spider","params":{"legs":[2,1]}}"#);
    }

    #[test]
    fn cycle_lookup() {
        let g = gen_graph(&GraphSpec::Cycle { n: 5 }).unwrap();
        assert!(g.edge_index(4, 0).is_some());
        assert!(g.edge_index(0, 2).is_none());
        assert!(!g.is_tree());
    }
}
