use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct CatalogPath {
    pub vertices: Vec<usize>,
    /// Bit `e` set iff edge `e` lies on the path.
    pub mask: u128,
}

impl CatalogPath {
    pub fn contains(&self, e: usize) -> bool {
        self.mask >> e & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }
}

/// Every simple path of a graph with at most 128 edges, each listed once
/// (oriented so the first vertex is smaller than the last).
#[derive(Clone, Debug)]
pub struct PathCatalog {
    pub paths: Vec<CatalogPath>,
    edge_count: usize,
    /// Per edge, indices of the paths through it.
    covering: Vec<Vec<usize>>,
}

impl PathCatalog {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn covering(&self, e: usize) -> &[usize] {
        &self.covering[e]
    }

    /// Paths containing `e` and avoiding `f`.
    pub fn separating(&self, e: usize, f: usize) -> impl Iterator<Item = usize> + '_ {
        self.covering[e].iter().copied().filter(move |&p| !self.paths[p].contains(f))
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        let mut v = vertices.to_vec();
        if v.first() > v.last() {
            v.reverse();
        }
        self.paths.iter().position(|p| p.vertices == v)
    }
}

pub fn enumerate_paths(g: &Graph) -> Result<PathCatalog> {
    enumerate_paths_capped(g, DEFAULT_PATH_CAP)
}

pub fn enumerate_paths_capped(g: &Graph, cap: usize) -> Result<PathCatalog> {
    if g.edge_count() > 128 {
        return Err(Error::Unsupported("exact search supports at most 128 edges".into()));
    }
    let mut paths = Vec::new();
    let mut on = vec![false; g.n()];
    let mut stack: Vec<usize> = Vec::new();
    for s in 0..g.n() {
        stack.clear();
        stack.push(s);
        on[s] = true;
        extend(g, &mut stack, &mut on, 0, &mut paths, cap)?;
        on[s] = false;
    }
    let mut covering = vec![Vec::new(); g.edge_count()];
    for (i, p) in paths.iter().enumerate() {
        for (e, cov) in covering.iter_mut().enumerate() {
            if p.contains(e) {
                cov.push(i);
            }
        }
    }
    Ok(PathCatalog { paths, edge_count: g.edge_count(), covering })
}

fn extend(
    g: &Graph,
    stack: &mut Vec<usize>,
    on: &mut [bool],
    mask: u128,
    out: &mut Vec<CatalogPath>,
    cap: usize,
) -> Result<()> {
    let v = *stack.last().unwrap();
    for &(w, e) in g.incident(v) {
        if on[w] {
            continue;
        }
        let m = mask | 1u128 << e;
        stack.push(w);
        on[w] = true;
        if stack[0] < w {
            if out.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(CatalogPath { vertices: stack.clone(), mask: m });
        }
        extend(g, stack, on, m, out, cap)?;
        on[w] = false;
        stack.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_graph, GraphSpec};

    fn count(spec: GraphSpec) -> usize {
        enumerate_paths(&gen_graph(&spec).unwrap()).unwrap().len()
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!(count(GraphSpec::Path { n: 4 }), 6);
        assert_eq!(count(GraphSpec::Cycle { n: 4 }), 12);
        assert_eq!(count(GraphSpec::Complete { n: 4 }), 30);
        assert_eq!(count(GraphSpec::Spider { legs: vec![2, 2, 2] }), 21);
    }

    #[test]
    fn cap_is_enforced() {
        let g = gen_graph(&GraphSpec::Complete { n: 6 }).unwrap();
        assert!(matches!(enumerate_paths_capped(&g, 100), Err(Error::CapExceeded { cap: 100 })));
    }
}
