use super::{
    krsps_binary, rsps2_cycle, rsps2_path, rsps2_spider, rsps2_star, rsps2_tree, rsps3_cycle, rsps3_star, rsps3_tree,
    rsps4_spider, rsps4_tree, rspsk_path,
};
use crate::error::{Error, Result};
use crate::formulas::{binary_upper, c2_cycle, c2_path, c2_spider, c2_star, ck_path};
use crate::graph::{gen_graph, Graph, GraphSpec};
use crate::system::{Palette, PathSystem};

/// A constructed system with the size its construction guarantees.
#[derive(Clone, Debug)]
pub struct Construction {
    pub graph: Graph,
    pub system: PathSystem,
    pub guarantee: u64,
}

/// Builds a `k`-colored system for a generated graph with the most specific
/// construction available for its class.
pub fn construct(spec: &GraphSpec, k: Palette) -> Result<Construction> {
    let Palette::Finite(k) = k else {
        return Err(Error::Unsupported("constructions need a finite palette".into()));
    };
    if k < 2 {
        return Err(Error::Unsupported("constructions need k >= 2".into()));
    }
    let g = gen_graph(spec)?;
    let m = g.edge_count() as u64;
    let (system, guarantee) = match (spec, k) {
        (GraphSpec::Cycle { n }, 2) => (rsps2_cycle(*n)?, c2_cycle(*n as u64)),
        (GraphSpec::Cycle { n }, _) => (rsps3_cycle(*n)?, *n as u64),
        (GraphSpec::Path { n }, 2) if *n >= 2 => (rsps2_path(*n)?, c2_path(*n as u64)),
        (GraphSpec::Path { n }, _) if *n >= 2 => (rspsk_path(*n, k)?, ck_path(*n as u64, k as u64)),
        (GraphSpec::Star { n }, 2) if *n >= 4 => (rsps2_star(*n)?, c2_star(*n as u64)),
        (GraphSpec::Star { n }, _) if *n >= 4 => (rsps3_star(*n)?, m),
        (GraphSpec::Spider { legs }, 2) if legs.len() >= 3 && legs.iter().all(|&l| l >= 2) => {
            (rsps2_spider(legs)?, c2_spider(legs).hi.unwrap())
        }
        (GraphSpec::Spider { legs }, 4..) if legs.len() >= 3 => (rsps4_spider(legs)?, m),
        (GraphSpec::CompleteBinaryTree { depth }, 3..) if *depth >= 2 => {
            let general = construct_tree(&g, k)?;
            let binary = krsps_binary(*depth, k)?;
            let guarantee = general.guarantee.min(binary_upper(*depth as u32, k as u64));
            let best = if binary.len() < general.system.len() { binary } else { general.system };
            (best, guarantee)
        }
        (GraphSpec::Complete { n: 3.. }, _) => {
            return Err(Error::Unsupported("no construction for complete graphs".into()));
        }
        _ => return construct_tree(&g, k),
    };
    Ok(Construction { graph: g, system: PathSystem { k: Palette::Finite(k), paths: system.paths }, guarantee })
}

/// Builds a `k`-colored system for an arbitrary tree.
pub fn construct_tree(g: &Graph, k: u32) -> Result<Construction> {
    let st = g.tree_stats()?;
    let m = g.edge_count() as u64;
    if k < 2 {
        return Err(Error::Unsupported("constructions need k >= 2".into()));
    }
    // a single edge has no pair to separate
    let (system, guarantee) = if m <= 1 {
        (PathSystem::new(Palette::Finite(k)), 0)
    } else if st.is_path {
        let order = path_order(g);
        let s = if k == 2 { rsps2_path(order.len())? } else { rspsk_path(order.len(), k)? };
        let paths = super::peel::relabel(s.paths, &order);
        let bound = if k == 2 { c2_path(m + 1) } else { ck_path(m + 1, k as u64) };
        (PathSystem { k: s.k, paths }, bound)
    } else {
        match k {
            2 => (rsps2_tree(g)?, (4 * m).div_ceil(3)),
            3 => (rsps3_tree(g)?, (5 * m).div_ceil(4)),
            _ => (rsps4_tree(g)?, m),
        }
    };
    Ok(Construction { graph: g.clone(), system: PathSystem { k: Palette::Finite(k), paths: system.paths }, guarantee })
}

/// Vertices of a path graph from its smaller end.
fn path_order(g: &Graph) -> Vec<usize> {
    let start = (0..g.n()).find(|&v| g.degree(v) <= 1).unwrap_or(0);
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = g.neighbors(cur).find(|&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{is_separating, Mode};

    #[test]
    fn every_class_and_palette() {
        let specs = [
            GraphSpec::Path { n: 2 },
            GraphSpec::Path { n: 12 },
            GraphSpec::Cycle { n: 9 },
            GraphSpec::Star { n: 3 },
            GraphSpec::Star { n: 10 },
            GraphSpec::Spider { legs: vec![2, 2, 2, 2] },
            GraphSpec::Spider { legs: vec![3, 1, 2] },
            GraphSpec::Spider { legs: vec![4] },
            GraphSpec::CompleteBinaryTree { depth: 1 },
            GraphSpec::CompleteBinaryTree { depth: 5 },
            GraphSpec::MergedBinary { t: 3 },
        ];
        for spec in &specs {
            for k in [2, 3, 4, 6] {
                let c = construct(spec, Palette::Finite(k)).unwrap_or_else(|e| panic!("{spec:?} k={k}: {e}"));
                assert!(is_separating(&c.graph, &c.system, Mode::Rainbow));
                assert!(c.system.len() as u64 <= c.guarantee, "{spec:?} k={k}");
            }
        }
    }

    #[test]
    fn unsupported() {
        assert!(matches!(construct(&GraphSpec::Complete { n: 5 }, Palette::Finite(2)), Err(Error::Unsupported(_))));
        assert!(matches!(construct(&GraphSpec::Path { n: 5 }, Palette::Infinite), Err(Error::Unsupported(_))));
    }
}
