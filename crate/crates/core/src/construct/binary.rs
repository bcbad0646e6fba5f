use super::{extend_end, finish, has_edge};
use crate::error::{Error, Result};
use crate::graph::{gen_graph, Graph, GraphSpec};
use crate::system::{ColoredPath, Palette, PathSystem};

fn level(v: usize) -> u32 {
    usize::BITS - 1 - (v + 1).leading_zeros()
}

/// `k`-colored system (`k >= 3`) on the complete binary tree of depth `r >= 2`.
///
/// The base system (paths between consecutive leaves plus the two root-to-
/// extreme-leaf paths) is rainbow when it fits in the palette. Otherwise the
/// tree is cut into bottom subtrees of `floor(log2 2k)` levels whose internal
/// leaf-to-leaf paths get distinct colors, and singles of the last color patch
/// the edges above them and the edges covered only once inside them.
pub fn krsps_binary(r: usize, k: u32) -> Result<PathSystem> {
    if r < 2 || k < 3 {
        return Err(Error::PreconditionViolated("needs depth >= 2 and k >= 3".into()));
    }
    let g = gen_graph(&GraphSpec::CompleteBinaryTree { depth: r })?;
    if r == 2 {
        let paths = vec![ColoredPath::new(vec![1, 0], 0), ColoredPath::new(vec![0, 2], 1)];
        return finish(&g, Palette::Finite(k), paths);
    }
    let n = g.n();
    let first = (1 << (r - 1)) - 1;
    let mut base: Vec<Vec<usize>> = (first..n - 1).map(|l| g.tree_path(l, l + 1)).collect();
    let internal_end = base.len();
    base.push(g.tree_path(0, first));
    base.push(g.tree_path(0, n - 1));
    if base.len() <= k as usize {
        let paths = base.into_iter().enumerate().map(|(c, p)| ColoredPath::new(p, c as u32)).collect();
        return finish(&g, Palette::Finite(k), paths);
    }

    let levels = (usize::BITS - (k as usize).leading_zeros()) as usize;
    let s = r.saturating_sub(levels) as u32;
    let bottom_root = |mut v: usize| {
        while level(v) > s {
            v = (v - 1) / 2;
        }
        v
    };
    let mut next_color = vec![0u32; n];
    let mut cover = vec![0usize; n];
    let mut paths = Vec::with_capacity(base.len());
    for (i, p) in base.into_iter().enumerate() {
        let inside = i < internal_end && bottom_root(first + i) == bottom_root(first + i + 1);
        let color = if inside {
            let b = bottom_root(first + i);
            next_color[b] += 1;
            for &v in &p {
                if level(v) > s && p.contains(&((v - 1) / 2)) {
                    cover[v] += 1;
                }
            }
            next_color[b] - 1
        } else {
            0
        };
        paths.push(ColoredPath::new(p, color));
    }
    // edge into child v
    for v in 1..n {
        if level(v) <= s || cover[v] <= 1 {
            paths.push(ColoredPath::new(vec![(v - 1) / 2, v], k - 1));
        }
    }
    finish(&g, Palette::Finite(k), paths)
}

/// Hangs two new leaves `n` and `n + 1` off the leaf `leaf`: two paths of
/// different colors through the leaf edge are extended to them and the new
/// path `n - leaf - n+1` gets a fresh color.
pub fn attach_two_leaves(g: &Graph, s: &PathSystem, leaf: usize) -> Result<(Graph, PathSystem)> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if leaf >= g.n() || g.degree(leaf) != 1 {
        return Err(Error::PreconditionViolated(format!("vertex {leaf} is not a leaf")));
    }
    let p = g.neighbors(leaf).next().unwrap();
    let mut paths = s.paths.clone();
    let x = paths.iter().position(|q| has_edge(q, leaf, p));
    let y = x.and_then(|x| paths.iter().position(|q| has_edge(q, leaf, p) && q.color != paths[x].color));
    let (Some(x), Some(y)) = (x, y) else {
        return Err(Error::PreconditionViolated(format!("edge at leaf {leaf} is not covered in two colors")));
    };
    let n = g.n();
    let g2 = Graph::from_edges(n + 2, g.edges().iter().copied().chain([(leaf, n), (leaf, n + 1)]))?;
    extend_end(&mut paths[x], leaf, n);
    extend_end(&mut paths[y], leaf, n + 1);
    let (fresh, k) = match s.k {
        Palette::Finite(k) => (k, Palette::Finite(k + 1)),
        Palette::Infinite => (s.colors_used().last().map_or(0, |c| c + 1), Palette::Infinite),
    };
    paths.push(ColoredPath::new(vec![n, leaf, n + 1], fresh));
    let out = finish(&g2, k, paths)?;
    Ok((g2, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::binary_upper;

    #[test]
    fn within_bound() {
        for r in 2..=9 {
            for k in [3, 4, 5, 8] {
                let s = krsps_binary(r, k).unwrap();
                assert!(s.len() as u64 <= binary_upper(r as u32, k as u64), "r={r} k={k}: {}", s.len());
            }
        }
    }

    #[test]
    fn attach_grows_palette_by_one() {
        let g = gen_graph(&GraphSpec::Path { n: 4 }).unwrap();
        let s = crate::construct::rsps2_path(4).unwrap();
        let leaf = 3;
        match attach_two_leaves(&g, &s, leaf) {
            Ok((g2, s2)) => {
                assert_eq!(g2.n(), 6);
                assert_eq!(s2.len(), s.len() + 1);
                assert_eq!(s2.k, Palette::Finite(3));
            }
            Err(Error::PreconditionViolated(_)) => {}
            Err(e) => panic!("{e}"),
        }
        assert!(attach_two_leaves(&g, &s, 1).is_err());
    }
}
