//! Explicit constructions of rainbow separating path systems.
//!
//! Every constructor checks its output with [`separation_check`] before
//! returning it and reports [`Error::ConstructionFailed`] otherwise.

mod binary;
mod peel;
mod cycle;
mod dispatch;
mod path;
mod spider;
mod star;
mod tree2;
mod tree3;
mod tree4;

use serde::Serialize;

pub use binary::{attach_two_leaves, krsps_binary};
pub use cycle::{rsps2_cycle, rsps3_cycle};
pub use dispatch::{construct, construct_tree, Construction};
pub use path::{rsps2_path, rspsk_path};
pub use spider::{rsps2_spider, rsps4_spider};
pub use star::{rsps2_star, rsps3_star};
pub use tree2::rsps2_tree;
pub use tree3::rsps3_tree;
pub use tree4::rsps4_tree;

use crate::basecase::BaseCase;
use crate::error::{Error, Result};
use crate::graph::{gen_graph, Graph, GraphSpec};
use crate::system::{separation_check, ColoredPath, Mode, Palette, PathSystem};

/// Colors meeting each edge, and the edges met by fewer than two colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicolorCoverageCert {
    pub edge_colors: Vec<Vec<u32>>,
    pub exceptions: Vec<usize>,
}

impl BicolorCoverageCert {
    pub fn new(g: &Graph, s: &PathSystem) -> Result<Self> {
        let edge_colors = s.edge_colors(g)?;
        let exceptions = (0..edge_colors.len()).filter(|&e| edge_colors[e].len() < 2).collect();
        Ok(BicolorCoverageCert { edge_colors, exceptions })
    }

    pub fn is_bicolor(&self) -> bool {
        self.exceptions.is_empty()
    }

    /// At most two exceptions, each covered, and of distinct colors when there are two.
    pub fn is_admissible(&self) -> bool {
        let cs: Vec<&Vec<u32>> = self.exceptions.iter().map(|&e| &self.edge_colors[e]).collect();
        match cs.as_slice() {
            [] => true,
            [a] => a.len() == 1,
            [a, b] => a.len() == 1 && b.len() == 1 && a != b,
            _ => false,
        }
    }
}

pub(crate) fn spider_graph(legs: &[usize]) -> Result<Graph> {
    gen_graph(&GraphSpec::Spider { legs: legs.to_vec() })
}

/// Returns `paths` as a system on `g` after checking rainbow separation.
pub(crate) fn finish(g: &Graph, k: Palette, paths: Vec<ColoredPath>) -> Result<PathSystem> {
    let s = PathSystem { k, paths };
    let report = separation_check(g, &s, Mode::Rainbow)?;
    match report.failures.first() {
        None => Ok(s),
        Some(f) => Err(Error::ConstructionFailed(format!(
            "edges {} and {} not separated ({:?}, {} failures)",
            f.e,
            f.f,
            f.reason,
            report.failures.len()
        ))),
    }
}

/// Paths of a base case with vertices relabelled through `map`.
pub(crate) fn place(case: &BaseCase, map: &[usize]) -> Vec<ColoredPath> {
    case.system
        .paths
        .iter()
        .map(|p| ColoredPath::new(p.vertices.iter().map(|&v| map[v]).collect(), p.color))
        .collect()
}

/// Map from the vertices of `gen_graph(Spider { legs })` to a host spider
/// with the given head and legs (host legs exclude the head and may be longer).
pub(crate) fn spider_map(legs: &[usize], head: usize, host_legs: &[&[usize]]) -> Vec<usize> {
    let mut map = vec![head];
    for (&l, host) in legs.iter().zip(host_legs) {
        map.extend_from_slice(&host[..l]);
    }
    map
}

pub(crate) fn has_edge(p: &ColoredPath, a: usize, b: usize) -> bool {
    p.vertices.windows(2).any(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a))
}

pub(crate) fn is_single(p: &ColoredPath, a: usize, b: usize) -> bool {
    p.vertices.len() == 2 && has_edge(p, a, b)
}

/// Appends `to` at whichever end of `p` is `at`.
pub(crate) fn extend_end(p: &mut ColoredPath, at: usize, to: usize) {
    if p.vertices.last() == Some(&at) {
        p.vertices.push(to);
    } else {
        debug_assert_eq!(p.vertices.first(), Some(&at));
        p.vertices.insert(0, to);
    }
}

/// Removes the end vertex `at` of `p`.
pub(crate) fn truncate_end(p: &mut ColoredPath, at: usize) {
    if p.vertices.last() == Some(&at) {
        p.vertices.pop();
    } else {
        debug_assert_eq!(p.vertices.first(), Some(&at));
        p.vertices.remove(0);
    }
}

/// Grows a leg whose last two edges carry the two-color terminal structure
/// by the edge `(leg.last(), new)`; `leg` starts at the head.
pub(crate) fn extend_two_color(paths: &mut Vec<ColoredPath>, leg: &[usize], new: usize) -> Result<()> {
    let l = leg.len();
    let (up, u1, ut) = (leg[l - 3], leg[l - 2], leg[l - 1]);
    let broken = || Error::ConstructionFailed(format!("leg ending at {ut} is not extendable"));
    let single = paths.iter().position(|p| is_single(p, u1, ut)).ok_or_else(broken)?;
    let alpha = paths[single].color;
    let through = paths
        .iter()
        .position(|p| p.color == alpha && has_edge(p, up, u1) && !has_edge(p, u1, ut))
        .ok_or_else(broken)?;
    extend_end(&mut paths[single], ut, new);
    extend_end(&mut paths[through], u1, ut);
    paths.push(ColoredPath::new(vec![ut, new], 1 - alpha));
    Ok(())
}

/// One staircase step: the terminal single-edge path takes the new edge and
/// a single-edge path of color `gamma` is added on it.
fn extend_staircase(paths: &mut Vec<ColoredPath>, leg: &[usize], new: usize, gamma: u32) -> Result<()> {
    let l = leg.len();
    let (u1, ut) = (leg[l - 2], leg[l - 1]);
    let single = paths
        .iter()
        .position(|p| is_single(p, u1, ut))
        .ok_or_else(|| Error::ConstructionFailed(format!("no single-edge path at {ut}")))?;
    extend_end(&mut paths[single], ut, new);
    paths.push(ColoredPath::new(vec![ut, new], gamma));
    Ok(())
}

/// Extends a staircase leg of current length `leg.len() - 1 >= 2` to cover
/// all of `target` (which starts with `leg`).
pub(crate) fn staircase_to(paths: &mut Vec<ColoredPath>, target: &[usize], from_len: usize) -> Result<()> {
    if target.len() - 1 <= from_len {
        return Ok(());
    }
    let t = (target[from_len - 1], target[from_len]);
    let alpha = paths
        .iter()
        .find(|p| is_single(p, t.0, t.1))
        .map(|p| p.color)
        .ok_or_else(|| Error::ConstructionFailed(format!("no single-edge path at {}", t.1)))?;
    let beta = paths
        .iter()
        .find(|p| !is_single(p, t.0, t.1) && has_edge(p, t.0, t.1))
        .map(|p| p.color)
        .ok_or_else(|| Error::ConstructionFailed(format!("terminal edge at {} is monochromatic", t.1)))?;
    let mut leg_colors: Vec<u32> = paths
        .iter()
        .filter(|p| target[..=from_len].windows(2).any(|w| has_edge(p, w[0], w[1])))
        .map(|p| p.color)
        .filter(|&x| x != alpha && x != beta)
        .collect();
    leg_colors.sort_unstable();
    leg_colors.dedup();
    let gamma = match leg_colors.first() {
        Some(&g) => g,
        None if alpha != 1 && beta != 1 => 1,
        None => (0..).find(|&x| x != alpha && x != beta).unwrap(),
    };
    // the new single always takes the least recently used of the three colors
    let (mut a, mut b, mut g) = (alpha, beta, gamma);
    for i in from_len..target.len() - 1 {
        extend_staircase(paths, &target[..=i], target[i + 1], g)?;
        (a, b, g) = (g, a, b);
    }
    Ok(())
}
