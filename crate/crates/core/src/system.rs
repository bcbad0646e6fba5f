//! Colored path systems and the weak / strong / rainbow separation validators.
//!
//! Validation cost is `O(|E|^2 * c)` where `c` is the largest number of paths
//! through one edge: each pair only inspects the paths through its two edges.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Palette size: a finite `k >= 2` or unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Palette {
    Finite(u32),
    Infinite,
}

impl Palette {
    pub fn admits(self, color: u32) -> bool {
        match self {
            Palette::Finite(k) => color < k,
            Palette::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Palette::Finite(k) => Some(k),
            Palette::Infinite => None,
        }
    }
}

impl fmt::Display for Palette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Palette::Finite(k) => write!(f, "{k}"),
            Palette::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Palette {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Palette::Infinite);
        }
        match s.parse::<u32>() {
            Ok(k) if k >= 2 => Ok(Palette::Finite(k)),
            _ => Err(format!("palette must be an integer >= 2 or `inf`, got `{s}`")),
        }
    }
}

impl Serialize for Palette {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Palette::Finite(k) => ser.serialize_u32(*k),
            Palette::Infinite => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Palette {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Int(k) => Ok(Palette::Finite(k)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredPath {
    pub vertices: Vec<usize>,
    pub color: u32,
}

impl ColoredPath {
    pub fn new(vertices: Vec<usize>, color: u32) -> Self {
        ColoredPath { vertices, color }
    }

    pub fn edge_len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Same path traversed from the smaller end.
    pub fn oriented(&self) -> ColoredPath {
        let mut p = self.clone();
        if p.vertices.first() > p.vertices.last() {
            p.vertices.reverse();
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub k: Palette,
    pub paths: Vec<ColoredPath>,
}

impl PathSystem {
    pub fn new(k: Palette) -> Self {
        PathSystem { k, paths: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn push(&mut self, vertices: Vec<usize>, color: u32) {
        self.paths.push(ColoredPath::new(vertices, color));
    }

    /// Paths oriented from their smaller end and sorted.
    pub fn canonical(&self) -> PathSystem {
        let mut paths: Vec<ColoredPath> = self.paths.iter().map(ColoredPath::oriented).collect();
        paths.sort();
        PathSystem { k: self.k, paths }
    }

    /// True if two entries are the same path with the same color.
    pub fn has_duplicates(&self) -> bool {
        self.canonical().paths.windows(2).any(|w| w[0] == w[1])
    }

    /// The system with every path of color `c` removed.
    pub fn without_color(&self, c: u32) -> PathSystem {
        PathSystem { k: self.k, paths: self.paths.iter().filter(|p| p.color != c).cloned().collect() }
    }

    pub fn without_path(&self, i: usize) -> PathSystem {
        let mut s = self.clone();
        s.paths.remove(i);
        s
    }

    pub fn colors_used(&self) -> Vec<u32> {
        let mut cs: Vec<u32> = self.paths.iter().map(|p| p.color).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    /// Edge indices of every path; fails on the first path that is not simple in `g`.
    pub fn edge_lists(&self, g: &Graph) -> Result<Vec<Vec<usize>>> {
        self.paths
            .iter()
            .enumerate()
            .map(|(i, p)| path_edges(g, p).ok_or(Error::PathNotInGraph { index: i }))
            .collect()
    }

    /// Sorted, deduplicated colors of the paths through each edge.
    pub fn edge_colors(&self, g: &Graph) -> Result<Vec<Vec<u32>>> {
        let lists = self.edge_lists(g)?;
        let mut out = vec![Vec::new(); g.edge_count()];
        for (p, es) in self.paths.iter().zip(&lists) {
            for &e in es {
                out[e].push(p.color);
            }
        }
        for cs in &mut out {
            cs.sort_unstable();
            cs.dedup();
        }
        Ok(out)
    }

    /// Covered edges whose paths all share one color, with that color.
    pub fn monochromatic_edges(&self, g: &Graph) -> Result<Vec<(usize, u32)>> {
        Ok(self
            .edge_colors(g)?
            .iter()
            .enumerate()
            .filter(|(_, cs)| cs.len() == 1)
            .map(|(e, cs)| (e, cs[0]))
            .collect())
    }

    /// True if no color has two monochromatic edges.
    pub fn mono_budget_ok(&self, g: &Graph) -> Result<bool> {
        let mut colors: Vec<u32> = self.monochromatic_edges(g)?.into_iter().map(|(_, c)| c).collect();
        let before = colors.len();
        colors.sort_unstable();
        colors.dedup();
        Ok(colors.len() == before)
    }
}

/// Edge indices of `p` in `g`, or `None` if it is not a simple path of `g`.
pub fn path_edges(g: &Graph, p: &ColoredPath) -> Option<Vec<usize>> {
    if p.vertices.len() < 2 || p.vertices.iter().any(|&v| v >= g.n()) {
        return None;
    }
    let mut seen = vec![false; g.n()];
    for &v in &p.vertices {
        if std::mem::replace(&mut seen[v], true) {
            return None;
        }
    }
    g.walk_edges(&p.vertices)
}

pub fn check_path(g: &Graph, p: &ColoredPath) -> bool {
    path_edges(g, p).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Weak,
    Strong,
    Rainbow,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "weak" => Ok(Mode::Weak),
            "strong" => Ok(Mode::Strong),
            "rainbow" => Ok(Mode::Rainbow),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
            Mode::Rainbow => "rainbow",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    NoPathENotF,
    NoPathFNotE,
    ColorsCoincide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFailure {
    pub e: usize,
    pub f: usize,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub mode: Mode,
    pub ok: bool,
    pub failures: Vec<PairFailure>,
}

/// Checks every unordered edge pair `e < f`. Weak failures list both
/// directions; strong and rainbow list each missing direction, and rainbow adds
/// `ColorsCoincide` when both directions exist but only in one color.
pub fn separation_check(g: &Graph, s: &PathSystem, mode: Mode) -> Result<SeparationReport> {
    let lists = s.edge_lists(g)?;
    if mode == Mode::Rainbow {
        if let Some(i) = s.paths.iter().position(|p| !s.k.admits(p.color)) {
            return Err(Error::ColorOutOfRange { index: i });
        }
    }
    let m = g.edge_count();
    let words = m.div_ceil(64).max(1);
    let mut bits = vec![0u64; lists.len() * words];
    let mut cover: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (p, es) in lists.iter().enumerate() {
        for &e in es {
            bits[p * words + e / 64] |= 1 << (e % 64);
            cover[e].push(p);
        }
    }
    let has = |p: usize, e: usize| bits[p * words + e / 64] >> (e % 64) & 1 == 1;
    let mut failures = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            let mut a_first: Option<u32> = None;
            let mut b_first: Option<u32> = None;
            let mut two_colors = false;
            for &p in &cover[e] {
                if !has(p, f) {
                    let c = s.paths[p].color;
                    match a_first {
                        None => a_first = Some(c),
                        Some(x) if x != c => two_colors = true,
                        _ => {}
                    }
                }
            }
            for &p in &cover[f] {
                if !has(p, e) {
                    let c = s.paths[p].color;
                    match b_first {
                        None => b_first = Some(c),
                        Some(x) if x != c => two_colors = true,
                        _ => {}
                    }
                }
            }
            if let (Some(x), Some(y)) = (a_first, b_first) {
                two_colors |= x != y;
            }
            let mut push = |reason| failures.push(PairFailure { e, f, reason });
            match mode {
                Mode::Weak => {
                    if a_first.is_none() && b_first.is_none() {
                        push(FailureReason::NoPathENotF);
                        push(FailureReason::NoPathFNotE);
                    }
                }
                Mode::Strong | Mode::Rainbow => {
                    if a_first.is_none() {
                        push(FailureReason::NoPathENotF);
                    }
                    if b_first.is_none() {
                        push(FailureReason::NoPathFNotE);
                    }
                    if mode == Mode::Rainbow && a_first.is_some() && b_first.is_some() && !two_colors {
                        push(FailureReason::ColorsCoincide);
                    }
                }
            }
        }
    }
    Ok(SeparationReport { mode, ok: failures.is_empty(), failures })
}

/// Shorthand for `separation_check(..).ok`, treating invalid paths as failure.
pub fn is_separating(g: &Graph, s: &PathSystem, mode: Mode) -> bool {
    separation_check(g, s, mode).map(|r| r.ok).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_graph, GraphSpec};

    #[test]
    fn check_path_examples() {
        let p5 = gen_graph(&GraphSpec::Path { n: 5 }).unwrap();
        assert!(check_path(&p5, &ColoredPath::new(vec![0, 1, 2], 0)));
        assert!(!check_path(&p5, &ColoredPath::new(vec![0, 2], 0)));
        let c4 = gen_graph(&GraphSpec::Cycle { n: 4 }).unwrap();
        assert!(!check_path(&c4, &ColoredPath::new(vec![0, 1, 2, 3, 0], 0)));
        assert!(check_path(&c4, &ColoredPath::new(vec![3, 0, 1], 0)));
    }

    #[test]
    fn single_edge_graph_is_vacuous() {
        let g = gen_graph(&GraphSpec::Path { n: 2 }).unwrap();
        let mut s = PathSystem::new(Palette::Finite(2));
        s.push(vec![0, 1], 0);
        assert!(separation_check(&g, &s, Mode::Rainbow).unwrap().ok);
    }

    #[test]
    fn alternating_singletons_on_p7() {
        let g = gen_graph(&GraphSpec::Path { n: 7 }).unwrap();
        let mut s = PathSystem::new(Palette::Finite(2));
        for i in 0..6 {
            s.push(vec![i, i + 1], (i % 2) as u32);
        }
        assert!(separation_check(&g, &s, Mode::Strong).unwrap().ok);
        let r = separation_check(&g, &s, Mode::Rainbow).unwrap();
        let mut failed: Vec<(usize, usize)> = r.failures.iter().map(|x| (x.e, x.f)).collect();
        failed.dedup();
        let expected: Vec<(usize, usize)> =
            (0..6).flat_map(|e| (e + 1..6).map(move |f| (e, f))).filter(|(e, f)| (f - e) % 2 == 0).collect();
        assert_eq!(failed, expected);
        assert!(r.failures.iter().all(|x| x.reason == FailureReason::ColorsCoincide));
    }

    #[test]
    fn weak_allows_one_uncovered_edge() {
        let g = gen_graph(&GraphSpec::Path { n: 5 }).unwrap();
        let mut s = PathSystem::new(Palette::Infinite);
        s.push(vec![0, 1, 2], 0);
        s.push(vec![1, 2, 3], 1);
        assert!(separation_check(&g, &s, Mode::Weak).unwrap().ok);
        assert!(!separation_check(&g, &s, Mode::Strong).unwrap().ok);
    }

    #[test]
    fn invalid_path_is_an_error() {
        let g = gen_graph(&GraphSpec::Path { n: 4 }).unwrap();
        let mut s = PathSystem::new(Palette::Finite(2));
        s.push(vec![0, 2], 0);
        assert!(matches!(separation_check(&g, &s, Mode::Weak), Err(Error::PathNotInGraph { index: 0 })));
    }

    #[test]
    fn palette_round_trip() {
        let s = PathSystem { k: Palette::Infinite, paths: vec![ColoredPath::new(vec![0, 1], 3)] };
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"k":"inf","paths":[{"vertices":[0,1],"color":3}]}"#);
        assert_eq!(serde_json::from_str::<PathSystem>(&j).unwrap(), s);
        assert_eq!("3".parse::<Palette>().unwrap(), Palette::Finite(3));
        assert!("1".parse::<Palette>().is_err());
    }

    #[test]
    fn monochromatic_helpers() {
        let g = gen_graph(&GraphSpec::Path { n: 4 }).unwrap();
        let mut s = PathSystem::new(Palette::Finite(2));
        s.push(vec![0, 1], 0);
        s.push(vec![2, 3], 0);
        s.push(vec![0, 1, 2], 1);
        assert_eq!(s.monochromatic_edges(&g).unwrap(), vec![(1, 1), (2, 0)]);
        assert!(s.mono_budget_ok(&g).unwrap());
        s.paths[2] = ColoredPath::new(vec![1, 2], 1);
        assert_eq!(s.monochromatic_edges(&g).unwrap(), vec![(0, 0), (1, 1), (2, 0)]);
        assert!(!s.mono_budget_ok(&g).unwrap());
    }
}
