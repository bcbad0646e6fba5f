//! Exact minimum weak, strong and rainbow separating path systems on small
//! graphs, by iterative deepening over a pruned branch and bound.
//!
//! Colors are part of the search rather than a post-hoc check: a pick is a
//! `(path, color)` pair, and every separation or side condition is a
//! "distinct colors inside a path set" requirement. The standalone
//! not-all-equal colorer [`coloring_feasible`] is used by
//! [`chromatic_separation_probe`] and for cross-checking.

mod catalog;
mod coloring;
mod search;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use catalog::{enumerate_paths, enumerate_paths_capped, CatalogPath, PathCatalog, DEFAULT_PATH_CAP};
pub use coloring::{coloring_feasible, PairIndex};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::system::{ColoredPath, Mode, Palette, PathSystem};
use search::{Engine, Limits, Outcome, Problem, Requirement};

/// Selects catalog paths by the edges they contain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFilter {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contains: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub avoids: Vec<usize>,
    /// At least one of these edges must be on the path.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub touches: Vec<usize>,
    /// Every edge of the path must be in this set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
}

impl PathFilter {
    pub fn through(edges: &[usize]) -> Self {
        PathFilter { contains: edges.to_vec(), ..Default::default() }
    }

    pub fn single(edge: usize) -> Self {
        PathFilter { contains: vec![edge], max_len: Some(1), ..Default::default() }
    }

    pub fn avoiding(mut self, edges: &[usize]) -> Self {
        self.avoids.extend_from_slice(edges);
        self
    }

    pub fn inside(mut self, edges: &[usize]) -> Self {
        self.within = Some(edges.to_vec());
        self
    }

    pub fn touching(edges: &[usize]) -> Self {
        PathFilter { touches: edges.to_vec(), ..Default::default() }
    }

    pub fn matches(&self, p: &CatalogPath) -> bool {
        self.contains.iter().all(|&e| p.contains(e))
            && !self.avoids.iter().any(|&e| p.contains(e))
            && (self.touches.is_empty() || self.touches.iter().any(|&e| p.contains(e)))
            && self.within.as_ref().map_or(true, |w| {
                let allowed = w.iter().fold(0u128, |m, &e| m | 1 << e);
                p.mask & !allowed == 0
            })
            && self.max_len.map_or(true, |l| p.len() <= l)
    }

    /// Same test for a path given by its edge list.
    pub fn matches_edges(&self, edges: &[usize]) -> bool {
        self.contains.iter().all(|e| edges.contains(e))
            && !self.avoids.iter().any(|e| edges.contains(e))
            && (self.touches.is_empty() || self.touches.iter().any(|e| edges.contains(e)))
            && self.within.as_ref().map_or(true, |w| edges.iter().all(|e| w.contains(e)))
            && self.max_len.map_or(true, |l| edges.len() <= l)
    }
}

/// Side conditions beyond separation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Constraint {
    /// Paths matching `filter` carry at least `min_colors` distinct colors,
    /// counting only colors in `allowed` when given.
    Colors {
        filter: PathFilter,
        min_colors: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        allowed: Option<Vec<u32>>,
    },
    /// At most `max` paths contain `edge`.
    MaxCover { edge: usize, max: u32 },
    /// Every edge outside `exceptions` lies on paths of two colors, using
    /// only paths inside `within` when given.
    Bicolor {
        #[serde(default)]
        exceptions: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        within: Option<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub mode: Mode,
    /// Palette for rainbow mode; ignored otherwise.
    pub k: Palette,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_budget_secs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Constraint>,
    /// Only pairs with both edges in this set must be separated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs_within: Option<Vec<usize>>,
    pub symmetry_breaking: bool,
    #[serde(default = "default_cap")]
    pub path_cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_PATH_CAP
}

impl SolveConfig {
    pub fn new(mode: Mode, k: Palette) -> Self {
        SolveConfig {
            mode,
            k,
            max_size: None,
            time_budget_secs: Some(60.0),
            node_budget: None,
            constraints: Vec::new(),
            pairs_within: None,
            symmetry_breaking: true,
            path_cap: DEFAULT_PATH_CAP,
        }
    }

    pub fn rainbow(k: u32) -> Self {
        Self::new(Mode::Rainbow, Palette::Finite(k))
    }

    pub fn strong() -> Self {
        Self::new(Mode::Strong, Palette::Infinite)
    }

    pub fn weak() -> Self {
        Self::new(Mode::Weak, Palette::Infinite)
    }

    pub fn with_constraint(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    pub fn with_budget(mut self, secs: Option<f64>) -> Self {
        self.time_budget_secs = secs;
        self
    }

    fn colored(&self) -> bool {
        self.mode == Mode::Rainbow && self.k != Palette::Infinite
            || self.constraints.iter().any(|c| !matches!(c, Constraint::MaxCover { .. }))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub size: usize,
    /// No system of size `size - 1` satisfies the config.
    pub optimal: bool,
    pub witness: PathSystem,
    pub config: SolveConfig,
    pub nodes: u64,
}

struct Built {
    catalog: PathCatalog,
    problem: Problem,
}

fn bits_of(npaths: usize, it: impl Iterator<Item = usize>) -> Vec<u64> {
    let mut x = vec![0u64; npaths.div_ceil(64).max(1)];
    for p in it {
        x[p / 64] |= 1 << (p % 64);
    }
    x
}

fn build(g: &Graph, cfg: &SolveConfig) -> Result<Built> {
    let catalog = enumerate_paths_capped(g, cfg.path_cap)?;
    let np = catalog.len();
    let m = g.edge_count();
    let k_int: u32 = if cfg.colored() {
        match cfg.k {
            Palette::Finite(k) => k.min(32),
            Palette::Infinite => 32,
        }
    } else {
        1
    };
    let all = if k_int >= 32 { u32::MAX } else { (1u32 << k_int) - 1 };
    let in_scope: Vec<bool> = match &cfg.pairs_within {
        Some(es) => (0..m).map(|e| es.contains(&e)).collect(),
        None => vec![true; m],
    };
    let sep = |e: usize, f: usize| catalog.separating(e, f).collect::<Vec<_>>();
    let mut raw: Vec<(Vec<u64>, u32, u32)> = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            if !in_scope[e] || !in_scope[f] {
                continue;
            }
            let a = sep(e, f);
            let b = sep(f, e);
            match cfg.mode {
                Mode::Weak => raw.push((bits_of(np, a.iter().chain(&b).copied()), all, 1)),
                Mode::Strong => {
                    raw.push((bits_of(np, a.iter().copied()), all, 1));
                    raw.push((bits_of(np, b.iter().copied()), all, 1));
                }
                Mode::Rainbow => {
                    raw.push((bits_of(np, a.iter().copied()), all, 1));
                    raw.push((bits_of(np, b.iter().copied()), all, 1));
                    if k_int > 1 {
                        raw.push((bits_of(np, a.iter().chain(&b).copied()), all, 2));
                    }
                }
            }
        }
    }
    let mut caps = vec![None; m];
    let mut symmetric = cfg.symmetry_breaking;
    for c in &cfg.constraints {
        match c {
            Constraint::Colors { filter, min_colors, allowed } => {
                let mask = match allowed {
                    Some(cs) => {
                        symmetric = false;
                        cs.iter().filter(|&&c| c < 32).fold(0u32, |m, &c| m | 1 << c) & all
                    }
                    None => all,
                };
                let x = bits_of(np, (0..np).filter(|&p| filter.matches(&catalog.paths[p])));
                raw.push((x, mask, *min_colors));
            }
            Constraint::MaxCover { edge, max } => {
                caps[*edge] = Some(caps[*edge].map_or(*max, |c: u32| c.min(*max)));
            }
            Constraint::Bicolor { exceptions, within } => {
                for e in (0..m).filter(|e| !exceptions.contains(e)) {
                    let mut f = PathFilter::through(&[e]);
                    f.within = within.clone();
                    let x = bits_of(np, (0..np).filter(|&p| f.matches(&catalog.paths[p])));
                    raw.push((x, all, 2.min(k_int)));
                }
            }
        }
    }
    let mut merged: HashMap<(Vec<u64>, u32), u32> = HashMap::new();
    let mut order = Vec::new();
    for (x, allowed, need) in raw {
        let key = (x, allowed);
        match merged.get_mut(&key) {
            Some(n) => *n = (*n).max(need),
            None => {
                order.push(key.clone());
                merged.insert(key, need);
            }
        }
    }
    let reqs = order
        .into_iter()
        .map(|key| {
            let need = merged[&key];
            Requirement { x: key.0, allowed: key.1, need }
        })
        .collect();
    let problem = Problem {
        npaths: np,
        k: k_int,
        path_masks: catalog.paths.iter().map(|p| p.mask).collect(),
        reqs,
        caps,
        symmetric,
    };
    Ok(Built { catalog, problem })
}

fn limits(cfg: &SolveConfig, start: Instant) -> Limits {
    Limits {
        deadline: cfg.time_budget_secs.map(|s| start + Duration::from_secs_f64(s)),
        node_budget: cfg.node_budget,
    }
}

fn witness(cfg: &SolveConfig, catalog: &PathCatalog, picks: &[(usize, u32)], colored: bool) -> PathSystem {
    let paths: Vec<ColoredPath> = picks
        .iter()
        .enumerate()
        .map(|(i, &(p, c))| ColoredPath::new(catalog.paths[p].vertices.clone(), if colored { c } else { i as u32 }))
        .collect();
    let k = if colored { cfg.k } else { Palette::Infinite };
    PathSystem { k, paths }.canonical()
}

/// Indices of the constraints that `s` violates on `g`.
pub fn constraint_violations(g: &Graph, s: &PathSystem, constraints: &[Constraint]) -> Result<Vec<usize>> {
    let lists = s.edge_lists(g)?;
    let colors_of = |f: &PathFilter| -> Vec<u32> {
        let mut cs: Vec<u32> = lists
            .iter()
            .zip(&s.paths)
            .filter(|(es, _)| f.matches_edges(es))
            .map(|(_, p)| p.color)
            .collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    };
    let mut bad = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        let ok = match c {
            Constraint::Colors { filter, min_colors, allowed } => {
                let cs = colors_of(filter);
                let n = cs.iter().filter(|c| allowed.as_ref().map_or(true, |a| a.contains(c))).count();
                n >= *min_colors as usize
            }
            Constraint::MaxCover { edge, max } => lists.iter().filter(|es| es.contains(edge)).count() <= *max as usize,
            Constraint::Bicolor { exceptions, within } => (0..g.edge_count()).filter(|e| !exceptions.contains(e)).all(|e| {
                let mut f = PathFilter::through(&[e]);
                f.within = within.clone();
                colors_of(&f).len() >= 2
            }),
        };
        if !ok {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// Minimum system under `cfg`, by iterative deepening from a packing lower bound.
pub fn min_separator(g: &Graph, cfg: &SolveConfig) -> Result<Certificate> {
    let start = Instant::now();
    let built = build(g, cfg)?;
    let colored = cfg.colored();
    let mut engine = Engine::new(&built.problem, limits(cfg, start));
    let max = cfg.max_size.unwrap_or(usize::MAX);
    let mut size = 0;
    loop {
        if size > max {
            return Err(Error::InfeasibleAtTarget(format!("no system of size <= {max}")));
        }
        let mut found = None;
        match engine.run(size, &mut |picks| {
            found = Some(picks.to_vec());
            false
        }) {
            Outcome::Found => {
                let picks = found.unwrap();
                return Ok(Certificate {
                    size: picks.len(),
                    optimal: true,
                    witness: witness(cfg, &built.catalog, &picks, colored),
                    config: cfg.clone(),
                    nodes: engine.nodes,
                });
            }
            Outcome::Exhausted => size += 1,
            Outcome::Budget => return Err(Error::BudgetExhausted { lower_bound: size }),
        }
    }
}

/// Some system of size at most `size` under `cfg`, without proving minimality.
pub fn find_at_size(g: &Graph, cfg: &SolveConfig, size: usize) -> Result<Option<PathSystem>> {
    let built = build(g, cfg)?;
    let mut engine = Engine::new(&built.problem, limits(cfg, Instant::now()));
    let mut found = None;
    match engine.run(size, &mut |picks| {
        found = Some(picks.to_vec());
        false
    }) {
        Outcome::Found => Ok(found.map(|p| witness(cfg, &built.catalog, &p, cfg.colored()))),
        Outcome::Exhausted => Ok(None),
        Outcome::Budget => Err(Error::BudgetExhausted { lower_bound: 0 }),
    }
}

/// Every system of size at most `size` under `cfg` that becomes valid only
/// with its last pick (each pick set reported once).
pub fn all_at_size(g: &Graph, cfg: &SolveConfig, size: usize) -> Result<Vec<PathSystem>> {
    let built = build(g, cfg)?;
    let mut engine = Engine::new(&built.problem, limits(cfg, Instant::now()));
    let mut out = Vec::new();
    let colored = cfg.colored();
    match engine.run(size, &mut |picks| {
        out.push(witness(cfg, &built.catalog, picks, colored));
        true
    }) {
        Outcome::Budget => Err(Error::BudgetExhausted { lower_bound: 0 }),
        _ => Ok(out),
    }
}

/// Least `k <= kmax` with `c_k(g) = ssp(g)`: enumerates all minimum strongly
/// separating systems and asks whether any admits a rainbow `k`-coloring.
pub fn chromatic_separation_probe(g: &Graph, kmax: u32, budget_secs: Option<f64>) -> Result<Option<u32>> {
    let cfg = SolveConfig::strong().with_budget(budget_secs);
    let ssp = min_separator(g, &cfg)?.size;
    let systems = all_at_size(g, &cfg, ssp)?;
    let indices: Vec<PairIndex> = systems
        .iter()
        .map(|s| PairIndex::build(g, &s.paths.iter().map(|p| p.vertices.clone()).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    for k in 2..=kmax {
        if indices.iter().any(|idx| coloring_feasible(idx, Some(k)).is_some()) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
