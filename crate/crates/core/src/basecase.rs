//! Small fixed systems that the constructions grow from.
//!
//! Each case is a host graph, a palette, a size target and a list of side
//! conditions. [`derive_base`] finds a system meeting them with the exact
//! solver; the results are frozen as JSON under `crates/core/basecases/`
//! (one file per case plus `manifest.json`) and embedded at build time.
//! Setting `RSPS_BASECASE_DIR` loads the library from another directory.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{gen_graph, Graph, GraphDoc, GraphSpec};
use crate::solver::{constraint_violations, find_at_size, Constraint, PathFilter, SolveConfig};
use crate::system::{separation_check, Mode, PathSystem};

mod embedded {
    include!(concat!(env!("OUT_DIR"), "/basecases.rs"));
}

pub const MANIFEST: &str = "manifest.json";
pub const DIR_ENV: &str = "RSPS_BASECASE_DIR";

/// Vertex sequences of the legs of `gen_graph(Spider { legs })`, center excluded.
pub fn spider_leg_vertices(legs: &[usize]) -> Vec<Vec<usize>> {
    let mut next = 1;
    legs.iter()
        .map(|&l| {
            let leg = (next..next + l).collect();
            next += l;
            leg
        })
        .collect()
}

/// Edge indices of each leg, from the center outward.
pub fn leg_edges(g: &Graph, head: usize, legs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    legs.iter()
        .map(|leg| {
            let mut prev = head;
            leg.iter()
                .map(|&v| {
                    let e = g.edge_index(prev, v).expect("leg edge");
                    prev = v;
                    e
                })
                .collect()
        })
        .collect()
}

/// How the two heads of a [`DoubleSpider`] are joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Join {
    /// A single edge between the heads.
    Shared,
    /// Head, attachment, `len` connector edges, attachment, head.
    Connector(usize),
}

/// Two spiders whose heads are joined by a hat edge or through a connector.
/// Head 1 is vertex 0, then its legs, then the connector, then head 2 and
/// its legs.
#[derive(Clone, Debug)]
pub struct DoubleSpider {
    pub graph: Graph,
    pub heads: [usize; 2],
    pub legs: [Vec<Vec<usize>>; 2],
    /// Vertices from the first attachment to the second.
    pub connector: Vec<usize>,
}

impl DoubleSpider {
    pub fn new(l1: &[usize], l2: &[usize], join: Join) -> DoubleSpider {
        let mut edges = Vec::new();
        let mut next = 1;
        let grow = |head: usize, lens: &[usize], next: &mut usize, edges: &mut Vec<(usize, usize)>| {
            lens.iter()
                .map(|&l| {
                    let mut prev = head;
                    (0..l)
                        .map(|_| {
                            edges.push((prev, *next));
                            prev = *next;
                            *next += 1;
                            prev
                        })
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        let legs1 = grow(0, l1, &mut next, &mut edges);
        let connector: Vec<usize> = match join {
            Join::Shared => Vec::new(),
            Join::Connector(len) => (0..=len).map(|i| next + i).collect(),
        };
        next += connector.len();
        for w in connector.windows(2) {
            edges.push((w[0], w[1]));
        }
        let h2 = next;
        next += 1;
        match connector.first() {
            None => edges.push((0, h2)),
            Some(&a) => {
                edges.push((0, a));
                edges.push((*connector.last().unwrap(), h2));
            }
        }
        let legs2 = grow(h2, l2, &mut next, &mut edges);
        let graph = Graph::from_edges(next, edges).expect("double spider is simple");
        DoubleSpider { graph, heads: [0, h2], legs: [legs1, legs2], connector }
    }

    pub fn connector_edges(&self) -> Vec<usize> {
        self.connector.windows(2).map(|w| self.graph.edge_index(w[0], w[1]).unwrap()).collect()
    }

    /// Edges of the two spiders and their hats.
    pub fn block_edges(&self) -> Vec<usize> {
        let c = self.connector_edges();
        (0..self.graph.edge_count()).filter(|e| !c.contains(e)).collect()
    }
}

/// What [`derive_base`] is asked to find.
#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub id: String,
    pub graph: Graph,
    pub k: u32,
    pub size: usize,
    pub constraints: Vec<Constraint>,
    /// Only pairs inside this edge set must be separated.
    pub pairs_within: Option<Vec<usize>>,
    pub budget_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    pub method: String,
    pub mode: Mode,
    pub symmetry_breaking: bool,
    pub budget_secs: f64,
}

/// One manifest line: the case's side conditions and how it was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub file: String,
    pub k: u32,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Constraint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs_within: Option<Vec<usize>>,
    pub solver: SolverSettings,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct CaseFile {
    id: String,
    graph: GraphDoc,
    system: PathSystem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseCase {
    pub entry: ManifestEntry,
    pub graph: Graph,
    pub system: PathSystem,
}

impl BaseCase {
    pub fn id(&self) -> &str {
        &self.entry.id
    }

    /// Checks separation, the size target and every recorded side condition.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::PreconditionViolated(format!("{}: {m}", self.entry.id)));
        if self.system.len() > self.entry.size {
            return fail(format!("size {} exceeds target {}", self.system.len(), self.entry.size));
        }
        if self.system.k.finite() != Some(self.entry.k) {
            return fail(format!("palette {} differs from {}", self.system.k, self.entry.k));
        }
        let report = separation_check(&self.graph, &self.system, Mode::Rainbow)?;
        let scope = self.entry.pairs_within.as_ref();
        let bad = report
            .failures
            .iter()
            .find(|f| scope.map_or(true, |s| s.contains(&f.e) && s.contains(&f.f)));
        if let Some(f) = bad {
            return fail(format!("pair ({},{}) not separated", f.e, f.f));
        }
        let v = constraint_violations(&self.graph, &self.system, &self.entry.constraints)?;
        if let Some(i) = v.first() {
            return fail(format!("side condition {i} violated"));
        }
        Ok(())
    }
}

fn file_name(id: &str) -> String {
    let body: String = id
        .chars()
        .filter_map(|c| match c {
            '(' | ')' => None,
            ',' => Some('.'),
            c if c.is_ascii_alphanumeric() || c == '-' || c == '.' => Some(c),
            _ => Some('_'),
        })
        .collect();
    format!("{body}.json")
}

#[derive(Clone, Debug, Default)]
pub struct BaseCaseLibrary {
    cases: BTreeMap<String, BaseCase>,
}

impl BaseCaseLibrary {
    /// Parses a manifest plus case files given as `(file name, contents)`.
    pub fn from_files<'a>(files: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let files: BTreeMap<&str, &str> = files.into_iter().collect();
        let manifest = match files.get(MANIFEST) {
            Some(m) => m,
            None => return Ok(BaseCaseLibrary::default()),
        };
        let entries: Vec<ManifestEntry> = serde_json::from_str(manifest)?;
        let mut cases = BTreeMap::new();
        for entry in entries {
            let text = files
                .get(entry.file.as_str())
                .ok_or_else(|| Error::UnknownCase(format!("{}: missing file {}", entry.id, entry.file)))?;
            let cf: CaseFile = serde_json::from_str(text)?;
            let graph = Graph::from_doc(&cf.graph)?;
            cases.insert(entry.id.clone(), BaseCase { entry, graph, system: cf.system });
        }
        Ok(BaseCaseLibrary { cases })
    }

    pub fn embedded() -> Result<Self> {
        Self::from_files(embedded::EMBEDDED.iter().copied())
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        let mut owned = Vec::new();
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|x| x == "json") {
                let name = path.file_name().unwrap().to_string_lossy().into_owned();
                owned.push((name, std::fs::read_to_string(&path)?));
            }
        }
        Self::from_files(owned.iter().map(|(n, t)| (n.as_str(), t.as_str())))
    }

    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut entries = Vec::new();
        for case in self.cases.values() {
            let cf = CaseFile { id: case.entry.id.clone(), graph: case.graph.to_doc(None), system: case.system.clone() };
            std::fs::write(dir.join(&case.entry.file), serde_json::to_string_pretty(&cf)? + "\n")?;
            entries.push(case.entry.clone());
        }
        std::fs::write(dir.join(MANIFEST), serde_json::to_string_pretty(&entries)? + "\n")?;
        Ok(())
    }

    pub fn get(&self, id: &str) -> Result<&BaseCase> {
        self.cases.get(id).ok_or_else(|| Error::UnknownCase(id.to_string()))
    }

    pub fn insert(&mut self, case: BaseCase) {
        self.cases.insert(case.entry.id.clone(), case);
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.cases.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn verify_all(&self) -> Result<()> {
        self.cases.values().try_for_each(BaseCase::verify)
    }
}

static LIBRARY: OnceLock<std::result::Result<BaseCaseLibrary, String>> = OnceLock::new();

/// The library used by the constructions: `RSPS_BASECASE_DIR` if set,
/// otherwise the embedded golden files.
pub fn library() -> Result<&'static BaseCaseLibrary> {
    LIBRARY
        .get_or_init(|| {
            let lib = match std::env::var_os(DIR_ENV) {
                Some(dir) => BaseCaseLibrary::load_dir(Path::new(&dir)),
                None => BaseCaseLibrary::embedded(),
            };
            lib.map_err(|e| e.to_string())
        })
        .as_ref()
        .map_err(|e| Error::UnknownCase(format!("base case library unavailable: {e}")))
}

/// Looks up a case in [`library`].
pub fn base(id: &str) -> Result<&'static BaseCase> {
    library()?.get(id)
}

fn colors(filter: PathFilter, min: u32) -> Constraint {
    Constraint::Colors { filter, min_colors: min, allowed: None }
}

fn colors_in(filter: PathFilter, allowed: u32) -> Constraint {
    Constraint::Colors { filter, min_colors: 1, allowed: Some(vec![allowed]) }
}

fn bicolor(exceptions: Vec<usize>) -> Constraint {
    Constraint::Bicolor { exceptions, within: None }
}

/// `t` lies in exactly a single-edge path and one other-colored path through `p`.
fn terminal_pair(p: usize, t: usize) -> Vec<Constraint> {
    vec![
        Constraint::MaxCover { edge: t, max: 2 },
        colors(PathFilter::single(t), 1),
        colors(PathFilter::through(&[p, t]), 1),
        colors(PathFilter::through(&[t]), 2),
    ]
}

/// Two-color leg conditions for the spider extension: the penultimate edge
/// is in both colors away from the terminal edge.
fn extendable_leg(leg: &[usize]) -> Vec<Constraint> {
    let (p, t) = (leg[leg.len() - 2], leg[leg.len() - 1]);
    let mut cs = vec![colors(PathFilter::through(&[p]).avoiding(&[t]), 2)];
    cs.extend(terminal_pair(p, t));
    cs
}

/// Four-color leg conditions: as [`terminal_pair`], with three colors meeting the leg.
fn staircase_leg(leg: &[usize], three: bool) -> Vec<Constraint> {
    let (c, t) = (leg[0], leg[1]);
    let mut cs = terminal_pair(c, t);
    if three {
        cs.push(colors(PathFilter::touching(&[c, t]), 3));
    }
    cs
}

fn legs_id(legs: &[usize]) -> String {
    legs.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

pub fn spider_id(legs: &[usize], suffix: &str) -> String {
    format!("S({}){suffix}", legs_id(legs))
}

pub fn block_id(legs: &[usize]) -> String {
    format!("block-({})-2col", legs_id(legs))
}

pub fn final_id(legs: &[usize]) -> String {
    format!("final-({})-2col", legs_id(legs))
}

pub fn pair_id(a: &[usize], b: &[usize], shared: bool) -> String {
    let kind = if shared { "sharedhat" } else { "badpair" };
    format!("{kind}-({})x({})-2col", legs_id(a), legs_id(b))
}

/// Leg vectors of the bad extended spiders, in the order pairs are keyed.
pub const BAD_SPIDERS: [&[usize]; 4] = [&[3, 1], &[2, 2], &[2, 1, 1], &[2, 1]];

pub const TWO_PATHS_HAT: &str = "two-paths-hat-4col";

fn add(out: &mut Vec<CaseSpec>, id: String, graph: Graph, k: u32, size: usize, constraints: Vec<Constraint>) -> &mut CaseSpec {
    out.push(CaseSpec { id, graph, k, size, constraints, pairs_within: None, budget_secs: 600.0 });
    out.last_mut().unwrap()
}

/// Every registered case.
pub fn registry() -> Vec<CaseSpec> {
    let mut out = Vec::new();
    let spider = |legs: &[usize]| gen_graph(&GraphSpec::Spider { legs: legs.to_vec() }).unwrap();
    let path = |n: usize| gen_graph(&GraphSpec::Path { n }).unwrap();
    let star = |n: usize| gen_graph(&GraphSpec::Star { n }).unwrap();

    for (n, size) in [(3, 2), (4, 4), (5, 5), (6, 6)] {
        add(&mut out, format!("P{n}-2col"), path(n), 2, size, vec![]);
    }
    // e6 (index 5) alone in a blue path; e5 (index 4) in a blue path avoiding e6
    add(&mut out, 
        "P7-2col".into(),
        path(7),
        2,
        8,
        vec![bicolor(vec![]), colors_in(PathFilter::single(5), 1), colors_in(PathFilter::through(&[4]).avoiding(&[5]), 1)],
    );
    add(&mut out, "S4-2col".into(), star(4), 2, 4, vec![bicolor(vec![])]);
    add(&mut out, "S5-2col".into(), star(5), 2, 4, vec![]);
    add(&mut out, "S6-2col".into(), star(6), 2, 6, vec![]);

    // all-2 spider bases: legs 0 and 1 may carry center monochromatic edges
    // of distinct colors, every other leg is extendable
    for (legs, size, mono, suffix) in [
        (vec![2, 2, 2], 8, vec![], "-2col"),
        (vec![2, 2, 2, 2], 10, vec![0, 1], "-2col"),
        (vec![2, 2, 2, 2, 2], 12, vec![0, 1], "-2col"),
        (vec![2, 2, 2, 2, 2, 2], 15, vec![0, 1], "-2col"),
        (vec![3, 3, 2, 2], 12, vec![0, 1], "-2col-long"),
        (vec![3, 2, 2, 2, 2], 14, vec![0], "-2col-long"),
        (vec![2, 2, 2, 2, 2, 2], 16, vec![], "-2col-long"),
    ] {
        let g = spider(&legs);
        let le = leg_edges(&g, 0, &spider_leg_vertices(&legs));
        let ex: Vec<usize> = mono.iter().map(|&j| le[j][0]).collect();
        let mut cs = vec![bicolor(ex.clone())];
        if ex.len() == 2 {
            cs.push(colors(PathFilter::touching(&ex), 2));
        }
        for (j, leg) in le.iter().enumerate() {
            if legs[j] >= 3 || !mono.contains(&j) {
                cs.extend(extendable_leg(leg));
            }
        }
        add(&mut out, spider_id(&legs, suffix), g, 2, size, cs);
    }

    for (legs, size) in [
        (vec![3, 2, 1, 1], 9),
        (vec![3, 2, 1], 8),
        (vec![2, 2, 1, 1], 8),
        (vec![4, 1, 1, 1], 9),
        (vec![4, 1, 1], 8),
        (vec![3, 1, 1, 1], 8),
    ] {
        add(&mut out, block_id(&legs), spider(&legs), 2, size, vec![bicolor(vec![])]);
    }
    for (legs, size, ex) in [
        (vec![4, 1, 1], 8, vec![]),
        (vec![3, 1, 1], 6, vec![1]),
        (vec![2, 2, 1], 6, vec![0, 1]),
        (vec![2, 1, 1], 5, vec![1]),
    ] {
        add(&mut out, final_id(&legs), spider(&legs), 2, size, vec![bicolor(ex)]);
    }
    for i in 0..BAD_SPIDERS.len() {
        for j in i..BAD_SPIDERS.len() {
            let (a, b) = (BAD_SPIDERS[i], BAD_SPIDERS[j]);
            let m = a.iter().sum::<usize>() + b.iter().sum::<usize>();
            let ds = DoubleSpider::new(a, b, Join::Shared);
            add(&mut out, pair_id(a, b, true), ds.graph, 2, 4 * (m + 1) / 3, vec![bicolor(vec![])]);
            let ds = DoubleSpider::new(a, b, Join::Connector(1));
            let block = ds.block_edges();
            let conn = ds.connector_edges();
            let mut ex = conn.clone();
            let mut cs = Vec::new();
            if a == [2, 1] && b == [2, 1] {
                ex.extend(PAIR_21_EXCEPTIONS);
                // each hat keeps a path of its own and meets both colors
                // through the connector
                for e in PAIR_21_EXCEPTIONS {
                    cs.push(colors(PathFilter::through(&[e]).avoiding(&conn), 1));
                    cs.push(colors(PathFilter::through(&[e]), 2));
                }
            }
            cs.push(Constraint::Bicolor { exceptions: ex, within: Some(block.clone()) });
            add(&mut out, pair_id(a, b, false), ds.graph, 2, 4 * (m + 2) / 3, cs).pairs_within = Some(block);
        }
    }

    add(&mut out, "S4-3col".into(), star(4), 3, 3, vec![bicolor(vec![])]);
    add(&mut out, spider_id(&[2, 1, 1], "-3col"), spider(&[2, 1, 1]), 3, 5, vec![bicolor(vec![])]);
    add(&mut out, "C5-3col".into(), gen_graph(&GraphSpec::Cycle { n: 5 }).unwrap(), 3, 5, vec![]);

    for q in 3..=5 {
        let legs = vec![2; q];
        let g = spider(&legs);
        let le = leg_edges(&g, 0, &spider_leg_vertices(&legs));
        // the five-leg block cannot cover every edge in two colors; its
        // first leg only gets two colors
        let mut cs = if q == 5 { vec![] } else { vec![bicolor(vec![])] };
        for (j, leg) in le.iter().enumerate() {
            cs.extend(staircase_leg(leg, !(q == 5 && j == 0)));
        }
        add(&mut out, spider_id(&legs, "-4col"), g, 4, 2 * q, cs);
    }
    let ds = DoubleSpider::new(&[2, 2], &[2, 2], Join::Shared);
    let mut cs = Vec::new();
    for side in 0..2 {
        for leg in leg_edges(&ds.graph, ds.heads[side], &ds.legs[side]) {
            cs.extend(staircase_leg(&leg, true));
        }
    }
    add(&mut out, TWO_PATHS_HAT.into(), ds.graph, 4, 9, cs);
    out
}

/// Non-bridging monochromatic edges allowed in the (2,1)x(2,1) bad pair: the
/// two hats.
const PAIR_21_EXCEPTIONS: [usize; 2] = [2, 5];

pub fn case_spec(id: &str) -> Result<CaseSpec> {
    registry().into_iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// Solves one case at its size target and checks the result.
pub fn derive_spec(spec: &CaseSpec) -> Result<BaseCase> {
    let mut cfg = SolveConfig::rainbow(spec.k).with_budget(Some(spec.budget_secs));
    cfg.constraints = spec.constraints.clone();
    cfg.pairs_within = spec.pairs_within.clone();
    let system = find_at_size(&spec.graph, &cfg, spec.size)?
        .ok_or_else(|| Error::InfeasibleAtTarget(format!("{}: no system of size {}", spec.id, spec.size)))?;
    let case = BaseCase {
        entry: ManifestEntry {
            id: spec.id.clone(),
            file: file_name(&spec.id),
            k: spec.k,
            size: spec.size,
            constraints: spec.constraints.clone(),
            pairs_within: spec.pairs_within.clone(),
            solver: SolverSettings {
                method: "find_at_size".into(),
                mode: Mode::Rainbow,
                symmetry_breaking: cfg.symmetry_breaking,
                budget_secs: spec.budget_secs,
            },
        },
        graph: spec.graph.clone(),
        system,
    };
    case.verify()?;
    Ok(case)
}

pub fn derive_base(id: &str) -> Result<BaseCase> {
    derive_spec(&case_spec(id)?)
}

/// Derives every registered case, reporting each id and its solve time.
pub fn derive_all(mut progress: impl FnMut(&str, f64)) -> Result<BaseCaseLibrary> {
    let mut lib = BaseCaseLibrary::default();
    for spec in registry() {
        let t = Instant::now();
        lib.insert(derive_spec(&spec)?);
        progress(&spec.id, t.elapsed().as_secs_f64());
    }
    Ok(lib)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_spider_layout() {
        let ds = DoubleSpider::new(&[2, 1], &[2, 1], Join::Connector(1));
        assert_eq!(ds.graph.n(), 10);
        assert_eq!(ds.graph.edge_count(), 9);
        assert_eq!(ds.heads, [0, 6]);
        assert_eq!(ds.connector, vec![4, 5]);
        assert_eq!(ds.block_edges().len(), 8);
        let shared = DoubleSpider::new(&[2, 1], &[2, 1], Join::Shared);
        assert_eq!(shared.graph.edge_count(), 7);
        assert!(shared.graph.edge_index(0, 4).is_some());
        let touching = DoubleSpider::new(&[1], &[1], Join::Connector(0));
        assert_eq!(touching.graph.edges(), &[(0, 1), (0, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn registry_ids_are_unique() {
        let reg = registry();
        let mut ids: Vec<&str> = reg.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
    }

    #[test]
    fn file_names() {
        assert_eq!(file_name("S(2,2,2)-2col"), "S2.2.2-2col.json");
        assert_eq!(file_name("badpair-(2,1)x(2,1)-2col"), "badpair-2.1x2.1-2col.json");
    }

    #[test]
    fn embedded_library_is_complete_and_valid() {
        let lib = BaseCaseLibrary::embedded().unwrap();
        for spec in registry() {
            let case = lib.get(&spec.id).unwrap();
            assert_eq!(case.graph, spec.graph, "{}", spec.id);
            assert_eq!(case.entry.constraints, spec.constraints, "{}", spec.id);
            assert_eq!(case.entry.size, spec.size, "{}", spec.id);
        }
        lib.verify_all().unwrap();
    }

    #[test]
    fn small_case_rederives() {
        let case = derive_base("P7-2col").unwrap();
        assert_eq!(case.system.len(), 8);
    }

    #[test]
    fn tampered_case_is_rejected() {
        let lib = BaseCaseLibrary::embedded().unwrap();
        let mut case = lib.get("P7-2col").unwrap().clone();
        case.system = case.system.without_path(0);
        assert!(case.verify().is_err());
    }
}
