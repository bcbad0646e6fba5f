use super::path::path2_paths;
use super::peel::{host_spider_map, is_whole, join_legs, lengths, relabel, sorted_legs, Remaining};
use super::spider::spider2_paths;
use super::{finish, place};
use crate::basecase::{base, block_id, final_id, pair_id, DoubleSpider, Join, BAD_SPIDERS};
use crate::error::{Error, Result};
use crate::graph::{BareSpider, Graph};
use crate::solver::{find_at_size, Constraint, PathFilter, SolveConfig};
use crate::system::{separation_check, ColoredPath, FailureReason, Mode, Palette, PathSystem};

/// Paths of one block and the walks (edge sets) it owns.
struct Unit {
    paths: Vec<ColoredPath>,
    walks: Vec<Vec<usize>>,
}

const DIRECT: [&[usize]; 3] = [&[3, 2, 1, 1], &[3, 2, 1], &[2, 2, 1, 1]];
const WITH_HAT: [&[usize]; 6] = [&[4, 1, 1], &[4, 1], &[3, 2], &[3, 1, 1], &[2, 2, 1], &[1, 1]];
/// Largest block solved again against the rest of the system.
const MAX_RESOLVE_EDGES: usize = 10;
const RESOLVE_BUDGET_SECS: f64 = 5.0;
/// Blocks with monochromatic edges up to which every color swap is tried.
const MAX_EXHAUSTIVE_FLIPS: usize = 10;
const FINAL: [&[usize]; 4] = [&[4, 1, 1], &[3, 1, 1], &[2, 2, 1], &[2, 1, 1]];

/// 2-colored system on a tree, aiming at `ceil(4(n-1)/3)` paths.
///
/// Bare spiders are reduced by peeling three-leaf stars, three long legs and
/// paths of six or more edges. The residual spiders are covered by fixed
/// blocks, with or without their hat; when only the four awkward residual
/// shapes remain they are covered in pairs together with the path joining
/// them. Blocks are assembled by choosing, per block, whether to swap the
/// two colors so monochromatic edges of different blocks differ in color,
/// and any pair still failing gets a single-edge path on one of its edges.
pub fn rsps2_tree(g: &Graph) -> Result<PathSystem> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let mut rem = Remaining::new(g);
    let mut units = Vec::new();
    'outer: while !rem.is_empty() {
        let spiders = rem.spiders();
        let mut next = None;
        for sp in &spiders {
            if let Some(u) = reduce(sp)? {
                next = Some(u);
                break;
            }
        }
        if next.is_none() && is_whole(&spiders) {
            units.push(final_unit(&spiders[0])?);
            break 'outer;
        }
        if next.is_none() {
            for sp in &spiders {
                if let Some(u) = good_block(sp)? {
                    next = Some(u);
                    break;
                }
            }
        }
        let u = match next {
            Some(u) => u,
            None if spiders.len() == 2 && spiders[0].attachment == Some(spiders[1].head) => {
                units.push(pair_unit(&spiders[0], &spiders[1], None)?);
                break 'outer;
            }
            None => {
                let (a, b) = choose_pair(&spiders);
                let conn = rem
                    .path(a.attachment.unwrap(), b.attachment.unwrap())
                    .ok_or_else(|| Error::ConstructionFailed("bad spiders are not connected".into()))?;
                pair_unit(a, b, Some(&conn))?
            }
        };
        for w in &u.walks {
            rem.remove_walk(w);
        }
        units.push(u);
    }
    assemble(g, units)
}

fn unit_on_spider(id: &str, legs: Vec<Vec<usize>>) -> Result<Unit> {
    Ok(Unit { paths: place(base(id)?, &host_spider_map(&legs)), walks: legs })
}

fn path_unit(seq: Vec<usize>) -> Result<Unit> {
    Ok(Unit { paths: relabel(path2_paths(seq.len())?, &seq), walks: vec![seq] })
}

fn reduce(sp: &BareSpider) -> Result<Option<Unit>> {
    let legs = sorted_legs(sp);
    let lens = lengths(&legs);
    let leaves: Vec<Vec<usize>> = legs.iter().filter(|l| l.len() == 2).take(3).cloned().collect();
    if leaves.len() == 3 {
        return unit_on_spider("S4-2col", leaves).map(Some);
    }
    if lens.len() >= 3 && lens[2] >= 2 {
        let three = legs[..3].to_vec();
        let paths = relabel(spider2_paths(&lens[..3])?, &host_spider_map(&three));
        return Ok(Some(Unit { paths, walks: three }));
    }
    if lens.iter().take(2).sum::<usize>() >= 6 {
        let seq = match legs.as_slice() {
            [a] => a.clone(),
            [a, b, ..] => join_legs(a, b),
            [] => unreachable!(),
        };
        return path_unit(seq).map(Some);
    }
    Ok(None)
}

fn with_hat(sp: &BareSpider) -> Vec<Vec<usize>> {
    let mut legs = sorted_legs(sp);
    legs.push(vec![sp.head, sp.attachment.unwrap()]);
    legs.sort_by_key(|l| std::cmp::Reverse(l.len()));
    legs
}

fn good_block(sp: &BareSpider) -> Result<Option<Unit>> {
    let legs = sorted_legs(sp);
    let lens = lengths(&legs);
    if DIRECT.contains(&lens.as_slice()) {
        return unit_on_spider(&block_id(&lens), legs).map(Some);
    }
    if WITH_HAT.contains(&lens.as_slice()) {
        let legs = with_hat(sp);
        let lens = lengths(&legs);
        let id = if lens == [1, 1, 1] { "S4-2col".to_string() } else { block_id(&lens) };
        return unit_on_spider(&id, legs).map(Some);
    }
    Ok(None)
}

fn final_unit(sp: &BareSpider) -> Result<Unit> {
    let legs = sorted_legs(sp);
    let lens = lengths(&legs);
    match legs.as_slice() {
        [a] => return path_unit(a.iter().rev().copied().collect()),
        [a, b] => return path_unit(join_legs(a, b)),
        _ => {}
    }
    if DIRECT.contains(&lens.as_slice()) {
        unit_on_spider(&block_id(&lens), legs)
    } else if FINAL.contains(&lens.as_slice()) {
        unit_on_spider(&final_id(&lens), legs)
    } else {
        Err(Error::ConstructionFailed(format!("unexpected final spider {lens:?}")))
    }
}

fn bad_index(sp: &BareSpider) -> usize {
    let lens = lengths(&sorted_legs(sp));
    BAD_SPIDERS.iter().position(|b| *b == lens.as_slice()).unwrap_or(usize::MAX)
}

/// Two bad spiders, avoiding two `(2,1)` spiders when another choice exists.
fn choose_pair(spiders: &[BareSpider]) -> (&BareSpider, &BareSpider) {
    let small = BAD_SPIDERS.len() - 1;
    let a = spiders.iter().position(|s| bad_index(s) != small).unwrap_or(0);
    let b = (0..spiders.len()).find(|&i| i != a).unwrap();
    (&spiders[a.min(b)], &spiders[a.max(b)])
}

/// Covers two bad spiders with their hats; `conn` is the path between the
/// attachments, or `None` when the spiders share their hat.
fn pair_unit(a: &BareSpider, b: &BareSpider, conn: Option<&[usize]>) -> Result<Unit> {
    let swap = bad_index(a) > bad_index(b);
    let (a, b) = if swap { (b, a) } else { (a, b) };
    let conn: Option<Vec<usize>> = conn.map(|c| if swap { c.iter().rev().copied().collect() } else { c.to_vec() });
    let conn = conn.as_deref();
    let sides = [sorted_legs(a), sorted_legs(b)];
    let lens = [lengths(&sides[0]), lengths(&sides[1])];
    let join = if conn.is_some() { Join::Connector(1) } else { Join::Shared };
    let tmpl = DoubleSpider::new(&lens[0], &lens[1], join);
    let case = base(&pair_id(&lens[0], &lens[1], conn.is_none()))?;

    let mut map = vec![usize::MAX; tmpl.graph.n()];
    let heads = [a.head, b.head];
    for side in 0..2 {
        map[tmpl.heads[side]] = heads[side];
        for (t, h) in tmpl.legs[side].iter().zip(&sides[side]) {
            for (&x, &y) in t.iter().zip(&h[1..]) {
                map[x] = y;
            }
        }
    }
    let mut walks: Vec<Vec<usize>> = sides.iter().flatten().cloned().collect();
    let paths = match conn {
        None => {
            walks.push(vec![a.head, b.head]);
            place(case, &map)
        }
        Some(conn) => {
            walks.push(vec![a.head, a.attachment.unwrap()]);
            walks.push(vec![b.head, b.attachment.unwrap()]);
            let (c1, c2) = (tmpl.connector[0], tmpl.connector[1]);
            let own = |x: usize, y: usize| !((x == c1 && y == c2) || (x == c2 && y == c1));
            case.system
                .paths
                .iter()
                .filter(|p| p.vertices.windows(2).any(|w| own(w[0], w[1])))
                .map(|p| ColoredPath::new(stretch(&p.vertices, c1, c2, &map, conn), p.color))
                .collect()
        }
    };
    Ok(Unit { paths, walks })
}

/// Maps a template path through a one-edge connector `c1 - c2` onto a host
/// whose connector is `conn` (possibly a single vertex).
fn stretch(vs: &[usize], c1: usize, c2: usize, map: &[usize], conn: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < vs.len() {
        let v = vs[i];
        let next = vs.get(i + 1).copied();
        let seg: Vec<usize> = if v == c1 && next == Some(c2) {
            i += 1;
            conn.to_vec()
        } else if v == c2 && next == Some(c1) {
            i += 1;
            conn.iter().rev().copied().collect()
        } else if v == c1 {
            vec![conn[0]]
        } else if v == c2 {
            vec![*conn.last().unwrap()]
        } else {
            vec![map[v]]
        };
        for x in seg {
            if out.last() != Some(&x) {
                out.push(x);
            }
        }
        i += 1;
    }
    out
}

fn edge_ids(g: &Graph, walks: &[Vec<usize>]) -> Vec<usize> {
    walks.iter().flat_map(|w| w.windows(2).map(|e| g.edge_index(e[0], e[1]).expect("walk edge"))).collect()
}

/// Colors of each own edge of a unit, counting only paths that stay inside it.
fn inner_monos(g: &Graph, u: &Unit) -> Result<Vec<(usize, u32)>> {
    let own = edge_ids(g, &u.walks);
    let mut colors: Vec<Vec<u32>> = vec![Vec::new(); g.edge_count()];
    for p in &u.paths {
        let es = g.walk_edges(&p.vertices).ok_or_else(|| Error::ConstructionFailed(format!("path {:?} left the tree", p.vertices)))?;
        if es.iter().all(|e| own.contains(e)) {
            for e in es {
                colors[e].push(p.color);
            }
        }
    }
    let mut out = Vec::new();
    for e in own {
        let mut cs = colors[e].clone();
        cs.sort_unstable();
        cs.dedup();
        if cs.len() == 1 {
            out.push((e, cs[0]));
        }
    }
    Ok(out)
}

fn assemble(g: &Graph, units: Vec<Unit>) -> Result<PathSystem> {
    // only blocks with monochromatic edges care about the color swap
    let monos: Vec<Vec<(usize, u32)>> = units.iter().map(|u| inner_monos(g, u)).collect::<Result<_>>()?;
    let live: Vec<usize> = (0..units.len()).filter(|&i| !monos[i].is_empty()).collect();
    let build = |flips: &[bool]| -> Vec<ColoredPath> {
        units
            .iter()
            .take(flips.len())
            .zip(flips)
            .flat_map(|(u, &f)| u.paths.iter().map(move |p| ColoredPath::new(p.vertices.clone(), p.color ^ f as u32)))
            .collect()
    };
    let failures = |flips: &[bool]| -> Result<usize> {
        let s = PathSystem { k: Palette::Finite(2), paths: build(flips) };
        Ok(separation_check(g, &s, Mode::Rainbow)?.failures.len())
    };
    let mut flips = vec![false; units.len()];
    if live.len() <= MAX_EXHAUSTIVE_FLIPS {
        let mut best = (failures(&flips)?, 0u32);
        for mask in 1u32..1 << live.len() {
            for (p, &i) in live.iter().enumerate() {
                flips[i] = mask >> p & 1 == 1;
            }
            let f = failures(&flips)?;
            if f < best.0 {
                best = (f, mask);
            }
            if f == 0 {
                break;
            }
        }
        for (p, &i) in live.iter().enumerate() {
            flips[i] = best.1 >> p & 1 == 1;
        }
    } else {
        let mut current = failures(&flips)?;
        for &i in &live {
            flips[i] = true;
            let f = failures(&flips)?;
            if f < current {
                current = f;
            } else {
                flips[i] = false;
            }
        }
    }
    let mut paths = build(&flips);
    if failures(&flips)? > 0 {
        let last = units.len() - 1;
        let context: Vec<ColoredPath> = build(&flips[..last]);
        if let Some(mut fresh) = resolve_in_context(g, &units[last], &context)? {
            if fresh.len() <= units[last].paths.len() + 1 {
                paths = context;
                paths.append(&mut fresh);
            }
        }
    }
    repair(g, &mut paths)?;
    finish(g, Palette::Finite(2), paths)
}

/// Solves a block again on its own edges so that, together with `context`,
/// every pair between its edges and the rest is separated. Each own edge that
/// some outside edge can only be told apart from in one color `c` must meet
/// the other color. Returns the smallest such system up to one path larger.
fn resolve_in_context(g: &Graph, u: &Unit, context: &[ColoredPath]) -> Result<Option<Vec<ColoredPath>>> {
    let own = edge_ids(g, &u.walks);
    if own.len() > MAX_RESOLVE_EDGES || u.paths.iter().any(|p| g.walk_edges(&p.vertices).is_none_or(|es| es.iter().any(|e| !own.contains(e)))) {
        return Ok(None);
    }
    let ctx = PathSystem { k: Palette::Finite(2), paths: context.to_vec() };
    let lists = ctx.edge_lists(g)?;
    let colors = |has: usize, lacks: usize| -> Vec<u32> {
        let mut cs: Vec<u32> =
            lists.iter().zip(context).filter(|(es, _)| es.contains(&has) && !es.contains(&lacks)).map(|(_, p)| p.color).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    };
    let mut verts: Vec<usize> = u.walks.iter().flatten().copied().collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let sub = Graph::from_edges(verts.len(), own.iter().map(|&e| (local(g.edge(e).0), local(g.edge(e).1))))?;

    let mut cfg = SolveConfig::rainbow(2).with_budget(Some(RESOLVE_BUDGET_SECS));
    cfg.symmetry_breaking = false;
    for &e in &own {
        let mut need = [false; 2];
        for f in (0..g.edge_count()).filter(|f| !own.contains(f)) {
            let mut seen = colors(e, f);
            seen.extend(colors(f, e));
            seen.sort_unstable();
            seen.dedup();
            if let [c] = seen.as_slice() {
                need[1 - *c as usize] = true;
            }
        }
        let (a, b) = g.edge(e);
        let le = sub.edge_index(local(a), local(b)).unwrap();
        let filter = PathFilter::through(&[le]);
        match need {
            [true, true] => cfg.constraints.push(Constraint::Colors { filter, min_colors: 2, allowed: None }),
            [true, false] => cfg.constraints.push(Constraint::Colors { filter, min_colors: 1, allowed: Some(vec![0]) }),
            [false, true] => cfg.constraints.push(Constraint::Colors { filter, min_colors: 1, allowed: Some(vec![1]) }),
            [false, false] => {}
        }
    }
    for size in u.paths.len()..=u.paths.len() + 1 {
        match find_at_size(&sub, &cfg, size) {
            Ok(Some(s)) => return Ok(Some(relabel(s.paths, &verts))),
            Ok(None) => {}
            Err(Error::BudgetExhausted { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Adds single-edge paths until every pair is separated.
fn repair(g: &Graph, paths: &mut Vec<ColoredPath>) -> Result<()> {
    for _ in 0..=g.edge_count() {
        let s = PathSystem { k: Palette::Finite(2), paths: paths.clone() };
        let report = separation_check(g, &s, Mode::Rainbow)?;
        let Some(f) = report.failures.first() else {
            return Ok(());
        };
        let lists = s.edge_lists(g)?;
        let color_on = |x: usize, y: usize| {
            lists.iter().zip(&s.paths).find(|(es, _)| es.contains(&x) && !es.contains(&y)).map(|(_, p)| p.color)
        };
        let (e, c) = match f.reason {
            FailureReason::ColorsCoincide => (f.e, 1 - color_on(f.e, f.f).unwrap_or(1)),
            FailureReason::NoPathENotF => (f.e, 1 - color_on(f.f, f.e).unwrap_or(1)),
            FailureReason::NoPathFNotE => (f.f, 1 - color_on(f.e, f.f).unwrap_or(1)),
        };
        let (u, v) = g.edge(e);
        paths.push(ColoredPath::new(vec![u, v], c));
    }
    Err(Error::ConstructionFailed("repair did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_graph, GraphSpec};

    #[test]
    fn stretch_handles_every_connector_length() {
        let map: Vec<usize> = (0..10).map(|v| v + 100).collect();
        assert_eq!(stretch(&[0, 1, 2, 3], 1, 2, &map, &[7]), vec![100, 7, 103]);
        assert_eq!(stretch(&[0, 1, 2, 3], 1, 2, &map, &[7, 8, 9]), vec![100, 7, 8, 9, 103]);
        assert_eq!(stretch(&[3, 2, 1], 1, 2, &map, &[7, 8]), vec![103, 8, 7]);
    }

    #[test]
    fn bad_pairs_stretch_over_any_connector() {
        for (i, a) in BAD_SPIDERS.iter().enumerate() {
            for b in &BAD_SPIDERS[i..] {
                for len in 0..=10 {
                    let g = DoubleSpider::new(a, b, Join::Connector(len)).graph;
                    let s = rsps2_tree(&g).unwrap_or_else(|e| panic!("{a:?} {b:?} len {len}: {e}"));
                    assert!(s.len() <= (4 * g.edge_count()).div_ceil(3), "{a:?} {b:?} len {len}");
                }
            }
        }
    }

    #[test]
    fn small_shapes() {
        for spec in [
            GraphSpec::Path { n: 2 },
            GraphSpec::Path { n: 9 },
            GraphSpec::Star { n: 7 },
            GraphSpec::Spider { legs: vec![3, 1] },
            GraphSpec::Spider { legs: vec![2, 2, 1] },
            GraphSpec::CompleteBinaryTree { depth: 4 },
        ] {
            let g = gen_graph(&spec).unwrap();
            let s = rsps2_tree(&g).unwrap();
            let m = g.edge_count();
            assert!(s.len() <= (4 * m).div_ceil(3), "{spec:?}: {}", s.len());
        }
    }
}
