use super::peel::{host_spider_map, is_whole, relabel, Remaining};
use super::spider::{prune_leaf_edge, spider4_paths};
use super::{place, finish, staircase_to};
use crate::basecase::{base, DoubleSpider, Join, TWO_PATHS_HAT};
use crate::error::{Error, Result};
use crate::graph::{BareSpider, Graph};
use crate::system::{ColoredPath, Palette, PathSystem};

/// 4-colored system with `n - 1` paths on a tree that is not a path.
///
/// A bare spider with `q` legs is covered by itself when `q != 2 (mod 3)`
/// and together with its hat otherwise; both blocks are bicolor. Two
/// two-legged spiders sharing a hat are covered from a fixed 9-edge system.
pub fn rsps4_tree(g: &Graph) -> Result<PathSystem> {
    let st = g.tree_stats()?;
    if st.is_path {
        return Err(Error::PreconditionViolated("tree must not be a path".into()));
    }
    let mut rem = Remaining::new(g);
    let mut paths = Vec::new();
    while !rem.is_empty() {
        let spiders = rem.spiders();
        if is_whole(&spiders) {
            paths.extend(spider_block(&spiders[0].legs)?);
            break;
        }
        let legs = if spiders.len() == 2 && spiders[0].attachment == Some(spiders[1].head) {
            let (a, b) = (&spiders[0], &spiders[1]);
            let (qa, qb) = (a.legs.len(), b.legs.len());
            if qa % 3 != 2 {
                a.legs.clone()
            } else if qb % 3 != 2 {
                b.legs.clone()
            } else if qa >= 5 {
                with_hat(b)
            } else if qb >= 5 {
                with_hat(a)
            } else {
                paths.extend(two_paths_hat(a, b)?);
                break;
            }
        } else {
            let sp = &spiders[0];
            if sp.legs.len() % 3 == 2 {
                with_hat(sp)
            } else {
                sp.legs.clone()
            }
        };
        paths.extend(spider_block(&legs)?);
        for l in &legs {
            rem.remove_walk(l);
        }
    }
    finish(g, Palette::Finite(4), paths)
}

fn with_hat(sp: &BareSpider) -> Vec<Vec<usize>> {
    let mut legs = sp.legs.clone();
    legs.push(vec![sp.head, sp.attachment.unwrap()]);
    legs
}

fn spider_block(legs: &[Vec<usize>]) -> Result<Vec<ColoredPath>> {
    let lens: Vec<usize> = legs.iter().map(|l| l.len() - 1).collect();
    Ok(relabel(spider4_paths(&lens)?, &host_spider_map(legs)))
}

/// Two spiders with two legs each whose heads are adjacent.
fn two_paths_hat(a: &BareSpider, b: &BareSpider) -> Result<Vec<ColoredPath>> {
    let host = [&a.legs, &b.legs];
    let long = |side: usize| host[side].iter().map(|l| (l.len() - 1).max(2)).collect::<Vec<_>>();
    let virt = DoubleSpider::new(&long(0), &long(1), Join::Shared);
    let tmpl = DoubleSpider::new(&[2, 2], &[2, 2], Join::Shared);
    let mut map = vec![0; tmpl.graph.n()];
    for side in 0..2 {
        map[tmpl.heads[side]] = virt.heads[side];
        for (t, v) in tmpl.legs[side].iter().zip(&virt.legs[side]) {
            map[t[0]] = v[0];
            map[t[1]] = v[1];
        }
    }
    let mut paths = place(base(TWO_PATHS_HAT)?, &map);
    let mut to_host = vec![usize::MAX; virt.graph.n()];
    for side in 0..2 {
        to_host[virt.heads[side]] = [a.head, b.head][side];
        for (v, h) in virt.legs[side].iter().zip(host[side]) {
            let full: Vec<usize> = std::iter::once(virt.heads[side]).chain(v.iter().copied()).collect();
            staircase_to(&mut paths, &full, 2)?;
            if h.len() == 2 {
                prune_leaf_edge(&mut paths, v[0], v[1]);
            }
            for (&x, &y) in v.iter().zip(&h[1..]) {
                to_host[x] = y;
            }
        }
    }
    Ok(relabel(paths, &to_host))
}
