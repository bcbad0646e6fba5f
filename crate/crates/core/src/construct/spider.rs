use std::cmp::Reverse;

use super::{extend_two_color, finish, has_edge, is_single, place, spider_graph, spider_map, staircase_to, truncate_end};
use crate::basecase::{base, spider_id, spider_leg_vertices};
use crate::error::{Error, Result};
use crate::system::{ColoredPath, Palette, PathSystem};

/// 2-colored system on `gen_graph(Spider { legs })` for `q >= 3` legs of
/// length at least 2. The size lies in `c2_spider(legs)`.
pub fn rsps2_spider(legs: &[usize]) -> Result<PathSystem> {
    if legs.len() < 3 || legs.iter().any(|&l| l < 2) {
        return Err(Error::PreconditionViolated("needs at least 3 legs, all of length >= 2".into()));
    }
    let g = spider_graph(legs)?;
    finish(&g, Palette::Finite(2), spider2_paths(legs)?)
}

struct Slot {
    block: usize,
    len: usize,
    /// May carry a monochromatic center edge, so cannot be extended.
    fixed: bool,
}

pub(crate) fn spider2_paths(legs: &[usize]) -> Result<Vec<ColoredPath>> {
    let q = legs.len();
    let short = legs.iter().filter(|&&l| l == 2).count();
    let (base_id, base_legs, fixed) = if q == 3 {
        (spider_id(&[2, 2, 2], "-2col"), vec![2, 2, 2], 0)
    } else {
        let q0 = 4 + (q - 4) % 3;
        if short >= 2 {
            (spider_id(&vec![2; q0], "-2col"), vec![2; q0], 2)
        } else {
            let lens = match q0 {
                4 => vec![3, 3, 2, 2],
                5 => vec![3, 2, 2, 2, 2],
                _ => vec![2; 6],
            };
            (spider_id(&lens, "-2col-long"), lens, 0)
        }
    };
    let copy_id = spider_id(&[2, 2, 2], "-2col");
    let mut blocks = vec![(base_id, base_legs.clone())];
    let mut slots: Vec<Slot> =
        base_legs.iter().enumerate().map(|(j, &len)| Slot { block: 0, len, fixed: j < fixed }).collect();
    for b in 0..(q - base_legs.len()) / 3 {
        blocks.push((copy_id.clone(), vec![2, 2, 2]));
        slots.extend((0..3).map(|_| Slot { block: b + 1, len: 2, fixed: false }));
    }

    // long slots take the longest legs, fixed slots the shortest
    let mut order: Vec<usize> = (0..slots.len()).collect();
    order.sort_by_key(|&i| (Reverse(slots[i].len), slots[i].fixed));
    let mut host_order: Vec<usize> = (0..q).collect();
    host_order.sort_by_key(|&i| Reverse(legs[i]));
    let mut host_of = vec![0; slots.len()];
    for (&s, &h) in order.iter().zip(&host_order) {
        let sl = &slots[s];
        if legs[h] < sl.len || (sl.fixed && legs[h] != 2) {
            return Err(Error::ConstructionFailed(format!("no leg fits a base leg of length {}", sl.len)));
        }
        host_of[s] = h;
    }

    let host = spider_leg_vertices(legs);
    let mut paths = Vec::new();
    for (b, (id, lens)) in blocks.iter().enumerate() {
        let hosts: Vec<&[usize]> =
            (0..slots.len()).filter(|&s| slots[s].block == b).map(|s| host[host_of[s]].as_slice()).collect();
        paths.extend(place(base(id)?, &spider_map(lens, 0, &hosts)));
    }
    for (s, slot) in slots.iter().enumerate() {
        let h = host_of[s];
        let full: Vec<usize> = std::iter::once(0).chain(host[h].iter().copied()).collect();
        for m in slot.len..legs[h] {
            extend_two_color(&mut paths, &full[..=m], full[m + 1])?;
        }
    }
    Ok(paths)
}

/// 4-colored system with `n - 1` paths on `gen_graph(Spider { legs })` for
/// `q >= 3` legs of any length.
pub fn rsps4_spider(legs: &[usize]) -> Result<PathSystem> {
    if legs.len() < 3 || legs.contains(&0) {
        return Err(Error::PreconditionViolated("needs at least 3 legs of length >= 1".into()));
    }
    let g = spider_graph(legs)?;
    finish(&g, Palette::Finite(4), spider4_paths(legs)?)
}

/// Builds on the spider with every leg lengthened to at least 2, then cuts
/// the added edges off again.
pub(crate) fn spider4_paths(legs: &[usize]) -> Result<Vec<ColoredPath>> {
    let q = legs.len();
    let long: Vec<usize> = legs.iter().map(|&l| l.max(2)).collect();
    let host = spider_leg_vertices(&long);
    let last = 3 + q % 3;
    let mut groups: Vec<usize> = vec![3; (q - last) / 3];
    groups.push(last);

    let mut paths = Vec::new();
    let mut next = 0;
    for &b in &groups {
        let hosts: Vec<&[usize]> = host[next..next + b].iter().map(Vec::as_slice).collect();
        paths.extend(place(base(&spider_id(&vec![2; b], "-4col"))?, &spider_map(&vec![2; b], 0, &hosts)));
        next += b;
    }
    for (i, leg) in host.iter().enumerate() {
        let full: Vec<usize> = std::iter::once(0).chain(leg.iter().copied()).collect();
        staircase_to(&mut paths, &full, 2)?;
        if legs[i] == 1 {
            prune_leaf_edge(&mut paths, leg[0], leg[1]);
        }
    }

    let short = spider_leg_vertices(legs);
    let mut map = vec![usize::MAX; 1 + long.iter().sum::<usize>()];
    map[0] = 0;
    for (l, s) in host.iter().zip(&short) {
        for (&a, &b) in l.iter().zip(s) {
            map[a] = b;
        }
    }
    Ok(paths
        .into_iter()
        .map(|p| ColoredPath::new(p.vertices.iter().map(|&v| map[v]).collect(), p.color))
        .collect())
}

/// Drops the pendant edge `(u, leaf)`: its single-edge path goes, and every
/// other path through it loses the leaf.
pub(crate) fn prune_leaf_edge(paths: &mut Vec<ColoredPath>, u: usize, leaf: usize) {
    paths.retain(|p| !is_single(p, u, leaf));
    for p in paths.iter_mut() {
        if has_edge(p, u, leaf) {
            truncate_end(p, leaf);
        }
    }
}
