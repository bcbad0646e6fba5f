use super::path::pathk_paths;
use super::peel::{host_spider_map, is_whole, join_legs, lengths, relabel, sorted_legs, Remaining};
use super::{finish, place};
use crate::basecase::{base, spider_id};
use crate::error::{Error, Result};
use crate::graph::{BareSpider, Graph};
use crate::system::{ColoredPath, Palette, PathSystem};

/// 3-colored system on a tree with at most `floor(5(n-1)/4)` paths.
///
/// Three-leaf stars and paths of four or more edges are peeled off bare
/// spiders first; what is left of each spider is a `(2,1,1)` spider, or a
/// `(2,1)` or `(1,1)` spider that takes its hat along.
pub fn rsps3_tree(g: &Graph) -> Result<PathSystem> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let mut rem = Remaining::new(g);
    let mut paths = Vec::new();
    'outer: while !rem.is_empty() {
        let spiders = rem.spiders();
        for sp in &spiders {
            if let Some((block, walks)) = reduce(sp)? {
                paths.extend(block);
                for w in walks {
                    rem.remove_walk(&w);
                }
                continue 'outer;
            }
        }
        if is_whole(&spiders) {
            let sp = &spiders[0];
            let legs = sorted_legs(sp);
            if lengths(&legs) == [2, 1, 1] {
                paths.extend(place(base(&spider_id(&[2, 1, 1], "-3col"))?, &host_spider_map(&legs)));
            } else {
                let seq = match legs.as_slice() {
                    [a] => a.iter().rev().copied().collect(),
                    [a, b] => join_legs(a, b),
                    _ => return Err(Error::ConstructionFailed(format!("unexpected final spider at {}", sp.head))),
                };
                paths.extend(relabel(pathk_paths(seq.len(), 3), &seq));
            }
            break;
        }
        let sp = &spiders[0];
        let mut legs = sorted_legs(sp);
        let (v, h) = (sp.attachment.unwrap(), sp.head);
        let id = match lengths(&legs).as_slice() {
            [2, 1, 1] => spider_id(&[2, 1, 1], "-3col"),
            [2, 1] => {
                legs.push(vec![h, v]);
                spider_id(&[2, 1, 1], "-3col")
            }
            [1, 1] => {
                legs.push(vec![h, v]);
                "S4-3col".to_string()
            }
            other => return Err(Error::ConstructionFailed(format!("unexpected residual spider {other:?}"))),
        };
        paths.extend(place(base(&id)?, &host_spider_map(&legs)));
        for l in &legs {
            rem.remove_walk(l);
        }
    }
    finish(g, Palette::Finite(3), paths)
}

type Reduction = Option<(Vec<ColoredPath>, Vec<Vec<usize>>)>;

fn reduce(sp: &BareSpider) -> Result<Reduction> {
    let legs = sorted_legs(sp);
    let lens = lengths(&legs);
    let leaves: Vec<&Vec<usize>> = legs.iter().filter(|l| l.len() == 2).take(3).collect();
    if leaves.len() == 3 {
        let map = vec![sp.head, leaves[0][1], leaves[1][1], leaves[2][1]];
        let walks = leaves.into_iter().cloned().collect();
        return Ok(Some((place(base("S4-3col")?, &map), walks)));
    }
    let m: usize = lens.iter().take(2).sum();
    if m >= 4 {
        let (seq, walks) = match legs.as_slice() {
            [a] => (a.clone(), vec![a.clone()]),
            [a, b, ..] => (join_legs(a, b), vec![a.clone(), b.clone()]),
            [] => unreachable!(),
        };
        return Ok(Some((relabel(pathk_paths(seq.len(), 3), &seq), walks)));
    }
    Ok(None)
}
