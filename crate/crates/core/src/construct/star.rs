use super::{finish, place};
use crate::basecase::base;
use crate::error::{Error, Result};
use crate::graph::{gen_graph, GraphSpec};
use crate::system::{ColoredPath, Palette, PathSystem};

/// 2-colored system on the star with center 0 and `n - 1 >= 3` leaves, of
/// size `2 floor(2(n-1)/3)`: a base on 3, 4 or 5 leaves plus a bicolor
/// three-leaf block for every further three leaves.
pub fn rsps2_star(n: usize) -> Result<PathSystem> {
    if n < 4 {
        return Err(Error::PreconditionViolated("star needs n >= 4".into()));
    }
    let g = gen_graph(&GraphSpec::Star { n })?;
    let leaves = n - 1;
    let first = 3 + leaves % 3;
    let base_id = format!("S{}-2col", first + 1);
    let mut paths = place(base(&base_id)?, &(0..=first).collect::<Vec<_>>());
    let block = base("S4-2col")?;
    for start in (first + 1..n).step_by(3) {
        paths.extend(place(block, &[0, start, start + 1, start + 2]));
    }
    finish(&g, Palette::Finite(2), paths)
}

/// 3-colored system on the star with center 0: a bicolor three-leaf block for
/// every three leaves and distinct-colored singles on the rest.
pub fn rsps3_star(n: usize) -> Result<PathSystem> {
    if n < 2 {
        return Err(Error::PreconditionViolated("star needs n >= 2".into()));
    }
    let g = gen_graph(&GraphSpec::Star { n })?;
    let block = base("S4-3col")?;
    let full = (n - 1) / 3 * 3;
    let mut paths = Vec::new();
    for start in (1..=full).step_by(3) {
        paths.extend(place(block, &[0, start, start + 1, start + 2]));
    }
    for (c, leaf) in (full + 1..n).enumerate() {
        paths.push(ColoredPath::new(vec![0, leaf], c as u32));
    }
    finish(&g, Palette::Finite(3), paths)
}
