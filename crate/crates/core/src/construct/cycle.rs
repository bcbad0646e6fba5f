use super::{finish, place};
use crate::basecase::base;
use crate::error::{Error, Result};
use crate::graph::{gen_graph, GraphSpec};
use crate::system::{ColoredPath, Palette, PathSystem};

/// Vertices of the arc of `len` edges starting at vertex `start` of `C_n`.
fn arc(n: usize, start: usize, len: usize) -> Vec<usize> {
    (0..=len).map(|i| (start + i) % n).collect()
}

/// 2-colored system on `C_n` (`n >= 3`) of size `2 ceil(n/2)`: each red
/// half-cycle is paired with the complementary blue arc.
pub fn rsps2_cycle(n: usize) -> Result<PathSystem> {
    if n < 3 {
        return Err(Error::PreconditionViolated("cycle needs n >= 3".into()));
    }
    let g = gen_graph(&GraphSpec::Cycle { n })?;
    let mut paths = Vec::new();
    // edge i joins i and i+1
    if n % 2 == 0 {
        let h = n / 2;
        for i in 0..h {
            paths.push(ColoredPath::new(arc(n, i, h), 0));
            paths.push(ColoredPath::new(arc(n, i + h, h), 1));
        }
    } else {
        let h = (n - 1) / 2;
        for i in 0..h {
            paths.push(ColoredPath::new(arc(n, i, h + 1), 0));
            paths.push(ColoredPath::new(arc(n, i + h + 1, h), 1));
        }
        paths.push(ColoredPath::new(arc(n, h - 1, 1), 1));
        paths.push(ColoredPath::new(arc(n, h, 1), 0));
    }
    finish(&g, Palette::Finite(2), paths)
}

/// 3-colored system on `C_n` (`n >= 3`) with `n` paths: two-edge paths in
/// rotating colors, four-edge paths when `n = 2 mod 3`.
pub fn rsps3_cycle(n: usize) -> Result<PathSystem> {
    if n < 3 {
        return Err(Error::PreconditionViolated("cycle needs n >= 3".into()));
    }
    let g = gen_graph(&GraphSpec::Cycle { n })?;
    let paths = match n {
        3 => (0..3).map(|i| ColoredPath::new(arc(3, i, 1), i as u32)).collect(),
        5 => place(base("C5-3col")?, &[0, 1, 2, 3, 4]),
        _ => {
            let len = if n % 3 == 2 { 4 } else { 2 };
            (0..n).map(|i| ColoredPath::new(arc(n, i, len), (i % 3) as u32)).collect()
        }
    };
    finish(&g, Palette::Finite(3), paths)
}
