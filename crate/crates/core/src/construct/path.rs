use super::{extend_two_color, finish, place};
use crate::basecase::base;
use crate::error::{Error, Result};
use crate::graph::{gen_graph, GraphSpec};
use crate::system::{ColoredPath, Palette, PathSystem};

/// 2-colored system on the path `0 - 1 - ... - n-1`, of size `c_2(P_n)`.
pub fn rsps2_path(n: usize) -> Result<PathSystem> {
    if n < 2 {
        return Err(Error::PreconditionViolated("path needs n >= 2".into()));
    }
    let g = gen_graph(&GraphSpec::Path { n })?;
    if n == 2 {
        return Ok(PathSystem::new(Palette::Finite(2)));
    }
    finish(&g, Palette::Finite(2), path2_paths(n)?)
}

/// Unchecked paths of [`rsps2_path`].
pub(crate) fn path2_paths(n: usize) -> Result<Vec<ColoredPath>> {
    match n {
        2 => Ok(vec![ColoredPath::new(vec![0, 1], 0)]),
        3..=6 => Ok(base(&format!("P{n}-2col"))?.system.paths.clone()),
        _ => {
            let identity: Vec<usize> = (0..n).collect();
            let mut paths = place(base("P7-2col")?, &identity);
            for m in 7..n {
                extend_two_color(&mut paths, &identity[..m], m)?;
            }
            Ok(paths)
        }
    }
}

/// `k`-colored system (`k >= 3`) on the path `0 - 1 - ... - n-1`, of size `c_k(P_n)`.
pub fn rspsk_path(n: usize, k: u32) -> Result<PathSystem> {
    if n < 2 || k < 3 {
        return Err(Error::PreconditionViolated("needs n >= 2 and k >= 3".into()));
    }
    let g = gen_graph(&GraphSpec::Path { n })?;
    if n == 2 {
        return Ok(PathSystem::new(Palette::Finite(k)));
    }
    finish(&g, Palette::Finite(k), pathk_paths(n, k))
}

/// Distinct singles when they fit in the palette; otherwise a staircase of
/// two-edge paths cycling through three colors, capped by two singles.
pub(crate) fn pathk_paths(n: usize, k: u32) -> Vec<ColoredPath> {
    if n <= k as usize + 1 {
        return (1..n).map(|i| ColoredPath::new(vec![i - 1, i], (i - 1) as u32)).collect();
    }
    let mut paths = vec![ColoredPath::new(vec![0, 1], 0)];
    for i in 1..n - 1 {
        paths.push(ColoredPath::new(vec![i - 1, i, i + 1], (i % 3) as u32));
    }
    paths.push(ColoredPath::new(vec![n - 2, n - 1], ((n - 1) % 3) as u32));
    paths
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{has_edge, is_single};
    use crate::formulas::{c2_path, ck_path};
    use crate::system::{is_separating, Mode};

    #[test]
    fn two_color_sizes_match_formula() {
        for n in 2..60 {
            let s = rsps2_path(n).unwrap();
            assert_eq!(s.len() as u64, c2_path(n as u64), "n={n}");
        }
    }

    #[test]
    fn extension_keeps_terminal_structure() {
        // after every step: last edge only in a single and one other-colored
        // path, penultimate edge in both colors away from the last edge
        for n in 7..40 {
            let paths = path2_paths(n).unwrap();
            let (a, b, c) = (n - 3, n - 2, n - 1);
            let on_last: Vec<&ColoredPath> = paths.iter().filter(|p| has_edge(p, b, c)).collect();
            assert_eq!(on_last.len(), 2);
            let single = on_last.iter().find(|p| is_single(p, b, c)).unwrap();
            assert!(on_last.iter().any(|p| p.color != single.color && has_edge(p, a, b)));
            let mut away: Vec<u32> =
                paths.iter().filter(|p| has_edge(p, a, b) && !has_edge(p, b, c)).map(|p| p.color).collect();
            away.sort();
            away.dedup();
            assert_eq!(away, vec![0, 1], "n={n}");
        }
    }

    #[test]
    fn k_color_sizes_match_formula() {
        for k in 3..7u32 {
            for n in 2..30 {
                let s = rspsk_path(n, k).unwrap();
                assert_eq!(s.len() as u64, ck_path(n as u64, k as u64));
                let g = gen_graph(&GraphSpec::Path { n }).unwrap();
                assert!(is_separating(&g, &s, Mode::Rainbow));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(rsps2_path(1).is_err());
        assert!(rspsk_path(5, 2).is_err());
    }
}
