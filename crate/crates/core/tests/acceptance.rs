//! Acceptance checks, one PASS/FAIL line each. Run with
//! `cargo test -p rsps-core --test acceptance`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rsps_core::basecase::{derive_spec, registry};
use rsps_core::construct::{construct, construct_tree, krsps_binary};
use rsps_core::formulas::{binary_upper, c2_spider, clique_ck_lower, closed_form, rk_ratio_bounds, BoundQuery};
use rsps_core::graph::random_tree_parents;
use rsps_core::solver::{min_separator, SolveConfig};
use rsps_core::system::is_separating;
use rsps_core::{gen_graph, ColoredPath, Graph, GraphSpec, Mode, Palette, PathSystem};

/// Per-instance solver budget for the exact values.
const SOLVE_BUDGET_SECS: f64 = 60.0;
/// Wall-clock limit for the whole constructor suite.
const CONSTRUCT_SUITE_SECS: f64 = 120.0;
const PROPERTY_CASES: u64 = 1000;

type Check = std::result::Result<String, String>;

fn main() {
    let checks: [(&str, fn() -> Check); 5] = [
        ("1 exact small values", exact_values),
        ("2 constructor validity and size", constructors),
        ("3 base-case derivation at target sizes", base_cases),
        ("4 property suites", properties),
        ("5 formula cross-checks", formulas),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        let t = Instant::now();
        match f() {
            Ok(note) => println!("PASS {name} ({note}; {:.1}s)", t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solve_rainbow(spec: &GraphSpec, k: u32) -> Result<usize, String> {
    let g = gen_graph(spec).map_err(|e| e.to_string())?;
    let cfg = SolveConfig::rainbow(k).with_budget(Some(SOLVE_BUDGET_SECS));
    let c = min_separator(&g, &cfg).map_err(|e| format!("{spec:?} k={k}: {e}"))?;
    ensure(c.optimal, || format!("{spec:?} k={k}: not proved optimal"))?;
    ensure(is_separating(&g, &c.witness, Mode::Rainbow), || format!("{spec:?} k={k}: witness invalid"))?;
    Ok(c.size)
}

fn exact_values() -> Check {
    let star = |n| GraphSpec::Star { n };
    let path = |n| GraphSpec::Path { n };
    let cycle = |n| GraphSpec::Cycle { n };
    let mut cases: Vec<(GraphSpec, u32, usize)> = Vec::new();
    for (n, v) in (3..=7).zip([2, 4, 5, 6, 8]) {
        cases.push((path(n), 2, v));
    }
    for n in 3..=8 {
        cases.push((cycle(n), 2, 2 * n.div_ceil(2)));
    }
    for n in 4..=7 {
        cases.push((star(n), 2, 2 * (2 * (n - 1) / 3)));
    }
    cases.push((GraphSpec::Spider { legs: vec![2, 2, 2] }, 2, 8));
    for (n, v) in (3..=7).zip([2, 3, 5, 6, 7]) {
        cases.push((path(n), 3, v));
    }
    for n in 3..=6 {
        cases.push((cycle(n), 3, n));
    }
    for n in 4..=6 {
        cases.push((star(n), 3, n - 1));
    }
    for (spec, k, want) in &cases {
        let got = solve_rainbow(spec, *k)?;
        ensure(got == *want, || format!("c_{k}({spec:?}) = {got}, expected {want}"))?;
    }
    Ok(format!("{} instances", cases.len()))
}

fn check_construction(spec: &GraphSpec, k: u32, ok: impl Fn(u64) -> bool, what: &str) -> Result<(), String> {
    let c = construct(spec, Palette::Finite(k)).map_err(|e| format!("{spec:?} k={k}: {e}"))?;
    ensure(is_separating(&c.graph, &c.system, Mode::Rainbow), || format!("{spec:?} k={k}: invalid"))?;
    let again = construct(spec, Palette::Finite(k)).map_err(|e| e.to_string())?;
    ensure(again.system == c.system, || format!("{spec:?} k={k}: not deterministic"))?;
    let size = c.system.len() as u64;
    ensure(ok(size), || format!("{spec:?} k={k}: size {size} not {what}"))
}

fn exact_formula(spec: &GraphSpec, k: u32) -> Result<u64, String> {
    let iv = closed_form(&BoundQuery::ck(spec.clone(), Palette::Finite(k))).map_err(|e| e.to_string())?;
    ensure(iv.is_exact(), || format!("{spec:?} k={k}: formula {iv} is not exact"))?;
    Ok(iv.lo)
}

fn constructors() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for n in 2..=300 {
        for (spec, ks) in [(GraphSpec::Path { n }, &[2, 3, 4][..]), (GraphSpec::Cycle { n: n.max(3) }, &[2, 3]), (GraphSpec::Star { n: n.max(4) }, &[2, 3])] {
            for &k in ks {
                let want = exact_formula(&spec, k)?;
                check_construction(&spec, k, |s| s == want, &format!("= {want}"))?;
                count += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..20 {
        let q = rng.gen_range(3..=12);
        let legs: Vec<usize> = (0..q).map(|_| rng.gen_range(2..=10)).collect();
        let iv = c2_spider(&legs);
        check_construction(&GraphSpec::Spider { legs }, 2, |s| iv.contains(s), &format!("in {iv}"))?;
        count += 1;
    }

    for seed in 0..50u64 {
        let n = ChaCha8Rng::seed_from_u64(seed).gen_range(3..=200);
        let g = gen_graph(&GraphSpec::Tree { parents: random_tree_parents(n, seed) }).unwrap();
        let m = g.edge_count() as u64;
        let is_path = g.tree_stats().unwrap().is_path;
        for (k, bound) in [(2, (4 * m).div_ceil(3)), (3, (5 * m).div_ceil(4)), (4, m)] {
            if k == 4 && is_path {
                continue;
            }
            let c = construct_tree(&g, k).map_err(|e| format!("tree seed {seed} k={k}: {e}"))?;
            ensure(is_separating(&g, &c.system, Mode::Rainbow), || format!("tree seed {seed} k={k}: invalid"))?;
            let size = c.system.len() as u64;
            ensure(size <= bound, || format!("tree seed {seed} n={n} k={k}: size {size} > {bound}"))?;
            count += 1;
        }
    }

    for r in 2..=10 {
        for k in [3, 4, 5, 8] {
            let g = gen_graph(&GraphSpec::CompleteBinaryTree { depth: r }).unwrap();
            let s = krsps_binary(r, k).map_err(|e| format!("binary r={r} k={k}: {e}"))?;
            ensure(is_separating(&g, &s, Mode::Rainbow), || format!("binary r={r} k={k}: invalid"))?;
            let bound = binary_upper(r as u32, k as u64);
            ensure(s.len() as u64 <= bound, || format!("binary r={r} k={k}: {} > {bound}", s.len()))?;
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < CONSTRUCT_SUITE_SECS, || format!("suite took {secs:.1}s"))?;
    Ok(format!("{count} constructions"))
}

fn base_cases() -> Check {
    let reg = registry();
    for spec in &reg {
        let case = derive_spec(spec).map_err(|e| format!("{}: {e}", spec.id))?;
        ensure(case.system.len() <= spec.size, || format!("{}: size {} over target {}", spec.id, case.system.len(), spec.size))?;
    }
    Ok(format!("{} cases", reg.len()))
}

/// Random colored paths between random vertex pairs of a tree.
fn random_system(rng: &mut ChaCha8Rng, g: &Graph, k: u32) -> PathSystem {
    let n = g.n();
    let count = rng.gen_range(0..30);
    let mut s = PathSystem::new(Palette::Finite(k));
    for _ in 0..count {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            s.paths.push(ColoredPath::new(g.tree_path(a, b), rng.gen_range(0..k)));
        }
    }
    s
}

fn random_tree(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    gen_graph(&GraphSpec::Tree { parents: random_tree_parents(n, rng.gen()) }).unwrap()
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut strong_hits, mut rainbow_hits) = (0, 0);
    for i in 0..PROPERTY_CASES {
        let g = random_tree(&mut rng, 3, 11);
        let k = rng.gen_range(2..5);
        let s = random_system(&mut rng, &g, k);
        if is_separating(&g, &s, Mode::Strong) {
            strong_hits += 1;
            ensure(is_separating(&g, &s, Mode::Weak), || format!("case {i}: strong but not weak"))?;
        }
        if is_separating(&g, &s, Mode::Rainbow) {
            rainbow_hits += 1;
            let plain = PathSystem { k: Palette::Infinite, paths: s.paths.iter().map(|p| ColoredPath::new(p.vertices.clone(), 0)).collect() };
            ensure(is_separating(&g, &plain, Mode::Strong), || format!("case {i}: rainbow but not strong"))?;
        }
    }
    for i in 0..PROPERTY_CASES {
        let g = random_tree(&mut rng, 2, 40);
        let k = rng.gen_range(2..6);
        let c = construct_tree(&g, k).map_err(|e| e.to_string())?;
        ensure(c.system.mono_budget_ok(&g).unwrap(), || format!("construction {i}: two mono edges of one color"))?;
        for color in 0..k {
            ensure(is_separating(&g, &c.system.without_color(color), Mode::Weak), || {
                format!("construction {i}: dropping color {color} breaks weak separation")
            })?;
        }
    }
    for i in 0..PROPERTY_CASES {
        let g = random_tree(&mut rng, 3, 7);
        let k = rng.gen_range(2..4u32);
        let solve = |cfg: SolveConfig| min_separator(&g, &cfg).map_err(|e| e.to_string());
        let w = solve(SolveConfig::weak())?.size as u64;
        let s = solve(SolveConfig::strong())?.size as u64;
        let cert = solve(SolveConfig::rainbow(k))?;
        let ck = cert.size as u64;
        let kk = k as u64;
        ensure((kk - 1) * ck >= kk * w && ck <= w + s, || format!("solved case {i}: c_k={ck} wsp={w} ssp={s}"))?;
        for color in 0..k {
            ensure(is_separating(&g, &cert.witness.without_color(color), Mode::Weak), || {
                format!("solved case {i}: dropping color {color} breaks weak separation")
            })?;
        }
    }
    Ok(format!("{PROPERTY_CASES} cases per suite; {strong_hits} strong and {rainbow_hits} rainbow random systems"))
}

fn formulas() -> Check {
    for n in [50u64, 100, 200] {
        for k in [2u64, 3, 5] {
            let v = clique_ck_lower(n, k);
            let floor = (3 * n / 2).saturating_sub(6 * (k + 2));
            ensure(v >= floor && v <= 3 * n, || format!("clique bound n={n} k={k}: {v} outside [{floor}, {}]", 3 * n))?;
        }
    }
    let mut specs = vec![
        GraphSpec::Path { n: 9 },
        GraphSpec::Cycle { n: 10 },
        GraphSpec::Star { n: 12 },
        GraphSpec::Spider { legs: vec![3, 3, 3, 3, 3] },
        GraphSpec::Spider { legs: vec![2, 2, 2, 2] },
        GraphSpec::CompleteBinaryTree { depth: 6 },
        GraphSpec::Complete { n: 20 },
    ];
    specs.extend((0..30).map(|seed| GraphSpec::Tree { parents: random_tree_parents(5 + seed as usize * 3, seed) }));
    let (one, two) = (num_rational::Ratio::from_integer(1), num_rational::Ratio::from_integer(2));
    let mut count = 0;
    for spec in &specs {
        for k in [Palette::Finite(2), Palette::Finite(3), Palette::Finite(5), Palette::Infinite] {
            let r = rk_ratio_bounds(spec, k).map_err(|e| format!("{spec:?} {k}: {e}"))?;
            ensure(one <= r.lo && r.lo <= r.hi && r.hi <= two, || format!("{spec:?} {k}: ratio [{}, {}]", r.lo, r.hi))?;
            count += 1;
        }
    }
    Ok(format!("9 clique values, {count} ratio intervals"))
}
