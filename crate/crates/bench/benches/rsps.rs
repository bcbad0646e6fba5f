use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use rsps_core::construct::{construct, construct_tree};
use rsps_core::graph::random_tree_parents;
use rsps_core::solver::{min_separator, SolveConfig};
use rsps_core::{gen_graph, separation_check, GraphSpec, Mode, Palette};

fn validator(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    for n in [50, 200] {
        let spec = GraphSpec::Tree { parents: random_tree_parents(n, 1) };
        let built = construct(&spec, Palette::Finite(2)).unwrap();
        group.bench_with_input(BenchmarkId::new("tree-rainbow", n), &built, |b, built| {
            b.iter(|| separation_check(&built.graph, black_box(&built.system), Mode::Rainbow).unwrap())
        });
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    let cases = [
        ("path-300", GraphSpec::Path { n: 300 }, 2),
        ("star-300", GraphSpec::Star { n: 300 }, 2),
        ("spider-10x10", GraphSpec::Spider { legs: vec![10; 10] }, 2),
        ("binary-9", GraphSpec::CompleteBinaryTree { depth: 9 }, 5),
    ];
    for (name, spec, k) in cases {
        group.bench_function(name, |b| b.iter(|| construct(black_box(&spec), Palette::Finite(k)).unwrap()));
    }
    for k in [2, 3, 4] {
        let g = gen_graph(&GraphSpec::Tree { parents: random_tree_parents(150, 7) }).unwrap();
        group.bench_with_input(BenchmarkId::new("tree-150", k), &g, |b, g| {
            b.iter(|| construct_tree(black_box(g), k).unwrap())
        });
    }
    group.finish();
}

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (name, spec) in [("path-7", GraphSpec::Path { n: 7 }), ("star-7", GraphSpec::Star { n: 7 })] {
        let g = gen_graph(&spec).unwrap();
        group.bench_function(name, |b| b.iter(|| min_separator(black_box(&g), &SolveConfig::rainbow(2)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, validator, constructions, solver);
criterion_main!(benches);
