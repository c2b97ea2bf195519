use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ucpoly::lattice::stable_set_polytope;
use ucpoly::polytope::{dual_description, polar_dual};
use ucpoly::triangulate::{lift_unconditional, pulling_triangulation_lex};
use ucpoly::{BirkhoffFamily, Family, Graph, GraphKind};

fn facets(c: &mut Criterion) {
    for (name, g) in [
        ("rook(2)", Graph::build(GraphKind::Rook(2)).unwrap()),
        ("cycle(6)", Graph::build(GraphKind::Cycle(6)).unwrap()),
        ("edgeless(5)", Graph::build(GraphKind::Edgeless(5)).unwrap()),
    ] {
        let v = stable_set_polytope(&g).unwrap().unconditional().vrep().unwrap();
        c.bench_function(&format!("dual description {name}"), |b| b.iter(|| dual_description(black_box(&v))));
        let h = dual_description(&v).unwrap();
        c.bench_function(&format!("polar {name}"), |b| b.iter(|| polar_dual(black_box(&h))));
    }
}

fn triangulation(c: &mut Criterion) {
    let pos = BirkhoffFamily::new(2, Family::Pos).unwrap().anti_blocking();
    let (v, h) = (pos.vrep(), pos.hrep());
    c.bench_function("pulling triangulation Pos(2)", |b| b.iter(|| pulling_triangulation_lex(black_box(&v), &h)));
    let base = pulling_triangulation_lex(&v, &h).unwrap();
    c.bench_function("sign lift Pos(2)", |b| b.iter(|| lift_unconditional(black_box(&base))));
}

criterion_group!(benches, facets, triangulation);
criterion_main!(benches);
