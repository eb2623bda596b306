use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use toric_gw::fan::{build_permutohedral_from_cube, build_permutohedral_from_p3};
use toric_gw::gw::reduce;
use toric_gw::intersection::IntersectionTable;
use toric_gw::{fan_isomorphism, parse_class, BaseTable, GwQuery, Model};

fn fans(c: &mut Criterion) {
    c.bench_function("build_permutohedral_from_p3", |b| b.iter(build_permutohedral_from_p3));
    let (p, q) = (build_permutohedral_from_p3(), build_permutohedral_from_cube());
    c.bench_function("fan_isomorphism", |b| b.iter(|| fan_isomorphism(black_box(&p), black_box(&q)).unwrap()));
    c.bench_function("intersection_table_perm_p3", |b| b.iter(|| IntersectionTable::new(Model::perm_p3()).unwrap()));
}

fn reduction(c: &mut Criterion) {
    let table = BaseTable::builtin();
    let q = GwQuery::new(0, parse_class("CUBE(k=0): d=1,1,1").unwrap(), 3);
    c.bench_function("reduce_cubic", |b| b.iter(|| reduce(black_box(&q), &table).unwrap()));
}

criterion_group!(benches, fans, reduction);
criterion_main!(benches);
