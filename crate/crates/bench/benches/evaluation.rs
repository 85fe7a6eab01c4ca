use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qweb::combinat::Composition;
use qweb::homspace::{hom_basis, rank_of_family};
use qweb::psi::{eval_combination, eval_stack};
use qweb::relcheck::verify_all;
use qweb::sergeev::SergeevElement;
use qweb::web::{build_theta_t, expand_clasp};
use qweb::Supertabloid;

fn comp(p: &[usize]) -> Composition {
    Composition::new(p.to_vec())
}

fn theta(c: &mut Criterion) {
    let t: Supertabloid = "[2,2],[3'],[1',2']".parse().unwrap();
    let th = build_theta_t(&t, &comp(&[1, 3, 1])).unwrap();
    c.bench_function("eval theta_T (2,1,2)->(1,3,1)", |b| b.iter(|| eval_stack(black_box(&th.web)).unwrap()));
}

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("hom basis");
    g.sample_size(10);
    g.bench_function("build 160 maps", |b| b.iter(|| hom_basis(&comp(&[2, 1, 2]), &comp(&[1, 3, 1])).unwrap()));
    let hb = hom_basis(&comp(&[2, 1, 2]), &comp(&[1, 3, 1])).unwrap();
    g.bench_function("rank of 160 maps", |b| b.iter(|| rank_of_family(hb.items.iter().map(|it| &it.matrix))));
    g.finish();
}

fn clasp(c: &mut Criterion) {
    let cl = expand_clasp(&Composition::omega(4), 1, 4).unwrap();
    c.bench_function("eval clasp k=4", |b| b.iter(|| eval_combination(black_box(&cl)).unwrap()));
}

fn sergeev(c: &mut Criterion) {
    let x = SergeevElement::parse_word("c1 s2 s3 c4 s1", 5).unwrap();
    let y = SergeevElement::parse_word("s4 c2 s1 s2 c5", 5).unwrap();
    c.bench_function("sergeev product r=5", |b| b.iter(|| black_box(&x).multiply(black_box(&y)).unwrap()));
}

fn relations(c: &mut Criterion) {
    let mut g = c.benchmark_group("relations");
    g.sample_size(10);
    g.bench_function("verify_all r=3", |b| b.iter(|| verify_all(3).unwrap()));
    g.finish();
}

criterion_group!(benches, theta, basis, clasp, sergeev, relations);
criterion_main!(benches);
