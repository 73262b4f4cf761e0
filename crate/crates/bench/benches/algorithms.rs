use criterion::{black_box, criterion_group, criterion_main, Criterion};
use genericity::certify::certify_pseudo_anosov;
use genericity::census::{census_reducible, shifted_point_counts};
use genericity::ffpoly::{factor_mod_p, FpPoly, PrimeField};
use genericity::kirby::kirby_matrix;
use genericity::matgroup::{norms::operator_norm, GroupKind, IntMatrix};
use genericity::walks::{transfer_spectrum, tv_series};
use genericity::zpoly::{certify_galois_sn, factor_over_z, IntPoly};
use genericity_bench::{hard_recombination_poly, lcg_matrices, sl2_walk_fixture};

fn polynomials(c: &mut Criterion) {
    let f = hard_recombination_poly();
    c.bench_function("factor_over_z recombination", |b| b.iter(|| factor_over_z(black_box(&f)).unwrap()));

    let field = PrimeField::new(1_000_003).unwrap();
    let g = FpPoly::new(field, (0..33u64).map(|i| ((i * i * 7919 + 13) % 1_000_003) as u32).collect());
    c.bench_function("factor_mod_p deg 32", |b| b.iter(|| factor_mod_p(black_box(&g)).unwrap()));

    let quintic = IntPoly::from_i64(&[-1, -1, 0, 0, 0, 1]);
    c.bench_function("galois certify x^5-x-1", |b| b.iter(|| certify_galois_sn(black_box(&quintic), 200).unwrap()));

    let sextic = IntPoly::from_i64(&[1, -2, 3, -5, 3, -2, 1]);
    c.bench_function("kirby matrix deg 6", |b| b.iter(|| kirby_matrix(black_box(&sextic)).unwrap()));
}

fn matrices(c: &mut Criterion) {
    let cat = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
    c.bench_function("certify pa cat map", |b| b.iter(|| certify_pseudo_anosov(black_box(&cat)).unwrap()));

    let ms: Vec<_> = lcg_matrices(8, 16, 5, 7).into_iter().map(|m| m.to_f64()).collect();
    c.bench_function("operator norm 8x8 x16", |b| {
        b.iter(|| ms.iter().map(|m| operator_norm(m).unwrap()).sum::<f64>())
    });
}

fn walks(c: &mut Criterion) {
    let (graph, table) = sl2_walk_fixture(3).unwrap();
    c.bench_function("tv series sl2 mod 3 N=24", |b| b.iter(|| tv_series(&graph, &table, 24).unwrap()));
    c.bench_function("transfer spectrum sl2 mod 3", |b| b.iter(|| transfer_spectrum(&graph, &table).unwrap()));

    let (graph, table) = sl2_walk_fixture(7).unwrap();
    c.bench_function("tv series sl2 mod 7 N=12", |b| b.iter(|| tv_series(&graph, &table, 12).unwrap()));
}

fn census(c: &mut Criterion) {
    c.bench_function("census reducible sl2 mod 7", |b| {
        b.iter(|| census_reducible(GroupKind::SL(2), 7, 1 << 20).unwrap())
    });
    let field = PrimeField::new(101).unwrap();
    let h = FpPoly::new(field, vec![3, 0, 5, 0, 0, 1]);
    c.bench_function("shifted point counts d=2 p=101", |b| b.iter(|| shifted_point_counts(black_box(&h), 2).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = polynomials, matrices, walks, census
}
criterion_main!(benches);
