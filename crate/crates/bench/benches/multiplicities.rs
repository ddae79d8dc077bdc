use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hiveforge_bench::{rho_triple, su5_triple, weight};
use hiveforge_core::characters::decompose_product;
use hiveforge_core::oblade::{count_fillings_with, enumerate_fillings};
use hiveforge_core::rpoly::series_r;
use hiveforge_core::stretch::stretch_polynomial;
use hiveforge_core::tensor::kostka;
use hiveforge_core::SearchConfig;

fn counting(c: &mut Criterion) {
    let seq = SearchConfig::sequential();
    let t371 = su5_triple(&[2, 2, 4, 2]);
    let t1427 = su5_triple(&[3, 4, 4, 7]);
    c.bench_function("count 371", |b| b.iter(|| count_fillings_with(black_box(&t371), &seq).unwrap()));
    c.bench_function("count 1427", |b| b.iter(|| count_fillings_with(black_box(&t1427), &seq).unwrap()));
    let t5 = t371.scaled(5);
    c.bench_function("count 930849 (s=5)", |b| b.iter(|| count_fillings_with(black_box(&t5), &seq).unwrap()));
    c.bench_function("enumerate 371", |b| b.iter(|| enumerate_fillings(black_box(&t371)).unwrap()));
}

fn derived(c: &mut Criterion) {
    let mut g = c.benchmark_group("derived");
    g.sample_size(10);
    g.bench_function("stretch rho triple", |b| b.iter(|| stretch_polynomial(black_box(&rho_triple(5, &[1, 2, 2, 1]))).unwrap()));
    g.bench_function("kostka 1473", |b| {
        b.iter(|| kostka(5, black_box(&weight(&[3, 4, 3, 5])), &weight(&[0, 3, 0, 1])).unwrap())
    });
    g.bench_function("character product SU(4)", |b| {
        b.iter(|| decompose_product(4, black_box(&weight(&[3, 3, 3])), &weight(&[2, 3, 1])).unwrap())
    });
    g.bench_function("series SU(5) P=8", |b| b.iter(|| series_r(5, black_box(&[0.3, 0.5, 0.7, 0.4]), 8).unwrap()));
    g.finish();
}

criterion_group!(benches, counting, derived);
criterion_main!(benches);
