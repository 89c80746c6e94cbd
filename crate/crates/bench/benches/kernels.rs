use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use lagquot_bench::{dense_cyclotomic, skew_fixture};
use lagquot_core::arith::Backend;
use lagquot_core::gw::dimension_condition;
use lagquot_core::symfun::pfaffian;
use lagquot_core::{CyclotomicField, Engine, FloatBackend, StrictPartition};

fn bench_cyclotomic_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclotomic_mul");
    for order in [24u64, 40, 88] {
        let field = CyclotomicField::new(order);
        let a = dense_cyclotomic(&field, 1);
        let b = dense_cyclotomic(&field, -4);
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |bch, _| {
            bch.iter(|| field.mul(black_box(&a), black_box(&b)))
        });
    }
    group.finish();
}

fn bench_pfaffian(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfaffian");
    let field = CyclotomicField::new(24);
    for size in [4usize, 8, 12] {
        let exact = skew_fixture(&field, size);
        group.bench_with_input(BenchmarkId::new("exact", size), &size, |bch, _| {
            bch.iter(|| pfaffian(&field, black_box(&exact)).unwrap())
        });
        let float = skew_fixture(&FloatBackend, size);
        group.bench_with_input(BenchmarkId::new("float", size), &size, |bch, _| {
            bch.iter(|| pfaffian(&FloatBackend, black_box(&float)).unwrap())
        });
    }
    group.finish();
}

fn bench_gw_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("gw_sum");
    group.sample_size(20);
    for n in [2u32, 3, 4] {
        let exact = Engine::exact(n);
        let float = Engine::float(n);
        // n + 1 hyperplane classes in genus 3 satisfy the dimension condition
        let insertions = vec![StrictPartition::special(n, 1).unwrap(); n as usize + 1];
        let d = dimension_condition(n, 3, &insertions).unwrap();
        group.bench_with_input(BenchmarkId::new("exact", n), &n, |bch, _| {
            bch.iter(|| exact.gw_value(3, d, black_box(&insertions)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("float", n), &n, |bch, _| {
            bch.iter(|| float.gw_value(3, d, black_box(&insertions)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_cyclotomic_mul, bench_pfaffian, bench_gw_sum);
criterion_main!(benches);
