use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dplane_bench::{afpp_inputs, disks};
use dplane_core::{
    build_axis_retraction, build_slanted_retraction, decompose_disk, search_afpp_violation, verify_retraction_with,
    Slope, VerifyOptions, Window, DEFAULT_BUDGET,
};

fn afpp(c: &mut Criterion) {
    let mut group = c.benchmark_group("afpp");
    for (name, x) in afpp_inputs() {
        group.bench_function(name, |b| b.iter(|| search_afpp_violation(black_box(&x), DEFAULT_BUDGET).unwrap()));
    }
    group.finish();
}

fn recognition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose_disk");
    for (name, x) in disks() {
        group.bench_function(name, |b| b.iter(|| decompose_disk(black_box(&x)).unwrap()));
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_retraction");
    let options = VerifyOptions { boundary: true };
    for (name, x) in disks() {
        let window = Window::around(&x, 4).unwrap();
        let axis = build_axis_retraction(&x).unwrap();
        let slanted = build_slanted_retraction(&x, Slope::Minus).unwrap();
        group.bench_function(format!("axis/{name}"), |b| b.iter(|| verify_retraction_with(&axis, &window, options)));
        group.bench_function(format!("slanted/{name}"), |b| {
            b.iter(|| verify_retraction_with(&slanted, &window, options))
        });
    }
    group.finish();
}

criterion_group!(benches, afpp, recognition, verification);
criterion_main!(benches);
