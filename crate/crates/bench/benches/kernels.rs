use apfree_bench::{cantor_cover, first_stage, regular_cells, staircase};
use apfree_core::{build_fap, destroy_step, has_ap3, min_defect, pick_apfree, Limits, NDGenerator, PLHomeo, Rat};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn ap_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("has_ap3");
    for g in [4u32, 6, 8] {
        let cover = cantor_cover(g);
        group.bench_with_input(BenchmarkId::new("cantor_cover", g), &cover, |b, u| {
            b.iter(|| has_ap3(black_box(u), &Rat::new(1, 8), false))
        });
    }
    group.finish();

    let (_, image) = first_stage();
    c.bench_function("min_defect/first_stage_image", |b| {
        b.iter(|| min_defect(black_box(&image), &Rat::new(1, 4)))
    });
}

fn homeo_algebra(c: &mut Criterion) {
    let f = staircase(200);
    let g = f.invert();
    c.bench_function("compose/200", |b| {
        b.iter(|| PLHomeo::compose(black_box(&f), black_box(&g)))
    });
    c.bench_function("sup_dist/200", |b| b.iter(|| black_box(&f).sup_dist(black_box(&g))));
    let cover = cantor_cover(8);
    c.bench_function("image/200_on_256", |b| {
        b.iter(|| black_box(&f).image(black_box(&cover)))
    });
}

fn anchors(c: &mut Criterion) {
    let mut group = c.benchmark_group("pick_apfree");
    for n in [16usize, 64, 256] {
        let cells = regular_cells(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &cells, |b, cells| {
            b.iter(|| pick_apfree(cells))
        });
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let gen = NDGenerator::middle_thirds();
    c.bench_function("destroy_step/cantor_1_4", |b| {
        b.iter(|| destroy_step(&PLHomeo::identity(), &gen, &Rat::new(1, 4), 64))
    });
    let mut group = c.benchmark_group("build_fap");
    group.sample_size(10);
    group.bench_function("cantor_3_stages", |b| {
        b.iter(|| build_fap(&[NDGenerator::middle_thirds()], 3, None, &Limits::default()))
    });
    group.finish();
}

criterion_group!(benches, ap_kernels, homeo_algebra, anchors, construction);
criterion_main!(benches);
