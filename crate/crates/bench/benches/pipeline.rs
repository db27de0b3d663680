use charnet_bench::{random_graph, synthetic_story};
use charnet_core::analytics::{all_centralities, louvain};
use charnet_core::extract::{extract_pipeline, WindowConfig};
use charnet_core::features::FeatureMode;
use charnet_core::learn::{select_model, SelectConfig};
use charnet_core::Seed;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn pipeline(c: &mut Criterion) {
    let (text, table) = synthetic_story(200_000, 60, 3);
    c.bench_function("extract/200k_words", |b| {
        b.iter(|| extract_pipeline(black_box(&text), &table, WindowConfig::default()))
    });

    let g = random_graph(62, 0.3, 4);
    c.bench_function("centralities/n62", |b| {
        b.iter(|| all_centralities(black_box(&g)).unwrap())
    });
    c.bench_function("louvain/n62", |b| b.iter(|| louvain(black_box(&g), Seed(5))));

    let mut group = c.benchmark_group("select");
    group.sample_size(10);
    let config = SelectConfig {
        samples: 20,
        ..SelectConfig::new(FeatureMode::Full, Seed(6))
    };
    group.bench_function("n62_20_samples", |b| {
        b.iter(|| select_model(black_box(&g), &config).unwrap())
    });
    group.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
