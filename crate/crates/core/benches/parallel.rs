//! One-thread vs full-pool timings of the per-vertex kernels. Build with
//! `--no-default-features` to time the sequential code path instead.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPool;
use willmore_core::diagnostics::{sup_local_curvature, CentersPolicy};
use willmore_core::flow::{self, FlowConfig, FlowMode, FlowState};
use willmore_core::geometry::GeometryCache;
use willmore_core::mesh::make_icosphere;
use willmore_core::Vec3;

fn pools() -> Vec<(usize, ThreadPool)> {
    let full = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut counts = vec![1];
    if full > 1 {
        counts.push(full);
    }
    counts
        .into_iter()
        .map(|n| {
            (
                n,
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .unwrap(),
            )
        })
        .collect()
}

fn kernels(c: &mut Criterion) {
    let pools = pools();
    for subdiv in [4u32, 5] {
        let mesh = make_icosphere(Vec3::new(3.0, 0.0, 0.0), 1.0, subdiv).unwrap();
        let cache = GeometryCache::build(&mesh).unwrap();
        let cfg = FlowConfig::new(FlowMode::InverseWillmore, f64::INFINITY);
        let state = FlowState::new(mesh.clone());
        let label = format!("subdiv{subdiv}");

        let mut group = c.benchmark_group(format!("geometry/{label}"));
        group.sample_size(20);
        for (n, pool) in &pools {
            group.bench_with_input(BenchmarkId::new("build_cache", n), n, |b, _| {
                pool.install(|| b.iter(|| GeometryCache::build(black_box(&mesh)).unwrap()))
            });
            group.bench_with_input(BenchmarkId::new("willmore_gradient", n), n, |b, _| {
                pool.install(|| b.iter(|| black_box(&cache).willmore_gradient(true).unwrap()))
            });
            group.bench_with_input(BenchmarkId::new("sup_local_curvature", n), n, |b, _| {
                pool.install(|| {
                    b.iter(|| {
                        sup_local_curvature(black_box(&cache), 0.5, CentersPolicy::Vertices)
                            .unwrap()
                    })
                })
            });
            group.bench_with_input(BenchmarkId::new("flow_step", n), n, |b, _| {
                pool.install(|| b.iter(|| flow::step(black_box(&state), &cfg).unwrap()))
            });
        }
        group.finish();
    }
}

criterion_group!(benches, kernels);
criterion_main!(benches);
