use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use nbp_tamp::geometry::Vec2;
use nbp_tamp::kitchen::{Belief, KitchenModel};
use nbp_tamp::network::{build_network, point_belief, BuildOptions};
use nbp_tamp::par::ExecMode;
use nbp_tamp::pmpnbp::{run_inference, InferenceOptions};
use nbp_tamp::schema::{ground_positional, parse_domain, GroundAction, GroundLiteral};
use std::sync::Arc;

fn pick_place() -> (Vec<GroundAction>, Belief, KitchenModel) {
    let model = KitchenModel::default_world();
    let schemas: Vec<_> = parse_domain(include_str!("../data/kitchen.domain"))
        .unwrap()
        .into_iter()
        .map(Arc::new)
        .collect();
    let act = |name: &str, objs: &[&str]| {
        ground_positional(schemas.iter().find(|s| s.name == name).unwrap(), objs).unwrap()
    };
    let skeleton = vec![
        act("pick", &["pear", "drawer1", "cabinet"]),
        act("place", &["pear", "drawer2", "cabinet"]),
    ];
    let facts: Vec<GroundLiteral> = [
        ("robot-at", &["cabinet"][..]),
        ("accessible", &["drawer1"]),
        ("accessible", &["drawer2"]),
    ]
    .iter()
    .map(|(p, a)| GroundLiteral::new(p, a))
    .collect();
    let belief = point_belief(
        model.tucked_at("cabinet").unwrap(),
        &[("pear", "drawer1", Vec2::new(0.4, 0.35))],
        0.01,
        0.0,
        &facts,
    );
    (skeleton, belief, model)
}

const MODES: [(&str, ExecMode); 2] = [
    ("parallel", ExecMode::Parallel),
    ("sequential", ExecMode::Sequential),
];

fn bench_build(c: &mut Criterion) {
    let (skeleton, belief, model) = pick_place();
    let mut g = c.benchmark_group("build_network");
    g.sample_size(10);
    for (name, mode) in MODES {
        let opts = BuildOptions {
            particles: 100,
            seed: 1,
            mode,
            ..Default::default()
        };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_network(&skeleton, &belief, &model, &opts).unwrap())
        });
    }
    g.finish();
}

fn bench_inference(c: &mut Criterion) {
    let (skeleton, belief, model) = pick_place();
    let net = build_network(
        &skeleton,
        &belief,
        &model,
        &BuildOptions {
            particles: 100,
            seed: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let mut g = c.benchmark_group("run_inference");
    g.sample_size(10);
    for (name, mode) in MODES {
        let opts = InferenceOptions {
            iterations: 10,
            seed: 1,
            subsample_std: 0.005,
            mode,
            ..Default::default()
        };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched(
                || net.clone(),
                |mut n| run_inference(&mut n, &opts),
                BatchSize::LargeInput,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, bench_build, bench_inference);
criterion_main!(benches);
