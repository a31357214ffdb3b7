use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pathpuzzle_core::harness::{gen_instance, GenSpec, Instance};
use pathpuzzle_core::oracles::{count_lo, count_nkdm, OracleCaps};
use pathpuzzle_core::pathpuzzle::{count_paths, reduce_lo_to_pp, Engine, SearchOptions};
use pathpuzzle_core::reductions::{reduce_n3dm_to_lo, Reduction};
use pathpuzzle_core::NumericalMatchingInstance;

fn golden() -> NumericalMatchingInstance {
    NumericalMatchingInstance::new(vec![vec![5, 6, 7], vec![4, 5, 5], vec![4, 4, 5]], 15)
}

fn oracles(c: &mut Criterion) {
    let caps = OracleCaps::default();
    let n3 = golden();
    let lo = reduce_n3dm_to_lo(&n3).unwrap().target().clone();
    c.bench_function("count_nkdm/golden", |b| {
        b.iter(|| count_nkdm(&n3, &caps).unwrap())
    });
    c.bench_function("count_lo/golden", |b| {
        b.iter(|| count_lo(&lo, &caps).unwrap())
    });
}

fn path_engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_paths");
    let reduced: Vec<(String, _)> = [(1usize, 3u128), (1, 6), (2, 4)]
        .into_iter()
        .map(|(intervals, horizon)| {
            let Instance::Lo(lo) = gen_instance(GenSpec::Lo { intervals, horizon }, 1).unwrap()
            else {
                unreachable!()
            };
            (
                format!("lo-n{intervals}-m{horizon}"),
                reduce_lo_to_pp(&lo).unwrap().target().clone(),
            )
        })
        .collect();
    for (name, p) in &reduced {
        for engine in [Engine::Frontier, Engine::Dfs] {
            // Depth-first search is hopeless on the taller reduced grids.
            if engine == Engine::Dfs && p.rows * p.cols > 9 * 17 {
                continue;
            }
            let opts = SearchOptions {
                engine,
                ..SearchOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(engine.tag(), name), p, |b, p| {
                b.iter(|| count_paths(p, &opts).unwrap())
            });
        }
    }
    let Instance::Pp(random) = gen_instance(GenSpec::Pp { rows: 5, cols: 5 }, 3).unwrap() else {
        unreachable!()
    };
    for engine in [Engine::Frontier, Engine::Dfs] {
        let opts = SearchOptions {
            engine,
            ..SearchOptions::default()
        };
        group.bench_with_input(
            BenchmarkId::new(engine.tag(), "random-5x5"),
            &random,
            |b, p| b.iter(|| count_paths(p, &opts).unwrap()),
        );
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = oracles, path_engines
}
criterion_main!(benches);
