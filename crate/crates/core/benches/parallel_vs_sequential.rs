use std::hint::black_box;

use camenc::compiler::corpus::{random_tree, CorpusParams};
use camenc::oracle::max_antichain_with;
use camenc::simulator::eval_batch;
use camenc::{
    compile_tree, encode, exists_encoding, verify_encoding, CompileConfig, Execution, FamilyId,
    FamilySpec, Poset, Scenario, SearchBudget, VerifyOptions,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn verify(c: &mut Criterion) {
    let spec = FamilySpec::named(FamilyId::F, 12).unwrap();
    let enc = encode(&spec, Scenario::RR).unwrap();
    let mut group = c.benchmark_group("verify_F12_rr");
    for (name, execution) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let opts = VerifyOptions { cap: 32, execution };
                black_box(verify_encoding(&enc, &spec, opts).unwrap())
            })
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    // Negative case: the whole space is explored.
    let spec = FamilySpec::named(FamilyId::F, 5).unwrap();
    let mut group = c.benchmark_group("search_F5_rr_n2");
    group.sample_size(10);
    for (name, execution) in MODES {
        let budget = SearchBudget {
            execution,
            ..SearchBudget::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(exists_encoding(&spec, Scenario::RR, 2, budget).unwrap()))
        });
    }
    group.finish();
}

fn antichain(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_antichain_star_n5");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(max_antichain_with(Poset::S, 5, execution).unwrap()))
        });
    }
    group.finish();
}

fn simulate(c: &mut Criterion) {
    let params = CorpusParams {
        max_features: 3,
        max_domain: 16,
        max_depth: 6,
        split_probability: 0.9,
    };
    let tree = random_tree(&mut ChaCha8Rng::seed_from_u64(17), &params);
    let prog = compile_tree(&tree, &CompileConfig::default()).unwrap();
    let mut xs = Vec::new();
    for round in 0..8 {
        let total: usize = tree.domains.iter().product();
        for code in 0..total {
            let mut rest = code + round;
            xs.push(
                tree.domains
                    .iter()
                    .map(|&q| {
                        let v = rest % q;
                        rest /= q;
                        v
                    })
                    .collect::<Vec<usize>>(),
            );
        }
    }
    let mut group = c.benchmark_group("simulate_batch");
    for (name, execution) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(eval_batch(&prog, &xs, execution).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, verify, search, antichain, simulate);
criterion_main!(benches);
