//! Sequential vs rayon execution of the two hot loops: orbit trials and the
//! per-row classification of a five-qubit state.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use slocc::classify::{classify_rows, Settings};
use slocc::document::AnyState;
use slocc::fixtures::fixture_state;
use slocc::orbit::{verify, VerifyConfig};
use slocc::parallel::Execution;
use slocc::state::random_state;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn orbit_trials(c: &mut Criterion) {
    let state = fixture_state("theta1", &[]).unwrap();
    let mut g = c.benchmark_group("verify_theta1_16_trials");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                let cfg = VerifyConfig {
                    trials: 16,
                    seed: 1,
                    exec,
                    ..VerifyConfig::default()
                };
                black_box(verify(&state, cfg).unwrap())
            })
        });
    }
    g.finish();
}

fn classify_five_qubits(c: &mut Criterion) {
    let state = AnyState::Exact(random_state(5, 3, 0.0, &mut ChaCha8Rng::seed_from_u64(5)));
    let mut g = c.benchmark_group("classify_rows_n5");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            let settings = Settings {
                exec,
                ..Settings::default()
            };
            b.iter(|| black_box(classify_rows(&state, None, settings).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, orbit_trials, classify_five_qubits);
criterion_main!(benches);
