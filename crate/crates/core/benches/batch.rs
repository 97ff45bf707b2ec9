use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hpgforge::batch::{closure_sweep, identity_sweep, transformations, Execution};
use hpgforge::triple::Family;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure_norm_30");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| black_box(closure_sweep(exec, &Family::ALL, 30))));
    }
    g.finish();
}

fn identities(c: &mut Criterion) {
    let maps = transformations(Execution::Parallel, &Family::ALL, 13).expect("maps generate");
    let mut g = c.benchmark_group("identities_norm_13");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| black_box(identity_sweep(exec, &maps, 30))));
    }
    g.finish();
}

criterion_group!(benches, closure, identities);
criterion_main!(benches);
