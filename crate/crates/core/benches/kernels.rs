//! Parallel versus single-threaded execution of the main kernels.
//!
//! Build with `--no-default-features` to time the pure sequential fallback.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use walg_core::cohomology::{classify, derivation_space, DerivationOptions};
use walg_core::tensor::wedge;
use walg_core::{
    check_cocycle_identity, generators, mybe_check, par, twist, yang_baxter, BasisSymbol,
    CobracketTable, DegreeWindow, GeneratorSet, Rational, Tensor2,
};
use BasisSymbol::*;

fn skew_tensor(seed: u64, radius: i64, terms: usize) -> Tensor2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Tensor2::zero();
    for _ in 0..terms {
        let mut pick = || {
            let n = rng.gen_range(-radius..=radius);
            if rng.gen_bool(0.5) {
                L(n)
            } else {
                W(n)
            }
        };
        let key = (pick(), pick());
        a.add_term(key, Rational::from_integer(rng.gen_range(-4..=4).into()));
    }
    &a - &twist(&a)
}

fn modes() -> [(&'static str, usize); 2] {
    let all = std::thread::available_parallelism().map_or(4, |n| n.get());
    [("threads=1", 1), ("threads=all", all)]
}

fn bench_yang_baxter(c: &mut Criterion) {
    let mut group = c.benchmark_group("cocycle_identity");
    let inputs: Vec<Tensor2> = (0..32).map(|s| skew_tensor(s, 3, 6)).collect();
    let gens = generators(GeneratorSet::Full);
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::new("batch32", name), |b| {
            b.iter(|| {
                par::with_threads(threads, || {
                    par::all(&inputs, |r| {
                        gens.iter().all(|g| check_cocycle_identity(r, g).equal)
                    })
                })
            })
        });
    }
    group.finish();

    let mut group = c.benchmark_group("mybe");
    let r = skew_tensor(7, 4, 12);
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::new("r12", name), |b| {
            b.iter(|| par::with_threads(threads, || mybe_check(black_box(&r))))
        });
    }
    group.finish();

    c.bench_function("yang_baxter/r12", |b| b.iter(|| yang_baxter(black_box(&r))));
}

fn bench_derivations(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivation_space");
    group.sample_size(10);
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::new("alpha1_N5", name), |b| {
            b.iter(|| {
                par::with_threads(threads, || {
                    derivation_space(1, DegreeWindow::new(5), DerivationOptions::default())
                        .expect("window is large enough")
                })
            })
        });
    }
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    let table = CobracketTable::from_r(&wedge(L(0), W(1)), DegreeWindow::new(6));
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::new("L0^W1_N6", name), |b| {
            b.iter(|| par::with_threads(threads, || classify(black_box(&table))))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_yang_baxter, bench_derivations, bench_classify);
criterion_main!(benches);
