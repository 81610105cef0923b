// SPDX-License-Identifier: Apache-2.0

//! Default worker pool against a single worker for the data-parallel
//! kernels. Build with `--no-default-features` to bench the sequential
//! fallback itself.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use permlab::gmf::{permanent, ClassSums};
use permlab::harness::{run_campaign, CampaignSpec, Checker, ConjectureId, Target};
use permlab::matrices::{sample_psd, SampleKind};
use permlab::par;
use permlab::schur_power::{schur_power_matvec, schur_power_spectrum};
use permlab::{CMatrix, Complex64, PsdMatrix};

fn psd(n: usize) -> PsdMatrix {
    sample_psd(n, n, 42, SampleKind::Psd).unwrap()
}

fn float_copy(a: &PsdMatrix) -> CMatrix {
    CMatrix::from_vec_float(a.n(), a.n(), a.matrix().data().to_vec()).unwrap()
}

/// Runs `f` on the default pool and on one worker.
fn both<F: Fn() + Sync>(c: &mut Criterion, group: &str, param: usize, f: F) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_with_input(BenchmarkId::new("pool", param), &param, |b, _| b.iter(&f));
    g.bench_with_input(BenchmarkId::new("one_worker", param), &param, |b, _| {
        b.iter(|| par::with_workers(1, &f))
    });
    g.finish();
}

fn ryser(c: &mut Criterion) {
    for n in [12, 16, 18] {
        let a = float_copy(&psd(n));
        both(c, "ryser_float", n, || {
            black_box(permanent(black_box(&a)).unwrap());
        });
    }
    let exact = CMatrix::from_gaussian(12, 12, (0..144).map(|k| num_complex::Complex::new(k % 7 - 3, k % 5 - 2)).collect()).unwrap();
    both(c, "ryser_exact", 12, || {
        black_box(permanent(black_box(&exact)).unwrap());
    });
}

fn class_sums(c: &mut Criterion) {
    for n in [7, 8] {
        let a = float_copy(&psd(n));
        both(c, "class_sums", n, || {
            black_box(ClassSums::new(black_box(&a)).unwrap());
        });
    }
}

fn schur_power(c: &mut Criterion) {
    let a = psd(7);
    let v: Vec<Complex64> = (0..5040).map(|k| Complex64::new((k as f64).sin(), 0.0)).collect();
    both(c, "schur_power_matvec", 7, || {
        black_box(schur_power_matvec(a.hermitian(), black_box(&v)).unwrap());
    });
    let a = psd(5);
    both(c, "schur_power_spectrum", 5, || {
        black_box(schur_power_spectrum(a.hermitian(), None).unwrap());
    });
}

fn campaign(c: &mut Criterion) {
    let spec = CampaignSpec::new(Target::Conjecture(ConjectureId::Bs38), 5, 1, 64);
    both(c, "campaign_bs38", 5, || {
        black_box(run_campaign(&spec, &Checker::default()).unwrap());
    });
}

criterion_group!(benches, ryser, class_sums, schur_power, campaign);
criterion_main!(benches);
