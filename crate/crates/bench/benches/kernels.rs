use criterion::{ criterion_group, criterion_main, Criterion };
use std::hint::black_box;
use tavis::{
    model::{ build_full_hamiltonian, CavityModel, AtomParams },
    numerics::herm_eig,
    protocol::{ sweep, GridAxis, ZSJump, ZSJumpConfig },
};

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral");
    let block = ZSJumpConfig::default().with_shift(0.01, 0.007).shifted_block().unwrap();
    group.bench_function("herm_eig 3x3", |b| b.iter(|| herm_eig(black_box(&block)).unwrap()));

    let atoms = (0..4).map(|k| AtomParams::new(1.0 + 0.01 * k as f64, 0.02)).collect();
    let model = CavityModel::new(1.0, atoms, 3, true).unwrap();
    let full = build_full_hamiltonian(&model).unwrap();
    group.bench_function("build full n=4 cutoff=3", |b| {
        b.iter(|| build_full_hamiltonian(black_box(&model)).unwrap())
    });
    group.bench_function("herm_eig 64x64", |b| b.iter(|| herm_eig(black_box(&full)).unwrap()));
    group.finish();
}

fn protocol(c: &mut Criterion) {
    let mut group = c.benchmark_group("protocol");
    let cfg = ZSJumpConfig::default().with_shift(0.01, 0.007);
    group.bench_function("pds_max", |b| {
        b.iter(|| ZSJump::new(black_box(&cfg)).unwrap().max_yield())
    });
    let ds = GridAxis::new(0.0, 0.01, 10).unwrap();
    let dg = GridAxis::new(0.0, 0.007, 10).unwrap();
    group.sample_size(10);
    group.bench_function("sweep 10x10", |b| b.iter(|| sweep(&cfg, ds, dg).unwrap()));
    group.finish();
}

criterion_group!(benches, spectral, protocol);
criterion_main!(benches);
