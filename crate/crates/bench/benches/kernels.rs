use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use frkt_core::arith::{build_table, SieveMode};
use frkt_core::coeffs;
use frkt_core::dde::{Kind, SolutionTable};
use frkt_core::specfun;
use frkt_core::{Config, ZParams};

fn bench_sieve(c: &mut Criterion) {
    c.bench_function("sieve_1e6_y1e3", |b| {
        b.iter(|| build_table(black_box(1_000_000), black_box(1000.0), SieveMode::SpfSieve).unwrap())
    });
}

fn bench_dde(c: &mut Criterion) {
    let cfg = Config::default();
    let z = ZParams::from_parts(1.6, 0.5).unwrap();
    c.bench_function("dde_rho_complex_z_v10", |b| {
        b.iter(|| SolutionTable::solve(Kind::Rho, black_box(z), 10.0, &cfg).unwrap())
    });
    let tab = SolutionTable::solve(Kind::Rho, z, 10.0, &cfg).unwrap();
    c.bench_function("dde_eval_dense", |b| {
        b.iter(|| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut v = 0.05;
            while v < 10.0 {
                acc += tab.eval(black_box(v)).unwrap();
                v += 0.01;
            }
            acc
        })
    });
}

fn bench_saddles(c: &mut Criterion) {
    c.bench_function("xi_log_grid", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            let mut u = 1.001;
            while u < 1e6 {
                acc += specfun::solve_xi(black_box(u)).unwrap().0;
                u *= 1.5;
            }
            acc
        })
    });
    c.bench_function("zeta0_complex", |b| {
        b.iter(|| {
            specfun::solve_zeta0(black_box(Complex64::from_polar(150.0, -0.9)), 1e-12).unwrap()
        })
    });
}

fn bench_euler(c: &mut Criterion) {
    c.bench_function("euler_b_1e5", |b| {
        b.iter(|| {
            coeffs::euler_b(
                black_box(Complex64::new(1.5, 0.0)),
                Complex64::new(1.0, 0.0),
                100_000,
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, bench_sieve, bench_dde, bench_saddles, bench_euler);
criterion_main!(benches);
