//! Sequential vs. rayon execution of the per-parameter workloads.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use codesign::monads::laws::{check_monad_laws_with, LawConfig};
use codesign::param::{cell_compose_with, cell_tensor_with};
use codesign::queries::query_cell_with;
use codesign::rational::int;
use codesign::{DesignProblem, Dist, Execution, FinitePoset, MonadKind, MonotoneMap, ParamCell, ParamSpace, PosetRef, Uncertain};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn shift(from: &PosetRef, to: &PosetRef, k: usize) -> DesignProblem {
    let n = to.len();
    DesignProblem::threshold(&MonotoneMap::from_fn(from.clone(), to.clone(), |i| (i + k).min(n - 1)).unwrap())
}

/// A distribution-valued cell over `params` points with a few outcomes each.
fn dist_cell(p: &PosetRef, params: usize) -> ParamCell {
    let space = ParamSpace::new([Arc::new(FinitePoset::chain(params))]);
    ParamCell::from_fn(p.clone(), p.clone(), space, MonadKind::Dist, |t| {
        let k = t[0].index();
        let d = Dist::normalized((0..3).map(|j| (shift(p, p, (k + j) % p.len()), int(j as i64 + 1))))?;
        Ok(Uncertain::Dist(d))
    })
    .unwrap()
}

fn cells(c: &mut Criterion) {
    let p = Arc::new(FinitePoset::chain(12));
    let a = dist_cell(&p, 16);
    let b = dist_cell(&p, 16);
    let mut g = c.benchmark_group("cell_compose");
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bch, &e| {
            bch.iter(|| cell_compose_with(e, black_box(&a), black_box(&b)).unwrap())
        });
    }
    g.finish();

    let q = Arc::new(FinitePoset::chain(4));
    let (x, y) = (dist_cell(&q, 8), dist_cell(&q, 8));
    let mut g = c.benchmark_group("cell_tensor");
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bch, &e| {
            bch.iter(|| cell_tensor_with(e, black_box(&x), black_box(&y)).unwrap())
        });
    }
    g.finish();

    let composite = cell_compose_with(Execution::Sequential, &a, &b).unwrap();
    let mut g = c.benchmark_group("query_cell");
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bch, &e| {
            bch.iter(|| query_cell_with(e, black_box(&composite), 3).unwrap())
        });
    }
    g.finish();
}

fn laws(c: &mut Criterion) {
    let cfg = LawConfig::default();
    let mut g = c.benchmark_group("dist_monad_laws");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bch, &e| {
            bch.iter(|| check_monad_laws_with(e, &MonadKind::Dist, &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, cells, laws);
criterion_main!(benches);
