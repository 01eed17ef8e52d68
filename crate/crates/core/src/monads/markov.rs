//! Markov-category axioms for the Kleisli category of a monad: copy is a
//! commutative comonoid compatible with the tensor, delete is natural, and
//! pure maps are deterministic.

use std::sync::Arc;

use super::kleisli::{copy, delete, pairs};
use super::laws::{carriers, run_law, tables, LawConfig, LawReport, MonadInstance, Sampler};
use super::{KleisliArrow, MonadKind, Uncertain, Value};
use crate::error::Result;
use crate::exec::Execution;
use crate::poset::Elem;

type Carrier = Arc<Vec<Elem>>;

fn pure<A: Value, B: Value>(m: MonadKind, dom: &[A], cod: &[B], f: impl Fn(&A) -> B) -> Result<KleisliArrow<A, B>> {
    KleisliArrow::lift_pure(m, dom.to_vec(), cod.to_vec(), f)
}

fn arrows(m: MonadKind, x: &Carrier, y: &Carrier, s: &mut Sampler) -> Vec<KleisliArrow<Elem, Elem>> {
    let vals: Vec<Uncertain<Elem>> = MonadInstance::values(&m, y, s);
    let cap = s.arrow_cap;
    tables(x, &vals, m == MonadKind::Interval, cap, s.rng())
        .into_iter()
        .filter_map(|t| KleisliArrow::new(m, x.to_vec(), y.to_vec(), |a| Ok(t.get(a).clone())).ok())
        .collect()
}

fn pure_maps(m: MonadKind, x: &Carrier, y: &Carrier, s: &mut Sampler) -> Vec<super::laws::Table<Elem, Elem>> {
    let cap = s.arrow_cap;
    tables(x, &y.to_vec(), m == MonadKind::Interval, cap, s.rng())
}

fn eq<A: Value, B: Value>(l: Result<KleisliArrow<A, B>>, r: Result<KleisliArrow<A, B>>) -> Result<Option<String>> {
    let (l, r) = (l?, r?);
    Ok((l != r).then(|| format!("{l:?} ≠ {r:?}")))
}

fn record(t: &mut super::laws::Tally, outcome: Result<Option<String>>, ctx: impl FnOnce() -> String) {
    match outcome {
        Ok(None) => t.check(true, String::new),
        Ok(Some(w)) => t.check(false, || format!("{}: {w}", ctx())),
        Err(e) => t.check(false, || format!("{}: error {e}", ctx())),
    }
}

/// Checks the Markov-category axioms for the Kleisli category of `kind`.
pub fn check_markov_axioms(kind: MonadKind, config: &LawConfig) -> Result<LawReport> {
    check_markov_axioms_with(Execution::default(), kind, config)
}

pub fn check_markov_axioms_with(exec: Execution, m: MonadKind, config: &LawConfig) -> Result<LawReport> {
    config.validate()?;
    let cs = carriers(m == MonadKind::Interval, config.max_carrier);
    let nc = cs.len();
    let mut results = Vec::new();

    results.push(run_law(exec, config, 101, "copy_commutative", nc, |k, _s, t| {
        let x = &cs[k];
        let xx = pairs(x, x);
        let lhs = copy(m, x.to_vec()).and_then(|c| c.then(&pure(m, &xx, &xx, |(a, b)| (b.clone(), a.clone()))?));
        record(t, eq(lhs, copy(m, x.to_vec())), || format!("|X| = {}", x.len()));
    }));

    results.push(run_law(exec, config, 102, "copy_coassociative", nc, |k, _s, t| {
        let x = &cs[k];
        let xx = pairs(x, x);
        let out = (|| {
            let c = copy(m, x.to_vec())?;
            let id = KleisliArrow::identity(m, x.to_vec())?;
            let left = c.then(&c.tensor(&id)?)?;
            let assoc = pure(m, left.codomain(), &pairs(x, &xx), |((a, b), c)| (a.clone(), (b.clone(), c.clone())))?;
            eq(left.then(&assoc), c.then(&id.tensor(&c)?))
        })();
        record(t, out, || format!("|X| = {}", x.len()));
    }));

    results.push(run_law(exec, config, 103, "copy_counital", nc, |k, _s, t| {
        let x = &cs[k];
        let out = (|| {
            let c = copy(m, x.to_vec())?;
            let id = KleisliArrow::identity(m, x.to_vec())?;
            let d = delete(m, x.to_vec())?;
            let l = c.then(&d.tensor(&id)?)?;
            let l = l.then(&pure(m, l.codomain(), x, |(_, a)| a.clone())?);
            let r = c.then(&id.tensor(&d)?)?;
            let r = r.then(&pure(m, r.codomain(), x, |(a, _)| a.clone())?);
            Ok(eq(l, Ok(id.clone()))?.or(eq(r, Ok(id))?))
        })();
        record(t, out, || format!("|X| = {}", x.len()));
    }));

    results.push(run_law(exec, config, 104, "delete_tensor", nc * nc, |k, _s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let out = (|| {
            let dd = delete(m, x.to_vec())?.tensor(&delete(m, y.to_vec())?)?;
            let dd = dd.then(&pure(m, dd.codomain(), &[()], |_| ())?);
            eq(dd, delete(m, pairs(x, y)))
        })();
        record(t, out, || format!("|X| = {}, |Y| = {}", x.len(), y.len()));
    }));

    results.push(run_law(exec, config, 105, "copy_tensor", nc * nc, |k, _s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let out = (|| {
            let xy = pairs(x, y);
            let cc = copy(m, x.to_vec())?.tensor(&copy(m, y.to_vec())?)?;
            let mid = pure(m, cc.codomain(), &pairs(&xy, &xy), |((a, a2), (b, b2))| {
                ((a.clone(), b.clone()), (a2.clone(), b2.clone()))
            })?;
            eq(cc.then(&mid), copy(m, xy))
        })();
        record(t, out, || format!("|X| = {}, |Y| = {}", x.len(), y.len()));
    }));

    results.push(run_law(exec, config, 106, "delete_naturality", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        for f in arrows(m, x, y, s) {
            let out = delete(m, y.to_vec()).and_then(|d| eq(f.then(&d), delete(m, x.to_vec())));
            record(t, out, || format!("f = {f:?}"));
        }
    }));

    results.push(run_law(exec, config, 107, "pure_deterministic", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        for f in pure_maps(m, x, y, s) {
            let out = pure(m, x, y, |a| f.get(a).clone())
                .and_then(|a| a.is_deterministic())
                .map(|det| (!det).then(|| "not deterministic".to_string()));
            record(t, out, || format!("|X| = {}, |Y| = {}", x.len(), y.len()));
        }
    }));

    results.push(run_law(exec, config, 108, "kleisli_unit", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        for f in arrows(m, x, y, s) {
            let out = (|| {
                let l = KleisliArrow::identity(m, x.to_vec())?.then(&f);
                let r = f.then(&KleisliArrow::identity(m, y.to_vec())?);
                Ok(eq(l, Ok(f.clone()))?.or(eq(r, Ok(f.clone()))?))
            })();
            record(t, out, || format!("f = {f:?}"));
        }
    }));

    results.push(run_law(exec, config, 109, "kleisli_associativity", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let fs = arrows(m, x, y, s);
        let gs = arrows(m, y, x, s);
        let hs = arrows(m, x, y, s);
        if gs.is_empty() || hs.is_empty() {
            return;
        }
        for (i, f) in fs.iter().enumerate() {
            let g = &gs[i % gs.len()];
            let h = &hs[(i * 7 + 3) % hs.len()];
            let l = f.then(g).and_then(|fg| fg.then(h));
            let r = g.then(h).and_then(|gh| f.then(&gh));
            record(t, eq(l, r), || format!("f = {f:?}, g = {g:?}, h = {h:?}"));
        }
    }));

    results.push(run_law(exec, config, 110, "lift_functorial", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let fs = pure_maps(m, x, y, s);
        let gs = pure_maps(m, y, x, s);
        if gs.is_empty() {
            return;
        }
        for (i, f) in fs.iter().enumerate() {
            let g = &gs[i % gs.len()];
            let out = (|| {
                let l = pure(m, x, y, |a| f.get(a).clone())?.then(&pure(m, y, x, |b| g.get(b).clone())?);
                eq(l, pure(m, x, x, |a| g.get(f.get(a)).clone()))
            })();
            record(t, out, || format!("|X| = {}, |Y| = {}", x.len(), y.len()));
        }
    }));

    results.push(run_law(exec, config, 111, "lift_monoidal", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let fs = pure_maps(m, x, y, s);
        let gs = pure_maps(m, y, x, s);
        if gs.is_empty() {
            return;
        }
        for (i, f) in fs.iter().enumerate() {
            let g = &gs[i % gs.len()];
            let out = (|| {
                let l = pure(m, x, y, |a| f.get(a).clone())?.tensor(&pure(m, y, x, |b| g.get(b).clone())?);
                eq(l, pure(m, &pairs(x, y), &pairs(y, x), |(a, b)| (f.get(a).clone(), g.get(b).clone())))
            })();
            record(t, out, || format!("|X| = {}, |Y| = {}", x.len(), y.len()));
        }
    }));

    Ok(LawReport {
        instance: m.name().to_string(),
        seed: config.seed,
        results,
    })
}
