//! Law-checking harness for uncertainty monads.
//!
//! Carriers are enumerated exhaustively up to a size cap (all posets up to
//! isomorphism for order-based instances, discrete sets otherwise). Monadic
//! values are enumerated exhaustively when there are few of them and sampled
//! from a seeded generator otherwise; Kleisli arrows likewise. Every failure
//! records a witness.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Dist, MonadKind, Ordered, Uncertain, Value};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::poset::{iso_classes_up_to, Elem, FinitePoset};
use crate::rational::{ratio, Rational};

/// Largest carrier the harness accepts.
pub const MAX_LAW_CARRIER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawConfig {
    pub max_carrier: usize,
    /// Cap on monadic values drawn per carrier.
    pub value_cap: usize,
    /// Cap on Kleisli arrows / pure maps drawn per carrier pair.
    pub arrow_cap: usize,
    pub seed: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            max_carrier: 3,
            value_cap: 64,
            arrow_cap: 24,
            seed: 0,
        }
    }
}

impl LawConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.max_carrier > MAX_LAW_CARRIER {
            Err(Error::CarrierTooLarge {
                size: self.max_carrier,
                cap: MAX_LAW_CARRIER,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub law: String,
    pub checked: usize,
    pub witness: Option<String>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub instance: String,
    pub seed: u64,
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(LawResult::passed)
    }

    pub fn get(&self, law: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.witness {
                None => writeln!(f, "{} {:<28} pass ({} cases)", self.instance, r.law, r.checked)?,
                Some(w) => writeln!(f, "{} {:<28} FAIL witness: {w}", self.instance, r.law)?,
            }
        }
        Ok(())
    }
}

/// Deterministic source of samples for one law/carrier task.
pub struct Sampler {
    rng: ChaCha8Rng,
    pub value_cap: usize,
    pub arrow_cap: usize,
}

impl Sampler {
    pub fn new(config: &LawConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(stream);
        Sampler {
            rng,
            value_cap: config.value_cap,
            arrow_cap: config.arrow_cap,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Keeps all of `items` if there are at most `cap`, otherwise a seeded
    /// subset of `cap`, in original order.
    pub fn limit<T>(&mut self, items: Vec<T>, cap: usize) -> Vec<T> {
        if items.len() <= cap {
            return items;
        }
        let mut idx: Vec<usize> = (0..items.len()).collect();
        idx.shuffle(&mut self.rng);
        let keep: BTreeSet<usize> = idx.into_iter().take(cap).collect();
        items
            .into_iter()
            .enumerate()
            .filter(|(i, _)| keep.contains(i))
            .map(|(_, x)| x)
            .collect()
    }
}

/// The operations a monad instance exposes to the harness.
pub trait MonadInstance: Sync {
    type M<T: Value>: Value;

    fn name(&self) -> String;

    /// Arrows and pure maps must be monotone (the monad lives on posets).
    fn order_based(&self) -> bool;

    fn unit<T: Value>(&self, x: T) -> Self::M<T>;

    fn bind<T: Value, S: Value>(
        &self,
        m: &Self::M<T>,
        f: &dyn Fn(&T) -> Result<Self::M<S>>,
    ) -> Result<Self::M<S>>;

    fn strength<T: Value, S: Value>(&self, a: &Self::M<T>, b: &Self::M<S>) -> Result<Self::M<(T, S)>>;

    /// Values over a sorted carrier; exhaustive when small, sampled otherwise.
    fn values<T: Value>(&self, carrier: &[T], sampler: &mut Sampler) -> Vec<Self::M<T>>;

    /// Every value over the one-point carrier, unsampled.
    fn unit_values(&self) -> Vec<Self::M<()>>;
}

fn subsets<T: Clone>(carrier: &[T], include_empty: bool) -> Vec<Vec<T>> {
    let n = carrier.len();
    (u64::from(!include_empty)..(1u64 << n))
        .map(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| carrier[i].clone())
                .collect()
        })
        .collect()
}

fn random_subset<T: Clone>(carrier: &[T], max: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    let k = rng.gen_range(1..=max.min(carrier.len()));
    carrier.choose_multiple(rng, k).cloned().collect()
}

/// All weight vectors over `n` outcomes whose weights are multiples of 1/d, d ∈ {1,2,3}.
fn weight_grid(n: usize) -> Vec<Vec<Rational>> {
    fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        (0..=total)
            .flat_map(|first| {
                compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    let mut out = BTreeSet::new();
    for d in 1..=3usize {
        for c in compositions(d, n) {
            out.insert(c.iter().map(|&k| ratio(k as i64, d as i64)).collect::<Vec<_>>());
        }
    }
    out.into_iter().collect()
}

impl MonadInstance for MonadKind {
    type M<T: Value> = Uncertain<T>;

    fn name(&self) -> String {
        MonadKind::name(*self).to_string()
    }

    fn order_based(&self) -> bool {
        *self == MonadKind::Interval
    }

    fn unit<T: Value>(&self, x: T) -> Uncertain<T> {
        MonadKind::unit(*self, x)
    }

    fn bind<T: Value, S: Value>(
        &self,
        m: &Uncertain<T>,
        f: &dyn Fn(&T) -> Result<Uncertain<S>>,
    ) -> Result<Uncertain<S>> {
        MonadKind::bind(*self, m, f)
    }

    fn strength<T: Value, S: Value>(&self, a: &Uncertain<T>, b: &Uncertain<S>) -> Result<Uncertain<(T, S)>> {
        MonadKind::strength(*self, a, b)
    }

    fn values<T: Value>(&self, carrier: &[T], s: &mut Sampler) -> Vec<Uncertain<T>> {
        let n = carrier.len();
        let cap = s.value_cap;
        let out: Vec<Uncertain<T>> = match self {
            MonadKind::Identity => carrier.iter().cloned().map(Uncertain::Exact).collect(),
            MonadKind::Powerset if n <= 6 => subsets(carrier, false)
                .into_iter()
                .map(|xs| Uncertain::Subset(xs.into_iter().collect()))
                .collect(),
            MonadKind::Powerset => (0..cap)
                .map(|_| Uncertain::Subset(random_subset(carrier, 3, s.rng()).into_iter().collect()))
                .collect(),
            MonadKind::Interval => carrier
                .iter()
                .flat_map(|a| carrier.iter().map(move |b| (a, b)))
                .filter_map(|(a, b)| Uncertain::interval(a.clone(), b.clone()).ok())
                .collect(),
            MonadKind::Dist if n <= 4 => weight_grid(n)
                .into_iter()
                .map(|w| {
                    Uncertain::Dist(
                        Dist::new(carrier.iter().cloned().zip(w)).expect("grid weights sum to 1"),
                    )
                })
                .collect(),
            MonadKind::Dist => (0..cap)
                .map(|_| {
                    let support = random_subset(carrier, 2, s.rng());
                    let w = match support.len() {
                        1 => vec![ratio(1, 1)],
                        _ if s.rng().gen_bool(0.5) => vec![ratio(1, 2), ratio(1, 2)],
                        _ => vec![ratio(1, 3), ratio(2, 3)],
                    };
                    Uncertain::Dist(Dist::new(support.into_iter().zip(w)).expect("weights sum to 1"))
                })
                .collect(),
        };
        let out: Vec<_> = out.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        s.limit(out, cap)
    }

    fn unit_values(&self) -> Vec<Uncertain<()>> {
        vec![MonadKind::unit(*self, ())]
    }
}

/// Full powerset, empty set included. A lawful monad that is not affine;
/// serves as the harness's negative control.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullPowerset;

impl MonadInstance for FullPowerset {
    type M<T: Value> = BTreeSet<T>;

    fn name(&self) -> String {
        "powerset-with-empty".into()
    }

    fn order_based(&self) -> bool {
        false
    }

    fn unit<T: Value>(&self, x: T) -> BTreeSet<T> {
        BTreeSet::from([x])
    }

    fn bind<T: Value, S: Value>(
        &self,
        m: &BTreeSet<T>,
        f: &dyn Fn(&T) -> Result<BTreeSet<S>>,
    ) -> Result<BTreeSet<S>> {
        let mut out = BTreeSet::new();
        for x in m {
            out.extend(f(x)?);
        }
        Ok(out)
    }

    fn strength<T: Value, S: Value>(&self, a: &BTreeSet<T>, b: &BTreeSet<S>) -> Result<BTreeSet<(T, S)>> {
        Ok(a.iter()
            .flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone())))
            .collect())
    }

    fn values<T: Value>(&self, carrier: &[T], s: &mut Sampler) -> Vec<BTreeSet<T>> {
        let mut out: BTreeSet<BTreeSet<T>> = if carrier.len() <= 6 {
            subsets(carrier, true).into_iter().map(|xs| xs.into_iter().collect()).collect()
        } else {
            (0..s.value_cap)
                .map(|_| random_subset(carrier, 3, s.rng()).into_iter().collect())
                .collect()
        };
        out.insert(BTreeSet::new());
        let all: Vec<_> = out.into_iter().collect();
        s.limit(all, s.value_cap)
    }

    fn unit_values(&self) -> Vec<BTreeSet<()>> {
        vec![BTreeSet::new(), BTreeSet::from([()])]
    }
}

/// A finite map given as a table aligned with a sorted domain.
#[derive(Clone, Debug)]
pub struct Table<T, V> {
    dom: Arc<Vec<T>>,
    vals: Vec<V>,
}

impl<T: Ord, V> Table<T, V> {
    pub fn get(&self, x: &T) -> &V {
        let i = self.dom.binary_search(x).expect("argument in the table's domain");
        &self.vals[i]
    }
}

/// Maps `dom → vals`, monotone if requested. Exhaustive when there are at
/// most 4096 candidates, otherwise built greedily along a linear extension.
pub fn tables<T: Value, V: Clone + Ordered>(
    dom: &Arc<Vec<T>>,
    vals: &[V],
    monotone: bool,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Table<T, V>> {
    let n = dom.len();
    if vals.is_empty() {
        return if n == 0 {
            vec![Table {
                dom: dom.clone(),
                vals: vec![],
            }]
        } else {
            vec![]
        };
    }
    let ok = |t: &[usize]| {
        !monotone
            || (0..n).all(|a| (0..n).all(|b| !dom[a].leq(&dom[b]) || vals[t[a]].leq(&vals[t[b]])))
    };
    let total = (vals.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let mut picks: Vec<Vec<usize>> = Vec::new();
    if total <= 4096 {
        for code in 0..total as usize {
            let mut c = code;
            let t: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % vals.len();
                    c /= vals.len();
                    d
                })
                .collect();
            if ok(&t) {
                picks.push(t);
            }
        }
        if picks.len() > cap {
            picks.shuffle(rng);
            picks.truncate(cap);
            picks.sort();
        }
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| dom[b].leq(&dom[a])).count());
        let mut seen = BTreeSet::new();
        for _ in 0..cap * 8 {
            if seen.len() >= cap {
                break;
            }
            let mut t = vec![usize::MAX; n];
            let mut complete = true;
            for &a in &order {
                let admissible: Vec<usize> = (0..vals.len())
                    .filter(|&v| {
                        !monotone
                            || (0..n).all(|b| {
                                t[b] == usize::MAX || !dom[b].leq(&dom[a]) || vals[t[b]].leq(&vals[v])
                            })
                    })
                    .collect();
                match admissible.choose(rng) {
                    Some(&v) => t[a] = v,
                    None => {
                        complete = false;
                        break;
                    }
                }
            }
            if complete {
                seen.insert(t);
            }
        }
        picks = seen.into_iter().collect();
    }
    picks
        .into_iter()
        .map(|t| Table {
            dom: dom.clone(),
            vals: t.into_iter().map(|i| vals[i].clone()).collect(),
        })
        .collect()
}

/// Running count and first failure for one law.
#[derive(Default)]
pub struct Tally {
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn check_eq<V: PartialEq + fmt::Debug>(
        &mut self,
        lhs: Result<V>,
        rhs: Result<V>,
        context: impl FnOnce() -> String,
    ) {
        self.checked += 1;
        if self.witness.is_some() {
            return;
        }
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => self.witness = Some(format!("{}: {l:?} ≠ {r:?}", context())),
            (Err(e), _) | (_, Err(e)) => self.witness = Some(format!("{}: error {e}", context())),
        }
    }
}

/// Runs `tasks` independent checks (possibly in parallel), each with its
/// own sampler stream, and merges them in task order.
pub fn run_law<F>(exec: Execution, config: &LawConfig, law_id: u64, law: &str, tasks: usize, f: F) -> LawResult
where
    F: Fn(usize, &mut Sampler, &mut Tally) + Sync + Send,
{
    let parts = exec.map_range(tasks, |i| {
        let mut sampler = Sampler::new(config, law_id * 1_000_003 + i as u64);
        let mut tally = Tally::default();
        f(i, &mut sampler, &mut tally);
        tally
    });
    LawResult {
        law: law.to_string(),
        checked: parts.iter().map(|t| t.checked).sum(),
        witness: parts.into_iter().find_map(|t| t.witness),
    }
}

/// Carriers as sorted element lists: all posets up to isomorphism when the
/// instance is order based, discrete sets otherwise.
pub fn carriers(order_based: bool, max: usize) -> Vec<Arc<Vec<Elem>>> {
    let posets: Vec<FinitePoset> = if order_based {
        iso_classes_up_to(max)
    } else {
        (0..=max)
            .map(|n| FinitePoset::antichain((0..n).map(|i| i.to_string())).expect("antichain"))
            .collect()
    };
    posets
        .into_iter()
        .map(|p| Arc::new(Elem::all(&Arc::new(p))))
        .collect()
}

fn fmap<I: MonadInstance, T: Value, S: Value>(inst: &I, m: &I::M<T>, f: impl Fn(&T) -> S) -> Result<I::M<S>> {
    inst.bind(m, &|x| Ok(inst.unit(f(x))))
}

fn sorted_values<I: MonadInstance, T: Value>(inst: &I, carrier: &[T], s: &mut Sampler) -> Vec<I::M<T>> {
    let v = inst.values(carrier, s);
    v.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Checks the monad, monoidal-monad, symmetry and affineness laws.
pub fn check_monad_laws<I: MonadInstance>(inst: &I, config: &LawConfig) -> Result<LawReport> {
    check_monad_laws_with(Execution::default(), inst, config)
}

pub fn check_monad_laws_with<I: MonadInstance>(
    exec: Execution,
    inst: &I,
    config: &LawConfig,
) -> Result<LawReport> {
    config.validate()?;
    let cs = carriers(inst.order_based(), config.max_carrier);
    let nc = cs.len();
    let mono = inst.order_based();
    let mut results = Vec::new();

    results.push(run_law(exec, config, 1, "left_unit", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let ys = sorted_values(inst, y, s);
        let cap = s.arrow_cap;
        for f in tables(x, &ys, mono, cap, s.rng()) {
            for a in x.iter() {
                let lhs = inst.bind(&inst.unit(a.clone()), &|v| Ok(f.get(v).clone()));
                t.check_eq(lhs, Ok(f.get(a).clone()), || format!("x = {a:?}"));
            }
        }
    }));

    results.push(run_law(exec, config, 2, "right_unit", nc, |k, s, t| {
        for m in sorted_values(inst, &cs[k], s) {
            let lhs = inst.bind(&m, &|v| Ok(inst.unit(v.clone())));
            t.check_eq(lhs, Ok(m.clone()), || format!("m = {m:?}"));
        }
    }));

    results.push(run_law(exec, config, 3, "bind_associativity", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let xs_vals = sorted_values(inst, x, s);
        let ys_vals = sorted_values(inst, y, s);
        let cap = s.arrow_cap;
        let fs = tables(x, &ys_vals, mono, cap, s.rng());
        let gs = tables(y, &xs_vals, mono, cap, s.rng());
        if fs.is_empty() || gs.is_empty() {
            return;
        }
        for (i, m) in xs_vals.iter().enumerate() {
            for j in 0..cap.min(fs.len().max(gs.len())) {
                let (f, g) = (&fs[(i + j) % fs.len()], &gs[j % gs.len()]);
                let lhs = inst
                    .bind(m, &|v| Ok(f.get(v).clone()))
                    .and_then(|fm| inst.bind(&fm, &|v| Ok(g.get(v).clone())));
                let rhs = inst.bind(m, &|v| inst.bind(f.get(v), &|w| Ok(g.get(w).clone())));
                t.check_eq(lhs, rhs, || format!("m = {m:?}"));
            }
        }
    }));

    results.push(run_law(exec, config, 4, "strength_naturality_left", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let ys_elems: Vec<Elem> = y.to_vec();
        let cap = s.arrow_cap;
        let fs = tables(x, &ys_elems, mono, cap, s.rng());
        let xv = sorted_values(inst, x, s);
        let yv = sorted_values(inst, y, s);
        for f in &fs {
            for a in &xv {
                for b in &yv {
                    let lhs = fmap(inst, a, |v| f.get(v).clone()).and_then(|fa| inst.strength(&fa, b));
                    let rhs = inst
                        .strength(a, b)
                        .and_then(|ab| fmap(inst, &ab, |(u, v)| (f.get(u).clone(), v.clone())));
                    t.check_eq(lhs, rhs, || format!("a = {a:?}, b = {b:?}"));
                }
            }
        }
    }));

    results.push(run_law(exec, config, 5, "strength_naturality_right", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let xs_elems: Vec<Elem> = x.to_vec();
        let cap = s.arrow_cap;
        let gs = tables(y, &xs_elems, mono, cap, s.rng());
        let xv = sorted_values(inst, x, s);
        let yv = sorted_values(inst, y, s);
        for g in &gs {
            for a in &xv {
                for b in &yv {
                    let lhs = fmap(inst, b, |v| g.get(v).clone()).and_then(|gb| inst.strength(a, &gb));
                    let rhs = inst
                        .strength(a, b)
                        .and_then(|ab| fmap(inst, &ab, |(u, v)| (u.clone(), g.get(v).clone())));
                    t.check_eq(lhs, rhs, || format!("a = {a:?}, b = {b:?}"));
                }
            }
        }
    }));

    results.push(run_law(exec, config, 6, "unit_monoidal", nc * nc, |k, _s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        for a in x.iter() {
            for b in y.iter() {
                let lhs = inst.strength(&inst.unit(a.clone()), &inst.unit(b.clone()));
                t.check_eq(lhs, Ok(inst.unit((a.clone(), b.clone()))), || format!("({a:?}, {b:?})"));
            }
        }
    }));

    results.push(run_law(exec, config, 7, "join_monoidal", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let xv = sorted_values(inst, x, s);
        let yv = sorted_values(inst, y, s);
        let inner_cap = (s.value_cap / 4).max(4);
        let xx = sorted_values(inst, &xv, s);
        let xx = s.limit(xx, inner_cap);
        let yy = sorted_values(inst, &yv, s);
        let yy = s.limit(yy, inner_cap);
        for big_a in &xx {
            for big_b in &yy {
                let lhs = inst.bind(big_a, &|m| Ok(m.clone())).and_then(|ja| {
                    let jb = inst.bind(big_b, &|m| Ok(m.clone()))?;
                    inst.strength(&ja, &jb)
                });
                let rhs = inst
                    .strength(big_a, big_b)
                    .and_then(|ab| inst.bind(&ab, &|(u, v)| inst.strength(u, v)));
                t.check_eq(lhs, rhs, || format!("A = {big_a:?}, B = {big_b:?}"));
            }
        }
    }));

    results.push(run_law(exec, config, 8, "strength_symmetry", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let xv = sorted_values(inst, x, s);
        let yv = sorted_values(inst, y, s);
        for a in &xv {
            for b in &yv {
                let lhs = inst
                    .strength(a, b)
                    .and_then(|ab| fmap(inst, &ab, |(u, v)| (v.clone(), u.clone())));
                t.check_eq(lhs, inst.strength(b, a), || format!("a = {a:?}, b = {b:?}"));
            }
        }
    }));

    results.push(run_law(exec, config, 9, "strength_associativity", nc * nc, |k, s, t| {
        let (x, y) = (&cs[k / nc], &cs[k % nc]);
        let xv = sorted_values(inst, x, s);
        let yv = sorted_values(inst, y, s);
        let xv = s.limit(xv, 8);
        let yv = s.limit(yv, 8);
        for a in &xv {
            for b in &yv {
                for c in &xv {
                    let lhs = inst
                        .strength(a, b)
                        .and_then(|ab| inst.strength(&ab, c))
                        .and_then(|abc| {
                            fmap(inst, &abc, |((u, v), w)| (u.clone(), (v.clone(), w.clone())))
                        });
                    let rhs = inst.strength(b, c).and_then(|bc| inst.strength(a, &bc));
                    t.check_eq(lhs, rhs, || format!("a = {a:?}, b = {b:?}, c = {c:?}"));
                }
            }
        }
    }));

    results.push(run_law(exec, config, 10, "strength_unitality", nc, |k, s, t| {
        for a in sorted_values(inst, &cs[k], s) {
            let left = inst
                .strength(&inst.unit(()), &a)
                .and_then(|ua| fmap(inst, &ua, |(_, v)| v.clone()));
            t.check_eq(left, Ok(a.clone()), || format!("left, a = {a:?}"));
            let right = inst
                .strength(&a, &inst.unit(()))
                .and_then(|au| fmap(inst, &au, |(v, _)| v.clone()));
            t.check_eq(right, Ok(a.clone()), || format!("right, a = {a:?}"));
        }
    }));

    results.push(run_law(exec, config, 11, "affine", 1, |_, _s, t| {
        let vals = inst.unit_values();
        t.check(vals.len() == 1, || {
            format!("M(1) has {} inhabitants: {vals:?}", vals.len())
        });
    }));

    results.push(run_law(exec, config, 12, "delete_naturality", nc, |k, s, t| {
        for m in sorted_values(inst, &cs[k], s) {
            let lhs = inst.bind(&m, &|_| Ok(inst.unit(())));
            t.check_eq(lhs, Ok(inst.unit(())), || format!("m = {m:?}"));
        }
    }));

    Ok(LawReport {
        instance: inst.name(),
        seed: config.seed,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> LawConfig {
        LawConfig {
            max_carrier: 2,
            ..LawConfig::default()
        }
    }

    #[test]
    fn identity_passes_everything() {
        let r = check_monad_laws(&MonadKind::Identity, &small()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn mutant_fails_delete_naturality_with_empty_witness() {
        let r = check_monad_laws(&FullPowerset, &small()).unwrap();
        let del = r.get("delete_naturality").unwrap();
        assert!(del.witness.as_deref().unwrap().contains("{}"), "{del:?}");
        assert!(!r.get("affine").unwrap().passed());
        assert!(r.get("bind_associativity").unwrap().passed());
    }

    #[test]
    fn carrier_cap() {
        let cfg = LawConfig {
            max_carrier: 5,
            ..LawConfig::default()
        };
        assert!(matches!(
            check_monad_laws(&MonadKind::Dist, &cfg),
            Err(Error::CarrierTooLarge { .. })
        ));
    }

    #[test]
    fn weight_grid_sizes() {
        // d=1: 3, d=2: 6, d=3: 10, overlaps: the 3 point masses twice
        assert_eq!(weight_grid(3).len(), 3 + 6 + 10 - 3 - 3);
    }

    #[test]
    fn monotone_tables_are_monotone() {
        let c = Arc::new(Elem::all(&Arc::new(FinitePoset::chain(3))));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ts = tables(&c, &c.to_vec(), true, 100, &mut rng);
        // monotone self-maps of a 3-chain: C(5,3) = 10
        assert_eq!(ts.len(), 10);
    }
}
