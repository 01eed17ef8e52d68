//! The category of design problems: monotone feasibility relations between
//! finite posets, with series/parallel composition, feedback and the
//! pointwise order on hom-sets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{is_monotone, FinitePoset, PosetRef};

/// A monotone map between finite posets, as a table of target indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonotoneMap {
    from: PosetRef,
    to: PosetRef,
    table: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.table
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (self.from.label(i), self.to.label(j))),
            )
            .finish()
    }
}

impl MonotoneMap {
    pub fn new(from: PosetRef, to: PosetRef, table: Vec<usize>) -> Result<Self> {
        if table.len() != from.len() || table.iter().any(|&t| t >= to.len()) {
            return Err(Error::InvalidInput(format!(
                "map table must send each of the {} elements of {from} into {to}",
                from.len()
            )));
        }
        if !is_monotone(&from, &to, &table) {
            let (a, b) = (0..from.len())
                .flat_map(|a| (0..from.len()).map(move |b| (a, b)))
                .find(|&(a, b)| from.leq(a, b) && !to.leq(table[a], table[b]))
                .expect("a violating pair exists");
            return Err(Error::NotMonotone(format!(
                "{} ≤ {} but {} ≰ {}",
                from.label(a),
                from.label(b),
                to.label(table[a]),
                to.label(table[b])
            )));
        }
        Ok(MonotoneMap { from, to, table })
    }

    pub fn from_fn(from: PosetRef, to: PosetRef, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = (0..from.len()).map(f).collect();
        Self::new(from, to, table)
    }

    pub fn identity(p: &PosetRef) -> Self {
        MonotoneMap {
            from: p.clone(),
            to: p.clone(),
            table: (0..p.len()).collect(),
        }
    }

    /// `(a, b) ↦ (b, a)`
    pub fn swap(p: &PosetRef, q: &PosetRef) -> Self {
        let pq = Arc::new(FinitePoset::product(p, q));
        let qp = Arc::new(FinitePoset::product(q, p));
        let (np, nq) = (p.len(), q.len());
        let table = (0..np * nq).map(|x| (x % nq) * np + x / nq).collect();
        MonotoneMap {
            from: pq,
            to: qp,
            table,
        }
    }

    /// `((a, b), c) ↦ (a, (b, c))`
    pub fn associator(a: &PosetRef, b: &PosetRef, c: &PosetRef) -> Self {
        let ab = Arc::new(FinitePoset::product(a, b));
        let bc = Arc::new(FinitePoset::product(b, c));
        let from = Arc::new(FinitePoset::product(&ab, c));
        let to = Arc::new(FinitePoset::product(a, &bc));
        let table = (0..from.len()).collect(); // row-major layouts coincide
        MonotoneMap { from, to, table }
    }

    /// `(a, (b, c)) ↦ ((a, b), c)`
    pub fn associator_inverse(a: &PosetRef, b: &PosetRef, c: &PosetRef) -> Self {
        let fwd = Self::associator(a, b, c);
        MonotoneMap {
            from: fwd.to,
            to: fwd.from,
            table: fwd.table,
        }
    }

    /// `(*, p) ↦ p`
    pub fn left_unitor(p: &PosetRef) -> Self {
        let unit = Arc::new(FinitePoset::unit());
        MonotoneMap {
            from: Arc::new(FinitePoset::product(&unit, p)),
            to: p.clone(),
            table: (0..p.len()).collect(),
        }
    }

    /// `(p, *) ↦ p`
    pub fn right_unitor(p: &PosetRef) -> Self {
        let unit = Arc::new(FinitePoset::unit());
        MonotoneMap {
            from: Arc::new(FinitePoset::product(p, &unit)),
            to: p.clone(),
            table: (0..p.len()).collect(),
        }
    }

    /// The inverse of a bijective map.
    pub fn inverse(&self) -> Result<Self> {
        let mut inv = vec![usize::MAX; self.to.len()];
        for (i, &j) in self.table.iter().enumerate() {
            inv[j] = i;
        }
        if self.from.len() != self.to.len() || inv.contains(&usize::MAX) {
            return Err(Error::InvalidInput("map is not a bijection".into()));
        }
        Self::new(self.to.clone(), self.from.clone(), inv)
    }

    /// Diagrammatic composite `self ; next`.
    pub fn then(&self, next: &MonotoneMap) -> Result<Self> {
        if *self.to != *next.from {
            return Err(Error::mismatch(&next.from, &self.to));
        }
        Ok(MonotoneMap {
            from: self.from.clone(),
            to: next.to.clone(),
            table: self.table.iter().map(|&i| next.table[i]).collect(),
        })
    }

    /// `f × g` on product posets.
    pub fn product(f: &MonotoneMap, g: &MonotoneMap) -> Self {
        let from = Arc::new(FinitePoset::product(&f.from, &g.from));
        let to = Arc::new(FinitePoset::product(&f.to, &g.to));
        let (n2, m2) = (g.from.len(), g.to.len());
        let table = (0..from.len())
            .map(|x| f.table[x / n2] * m2 + g.table[x % n2])
            .collect();
        MonotoneMap { from, to, table }
    }

    pub fn from(&self) -> &PosetRef {
        &self.from
    }

    pub fn to(&self) -> &PosetRef {
        &self.to
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

/// A feasibility relation `F^op × R → Bool`: `get(f, r)` says whether
/// resource `r` suffices for functionality `f`. Monotone: lowering `f` or
/// raising `r` never breaks feasibility.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DesignProblem {
    fun: PosetRef,
    res: PosetRef,
    table: Vec<bool>,
}

impl fmt::Debug for DesignProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .feasible_pairs()
            .map(|(a, b)| format!("{}→{}", self.fun.label(a), self.res.label(b)))
            .collect();
        write!(f, "DP[{}]", pairs.join(" "))
    }
}

impl DesignProblem {
    /// Tabulates `feasible` and validates monotonicity.
    pub fn from_fn(
        fun: PosetRef,
        res: PosetRef,
        feasible: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let nr = res.len();
        let table = (0..fun.len() * nr).map(|k| feasible(k / nr, k % nr)).collect();
        let dp = DesignProblem { fun, res, table };
        dp.check_monotone()?;
        Ok(dp)
    }

    /// Skips the monotonicity check; callers guarantee it by construction.
    fn from_fn_trusted(
        fun: PosetRef,
        res: PosetRef,
        feasible: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let nr = res.len();
        let table = (0..fun.len() * nr).map(|k| feasible(k / nr, k % nr)).collect();
        let dp = DesignProblem { fun, res, table };
        debug_assert!(dp.check_monotone().is_ok());
        dp
    }

    pub fn from_pairs(fun: PosetRef, res: PosetRef, pairs: &[(usize, usize)]) -> Result<Self> {
        let nr = res.len();
        let mut table = vec![false; fun.len() * nr];
        for &(f, r) in pairs {
            if f >= fun.len() || r >= nr {
                return Err(Error::InvalidInput("feasible pair out of range".into()));
            }
            table[f * nr + r] = true;
        }
        let dp = DesignProblem { fun, res, table };
        dp.check_monotone()?;
        Ok(dp)
    }

    /// `d(f, r) = (φ(f) ≤ r)`
    pub fn threshold(phi: &MonotoneMap) -> Self {
        let to = phi.to.clone();
        Self::from_fn_trusted(phi.from.clone(), phi.to.clone(), |f, r| {
            to.leq(phi.table[f], r)
        })
    }

    /// Alias of [`DesignProblem::threshold`] read as the companion of a monotone map.
    pub fn lift(g: &MonotoneMap) -> Self {
        Self::threshold(g)
    }

    pub fn identity(p: &PosetRef) -> Self {
        Self::threshold(&MonotoneMap::identity(p))
    }

    pub fn all_false(fun: PosetRef, res: PosetRef) -> Self {
        Self::from_fn_trusted(fun, res, |_, _| false)
    }

    pub fn all_true(fun: PosetRef, res: PosetRef) -> Self {
        Self::from_fn_trusted(fun, res, |_, _| true)
    }

    fn check_monotone(&self) -> Result<()> {
        let (nf, nr) = (self.fun.len(), self.res.len());
        for f in 0..nf {
            for r in 0..nr {
                if !self.get(f, r) {
                    continue;
                }
                for f2 in (0..nf).filter(|&f2| self.fun.leq(f2, f)) {
                    for r2 in (0..nr).filter(|&r2| self.res.leq(r, r2)) {
                        if !self.get(f2, r2) {
                            return Err(Error::NotMonotone(format!(
                                "feasible at (f={}, r={}) but infeasible at (f'={}, r'={}) \
                                 with f' ≤ f and r ≤ r'",
                                self.fun.label(f),
                                self.res.label(r),
                                self.fun.label(f2),
                                self.res.label(r2)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn fun(&self) -> &PosetRef {
        &self.fun
    }

    pub fn res(&self) -> &PosetRef {
        &self.res
    }

    #[inline]
    pub fn get(&self, f: usize, r: usize) -> bool {
        self.table[f * self.res.len() + r]
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn feasible_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nr = self.res.len();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k / nr, k % nr))
    }

    /// Resources feasible for `f`.
    pub fn feasible_resources(&self, f: usize) -> Vec<usize> {
        (0..self.res.len()).filter(|&r| self.get(f, r)).collect()
    }

    /// Same relation with the fun/res posets replaced by structurally
    /// different posets of the same sizes (e.g. `P × 1` by `P`).
    pub fn retyped(&self, fun: PosetRef, res: PosetRef) -> Result<Self> {
        if fun.len() != self.fun.len() || res.len() != self.res.len() {
            return Err(Error::mismatch(
                format!("{}×{} elements", self.fun.len(), self.res.len()),
                format!("{}×{} elements", fun.len(), res.len()),
            ));
        }
        let dp = DesignProblem {
            fun,
            res,
            table: self.table.clone(),
        };
        dp.check_monotone()?;
        Ok(dp)
    }
}

/// Series composition: `(d1 ; d2)(f, q) = ⋁_r d1(f, r) ∧ d2(r, q)`.
pub fn compose(d1: &DesignProblem, d2: &DesignProblem) -> Result<DesignProblem> {
    if *d1.res != *d2.fun {
        return Err(Error::mismatch(&d2.fun, &d1.res));
    }
    let mid = d1.res.len();
    Ok(DesignProblem::from_fn_trusted(
        d1.fun.clone(),
        d2.res.clone(),
        |f, q| (0..mid).any(|r| d1.get(f, r) && d2.get(r, q)),
    ))
}

/// Parallel composition on product posets.
pub fn tensor(d1: &DesignProblem, d2: &DesignProblem) -> DesignProblem {
    let fun = Arc::new(FinitePoset::product(&d1.fun, &d2.fun));
    let res = Arc::new(FinitePoset::product(&d1.res, &d2.res));
    let (nf2, nr2) = (d2.fun.len(), d2.res.len());
    DesignProblem::from_fn_trusted(fun, res, |f, r| {
        d1.get(f / nf2, r / nr2) && d2.get(f % nf2, r % nr2)
    })
}

/// Closes the feedback wire `p`: `Tr(Φ)(f, r) = ⋁_x Φ((f, x), (r, x))`.
pub fn trace(phi: &DesignProblem, p: &FinitePoset) -> Result<DesignProblem> {
    let (f, pf) = phi
        .fun
        .factors()
        .ok_or_else(|| Error::LoopFactorMissing {
            factor: p.to_string(),
            object: phi.fun.to_string(),
        })?;
    let (r, pr) = phi.res.factors().ok_or_else(|| Error::LoopFactorMissing {
        factor: p.to_string(),
        object: phi.res.to_string(),
    })?;
    if **pf != *p {
        return Err(Error::LoopFactorMissing {
            factor: p.to_string(),
            object: phi.fun.to_string(),
        });
    }
    if **pr != *p {
        return Err(Error::LoopFactorMissing {
            factor: p.to_string(),
            object: phi.res.to_string(),
        });
    }
    let n = p.len();
    Ok(DesignProblem::from_fn_trusted(f.clone(), r.clone(), |a, b| {
        (0..n).any(|x| phi.get(a * n + x, b * n + x))
    }))
}

/// `I → P ⊗ P^op`, feasible at `(p, q)` iff `q ≤ p`.
pub fn dual_unit(p: &PosetRef) -> DesignProblem {
    let unit = Arc::new(FinitePoset::unit());
    let op = Arc::new(p.opposite());
    let res = Arc::new(FinitePoset::product(p, &op));
    let n = p.len();
    DesignProblem::from_fn_trusted(unit, res, |_, x| p.leq(x % n, x / n))
}

/// `P^op ⊗ P → I`, feasible at `(q, p)` iff `p ≤ q`.
pub fn dual_counit(p: &PosetRef) -> DesignProblem {
    let unit = Arc::new(FinitePoset::unit());
    let op = Arc::new(p.opposite());
    let fun = Arc::new(FinitePoset::product(&op, p));
    let n = p.len();
    DesignProblem::from_fn_trusted(fun, unit, |x, _| p.leq(x % n, x / n))
}

/// Pointwise order on a hom-set: `d1 ≤ d2` iff every feasible pair of `d1` is feasible in `d2`.
pub fn leq(d1: &DesignProblem, d2: &DesignProblem) -> Result<bool> {
    if *d1.fun != *d2.fun {
        return Err(Error::mismatch(&d1.fun, &d2.fun));
    }
    if *d1.res != *d2.res {
        return Err(Error::mismatch(&d1.res, &d2.res));
    }
    Ok(d1.table.iter().zip(&d2.table).all(|(&a, &b)| !a || b))
}

/// The braiding `P ⊗ Q → Q ⊗ P` as a design problem.
pub fn braiding(p: &PosetRef, q: &PosetRef) -> DesignProblem {
    DesignProblem::lift(&MonotoneMap::swap(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: FinitePoset) -> PosetRef {
        Arc::new(p)
    }

    #[test]
    fn identity_on_booleans() {
        let b = r(FinitePoset::booleans());
        let id = DesignProblem::identity(&b);
        let pairs: Vec<_> = id.feasible_pairs().collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn identity_on_antichain_is_diagonal() {
        let a = r(FinitePoset::antichain(["x", "y", "z"]).unwrap());
        let id = DesignProblem::identity(&a);
        for f in 0..3 {
            for q in 0..3 {
                assert_eq!(id.get(f, q), f == q);
            }
        }
    }

    #[test]
    fn non_monotone_table_names_the_quadruple() {
        let c2 = r(FinitePoset::chain(2));
        // feasible at (0,1) but not at (0, 1) after raising nothing: use (1,0) feasible, (1,1) not
        let err = DesignProblem::from_pairs(c2.clone(), c2.clone(), &[(1, 0)]).unwrap_err();
        match err {
            Error::NotMonotone(msg) => assert!(msg.contains("f=1") && msg.contains("r=0")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compose_mismatch() {
        let c2 = r(FinitePoset::chain(2));
        let c3 = r(FinitePoset::chain(3));
        let d = DesignProblem::identity(&c2);
        let e = DesignProblem::identity(&c3);
        assert!(matches!(compose(&d, &e), Err(Error::ObjectMismatch { .. })));
    }

    #[test]
    fn all_false_composes_to_all_false() {
        let c2 = r(FinitePoset::chain(2));
        let c3 = r(FinitePoset::chain(3));
        let z = DesignProblem::all_false(c2.clone(), c3.clone());
        let d = DesignProblem::all_true(c3.clone(), c2.clone());
        let out = compose(&z, &d).unwrap();
        assert_eq!(out, DesignProblem::all_false(c2.clone(), c2));
    }

    #[test]
    fn saturating_sum_lift() {
        let c3 = r(FinitePoset::chain(3));
        let c5 = r(FinitePoset::chain(5));
        let c33 = r(FinitePoset::product(&c3, &c3));
        let sum = MonotoneMap::from_fn(c33.clone(), c5.clone(), |x| (x / 3 + x % 3).min(4)).unwrap();
        let d = DesignProblem::lift(&sum);
        let at = |a: &str, b: &str| c33.index_of(&format!("({a},{b})")).unwrap();
        assert!(d.get(at("1", "1"), 2));
        assert!(!d.get(at("1", "2"), 2));
    }

    #[test]
    fn lift_identity_is_identity() {
        let p = r(FinitePoset::from_pairs(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "c")],
        )
        .unwrap());
        assert_eq!(DesignProblem::lift(&MonotoneMap::identity(&p)), DesignProblem::identity(&p));
    }

    #[test]
    fn trace_cases() {
        let f = r(FinitePoset::chain(2));
        let p = r(FinitePoset::chain(3));
        let fp = r(FinitePoset::product(&f, &p));
        let traced = trace(&DesignProblem::identity(&fp), &p).unwrap();
        assert_eq!(traced, DesignProblem::identity(&f));

        let empty = r(FinitePoset::antichain(Vec::<String>::new()).unwrap());
        let fe = r(FinitePoset::product(&f, &empty));
        let traced = trace(&DesignProblem::identity(&fe), &empty).unwrap();
        assert_eq!(traced, DesignProblem::all_false(f.clone(), f.clone()));

        let plain = DesignProblem::identity(&f);
        assert!(matches!(trace(&plain, &p), Err(Error::LoopFactorMissing { .. })));
    }

    #[test]
    fn dual_maps_on_the_point() {
        let one = r(FinitePoset::unit());
        let u = dual_unit(&one);
        let c = dual_counit(&one);
        assert_eq!(u.table(), &[true]);
        assert_eq!(c.table(), &[true]);
    }

    #[test]
    fn leq_bounds() {
        let c2 = r(FinitePoset::chain(2));
        let d = DesignProblem::identity(&c2);
        let lo = DesignProblem::all_false(c2.clone(), c2.clone());
        let hi = DesignProblem::all_true(c2.clone(), c2.clone());
        assert!(leq(&lo, &d).unwrap() && leq(&d, &hi).unwrap());
        assert!(!leq(&hi, &d).unwrap());
    }

    #[test]
    fn map_helpers() {
        let a = r(FinitePoset::chain(2));
        let b = r(FinitePoset::antichain(["x", "y"]).unwrap());
        let s = MonotoneMap::swap(&a, &b);
        assert_eq!(s.then(&MonotoneMap::swap(&b, &a)).unwrap(), MonotoneMap::identity(s.from()));
        assert_eq!(s.inverse().unwrap(), MonotoneMap::swap(&b, &a));
        let c = r(FinitePoset::chain(3));
        let assoc = MonotoneMap::associator(&a, &b, &c);
        assert_eq!(
            assoc.then(&MonotoneMap::associator_inverse(&a, &b, &c)).unwrap(),
            MonotoneMap::identity(assoc.from())
        );
    }
}
