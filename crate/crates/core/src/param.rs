//! Parametrized uncertain design problems: 1-cells `U → M(DP(F, R))`,
//! reparametrization 2-cells `U′ → M(U)`, and their compositions.
//!
//! Parameter spaces are flat lists of factor posets with one-element
//! factors dropped, so associators and unitors on parameter spaces are
//! identities and composites compare by plain equality. The only genuine
//! 2-cells left are the tensorator (a block permutation of factors) and the
//! swap witnessing naturality of the symmetry.

use std::fmt;
use std::sync::Arc;

use crate::dp::{self, DesignProblem};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::monads::{MonadKind, Uncertain};
use crate::poset::{Elem, FinitePoset, PosetRef};

/// One coordinate per factor of a [`ParamSpace`].
pub type ParamTuple = Vec<Elem>;

/// A product of finite posets, kept as a flat factor list without
/// one-element factors. The empty list is the one-point space.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamSpace {
    factors: Vec<PosetRef>,
}

impl fmt::Debug for ParamSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.factors).finish()
    }
}

impl ParamSpace {
    pub fn new(factors: impl IntoIterator<Item = PosetRef>) -> Self {
        ParamSpace {
            factors: factors.into_iter().collect(),
        }
        .drop_units()
    }

    pub fn unit() -> Self {
        ParamSpace { factors: vec![] }
    }

    /// Removes one-element factors; they contribute nothing to the carrier.
    pub fn drop_units(mut self) -> Self {
        self.factors.retain(|p| p.len() != 1);
        self
    }

    pub fn factors(&self) -> &[PosetRef] {
        &self.factors
    }

    pub fn concat(&self, other: &ParamSpace) -> ParamSpace {
        ParamSpace {
            factors: self.factors.iter().chain(&other.factors).cloned().collect(),
        }
    }

    /// Number of parameter tuples.
    pub fn size(&self) -> usize {
        self.factors.iter().map(|p| p.len()).product()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// The tuple of rank `k`; the first factor is the most significant.
    pub fn tuple(&self, mut k: usize) -> ParamTuple {
        let mut out = vec![None; self.factors.len()];
        for (i, p) in self.factors.iter().enumerate().rev() {
            out[i] = Some(Elem::new(p.clone(), k % p.len()));
            k /= p.len();
        }
        out.into_iter().map(Option::unwrap).collect()
    }

    pub fn tuples(&self) -> impl Iterator<Item = ParamTuple> + '_ {
        (0..self.size()).map(|k| self.tuple(k))
    }

    pub fn rank(&self, t: &[Elem]) -> Result<usize> {
        if t.len() != self.factors.len() {
            return Err(Error::mismatch(
                format!("a tuple with {} coordinates", self.factors.len()),
                format!("{} coordinates", t.len()),
            ));
        }
        let mut k = 0;
        for (e, p) in t.iter().zip(&self.factors) {
            if **e.poset() != **p {
                return Err(Error::ElementNotInPoset {
                    element: e.label().to_string(),
                    poset: p.to_string(),
                });
            }
            k = k * p.len() + e.index();
        }
        Ok(k)
    }

    /// Looks up a tuple by element labels.
    pub fn tuple_of(&self, labels: &[impl AsRef<str>]) -> Result<ParamTuple> {
        if labels.len() != self.factors.len() {
            return Err(Error::mismatch(
                format!("{} parameter coordinates", self.factors.len()),
                labels.len(),
            ));
        }
        self.factors
            .iter()
            .zip(labels)
            .map(|(p, l)| Ok(Elem::new(p.clone(), p.index_of(l.as_ref())?)))
            .collect()
    }
}

pub(crate) fn tuple_labels(t: &[Elem]) -> Vec<String> {
    t.iter().map(|e| e.label().to_string()).collect()
}

/// A 1-cell `F → R`: each parameter tuple gets an uncertain design problem.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamCell {
    source: PosetRef,
    target: PosetRef,
    space: ParamSpace,
    monad: MonadKind,
    entries: Vec<Uncertain<DesignProblem>>,
}

impl fmt::Debug for ParamCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (t, e) in self.space.tuples().zip(&self.entries) {
            m.entry(&tuple_labels(&t), e);
        }
        m.finish()
    }
}

fn expect_monad(expected: MonadKind, found: MonadKind) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::MonadMismatch {
            expected: expected.name().into(),
            found: found.name().into(),
        })
    }
}

impl ParamCell {
    /// Entries are listed in tuple-rank order. Each must have the cell's
    /// monad and be a design problem `source → target`.
    pub fn new(
        source: PosetRef,
        target: PosetRef,
        space: ParamSpace,
        monad: MonadKind,
        entries: Vec<Uncertain<DesignProblem>>,
    ) -> Result<Self> {
        let space = space.drop_units();
        if entries.len() != space.size() {
            return Err(Error::mismatch(
                format!("{} entries", space.size()),
                format!("{} entries", entries.len()),
            ));
        }
        for e in &entries {
            expect_monad(monad, e.kind())?;
            for d in e.outcomes() {
                if **d.fun() != *source {
                    return Err(Error::mismatch(&source, d.fun()));
                }
                if **d.res() != *target {
                    return Err(Error::mismatch(&target, d.res()));
                }
            }
        }
        Ok(ParamCell {
            source,
            target,
            space,
            monad,
            entries,
        })
    }

    pub fn from_fn(
        source: PosetRef,
        target: PosetRef,
        space: ParamSpace,
        monad: MonadKind,
        f: impl Fn(&[Elem]) -> Result<Uncertain<DesignProblem>>,
    ) -> Result<Self> {
        let space = space.drop_units();
        let entries = space.tuples().map(|t| f(&t)).collect::<Result<_>>()?;
        Self::new(source, target, space, monad, entries)
    }

    pub fn source(&self) -> &PosetRef {
        &self.source
    }

    pub fn target(&self) -> &PosetRef {
        &self.target
    }

    pub fn space(&self) -> &ParamSpace {
        &self.space
    }

    pub fn monad(&self) -> MonadKind {
        self.monad
    }

    pub fn entries(&self) -> &[Uncertain<DesignProblem>] {
        &self.entries
    }

    pub fn entry(&self, t: &[Elem]) -> Result<&Uncertain<DesignProblem>> {
        Ok(&self.entries[self.space.rank(t)?])
    }

    pub fn iter(&self) -> impl Iterator<Item = (ParamTuple, &Uncertain<DesignProblem>)> {
        self.space.tuples().zip(&self.entries)
    }

    /// Applies `f` to every design problem inside every entry.
    pub fn map_dps(
        &self,
        source: PosetRef,
        target: PosetRef,
        exec: Execution,
        f: impl Fn(&DesignProblem) -> Result<DesignProblem> + Sync + Send,
    ) -> Result<ParamCell> {
        let m = self.monad;
        let entries = exec.try_map_range(self.entries.len(), |i| m.try_map(&self.entries[i], &f))?;
        ParamCell::new(source, target, self.space.clone(), m, entries)
    }
}

/// The inclusion `ι`: a plain design problem as a cell over the one-point space.
pub fn cell_lift(monad: MonadKind, d: &DesignProblem) -> ParamCell {
    ParamCell {
        source: d.fun().clone(),
        target: d.res().clone(),
        space: ParamSpace::unit(),
        monad,
        entries: vec![monad.unit(d.clone())],
    }
}

pub fn identity_cell(monad: MonadKind, p: &PosetRef) -> ParamCell {
    cell_lift(monad, &DesignProblem::identity(p))
}

/// Series composition: parameter spaces concatenate, entries combine by
/// `∇` followed by `M(;)`.
pub fn cell_compose(c1: &ParamCell, c2: &ParamCell) -> Result<ParamCell> {
    cell_compose_with(Execution::default(), c1, c2)
}

pub fn cell_compose_with(exec: Execution, c1: &ParamCell, c2: &ParamCell) -> Result<ParamCell> {
    expect_monad(c1.monad, c2.monad)?;
    if *c1.target != *c2.source {
        return Err(Error::mismatch(&c2.source, &c1.target));
    }
    combine(exec, c1, c2, c1.source.clone(), c2.target.clone(), dp::compose)
}

/// Parallel composition on product posets.
pub fn cell_tensor(c1: &ParamCell, c2: &ParamCell) -> Result<ParamCell> {
    cell_tensor_with(Execution::default(), c1, c2)
}

pub fn cell_tensor_with(exec: Execution, c1: &ParamCell, c2: &ParamCell) -> Result<ParamCell> {
    expect_monad(c1.monad, c2.monad)?;
    let source = Arc::new(FinitePoset::product(&c1.source, &c2.source));
    let target = Arc::new(FinitePoset::product(&c1.target, &c2.target));
    combine(exec, c1, c2, source, target, |a, b| Ok(dp::tensor(a, b)))
}

fn combine(
    exec: Execution,
    c1: &ParamCell,
    c2: &ParamCell,
    source: PosetRef,
    target: PosetRef,
    op: impl Fn(&DesignProblem, &DesignProblem) -> Result<DesignProblem> + Sync + Send,
) -> Result<ParamCell> {
    let m = c1.monad;
    let n2 = c2.entries.len();
    let entries = exec.try_map_range(c1.entries.len() * n2, |k| {
        m.lift2(&c1.entries[k / n2], &c2.entries[k % n2], &op)
    })?;
    Ok(ParamCell {
        source,
        target,
        space: c1.space.concat(&c2.space),
        monad: m,
        entries,
    })
}

/// Changes monad along `η`; only exact (identity-monad) cells can move.
pub fn promote(c: &ParamCell, monad: MonadKind) -> Result<ParamCell> {
    let entries = c.entries.iter().map(|e| monad.promote(e)).collect::<Result<_>>()?;
    Ok(ParamCell {
        monad,
        entries,
        ..c.clone()
    })
}

/// A 2-cell `U′ → M(U)` between parameter spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct Reparam {
    from: ParamSpace,
    to: ParamSpace,
    monad: MonadKind,
    table: Vec<Uncertain<ParamTuple>>,
}

impl fmt::Debug for Reparam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (t, e) in self.from.tuples().zip(&self.table) {
            let img: Vec<Vec<String>> = e.outcomes().into_iter().map(|u| tuple_labels(u)).collect();
            m.entry(&tuple_labels(&t), &img);
        }
        m.finish()
    }
}

impl Reparam {
    /// Tabulates `f` over `from`. Outcomes must be tuples of `to`; for the
    /// interval monad the map must be monotone in the componentwise order.
    pub fn new(
        from: ParamSpace,
        to: ParamSpace,
        monad: MonadKind,
        f: impl Fn(&[Elem]) -> Result<Uncertain<ParamTuple>>,
    ) -> Result<Self> {
        let from = from.drop_units();
        let to = to.drop_units();
        let mut table = Vec::with_capacity(from.size());
        for t in from.tuples() {
            let v = f(&t)?;
            expect_monad(monad, v.kind())?;
            for u in v.outcomes() {
                to.rank(u)?;
            }
            table.push(v);
        }
        let r = Reparam {
            from,
            to,
            monad,
            table,
        };
        if monad == MonadKind::Interval {
            r.check_monotone()?;
        }
        Ok(r)
    }

    /// The `η`-lift of a function on tuples.
    pub fn pure(
        from: ParamSpace,
        to: ParamSpace,
        monad: MonadKind,
        f: impl Fn(&[Elem]) -> ParamTuple,
    ) -> Result<Self> {
        Self::new(from, to, monad, |t| Ok(monad.unit(f(t))))
    }

    pub fn identity(monad: MonadKind, space: &ParamSpace) -> Self {
        Self::pure(space.clone(), space.clone(), monad, |t| t.to_vec()).expect("identity reparametrization")
    }

    /// The point of the unit space ↦ `η(t)`.
    pub fn select(monad: MonadKind, space: &ParamSpace, t: ParamTuple) -> Result<Self> {
        Self::pure(ParamSpace::unit(), space.clone(), monad, move |_| t.clone())
    }

    fn check_monotone(&self) -> Result<()> {
        use crate::monads::Ordered;
        let tuples: Vec<ParamTuple> = self.from.tuples().collect();
        for (i, a) in tuples.iter().enumerate() {
            for (j, b) in tuples.iter().enumerate() {
                if a.leq(b) && !self.table[i].leq(&self.table[j]) {
                    return Err(Error::NotMonotone(format!(
                        "reparametrization: {:?} ≤ {:?} but images are not ordered",
                        tuple_labels(a),
                        tuple_labels(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from(&self) -> &ParamSpace {
        &self.from
    }

    pub fn to(&self) -> &ParamSpace {
        &self.to
    }

    pub fn monad(&self) -> MonadKind {
        self.monad
    }

    pub fn apply(&self, t: &[Elem]) -> Result<&Uncertain<ParamTuple>> {
        Ok(&self.table[self.from.rank(t)?])
    }
}

/// `φ ⊛ c`: precomposes the parameter of `c` with `φ`.
pub fn cell_reparam(phi: &Reparam, c: &ParamCell) -> Result<ParamCell> {
    cell_reparam_with(Execution::default(), phi, c)
}

pub fn cell_reparam_with(exec: Execution, phi: &Reparam, c: &ParamCell) -> Result<ParamCell> {
    expect_monad(c.monad, phi.monad)?;
    if phi.to != c.space {
        return Err(Error::mismatch(format!("{:?}", c.space), format!("{:?}", phi.to)));
    }
    let m = c.monad;
    let entries = exec.try_map_range(phi.table.len(), |i| {
        m.bind(&phi.table[i], |u| Ok(c.entries[c.space.rank(u)?].clone()))
    })?;
    Ok(ParamCell {
        space: phi.from.clone(),
        entries,
        ..c.clone()
    })
}

/// Whether `f = φ ⊛ g`.
pub fn check_2cell(phi: &Reparam, f: &ParamCell, g: &ParamCell) -> Result<bool> {
    Ok(check_2cell_witness(phi, f, g)?.is_none())
}

/// The first parameter tuple of `f` where `f` and `φ ⊛ g` differ.
pub fn check_2cell_witness(phi: &Reparam, f: &ParamCell, g: &ParamCell) -> Result<Option<ParamTuple>> {
    if *f.source != *g.source {
        return Err(Error::mismatch(&f.source, &g.source));
    }
    if *f.target != *g.target {
        return Err(Error::mismatch(&f.target, &g.target));
    }
    expect_monad(f.monad, g.monad)?;
    if phi.from != f.space {
        return Err(Error::mismatch(format!("{:?}", f.space), format!("{:?}", phi.from)));
    }
    let h = cell_reparam(phi, g)?;
    Ok(f.iter()
        .zip(&h.entries)
        .find(|((_, a), b)| a != b)
        .map(|((t, _), _)| t))
}

/// Vertical composite: `(φ ; ψ) ⊛ c = φ ⊛ (ψ ⊛ c)`.
pub fn twocell_vcompose(phi: &Reparam, psi: &Reparam) -> Result<Reparam> {
    expect_monad(phi.monad, psi.monad)?;
    if phi.to != psi.from {
        return Err(Error::mismatch(format!("{:?}", psi.from), format!("{:?}", phi.to)));
    }
    let m = phi.monad;
    let table = phi
        .table
        .iter()
        .map(|v| m.bind(v, |u| Ok(psi.table[psi.from.rank(u)?].clone())))
        .collect::<Result<_>>()?;
    Ok(Reparam {
        from: phi.from.clone(),
        to: psi.to.clone(),
        monad: m,
        table,
    })
}

/// Horizontal composite `φ1 ⊗ φ2` on concatenated spaces.
pub fn twocell_hcompose(phi1: &Reparam, phi2: &Reparam) -> Result<Reparam> {
    expect_monad(phi1.monad, phi2.monad)?;
    let m = phi1.monad;
    let n2 = phi2.table.len();
    let table = (0..phi1.table.len() * n2)
        .map(|k| {
            m.lift2(&phi1.table[k / n2], &phi2.table[k % n2], |a, b| {
                Ok(a.iter().chain(b).cloned().collect::<ParamTuple>())
            })
        })
        .collect::<Result<_>>()?;
    Ok(Reparam {
        from: phi1.from.concat(&phi2.from),
        to: phi1.to.concat(&phi2.to),
        monad: m,
        table,
    })
}

/// Permutes blocks of factors: `blocks[i]` factors per block, output in `order`.
fn block_permutation(monad: MonadKind, blocks: &[&ParamSpace], order: &[usize]) -> Result<Reparam> {
    let from = blocks.iter().fold(ParamSpace::unit(), |acc, b| acc.concat(b));
    let to = order.iter().fold(ParamSpace::unit(), |acc, &i| acc.concat(blocks[i]));
    let mut offsets = vec![0];
    for b in blocks {
        offsets.push(offsets.last().unwrap() + b.factors.len());
    }
    Reparam::pure(from, to, monad, |t| {
        order
            .iter()
            .flat_map(|&i| t[offsets[i]..offsets[i + 1]].iter().cloned())
            .collect()
    })
}

/// The tensorator `m`: a 2-cell from
/// `(f1 ⊗ f2) ; (g1 ⊗ g2)` (parameters `[U1, U2, P1, P2]`) to
/// `(f1 ; g1) ⊗ (f2 ; g2)` (parameters `[U1, P1, U2, P2]`).
pub fn tensorator(f1: &ParamCell, f2: &ParamCell, g1: &ParamCell, g2: &ParamCell) -> Result<Reparam> {
    for c in [f2, g1, g2] {
        expect_monad(f1.monad, c.monad)?;
    }
    if *f1.target != *g1.source {
        return Err(Error::mismatch(&g1.source, &f1.target));
    }
    if *f2.target != *g2.source {
        return Err(Error::mismatch(&g2.source, &f2.target));
    }
    block_permutation(f1.monad, &[&f1.space, &f2.space, &g1.space, &g2.space], &[0, 2, 1, 3])
}

/// The braiding `P ⊗ Q → Q ⊗ P` as a cell over the one-point space.
pub fn symmetry_cell(monad: MonadKind, p: &PosetRef, q: &PosetRef) -> ParamCell {
    cell_lift(monad, &dp::braiding(p, q))
}

/// Both sides of symmetry naturality for `f1 : F1 → R1`, `f2 : F2 → R2`,
/// and the swap 2-cell relating them:
/// `s ; (f2 ⊗ f1)` over `[U2, U1]` equals `swap ⊛ ((f1 ⊗ f2) ; s)`.
pub struct SymmetryNaturality {
    pub lhs: ParamCell,
    pub rhs: ParamCell,
    pub swap: Reparam,
}

pub fn symmetry_naturality(f1: &ParamCell, f2: &ParamCell) -> Result<SymmetryNaturality> {
    expect_monad(f1.monad, f2.monad)?;
    let m = f1.monad;
    let lhs = cell_compose(&symmetry_cell(m, &f1.source, &f2.source), &cell_tensor(f2, f1)?)?;
    let rhs = cell_compose(&cell_tensor(f1, f2)?, &symmetry_cell(m, &f1.target, &f2.target))?;
    let swap = block_permutation(m, &[&f2.space, &f1.space], &[1, 0])?;
    Ok(SymmetryNaturality { lhs, rhs, swap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::MonotoneMap;
    use crate::monads::Dist;
    use crate::rational::ratio;

    fn chain(n: usize) -> PosetRef {
        Arc::new(FinitePoset::chain(n))
    }

    fn shift(from: &PosetRef, to: &PosetRef, k: usize) -> DesignProblem {
        let n = to.len();
        DesignProblem::threshold(&MonotoneMap::from_fn(from.clone(), to.clone(), |i| (i + k).min(n - 1)).unwrap())
    }

    #[test]
    fn unit_factors_are_dropped() {
        let s = ParamSpace::new([chain(1), chain(2), Arc::new(FinitePoset::unit()), chain(3)]);
        assert_eq!(s.factors().len(), 2);
        assert_eq!(s.size(), 6);
        let t = s.tuple(4);
        assert_eq!(tuple_labels(&t), ["1", "1"]);
        assert_eq!(s.rank(&t).unwrap(), 4);
    }

    #[test]
    fn interval_composite_is_endpointwise() {
        let c3 = chain(3);
        let u = ParamSpace::new([chain(2)]);
        let m = MonadKind::Interval;
        let iv = |a: usize, b: usize| Uncertain::interval(shift(&c3, &c3, a), shift(&c3, &c3, b)).unwrap();
        // a bigger shift demands more resource, so it is the smaller (worse) DP
        let c1 = ParamCell::new(c3.clone(), c3.clone(), u.clone(), m, vec![iv(2, 1), iv(1, 0)]).unwrap();
        let c2 = ParamCell::new(c3.clone(), c3.clone(), u.clone(), m, vec![iv(1, 1), iv(1, 0)]).unwrap();
        let c = cell_compose(&c1, &c2).unwrap();
        assert_eq!(c.space().size(), 4);
        for (i, (t, e)) in c.iter().enumerate() {
            let (a, b) = (&c1.entries()[i / 2], &c2.entries()[i % 2]);
            let (Uncertain::Interval(a), Uncertain::Interval(b), Uncertain::Interval(e)) = (a, b, e) else {
                panic!()
            };
            assert_eq!(*e.lo(), dp::compose(a.lo(), b.lo()).unwrap(), "{t:?}");
            assert_eq!(*e.hi(), dp::compose(a.hi(), b.hi()).unwrap(), "{t:?}");
        }
    }

    #[test]
    fn reparam_along_point_selector() {
        let c3 = chain(3);
        let u = ParamSpace::new([chain(3)]);
        let m = MonadKind::Powerset;
        let c = ParamCell::from_fn(c3.clone(), c3.clone(), u.clone(), m, |t| {
            Ok(m.unit(shift(&c3, &c3, t[0].index())))
        })
        .unwrap();
        let t = u.tuple(2);
        let phi = Reparam::select(m, &u, t.clone()).unwrap();
        let r = cell_reparam(&phi, &c).unwrap();
        assert!(r.space().is_unit());
        assert_eq!(&r.entries()[0], c.entry(&t).unwrap());
        assert!(check_2cell(&Reparam::identity(m, &u), &c, &c).unwrap());
    }

    #[test]
    fn stochastic_reparam_mixes_entries() {
        let c2 = chain(2);
        let u = ParamSpace::new([chain(2)]);
        let m = MonadKind::Dist;
        let d0 = DesignProblem::identity(&c2);
        let d1 = DesignProblem::all_true(c2.clone(), c2.clone());
        let c = ParamCell::new(
            c2.clone(),
            c2.clone(),
            u.clone(),
            m,
            vec![m.unit(d0.clone()), m.unit(d1.clone())],
        )
        .unwrap();
        let coin = Reparam::new(ParamSpace::unit(), u.clone(), m, |_| {
            Ok(Uncertain::Dist(Dist::uniform(u.tuples()).unwrap()))
        })
        .unwrap();
        let r = cell_reparam(&coin, &c).unwrap();
        let Uncertain::Dist(d) = &r.entries()[0] else { panic!() };
        assert_eq!(d.prob(&d0), ratio(1, 2));
        assert_eq!(d.prob(&d1), ratio(1, 2));
    }

    #[test]
    fn interval_reparams_must_be_monotone() {
        let u = ParamSpace::new([chain(2)]);
        let flip = Reparam::pure(u.clone(), u.clone(), MonadKind::Interval, |t| {
            vec![Elem::new(t[0].poset().clone(), 1 - t[0].index())]
        });
        assert!(matches!(flip, Err(Error::NotMonotone(_))));
        assert!(Reparam::pure(u.clone(), u, MonadKind::Powerset, |t| {
            vec![Elem::new(t[0].poset().clone(), 1 - t[0].index())]
        })
        .is_ok());
    }
}
