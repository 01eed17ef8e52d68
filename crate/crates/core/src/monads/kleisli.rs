use std::collections::BTreeMap;
use std::fmt;

use super::{MonadKind, Ordered, Uncertain, Value};
use crate::error::{Error, Result};

/// A total map `A → M(B)` between finite carriers.
#[derive(Clone, PartialEq, Eq)]
pub struct KleisliArrow<A: Value, B: Value> {
    monad: MonadKind,
    domain: Vec<A>,
    codomain: Vec<B>,
    table: BTreeMap<A, Uncertain<B>>,
}

impl<A: Value, B: Value> fmt::Debug for KleisliArrow<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.table.iter()).finish()
    }
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v.dedup();
    v
}

impl<A: Value, B: Value> KleisliArrow<A, B> {
    /// Tabulates `f`. Every outcome must lie in the codomain; for the interval
    /// monad the arrow must also be monotone.
    pub fn new(
        monad: MonadKind,
        domain: Vec<A>,
        codomain: Vec<B>,
        f: impl Fn(&A) -> Result<Uncertain<B>>,
    ) -> Result<Self> {
        let domain = sorted(domain);
        let codomain = sorted(codomain);
        let mut table = BTreeMap::new();
        for a in &domain {
            let v = f(a)?;
            if v.kind() != monad {
                return Err(Error::MonadMismatch {
                    expected: monad.name().into(),
                    found: v.kind().name().into(),
                });
            }
            if let Some(b) = v.outcomes().into_iter().find(|b| codomain.binary_search(b).is_err()) {
                return Err(Error::mismatch("an element of the codomain", format!("{b:?}")));
            }
            table.insert(a.clone(), v);
        }
        let arrow = KleisliArrow {
            monad,
            domain,
            codomain,
            table,
        };
        if monad == MonadKind::Interval {
            arrow.check_monotone()?;
        }
        Ok(arrow)
    }

    fn check_monotone(&self) -> Result<()> {
        for a in &self.domain {
            for b in &self.domain {
                if a.leq(b) && !self.table[a].leq(&self.table[b]) {
                    return Err(Error::NotMonotone(format!(
                        "{a:?} ≤ {b:?} but {:?} ⋠ {:?}",
                        self.table[a], self.table[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `a ↦ η(f(a))`
    pub fn lift_pure(monad: MonadKind, domain: Vec<A>, codomain: Vec<B>, f: impl Fn(&A) -> B) -> Result<Self> {
        Self::new(monad, domain, codomain, |a| Ok(monad.unit(f(a))))
    }

    pub fn monad(&self) -> MonadKind {
        self.monad
    }

    pub fn domain(&self) -> &[A] {
        &self.domain
    }

    pub fn codomain(&self) -> &[B] {
        &self.codomain
    }

    pub fn apply(&self, a: &A) -> Result<&Uncertain<B>> {
        self.table
            .get(a)
            .ok_or_else(|| Error::mismatch("an element of the domain", format!("{a:?}")))
    }

    /// Diagrammatic composite `self ; g`.
    pub fn then<C: Value>(&self, g: &KleisliArrow<B, C>) -> Result<KleisliArrow<A, C>> {
        if self.monad != g.monad {
            return Err(Error::MonadMismatch {
                expected: self.monad.name().into(),
                found: g.monad.name().into(),
            });
        }
        if self.codomain != g.domain {
            return Err(Error::mismatch(
                format!("{:?}", g.domain),
                format!("{:?}", self.codomain),
            ));
        }
        let monad = self.monad;
        let table = self
            .table
            .iter()
            .map(|(a, m)| Ok((a.clone(), monad.bind(m, |b| g.apply(b).cloned())?)))
            .collect::<Result<_>>()?;
        Ok(KleisliArrow {
            monad,
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            table,
        })
    }

    /// `f ⊗ g = (f × g) ; ∇`
    pub fn tensor<C: Value, D: Value>(&self, g: &KleisliArrow<C, D>) -> Result<KleisliArrow<(A, C), (B, D)>> {
        if self.monad != g.monad {
            return Err(Error::MonadMismatch {
                expected: self.monad.name().into(),
                found: g.monad.name().into(),
            });
        }
        let domain = pairs(&self.domain, &g.domain);
        let codomain = pairs(&self.codomain, &g.codomain);
        let monad = self.monad;
        let table = domain
            .iter()
            .map(|(a, c)| Ok(((a.clone(), c.clone()), monad.strength(&self.table[a], &g.table[c])?)))
            .collect::<Result<_>>()?;
        Ok(KleisliArrow {
            monad,
            domain,
            codomain,
            table,
        })
    }

    /// Whether `f ; copy = copy ; (f ⊗ f)`.
    pub fn is_deterministic(&self) -> Result<bool> {
        let lhs = self.then(&copy(self.monad, self.codomain.clone())?)?;
        let rhs = copy(self.monad, self.domain.clone())?.then(&self.tensor(self)?)?;
        Ok(lhs == rhs)
    }
}

pub(crate) fn pairs<A: Clone, B: Clone>(xs: &[A], ys: &[B]) -> Vec<(A, B)> {
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
        .collect()
}

impl<A: Value> KleisliArrow<A, A> {
    pub fn identity(monad: MonadKind, carrier: Vec<A>) -> Result<Self> {
        Self::lift_pure(monad, carrier.clone(), carrier, |a| a.clone())
    }
}

/// `η ∘ (a ↦ (a, a))`
pub fn copy<A: Value>(monad: MonadKind, carrier: Vec<A>) -> Result<KleisliArrow<A, (A, A)>> {
    let codomain = pairs(&carrier, &carrier);
    KleisliArrow::lift_pure(monad, carrier, codomain, |a| (a.clone(), a.clone()))
}

/// `η ∘ (a ↦ ())`
pub fn delete<A: Value>(monad: MonadKind, carrier: Vec<A>) -> Result<KleisliArrow<A, ()>> {
    KleisliArrow::lift_pure(monad, carrier, vec![()], |_| ())
}

impl MonadKind {
    pub fn copy<A: Value>(self, carrier: Vec<A>) -> Result<KleisliArrow<A, (A, A)>> {
        copy(self, carrier)
    }

    pub fn delete<A: Value>(self, carrier: Vec<A>) -> Result<KleisliArrow<A, ()>> {
        delete(self, carrier)
    }
}
