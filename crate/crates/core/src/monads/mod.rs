//! Uncertainty monads: exactly-one, nonempty subsets, endpoint intervals and
//! exact finite distributions, with unit, bind, join and the monoidal
//! strength `∇ : M(X) × M(Y) → M(X × Y)`.
//!
//! The monad is selected at runtime by [`MonadKind`]; values carry their own
//! shape in [`Uncertain`], and mixing shapes is a [`Error::MonadMismatch`].

mod kleisli;
pub mod laws;
pub mod markov;
mod twarr;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{Signed, Zero};

use crate::dp::{self, DesignProblem};
use crate::error::{Error, Result};
use crate::poset::{Antichain, Elem};
use crate::rational::{one, Rational};

pub use kleisli::KleisliArrow;
pub use twarr::{twarr_counterexample, twarr_leq, twarr_unit_witness, TwArrWitness};

/// A partial order on values, used for interval endpoints and for checking
/// that Kleisli arrows of the interval monad are monotone.
pub trait Ordered {
    fn leq(&self, other: &Self) -> bool;
}

/// Anything that can sit inside an [`Uncertain`].
pub trait Value: Clone + Ord + fmt::Debug + Send + Sync + Ordered {}

impl<T: Clone + Ord + fmt::Debug + Send + Sync + Ordered> Value for T {}

impl Ordered for () {
    fn leq(&self, _: &()) -> bool {
        true
    }
}

impl<A: Ordered, B: Ordered> Ordered for (A, B) {
    fn leq(&self, other: &Self) -> bool {
        self.0.leq(&other.0) && self.1.leq(&other.1)
    }
}

impl<T: Ordered> Ordered for Vec<T> {
    fn leq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().zip(other).all(|(a, b)| a.leq(b))
    }
}

impl Ordered for Elem {
    fn leq(&self, other: &Self) -> bool {
        Elem::leq(self, other)
    }
}

impl Ordered for DesignProblem {
    fn leq(&self, other: &Self) -> bool {
        dp::leq(self, other).unwrap_or(false)
    }
}

impl Ordered for Antichain {
    fn leq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Ordered for String {
    fn leq(&self, other: &Self) -> bool {
        self == other
    }
}

impl<T: Ord> Ordered for BTreeSet<T> {
    fn leq(&self, other: &Self) -> bool {
        self == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonadKind {
    Identity,
    Powerset,
    Interval,
    Dist,
}

impl MonadKind {
    pub const ALL: [MonadKind; 4] = [
        MonadKind::Identity,
        MonadKind::Powerset,
        MonadKind::Interval,
        MonadKind::Dist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonadKind::Identity => "identity",
            MonadKind::Powerset => "powerset",
            MonadKind::Interval => "interval",
            MonadKind::Dist => "dist",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        MonadKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown monad `{s}`")))
    }
}

impl fmt::Display for MonadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `[lo, hi]` with `lo ≤ hi`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Value> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !lo.leq(&hi) {
            return Err(Error::IntervalOrder {
                lo: format!("{lo:?}"),
                hi: format!("{hi:?}"),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: T) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }
}

impl<T: fmt::Debug> fmt::Debug for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

/// A finitely supported probability distribution with exact weights.
/// Zero weights are pruned; the support is kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dist<T: Ord> {
    weights: BTreeMap<T, Rational>,
}

impl<T: Ord + fmt::Debug> fmt::Debug for Dist<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.weights.iter().map(|(k, w)| (k, w.to_string())))
            .finish()
    }
}

impl<T: Ord + Clone> Dist<T> {
    /// Accumulates duplicate outcomes; rejects negative weights and totals other than 1.
    pub fn new(entries: impl IntoIterator<Item = (T, Rational)>) -> Result<Self> {
        let weights = Self::accumulate(entries)?;
        let total: Rational = weights.values().sum();
        if total != one() {
            return Err(Error::InvalidDistribution(format!("weights sum to {total}, not 1")));
        }
        Ok(Dist { weights })
    }

    /// Scales nonnegative weights to sum to 1.
    pub fn normalized(entries: impl IntoIterator<Item = (T, Rational)>) -> Result<Self> {
        let weights = Self::accumulate(entries)?;
        let total: Rational = weights.values().sum();
        if total.is_zero() {
            return Err(Error::InvalidDistribution("all weights are zero".into()));
        }
        Ok(Dist {
            weights: weights.into_iter().map(|(k, w)| (k, w / &total)).collect(),
        })
    }

    fn accumulate(entries: impl IntoIterator<Item = (T, Rational)>) -> Result<BTreeMap<T, Rational>> {
        let mut weights: BTreeMap<T, Rational> = BTreeMap::new();
        for (k, w) in entries {
            if w.is_negative() {
                return Err(Error::InvalidDistribution(format!("negative weight {w}")));
            }
            *weights.entry(k).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        Ok(weights)
    }

    pub fn point(x: T) -> Self {
        Dist {
            weights: BTreeMap::from([(x, one())]),
        }
    }

    pub fn uniform(xs: impl IntoIterator<Item = T>) -> Result<Self> {
        let xs: BTreeSet<T> = xs.into_iter().collect();
        let n = Rational::from_integer(xs.len().into());
        if xs.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        Ok(Dist {
            weights: xs.into_iter().map(|x| (x, one() / &n)).collect(),
        })
    }

    pub fn prob(&self, x: &T) -> Rational {
        self.weights.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    /// Probability of the event `pred`.
    pub fn prob_where(&self, pred: impl Fn(&T) -> bool) -> Rational {
        self.weights
            .iter()
            .filter(|(k, _)| pred(k))
            .map(|(_, w)| w)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.weights.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.weights.keys()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Pushforward along `f`.
    pub fn map<S: Ord + Clone>(&self, f: impl Fn(&T) -> S) -> Dist<S> {
        let mut weights: BTreeMap<S, Rational> = BTreeMap::new();
        for (k, w) in &self.weights {
            *weights.entry(f(k)).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        Dist { weights }
    }

    pub fn bind<S: Ord + Clone>(&self, mut f: impl FnMut(&T) -> Result<Dist<S>>) -> Result<Dist<S>> {
        let mut weights: BTreeMap<S, Rational> = BTreeMap::new();
        for (k, w) in &self.weights {
            for (s, v) in f(k)?.weights {
                *weights.entry(s).or_insert_with(Rational::zero) += w * v;
            }
        }
        weights.retain(|_, w| !w.is_zero());
        Ok(Dist { weights })
    }

    pub fn product<S: Ord + Clone>(&self, other: &Dist<S>) -> Dist<(T, S)> {
        let mut weights = BTreeMap::new();
        for (a, wa) in &self.weights {
            for (b, wb) in &other.weights {
                weights.insert((a.clone(), b.clone()), wa * wb);
            }
        }
        Dist { weights }
    }
}

/// A value of one of the four uncertainty monads.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Uncertain<T: Ord> {
    Exact(T),
    Subset(BTreeSet<T>),
    Interval(Interval<T>),
    Dist(Dist<T>),
}

impl<T: Ord + fmt::Debug> fmt::Debug for Uncertain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Uncertain::Exact(x) => write!(f, "η({x:?})"),
            Uncertain::Subset(s) => write!(f, "{s:?}"),
            Uncertain::Interval(i) => write!(f, "{i:?}"),
            Uncertain::Dist(d) => write!(f, "{d:?}"),
        }
    }
}

impl<T: Value> Ordered for Uncertain<T> {
    fn leq(&self, other: &Self) -> bool {
        match (self, other) {
            (Uncertain::Exact(a), Uncertain::Exact(b)) => a.leq(b),
            (Uncertain::Interval(a), Uncertain::Interval(b)) => a.lo.leq(&b.lo) && a.hi.leq(&b.hi),
            _ => self == other,
        }
    }
}

impl<T: Value> Uncertain<T> {
    pub fn subset(xs: impl IntoIterator<Item = T>) -> Result<Self> {
        let s: BTreeSet<T> = xs.into_iter().collect();
        if s.is_empty() {
            return Err(Error::InvalidInput("subset values must be nonempty".into()));
        }
        Ok(Uncertain::Subset(s))
    }

    pub fn interval(lo: T, hi: T) -> Result<Self> {
        Interval::new(lo, hi).map(Uncertain::Interval)
    }

    pub fn kind(&self) -> MonadKind {
        match self {
            Uncertain::Exact(_) => MonadKind::Identity,
            Uncertain::Subset(_) => MonadKind::Powerset,
            Uncertain::Interval(_) => MonadKind::Interval,
            Uncertain::Dist(_) => MonadKind::Dist,
        }
    }

    /// Every value the uncertain value can take (interval: its two endpoints).
    pub fn outcomes(&self) -> Vec<&T> {
        match self {
            Uncertain::Exact(x) => vec![x],
            Uncertain::Subset(s) => s.iter().collect(),
            Uncertain::Interval(i) if i.lo == i.hi => vec![&i.lo],
            Uncertain::Interval(i) => vec![&i.lo, &i.hi],
            Uncertain::Dist(d) => d.support().collect(),
        }
    }

    pub fn as_exact(&self) -> Option<&T> {
        match self {
            Uncertain::Exact(x) => Some(x),
            _ => None,
        }
    }
}

fn expect_kind<T: Value>(kind: MonadKind, m: &Uncertain<T>) -> Result<()> {
    if m.kind() == kind {
        Ok(())
    } else {
        Err(Error::MonadMismatch {
            expected: kind.name().into(),
            found: m.kind().name().into(),
        })
    }
}

impl MonadKind {
    /// `η`
    pub fn unit<T: Value>(self, x: T) -> Uncertain<T> {
        match self {
            MonadKind::Identity => Uncertain::Exact(x),
            MonadKind::Powerset => Uncertain::Subset(BTreeSet::from([x])),
            MonadKind::Interval => Uncertain::Interval(Interval::point(x)),
            MonadKind::Dist => Uncertain::Dist(Dist::point(x)),
        }
    }

    /// Kleisli extension. For intervals, `[a, b] >>= f = [f(a).lo, f(b).hi]`.
    pub fn bind<T: Value, S: Value>(
        self,
        m: &Uncertain<T>,
        mut f: impl FnMut(&T) -> Result<Uncertain<S>>,
    ) -> Result<Uncertain<S>> {
        expect_kind(self, m)?;
        let mut checked = |x: &T| -> Result<Uncertain<S>> {
            let y = f(x)?;
            expect_kind(self, &y)?;
            Ok(y)
        };
        match m {
            Uncertain::Exact(x) => checked(x),
            Uncertain::Subset(s) => {
                let mut out = BTreeSet::new();
                for x in s {
                    if let Uncertain::Subset(ys) = checked(x)? {
                        out.extend(ys);
                    }
                }
                Ok(Uncertain::Subset(out))
            }
            Uncertain::Interval(i) => {
                let lo = match checked(&i.lo)? {
                    Uncertain::Interval(j) => j.lo,
                    _ => unreachable!(),
                };
                let hi = match checked(&i.hi)? {
                    Uncertain::Interval(j) => j.hi,
                    _ => unreachable!(),
                };
                Uncertain::interval(lo, hi)
            }
            Uncertain::Dist(d) => d
                .bind(|x| match checked(x)? {
                    Uncertain::Dist(e) => Ok(e),
                    _ => unreachable!(),
                })
                .map(Uncertain::Dist),
        }
    }

    /// Functorial action `M(f)`. Fails for intervals when `f` breaks the endpoint order.
    pub fn map<T: Value, S: Value>(self, m: &Uncertain<T>, f: impl Fn(&T) -> S) -> Result<Uncertain<S>> {
        self.bind(m, |x| Ok(self.unit(f(x))))
    }

    pub fn try_map<T: Value, S: Value>(
        self,
        m: &Uncertain<T>,
        f: impl Fn(&T) -> Result<S>,
    ) -> Result<Uncertain<S>> {
        self.bind(m, |x| Ok(self.unit(f(x)?)))
    }

    /// `μ`
    pub fn join<T: Value>(self, mm: &Uncertain<Uncertain<T>>) -> Result<Uncertain<T>> {
        self.bind(mm, |m| Ok(m.clone()))
    }

    /// `∇`: Cartesian product, endpoint pairing, product measure, or pairing.
    pub fn strength<T: Value, S: Value>(
        self,
        a: &Uncertain<T>,
        b: &Uncertain<S>,
    ) -> Result<Uncertain<(T, S)>> {
        expect_kind(self, a)?;
        expect_kind(self, b)?;
        Ok(match (a, b) {
            (Uncertain::Exact(x), Uncertain::Exact(y)) => Uncertain::Exact((x.clone(), y.clone())),
            (Uncertain::Subset(xs), Uncertain::Subset(ys)) => Uncertain::Subset(
                xs.iter()
                    .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
                    .collect(),
            ),
            (Uncertain::Interval(i), Uncertain::Interval(j)) => Uncertain::Interval(Interval::new(
                (i.lo.clone(), j.lo.clone()),
                (i.hi.clone(), j.hi.clone()),
            )?),
            (Uncertain::Dist(d), Uncertain::Dist(e)) => Uncertain::Dist(d.product(e)),
            _ => unreachable!("kinds checked above"),
        })
    }

    /// `M(op) ∘ ∇`
    pub fn lift2<T: Value, S: Value, R: Value>(
        self,
        a: &Uncertain<T>,
        b: &Uncertain<S>,
        op: impl Fn(&T, &S) -> Result<R>,
    ) -> Result<Uncertain<R>> {
        let paired = self.strength(a, b)?;
        self.try_map(&paired, |(x, y)| op(x, y))
    }

    /// `η ∘ v` for an exact value; the only bridge out of the identity monad.
    pub fn promote<T: Value>(self, m: &Uncertain<T>) -> Result<Uncertain<T>> {
        match m {
            Uncertain::Exact(x) => Ok(self.unit(x.clone())),
            other if other.kind() == self => Ok(other.clone()),
            other => Err(Error::MonadMismatch {
                expected: MonadKind::Identity.name().into(),
                found: other.kind().name().into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinitePoset;
    use crate::rational::ratio;
    use std::sync::Arc;

    fn chain(n: usize) -> Vec<Elem> {
        Elem::all(&Arc::new(FinitePoset::chain(n)))
    }

    #[test]
    fn subset_strength_is_cartesian() {
        let m = MonadKind::Powerset;
        let a = Uncertain::subset([1u8, 2].map(|x| x.to_string())).unwrap();
        let b = Uncertain::subset(["x".to_string()]).unwrap();
        let s = m.strength(&a, &b).unwrap();
        let expected = Uncertain::subset([
            ("1".to_string(), "x".to_string()),
            ("2".to_string(), "x".to_string()),
        ])
        .unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn interval_strength_pairs_endpoints() {
        let c = chain(4);
        let a = Uncertain::interval(c[0].clone(), c[1].clone()).unwrap();
        let b = Uncertain::interval(c[2].clone(), c[3].clone()).unwrap();
        let s = MonadKind::Interval.strength(&a, &b).unwrap();
        assert_eq!(
            s,
            Uncertain::interval((c[0].clone(), c[2].clone()), (c[1].clone(), c[3].clone())).unwrap()
        );
    }

    #[test]
    fn dist_strength_with_point_mass() {
        let coin = Uncertain::Dist(Dist::uniform(["H".to_string(), "T".to_string()]).unwrap());
        let x = MonadKind::Dist.unit("x".to_string());
        let s = MonadKind::Dist.strength(&coin, &x).unwrap();
        let expected = Dist::new([
            (("H".to_string(), "x".to_string()), ratio(1, 2)),
            (("T".to_string(), "x".to_string()), ratio(1, 2)),
        ])
        .unwrap();
        assert_eq!(s, Uncertain::Dist(expected));
    }

    #[test]
    fn interval_unit_and_join() {
        let c = chain(4);
        assert_eq!(
            MonadKind::Interval.unit(c[3].clone()),
            Uncertain::interval(c[3].clone(), c[3].clone()).unwrap()
        );
        let i01 = Uncertain::interval(c[0].clone(), c[1].clone()).unwrap();
        let i23 = Uncertain::interval(c[2].clone(), c[3].clone()).unwrap();
        let nested = Uncertain::interval(i01, i23).unwrap();
        assert_eq!(
            MonadKind::Interval.join(&nested).unwrap(),
            Uncertain::interval(c[0].clone(), c[3].clone()).unwrap()
        );
    }

    #[test]
    fn subset_join_is_union() {
        let s1 = Uncertain::subset([1u8.to_string()]).unwrap();
        let s12 = Uncertain::subset(["1".to_string(), "2".to_string()]).unwrap();
        let nested = Uncertain::subset([s1, s12.clone()]).unwrap();
        assert_eq!(MonadKind::Powerset.join(&nested).unwrap(), s12);
    }

    #[test]
    fn interval_order_is_enforced() {
        let c = chain(2);
        assert!(matches!(
            Uncertain::interval(c[1].clone(), c[0].clone()),
            Err(Error::IntervalOrder { .. })
        ));
        // an order-reversing map breaks the endpoints
        let i = Uncertain::interval(c[0].clone(), c[1].clone()).unwrap();
        let flip = |e: &Elem| c[1 - e.index()].clone();
        assert!(MonadKind::Interval.map(&i, flip).is_err());
    }

    #[test]
    fn distributions_validate() {
        assert!(Dist::new([("a", ratio(1, 2))]).is_err());
        assert!(Dist::new([("a", ratio(3, 2)), ("b", ratio(-1, 2))]).is_err());
        assert!(Dist::<&str>::new([]).is_err());
        let d = Dist::new([("a", ratio(1, 2)), ("b", ratio(1, 2)), ("c", ratio(0, 1))]).unwrap();
        assert_eq!(d.len(), 2);
        let n = Dist::normalized([("a", ratio(4, 1)), ("b", ratio(1, 1))]).unwrap();
        assert_eq!(n.prob(&"a"), ratio(4, 5));
    }

    #[test]
    fn mixing_monads_is_an_error() {
        let a = MonadKind::Powerset.unit("a".to_string());
        let b = MonadKind::Dist.unit("b".to_string());
        assert!(matches!(
            MonadKind::Powerset.strength(&a, &b),
            Err(Error::MonadMismatch { .. })
        ));
        assert!(matches!(
            MonadKind::Dist.bind(&b, |_| Ok(a.clone())),
            Err(Error::MonadMismatch { .. })
        ));
        let e = MonadKind::Identity.unit("e".to_string());
        assert_eq!(MonadKind::Dist.promote(&e).unwrap(), MonadKind::Dist.unit("e".to_string()));
        assert!(MonadKind::Interval.promote(&b).is_err());
    }
}
