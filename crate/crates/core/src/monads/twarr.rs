//! Twisted-arrow (inclusion-ordered) intervals admit no monotone unit.

use crate::poset::{FinitePoset, PosetRef};
use std::sync::Arc;

/// Inclusion order on intervals: `[a, b] ⊑ [c, d]` iff `c ≤ a` and `b ≤ d`.
pub fn twarr_leq(p: &FinitePoset, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    p.leq(c, a) && p.leq(b, d)
}

/// A strict pair `lower < upper` on which `x ↦ [x, x]` fails to be monotone
/// for the inclusion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwArrWitness {
    pub poset: PosetRef,
    pub lower: usize,
    pub upper: usize,
}

impl TwArrWitness {
    pub fn describe(&self) -> String {
        let (a, b) = (self.poset.label(self.lower), self.poset.label(self.upper));
        format!("{a} ≤ {b} but [{a},{a}] ⋢ [{b},{b}] under inclusion (would need {b} ≤ {a})")
    }
}

pub fn twarr_unit_witness(p: &PosetRef) -> Option<TwArrWitness> {
    let n = p.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| p.leq(a, b) && !twarr_leq(p, (a, a), (b, b)))
        .map(|(lower, upper)| TwArrWitness {
            poset: p.clone(),
            lower,
            upper,
        })
}

/// The witness on the two-element chain.
pub fn twarr_counterexample() -> TwArrWitness {
    twarr_unit_witness(&Arc::new(FinitePoset::chain(2))).expect("the 2-chain has a strict pair")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_have_witnesses_antichains_do_not() {
        let w = twarr_counterexample();
        assert_eq!((w.lower, w.upper), (0, 1));
        let c3 = Arc::new(FinitePoset::chain(3));
        assert!(twarr_unit_witness(&c3).is_some());
        let a = Arc::new(FinitePoset::antichain(["x", "y", "z"]).unwrap());
        assert!(twarr_unit_witness(&a).is_none());
    }
}
