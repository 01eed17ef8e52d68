//! Finite posets, their products and opposites, antichains, upper sets and
//! the σ-algebra generated by upper sets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type PosetRef = Arc<FinitePoset>;

/// Default carrier cap for the exponential set-family operations.
pub const DEFAULT_SET_FAMILY_CAP: usize = 12;

/// A finite poset with opaque string labels and a dense order table.
///
/// Equality is structural: same label list (in order) and the same table.
/// Posets built by [`FinitePoset::product`] additionally remember their two
/// factors, which does not take part in equality.
#[derive(Clone)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<bool>,
    index: BTreeMap<String, usize>,
    factors: Option<(PosetRef, PosetRef)>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.labels == other.labels && self.leq == other.leq)
    }
}

impl Eq for FinitePoset {}

impl PartialOrd for FinitePoset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinitePoset {
    fn cmp(&self, other: &Self) -> Ordering {
        if std::ptr::eq(self, other) {
            return Ordering::Equal;
        }
        self.labels
            .cmp(&other.labels)
            .then_with(|| self.leq.cmp(&other.leq))
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

impl FinitePoset {
    /// Builds a poset from a full order table, validating the partial order axioms.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPoset(format!(
                "order table must be {n}×{n}"
            )));
        }
        let flat = leq.into_iter().flatten().collect();
        Self::from_flat(labels, flat)
    }

    fn from_flat(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate label `{l}`")));
            }
        }
        let at = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !at(a, a) {
                return Err(Error::InvalidPoset(format!("not reflexive at `{}`", labels[a])));
            }
            for b in 0..n {
                if a != b && at(a, b) && at(b, a) {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric: `{}` and `{}` are mutually below each other",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    if at(a, b) && at(b, c) && !at(a, c) {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive: `{}` ≤ `{}` ≤ `{}`",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset {
            labels,
            leq,
            index,
            factors: None,
        })
    }

    /// Builds a poset from generating pairs `(a, b)` meaning `a ≤ b`.
    /// The reflexive-transitive closure is taken; antisymmetry is validated.
    pub fn from_pairs<S: AsRef<str>>(labels: Vec<String>, pairs: &[(S, S)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        let pos = |s: &str| {
            labels.iter().position(|l| l == s).ok_or_else(|| Error::ElementNotInPoset {
                element: s.to_string(),
                poset: format!("{{{}}}", labels.join(",")),
            })
        };
        for (a, b) in pairs {
            let (a, b) = (pos(a.as_ref())?, pos(b.as_ref())?);
            leq[a * n + b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_flat(labels, leq)
    }

    /// The chain `0 < 1 < … < n-1`, labelled by decimal indices.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        Self::from_flat(labels, leq).expect("chain is a poset")
    }

    /// A chain with the given labels, in increasing order.
    pub fn chain_of<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        Self::from_flat(labels, leq)
    }

    pub fn antichain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let leq = (0..n * n).map(|k| k / n == k % n).collect();
        Self::from_flat(labels, leq)
    }

    /// The one-point poset, the monoidal unit.
    pub fn unit() -> Self {
        Self::antichain(["*"]).expect("unit poset")
    }

    /// The two-element chain `⊥ < ⊤` of truth values, labelled "0" and "1".
    pub fn booleans() -> Self {
        Self::chain(2)
    }

    pub fn product(p: &PosetRef, q: &PosetRef) -> Self {
        let (np, nq) = (p.len(), q.len());
        let mut labels = Vec::with_capacity(np * nq);
        for a in &p.labels {
            for b in &q.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        let n = np * nq;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = p.leq(x / nq, y / nq) && q.leq(x % nq, y % nq);
            }
        }
        let mut out = Self::from_flat(labels, leq).unwrap_or_else(|_| {
            // labels can only collide when factor labels contain separators;
            // fall back to positional labels in that case
            let labels = (0..n).map(|i| format!("({},{})", i / nq, i % nq)).collect();
            let leq = (0..n * n)
                .map(|k| {
                    let (x, y) = (k / n, k % n);
                    p.leq(x / nq, y / nq) && q.leq(x % nq, y % nq)
                })
                .collect();
            Self::from_flat(labels, leq).expect("product is a poset")
        });
        out.factors = Some((p.clone(), q.clone()));
        out
    }

    pub fn opposite(&self) -> Self {
        let n = self.len();
        let leq = (0..n * n).map(|k| self.leq(k % n, k / n)).collect();
        Self::from_flat(self.labels.clone(), leq).expect("opposite is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::ElementNotInPoset {
                element: label.to_string(),
                poset: self.to_string(),
            })
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.labels.len() + b]
    }

    #[inline]
    pub fn less(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// The two factors, when this poset was built as a product.
    pub fn factors(&self) -> Option<(&PosetRef, &PosetRef)> {
        self.factors.as_ref().map(|(a, b)| (a, b))
    }

    /// Index of the pair `(a, b)` in a product poset with right factor of size `nq`.
    pub fn pair_index(a: usize, b: usize, nq: usize) -> usize {
        a * nq + b
    }

    /// Number of `(a, b)` with `a ≤ b`.
    pub fn relation_count(&self) -> usize {
        self.leq.iter().filter(|&&x| x).count()
    }

    pub fn minimal_elements(self: &PosetRef, subset: &[usize]) -> Antichain {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        let members = set
            .iter()
            .copied()
            .filter(|&s| !set.iter().any(|&t| self.less(t, s)))
            .collect();
        Antichain::new(self.clone(), members).expect("minimal elements are incomparable")
    }

    pub fn maximal_elements(self: &PosetRef, subset: &[usize]) -> Antichain {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        let members = set
            .iter()
            .copied()
            .filter(|&s| !set.iter().any(|&t| self.less(s, t)))
            .collect();
        Antichain::new(self.clone(), members).expect("maximal elements are incomparable")
    }

    pub fn is_upper_set(&self, mask: u64) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            mask & (1 << x) == 0 || (0..n).all(|y| !self.leq(x, y) || mask & (1 << y) != 0)
        })
    }

    /// `↑x`
    pub fn up(&self, x: usize) -> u64 {
        (0..self.len())
            .filter(|&y| self.leq(x, y))
            .fold(0, |m, y| m | (1 << y))
    }
}

impl FinitePoset {
    /// Same order, new labels.
    pub fn relabelled(&self, labels: &[&str]) -> FinitePoset {
        assert_eq!(labels.len(), self.len());
        Self::from_flat(labels.iter().map(|s| s.to_string()).collect(), self.leq.clone())
            .expect("relabelling preserves the order")
    }
}

/// Whether `map` (given as a table of target indices) is order preserving.
pub fn is_monotone(p: &FinitePoset, q: &FinitePoset, map: &[usize]) -> bool {
    map.len() == p.len()
        && map.iter().all(|&t| t < q.len())
        && (0..p.len()).all(|a| (0..p.len()).all(|b| !p.leq(a, b) || q.leq(map[a], map[b])))
}

/// An element of a poset, carrying its poset. Ordered by index; only
/// elements of the same poset are meaningfully comparable.
#[derive(Clone)]
pub struct Elem {
    poset: PosetRef,
    index: usize,
}

impl Elem {
    pub fn new(poset: PosetRef, index: usize) -> Self {
        assert!(index < poset.len(), "element index out of range");
        Elem { poset, index }
    }

    pub fn all(poset: &PosetRef) -> Vec<Elem> {
        (0..poset.len()).map(|i| Elem::new(poset.clone(), i)).collect()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn label(&self) -> &str {
        self.poset.label(self.index)
    }

    pub fn leq(&self, other: &Elem) -> bool {
        self.same_poset(other) && self.poset.leq(self.index, other.index)
    }

    fn same_poset(&self, other: &Elem) -> bool {
        Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset
    }
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.same_poset(other)
    }
}

impl Eq for Elem {}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index).then_with(|| {
            if Arc::ptr_eq(&self.poset, &other.poset) {
                Ordering::Equal
            } else {
                self.poset.cmp(&other.poset)
            }
        })
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A set of pairwise incomparable elements of a poset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Antichain {
    poset: PosetRef,
    members: Vec<usize>,
}

impl Antichain {
    pub fn new(poset: PosetRef, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        for (i, &a) in members.iter().enumerate() {
            if a >= poset.len() {
                return Err(Error::InvalidInput(format!("element index {a} out of range")));
            }
            for &b in &members[i + 1..] {
                if poset.leq(a, b) || poset.leq(b, a) {
                    return Err(Error::InvalidInput(format!(
                        "`{}` and `{}` are comparable",
                        poset.label(a),
                        poset.label(b)
                    )));
                }
            }
        }
        Ok(Antichain { poset, members })
    }

    pub fn empty(poset: PosetRef) -> Self {
        Antichain {
            poset,
            members: Vec::new(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members.iter().map(|&m| self.poset.label(m)).collect()
    }

    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Whether some member lies below `x`.
    pub fn dominated_by(&self, x: usize) -> bool {
        self.members.iter().any(|&m| self.poset.leq(m, x))
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

/// A family of subsets of a poset's carrier, as bitmasks.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub ground: PosetRef,
    pub sets: BTreeSet<u64>,
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.sets.iter().map(|&m| {
                (0..self.ground.len())
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| self.ground.label(i).to_string())
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl SetFamily {
    pub fn full_mask(&self) -> u64 {
        full_mask(self.ground.len())
    }

    pub fn is_powerset(&self) -> bool {
        self.sets.len() as u128 == 1u128 << self.ground.len()
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n >= 64 {
        Err(Error::CarrierTooLarge { size: n, cap })
    } else {
        Ok(())
    }
}

pub fn upper_sets(p: &PosetRef, cap: usize) -> Result<SetFamily> {
    let n = p.len();
    check_cap(n, cap)?;
    let sets = (0..=full_mask(n)).filter(|&m| p.is_upper_set(m)).collect();
    Ok(SetFamily {
        ground: p.clone(),
        sets,
    })
}

/// The least family containing `generators`, ∅ and the carrier that is
/// closed under complement and pairwise union.
pub fn generate_sigma_algebra(generators: &SetFamily, cap: usize) -> Result<SetFamily> {
    let n = generators.ground.len();
    check_cap(n, cap)?;
    let full = full_mask(n);
    let mut sets: BTreeSet<u64> = BTreeSet::new();
    let mut pending: Vec<u64> = generators.sets.iter().copied().collect();
    pending.extend([0, full]);
    while let Some(s) = pending.pop() {
        if !sets.insert(s) {
            continue;
        }
        let comp = full & !s;
        if !sets.contains(&comp) {
            pending.push(comp);
        }
        for &t in &sets {
            let u = s | t;
            if !sets.contains(&u) {
                pending.push(u);
            }
        }
    }
    Ok(SetFamily {
        ground: generators.ground.clone(),
        sets,
    })
}

/// Every labelled poset on `n` elements (labels "0".."n-1").
pub fn enumerate_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => leq[i * n + j] = true,
                2 => leq[j * n + i] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| !leq[a * n + b] || (0..n).all(|c| !leq[b * n + c] || leq[a * n + c]))
        });
        if transitive {
            out.push(
                FinitePoset::from_flat(labels.clone(), leq).expect("enumerated relation is a poset"),
            );
        }
    }
    out
}

/// Every labelled poset with at most `n` elements.
pub fn enumerate_posets_up_to(n: usize) -> Vec<FinitePoset> {
    (0..=n).flat_map(enumerate_posets).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: FinitePoset) -> PosetRef {
        Arc::new(p)
    }

    #[test]
    fn product_counts_multiply() {
        let b = r(FinitePoset::booleans());
        let bb = FinitePoset::product(&b, &b);
        assert_eq!(bb.len(), 4);
        assert_eq!(bb.relation_count(), 9);
        assert_eq!(bb.label(1), "(0,1)");
        let (l, rgt) = bb.factors().unwrap();
        assert_eq!(**l, *b);
        assert_eq!(**rgt, *b);
    }

    #[test]
    fn product_with_unit_is_isomorphic() {
        let p = r(FinitePoset::from_pairs(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "b")],
        )
        .unwrap());
        let u = r(FinitePoset::unit());
        let pu = FinitePoset::product(&p, &u);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(pu.leq(a, b), p.leq(a, b));
            }
        }
    }

    #[test]
    fn product_matches_componentwise_definition() {
        let c2 = r(FinitePoset::chain(2));
        let a3 = r(FinitePoset::antichain(["x", "y", "z"]).unwrap());
        let prod = FinitePoset::product(&c2, &a3);
        for x in 0..6 {
            for y in 0..6 {
                let expected = c2.leq(x / 3, y / 3) && a3.leq(x % 3, y % 3);
                assert_eq!(prod.leq(x, y), expected, "({x},{y})");
            }
        }
    }

    #[test]
    fn opposite_cases() {
        let c2 = FinitePoset::chain(2);
        let op = c2.opposite();
        assert!(op.leq(1, 0) && !op.leq(0, 1));
        let a = FinitePoset::antichain(["x", "y"]).unwrap();
        assert_eq!(a.opposite(), a);
        for p in enumerate_posets(3) {
            assert_eq!(p.opposite().opposite(), p);
        }
    }

    #[test]
    fn invalid_posets_are_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(matches!(
            FinitePoset::from_pairs(labels.clone(), &[("a", "b"), ("b", "a")]),
            Err(Error::InvalidPoset(_))
        ));
        assert!(FinitePoset::new(labels.clone(), vec![vec![true, false], vec![false, false]]).is_err());
        assert!(FinitePoset::antichain(["a", "a"]).is_err());
        assert!(matches!(
            FinitePoset::from_pairs(labels, &[("a", "q")]),
            Err(Error::ElementNotInPoset { .. })
        ));
    }

    #[test]
    fn from_pairs_closes_transitively() {
        let p = FinitePoset::from_pairs(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "b"), ("b", "c")],
        )
        .unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p, FinitePoset::chain(3).relabelled(&["a", "b", "c"]));
    }

    #[test]
    fn minimal_elements_cases() {
        let c3 = r(FinitePoset::chain(3));
        assert_eq!(c3.minimal_elements(&[0, 1, 2]).members(), &[0]);
        assert!(c3.minimal_elements(&[]).is_empty());
    }

    #[test]
    fn monotone_checks() {
        let c2 = FinitePoset::chain(2);
        assert!(is_monotone(&c2, &c2, &[0, 1]));
        assert!(!is_monotone(&c2, &c2, &[1, 0]));
        assert!(!is_monotone(&c2, &c2, &[0]));
    }

    #[test]
    fn upper_set_examples() {
        let c2 = r(FinitePoset::chain(2));
        let u = upper_sets(&c2, DEFAULT_SET_FAMILY_CAP).unwrap();
        assert_eq!(u.sets, BTreeSet::from([0b00, 0b10, 0b11]));
        let a2 = r(FinitePoset::antichain(["x", "y"]).unwrap());
        assert_eq!(upper_sets(&a2, 12).unwrap().sets.len(), 4);
        let b = r(FinitePoset::booleans());
        let grid = r(FinitePoset::product(&b, &b));
        // oracle: filter all 16 subsets by the definition
        let brute = (0u64..16)
            .filter(|&m| {
                (0..4).all(|x| {
                    m & (1 << x) == 0 || (0..4).all(|y| !grid.leq(x, y) || m & (1 << y) != 0)
                })
            })
            .count();
        assert_eq!(brute, 6);
        assert_eq!(upper_sets(&grid, 12).unwrap().sets.len(), 6);
    }

    #[test]
    fn caps_are_enforced() {
        let big = r(FinitePoset::chain(13));
        assert!(matches!(
            upper_sets(&big, DEFAULT_SET_FAMILY_CAP),
            Err(Error::CarrierTooLarge { size: 13, cap: 12 })
        ));
    }

    #[test]
    fn sigma_algebra_examples() {
        let c2 = r(FinitePoset::chain(2));
        let s = generate_sigma_algebra(&upper_sets(&c2, 12).unwrap(), 12).unwrap();
        assert!(s.is_powerset());
        let trivial = SetFamily {
            ground: c2.clone(),
            sets: BTreeSet::from([0, 3]),
        };
        assert_eq!(generate_sigma_algebra(&trivial, 12).unwrap().sets, trivial.sets);
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219]);
    }
}

/// One representative per isomorphism class of posets with exactly `n` elements.
pub fn iso_classes(n: usize) -> Vec<FinitePoset> {
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in enumerate_posets(n) {
        let key = perms
            .iter()
            .map(|perm| {
                (0..n * n)
                    .map(|k| p.leq(perm[k / n], perm[k % n]))
                    .collect::<Vec<bool>>()
            })
            .min()
            .unwrap_or_default();
        if seen.insert(key) {
            out.push(p);
        }
    }
    out
}

/// Isomorphism-class representatives for every size up to `n`.
pub fn iso_classes_up_to(n: usize) -> Vec<FinitePoset> {
    (0..=n).flat_map(iso_classes).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod iso_tests {
    use super::*;

    #[test]
    fn iso_class_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| iso_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }
}
