//! Tree-diagrams for elements of `F ⊆ T ⊆ V`.
//!
//! A diagram is stored as its list of branch pairs `uᵢ → v_σ(i)`, sorted by
//! source branch. The source words are the leaves of `T₊`, the target words
//! the leaves of `T₋`, and `σ` is read off from the order of the targets.
//!
//! Points act through left-continuous prefix replacement: `x` lies in the
//! branch interval `(u] = (.u, .u + 2^-|u|]`, so the circle point `0 ≡ 1`
//! belongs to the all-ones branch.

mod random;
mod text;
mod tree;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use random::{enumerate_elements, random_element, random_nontrivial, random_tree};
pub use tree::BinaryTree;

use crate::dyadic::{BinaryWord, Dyadic, DyadicInterval, RegionSet};
use crate::error::Error;

/// Smallest of the three groups containing an element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum ElementClass {
    F,
    T,
    V,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementClass::F => "F",
            ElementClass::T => "T",
            ElementClass::V => "V",
        })
    }
}

impl std::str::FromStr for ElementClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "F" => Ok(ElementClass::F),
            "T" => Ok(ElementClass::T),
            "V" => Ok(ElementClass::V),
            _ => Err(Error::parse(1, 1, format!("unknown class {s:?}"))),
        }
    }
}

/// One branch pair `from → to`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BranchPair {
    pub from: BinaryWord,
    pub to: BinaryWord,
}

/// One-sided local slopes at a point, as base-2 exponents.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Slopes {
    pub left: i64,
    pub right: i64,
    /// False when the two one-sided limits differ (possible in `V`).
    pub continuous: bool,
}

/// An element of `V` as a tree-diagram `(T₊, σ, T₋)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreeDiagram {
    pairs: Vec<(BinaryWord, BinaryWord)>,
}

fn w(s: &str) -> BinaryWord {
    s.parse().expect("literal word")
}

impl TreeDiagram {
    /// Builds a diagram from branch pairs in any order.
    pub fn from_pairs(mut pairs: Vec<(BinaryWord, BinaryWord)>) -> Result<Self, Error> {
        pairs.sort();
        let sources: Vec<BinaryWord> = pairs.iter().map(|p| p.0.clone()).collect();
        let targets: Vec<BinaryWord> = pairs.iter().map(|p| p.1.clone()).collect();
        BinaryTree::from_leaves(sources)?;
        BinaryTree::from_leaves(targets)?;
        Ok(TreeDiagram { pairs })
    }

    /// The triple `(T₊, σ, T₋)`; `perm[i]` is the 0-based index of the
    /// target leaf receiving source leaf `i`.
    pub fn from_trees(
        source: &BinaryTree,
        perm: &[usize],
        target: &BinaryTree,
    ) -> Result<Self, Error> {
        let n = source.leaf_count();
        if target.leaf_count() != n || perm.len() != n {
            return Err(Error::InvalidDiagram(format!(
                "leaf counts differ: {} source, {} target, {} in permutation",
                n,
                target.leaf_count(),
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidDiagram(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        let pairs = source
            .leaves()
            .iter()
            .zip(perm)
            .map(|(u, &p)| (u.clone(), target.leaves()[p].clone()))
            .collect();
        Ok(TreeDiagram { pairs })
    }

    pub fn identity() -> Self {
        TreeDiagram {
            pairs: vec![(BinaryWord::empty(), BinaryWord::empty())],
        }
    }

    /// `x₀`: `00 → 0, 01 → 10, 1 → 11`.
    pub fn x0() -> Self {
        TreeDiagram {
            pairs: vec![(w("00"), w("0")), (w("01"), w("10")), (w("1"), w("11"))],
        }
    }

    /// `x₁`: `0 → 0, 100 → 10, 101 → 110, 11 → 111`.
    pub fn x1() -> Self {
        TreeDiagram {
            pairs: vec![
                (w("0"), w("0")),
                (w("100"), w("10")),
                (w("101"), w("110")),
                (w("11"), w("111")),
            ],
        }
    }

    /// Named built-ins: `id`, `x0`, `x1`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "id" => Some(TreeDiagram::identity()),
            "x0" => Some(TreeDiagram::x0()),
            "x1" => Some(TreeDiagram::x1()),
            _ => None,
        }
    }

    pub fn pairs(&self) -> &[(BinaryWord, BinaryWord)] {
        &self.pairs
    }

    pub fn branch_pairs(&self) -> impl Iterator<Item = BranchPair> + '_ {
        self.pairs.iter().map(|(f, t)| BranchPair {
            from: f.clone(),
            to: t.clone(),
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn source_tree(&self) -> BinaryTree {
        BinaryTree::from_leaves(self.pairs.iter().map(|p| p.0.clone()).collect())
            .expect("diagram invariant")
    }

    pub fn target_tree(&self) -> BinaryTree {
        BinaryTree::from_leaves(self.pairs.iter().map(|p| p.1.clone()).collect())
            .expect("diagram invariant")
    }

    /// `σ` as 0-based indices: source leaf `i` goes to target leaf `σ[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.pairs.len()).collect();
        order.sort_by(|&a, &b| self.pairs[a].1.cmp(&self.pairs[b].1));
        let mut perm = vec![0; order.len()];
        for (rank, &i) in order.iter().enumerate() {
            perm[i] = rank;
        }
        perm
    }

    /// F if `σ` is the identity, T if it is a rotation, V otherwise.
    pub fn class(&self) -> ElementClass {
        let perm = self.permutation();
        let n = perm.len();
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            ElementClass::F
        } else if perm
            .iter()
            .enumerate()
            .all(|(i, &p)| p == (i + perm[0]) % n)
        {
            ElementClass::T
        } else {
            ElementClass::V
        }
    }

    /// Attaches a caret to source leaf `i` (1-based) and to the target leaf
    /// it is paired with.
    pub fn expand(&self, i: usize) -> Result<Self, Error> {
        let n = self.pairs.len();
        if i == 0 || i > n {
            return Err(Error::LeafIndex {
                index: i,
                leaves: n,
            });
        }
        let (u, v) = &self.pairs[i - 1];
        let mut pairs = Vec::with_capacity(n + 1);
        pairs.extend_from_slice(&self.pairs[..i - 1]);
        pairs.push((u.child(false), v.child(false)));
        pairs.push((u.child(true), v.child(true)));
        pairs.extend_from_slice(&self.pairs[i..]);
        Ok(TreeDiagram { pairs })
    }

    /// Expands until `word` is a source leaf. `word` must extend a current
    /// source leaf.
    pub fn expand_source_to(&self, word: &BinaryWord) -> Option<Self> {
        let mut d = self.clone();
        loop {
            let idx = d.source_leaf_prefix_of(word)?;
            if d.pairs[idx].0 == *word {
                return Some(d);
            }
            d = d.expand(idx + 1).ok()?;
        }
    }

    /// Expands until `word` is a target leaf.
    pub fn expand_target_to(&self, word: &BinaryWord) -> Option<Self> {
        let mut d = self.clone();
        loop {
            let idx = d.pairs.iter().position(|(_, t)| t.is_prefix_of(word))?;
            if d.pairs[idx].1 == *word {
                return Some(d);
            }
            d = d.expand(idx + 1).ok()?;
        }
    }

    /// True iff no caret can be removed.
    pub fn is_reduced(&self) -> bool {
        self.reduce().pairs.len() == self.pairs.len()
    }

    /// Removes common carets until none is left. Two adjacent pairs
    /// `u0 → v0, u1 → v1` collapse to `u → v`.
    pub fn reduce(&self) -> Self {
        let mut stack: Vec<(BinaryWord, BinaryWord)> = Vec::with_capacity(self.pairs.len());
        for pair in &self.pairs {
            stack.push(pair.clone());
            while stack.len() >= 2 {
                let (u1, v1) = &stack[stack.len() - 1];
                let (u0, v0) = &stack[stack.len() - 2];
                let mergeable = u1.last() == Some(true)
                    && v1.last() == Some(true)
                    && u0.last() == Some(false)
                    && v0.last() == Some(false)
                    && u0.parent() == u1.parent()
                    && v0.parent() == v1.parent();
                if !mergeable {
                    break;
                }
                let merged = (u0.parent().unwrap(), v0.parent().unwrap());
                stack.pop();
                stack.pop();
                stack.push(merged);
            }
        }
        TreeDiagram { pairs: stack }
    }

    /// Index of the source leaf that is a prefix of `word`, if any.
    pub fn source_leaf_prefix_of(&self, word: &BinaryWord) -> Option<usize> {
        let idx = self.pairs.partition_point(|(s, _)| s <= word);
        if idx == 0 {
            return None;
        }
        self.pairs[idx - 1].0.is_prefix_of(word).then_some(idx - 1)
    }

    /// Indices of source leaves having `word` as a prefix.
    pub fn source_leaves_below(&self, word: &BinaryWord) -> std::ops::Range<usize> {
        let start = self.pairs.partition_point(|(s, _)| s < word);
        let mut end = start;
        while end < self.pairs.len() && word.is_prefix_of(&self.pairs[end].0) {
            end += 1;
        }
        start..end
    }

    /// Image of a word under prefix replacement, when the word extends a
    /// source leaf.
    pub fn apply_word(&self, word: &BinaryWord) -> Option<BinaryWord> {
        let idx = self.source_leaf_prefix_of(word)?;
        let (s, t) = &self.pairs[idx];
        Some(t.concat(&word.strip_prefix(s).expect("prefix")))
    }

    /// Left-to-right product: apply `self`, then `other`. Reduced.
    pub fn mul(&self, other: &TreeDiagram) -> TreeDiagram {
        let mut out = Vec::with_capacity(self.pairs.len().max(other.pairs.len()));
        for (u, v) in &self.pairs {
            if let Some(idx) = other.source_leaf_prefix_of(v) {
                let (s, t) = &other.pairs[idx];
                out.push((u.clone(), t.concat(&v.strip_prefix(s).expect("prefix"))));
            } else {
                for (s, t) in &other.pairs[other.source_leaves_below(v)] {
                    out.push((u.concat(&s.strip_prefix(v).expect("prefix")), t.clone()));
                }
            }
        }
        TreeDiagram { pairs: out }.reduce()
    }

    pub fn inverse(&self) -> TreeDiagram {
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|(u, v)| (v.clone(), u.clone()))
            .collect();
        pairs.sort();
        TreeDiagram { pairs }
    }

    /// `self^k` for any integer `k`, by repeated squaring.
    pub fn pow(&self, k: i64) -> TreeDiagram {
        let mut base = if k < 0 { self.inverse() } else { self.reduce() };
        let mut e = k.unsigned_abs();
        let mut acc = TreeDiagram::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^g = g⁻¹ · self · g` (left to right).
    pub fn conjugate(&self, g: &TreeDiagram) -> TreeDiagram {
        g.inverse().mul(self).mul(g)
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(u, v)| u == v)
    }

    /// Same group element (equal reduced forms).
    pub fn same_element(&self, other: &TreeDiagram) -> bool {
        self.reduce() == other.reduce()
    }

    fn max_source_depth(&self) -> usize {
        self.pairs.iter().map(|p| p.0.len()).max().unwrap_or(0)
    }

    /// Source leaf index whose `(u]` contains the point `p ∈ (0, 1]`.
    fn leaf_from_left(&self, p: &Dyadic) -> usize {
        let probe = p.left_expansion(self.max_source_depth());
        self.source_leaf_prefix_of(&probe)
            .expect("complete prefix code covers every point")
    }

    /// Source leaf index whose `[u)` contains `p ∈ [0, 1)`.
    fn leaf_from_right(&self, p: &Dyadic) -> usize {
        let probe = p.right_expansion(self.max_source_depth());
        self.source_leaf_prefix_of(&probe)
            .expect("complete prefix code covers every point")
    }

    fn affine(&self, idx: usize, x: &Dyadic) -> Dyadic {
        let (u, v) = &self.pairs[idx];
        let offset = (x - &u.left_endpoint()).mul_pow2(u.len() as i64 - v.len() as i64);
        &v.left_endpoint() + &offset
    }

    /// Image of a point, with left-continuous semantics.
    ///
    /// Points are reduced mod 1. The answer lies in `[0, 1)`, except that
    /// the input `1` itself maps into `(0, 1]`, so elements of `F` fix both
    /// `0` and `1`.
    pub fn evaluate(&self, x: &Dyadic) -> Dyadic {
        let one = Dyadic::one();
        let keep_one = *x == one;
        let mut p = x.frac();
        if p.is_zero() {
            p = one.clone();
        }
        let idx = self.leaf_from_left(&p);
        let y = self.affine(idx, &p);
        if y == one && !keep_one {
            Dyadic::zero()
        } else {
            y
        }
    }

    /// Exact image of a region.
    pub fn map_region(&self, region: &RegionSet) -> RegionSet {
        let one = Dyadic::one();
        let mut pieces = Vec::new();
        for seg in region.segments() {
            let start = if seg.lo.is_zero() {
                0
            } else {
                self.leaf_from_left(&seg.lo)
            };
            for idx in start..self.pairs.len() {
                let u = &self.pairs[idx].0;
                let a = u.left_endpoint();
                if a >= seg.hi {
                    break;
                }
                let b = &a + &u.width();
                // (a, b] ∩ seg, in linear coordinates; the point 1 is handled below.
                let (lo, lc) = if seg.lo > a {
                    (seg.lo.clone(), seg.lo_closed)
                } else {
                    (a.clone(), false)
                };
                let (hi, hc) = if seg.hi <= b {
                    (seg.hi.clone(), seg.hi_closed && seg.hi != one)
                } else {
                    (b.clone(), true)
                };
                if lo < hi || (lo == hi && lc && hc) {
                    let ylo = self.affine(idx, &lo);
                    let yhi = self.affine(idx, &hi);
                    pieces.push((ylo, yhi, lc, hc));
                }
            }
            if seg.lo.is_zero() && seg.lo_closed {
                let y = self.affine(self.pairs.len() - 1, &one);
                pieces.push((y.clone(), y, true, true));
            }
        }
        RegionSet::from_linear_pieces(pieces)
    }

    pub fn map_interval(&self, interval: &DyadicInterval) -> RegionSet {
        self.map_region(&interval.to_region())
    }

    /// True iff every point of `region` is fixed.
    pub fn fixes_pointwise(&self, region: &RegionSet) -> bool {
        for seg in region.segments() {
            if seg.is_point() {
                if self.evaluate(&seg.lo) != seg.lo {
                    return false;
                }
                continue;
            }
            let start = if seg.lo.is_zero() {
                0
            } else {
                self.leaf_from_left(&seg.lo)
            };
            for idx in start..self.pairs.len() {
                let (u, v) = &self.pairs[idx];
                let a = u.left_endpoint();
                if a >= seg.hi {
                    break;
                }
                let b = &a + &u.width();
                let overlap_lo = if seg.lo > a { &seg.lo } else { &a };
                let overlap_hi = if seg.hi < b { &seg.hi } else { &b };
                if overlap_lo < overlap_hi && u != v {
                    return false;
                }
            }
            if seg.lo.is_zero() && seg.lo_closed && !self.evaluate(&Dyadic::zero()).is_zero() {
                return false;
            }
        }
        true
    }

    /// One-sided slope exponents at an interior point `x ∈ (0, 1)`.
    pub fn slopes_at(&self, x: &Dyadic) -> Result<Slopes, Error> {
        if *x <= Dyadic::zero() || *x >= Dyadic::one() {
            return Err(Error::PointOutOfRange(x.to_string()));
        }
        let l = self.leaf_from_left(x);
        let r = self.leaf_from_right(x);
        let exp = |i: usize| self.pairs[i].0.len() as i64 - self.pairs[i].1.len() as i64;
        let yl = self.affine(l, x).frac();
        let yr = self.affine(r, x).frac();
        Ok(Slopes {
            left: exp(l),
            right: exp(r),
            continuous: yl == yr,
        })
    }

    /// True iff the element maps `[u]` affinely onto `[v]` by `u·α ↦ v·α`.
    pub fn has_pair_of_branches(&self, u: &BinaryWord, v: &BinaryWord) -> bool {
        if let Some(idx) = self.source_leaf_prefix_of(u) {
            let (s, t) = &self.pairs[idx];
            return t.concat(&u.strip_prefix(s).expect("prefix")) == *v;
        }
        let below = self.source_leaves_below(u);
        !below.is_empty()
            && self.pairs[below].iter().all(|(s, t)| {
                let rest = s.strip_prefix(u).expect("prefix");
                *t == v.concat(&rest)
            })
    }

    /// Fixed dyadic points in `[0, 1]`: breakpoints that are fixed,
    /// endpoints of fixed pieces, and dyadic fixed points inside pieces.
    /// Interior points of fixed intervals are left out.
    pub fn fixed_dyadic_points(&self) -> Vec<Dyadic> {
        let one = Dyadic::one();
        let mut candidates: Vec<Dyadic> = vec![Dyadic::zero(), one.clone()];
        for (idx, (u, v)) in self.pairs.iter().enumerate() {
            let a = u.left_endpoint();
            let b = &a + &u.width();
            candidates.push(a.clone());
            candidates.push(b.clone());
            let e = u.len() as i64 - v.len() as i64;
            if e != 0 {
                // x = .v + (x - .u)·2^e  ⇔  x·(1 - 2^e) = .v - .u·2^e
                let rhs = &v.left_endpoint() - &a.mul_pow2(e);
                let solution = if e > 0 {
                    rhs.div_int(&(BigInt::from(1) - (BigInt::from(1) << e as u64)))
                } else {
                    let m = (-e) as u64;
                    rhs.mul_pow2(m as i64)
                        .div_int(&((BigInt::from(1) << m) - BigInt::from(1)))
                };
                if let Some(x) = solution {
                    if x > a && x <= b && self.affine(idx, &x) == x {
                        candidates.push(x);
                    }
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        candidates
            .into_iter()
            .filter(|x| {
                if self.evaluate(x) != *x {
                    return false;
                }
                if x.is_zero() || *x == one {
                    return true;
                }
                let s = self.slopes_at(x).expect("interior point");
                !(s.left == 0 && s.right == 0 && s.continuous)
            })
            .collect()
    }
}

impl fmt::Debug for TreeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeDiagram{{")?;
        for (i, (u, v)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "}}")
    }
}

pub fn reduce(d: &TreeDiagram) -> TreeDiagram {
    d.reduce()
}

pub fn expand(d: &TreeDiagram, i: usize) -> Result<TreeDiagram, Error> {
    d.expand(i)
}

pub fn multiply(a: &TreeDiagram, b: &TreeDiagram) -> TreeDiagram {
    a.mul(b)
}

pub fn invert(d: &TreeDiagram) -> TreeDiagram {
    d.inverse()
}

pub fn power(d: &TreeDiagram, k: i64) -> TreeDiagram {
    d.pow(k)
}

pub fn conjugate(a: &TreeDiagram, g: &TreeDiagram) -> TreeDiagram {
    a.conjugate(g)
}

pub fn equal(a: &TreeDiagram, b: &TreeDiagram) -> bool {
    a.same_element(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(d: &TreeDiagram) -> Vec<String> {
        d.pairs().iter().map(|(u, v)| format!("{u}->{v}")).collect()
    }

    fn dy(p: i64, q: u32) -> Dyadic {
        Dyadic::new(p, q)
    }

    #[test]
    fn x0_times_x1_table() {
        let h = TreeDiagram::x0().mul(&TreeDiagram::x1());
        assert_eq!(table(&h), ["00->0", "010->10", "011->110", "1->111"]);
    }

    #[test]
    fn x0_squared_table() {
        let d = TreeDiagram::x0().mul(&TreeDiagram::x0());
        assert_eq!(table(&d), ["000->0", "001->10", "01->110", "1->111"]);
    }

    #[test]
    fn inverse_swaps_sides() {
        assert_eq!(
            table(&TreeDiagram::x0().inverse()),
            ["0->00", "10->01", "11->1"]
        );
        assert!(TreeDiagram::x0()
            .mul(&TreeDiagram::x0().inverse())
            .is_identity());
        assert!(TreeDiagram::x0().pow(0).is_identity());
        assert_eq!(
            TreeDiagram::x1().conjugate(&TreeDiagram::identity()),
            TreeDiagram::x1()
        );
    }

    #[test]
    fn expand_then_reduce() {
        let x0 = TreeDiagram::x0();
        let e = x0.expand(3).unwrap();
        assert_eq!(table(&e), ["00->0", "01->10", "10->110", "11->111"]);
        assert_eq!(e.reduce(), x0);
        assert_eq!(x0.expand(1).unwrap().reduce(), x0);
        assert_eq!(
            table(&TreeDiagram::identity().expand(1).unwrap()),
            ["0->0", "1->1"]
        );
        assert_eq!(TreeDiagram::identity().reduce(), TreeDiagram::identity());
        assert!(matches!(
            x0.expand(0),
            Err(Error::LeafIndex {
                index: 0,
                leaves: 3
            })
        ));
        assert!(x0.expand(4).is_err());
    }

    #[test]
    fn v_expansion_follows_sigma() {
        // swap of the two halves
        let swap = TreeDiagram::from_pairs(vec![(w("0"), w("1")), (w("1"), w("0"))]).unwrap();
        assert_eq!(swap.class(), ElementClass::T);
        let e = swap.expand(1).unwrap();
        assert_eq!(table(&e), ["00->10", "01->11", "1->0"]);
        assert_eq!(e.reduce(), swap);
    }

    #[test]
    fn reduction_needs_sigma_compatibility() {
        // sources 0,1 siblings, targets 1,0 siblings but in the wrong order
        let swap = TreeDiagram::from_pairs(vec![(w("0"), w("1")), (w("1"), w("0"))]).unwrap();
        assert!(swap.is_reduced());
    }

    #[test]
    fn classes() {
        assert_eq!(TreeDiagram::x0().class(), ElementClass::F);
        let v = TreeDiagram::from_pairs(vec![
            (w("0"), w("0")),
            (w("10"), w("11")),
            (w("11"), w("10")),
        ])
        .unwrap();
        assert_eq!(v.class(), ElementClass::V);
        let rot = TreeDiagram::from_pairs(vec![
            (w("0"), w("10")),
            (w("10"), w("11")),
            (w("11"), w("0")),
        ])
        .unwrap();
        assert_eq!(rot.class(), ElementClass::T);
    }

    #[test]
    fn evaluation_examples() {
        let x0 = TreeDiagram::x0();
        assert_eq!(x0.evaluate(&dy(3, 3)), dy(5, 3));
        assert_eq!(x0.evaluate(&Dyadic::zero()), Dyadic::zero());
        assert_eq!(x0.evaluate(&Dyadic::one()), Dyadic::one());
        let h = x0.mul(&TreeDiagram::x1());
        assert_eq!(h.evaluate(&dy(9, 4)), dy(57, 6));
        assert_eq!(
            h.evaluate(&dy(9, 4)),
            TreeDiagram::x1().evaluate(&x0.evaluate(&dy(9, 4)))
        );
    }

    #[test]
    fn map_interval_examples() {
        let x0 = TreeDiagram::x0();
        let i: DyadicInterval = "(00]".parse().unwrap();
        assert_eq!(
            x0.map_interval(&i),
            "(0]".parse::<DyadicInterval>().unwrap().to_region()
        );
        let j: DyadicInterval = "(0/2^0,1/2^1]".parse().unwrap();
        assert_eq!(x0.map_interval(&j).to_string(), "(0/2^0,3/2^2]");
        let k: DyadicInterval = "(3/2^2,9/2^3)".parse().unwrap();
        assert_eq!(TreeDiagram::identity().map_interval(&k), k.to_region());
        // the last branch carries the point 0 ≡ 1
        let last: DyadicInterval = "(1]".parse().unwrap();
        assert_eq!(x0.map_interval(&last).to_string(), "(3/2^2,1/2^0]");
    }

    #[test]
    fn slope_examples() {
        let s = TreeDiagram::x1().slopes_at(&dy(1, 1)).unwrap();
        assert_eq!((s.left, s.right), (0, 1));
        let s = TreeDiagram::x0().slopes_at(&dy(1, 2)).unwrap();
        assert_eq!((s.left, s.right), (1, 0));
        let s = TreeDiagram::identity().slopes_at(&dy(5, 4)).unwrap();
        assert_eq!((s.left, s.right), (0, 0));
        assert!(TreeDiagram::x0().slopes_at(&Dyadic::zero()).is_err());
    }

    #[test]
    fn branch_pair_examples() {
        let x0 = TreeDiagram::x0();
        assert!(x0.has_pair_of_branches(&w("00"), &w("0")));
        assert!(x0.has_pair_of_branches(&w("0011"), &w("011")));
        assert!(!x0.has_pair_of_branches(&w("00"), &w("1")));
        // [0] is split into two pieces of different slope
        assert!(!x0.has_pair_of_branches(&w("0"), &w("0")));
        let h2 = x0.mul(&TreeDiagram::x1()).pow(2);
        assert!(h2.has_pair_of_branches(&w("010"), &w("1110")));
        let id = TreeDiagram::identity();
        assert!(id.has_pair_of_branches(&w(""), &w("")));
        assert!(id.has_pair_of_branches(&w("0110"), &w("0110")));
        // a pair covering several leaves
        assert!(x0
            .expand(3)
            .unwrap()
            .has_pair_of_branches(&w("1"), &w("11")));
    }

    #[test]
    fn fixed_points() {
        assert_eq!(
            TreeDiagram::x1().fixed_dyadic_points(),
            vec![Dyadic::zero(), dy(1, 1), Dyadic::one()]
        );
        let inner: Vec<Dyadic> = TreeDiagram::x0()
            .fixed_dyadic_points()
            .into_iter()
            .filter(|x| !x.is_zero() && *x != Dyadic::one())
            .collect();
        assert!(inner.is_empty());
    }
}
