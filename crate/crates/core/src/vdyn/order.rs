use serde::{Deserialize, Serialize};

use crate::diagram::TreeDiagram;
use crate::dyadic::{BinaryWord, DyadicInterval, RegionSet};
use crate::error::{Error, Result};

/// Search limits for [`detect_order`] and [`revealing_search`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest order tried by taking powers.
    pub max_order: u32,
    /// Carets that may be added to the reduced diagram.
    pub expansion_budget: usize,
    /// Largest return time `r`.
    pub power_budget: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_order: 96,
            expansion_budget: 6,
            power_budget: 24,
        }
    }
}

/// A diagram of `γ` (or of `γ⁻¹` when `inverted`) with a source branch `v`
/// that is a proper prefix of the target branches `v·w₁, …, v·wₘ`, such
/// that `(v], δ(v], …, δʳ⁻¹(v]` are pairwise disjoint and `δʳ(v] = (v·w_k]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RevealingEvidence {
    pub diagram: TreeDiagram,
    pub inverted: bool,
    pub v: BinaryWord,
    pub ws: Vec<BinaryWord>,
    /// 1-based index into `ws`.
    pub k: usize,
    pub r: u32,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

fn word_region(w: &BinaryWord) -> RegionSet {
    DyadicInterval::HalfOpenWord(w.clone()).to_region()
}

/// Suffixes `w` of the target branches strictly below `v`, in order.
fn target_suffixes(d: &TreeDiagram, v: &BinaryWord) -> Vec<BinaryWord> {
    let mut ws: Vec<BinaryWord> = d
        .pairs()
        .iter()
        .filter(|(_, t)| v.is_proper_prefix_of(t))
        .map(|(_, t)| t.strip_prefix(v).expect("prefix"))
        .collect();
    ws.sort();
    ws
}

impl RevealingEvidence {
    /// The element the diagram represents (`γ` or `γ⁻¹`).
    pub fn acting(&self, gamma: &TreeDiagram) -> TreeDiagram {
        if self.inverted {
            gamma.inverse()
        } else {
            gamma.reduce()
        }
    }

    /// `v·wⱼ` for a 1-based `j`.
    pub fn branch(&self, j: usize) -> BinaryWord {
        self.v.concat(&self.ws[j - 1])
    }

    /// Exact re-check of every claim against `gamma`.
    pub fn verify(&self, gamma: &TreeDiagram) -> Result<()> {
        let delta = self.acting(gamma);
        if !self.diagram.same_element(&delta) {
            return Err(fail("evidence diagram does not represent the element"));
        }
        if !self.diagram.pairs().iter().any(|(s, _)| *s == self.v) {
            return Err(fail(format!("{} is not a source branch", self.v)));
        }
        if self.ws != target_suffixes(&self.diagram, &self.v) {
            return Err(fail("ws are not the target branches below v"));
        }
        if self.ws.len() < 2 {
            return Err(fail("fewer than two target branches below v"));
        }
        if self.k == 0 || self.k > self.ws.len() {
            return Err(fail("k out of range"));
        }
        if self.r == 0 {
            return Err(fail("r must be positive"));
        }
        let mut images = vec![word_region(&self.v)];
        for _ in 1..self.r {
            let next = delta.map_region(images.last().expect("nonempty"));
            if images.iter().any(|im| !im.is_disjoint(&next)) {
                return Err(fail("orbit of (v] is not pairwise disjoint before time r"));
            }
            images.push(next);
        }
        let last = delta.map_region(images.last().expect("nonempty"));
        if last != word_region(&self.branch(self.k)) {
            return Err(fail("the r-th image of (v] is not (v w_k]"));
        }
        Ok(())
    }
}

/// Outcome of [`detect_order`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderResult {
    Periodic(u32),
    InfiniteOrder(Box<RevealingEvidence>),
    Unknown(Budgets),
}

/// True iff some branch pair `u → w` has `u` a proper prefix of `w`, which
/// rules out finite order.
fn has_contracting_pair(d: &TreeDiagram) -> bool {
    d.pairs().iter().any(|(u, w)| u.is_proper_prefix_of(w))
}

pub fn detect_order(gamma: &TreeDiagram, budgets: &Budgets) -> OrderResult {
    let gamma = gamma.reduce();
    if gamma.is_identity() {
        return OrderResult::Periodic(1);
    }
    if gamma.source_tree() == gamma.target_tree() {
        let sigma = gamma.permutation();
        let mut order = 1u32;
        let mut cur: Vec<usize> = sigma.clone();
        while cur.iter().enumerate().any(|(i, &p)| i != p) {
            cur = cur.iter().map(|&p| sigma[p]).collect();
            order += 1;
        }
        return OrderResult::Periodic(order);
    }
    let mut power = TreeDiagram::identity();
    for t in 1..=budgets.max_order {
        power = power.mul(&gamma);
        if power.is_identity() {
            return OrderResult::Periodic(t);
        }
        if has_contracting_pair(&power) {
            break;
        }
    }
    match revealing_search(&gamma, budgets) {
        Some(ev) => OrderResult::InfiniteOrder(Box::new(ev)),
        None => OrderResult::Unknown(*budgets),
    }
}

/// Looks for revealing evidence for `γ`, then for `γ⁻¹`.
pub fn revealing_search(gamma: &TreeDiagram, budgets: &Budgets) -> Option<RevealingEvidence> {
    let gamma = gamma.reduce();
    search_direction(&gamma, false, budgets)
        .or_else(|| search_direction(&gamma.inverse(), true, budgets))
}

/// A contracting pair `u → u·z` of `δᵗ` makes `(u·zⁱ]` map onto
/// `(u·zⁱ⁺¹]`; each `v = u·zⁱ` is tried as the source branch.
fn search_direction(
    delta: &TreeDiagram,
    inverted: bool,
    budgets: &Budgets,
) -> Option<RevealingEvidence> {
    let base_leaves = delta.leaf_count();
    let mut power = TreeDiagram::identity();
    for t in 1..=budgets.power_budget {
        power = power.mul(delta);
        if power.is_identity() {
            return None;
        }
        for (u, w) in power.pairs() {
            if !u.is_proper_prefix_of(w) {
                continue;
            }
            let z = w.strip_prefix(u).expect("prefix");
            let mut v = u.clone();
            loop {
                let Some(expanded) = delta.expand_source_to(&v) else {
                    // v lies above a source branch; go deeper.
                    v = v.concat(&z);
                    if v.len()
                        > delta.pairs().iter().map(|p| p.0.len()).max().unwrap_or(0)
                            + budgets.expansion_budget
                    {
                        break;
                    }
                    continue;
                };
                if expanded.leaf_count() - base_leaves > budgets.expansion_budget {
                    break;
                }
                if let Some(ev) = try_candidate(delta, &expanded, inverted, &v, &z, t, budgets) {
                    return Some(ev);
                }
                v = v.concat(&z);
            }
        }
    }
    None
}

fn try_candidate(
    delta: &TreeDiagram,
    expanded: &TreeDiagram,
    inverted: bool,
    v: &BinaryWord,
    z: &BinaryWord,
    r: u32,
    budgets: &Budgets,
) -> Option<RevealingEvidence> {
    let start = word_region(v);
    let mut image = start.clone();
    for _ in 1..r {
        image = delta.map_region(&image);
        if !image.is_disjoint(&start) {
            return None;
        }
    }
    let landing = v.concat(z);
    let diagram = expanded.expand_target_to(&landing)?;
    if diagram.leaf_count() - delta.leaf_count() > budgets.expansion_budget {
        return None;
    }
    let ws = target_suffixes(&diagram, v);
    let k = ws.iter().position(|w| w == z)? + 1;
    let ev = RevealingEvidence {
        diagram,
        inverted,
        v: v.clone(),
        ws,
        k,
        r,
    };
    let gamma = if inverted {
        delta.inverse()
    } else {
        delta.clone()
    };
    ev.verify(&gamma).ok()?;
    Some(ev)
}
