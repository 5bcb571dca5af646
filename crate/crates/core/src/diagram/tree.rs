use std::fmt;

use crate::dyadic::{is_complete_prefix_code, BinaryWord};
use crate::error::Error;

/// A rooted full binary tree, stored as its leaf labels in left-to-right
/// order. The labels of a full tree form a complete prefix code and the
/// code determines the tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTree {
    leaves: Vec<BinaryWord>,
}

impl BinaryTree {
    pub fn from_leaves(mut leaves: Vec<BinaryWord>) -> Result<Self, Error> {
        leaves.sort();
        if !is_complete_prefix_code(&leaves) {
            return Err(Error::InvalidDiagram(format!(
                "leaves {leaves:?} are not the leaves of a full binary tree"
            )));
        }
        Ok(BinaryTree { leaves })
    }

    pub fn trivial() -> Self {
        BinaryTree {
            leaves: vec![BinaryWord::empty()],
        }
    }

    pub fn leaves(&self) -> &[BinaryWord] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Internal vertices (carets), in prefix order.
    pub fn carets(&self) -> Vec<BinaryWord> {
        let mut out: Vec<BinaryWord> = self
            .leaves
            .iter()
            .flat_map(|l| (0..l.len()).map(move |k| l.truncate(k)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every tree with `n` leaves, in lexicographic order of leaf lists.
    pub fn enumerate(n: usize) -> Vec<BinaryTree> {
        fn build(n: usize) -> Vec<Vec<BinaryWord>> {
            if n == 1 {
                return vec![vec![BinaryWord::empty()]];
            }
            let mut out = Vec::new();
            for k in 1..n {
                for left in build(k) {
                    for right in build(n - k) {
                        let mut leaves: Vec<BinaryWord> = left
                            .iter()
                            .map(|w| {
                                BinaryWord::from_bits(
                                    std::iter::once(false)
                                        .chain(w.bits().iter().copied())
                                        .collect(),
                                )
                            })
                            .collect();
                        leaves.extend(right.iter().map(|w| {
                            BinaryWord::from_bits(
                                std::iter::once(true)
                                    .chain(w.bits().iter().copied())
                                    .collect(),
                            )
                        }));
                        out.push(leaves);
                    }
                }
            }
            out
        }
        let mut trees: Vec<BinaryTree> = build(n)
            .into_iter()
            .map(|leaves| BinaryTree { leaves })
            .collect();
        trees.sort();
        trees
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.leaves).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| BinaryTree::enumerate(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn carets_count_is_leaves_minus_one() {
        for t in BinaryTree::enumerate(5) {
            assert_eq!(t.carets().len(), t.leaf_count() - 1);
        }
    }

    #[test]
    fn rejects_incomplete_codes() {
        let w = |s: &str| s.parse::<BinaryWord>().unwrap();
        assert!(BinaryTree::from_leaves(vec![w("0"), w("10")]).is_err());
        assert!(BinaryTree::from_leaves(vec![w("1"), w("0")]).is_ok());
    }
}
