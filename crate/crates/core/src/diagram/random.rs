use rand::seq::SliceRandom;
use rand::Rng;

use super::{BinaryTree, ElementClass, TreeDiagram};
use crate::dyadic::BinaryWord;

/// Uniform random full binary tree with `leaves` leaves (Rémy's algorithm).
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, leaves: usize) -> BinaryTree {
    assert!(leaves >= 1);
    // children[i] = Some((l, r)) for internal nodes
    let mut children: Vec<Option<(usize, usize)>> = vec![None];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut root = 0;
    for _ in 1..leaves {
        let target = rng.gen_range(0..children.len());
        let leaf = children.len();
        children.push(None);
        parent.push(None);
        let node = children.len();
        let new_on_left = rng.gen_bool(0.5);
        children.push(Some(if new_on_left {
            (leaf, target)
        } else {
            (target, leaf)
        }));
        parent.push(parent[target]);
        match parent[target] {
            None => root = node,
            Some(p) => {
                let (l, r) = children[p].expect("parent is internal");
                children[p] = Some(if l == target { (node, r) } else { (l, node) });
            }
        }
        parent[target] = Some(node);
        parent[leaf] = Some(node);
    }
    let mut words = Vec::with_capacity(leaves);
    let mut stack = vec![(root, Vec::new())];
    while let Some((n, path)) = stack.pop() {
        match children[n] {
            None => words.push(BinaryWord::from_bits(path)),
            Some((l, r)) => {
                let mut lp = path.clone();
                lp.push(false);
                let mut rp = path;
                rp.push(true);
                stack.push((r, rp));
                stack.push((l, lp));
            }
        }
    }
    BinaryTree::from_leaves(words).expect("Rémy trees are full")
}

/// A random element of the given class: two uniform random trees with
/// `1..=max_leaves` leaves and `σ` the identity (F), a random rotation (T)
/// or a random permutation (V). Returned reduced.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    max_leaves: usize,
    class: ElementClass,
) -> TreeDiagram {
    let n = rng.gen_range(1..=max_leaves.max(1));
    let source = random_tree(rng, n);
    let target = random_tree(rng, n);
    let perm: Vec<usize> = match class {
        ElementClass::F => (0..n).collect(),
        ElementClass::T => {
            let shift = rng.gen_range(0..n);
            (0..n).map(|i| (i + shift) % n).collect()
        }
        ElementClass::V => {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        }
    };
    TreeDiagram::from_trees(&source, &perm, &target)
        .expect("valid triple")
        .reduce()
}

/// Like [`random_element`] but never the identity.
pub fn random_nontrivial<R: Rng + ?Sized>(
    rng: &mut R,
    max_leaves: usize,
    class: ElementClass,
) -> TreeDiagram {
    assert!(max_leaves >= 2, "only the identity has one leaf");
    loop {
        let d = random_element(rng, max_leaves, class);
        if !d.is_identity() {
            return d;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The first `count` non-identity reduced diagrams of the given class (or
/// a smaller one), ordered by leaf count, source tree, target tree and `σ`.
pub fn enumerate_elements(class: ElementClass, count: usize) -> Vec<TreeDiagram> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2;
    while out.len() < count {
        let trees = BinaryTree::enumerate(n);
        let perms: Vec<Vec<usize>> = match class {
            ElementClass::F => vec![(0..n).collect()],
            ElementClass::T => (0..n)
                .map(|s| (0..n).map(|i| (i + s) % n).collect())
                .collect(),
            ElementClass::V => permutations(n),
        };
        for source in &trees {
            for target in &trees {
                for perm in &perms {
                    let d = TreeDiagram::from_trees(source, perm, target).expect("valid triple");
                    if d.is_identity() || !d.is_reduced() {
                        continue;
                    }
                    out.push(d);
                    if out.len() == count {
                        return out;
                    }
                }
            }
        }
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_trees_have_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..20 {
            assert_eq!(random_tree(&mut rng, n).leaf_count(), n);
        }
    }

    #[test]
    fn remy_is_roughly_uniform_on_four_leaves() {
        // 5 shapes with 4 leaves; each should get about a fifth.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..5000 {
            *counts.entry(random_tree(&mut rng, 4)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 5);
        for c in counts.values() {
            assert!((800..1200).contains(c), "{counts:?}");
        }
    }

    #[test]
    fn random_elements_respect_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let f = random_element(&mut rng, 8, ElementClass::F);
            assert_eq!(f.class(), ElementClass::F);
            let t = random_element(&mut rng, 8, ElementClass::T);
            assert!(t.class() <= ElementClass::T);
            assert!(t.is_reduced());
        }
    }

    #[test]
    fn enumeration_starts_with_the_half_turn() {
        let t = enumerate_elements(ElementClass::T, 3);
        assert_eq!(t[0].table_lines(), vec!["0 -> 1", "1 -> 0"]);
        assert!(t.iter().all(|d| !d.is_identity() && d.is_reduced()));
        let f = enumerate_elements(ElementClass::F, 2);
        assert_eq!(f[0], TreeDiagram::x0().inverse());
    }
}
