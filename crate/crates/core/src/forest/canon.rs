//! Canonical representatives of ≡_h classes.
//!
//! Reductions, applied bottom-up until none fires:
//! 1. a sibling tree dominated by another sibling is dropped;
//! 2. a child whose label is ≤ its parent's label is spliced out (its
//!    children move up to the parent);
//! 3. a node `t` with children `F` such that `t(F) ≤_h F` is replaced by `F`.
//!
//! Siblings are then sorted shortlex by their text form.

use std::cmp::Ordering;

use super::order::{label_leq, leq_trees};
use super::{Forest, Label, Tree};

/// Shortlex key of the text form.
pub fn code_key(t: &Tree) -> (usize, String) {
    let s = t.to_string();
    (s.len(), s)
}

fn shortlex(a: &Tree, b: &Tree) -> Ordering {
    code_key(a).cmp(&code_key(b))
}

pub fn canonical(f: &Forest) -> Forest {
    let trees = f.trees.iter().flat_map(canonical_tree).collect();
    Forest {
        trees: reduce_antichain(trees),
    }
}

/// Canonical form of a single tree. Reduction 3 can dissolve the root, so
/// the result is a forest.
pub fn canonical_tree(t: &Tree) -> Vec<Tree> {
    reduce_tree(t, true)
}

fn reduce_tree(t: &Tree, may_dissolve: bool) -> Vec<Tree> {
    let label = canonical_label(&t.label);
    let mut pending: Vec<Tree> = t.children.iter().flat_map(canonical_tree).collect();
    let mut kept = Vec::with_capacity(pending.len());
    while let Some(child) = pending.pop() {
        if label_leq(&child.label, &label) {
            pending.extend(child.children);
        } else {
            kept.push(child);
        }
    }
    let children = reduce_antichain(kept);
    let node = Tree::new(label, children);
    if may_dissolve && !node.children.is_empty() && leq_trees(std::slice::from_ref(&node), &node.children) {
        node.children
    } else {
        vec![node]
    }
}

fn canonical_label(label: &Label) -> Label {
    match label {
        Label::Base(c) => Label::Base(*c),
        Label::Nested(t) => {
            // A label must stay a tree, so its root is never dissolved.
            let mut forest = reduce_tree(t, false);
            Label::nested(forest.pop().expect("root kept"))
        }
    }
}

/// Sorts, deduplicates and drops trees dominated by another tree.
fn reduce_antichain(mut trees: Vec<Tree>) -> Vec<Tree> {
    trees.sort_by(shortlex);
    trees.dedup();
    let n = trees.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let a = std::slice::from_ref(&trees[i]);
            let b = std::slice::from_ref(&trees[j]);
            // Strictly dominated, or equivalent to an earlier kept tree.
            if leq_trees(a, b) && (j < i || !leq_trees(b, a)) {
                keep[i] = false;
                break;
            }
        }
    }
    trees
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| k.then_some(t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::equiv_h;

    fn canon(s: &str) -> String {
        canonical(&s.parse().unwrap()).to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(canon("0,0"), "0");
        assert_eq!(canon("1,0"), "0,1");
        assert_eq!(canon("0(0(1))"), "0(1)");
        assert_eq!(canon("0(1,1(0))"), "0(1(0))");
        assert_eq!(canon("0,0(1)"), "0(1)");
        assert_eq!(canon("[0]([0(1)])"), "[0(1)]");
        assert_eq!(canon("[0(1)]([1],[0])"), "[0(1)]");
        assert_eq!(canon("[0]([0(1)],[1(0)])"), "[0]([0(1)],[1(0)])");
        assert_eq!(canon("[0(0(1))]"), "[0(1)]");
    }

    #[test]
    fn idempotent_and_equivalent() {
        for s in ["2(1(0),0(1)),1", "0(1(0(1)),1)", "[1(0)]([0]([1(0)]),[0(1)])"] {
            let f: Forest = s.parse().unwrap();
            let c = canonical(&f);
            assert!(equiv_h(&f, &c).unwrap(), "{s}");
            assert_eq!(canonical(&c), c);
        }
    }
}
