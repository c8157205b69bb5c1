//! Enumeration of canonical forests by size.

use std::collections::HashMap;

use super::canon::{canonical, canonical_tree, code_key};
use super::order::leq_trees;
use super::{Forest, Label, Tree};
use crate::Color;

/// Generates canonical level-0 or level-1 forests over `k` colors, one per
/// ≡_h class, grouped by size.
pub struct Enumerator {
    level: usize,
    k: usize,
    inner: Option<Box<Enumerator>>,
    trees: HashMap<usize, Vec<Tree>>,
    forests: HashMap<usize, Vec<Forest>>,
}

impl Enumerator {
    pub fn new(level: usize, k: usize) -> Enumerator {
        assert!(level <= 1, "enumeration supports levels 0 and 1");
        Enumerator {
            level,
            k,
            inner: (level == 1).then(|| Box::new(Enumerator::new(0, k))),
            trees: HashMap::new(),
            forests: HashMap::new(),
        }
    }

    fn labels(&mut self, size: usize) -> Vec<Label> {
        match &mut self.inner {
            None if size == 1 => (0..self.k as Color).map(Label::Base).collect(),
            None => Vec::new(),
            Some(inner) => inner
                .trees_of_size(size)
                .into_iter()
                .map(Label::nested)
                .collect(),
        }
    }

    /// Canonical trees of exactly `n` nodes, in shortlex order.
    pub fn trees_of_size(&mut self, n: usize) -> Vec<Tree> {
        if let Some(v) = self.trees.get(&n) {
            return v.clone();
        }
        let mut out = Vec::new();
        for label_size in 1..=n {
            for label in self.labels(label_size) {
                let rest = n - label_size;
                let child_forests = if rest == 0 {
                    vec![Forest::default()]
                } else {
                    self.forests_of_size(rest)
                };
                for kids in child_forests {
                    let t = Tree::new(label.clone(), kids.trees);
                    let c = canonical_tree(&t);
                    if c.len() == 1 && c[0] == t {
                        out.push(t);
                    }
                }
            }
        }
        out.sort_by_key(code_key);
        self.trees.insert(n, out.clone());
        out
    }

    /// Canonical forests of exactly `n` nodes, in shortlex order.
    pub fn forests_of_size(&mut self, n: usize) -> Vec<Forest> {
        if let Some(v) = self.forests.get(&n) {
            return v.clone();
        }
        let pool: Vec<(usize, Tree)> = (1..=n)
            .flat_map(|s| {
                self.trees_of_size(s)
                    .into_iter()
                    .map(move |t| (s, t))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        combine(&pool, 0, n, &mut chosen, &mut out);
        out.sort_by_key(forest_key);
        self.forests.insert(n, out.clone());
        out
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

fn forest_key(f: &Forest) -> (usize, String) {
    let s = f.to_string();
    (s.len(), s)
}

/// Chooses pool indices in increasing order with sizes summing to `left`,
/// keeping only pairwise incomparable trees.
fn combine(
    pool: &[(usize, Tree)],
    start: usize,
    left: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Forest>,
) {
    if left == 0 {
        let mut trees: Vec<Tree> = chosen.iter().map(|&i| pool[i].1.clone()).collect();
        trees.sort_by_key(code_key);
        let f = Forest { trees };
        if canonical(&f) == f {
            out.push(f);
        }
        return;
    }
    for i in start..pool.len() {
        let (size, t) = &pool[i];
        if *size > left {
            continue;
        }
        let incomparable = chosen.iter().all(|&j| {
            let u = &pool[j].1;
            !leq_trees(std::slice::from_ref(t), std::slice::from_ref(u))
                && !leq_trees(std::slice::from_ref(u), std::slice::from_ref(t))
        });
        if !incomparable {
            continue;
        }
        chosen.push(i);
        combine(pool, i + 1, left - size, chosen, out);
        chosen.pop();
    }
}

/// All canonical forests with at most `max_nodes` nodes, in nondecreasing
/// size and shortlex order within a size.
pub fn enumerate_upto(level: usize, k: usize, max_nodes: usize) -> impl Iterator<Item = Forest> {
    let mut e = Enumerator::new(level, k);
    (1..=max_nodes).flat_map(move |n| e.forests_of_size(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(level: usize, k: usize, n: usize) -> Vec<String> {
        enumerate_upto(level, k, n).map(|f| f.to_string()).collect()
    }

    #[test]
    fn small_level0() {
        assert_eq!(names(0, 2, 1), ["0", "1"]);
        assert_eq!(names(0, 2, 2), ["0", "1", "0,1", "0(1)", "1(0)"]);
    }

    #[test]
    fn level1_contains_lifts() {
        let all = names(1, 2, 2);
        assert!(all.contains(&"[0]([1])".to_string()));
        assert!(all.contains(&"[0(1)]".to_string()));
        assert!(all.contains(&"[0],[1]".to_string()));
    }

    #[test]
    fn deterministic() {
        assert_eq!(names(1, 3, 3), names(1, 3, 3));
    }
}
