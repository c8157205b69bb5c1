//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use fhier::forest::{Forest, Label, Tree};

/// Flattened forest: label per node and the strict-ancestor relation.
struct Nodes<'a> {
    labels: Vec<&'a Label>,
    parent: Vec<Option<usize>>,
}

fn flatten(trees: &[Tree]) -> Nodes<'_> {
    fn go<'a>(t: &'a Tree, parent: Option<usize>, out: &mut Nodes<'a>) {
        let me = out.labels.len();
        out.labels.push(&t.label);
        out.parent.push(parent);
        for c in &t.children {
            go(c, Some(me), out);
        }
    }
    let mut out = Nodes {
        labels: Vec::new(),
        parent: Vec::new(),
    };
    for t in trees {
        go(t, None, &mut out);
    }
    out
}

fn is_ancestor_or_self(n: &Nodes<'_>, a: usize, mut b: usize) -> bool {
    loop {
        if a == b {
            return true;
        }
        match n.parent[b] {
            Some(p) => b = p,
            None => return false,
        }
    }
}

/// Label order used by the brute-force check: equality on colors,
/// recursive brute force on nested labels.
pub fn brute_label_leq(a: &Label, b: &Label) -> bool {
    match (a, b) {
        (Label::Base(x), Label::Base(y)) => x == y,
        (Label::Nested(x), Label::Nested(y)) => {
            brute_leq(std::slice::from_ref(x), std::slice::from_ref(y))
        }
        _ => false,
    }
}

/// Tries every map from nodes of `f` to nodes of `g`.
pub fn brute_leq(f: &[Tree], g: &[Tree]) -> bool {
    let a = flatten(f);
    let b = flatten(g);
    if a.labels.is_empty() {
        return true;
    }
    let lab: Vec<Vec<bool>> = a
        .labels
        .iter()
        .map(|x| b.labels.iter().map(|y| brute_label_leq(x, y)).collect())
        .collect();
    let mut phi = vec![0usize; a.labels.len()];
    fn search(i: usize, phi: &mut Vec<usize>, a: &Nodes<'_>, b: &Nodes<'_>, lab: &[Vec<bool>]) -> bool {
        if i == phi.len() {
            return true;
        }
        for t in 0..b.labels.len() {
            if !lab[i][t] {
                continue;
            }
            // parents precede children in the flattening
            if let Some(p) = a.parent[i] {
                if !is_ancestor_or_self(b, phi[p], t) {
                    continue;
                }
            }
            phi[i] = t;
            if search(i + 1, phi, a, b, lab) {
                return true;
            }
        }
        false
    }
    search(0, &mut phi, &a, &b, &lab)
}

/// A level-0 forest flattened once for repeated brute-force searches.
pub struct BruteFlat {
    colors: Vec<u32>,
    parent: Vec<Option<usize>>,
    /// `anc[b]` has bit `a` when `a` is an ancestor of `b` or `b` itself.
    anc: Vec<u64>,
}

impl BruteFlat {
    pub fn new(trees: &[Tree]) -> BruteFlat {
        let n = flatten(trees);
        let colors = n
            .labels
            .iter()
            .map(|l| match l {
                Label::Base(c) => *c,
                Label::Nested(_) => panic!("level-0 only"),
            })
            .collect();
        let anc = (0..n.labels.len())
            .map(|b| (0..n.labels.len()).filter(|&a| is_ancestor_or_self(&n, a, b)).fold(0u64, |m, a| m | 1 << a))
            .collect();
        BruteFlat { colors, parent: n.parent, anc }
    }

    /// Same search as [`brute_leq`]: every map, node by node in pre-order.
    pub fn leq(&self, other: &BruteFlat) -> bool {
        fn search(i: usize, phi: &mut [usize], a: &BruteFlat, b: &BruteFlat) -> bool {
            if i == phi.len() {
                return true;
            }
            for t in 0..b.colors.len() {
                if a.colors[i] != b.colors[t] {
                    continue;
                }
                if let Some(p) = a.parent[i] {
                    if b.anc[t] >> phi[p] & 1 == 0 {
                        continue;
                    }
                }
                phi[i] = t;
                if search(i + 1, phi, a, b) {
                    return true;
                }
            }
            false
        }
        let mut phi = [0usize; 64];
        search(0, &mut phi[..self.colors.len()], self, other)
    }
}

/// Every label of weight exactly `n` at `level` over `k` colors.
fn labels_of(level: usize, k: u32, n: usize) -> Vec<Label> {
    if level == 0 {
        return if n == 1 { (0..k).map(Label::Base).collect() } else { Vec::new() };
    }
    all_trees(level - 1, k, n).into_iter().map(Label::nested).collect()
}

/// Every tree (up to child order) of total size `n`.
pub fn all_trees(level: usize, k: u32, n: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    for ls in 1..=n {
        for l in labels_of(level, k, ls) {
            for kids in all_forests_incl_empty(level, k, n - ls) {
                out.push(Tree::new(l.clone(), kids));
            }
        }
    }
    out
}

fn all_forests_incl_empty(level: usize, k: u32, n: usize) -> Vec<Vec<Tree>> {
    let pool: Vec<(usize, Tree)> = (1..=n)
        .flat_map(|s| all_trees(level, k, s).into_iter().map(move |t| (s, t)))
        .collect();
    let mut out = Vec::new();
    fn rec(pool: &[(usize, Tree)], start: usize, left: usize, cur: &mut Vec<Tree>, out: &mut Vec<Vec<Tree>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool[i].0 <= left {
                cur.push(pool[i].1.clone());
                rec(pool, i, left - pool[i].0, cur, out);
                cur.pop();
            }
        }
    }
    rec(&pool, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Every nonempty forest of total size exactly `n`.
pub fn all_forests(level: usize, k: u32, n: usize) -> Vec<Forest> {
    if n == 0 {
        return Vec::new();
    }
    all_forests_incl_empty(level, k, n).into_iter().map(Forest::new).collect()
}

pub fn all_forests_upto(level: usize, k: u32, max: usize) -> Vec<Forest> {
    (1..=max).flat_map(|n| all_forests(level, k, n)).collect()
}

/// Number of ≡ classes among `items` under a preorder given as `leq`.
pub fn count_classes<T>(items: &[T], leq: impl Fn(&T, &T) -> bool) -> usize {
    let mut reps: Vec<&T> = Vec::new();
    for x in items {
        if !reps.iter().any(|r| leq(r, x) && leq(x, r)) {
            reps.push(x);
        }
    }
    reps.len()
}

use fhier::muller::{Acceptor, Automaton, UpWord};
use rand::Rng;

/// A random acceptor with `n` states whose cycles get random colors.
pub fn random_acceptor(rng: &mut impl Rng, n: usize, k: usize) -> Acceptor {
    let delta = (0..n).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
    let aut = Automaton::from_table(delta, 0).unwrap();
    let cycles = fhier::muller::cycles(&aut).unwrap();
    let colors: Vec<u32> = cycles.iter().map(|_| rng.gen_range(0..k as u32)).collect();
    Acceptor::from_cycle_fn(aut, k, |d| colors[cycles.iter().position(|c| c == d).unwrap()]).unwrap()
}

/// Every word of length at most `max` over `{0,1}`.
pub fn words_upto(max: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for len in 1..=max {
        for code in 0..1u32 << len {
            out.push((0..len).map(|i| (code >> (len - 1 - i) & 1) as u8).collect());
        }
    }
    out
}

/// Rewrites `u·v^ω` with `|u|` and `|v|` multiples of `m`.
pub fn align(w: &UpWord, m: usize) -> (Vec<u8>, Vec<u8>) {
    let mut u = w.u.clone();
    let mut i = 0;
    while !u.len().is_multiple_of(m) {
        u.push(w.v[i % w.v.len()]);
        i += 1;
    }
    let mut v = Vec::new();
    for j in 0..w.v.len() * m {
        v.push(w.v[(i + j) % w.v.len()]);
    }
    (u, v)
}

/// `pᵢ(A)` straight from its definition.
pub fn p_oracle(i: u32, a: &Acceptor, w: &UpWord) -> u32 {
    let n = w.u.len() + w.v.len();
    match (0..n).find(|&j| w.letter(j) == 1) {
        None => i,
        Some(j) => a.evaluate(&w.shift(j + 1)).unwrap(),
    }
}

const BLOCKS: [[u8; 6]; 3] = [[1, 1, 0, 0, 0, 0], [1, 1, 0, 1, 0, 0], [1, 1, 0, 0, 1, 0]];

fn decode(bits: &[u8]) -> Option<Vec<u8>> {
    bits.chunks(6)
        .map(|c| BLOCKS.iter().position(|b| b[..] == c[..]).map(|p| p as u8))
        .collect()
}

/// `qᵢ(A)` straight from its definition.
pub fn q_oracle(i: u32, a: &Acceptor, w: &UpWord) -> u32 {
    let (u, v) = align(w, 6);
    let (Some(du), Some(dv)) = (decode(&u), decode(&v)) else {
        return i;
    };
    if dv.contains(&2) {
        return i;
    }
    let tail = match du.iter().rposition(|&x| x == 2) {
        Some(p) => du[p + 1..].to_vec(),
        None => du,
    };
    a.evaluate(&UpWord::new(tail, dv).unwrap()).unwrap()
}

/// `A + B` straight from its definition.
pub fn plus_oracle(a: &Acceptor, b: &Acceptor, w: &UpWord) -> u32 {
    let horizon = w.u.len() + 2 * w.v.len() + 2;
    match (0..horizon).find(|&j| j % 2 == 1 && w.letter(j) == 1) {
        Some(j) => b.evaluate(&w.shift(j + 1)).unwrap(),
        None => {
            let (u, v) = align(w, 2);
            let even = |s: &[u8]| s.iter().step_by(2).copied().collect::<Vec<u8>>();
            a.evaluate(&UpWord::new(even(&u), even(&v)).unwrap()).unwrap()
        }
    }
}

/// Block codes of ternary words, for words that actually reach the inner
/// acceptor of `qᵢ`.
pub fn encode(sigma: &[u8]) -> Vec<u8> {
    sigma.iter().flat_map(|&x| BLOCKS[x as usize]).collect()
}

/// Every ternary word of length at most `max`.
pub fn ternary_upto(max: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut last = vec![Vec::new()];
    for _ in 0..max {
        last = last
            .iter()
            .flat_map(|w: &Vec<u8>| (0..3).map(move |x| [w.clone(), vec![x]].concat()))
            .collect();
        out.extend(last.iter().cloned());
    }
    out
}
