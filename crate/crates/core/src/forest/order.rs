//! Homomorphism quasiorder ≤_h and its weaker relatives ≤₀, ≤₁, ≤₂.

use std::collections::HashMap;

use super::{Forest, Label, Tree};
use crate::error::{Error, Result};
use crate::Color;

/// The weaker quasiorders on level-0 forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `c = g∘d∘φ` for some permutation `g`.
    V0,
    /// `c = g∘d∘φ` for some map `g: k → k`.
    V1,
    /// Comparable nodes with distinct labels go to distinct labels.
    V2,
}

/// Post-order flattening: children always precede their parent.
pub(crate) struct Flat<'a> {
    pub labels: Vec<&'a Label>,
    pub children: Vec<Vec<usize>>,
    pub roots: Vec<usize>,
}

impl<'a> Flat<'a> {
    pub fn new(trees: &'a [Tree]) -> Flat<'a> {
        let mut flat = Flat {
            labels: Vec::new(),
            children: Vec::new(),
            roots: Vec::new(),
        };
        for t in trees {
            let r = flat.push(t);
            flat.roots.push(r);
        }
        flat
    }

    fn push(&mut self, t: &'a Tree) -> usize {
        let kids: Vec<usize> = t.children.iter().map(|c| self.push(c)).collect();
        self.labels.push(&t.label);
        self.children.push(kids);
        self.labels.len() - 1
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }
}

fn check_same_level(f: &Forest, g: &Forest) -> Result<()> {
    let (a, b) = (f.level()?, g.level()?);
    if a != b {
        return Err(Error::LevelMismatch(a, b));
    }
    Ok(())
}

/// `F ≤_h G`: some ancestor-preserving map sends every node of `F` to a node
/// of `G` with a label at least as large.
pub fn leq_h(f: &Forest, g: &Forest) -> Result<bool> {
    check_same_level(f, g)?;
    if let (Some(a), Some(b)) = (Packed::new(f), Packed::new(g)) {
        return Ok(a.leq(&b));
    }
    Ok(leq_trees(&f.trees, &g.trees))
}

/// A level-0 forest of at most 64 nodes over at most 64 colors, in
/// post-order with bitmask tables. Comparing packed forests allocates
/// nothing, which matters for bulk comparisons.
#[derive(Clone, Debug)]
pub struct Packed {
    colors: Vec<u8>,
    /// Post-order index of the parent; `u8::MAX` for roots.
    parent: Vec<u8>,
    /// Nodes carrying each color.
    by_color: [u64; 64],
    /// Ancestors of each node, itself included.
    up: Vec<u64>,
}

impl Packed {
    /// `None` for nested labels or forests that do not fit.
    pub fn new(f: &Forest) -> Option<Packed> {
        fn walk(t: &Tree, p: &mut Packed) -> Option<usize> {
            let Label::Base(c) = t.label else { return None };
            if c >= 64 {
                return None;
            }
            let mut kids = Vec::with_capacity(t.children.len());
            for ch in &t.children {
                kids.push(walk(ch, p)?);
            }
            let me = p.colors.len();
            if me >= 64 {
                return None;
            }
            p.colors.push(c as u8);
            p.parent.push(u8::MAX);
            p.up.push(0);
            p.by_color[c as usize] |= 1 << me;
            for k in kids {
                p.parent[k] = me as u8;
            }
            Some(me)
        }
        let mut p = Packed {
            colors: Vec::new(),
            parent: Vec::new(),
            by_color: [0; 64],
            up: Vec::new(),
        };
        for t in &f.trees {
            walk(t, &mut p)?;
        }
        // parents come after children, so fill ancestor masks top-down
        for v in (0..p.colors.len()).rev() {
            let above = match p.parent[v] {
                u8::MAX => 0,
                q => p.up[q as usize],
            };
            p.up[v] = above | 1 << v;
        }
        Some(p)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// `self ≤_h other`.
    pub fn leq(&self, other: &Packed) -> bool {
        let n = self.colors.len();
        let mut need = [u64::MAX; 64];
        for x in 0..n {
            // targets for x whose subtree also takes every child of x
            let mut here = need[x] & other.by_color[self.colors[x] as usize];
            let mut reach = 0u64;
            while here != 0 {
                let v = here.trailing_zeros() as usize;
                reach |= other.up[v];
                here &= here - 1;
            }
            match self.parent[x] {
                u8::MAX if reach == 0 => return false,
                u8::MAX => {}
                q => need[q as usize] &= reach,
            }
        }
        true
    }
}

pub fn equiv_h(f: &Forest, g: &Forest) -> Result<bool> {
    Ok(leq_h(f, g)? && leq_h(g, f)?)
}

/// `≤_h` on single trees; levels are assumed to agree.
pub fn leq_tree(a: &Tree, b: &Tree) -> bool {
    leq_trees(std::slice::from_ref(a), std::slice::from_ref(b))
}

pub(crate) fn label_leq(a: &Label, b: &Label) -> bool {
    match (a, b) {
        (Label::Base(x), Label::Base(y)) => x == y,
        (Label::Nested(x), Label::Nested(y)) => leq_tree(x, y),
        _ => false,
    }
}

pub(crate) fn leq_trees(f: &[Tree], g: &[Tree]) -> bool {
    if f.is_empty() {
        return true;
    }
    if g.is_empty() {
        return false;
    }
    let ff = Flat::new(f);
    let gf = Flat::new(g);
    let mut cache: HashMap<(usize, usize), bool> = HashMap::new();
    let below = below_table(&ff, &gf, |i, j| {
        *cache
            .entry((i, j))
            .or_insert_with(|| label_leq(ff.labels[i], gf.labels[j]))
    });
    ff.roots
        .iter()
        .all(|&r| gf.roots.iter().any(|&s| below[r * gf.len() + s]))
}

/// `below[c·|G| + s]`: the subtree at `c` maps into the subtree at `s`.
pub(crate) fn below_table(
    ff: &Flat<'_>,
    gf: &Flat<'_>,
    mut lab: impl FnMut(usize, usize) -> bool,
) -> Vec<bool> {
    let m = gf.len();
    let mut below = vec![false; ff.len() * m];
    for c in 0..ff.len() {
        for s in 0..m {
            let here = lab(c, s) && ff.children[c].iter().all(|&cc| below[cc * m + s]);
            below[c * m + s] = here || gf.children[s].iter().any(|&ss| below[c * m + ss]);
        }
    }
    below
}

fn base_colors(flat: &Flat<'_>) -> Result<Vec<Color>> {
    flat.labels
        .iter()
        .map(|l| match l {
            Label::Base(c) => Ok(*c),
            Label::Nested(_) => Err(Error::Unsupported(
                "quasiorder variants are defined on level-0 forests only".into(),
            )),
        })
        .collect()
}

/// Decides `F ≤₀ G`, `F ≤₁ G` or `F ≤₂ G` for level-0 forests over `k` colors.
pub fn leq_variant(f: &Forest, g: &Forest, variant: Variant, k: usize) -> Result<bool> {
    check_same_level(f, g)?;
    f.check_colors(k)?;
    g.check_colors(k)?;
    let ff = Flat::new(&f.trees);
    let gf = Flat::new(&g.trees);
    let fc = base_colors(&ff)?;
    let gc = base_colors(&gf)?;
    Ok(match variant {
        Variant::V0 => permutations(k).any(|p| leq_relabeled(&ff, &gf, &fc, &gc, &p)),
        Variant::V1 => all_maps(k).any(|p| leq_relabeled(&ff, &gf, &fc, &gc, &p)),
        Variant::V2 => leq_distinct(&ff, &gf, &fc, &gc, k),
    })
}

fn leq_relabeled(ff: &Flat<'_>, gf: &Flat<'_>, fc: &[Color], gc: &[Color], g: &[Color]) -> bool {
    let below = below_table(ff, gf, |i, j| fc[i] == g[gc[j] as usize]);
    ff.roots
        .iter()
        .all(|&r| gf.roots.iter().any(|&s| below[r * gf.len() + s]))
}

fn permutations(k: usize) -> impl Iterator<Item = Vec<Color>> {
    let mut out = Vec::new();
    let mut cur: Vec<Color> = (0..k as Color).collect();
    heap_permute(k, &mut cur, &mut out);
    out.into_iter()
}

fn heap_permute(n: usize, a: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
    if n <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..n - 1 {
        heap_permute(n - 1, a, out);
        if n.is_multiple_of(2) {
            a.swap(i, n - 1);
        } else {
            a.swap(0, n - 1);
        }
    }
    heap_permute(n - 1, a, out);
}

fn all_maps(k: usize) -> impl Iterator<Item = Vec<Color>> {
    let total = (k as u64).pow(k as u32);
    (0..total).map(move |mut code| {
        (0..k)
            .map(|_| {
                let c = (code % k as u64) as Color;
                code /= k as u64;
                c
            })
            .collect()
    })
}

/// `≤₂` search. The ancestor constraint for a node only depends on which
/// target colors were used by ancestors of each source color, so the
/// search is memoized on `(node, target, used-color matrix)`.
fn leq_distinct(ff: &Flat<'_>, gf: &Flat<'_>, fc: &[Color], gc: &[Color], k: usize) -> bool {
    assert!(k * k <= 64, "k too large for the ≤₂ search");
    let mut subtree: Vec<Vec<usize>> = vec![Vec::new(); gf.len()];
    for s in 0..gf.len() {
        let mut nodes = vec![s];
        for &c in &gf.children[s] {
            nodes.extend(subtree[c].iter().copied());
        }
        subtree[s] = nodes;
    }
    let mut memo: HashMap<(usize, usize, u64), bool> = HashMap::new();
    let all_g: Vec<usize> = (0..gf.len()).collect();
    ff.roots.iter().all(|&r| {
        all_g.iter().any(|&s| {
            place(r, s, 0, ff, fc, gc, k, &subtree, &mut memo)
        })
    })
}

#[allow(clippy::too_many_arguments)]
fn place(
    node: usize,
    target: usize,
    used: u64,
    ff: &Flat<'_>,
    fc: &[Color],
    gc: &[Color],
    k: usize,
    subtree: &[Vec<usize>],
    memo: &mut HashMap<(usize, usize, u64), bool>,
) -> bool {
    if let Some(&v) = memo.get(&(node, target, used)) {
        return v;
    }
    let src = fc[node] as usize;
    let dst = gc[target] as usize;
    let clash = (0..k).any(|a| a != src && used & (1u64 << (a * k + dst)) != 0);
    let ok = !clash && {
        let used = used | (1u64 << (src * k + dst));
        ff.children[node].iter().all(|&c| {
            subtree[target]
                .iter()
                .any(|&t| place(c, t, used, ff, fc, gc, k, subtree, memo))
        })
    };
    memo.insert((node, target, used), ok);
    ok
}
