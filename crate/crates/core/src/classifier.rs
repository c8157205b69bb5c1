//! Degrees of Muller k-acceptors, level membership, and ordinal degrees
//! for k = 2.
//!
//! The degree is read off the component structure of a normalized
//! priority acceptor. A cyclic component `S` gets the k-labeled tree
//! `c(S)(T(S₁), …)`, where `c(S)` is the color of the top priority in `S`
//! and the `Sᵢ` are the cyclic components left after deleting the
//! top-priority states. Components are then arranged by reachability, each
//! one a node `s(T(S))` above the components that can follow it.
//!
//! [`degree_by_search`] instead enumerates canonical invariants and
//! compares their canonical acceptors with reduction games; the two agree
//! wherever the search is affordable.

use std::collections::HashMap;

use crate::builder::build_rho;
use crate::error::{Error, Result};
use crate::forest::{canonical, enumerate_upto, leq_h, swap_dual, DegreeInvariant, Forest, Label, Tree};
use crate::games::leq_ca;
use crate::graph;
use crate::muller::{Acceptor, State};
use crate::ordinal::CnfOrdinal;

/// Default size cap for [`degree_by_search`].
pub const DEFAULT_SEARCH_CAP: usize = 6;

fn inner_tree(acc: &Acceptor, succ: &[Vec<State>], comp: &[State]) -> Tree {
    let prios = acc.priorities();
    let top = comp.iter().map(|&q| prios[q].priority).max().expect("nonempty component");
    let color = prios[comp.iter().copied().find(|&q| prios[q].priority == top).expect("top state")].color;
    let mut allowed = vec![false; succ.len()];
    for &q in comp {
        allowed[q] = prios[q].priority < top;
    }
    let children = graph::sccs(succ, &allowed)
        .into_iter()
        .filter(|c| graph::is_cyclic(c, succ))
        .map(|c| inner_tree(acc, succ, &c))
        .collect();
    Tree::new(Label::Base(color), children)
}

/// The canonical degree invariant of an acceptor.
pub fn degree(acc: &Acceptor) -> Result<DegreeInvariant> {
    let acc = acc.normalized();
    let aut = acc.automaton();
    let succ = aut.successors();
    let comps = graph::sccs(&succ, &aut.reachable());
    let mut comp_of = vec![usize::MAX; succ.len()];
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            comp_of[q] = i;
        }
    }
    // Tarjan lists sinks first, so successors are always done earlier.
    let mut forests: Vec<Vec<Tree>> = Vec::with_capacity(comps.len());
    for (i, comp) in comps.iter().enumerate() {
        let mut next: Vec<usize> = comp
            .iter()
            .flat_map(|&q| succ[q].iter().map(|&t| comp_of[t]))
            .filter(|&j| j != i)
            .collect();
        next.sort_unstable();
        next.dedup();
        let below: Vec<Tree> = next.iter().flat_map(|&j| forests[j].iter().cloned()).collect();
        let trees = if graph::is_cyclic(comp, &succ) {
            let label = canonical(&Forest::single(inner_tree(&acc, &succ, comp)));
            let label = label.trees.into_iter().next().expect("a tree stays a tree");
            vec![Tree::new(Label::nested(label), below)]
        } else {
            below
        };
        forests.push(canonical(&Forest::new(trees)).trees);
    }
    let root = comp_of[aut.initial()];
    DegreeInvariant::new(Forest::new(forests[root].clone()))
}

/// The first canonical invariant, in enumeration order, whose canonical
/// acceptor is game-equivalent to `acc`. Invariants above `cap` nodes are
/// not tried.
pub fn degree_by_search(acc: &Acceptor, cap: usize) -> Result<DegreeInvariant> {
    for f in enumerate_upto(1, acc.k(), cap) {
        let t = DegreeInvariant::new(f)?;
        let b = build_rho(&t, acc.k())?;
        if leq_ca(acc, &b)? && leq_ca(&b, acc)? {
            return Ok(t);
        }
    }
    Err(Error::ResourceLimit(format!(
        "no invariant with at most {cap} nodes matches"
    )))
}

/// `A ≤_DA B` through the invariants.
pub fn leq_da(a: &Acceptor, b: &Acceptor) -> Result<bool> {
    if a.k() != b.k() {
        return Err(Error::KMismatch(a.k(), b.k()));
    }
    leq_h(degree(a)?.forest(), degree(b)?.forest())
}

/// `A` lies in the level `ℒ(T)`: its degree is `≤_h T`.
pub fn level_member(acc: &Acceptor, t: &DegreeInvariant) -> Result<bool> {
    t.forest().check_colors(acc.k())?;
    leq_h(degree(acc)?.forest(), t.forest())
}

/// Position of a degree in the Wagner ordering of 2-partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalDegree {
    pub ordinal: CnfOrdinal,
    pub self_dual: bool,
}

/// Ordinal degree of a 2-acceptor.
pub fn ordinal_degree_k2(acc: &Acceptor) -> Result<OrdinalDegree> {
    if acc.k() != 2 {
        return Err(Error::KMismatch(2, acc.k()));
    }
    ordinal_of_invariant(&degree(acc)?)
}

/// Length and top color of a label, which for k = 2 is an alternating chain.
fn chain(label: &Label) -> Result<(usize, u32)> {
    let Label::Nested(t) = label else {
        return Err(Error::LevelMismatch(1, 0));
    };
    let mut n = 1;
    let mut node: &Tree = t;
    let top = match node.label {
        Label::Base(c) => c,
        Label::Nested(_) => return Err(Error::LevelMismatch(1, 2)),
    };
    while let [child] = node.children.as_slice() {
        n += 1;
        node = child;
    }
    if !node.children.is_empty() {
        return Err(Error::Unsupported("label is not a chain; is the invariant canonical over 2 colors?".into()));
    }
    Ok((n, top))
}

fn omega_pow(n: usize) -> CnfOrdinal {
    CnfOrdinal::omega_pow(CnfOrdinal::finite(n as u64))
}

/// Index of a canonical non-self-dual tree: `λ + m` stands for the pair of
/// dual degrees at rank `λ + 2m`.
fn tree_index(t: &Tree) -> Result<CnfOrdinal> {
    let (n, _) = chain(&t.label)?;
    let step = omega_pow(n - 1);
    match t.children.as_slice() {
        [] if n == 1 => Ok(CnfOrdinal::zero()),
        [] => Ok(step),
        [child] => Ok(tree_index(child)?.add(&step)),
        [x, y] => {
            let (ix, iy) = (tree_index(x)?, tree_index(y)?);
            let dual = swap_dual(&Forest::single(x.clone()));
            if ix != iy || !crate::forest::equiv_h(&dual, &Forest::single(y.clone()))? {
                return Err(Error::Unsupported("children are not a dual pair".into()));
            }
            Ok(ix.add(&step))
        }
        _ => Err(Error::Unsupported("more than two incomparable subtrees".into())),
    }
}

/// `λ + m ↦ λ + 2m`.
fn rank_of_index(i: &CnfOrdinal) -> CnfOrdinal {
    let terms: Vec<(CnfOrdinal, num_bigint::BigUint)> =
        i.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    match terms.split_last() {
        Some(((e, c), rest)) if e.is_zero() => {
            let lambda = CnfOrdinal::from_terms(rest.to_vec()).expect("prefix of a normal form");
            lambda.add(&CnfOrdinal::finite(c * 2u32))
        }
        _ => i.clone(),
    }
}

/// Ordinal rank of a canonical 2-colored invariant in the quotient order.
pub fn ordinal_of_invariant(t: &DegreeInvariant) -> Result<OrdinalDegree> {
    t.forest().check_colors(2)?;
    let f = canonical(t.forest());
    match f.trees.as_slice() {
        [one] => Ok(OrdinalDegree {
            ordinal: rank_of_index(&tree_index(one)?),
            self_dual: false,
        }),
        [x, y] => {
            let (ix, iy) = (tree_index(x)?, tree_index(y)?);
            if ix != iy {
                return Err(Error::Unsupported("forest roots are not a dual pair".into()));
            }
            Ok(OrdinalDegree {
                ordinal: rank_of_index(&ix).add(&CnfOrdinal::one()),
                self_dual: true,
            })
        }
        _ => Err(Error::Unsupported("more than two incomparable roots".into())),
    }
}

/// Memoizes [`degree`] by acceptor text, for repeated queries.
#[derive(Default)]
pub struct DegreeCache {
    seen: HashMap<String, DegreeInvariant>,
}

impl DegreeCache {
    pub fn degree(&mut self, acc: &Acceptor) -> Result<DegreeInvariant> {
        let key = acc.to_string();
        if let Some(d) = self.seen.get(&key) {
            return Ok(d.clone());
        }
        let d = degree(acc)?;
        self.seen.insert(key, d.clone());
        Ok(d)
    }
}
