//! Acceptors for the operations `pᵢ`, `qᵢ`, `+`, `⊕` on regular
//! k-partitions, and the canonical acceptor `ρ(T)` of a degree invariant.
//!
//! Every result is a normalized priority acceptor (see
//! [`Acceptor::normalized`]). Products only keep reachable states, and a
//! product state inherits the priority of the component state it
//! simulates, which is sound because no cycle mixes two components.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::forest::{DegreeInvariant, Label, Tree};
use crate::muller::{Acceptor, Automaton, Prio, State, UpWord};
use crate::Color;

/// The blocks coding `0`, `1`, `2` for `qᵢ`.
pub const BLOCKS: [[u8; 6]; 3] = [[1, 1, 0, 0, 0, 0], [1, 1, 0, 1, 0, 0], [1, 1, 0, 0, 1, 0]];

/// Breadth-first exploration of a product from `init`.
fn explore<S: Clone + Eq + Hash>(
    init: S,
    k: usize,
    step: impl Fn(&S, u8) -> S,
    out: impl Fn(&S) -> Prio,
) -> Acceptor {
    let mut index: HashMap<S, State> = HashMap::from([(init.clone(), 0)]);
    let mut states = vec![init];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = [0; 2];
        for a in 0..2u8 {
            let t = step(&states[i], a);
            row[a as usize] = match index.get(&t) {
                Some(&id) => id,
                None => {
                    states.push(t.clone());
                    index.insert(t, states.len() - 1);
                    states.len() - 1
                }
            };
        }
        delta.push(row);
        i += 1;
    }
    let prios = states.iter().map(out).collect();
    let aut = Automaton::from_table(delta, 0).expect("explored automaton");
    Acceptor::from_priorities(aut, k, prios)
        .expect("product coloring is well formed")
        .normalized()
}

fn check_color(i: Color, k: usize) -> Result<()> {
    if i as usize >= k {
        return Err(Error::Malformed(format!("color {i} out of range for k={k}")));
    }
    Ok(())
}

fn same_k(a: &Acceptor, b: &Acceptor) -> Result<()> {
    if a.k() != b.k() {
        return Err(Error::KMismatch(a.k(), b.k()));
    }
    Ok(())
}

/// `pᵢ(A)`: `0^ω ↦ i`, `0ⁿ1η ↦ A(η)`.
pub fn build_p(i: Color, a: &Acceptor) -> Result<Acceptor> {
    check_color(i, a.k())?;
    let a = a.normalized();
    let (aut, pa) = (a.automaton(), a.priorities());
    // None is the waiting state.
    Ok(explore(
        None,
        a.k(),
        |s: &Option<State>, x| match s {
            None if x == 0 => None,
            None => Some(aut.initial()),
            Some(q) => Some(aut.step(*q, x)),
        },
        |s| match s {
            None => Prio { priority: 0, color: i },
            Some(q) => pa[*q],
        },
    ))
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum QState {
    /// Inside a block after reading `prefix` (its bits, most recent last),
    /// simulating the inner acceptor at `q`.
    Parse { prefix: Vec<u8>, q: State },
    /// A `2`-block just ended; the inner acceptor restarts.
    Reset,
    Sink,
}

/// `qᵢ(A)`: the input is read as a stream of the blocks in [`BLOCKS`].
/// Broken framing or infinitely many `2`-blocks give `i`; otherwise `A`
/// reads the bits decoded after the last `2`-block.
pub fn build_q(i: Color, a: &Acceptor) -> Result<Acceptor> {
    check_color(i, a.k())?;
    let a = a.normalized();
    let (aut, pa) = (a.automaton(), a.priorities());
    let top = pa.iter().map(|p| p.priority).max().unwrap_or(0) + 1;
    let step = |s: &QState, x: u8| {
        let (mut prefix, q) = match s {
            QState::Sink => return QState::Sink,
            QState::Reset => (Vec::new(), aut.initial()),
            QState::Parse { prefix, q } => (prefix.clone(), *q),
        };
        prefix.push(x);
        if !BLOCKS.iter().any(|b| b.starts_with(&prefix)) {
            return QState::Sink;
        }
        match BLOCKS.iter().position(|b| b[..] == prefix[..]) {
            Some(2) => QState::Reset,
            Some(bit) => QState::Parse {
                prefix: Vec::new(),
                q: aut.step(q, bit as u8),
            },
            None => QState::Parse { prefix, q },
        }
    };
    Ok(explore(
        QState::Parse {
            prefix: Vec::new(),
            q: aut.initial(),
        },
        a.k(),
        step,
        |s| match s {
            QState::Parse { q, .. } => pa[*q],
            QState::Reset => Prio { priority: top, color: i },
            QState::Sink => Prio { priority: 0, color: i },
        },
    ))
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum PlusState {
    /// Next letter is at an even position.
    Even(State),
    /// Next letter is at an odd position and must be 0 to stay with `A`.
    Odd(State),
    Second(State),
}

/// `A + B`: `A` reads the even positions while every odd position is 0;
/// the first odd 1 hands the rest of the input to `B`.
pub fn build_plus(a: &Acceptor, b: &Acceptor) -> Result<Acceptor> {
    same_k(a, b)?;
    let (a, b) = (a.normalized(), b.normalized());
    let (aa, ab) = (a.automaton(), b.automaton());
    let (pa, pb) = (a.priorities(), b.priorities());
    Ok(explore(
        PlusState::Even(aa.initial()),
        a.k(),
        |s, x| match *s {
            PlusState::Even(q) => PlusState::Odd(aa.step(q, x)),
            PlusState::Odd(q) if x == 0 => PlusState::Even(q),
            PlusState::Odd(_) => PlusState::Second(ab.initial()),
            PlusState::Second(q) => PlusState::Second(ab.step(q, x)),
        },
        |s| match *s {
            PlusState::Even(q) | PlusState::Odd(q) => pa[q],
            PlusState::Second(q) => pb[q],
        },
    ))
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum SumState {
    /// `j` ones read so far.
    Select(usize),
    In(usize, State),
    Fallback,
}

/// `⊕` of `n ≥ 1` acceptors: `1ʲ0η ↦ Aⱼ(η)` for `j < n`; inputs starting
/// with `1ⁿ` take the value of `A₀` on `0^ω`.
pub fn build_oplus(parts: &[Acceptor]) -> Result<Acceptor> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Malformed("⊕ of an empty list".into()))?;
    for p in parts {
        same_k(first, p)?;
    }
    let parts: Vec<Acceptor> = parts.iter().map(Acceptor::normalized).collect();
    let fallback = parts[0].evaluate(&UpWord::periodic(&[0]))?;
    let n = parts.len();
    Ok(explore(
        SumState::Select(0),
        first.k(),
        |s, x| match *s {
            SumState::Select(j) if x == 0 => SumState::In(j, parts[j].automaton().initial()),
            SumState::Select(j) if j + 1 < n => SumState::Select(j + 1),
            SumState::Select(_) | SumState::Fallback => SumState::Fallback,
            SumState::In(j, q) => SumState::In(j, parts[j].automaton().step(q, x)),
        },
        |s| match *s {
            SumState::Select(_) => Prio { priority: 0, color: 0 },
            SumState::In(j, q) => parts[j].priorities()[q],
            SumState::Fallback => Prio {
                priority: 0,
                color: fallback,
            },
        },
    ))
}

/// `⊕` without the selector prefix when there is a single part.
fn join(mut parts: Vec<Acceptor>) -> Result<Acceptor> {
    if parts.len() == 1 {
        return Ok(parts.pop().expect("one part"));
    }
    build_oplus(&parts)
}

/// `ν` of a level-0 tree: a leaf `i` is the constant `i`, a node `i` with
/// children is `qᵢ` of the join of its children.
pub fn build_nu(t: &Tree, k: usize) -> Result<Acceptor> {
    let Label::Base(i) = t.label else {
        return Err(Error::LevelMismatch(0, t.level()));
    };
    check_color(i, k)?;
    if t.children.is_empty() {
        return Ok(Acceptor::constant(k, i)?.normalized());
    }
    let kids = t.children.iter().map(|c| build_nu(c, k)).collect::<Result<Vec<_>>>()?;
    build_q(i, &join(kids)?)
}

fn rho_tree(t: &Tree, k: usize) -> Result<Acceptor> {
    let Label::Nested(q) = &t.label else {
        return Err(Error::LevelMismatch(1, 0));
    };
    let head = build_nu(q, k)?;
    if t.children.is_empty() {
        return Ok(head);
    }
    let kids = t.children.iter().map(|c| rho_tree(c, k)).collect::<Result<Vec<_>>>()?;
    build_plus(&head, &join(kids)?)
}

/// `ρ(T)`: a Muller k-acceptor whose degree is `T`.
pub fn build_rho(t: &DegreeInvariant, k: usize) -> Result<Acceptor> {
    t.forest().check_colors(k)?;
    let roots = t
        .forest()
        .trees
        .iter()
        .map(|r| rho_tree(r, k))
        .collect::<Result<Vec<_>>>()?;
    join(roots)
}
