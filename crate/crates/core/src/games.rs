//! Reduction games deciding `A ≤_CA B`.
//!
//! Each round player I feeds one letter to `A`; player II then either skips
//! or feeds one letter to `B`. II wins a play iff it feeds `B` infinitely
//! often and the two runs end up with the same color.
//!
//! Both acceptors are first put in normalized priority form, so a run's
//! color is the color of the largest priority ("level") seen infinitely
//! often. The winning condition then only depends on the pair of top
//! levels, and is compiled into a max-parity condition with the Zielonka
//! tree of that condition as memory. The parity game is solved with the
//! recursive Zielonka algorithm, which also yields positional strategies
//! on the product, i.e. finite-memory strategies on the arena.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph;
use crate::muller::{Acceptor, State};
use crate::Color;

/// Cap on Zielonka-tree nodes.
pub const MAX_TREE_NODES: usize = 200_000;
/// Cap on parity-game positions.
pub const MAX_POSITIONS: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }

    /// II wins even priorities.
    fn of_priority(p: u32) -> Player {
        if p.is_multiple_of(2) {
            Player::II
        } else {
            Player::I
        }
    }
}

/// A position of the reduction arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    /// I to move; `emitted` records whether II fed `B` in the last round.
    I { a: State, b: State, emitted: bool },
    /// II to move, after I's letter was read by `A`.
    II { a: State, b: State },
}

/// A move in the arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Letter(u8),
    Skip,
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Move::Letter(x) => write!(f, "{x}"),
            Move::Skip => f.write_str("skip"),
        }
    }
}

/// The arena of the reduction game between two acceptors, with its
/// condition on pairs of top levels.
#[derive(Clone, Debug)]
pub struct ReductionGame {
    a: Acceptor,
    b: Acceptor,
    /// Color of each level of `A` and `B`.
    a_colors: Vec<Color>,
    b_colors: Vec<Color>,
}

fn level_colors(acc: &Acceptor) -> Vec<Color> {
    let prios = acc.priorities();
    let top = prios.iter().map(|p| p.priority).max().unwrap_or(0) as usize;
    let mut colors = vec![0; top + 1];
    for p in prios {
        colors[p.priority as usize] = p.color;
    }
    colors
}

/// Builds the reduction game for `A ≤_CA B`.
pub fn build_game(a: &Acceptor, b: &Acceptor) -> Result<ReductionGame> {
    if a.k() != b.k() {
        return Err(Error::KMismatch(a.k(), b.k()));
    }
    let a = a.normalized();
    let b = b.normalized();
    Ok(ReductionGame {
        a_colors: level_colors(&a),
        b_colors: level_colors(&b),
        a,
        b,
    })
}

impl ReductionGame {
    pub fn left(&self) -> &Acceptor {
        &self.a
    }

    pub fn right(&self) -> &Acceptor {
        &self.b
    }

    /// Size of the full arena: `3·|A|·|B|` (I positions with and without a
    /// pending emission, and II positions).
    pub fn num_positions(&self) -> usize {
        3 * self.a.num_states() * self.b.num_states()
    }

    pub fn initial(&self) -> Position {
        Position::I {
            a: self.a.automaton().initial(),
            b: self.b.automaton().initial(),
            emitted: false,
        }
    }

    pub fn owner(&self, p: Position) -> Player {
        match p {
            Position::I { .. } => Player::I,
            Position::II { .. } => Player::II,
        }
    }

    pub fn moves(&self, p: Position) -> Vec<(Move, Position)> {
        match p {
            Position::I { a, b, .. } => (0..2)
                .map(|x| {
                    (
                        Move::Letter(x),
                        Position::II {
                            a: self.a.automaton().step(a, x),
                            b,
                        },
                    )
                })
                .collect(),
            Position::II { a, b } => {
                let mut out = vec![(Move::Skip, Position::I { a, b, emitted: false })];
                for y in 0..2 {
                    out.push((
                        Move::Letter(y),
                        Position::I {
                            a,
                            b: self.b.automaton().step(b, y),
                            emitted: true,
                        },
                    ));
                }
                out
            }
        }
    }

    /// Levels seen at a position: `A`'s current level on I positions, plus
    /// `B`'s when II just fed it.
    fn tokens(&self, p: Position) -> (Option<usize>, Option<usize>) {
        match p {
            Position::I { a, b, emitted } => (
                Some(self.a.priorities()[a].priority as usize),
                emitted.then(|| self.b.priorities()[b].priority as usize),
            ),
            Position::II { .. } => (None, None),
        }
    }

    /// The condition on top levels; `b` is `None` when II stops feeding `B`.
    pub fn ii_wins(&self, a: usize, b: Option<usize>) -> bool {
        b.is_some_and(|b| self.a_colors[a] == self.b_colors[b])
    }
}

#[derive(Clone, Debug)]
struct ZNode {
    a: usize,
    b: Option<usize>,
    winner: Player,
    depth: usize,
    parent: Option<usize>,
    children: Vec<usize>,
    first_leaf: usize,
}

/// Zielonka tree of the top-level condition. Every node is a box of
/// levels `{A ≤ a} ∪ {B ≤ b}`; children are the maximal sub-boxes won by
/// the other player.
/// Memo of Zielonka-tree children per box.
type BoxMemo = HashMap<(usize, Option<usize>), Vec<(usize, Option<usize>)>>;

#[derive(Clone, Debug)]
struct ZTree {
    nodes: Vec<ZNode>,
    height: usize,
}

impl ZTree {
    fn new(game: &ReductionGame) -> Result<ZTree> {
        let mut tree = ZTree {
            nodes: Vec::new(),
            height: 0,
        };
        let root = (game.a_colors.len() - 1, Some(game.b_colors.len() - 1));
        let mut memo: BoxMemo = HashMap::new();
        tree.grow(game, root, None, 0, &mut memo)?;
        Ok(tree)
    }

    fn grow(
        &mut self,
        game: &ReductionGame,
        (a, b): (usize, Option<usize>),
        parent: Option<usize>,
        depth: usize,
        memo: &mut BoxMemo,
    ) -> Result<usize> {
        if self.nodes.len() >= MAX_TREE_NODES {
            return Err(Error::ResourceLimit("Zielonka tree too large".into()));
        }
        let winner = if game.ii_wins(a, b) { Player::II } else { Player::I };
        let id = self.nodes.len();
        self.nodes.push(ZNode {
            a,
            b,
            winner,
            depth,
            parent,
            children: Vec::new(),
            first_leaf: id,
        });
        self.height = self.height.max(depth);
        let kids = memo
            .entry((a, b))
            .or_insert_with(|| maximal_flips(game, a, b, winner))
            .clone();
        for (i, kid) in kids.into_iter().enumerate() {
            let c = self.grow(game, kid, Some(id), depth + 1, memo)?;
            if i == 0 {
                self.nodes[id].first_leaf = self.nodes[c].first_leaf;
            }
            self.nodes[id].children.push(c);
        }
        Ok(id)
    }

    fn contains(&self, n: usize, token: Token) -> bool {
        let node = &self.nodes[n];
        match token {
            Token::A(l) => l <= node.a,
            Token::B(l) => node.b.is_some_and(|b| l <= b),
        }
    }

    /// Priority of a node: shallower is larger, parity names its winner.
    fn priority(&self, n: usize) -> u32 {
        let node = &self.nodes[n];
        2 * (self.height - node.depth) as u32 + u32::from(node.winner == Player::I)
    }

    /// Reads one token from leaf `leaf`.
    fn step(&self, leaf: usize, token: Token) -> (usize, u32) {
        let mut below = leaf;
        let mut n = leaf;
        while !self.contains(n, token) {
            below = n;
            n = self.nodes[n].parent.expect("the root holds every token");
        }
        if n == leaf {
            return (leaf, self.priority(n));
        }
        let kids = &self.nodes[n].children;
        let i = kids.iter().position(|&c| c == below).expect("child on path");
        let next = kids[(i + 1) % kids.len()];
        (self.nodes[next].first_leaf, self.priority(n))
    }
}

#[derive(Clone, Copy, Debug)]
enum Token {
    A(usize),
    B(usize),
}

fn maximal_flips(game: &ReductionGame, a: usize, b: Option<usize>, winner: Player) -> Vec<(usize, Option<usize>)> {
    let mut bs: Vec<Option<usize>> = vec![None];
    if let Some(b) = b {
        bs.extend((0..=b).map(Some));
    }
    let mut cands = Vec::new();
    for a2 in 0..=a {
        for &b2 in &bs {
            if (a2, b2) == (a, b) {
                continue;
            }
            let w = if game.ii_wins(a2, b2) { Player::II } else { Player::I };
            if w != winner {
                cands.push((a2, b2));
            }
        }
    }
    let le = |x: &(usize, Option<usize>), y: &(usize, Option<usize>)| x.0 <= y.0 && x.1 <= y.1;
    cands
        .iter()
        .filter(|c| !cands.iter().any(|d| d != *c && le(c, d)))
        .copied()
        .collect()
}

/// A max-parity game; even priorities are won by II.
#[derive(Clone, Debug, Default)]
pub struct ParityGame {
    pub owner: Vec<Player>,
    pub priority: Vec<u32>,
    pub succ: Vec<Vec<usize>>,
}

impl ParityGame {
    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (v, out) in self.succ.iter().enumerate() {
            for &w in out {
                pred[w].push(v);
            }
        }
        pred
    }

    /// Winning regions and positional winning strategies (a successor for
    /// every position of the winner that has a choice).
    pub fn solve(&self) -> ParitySolution {
        let pred = self.predecessors();
        let alive = vec![true; self.len()];
        let mut strategy = vec![usize::MAX; self.len()];
        let won_by_ii = zielonka(self, &pred, alive, &mut strategy);
        ParitySolution { won_by_ii, strategy }
    }

    /// Checks that in the graph restricted by `strategy` for `player`,
    /// every cycle reachable from `start` is won by `player`.
    pub fn strategy_wins(&self, player: Player, strategy: &[usize], start: usize) -> bool {
        let valid = |v: usize| self.succ[v].contains(&strategy[v]);
        let succ: Vec<Vec<usize>> = (0..self.len())
            .map(|v| match (self.owner[v] == player, valid(v)) {
                (false, _) => self.succ[v].clone(),
                (true, true) => vec![strategy[v]],
                (true, false) => Vec::new(),
            })
            .collect();
        let reach = graph::reachable(&succ, start);
        if (0..self.len()).any(|v| reach[v] && self.owner[v] == player && !valid(v)) {
            return false;
        }
        let mut bad: Vec<u32> = (0..self.len())
            .filter(|&v| reach[v] && Player::of_priority(self.priority[v]) != player)
            .map(|v| self.priority[v])
            .collect();
        bad.sort_unstable();
        bad.dedup();
        for p in bad {
            let allowed: Vec<bool> = (0..self.len()).map(|v| reach[v] && self.priority[v] <= p).collect();
            for comp in graph::sccs(&succ, &allowed) {
                if graph::is_cyclic(&comp, &succ) && comp.iter().any(|&v| self.priority[v] == p) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct ParitySolution {
    pub won_by_ii: Vec<bool>,
    /// Chosen successor for the winner's positions; `usize::MAX` elsewhere.
    pub strategy: Vec<usize>,
}

impl ParitySolution {
    pub fn winner(&self, v: usize) -> Player {
        if self.won_by_ii[v] {
            Player::II
        } else {
            Player::I
        }
    }
}

/// Attractor of `player` to `target` inside `alive`, recording attracting
/// moves in `strategy`.
fn attractor(
    g: &ParityGame,
    pred: &[Vec<usize>],
    alive: &[bool],
    target: &[usize],
    player: Player,
    strategy: &mut [usize],
) -> Vec<bool> {
    let mut inside = vec![false; g.len()];
    let mut count: HashMap<usize, usize> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &t in target {
        if !inside[t] {
            inside[t] = true;
            queue.push_back(t);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &v in &pred[w] {
            if !alive[v] || inside[v] {
                continue;
            }
            if g.owner[v] == player {
                inside[v] = true;
                strategy[v] = w;
                queue.push_back(v);
            } else {
                let left = count
                    .entry(v)
                    .or_insert_with(|| g.succ[v].iter().filter(|&&x| alive[x]).count());
                *left -= 1;
                if *left == 0 {
                    inside[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    inside
}

/// Recursive Zielonka on the subgame `alive`; returns II's winning region
/// (restricted to `alive`) and fills `strategy` for both players.
fn zielonka(g: &ParityGame, pred: &[Vec<usize>], alive: Vec<bool>, strategy: &mut [usize]) -> Vec<bool> {
    let nodes: Vec<usize> = (0..g.len()).filter(|&v| alive[v]).collect();
    let Some(p) = nodes.iter().map(|&v| g.priority[v]).max() else {
        return vec![false; g.len()];
    };
    let sigma = Player::of_priority(p);
    let top: Vec<usize> = nodes.iter().copied().filter(|&v| g.priority[v] == p).collect();
    let attr = attractor(g, pred, &alive, &top, sigma, strategy);
    let rest: Vec<bool> = (0..g.len()).map(|v| alive[v] && !attr[v]).collect();
    let sub_ii = zielonka(g, pred, rest.clone(), strategy);
    let opp_sub: Vec<usize> = (0..g.len())
        .filter(|&v| rest[v] && (sub_ii[v] != (sigma == Player::II)))
        .collect();
    if opp_sub.is_empty() {
        // σ wins everything; on the top positions any move inside will do.
        for &v in &top {
            if g.owner[v] == sigma {
                strategy[v] = *g.succ[v].iter().find(|&&w| alive[w]).expect("subgames have no dead ends");
            }
        }
        return (0..g.len()).map(|v| alive[v] && sigma == Player::II).collect();
    }
    let tau = sigma.opponent();
    let b = attractor(g, pred, &alive, &opp_sub, tau, strategy);
    let remain: Vec<bool> = (0..g.len()).map(|v| alive[v] && !b[v]).collect();
    let rem_ii = zielonka(g, pred, remain, strategy);
    (0..g.len())
        .map(|v| alive[v] && if b[v] { tau == Player::II } else { rem_ii[v] })
        .collect()
}

/// The parity game of a reduction game together with the position
/// bookkeeping needed to read strategies back.
pub struct CompiledGame {
    pub parity: ParityGame,
    /// `(arena position, memory leaf)` of each parity position.
    pub positions: Vec<(Position, usize)>,
    pub initial: usize,
}

impl ReductionGame {
    /// Product with the Zielonka-tree memory. A parity position is an arena
    /// position with the memory before its levels are read; its priority is
    /// the one emitted while reading them.
    pub fn compile(&self) -> Result<CompiledGame> {
        let tree = ZTree::new(self)?;
        let start = (self.initial(), tree.nodes[0].first_leaf);
        let mut index: HashMap<(Position, usize), usize> = HashMap::from([(start, 0)]);
        let mut positions = vec![start];
        let mut parity = ParityGame::default();
        let mut i = 0;
        while i < positions.len() {
            if positions.len() > MAX_POSITIONS {
                return Err(Error::ResourceLimit("reduction game too large".into()));
            }
            let (pos, leaf) = positions[i];
            let (ta, tb) = self.tokens(pos);
            let mut mem = leaf;
            let mut prio = 0;
            for t in ta.map(Token::A).into_iter().chain(tb.map(Token::B)) {
                let (next, p) = tree.step(mem, t);
                mem = next;
                prio = prio.max(p);
            }
            let mut out = Vec::new();
            for (_, next) in self.moves(pos) {
                let key = (next, mem);
                let id = *index.entry(key).or_insert_with(|| {
                    positions.push(key);
                    positions.len() - 1
                });
                out.push(id);
            }
            parity.owner.push(self.owner(pos));
            parity.priority.push(prio);
            parity.succ.push(out);
            i += 1;
        }
        Ok(CompiledGame {
            parity,
            positions,
            initial: 0,
        })
    }
}

/// Winner of a reduction game and a finite-memory strategy for it.
#[derive(Clone, Debug)]
pub struct GameResult {
    pub winner: Player,
    /// `(position, memory, move)` for every winner position reachable when
    /// the winner follows the strategy.
    pub strategy: Vec<(Position, usize, Move)>,
    /// The strategy passed the cycle check on the parity game.
    pub verified: bool,
}

/// Solves a reduction game.
pub fn solve(game: &ReductionGame) -> Result<GameResult> {
    let compiled = game.compile()?;
    let pg = &compiled.parity;
    let sol = pg.solve();
    let winner = sol.winner(compiled.initial);
    let verified = pg.strategy_wins(winner, &sol.strategy, compiled.initial);
    let restricted: Vec<Vec<usize>> = (0..pg.len())
        .map(|v| {
            if pg.owner[v] == winner {
                vec![sol.strategy[v]]
            } else {
                pg.succ[v].clone()
            }
        })
        .collect();
    let reach = graph::reachable(&restricted, compiled.initial);
    let mut strategy = Vec::new();
    for (v, &seen) in reach.iter().enumerate() {
        if seen && pg.owner[v] == winner {
            let (pos, mem) = compiled.positions[v];
            let target = compiled.positions[sol.strategy[v]].0;
            let mv = game
                .moves(pos)
                .into_iter()
                .find(|&(_, p)| p == target)
                .map(|(m, _)| m)
                .expect("strategy follows an arena move");
            strategy.push((pos, mem, mv));
        }
    }
    Ok(GameResult {
        winner,
        strategy,
        verified,
    })
}

/// `A ≤_CA B`: II wins the reduction game.
pub fn leq_ca(a: &Acceptor, b: &Acceptor) -> Result<bool> {
    let result = solve(&build_game(a, b)?)?;
    debug_assert!(result.verified, "solver strategy failed its own check");
    Ok(result.winner == Player::II)
}

/// Text dump of a strategy: one `position memory -> move` line each.
pub fn dump_strategy(game: &ReductionGame, result: &GameResult) -> String {
    let (na, nb) = (game.a.automaton(), game.b.automaton());
    let mut s = String::new();
    let _ = writeln!(s, "winner {}", if result.winner == Player::II { "II" } else { "I" });
    for (pos, mem, mv) in &result.strategy {
        let text = match *pos {
            Position::I { a, b, emitted } => {
                format!("I {} {} {}", na.name(a), nb.name(b), u8::from(emitted))
            }
            Position::II { a, b } => format!("II {} {}", na.name(a), nb.name(b)),
        };
        let _ = writeln!(s, "{text} m{mem} -> {mv}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::muller::Automaton;

    fn inf_ones() -> Acceptor {
        let aut = Automaton::from_table(vec![[0, 1], [0, 1]], 0).unwrap();
        Acceptor::from_cycle_fn(aut, 2, |d| u32::from(d.contains(&1))).unwrap()
    }

    fn dual(a: &Acceptor) -> Acceptor {
        let aut = a.automaton().clone();
        Acceptor::from_cycle_fn(aut, 2, |d| 1 - a.color_of(d).unwrap()).unwrap()
    }

    #[test]
    fn constants() {
        let c0 = Acceptor::constant(2, 0).unwrap();
        let c1 = Acceptor::constant(2, 1).unwrap();
        assert!(leq_ca(&c0, &c0).unwrap());
        assert!(!leq_ca(&c0, &c1).unwrap());
        let r = solve(&build_game(&c0, &c1).unwrap()).unwrap();
        assert_eq!(r.winner, Player::I);
        assert!(r.verified);
    }

    #[test]
    fn infinitely_many_ones_vs_dual() {
        let a = inf_ones();
        let d = dual(&a);
        assert!(leq_ca(&a, &a).unwrap());
        assert!(!leq_ca(&a, &d).unwrap());
        assert!(!leq_ca(&d, &a).unwrap());
        let c0 = Acceptor::constant(2, 0).unwrap();
        assert!(leq_ca(&c0, &a).unwrap());
        assert!(!leq_ca(&a, &c0).unwrap());
    }

    #[test]
    fn arena_formula() {
        let a = inf_ones();
        let g = build_game(&a, &dual(&a)).unwrap();
        assert_eq!(g.num_positions(), 3 * g.left().num_states() * g.right().num_states());
        for pos in [g.initial(), Position::II { a: 1, b: 0 }] {
            assert!(!g.moves(pos).is_empty());
        }
    }

    #[test]
    fn k_mismatch() {
        let a = Acceptor::constant(2, 0).unwrap();
        let b = Acceptor::constant(3, 0).unwrap();
        assert!(matches!(leq_ca(&a, &b), Err(Error::KMismatch(2, 3))));
    }

    #[test]
    fn parity_solver_small() {
        // 0 (II, prio 1) -> 1 (I, prio 2) -> 0 | 2 ; 2 (prio 3) self-loop
        let g = ParityGame {
            owner: vec![Player::II, Player::I, Player::II],
            priority: vec![1, 2, 3],
            succ: vec![vec![1], vec![0, 2], vec![2]],
        };
        let s = g.solve();
        assert_eq!(s.won_by_ii, vec![false, false, false]);
        assert!(g.strategy_wins(Player::I, &s.strategy, 0));
    }

    #[test]
    fn strategy_dump_lists_winner_moves() {
        let a = inf_ones();
        let g = build_game(&a, &a).unwrap();
        let r = solve(&g).unwrap();
        let text = dump_strategy(&g, &r);
        assert!(text.starts_with("winner II\n"));
        assert!(text.lines().skip(1).all(|l| l.starts_with("II ")));
    }
}
