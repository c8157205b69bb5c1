//! Deterministic Muller k-acceptors over `{0,1}`.
//!
//! A coloring is either an explicit table over the cycle set, or a
//! priority coloring: every state carries `(priority, color)` and a cycle
//! takes the color of its highest-priority state. Within one strongly
//! connected component, equal priorities must carry equal colors. Products
//! built by [`crate::builder`] are far too large for cycle enumeration, so
//! they always use priorities.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph;
use crate::Color;

pub type State = usize;
/// Sorted, duplicate-free.
pub type StateSet = Vec<State>;

/// Largest strongly connected component whose cycles are enumerated.
pub const MAX_CYCLE_SCC: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    names: Vec<String>,
    delta: Vec<[State; 2]>,
    initial: State,
}

impl Automaton {
    pub fn new(names: Vec<String>, delta: Vec<[State; 2]>, initial: State) -> Result<Automaton> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::Malformed("automaton has no states".into()));
        }
        if names.len() != n {
            return Err(Error::Malformed("one name per state required".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n || names.iter().any(|s| s.is_empty()) {
            return Err(Error::Malformed("state names must be distinct and nonempty".into()));
        }
        if initial >= n || delta.iter().flatten().any(|&t| t >= n) {
            return Err(Error::Malformed("state index out of range".into()));
        }
        Ok(Automaton { names, delta, initial })
    }

    /// States named `q0, q1, …`.
    pub fn from_table(delta: Vec<[State; 2]>, initial: State) -> Result<Automaton> {
        let names = (0..delta.len()).map(|i| format!("q{i}")).collect();
        Automaton::new(names, delta, initial)
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn name(&self, q: State) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn step(&self, q: State, letter: u8) -> State {
        self.delta[q][letter as usize]
    }

    pub fn run(&self, q: State, word: &[u8]) -> State {
        word.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn delta(&self) -> &[[State; 2]] {
        &self.delta
    }

    pub fn successors(&self) -> Vec<Vec<State>> {
        self.delta
            .iter()
            .map(|&[a, b]| if a == b { vec![a] } else { vec![a, b] })
            .collect()
    }

    pub fn reachable(&self) -> Vec<bool> {
        graph::reachable(&self.successors(), self.initial)
    }

    /// Reachable components that carry a cycle, sinks first.
    pub fn cyclic_sccs(&self) -> Vec<Vec<State>> {
        let succ = self.successors();
        graph::sccs(&succ, &self.reachable())
            .into_iter()
            .filter(|c| graph::is_cyclic(c, &succ))
            .collect()
    }
}

/// `u·v^ω` over `{0,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpWord {
    pub u: Vec<u8>,
    pub v: Vec<u8>,
}

impl UpWord {
    pub fn new(u: Vec<u8>, v: Vec<u8>) -> Result<UpWord> {
        if v.is_empty() {
            return Err(Error::Malformed("period of an ultimately periodic word must be nonempty".into()));
        }
        if u.iter().chain(&v).any(|&a| a > 1) {
            return Err(Error::AlphabetMismatch(2, 1 + *u.iter().chain(&v).max().unwrap_or(&0) as usize));
        }
        Ok(UpWord { u, v })
    }

    pub fn periodic(v: &[u8]) -> UpWord {
        UpWord::new(Vec::new(), v.to_vec()).expect("nonempty binary period")
    }

    /// The `n`-th letter.
    pub fn letter(&self, n: usize) -> u8 {
        if n < self.u.len() {
            self.u[n]
        } else {
            self.v[(n - self.u.len()) % self.v.len()]
        }
    }

    /// Drops the first `n` letters.
    pub fn shift(&self, n: usize) -> UpWord {
        if n <= self.u.len() {
            return UpWord::new(self.u[n..].to_vec(), self.v.clone()).expect("valid");
        }
        let r = (n - self.u.len()) % self.v.len();
        let mut v = self.v[r..].to_vec();
        v.extend_from_slice(&self.v[..r]);
        UpWord::new(Vec::new(), v).expect("valid")
    }
}

fn bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("letter {c:?} is not a bit"))),
        })
        .collect()
}

impl FromStr for UpWord {
    type Err = Error;

    /// `u,v` with `u` possibly empty.
    fn from_str(s: &str) -> Result<UpWord> {
        let (u, v) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse("expected u,v".into()))?;
        UpWord::new(bits(u.trim())?, bits(v.trim())?)
    }
}

impl fmt::Display for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.u.iter().chain(std::iter::once(&2)).chain(&self.v) {
            if *a == 2 {
                f.write_str(",")?;
            } else {
                write!(f, "{a}")?;
            }
        }
        Ok(())
    }
}

/// The induced subgraph on `set` is strongly connected and has an edge.
pub fn is_cycle(aut: &Automaton, set: &[State]) -> bool {
    if set.is_empty() {
        return false;
    }
    let inside = |q: State| set.binary_search(&q).is_ok();
    let walk = |forward: bool| {
        let mut seen = BTreeSet::from([set[0]]);
        let mut todo = vec![set[0]];
        while let Some(q) = todo.pop() {
            let next: Vec<State> = if forward {
                aut.delta[q].to_vec()
            } else {
                set.iter().copied().filter(|&p| aut.delta[p].contains(&q)).collect()
            };
            for t in next {
                if inside(t) && seen.insert(t) {
                    todo.push(t);
                }
            }
        }
        seen.len() == set.len()
    };
    let has_edge = set.len() > 1 || aut.delta[set[0]].contains(&set[0]);
    has_edge && walk(true) && walk(false)
}

/// The cycle set: every reachable state set realized as an infinity set.
/// Ordered by size, then lexicographically.
pub fn cycles(aut: &Automaton) -> Result<Vec<StateSet>> {
    let succ = aut.successors();
    let mut found: BTreeSet<StateSet> = BTreeSet::new();
    for comp in aut.cyclic_sccs() {
        if comp.len() > MAX_CYCLE_SCC {
            return Err(Error::ResourceLimit(format!(
                "component of {} states exceeds the cycle enumeration cap {MAX_CYCLE_SCC}",
                comp.len()
            )));
        }
        let mut todo = vec![comp];
        while let Some(set) = todo.pop() {
            if !found.insert(set.clone()) {
                continue;
            }
            for &drop in &set {
                let mut allowed = vec![false; succ.len()];
                for &q in &set {
                    allowed[q] = q != drop;
                }
                for sub in graph::sccs(&succ, &allowed) {
                    if graph::is_cyclic(&sub, &succ) && !found.contains(&sub) {
                        todo.push(sub);
                    }
                }
            }
        }
    }
    let mut out: Vec<StateSet> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// States visited infinitely often on `u·v^ω`.
pub fn infinity_set(aut: &Automaton, w: &UpWord) -> StateSet {
    let mut q = aut.run(aut.initial, &w.u);
    let mut seen: HashMap<State, usize> = HashMap::new();
    let mut starts = Vec::new();
    while !seen.contains_key(&q) {
        seen.insert(q, starts.len());
        starts.push(q);
        q = aut.run(q, &w.v);
    }
    let mut set = BTreeSet::new();
    for &s in &starts[seen[&q]..] {
        let mut p = s;
        for &a in &w.v {
            p = aut.step(p, a);
            set.insert(p);
        }
    }
    set.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prio {
    pub priority: u32,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coloring {
    Table(BTreeMap<StateSet, Color>),
    Priority(Vec<Prio>),
}

/// A deterministic Muller k-acceptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acceptor {
    aut: Automaton,
    k: usize,
    coloring: Coloring,
}

impl Acceptor {
    pub fn new(aut: Automaton, k: usize, coloring: Coloring) -> Result<Acceptor> {
        if k < 2 {
            return Err(Error::Malformed("k must be at least 2".into()));
        }
        match &coloring {
            Coloring::Table(table) => {
                let all = cycles(&aut)?;
                for (set, &c) in table {
                    if c as usize >= k {
                        return Err(Error::InvalidAcceptor(format!("color {c} out of range for k={k}")));
                    }
                    if all.binary_search_by(|x| x.len().cmp(&set.len()).then_with(|| x.cmp(set))).is_err() {
                        return Err(Error::InvalidAcceptor(format!(
                            "colored set {} is not a reachable cycle",
                            set_text(&aut, set)
                        )));
                    }
                }
                if let Some(missing) = all.iter().find(|d| !table.contains_key(*d)) {
                    return Err(Error::InvalidAcceptor(format!(
                        "cycle {} has no color",
                        set_text(&aut, missing)
                    )));
                }
            }
            Coloring::Priority(prios) => {
                if prios.len() != aut.num_states() {
                    return Err(Error::InvalidAcceptor("one priority per state required".into()));
                }
                if let Some(p) = prios.iter().find(|p| p.color as usize >= k) {
                    return Err(Error::InvalidAcceptor(format!("color {} out of range for k={k}", p.color)));
                }
                for comp in aut.cyclic_sccs() {
                    let mut seen: HashMap<u32, Color> = HashMap::new();
                    for &q in &comp {
                        let p = prios[q];
                        if *seen.entry(p.priority).or_insert(p.color) != p.color {
                            return Err(Error::InvalidAcceptor(format!(
                                "priority {} carries two colors in one component",
                                p.priority
                            )));
                        }
                    }
                }
            }
        }
        Ok(Acceptor { aut, k, coloring })
    }

    /// Colors every cycle through `color`.
    pub fn from_cycle_fn(aut: Automaton, k: usize, color: impl Fn(&[State]) -> Color) -> Result<Acceptor> {
        let table = cycles(&aut)?.into_iter().map(|d| {
            let c = color(&d);
            (d, c)
        });
        Acceptor::new(aut, k, Coloring::Table(table.collect()))
    }

    pub fn from_priorities(aut: Automaton, k: usize, prios: Vec<Prio>) -> Result<Acceptor> {
        Acceptor::new(aut, k, Coloring::Priority(prios))
    }

    /// The constant partition with value `c`.
    pub fn constant(k: usize, c: Color) -> Result<Acceptor> {
        let aut = Automaton::from_table(vec![[0, 0]], 0)?;
        Acceptor::new(aut, k, Coloring::Table(BTreeMap::from([(vec![0], c)])))
    }

    pub fn automaton(&self) -> &Automaton {
        &self.aut
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn num_states(&self) -> usize {
        self.aut.num_states()
    }

    /// Color of a cycle.
    pub fn color_of(&self, set: &[State]) -> Result<Color> {
        match &self.coloring {
            Coloring::Table(t) => t
                .get(set)
                .copied()
                .ok_or_else(|| Error::InvalidAcceptor(format!("{} is not a colored cycle", set_text(&self.aut, set)))),
            Coloring::Priority(p) => set
                .iter()
                .map(|&q| p[q])
                .max_by_key(|p| p.priority)
                .map(|p| p.color)
                .ok_or_else(|| Error::InvalidAcceptor("empty state set".into())),
        }
    }

    pub fn evaluate(&self, w: &UpWord) -> Result<Color> {
        self.color_of(&infinity_set(&self.aut, w))
    }

    /// Colors of reachable cycles.
    pub fn range(&self) -> Result<BTreeSet<Color>> {
        match &self.coloring {
            Coloring::Table(t) => Ok(t.values().copied().collect()),
            Coloring::Priority(_) => {
                let p = self.to_priority();
                let prios = p.priorities();
                let succ = p.aut.successors();
                let mut out = BTreeSet::new();
                // Every state of a cyclic component lies on some cycle whose
                // top state it is: the component of the states of priority
                // at most its own that contains it.
                for comp in p.aut.cyclic_sccs() {
                    for &q in &comp {
                        let mut allowed = vec![false; succ.len()];
                        for &r in &comp {
                            allowed[r] = prios[r].priority <= prios[q].priority;
                        }
                        let inner = graph::sccs(&succ, &allowed);
                        if inner.iter().any(|c| c.contains(&q) && graph::is_cyclic(c, &succ)) {
                            out.insert(prios[q].color);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Per-state priorities; panics on table colorings.
    pub fn priorities(&self) -> &[Prio] {
        match &self.coloring {
            Coloring::Priority(p) => p,
            Coloring::Table(_) => panic!("table coloring has no priorities"),
        }
    }

    pub fn is_priority(&self) -> bool {
        matches!(self.coloring, Coloring::Priority(_))
    }

    /// An equivalent priority acceptor: a latest-appearance record over the
    /// states for table colorings, then [`Acceptor::normalized`].
    pub fn to_priority(&self) -> Acceptor {
        let Coloring::Table(table) = &self.coloring else {
            return self.normalized();
        };
        let n = self.aut.num_states();
        let k = self.k as u32;
        let mut start: Vec<State> = vec![self.aut.initial];
        start.extend((0..n).filter(|&q| q != self.aut.initial));
        let mut index: HashMap<(Vec<State>, usize), usize> = HashMap::new();
        let mut states: Vec<(Vec<State>, usize)> = vec![(start.clone(), 0)];
        index.insert((start, 0), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let (rec, _) = states[i].clone();
            let mut row = [0; 2];
            for a in 0..2u8 {
                let q = self.aut.step(rec[0], a);
                let hit = rec.iter().position(|&p| p == q).expect("record is a permutation");
                let mut next = rec.clone();
                next.remove(hit);
                next.insert(0, q);
                let key = (next, hit);
                row[a as usize] = *index.entry(key.clone()).or_insert_with(|| {
                    states.push(key);
                    states.len() - 1
                });
            }
            delta.push(row);
            i += 1;
        }
        let prios = states
            .iter()
            .map(|(rec, hit)| {
                let mut set = rec[..=*hit].to_vec();
                set.sort_unstable();
                let color = table.get(&set).copied().unwrap_or(0);
                Prio {
                    priority: *hit as u32 * k + color,
                    color,
                }
            })
            .collect();
        let aut = Automaton::from_table(delta, 0).expect("valid record automaton");
        Acceptor::new(aut, self.k, Coloring::Priority(prios))
            .expect("record coloring is well formed")
            .normalized()
    }

    /// Canonical small priority acceptor for the same partition: reachable
    /// part, priorities compressed so that equal priorities carry equal
    /// colors globally, then Moore minimization and breadth-first state
    /// numbering.
    pub fn normalized(&self) -> Acceptor {
        if !self.is_priority() {
            return self.to_priority();
        }
        let reach = self.aut.reachable();
        let prios = self.priorities();
        let k = self.k as u32;
        let succ = self.aut.successors();
        let mut raw = vec![0u32; self.aut.num_states()];
        for comp in graph::sccs(&succ, &reach) {
            if !graph::is_cyclic(&comp, &succ) {
                continue;
            }
            let mut ps: Vec<Prio> = comp.iter().map(|&q| prios[q]).collect();
            ps.sort();
            ps.dedup_by_key(|p| p.priority);
            let mut level_of: HashMap<u32, u32> = HashMap::new();
            let mut level = 0;
            for (j, p) in ps.iter().enumerate() {
                if j > 0 && ps[j - 1].color != p.color {
                    level += 1;
                }
                level_of.insert(p.priority, level);
            }
            for &q in &comp {
                raw[q] = level_of[&prios[q].priority] * k + prios[q].color;
            }
        }
        // Transient states keep raw priority 0, i.e. color 0.
        let mut distinct: Vec<u32> = (0..raw.len()).filter(|&q| reach[q]).map(|q| raw[q]).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let mut rank: HashMap<u32, u32> = HashMap::new();
        let mut r = 0;
        for (j, &v) in distinct.iter().enumerate() {
            if j > 0 && distinct[j - 1] % k != v % k {
                r += 1;
            }
            rank.insert(v, r);
        }
        let out: Vec<Prio> = raw
            .iter()
            .map(|&v| Prio {
                priority: rank.get(&v).copied().unwrap_or(0),
                color: v % k,
            })
            .collect();
        minimize(&self.aut, &out, &reach, self.k)
    }
}

/// Moore partition refinement on `(priority, color)` outputs.
fn minimize(aut: &Automaton, out: &[Prio], reach: &[bool], k: usize) -> Acceptor {
    let states: Vec<State> = (0..aut.num_states()).filter(|&q| reach[q]).collect();
    let mut class: HashMap<State, usize> = HashMap::new();
    {
        let mut ids: HashMap<Prio, usize> = HashMap::new();
        for &q in &states {
            let fresh = ids.len();
            class.insert(q, *ids.entry(out[q]).or_insert(fresh));
        }
    }
    loop {
        let before = class.values().collect::<BTreeSet<_>>().len();
        let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
        let mut next = HashMap::new();
        for &q in &states {
            let sig = (class[&q], class[&aut.step(q, 0)], class[&aut.step(q, 1)]);
            let fresh = ids.len();
            next.insert(q, *ids.entry(sig).or_insert(fresh));
        }
        class = next;
        if ids.len() == before {
            break;
        }
    }
    let mut order: HashMap<usize, usize> = HashMap::new();
    let mut rep = Vec::new();
    let mut queue = VecDeque::from([aut.initial]);
    order.insert(class[&aut.initial], 0);
    rep.push(aut.initial);
    while let Some(q) = queue.pop_front() {
        for a in 0..2 {
            let t = aut.step(q, a);
            if let std::collections::hash_map::Entry::Vacant(e) = order.entry(class[&t]) {
                e.insert(rep.len());
                rep.push(t);
                queue.push_back(t);
            }
        }
    }
    let delta = rep
        .iter()
        .map(|&q| [order[&class[&aut.step(q, 0)]], order[&class[&aut.step(q, 1)]]])
        .collect();
    let prios = rep.iter().map(|&q| out[q]).collect();
    let aut = Automaton::from_table(delta, 0).expect("quotient automaton");
    Acceptor::new(aut, k, Coloring::Priority(prios)).expect("quotient keeps the coloring well formed")
}

fn set_text(aut: &Automaton, set: &[State]) -> String {
    let names: Vec<&str> = set.iter().map(|&q| aut.name(q)).collect();
    format!("{{{}}}", names.join(" "))
}

impl fmt::Display for Acceptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let aut = &self.aut;
        writeln!(f, "k {}", self.k)?;
        writeln!(f, "states {}", aut.names.join(" "))?;
        writeln!(f, "initial {}", aut.name(aut.initial))?;
        for (q, row) in aut.delta.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                writeln!(f, "trans {} {a} {}", aut.name(q), aut.name(t))?;
            }
        }
        match &self.coloring {
            Coloring::Table(t) => {
                let mut sets: Vec<(&StateSet, &Color)> = t.iter().collect();
                sets.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
                for (set, c) in sets {
                    writeln!(f, "color {} {c}", set_text(aut, set))?;
                }
            }
            Coloring::Priority(p) => {
                for (q, p) in p.iter().enumerate() {
                    writeln!(f, "prio {} {} {}", aut.name(q), p.priority, p.color)?;
                }
            }
        }
        Ok(())
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str, line: usize) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad {what} {s:?}")))
}

impl FromStr for Acceptor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Acceptor> {
        let mut k: Option<usize> = None;
        let mut names: Option<Vec<String>> = None;
        let mut initial: Option<String> = None;
        let mut trans: Vec<(usize, String, u8, String)> = Vec::new();
        let mut colors: Vec<(usize, Vec<String>, Color)> = Vec::new();
        let mut prios: Vec<(usize, String, u32, Color)> = Vec::new();
        let mut default: Option<Color> = None;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let words: Vec<&str> = rest.split_whitespace().collect();
            let arity = |n: usize| {
                if words.len() == n {
                    Ok(())
                } else {
                    Err(Error::Parse(format!("line {ln}: {key} expects {n} fields")))
                }
            };
            match key {
                "k" => {
                    arity(1)?;
                    k = Some(parse_num(words[0], "k", ln)?);
                }
                "states" => {
                    if words.is_empty() {
                        return Err(Error::Parse(format!("line {ln}: no states")));
                    }
                    names = Some(words.iter().map(|s| s.to_string()).collect());
                }
                "initial" => {
                    arity(1)?;
                    initial = Some(words[0].to_string());
                }
                "trans" => {
                    arity(3)?;
                    let a = match words[1] {
                        "0" => 0,
                        "1" => 1,
                        other => return Err(Error::AlphabetMismatch(2, parse_num::<usize>(other, "letter", ln)? + 1)),
                    };
                    trans.push((ln, words[0].into(), a, words[2].into()));
                }
                "color" => {
                    let open = rest.find('{');
                    let close = rest.find('}');
                    let (Some(o), Some(c)) = (open, close) else {
                        return Err(Error::Parse(format!("line {ln}: expected color {{q ...}} <int>")));
                    };
                    if c < o {
                        return Err(Error::Parse(format!("line {ln}: unbalanced braces")));
                    }
                    let set = rest[o + 1..c]
                        .split(|ch: char| ch.is_whitespace() || ch == ',')
                        .filter(|s| !s.is_empty())
                        .map(String::from)
                        .collect();
                    let col = parse_num(rest[c + 1..].trim(), "color", ln)?;
                    colors.push((ln, set, col));
                }
                "default" => {
                    arity(1)?;
                    default = Some(parse_num(words[0], "color", ln)?);
                }
                "prio" => {
                    arity(3)?;
                    prios.push((
                        ln,
                        words[0].into(),
                        parse_num(words[1], "priority", ln)?,
                        parse_num(words[2], "color", ln)?,
                    ));
                }
                other => return Err(Error::Parse(format!("line {ln}: unknown directive {other:?}"))),
            }
        }
        let k = k.ok_or_else(|| Error::Parse("missing k".into()))?;
        let names = names.ok_or_else(|| Error::Parse("missing states".into()))?;
        let lookup: HashMap<&str, State> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let find = |s: &str, ln: usize| {
            lookup
                .get(s)
                .copied()
                .ok_or_else(|| Error::Parse(format!("line {ln}: unknown state {s:?}")))
        };
        let initial = initial.ok_or_else(|| Error::Parse("missing initial".into()))?;
        let initial = find(&initial, 0)?;
        let mut delta: Vec<[Option<State>; 2]> = vec![[None; 2]; names.len()];
        for (ln, from, a, to) in &trans {
            let (p, q) = (find(from, *ln)?, find(to, *ln)?);
            if delta[p][*a as usize].replace(q).is_some() {
                return Err(Error::Malformed(format!("line {ln}: duplicate transition")));
            }
        }
        let delta = delta
            .iter()
            .enumerate()
            .map(|(q, row)| match row {
                [Some(a), Some(b)] => Ok([*a, *b]),
                _ => Err(Error::Malformed(format!("state {} lacks a transition", names[q]))),
            })
            .collect::<Result<Vec<_>>>()?;
        let aut = Automaton::new(names.clone(), delta, initial)?;
        if !prios.is_empty() {
            if !colors.is_empty() || default.is_some() {
                return Err(Error::Malformed("prio lines cannot be mixed with color lines".into()));
            }
            let mut table: Vec<Option<Prio>> = vec![None; names.len()];
            for (ln, q, p, c) in prios {
                let q = find(&q, ln)?;
                if table[q].replace(Prio { priority: p, color: c }).is_some() {
                    return Err(Error::Malformed(format!("line {ln}: duplicate prio")));
                }
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(q, p)| p.ok_or_else(|| Error::Malformed(format!("state {} lacks a prio line", names[q]))))
                .collect::<Result<Vec<_>>>()?;
            return Acceptor::new(aut, k, Coloring::Priority(table));
        }
        let mut table = BTreeMap::new();
        for (ln, set, c) in colors {
            let mut ids = set.iter().map(|s| find(s, ln)).collect::<Result<Vec<_>>>()?;
            ids.sort_unstable();
            ids.dedup();
            if table.insert(ids, c).is_some() {
                return Err(Error::Malformed(format!("line {ln}: cycle colored twice")));
            }
        }
        if let Some(d) = default {
            for cyc in cycles(&aut)? {
                table.entry(cyc).or_insert(d);
            }
        }
        Acceptor::new(aut, k, Coloring::Table(table))
    }
}
