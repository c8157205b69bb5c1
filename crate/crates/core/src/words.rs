//! Finite words under the scattered-subword and infix orders, and the
//! upward closure of a finite set of words as a minimal complete DFA.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// The symbols of an alphabet, in letter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn binary() -> Alphabet {
        Alphabet::from_symbols("01").expect("valid")
    }

    pub fn from_symbols(symbols: &str) -> Result<Alphabet> {
        let symbols: Vec<char> = symbols.chars().collect();
        if symbols.len() < 2 {
            return Err(Error::Malformed("alphabet needs at least two letters".into()));
        }
        let mut sorted = symbols.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != symbols.len() || symbols.iter().any(|c| c.is_whitespace() || *c == '-') {
            return Err(Error::Malformed("alphabet symbols must be distinct and printable".into()));
        }
        Ok(Alphabet { symbols })
    }

    /// Digits `0..n` for `n ≤ 10`, otherwise letters `a..`.
    pub fn of_size(n: usize) -> Result<Alphabet> {
        let symbols: String = if n <= 10 {
            (0..n).map(|i| char::from(b'0' + i as u8)).collect()
        } else if n <= 26 {
            (0..n).map(|i| char::from(b'a' + i as u8)).collect()
        } else {
            return Err(Error::Unsupported("alphabets larger than 26 letters".into()));
        };
        Alphabet::from_symbols(&symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Parses a word; `-` or the empty string is the empty word.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "-" {
            return Ok(Word::empty(self.len()));
        }
        let letters = text
            .chars()
            .map(|c| {
                self.symbols
                    .iter()
                    .position(|&s| s == c)
                    .map(|p| p as u8)
                    .ok_or_else(|| Error::Parse(format!("letter {c:?} not in alphabet")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(letters, self.len())
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "-".into();
        }
        w.letters.iter().map(|&l| self.symbols[l as usize]).collect()
    }

    pub fn symbols(&self) -> String {
        self.symbols.iter().collect()
    }

    /// Guesses the alphabet of free-standing words: binary digits, digits,
    /// or lowercase letters `a..` up to the largest one used.
    pub fn infer(words: &[&str]) -> Result<Alphabet> {
        let chars: Vec<char> = words.iter().flat_map(|w| w.chars()).filter(|&c| c != '-').collect();
        if chars.iter().all(|c| c.is_ascii_digit()) {
            let max = chars.iter().map(|&c| c as usize - '0' as usize).max().unwrap_or(1);
            Alphabet::of_size((max + 1).max(2))
        } else if chars.iter().all(|c| c.is_ascii_lowercase()) {
            let max = chars.iter().map(|&c| c as usize - 'a' as usize).max().unwrap_or(1);
            let n = (max + 1).max(2);
            Alphabet::from_symbols(&(0..n).map(|i| char::from(b'a' + i as u8)).collect::<String>())
        } else {
            Err(Error::Parse("cannot infer alphabet; declare it".into()))
        }
    }
}

/// A finite word over an alphabet of `alphabet` letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: usize,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: usize) -> Result<Word> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet) {
            return Err(Error::Malformed(format!("letter {bad} outside alphabet of size {alphabet}")));
        }
        Ok(Word { letters, alphabet })
    }

    pub fn empty(alphabet: usize) -> Word {
        Word {
            letters: Vec::new(),
            alphabet,
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("-");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn same_alphabet(u: &Word, v: &Word) -> Result<()> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch(u.alphabet, v.alphabet));
    }
    Ok(())
}

/// Length of the longest prefix of `u` embedded greedily into `v`.
fn greedy_progress(u: &[u8], v: &[u8]) -> usize {
    let mut i = 0;
    for &c in v {
        if i < u.len() && u[i] == c {
            i += 1;
        }
    }
    i
}

/// `u ≤* v`: `u` is a scattered subword of `v`.
pub fn subword_leq(u: &Word, v: &Word) -> Result<bool> {
    same_alphabet(u, v)?;
    Ok(greedy_progress(&u.letters, &v.letters) == u.len())
}

/// `u` occurs as a contiguous factor of `v`.
pub fn infix_leq(u: &Word, v: &Word) -> Result<bool> {
    same_alphabet(u, v)?;
    Ok(u.is_empty() || v.letters.windows(u.len()).any(|w| w == u.letters.as_slice()))
}

/// The ≤*-minimal members of `set`, deduplicated and sorted shortlex.
pub fn minimal_elements(set: &[Word]) -> Result<Vec<Word>> {
    let mut words: Vec<Word> = set.to_vec();
    if let Some(first) = words.first() {
        for w in &words {
            same_alphabet(first, w)?;
        }
    }
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.letters.cmp(&b.letters)));
    words.dedup();
    let mut out: Vec<Word> = Vec::new();
    // Shortlex order: a word can only be dominated by a shorter-or-equal one
    // already seen, and equal-length domination means equality.
    for w in words {
        if !out.iter().any(|m| greedy_progress(&m.letters, &w.letters) == m.len()) {
            out.push(w);
        }
    }
    Ok(out)
}

/// A complete deterministic finite acceptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: usize,
    pub initial: usize,
    /// `delta[q][a]`.
    pub delta: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let q = w.letters.iter().fold(self.initial, |q, &a| self.delta[q][a as usize]);
        self.accepting[q]
    }

    /// Moore partition refinement, then renumbering in BFS order from the
    /// initial state. Assumes every state is reachable.
    pub fn minimize(&self) -> Dfa {
        let n = self.num_states();
        let mut class: Vec<usize> = self.accepting.iter().map(|&a| usize::from(a)).collect();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let sig = (class[q], self.delta[q].iter().map(|&t| class[t]).collect());
                    let fresh = ids.len();
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            let stable = ids.len() == count_distinct(&class);
            class = next;
            if stable {
                break;
            }
        }
        let mut order: BTreeMap<usize, usize> = BTreeMap::new();
        let mut rep: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        order.insert(class[self.initial], 0);
        rep.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for &t in &self.delta[q] {
                if let std::collections::btree_map::Entry::Vacant(e) = order.entry(class[t]) {
                    e.insert(rep.len());
                    rep.push(t);
                    queue.push_back(t);
                }
            }
        }
        Dfa {
            alphabet: self.alphabet,
            initial: 0,
            delta: rep
                .iter()
                .map(|&q| self.delta[q].iter().map(|&t| order[&class[t]]).collect())
                .collect(),
            accepting: rep.iter().map(|&q| self.accepting[q]).collect(),
        }
    }

    /// Line format: `alphabet`, `states`, `initial`, `accept`, `trans` lines.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        s.push_str(&format!("alphabet {}\n", alphabet.symbols()));
        let names: Vec<String> = (0..self.num_states()).map(|q| format!("q{q}")).collect();
        s.push_str(&format!("states {}\n", names.join(" ")));
        s.push_str(&format!("initial q{}\n", self.initial));
        let acc: Vec<&str> = (0..self.num_states())
            .filter(|&q| self.accepting[q])
            .map(|q| names[q].as_str())
            .collect();
        s.push_str(&format!("accept {}\n", acc.join(" ")).replace(" \n", "\n"));
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                s.push_str(&format!(
                    "trans q{q} {} q{t}\n",
                    alphabet.symbols[a]
                ));
            }
        }
        s
    }
}

/// Reads a word-set file: one word per line, `#` comments, and an optional
/// leading `alphabet <symbols>` line. Without it the alphabet is inferred.
pub fn parse_word_set(text: &str) -> Result<(Alphabet, Vec<Word>)> {
    let mut lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let alphabet = match lines.first().and_then(|l| l.strip_prefix("alphabet ")) {
        Some(sym) => {
            let a = Alphabet::from_symbols(sym.trim())?;
            lines.remove(0);
            a
        }
        None => Alphabet::infer(&lines)?,
    };
    let words = lines.iter().map(|l| alphabet.parse(l)).collect::<Result<Vec<_>>>()?;
    Ok((alphabet, words))
}

fn count_distinct(v: &[usize]) -> usize {
    let mut w = v.to_vec();
    w.sort_unstable();
    w.dedup();
    w.len()
}

/// Minimal complete DFA for `{ v | ∃u ∈ set, u ≤* v }` over `alphabet`
/// letters. States of the raw product track, per generator, how much of
/// it has been embedded greedily.
pub fn upward_closure_automaton(set: &[Word], alphabet: usize) -> Result<Dfa> {
    for w in set {
        if w.alphabet != alphabet {
            return Err(Error::AlphabetMismatch(alphabet, w.alphabet));
        }
    }
    let gens = minimal_elements(set)?;
    let done = |p: &[usize]| gens.iter().zip(p).any(|(g, &i)| i == g.len());
    let start: Vec<usize> = vec![0; gens.len()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut states: Vec<Vec<usize>> = Vec::new();
    let mut delta: Vec<Vec<usize>> = Vec::new();
    // Once accepting, every state behaves alike; collapse them eagerly.
    let sink = |p: Vec<usize>| if done(&p) { vec![usize::MAX; p.len()] } else { p };
    let start = sink(start);
    index.insert(start.clone(), 0);
    states.push(start);
    let mut i = 0;
    while i < states.len() {
        let cur = states[i].clone();
        let mut row = Vec::with_capacity(alphabet);
        for a in 0..alphabet as u8 {
            let next: Vec<usize> = if cur.iter().all(|&x| x == usize::MAX) && !cur.is_empty() {
                cur.clone()
            } else {
                sink(
                    gens.iter()
                        .zip(&cur)
                        .map(|(g, &p)| if p < g.len() && g.letters[p] == a { p + 1 } else { p })
                        .collect(),
                )
            };
            let id = *index.entry(next.clone()).or_insert_with(|| {
                states.push(next);
                states.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = states
        .iter()
        .map(|p| !p.is_empty() && p.iter().all(|&x| x == usize::MAX))
        .collect();
    let raw = Dfa {
        alphabet,
        initial: 0,
        delta,
        accepting,
    };
    Ok(raw.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> Word {
        Alphabet::from_symbols("abc").unwrap().parse(s).unwrap()
    }

    #[test]
    fn subword_examples() {
        assert!(subword_leq(&ab("ab"), &ab("acb")).unwrap());
        assert!(!subword_leq(&ab("ba"), &ab("ab")).unwrap());
        assert!(subword_leq(&ab("-"), &ab("cab")).unwrap());
        assert!(subword_leq(&Word::empty(3), &Word::empty(3)).unwrap());
    }

    #[test]
    fn infix_examples() {
        assert!(infix_leq(&ab("ab"), &ab("aab")).unwrap());
        assert!(!infix_leq(&ab("aa"), &ab("aba")).unwrap());
        assert!(infix_leq(&ab("abc"), &ab("abc")).unwrap());
    }

    #[test]
    fn alphabet_mismatch() {
        let u = Word::new(vec![0], 2).unwrap();
        let v = Word::new(vec![0], 3).unwrap();
        assert!(matches!(subword_leq(&u, &v), Err(Error::AlphabetMismatch(2, 3))));
        assert!(Word::new(vec![2], 2).is_err());
        assert!(Alphabet::binary().parse("012").is_err());
    }

    #[test]
    fn minimal_examples() {
        let set = vec![ab("aa"), ab("ab"), ab("aab")];
        assert_eq!(minimal_elements(&set).unwrap(), vec![ab("aa"), ab("ab")]);
        assert_eq!(minimal_elements(&[ab("abc")]).unwrap(), vec![ab("abc")]);
        assert_eq!(minimal_elements(&[ab("b"), ab("a")]).unwrap(), vec![ab("a"), ab("b")]);
        assert_eq!(minimal_elements(&[ab("ab"), ab("ab")]).unwrap(), vec![ab("ab")]);
    }

    #[test]
    fn closure_examples() {
        let a = Alphabet::from_symbols("ab").unwrap();
        let dfa = upward_closure_automaton(&[a.parse("a").unwrap()], 2).unwrap();
        assert_eq!(dfa.num_states(), 2);
        assert!(dfa.accepts(&a.parse("bba").unwrap()));
        assert!(!dfa.accepts(&a.parse("bbb").unwrap()));
        let none = upward_closure_automaton(&[], 2).unwrap();
        assert_eq!(none.num_states(), 1);
        assert!(!none.accepts(&a.parse("ab").unwrap()));
        let all = upward_closure_automaton(&[Word::empty(2)], 2).unwrap();
        assert_eq!(all.num_states(), 1);
        assert!(all.accepts(&Word::empty(2)));
    }

    #[test]
    fn word_set_files() {
        let (a, ws) = parse_word_set("alphabet ab\n# gens\naab\n-\n").unwrap();
        assert_eq!(a.symbols(), "ab");
        assert_eq!(ws.len(), 2);
        assert!(ws[1].is_empty());
        let (a, ws) = parse_word_set("10\n0\n").unwrap();
        assert_eq!((a.len(), ws.len()), (2, 2));
        assert!(parse_word_set("alphabet ab\nabc\n").is_err());
    }

    #[test]
    fn render_is_stable() {
        let a = Alphabet::from_symbols("ab").unwrap();
        let dfa = upward_closure_automaton(&[a.parse("ab").unwrap()], 2).unwrap();
        let text = dfa.render(&a);
        assert_eq!(
            text,
            "alphabet ab\nstates q0 q1 q2\ninitial q0\naccept q2\n\
             trans q0 a q1\ntrans q0 b q0\ntrans q1 a q1\ntrans q1 b q2\n\
             trans q2 a q2\ntrans q2 b q2\n"
        );
    }
}
