//! Finite labeled forests and their iterated (nested-label) generalizations.
//!
//! A node label is either a base color `0..k` or a whole tree one level
//! down. Children are stored in a vector, but every comparison treats them
//! as a multiset.
//!
//! Text grammar:
//!
//! ```text
//! Forest := Tree ("," Tree)*
//! Tree   := Label ("(" Forest ")")?
//! Label  := INT | "[" Tree "]"
//! ```

mod canon;
mod enumerate;
mod ops;
mod order;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Color;

pub use canon::{canonical, canonical_tree, code_key};
pub use enumerate::{enumerate_upto, Enumerator};
pub use ops::{lift, op_oplus, op_p, op_plus, op_s, relabel, swap_dual};
pub use order::{equiv_h, leq_h, leq_tree, leq_variant, Packed, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Base(Color),
    Nested(Box<Tree>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub label: Label,
    pub children: Vec<Tree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Forest {
    pub trees: Vec<Tree>,
}

/// An element of the level-1 forests: a forest whose labels are k-labeled
/// trees. This is the degree invariant of a regular k-partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeInvariant(Forest);

impl Label {
    pub fn level(&self) -> usize {
        match self {
            Label::Base(_) => 0,
            Label::Nested(t) => 1 + t.label.level(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Label::Base(_) => 1,
            Label::Nested(t) => t.size(),
        }
    }

    pub fn max_color(&self) -> Color {
        match self {
            Label::Base(c) => *c,
            Label::Nested(t) => t.max_color(),
        }
    }

    pub fn nested(tree: Tree) -> Label {
        Label::Nested(Box::new(tree))
    }
}

impl Tree {
    pub fn leaf(label: Label) -> Tree {
        Tree {
            label,
            children: Vec::new(),
        }
    }

    pub fn color(c: Color) -> Tree {
        Tree::leaf(Label::Base(c))
    }

    pub fn new(label: Label, children: Vec<Tree>) -> Tree {
        Tree { label, children }
    }

    pub fn level(&self) -> usize {
        self.label.level()
    }

    /// Node count, where a node with a nested label weighs as much as the
    /// nodes of its label tree. Lifting a forest one level keeps its size.
    pub fn size(&self) -> usize {
        self.label.size() + self.children.iter().map(Tree::size).sum::<usize>()
    }

    /// Number of nodes at this level, ignoring label contents.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Tree::node_count).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| 1 + c.height()).max().unwrap_or(0)
    }

    pub fn max_color(&self) -> Color {
        self.children
            .iter()
            .map(Tree::max_color)
            .fold(self.label.max_color(), Color::max)
    }

    fn check_level(&self, level: usize) -> Result<()> {
        let own = self.label.level();
        if own != level {
            return Err(Error::LevelMismatch(level, own));
        }
        if let Label::Nested(t) = &self.label {
            t.check_level(level - 1)?;
        }
        self.children.iter().try_for_each(|c| c.check_level(level))
    }

    pub fn into_forest(self) -> Forest {
        Forest { trees: vec![self] }
    }
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Forest {
        Forest { trees }
    }

    pub fn single(tree: Tree) -> Forest {
        Forest { trees: vec![tree] }
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn size(&self) -> usize {
        self.trees.iter().map(Tree::size).sum()
    }

    pub fn node_count(&self) -> usize {
        self.trees.iter().map(Tree::node_count).sum()
    }

    /// Nesting level, checked to be uniform across every node.
    pub fn level(&self) -> Result<usize> {
        let Some(first) = self.trees.first() else {
            return Err(Error::Malformed("empty forest".into()));
        };
        let level = first.level();
        self.trees.iter().try_for_each(|t| t.check_level(level))?;
        Ok(level)
    }

    /// Smallest k (at least 2) for which every color is valid.
    pub fn min_k(&self) -> usize {
        let max = self.trees.iter().map(Tree::max_color).max().unwrap_or(0);
        (max as usize + 1).max(2)
    }

    pub fn check_colors(&self, k: usize) -> Result<()> {
        if self.min_k() > k {
            return Err(Error::Malformed(format!(
                "color {} out of range for k = {k}",
                self.min_k() - 1
            )));
        }
        Ok(())
    }

    /// Tree-theoretic rank: the height of the tallest tree.
    pub fn rank(&self) -> crate::ordinal::CnfOrdinal {
        let h = self.trees.iter().map(Tree::height).max().unwrap_or(0);
        crate::ordinal::CnfOrdinal::from(h as u64)
    }
}

impl DegreeInvariant {
    pub fn new(forest: Forest) -> Result<DegreeInvariant> {
        let level = forest.level()?;
        if level != 1 {
            return Err(Error::LevelMismatch(1, level));
        }
        Ok(DegreeInvariant(forest))
    }

    /// Accepts level-0 forests too, lifting them.
    pub fn from_any(forest: Forest) -> Result<DegreeInvariant> {
        match forest.level()? {
            0 => Ok(DegreeInvariant(lift(&forest))),
            1 => Ok(DegreeInvariant(forest)),
            l => Err(Error::LevelMismatch(1, l)),
        }
    }

    /// The minimal degree of the constant partition with value `c`.
    pub fn constant(c: Color) -> DegreeInvariant {
        DegreeInvariant(Forest::single(Tree::leaf(Label::nested(Tree::color(c)))))
    }

    pub fn forest(&self) -> &Forest {
        &self.0
    }

    pub fn into_forest(self) -> Forest {
        self.0
    }

    pub fn canonical(&self) -> DegreeInvariant {
        DegreeInvariant(canonical(&self.0))
    }
}

impl fmt::Display for DegreeInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Base(c) => write!(f, "{c}"),
            Label::Nested(t) => write!(f, "[{t}]"),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            write_list(f, &self.children)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.trees)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, trees: &[Tree]) -> fmt::Result {
    for (i, t) in trees.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl FromStr for Forest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Forest> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let forest = p.forest()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        forest.level()?;
        Ok(forest)
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        let mut forest: Forest = s.parse()?;
        if forest.trees.len() != 1 {
            return Err(Error::Parse("expected a single tree".into()));
        }
        Ok(forest.trees.pop().expect("one tree"))
    }
}

impl FromStr for DegreeInvariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<DegreeInvariant> {
        DegreeInvariant::from_any(s.parse()?)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("forest: {what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn forest(&mut self) -> Result<Forest> {
        let mut trees = vec![self.tree()?];
        while self.eat(b',') {
            trees.push(self.tree()?);
        }
        Ok(Forest { trees })
    }

    fn tree(&mut self) -> Result<Tree> {
        let label = self.label()?;
        let children = if self.eat(b'(') {
            let f = self.forest()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            f.trees
        } else {
            Vec::new()
        };
        Ok(Tree { label, children })
    }

    fn label(&mut self) -> Result<Label> {
        if self.eat(b'[') {
            let t = self.tree()?;
            if !self.eat(b']') {
                return Err(self.err("expected ']'"));
            }
            return Ok(Label::nested(t));
        }
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected label"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("digits");
        text.parse()
            .map(Label::Base)
            .map_err(|_| self.err("color out of range"))
    }
}
