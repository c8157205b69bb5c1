//! The operations ⊕, +, pᵢ and s, plus relabelings.

use super::{Forest, Label, Tree};
use crate::error::{Error, Result};
use crate::Color;

fn same_level(f: &Forest, g: &Forest) -> Result<usize> {
    let (a, b) = (f.level()?, g.level()?);
    if a != b {
        return Err(Error::LevelMismatch(a, b));
    }
    Ok(a)
}

/// Disjoint union.
pub fn op_oplus(f: &Forest, g: &Forest) -> Result<Forest> {
    same_level(f, g)?;
    let mut trees = f.trees.clone();
    trees.extend(g.trees.iter().cloned());
    Ok(Forest { trees })
}

/// `F + G`: a copy of `G` hangs below every leaf of `F`.
pub fn op_plus(f: &Forest, g: &Forest) -> Result<Forest> {
    same_level(f, g)?;
    fn graft(t: &Tree, g: &[Tree]) -> Tree {
        if t.children.is_empty() {
            Tree::new(t.label.clone(), g.to_vec())
        } else {
            Tree::new(
                t.label.clone(),
                t.children.iter().map(|c| graft(c, g)).collect(),
            )
        }
    }
    Ok(Forest {
        trees: f.trees.iter().map(|t| graft(t, &g.trees)).collect(),
    })
}

/// The color `i` as a label at the given level (`s(s(…s(i)))`).
pub fn color_label(i: Color, level: usize) -> Label {
    let mut label = Label::Base(i);
    for _ in 0..level {
        label = Label::nested(Tree::leaf(label));
    }
    label
}

/// `pᵢ(F)`: a new root with color `i` above the trees of `F`.
pub fn op_p(i: Color, f: &Forest) -> Result<Tree> {
    let level = f.level()?;
    Ok(Tree::new(color_label(i, level), f.trees.clone()))
}

/// `s(T)`: the singleton tree labeled by `T`, one level up.
pub fn op_s(t: &Tree) -> Tree {
    Tree::leaf(Label::nested(t.clone()))
}

/// Raises a forest by one level, reading each color `i` as `s(i)`.
pub fn lift(f: &Forest) -> Forest {
    fn go(t: &Tree) -> Tree {
        let label = match &t.label {
            Label::Base(c) => Label::nested(Tree::color(*c)),
            Label::Nested(inner) => Label::nested(go(inner)),
        };
        Tree::new(label, t.children.iter().map(go).collect())
    }
    Forest {
        trees: f.trees.iter().map(go).collect(),
    }
}

/// Applies `g` to every base color at every nesting level.
pub fn relabel(f: &Forest, g: &[Color]) -> Forest {
    fn go(t: &Tree, g: &[Color]) -> Tree {
        let label = match &t.label {
            Label::Base(c) => Label::Base(g[*c as usize]),
            Label::Nested(inner) => Label::nested(go(inner, g)),
        };
        Tree::new(label, t.children.iter().map(|c| go(c, g)).collect())
    }
    Forest {
        trees: f.trees.iter().map(|t| go(t, g)).collect(),
    }
}

/// Swaps colors 0 and 1 (the dual of a 2-labeled forest).
pub fn swap_dual(f: &Forest) -> Forest {
    relabel(f, &[1, 0])
}
