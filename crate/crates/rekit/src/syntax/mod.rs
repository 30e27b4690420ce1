//! Regular-expression syntax trees.
//!
//! [`Regex`] is the plain tree over alphabet [`Symbol`]s; [`MarkedRegex`] is
//! the same tree with every letter occurrence tagged by its 1-based position
//! counted left to right. Structural equality (`==`) is the equality used for
//! set membership everywhere else in the crate.

mod parser;
mod rewrite;
mod snf;

pub use parser::{infer_alphabet, parse, ParseError, ParseErrorKind};

use crate::alphabet::{Alphabet, Symbol};

/// A regular expression over letters of type `L`.
///
/// `L` is [`Symbol`] for ordinary expressions and [`MarkedLetter`] for
/// position-marked ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regex<L = Symbol> {
    Empty,
    Epsilon,
    Letter(L),
    Union(Box<Regex<L>>, Box<Regex<L>>),
    Concat(Box<Regex<L>>, Box<Regex<L>>),
    Star(Box<Regex<L>>),
}

/// A letter occurrence together with its position index (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedLetter {
    pub symbol: Symbol,
    pub position: usize,
}

/// A regular expression whose letters carry position indices.
pub type MarkedRegex = Regex<MarkedLetter>;

/// The three size measures of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measures {
    /// Ordinary length: symbols of the minimally parenthesized rendering,
    /// parentheses included, concatenation operator not written.
    pub size: usize,
    /// Number of letter occurrences.
    pub alph: usize,
    /// Number of syntax-tree nodes.
    pub rpn: usize,
}

impl<L> Regex<L> {
    pub fn union(l: Regex<L>, r: Regex<L>) -> Regex<L> {
        Regex::Union(Box::new(l), Box::new(r))
    }

    pub fn concat(l: Regex<L>, r: Regex<L>) -> Regex<L> {
        Regex::Concat(Box::new(l), Box::new(r))
    }

    pub fn star(c: Regex<L>) -> Regex<L> {
        Regex::Star(Box::new(c))
    }

    /// True iff the empty word belongs to the language.
    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Letter(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Union(l, r) => l.nullable() || r.nullable(),
            Regex::Concat(l, r) => l.nullable() && r.nullable(),
        }
    }

    /// True iff the language is empty.
    pub fn is_empty_language(&self) -> bool {
        match self {
            Regex::Empty => true,
            Regex::Epsilon | Regex::Letter(_) | Regex::Star(_) => false,
            Regex::Union(l, r) => l.is_empty_language() && r.is_empty_language(),
            Regex::Concat(l, r) => l.is_empty_language() || r.is_empty_language(),
        }
    }

    /// Number of syntax-tree nodes.
    pub fn rpn(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Letter(_) => 1,
            Regex::Union(l, r) | Regex::Concat(l, r) => 1 + l.rpn() + r.rpn(),
            Regex::Star(c) => 1 + c.rpn(),
        }
    }

    /// Number of letter occurrences, multiplicities included.
    pub fn alph(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon => 0,
            Regex::Letter(_) => 1,
            Regex::Union(l, r) | Regex::Concat(l, r) => l.alph() + r.alph(),
            Regex::Star(c) => c.alph(),
        }
    }

    /// Letters in left-to-right order.
    pub fn letters(&self) -> Vec<&L> {
        fn walk<'a, L>(r: &'a Regex<L>, out: &mut Vec<&'a L>) {
            match r {
                Regex::Empty | Regex::Epsilon => {}
                Regex::Letter(l) => out.push(l),
                Regex::Union(a, b) | Regex::Concat(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Regex::Star(c) => walk(c, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Rebuilds the tree with every letter transformed by `f`.
    pub fn map_letters<M>(&self, f: &mut impl FnMut(&L) -> M) -> Regex<M> {
        match self {
            Regex::Empty => Regex::Empty,
            Regex::Epsilon => Regex::Epsilon,
            Regex::Letter(l) => Regex::Letter(f(l)),
            Regex::Union(a, b) => Regex::union(a.map_letters(f), b.map_letters(f)),
            Regex::Concat(a, b) => Regex::concat(a.map_letters(f), b.map_letters(f)),
            Regex::Star(c) => Regex::star(c.map_letters(f)),
        }
    }

    /// Ordinary length of the minimally parenthesized rendering.
    ///
    /// Kept in lockstep with [`render`]: both use the same parenthesization,
    /// so `size` equals the token count of the rendered text.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Letter(_) => 1,
            Regex::Union(l, r) => {
                // '+' is lowest precedence and parsed left-associatively; a
                // right child that is itself a union needs parentheses.
                let rp = if matches!(**r, Regex::Union(..)) { 2 } else { 0 };
                l.size() + 1 + r.size() + rp
            }
            Regex::Concat(l, r) => {
                let lp = if matches!(**l, Regex::Union(..)) { 2 } else { 0 };
                let rp = if matches!(**r, Regex::Union(..) | Regex::Concat(..)) { 2 } else { 0 };
                l.size() + lp + r.size() + rp
            }
            Regex::Star(c) => {
                let cp = if matches!(**c, Regex::Union(..) | Regex::Concat(..)) { 2 } else { 0 };
                c.size() + 1 + cp
            }
        }
    }

    pub fn measures(&self) -> Measures {
        Measures { size: self.size(), alph: self.alph(), rpn: self.rpn() }
    }
}

impl Regex<Symbol> {
    /// Marks every letter with its position, numbered 1..alph left to right.
    pub fn mark(&self) -> MarkedRegex {
        let mut next = 0usize;
        self.map_letters(&mut |&symbol| {
            next += 1;
            MarkedLetter { symbol, position: next }
        })
    }
}

impl MarkedRegex {
    /// Drops the position marks.
    pub fn unmark(&self) -> Regex {
        self.map_letters(&mut |l| l.symbol)
    }

    /// Symbol at each position: entry `i` is the letter at position `i + 1`.
    pub fn position_symbols(&self) -> Vec<Symbol> {
        self.letters().iter().map(|l| l.symbol).collect()
    }
}

/// Renders an expression with minimal parentheses.
///
/// `parse(render(r))` is structurally equal to `r`.
pub fn render(r: &Regex, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    render_into(r, alphabet, &mut out);
    out
}

fn render_into(r: &Regex, ab: &Alphabet, out: &mut String) {
    match r {
        Regex::Empty => out.push_str("@0"),
        Regex::Epsilon => out.push_str("@e"),
        Regex::Letter(s) => out.push_str(ab.name(*s)),
        Regex::Union(l, r) => {
            render_into(l, ab, out);
            out.push('+');
            render_child(r, ab, out, matches!(**r, Regex::Union(..)));
        }
        Regex::Concat(l, r) => {
            render_child(l, ab, out, matches!(**l, Regex::Union(..)));
            render_child(r, ab, out, matches!(**r, Regex::Union(..) | Regex::Concat(..)));
        }
        Regex::Star(c) => {
            render_child(c, ab, out, matches!(**c, Regex::Union(..) | Regex::Concat(..)));
            out.push('*');
        }
    }
}

fn render_child(r: &Regex, ab: &Alphabet, out: &mut String, parens: bool) {
    if parens {
        out.push('(');
        render_into(r, ab, out);
        out.push(')');
    } else {
        render_into(r, ab, out);
    }
}
