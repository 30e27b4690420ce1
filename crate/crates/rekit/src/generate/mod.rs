//! Uniform random generation of grammar words.
//!
//! A [`Grammar`] is an unambiguous context-free grammar whose terminals are
//! literal tokens plus one distinguished letter-class terminal standing for
//! any of `k` alphabet letters. Counting derivable words per length gives
//! exact uniform sampling by unranking; see [`Sampler`].

mod count;
mod dsl;
mod regen;

pub use count::{GenerateError, SampleToken, Sampler};
pub use dsl::grammar_from_dsl;
pub use regen::{emit_dataset, re_grammar, record_rng, render_dataset, DatasetRecord, ReGenerator};

use std::fmt;

/// One symbol in a production body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrammarSymbol {
    Nonterminal(usize),
    /// A fixed terminal token (one symbol of word length).
    Literal(String),
    /// The letter-class terminal: any one of the `k` alphabet letters.
    LetterClass,
}

/// A context-free grammar with ordered alternatives.
///
/// Word length counts terminals, each contributing one. The grammar must be
/// unambiguous for sampling to be uniform over words; this is assumed, not
/// checked (count-versus-enumeration tests cover the built-in grammar).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    names: Vec<String>,
    productions: Vec<Vec<Vec<GrammarSymbol>>>,
    start: usize,
    letter_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrammarError {
    EmptyAlternative { nonterminal: String },
    UnitCycle { nonterminal: String },
    UnknownName { name: String },
    Syntax { line: usize, message: String },
}

impl fmt::Display for GrammarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrammarError::EmptyAlternative { nonterminal } => {
                write!(f, "nonterminal {nonterminal} has an empty alternative")
            }
            GrammarError::UnitCycle { nonterminal } => {
                write!(f, "unit productions cycle through {nonterminal}")
            }
            GrammarError::UnknownName { name } => write!(f, "unknown nonterminal {name:?}"),
            GrammarError::Syntax { line, message } => {
                write!(f, "grammar syntax error on line {line}: {message}")
            }
        }
    }
}

impl std::error::Error for GrammarError {}

impl Grammar {
    pub fn nonterminal_count(&self) -> usize {
        self.names.len()
    }

    pub fn nonterminal_name(&self, nt: usize) -> &str {
        &self.names[nt]
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Multiplicity of the letter-class terminal.
    pub fn letter_count(&self) -> usize {
        self.letter_count
    }

    pub fn alternatives(&self, nt: usize) -> &[Vec<GrammarSymbol>] {
        &self.productions[nt]
    }

    /// Nonterminals ordered so that every unit production points backwards.
    ///
    /// Word counts for length n depend on same-length counts exactly through
    /// unit alternatives, so this order makes a single pass per length
    /// well-founded.
    pub(crate) fn unit_topological_order(&self) -> Vec<usize> {
        let n = self.names.len();
        let mut deps: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (nt, alts) in self.productions.iter().enumerate() {
            for alt in alts {
                if let [GrammarSymbol::Nonterminal(b)] = alt.as_slice() {
                    deps[nt].push(*b);
                }
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut state = vec![0u8; n]; // 0 unvisited, 1 active, 2 done
        fn visit(nt: usize, deps: &[Vec<usize>], state: &mut [u8], order: &mut Vec<usize>) {
            state[nt] = 1;
            for &b in &deps[nt] {
                if state[b] == 0 {
                    visit(b, deps, state, order);
                }
            }
            state[nt] = 2;
            order.push(nt);
        }
        for nt in 0..n {
            if state[nt] == 0 {
                visit(nt, &deps, &mut state, &mut order);
            }
        }
        order
    }

    fn validate(&self) -> Result<(), GrammarError> {
        for (nt, alts) in self.productions.iter().enumerate() {
            for alt in alts {
                if alt.is_empty() {
                    return Err(GrammarError::EmptyAlternative {
                        nonterminal: self.names[nt].clone(),
                    });
                }
            }
        }
        // A cycle of unit productions would make same-length counts circular.
        let n = self.names.len();
        let mut deps: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (nt, alts) in self.productions.iter().enumerate() {
            for alt in alts {
                if let [GrammarSymbol::Nonterminal(b)] = alt.as_slice() {
                    deps[nt].push(*b);
                }
            }
        }
        let mut state = vec![0u8; n];
        fn has_cycle(nt: usize, deps: &[Vec<usize>], state: &mut [u8]) -> bool {
            state[nt] = 1;
            for &b in &deps[nt] {
                if state[b] == 1 || (state[b] == 0 && has_cycle(b, deps, state)) {
                    return true;
                }
            }
            state[nt] = 2;
            false
        }
        for nt in 0..n {
            if state[nt] == 0 && has_cycle(nt, &deps, &mut state) {
                return Err(GrammarError::UnitCycle { nonterminal: self.names[nt].clone() });
            }
        }
        Ok(())
    }
}

/// Incremental [`Grammar`] construction.
#[derive(Default)]
pub struct GrammarBuilder {
    names: Vec<String>,
    productions: Vec<Vec<Vec<GrammarSymbol>>>,
}

impl GrammarBuilder {
    pub fn new() -> GrammarBuilder {
        GrammarBuilder::default()
    }

    /// Returns the id of `name`, declaring it if new.
    pub fn nonterminal(&mut self, name: &str) -> usize {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return i;
        }
        self.names.push(name.to_owned());
        self.productions.push(Vec::new());
        self.names.len() - 1
    }

    /// Appends one alternative to the productions of `nt`.
    pub fn rule(&mut self, nt: usize, body: Vec<GrammarSymbol>) {
        self.productions[nt].push(body);
    }

    pub fn build(self, start: usize, letter_count: usize) -> Result<Grammar, GrammarError> {
        let grammar =
            Grammar { names: self.names, productions: self.productions, start, letter_count };
        grammar.validate()?;
        Ok(grammar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_round_trip() {
        let mut b = GrammarBuilder::new();
        let s = b.nonterminal("S");
        assert_eq!(b.nonterminal("S"), s);
        b.rule(s, vec![GrammarSymbol::Literal("x".into())]);
        let g = b.build(s, 1).unwrap();
        assert_eq!(g.nonterminal_count(), 1);
        assert_eq!(g.alternatives(s).len(), 1);
    }

    #[test]
    fn rejects_empty_alternatives() {
        let mut b = GrammarBuilder::new();
        let s = b.nonterminal("S");
        b.rule(s, vec![]);
        assert!(matches!(b.build(s, 1), Err(GrammarError::EmptyAlternative { .. })));
    }

    #[test]
    fn rejects_unit_cycles() {
        let mut b = GrammarBuilder::new();
        let s = b.nonterminal("S");
        let t = b.nonterminal("T");
        b.rule(s, vec![GrammarSymbol::Nonterminal(t)]);
        b.rule(t, vec![GrammarSymbol::Nonterminal(s)]);
        b.rule(t, vec![GrammarSymbol::Literal("x".into())]);
        assert!(matches!(b.build(s, 1), Err(GrammarError::UnitCycle { .. })));
    }

    #[test]
    fn unit_order_puts_dependencies_first() {
        let mut b = GrammarBuilder::new();
        let s = b.nonterminal("S");
        let t = b.nonterminal("T");
        b.rule(s, vec![GrammarSymbol::Nonterminal(t)]);
        b.rule(t, vec![GrammarSymbol::Literal("x".into())]);
        let g = b.build(s, 1).unwrap();
        let order = g.unit_topological_order();
        let pos = |nt: usize| order.iter().position(|&x| x == nt).unwrap();
        assert!(pos(t) < pos(s));
    }
}
