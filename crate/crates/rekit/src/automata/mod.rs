//! Finite automata and the generic operations on them.
//!
//! [`Nfa`] is an ε-free automaton with dense integer states `0..n` and a set
//! of initial states (reversal swaps initials and finals, so a single initial
//! state cannot be assumed). [`Dfa`] refines it to at most one successor per
//! state and symbol. [`Partition`] is an equivalence relation over the states
//! of one automaton, used for every quotient construction.

mod dfa;
mod io;
mod iso;

pub use dfa::Dfa;

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{Alphabet, Symbol};

/// Error constructing or transforming an automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomatonError {
    StateOutOfRange { state: usize, states: usize },
    SymbolOutOfRange { symbol: usize, alphabet: usize },
    PartitionMismatch(String),
    NotDeterministic,
    Json(String),
}

impl fmt::Display for AutomatonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomatonError::StateOutOfRange { state, states } => {
                write!(f, "state {state} out of range (automaton has {states} states)")
            }
            AutomatonError::SymbolOutOfRange { symbol, alphabet } => {
                write!(f, "symbol index {symbol} out of range (alphabet has {alphabet} letters)")
            }
            AutomatonError::PartitionMismatch(msg) => write!(f, "bad partition: {msg}"),
            AutomatonError::NotDeterministic => write!(f, "automaton is not deterministic"),
            AutomatonError::Json(msg) => write!(f, "bad automaton description: {msg}"),
        }
    }
}

impl std::error::Error for AutomatonError {}

/// A nondeterministic finite automaton without ε-transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    states: usize,
    transitions: BTreeSet<(usize, Symbol, usize)>,
    initials: BTreeSet<usize>,
    finals: BTreeSet<usize>,
}

impl Nfa {
    pub fn new(
        states: usize,
        alphabet: Alphabet,
        transitions: impl IntoIterator<Item = (usize, Symbol, usize)>,
        initials: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Nfa, AutomatonError> {
        let transitions: BTreeSet<(usize, Symbol, usize)> = transitions.into_iter().collect();
        let initials: BTreeSet<usize> = initials.into_iter().collect();
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        let check_state = |q: usize| {
            if q < states {
                Ok(())
            } else {
                Err(AutomatonError::StateOutOfRange { state: q, states })
            }
        };
        for &(p, s, q) in &transitions {
            check_state(p)?;
            check_state(q)?;
            if s.index() >= alphabet.len() {
                return Err(AutomatonError::SymbolOutOfRange {
                    symbol: s.index(),
                    alphabet: alphabet.len(),
                });
            }
        }
        for &q in initials.iter().chain(&finals) {
            check_state(q)?;
        }
        Ok(Nfa { alphabet, states, transitions, initials, finals })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    /// Size of the automaton: `|Q| + |δ|`.
    pub fn size(&self) -> usize {
        self.states + self.transitions.len()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        self.transitions.iter().copied()
    }

    pub fn initials(&self) -> &BTreeSet<usize> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    /// Successors of `q` on `s`, in increasing order.
    pub fn successors(&self, q: usize, s: Symbol) -> impl Iterator<Item = usize> + '_ {
        self.transitions.range((q, s, 0)..=(q, s, usize::MAX)).map(|&(_, _, t)| t)
    }

    /// Forward transition table indexed as `[state][symbol] -> targets`.
    pub(crate) fn successor_table(&self) -> Vec<Vec<Vec<usize>>> {
        let mut table = vec![vec![Vec::new(); self.alphabet.len()]; self.states];
        for &(p, s, q) in &self.transitions {
            table[p][s.index()].push(q);
        }
        table
    }

    /// True iff there is at most one initial state and no state has two
    /// successors on the same symbol.
    pub fn is_deterministic(&self) -> bool {
        if self.initials.len() > 1 {
            return false;
        }
        let mut last: Option<(usize, Symbol)> = None;
        for &(p, s, _) in &self.transitions {
            if last == Some((p, s)) {
                return false;
            }
            last = Some((p, s));
        }
        true
    }

    /// True iff all transitions arriving at any given state carry the same
    /// letter.
    pub fn is_homogeneous(&self) -> bool {
        let mut incoming: Vec<Option<Symbol>> = vec![None; self.states];
        for &(_, s, q) in &self.transitions {
            match incoming[q] {
                None => incoming[q] = Some(s),
                Some(t) if t == s => {}
                Some(_) => return false,
            }
        }
        true
    }

    /// The reversed automaton: transitions flipped, initials and finals
    /// exchanged.
    pub fn reverse(&self) -> Nfa {
        Nfa {
            alphabet: self.alphabet.clone(),
            states: self.states,
            transitions: self.transitions.iter().map(|&(p, s, q)| (q, s, p)).collect(),
            initials: self.finals.clone(),
            finals: self.initials.clone(),
        }
    }

    /// Quotient automaton: one state per block of `partition`.
    ///
    /// Blocks become states numbered by their smallest member. The language
    /// is preserved whenever the partition is right invariant (and, via
    /// reversal, whenever it is left invariant).
    pub fn quotient(&self, partition: &Partition) -> Result<Nfa, AutomatonError> {
        if partition.state_count() != self.states {
            return Err(AutomatonError::PartitionMismatch(format!(
                "partition covers {} states, automaton has {}",
                partition.state_count(),
                self.states
            )));
        }
        let transitions: BTreeSet<(usize, Symbol, usize)> = self
            .transitions
            .iter()
            .map(|&(p, s, q)| (partition.block_of(p), s, partition.block_of(q)))
            .collect();
        Ok(Nfa {
            alphabet: self.alphabet.clone(),
            states: partition.block_count(),
            transitions,
            initials: self.initials.iter().map(|&q| partition.block_of(q)).collect(),
            finals: self.finals.iter().map(|&q| partition.block_of(q)).collect(),
        })
    }

    /// States reachable from the initial states.
    pub fn reachable(&self) -> BTreeSet<usize> {
        let table = self.successor_table();
        let mut seen = self.initials.clone();
        let mut queue: Vec<usize> = seen.iter().copied().collect();
        while let Some(q) = queue.pop() {
            for targets in &table[q] {
                for &t in targets {
                    if seen.insert(t) {
                        queue.push(t);
                    }
                }
            }
        }
        seen
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut current = self.initials.clone();
        for &s in word {
            let mut next = BTreeSet::new();
            for &q in &current {
                next.extend(self.successors(q, s));
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.iter().any(|q| self.finals.contains(q))
    }
}

/// A partition of the state set `0..n` into disjoint blocks.
///
/// Blocks are ordered by their smallest member, which makes quotient state
/// numbering deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from explicit blocks; they must cover `0..states`
    /// exactly once.
    pub fn new(blocks: Vec<Vec<usize>>, states: usize) -> Result<Partition, AutomatonError> {
        let mut block_of = vec![usize::MAX; states];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(AutomatonError::PartitionMismatch("empty block".into()));
            }
            for &q in block {
                if q >= states {
                    return Err(AutomatonError::StateOutOfRange { state: q, states });
                }
                if block_of[q] != usize::MAX {
                    return Err(AutomatonError::PartitionMismatch(format!(
                        "state {q} appears in two blocks"
                    )));
                }
                block_of[q] = i;
            }
        }
        if let Some(q) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(AutomatonError::PartitionMismatch(format!("state {q} not covered")));
        }
        Ok(Partition::normalize(blocks, block_of))
    }

    fn normalize(mut blocks: Vec<Vec<usize>>, _block_of: Vec<usize>) -> Partition {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let states: usize = blocks.iter().map(Vec::len).sum();
        let mut block_of = vec![0; states];
        for (i, block) in blocks.iter().enumerate() {
            for &q in block {
                block_of[q] = i;
            }
        }
        Partition { blocks, block_of }
    }

    /// Builds a partition from a block index per state.
    pub fn from_assignment(assignment: &[usize]) -> Partition {
        let mut ids: Vec<usize> = assignment.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut blocks = vec![Vec::new(); ids.len()];
        for (q, &b) in assignment.iter().enumerate() {
            blocks[ids.binary_search(&b).unwrap()].push(q);
        }
        Partition::normalize(blocks, Vec::new())
    }

    /// The identity partition (every state alone).
    pub fn identity(states: usize) -> Partition {
        Partition {
            blocks: (0..states).map(|q| vec![q]).collect(),
            block_of: (0..states).collect(),
        }
    }

    pub fn state_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, q: usize) -> usize {
        self.block_of[q]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[usize]> {
        self.blocks.iter().map(Vec::as_slice)
    }

    pub fn same_block(&self, p: usize, q: usize) -> bool {
        self.block_of[p] == self.block_of[q]
    }

    /// True iff every block of `self` is contained in a block of `other`.
    pub fn is_finer_than(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|block| {
            let b = other.block_of(block[0]);
            block.iter().all(|&q| other.block_of(q) == b)
        })
    }

    /// Direct check of the right-invariance definition: related states agree
    /// on finality and their successor sets agree block-wise on every symbol.
    pub fn is_right_invariant(&self, nfa: &Nfa) -> bool {
        if self.state_count() != nfa.state_count() {
            return false;
        }
        let table = nfa.successor_table();
        let succ_blocks = |q: usize, s: usize| -> BTreeSet<usize> {
            table[q][s].iter().map(|&t| self.block_of(t)).collect()
        };
        for block in &self.blocks {
            let p = block[0];
            for &q in &block[1..] {
                if nfa.is_final(p) != nfa.is_final(q) {
                    return false;
                }
                for s in 0..nfa.alphabet().len() {
                    if succ_blocks(p, s) != succ_blocks(q, s) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
