//! Ground-truth machinery: bounded language enumeration and brute-force
//! equivalences.
//!
//! Everything here is computed directly from definitions — the language
//! equations for expressions, breadth-first closure for automata, partition
//! enumeration for invariant equivalences — precisely so it can check the
//! optimized constructions elsewhere in the crate without sharing code with
//! them.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::{Nfa, Partition};
use crate::syntax::Regex;

pub type Word = Vec<Symbol>;

/// Error from a brute-force computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    TooManyStates { states: usize, limit: usize },
    AlphabetMismatch,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooManyStates { states, limit } => {
                write!(f, "{states} states exceed the brute-force limit of {limit}")
            }
            OracleError::AlphabetMismatch => write!(f, "operands use different alphabets"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Words of the language by exact length, built with length-indexed dynamic
/// programming over the syntax tree.
fn language_by_length(r: &Regex, max_len: usize) -> Vec<BTreeSet<Word>> {
    let mut out = vec![BTreeSet::new(); max_len + 1];
    match r {
        Regex::Empty => {}
        Regex::Epsilon => {
            out[0].insert(Vec::new());
        }
        Regex::Letter(s) => {
            if max_len >= 1 {
                out[1].insert(vec![*s]);
            }
        }
        Regex::Union(a, b) => {
            out = language_by_length(a, max_len);
            for (len, words) in language_by_length(b, max_len).into_iter().enumerate() {
                out[len].extend(words);
            }
        }
        Regex::Concat(a, b) => {
            let left = language_by_length(a, max_len);
            let right = language_by_length(b, max_len);
            for (i, lw) in left.iter().enumerate() {
                if lw.is_empty() {
                    continue;
                }
                for (j, rw) in right.iter().enumerate().take(max_len + 1 - i) {
                    for u in lw {
                        for v in rw {
                            let mut w = u.clone();
                            w.extend(v);
                            out[i + j].insert(w);
                        }
                    }
                }
            }
        }
        Regex::Star(body) => {
            let base = language_by_length(body, max_len);
            out[0].insert(Vec::new());
            // out[len] only ever draws on out[len - j] with j >= 1, so a
            // single forward pass closes the iteration.
            for len in 1..=max_len {
                let mut words = BTreeSet::new();
                for j in 1..=len {
                    for u in &base[j] {
                        for v in &out[len - j] {
                            let mut w = u.clone();
                            w.extend(v);
                            words.insert(w);
                        }
                    }
                }
                out[len] = words;
            }
        }
    }
    out
}

/// All words of `L(r)` up to the given length.
pub fn enumerate_re(r: &Regex, max_len: usize) -> BTreeSet<Word> {
    language_by_length(r, max_len).into_iter().flatten().collect()
}

/// All words the automaton accepts up to the given length, by breadth-first
/// extension of the reachable state sets.
pub fn enumerate_nfa(nfa: &Nfa, max_len: usize) -> BTreeSet<Word> {
    let succ = nfa.successor_table();
    let k = nfa.alphabet().len();
    let mut out = BTreeSet::new();
    let start: Vec<usize> = nfa.initials().iter().copied().collect();
    let mut frontier: Vec<(Word, Vec<usize>)> = vec![(Vec::new(), start)];
    for len in 0..=max_len {
        for (word, states) in &frontier {
            if states.iter().any(|&q| nfa.is_final(q)) {
                out.insert(word.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next_frontier = Vec::new();
        for (word, states) in &frontier {
            for s in 0..k {
                let mut next: BTreeSet<usize> = BTreeSet::new();
                for &q in states {
                    next.extend(succ[q][s].iter().copied());
                }
                if next.is_empty() {
                    continue;
                }
                let mut w = word.clone();
                w.push(Symbol::new(s));
                next_frontier.push((w, next.into_iter().collect()));
            }
        }
        frontier = next_frontier;
    }
    out
}

/// One side of a bounded language comparison.
#[derive(Clone, Copy)]
pub enum Lang<'a> {
    Re(&'a Regex, &'a Alphabet),
    Auto(&'a Nfa),
}

impl Lang<'_> {
    fn alphabet(&self) -> &Alphabet {
        match self {
            Lang::Re(_, ab) => ab,
            Lang::Auto(nfa) => nfa.alphabet(),
        }
    }

    fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        match self {
            Lang::Re(r, _) => enumerate_re(r, max_len),
            Lang::Auto(nfa) => enumerate_nfa(nfa, max_len),
        }
    }
}

/// True iff both sides have exactly the same words up to `max_len`.
pub fn equivalent_up_to(x: Lang, y: Lang, max_len: usize) -> Result<bool, OracleError> {
    Ok(first_difference(x, y, max_len)?.is_none())
}

/// The least word (shortest, then lexicographic) on which the two bounded
/// languages disagree, if any.
pub fn first_difference(x: Lang, y: Lang, max_len: usize) -> Result<Option<Word>, OracleError> {
    if x.alphabet() != y.alphabet() {
        return Err(OracleError::AlphabetMismatch);
    }
    let wx = x.enumerate(max_len);
    let wy = y.enumerate(max_len);
    let mut difference: Vec<&Word> = wx.symmetric_difference(&wy).collect();
    difference.sort_by_key(|w| (w.len(), w.as_slice().to_vec()));
    Ok(difference.first().map(|w| (*w).clone()))
}

/// Maximum state count accepted by [`brute_coarsest_right_invariant`].
pub const BRUTE_FORCE_STATE_LIMIT: usize = 8;

/// The coarsest right-invariant equivalence found by enumerating every
/// partition of the state set and keeping the coarsest valid one.
///
/// Exponential in the number of states; refuses automata with more than
/// [`BRUTE_FORCE_STATE_LIMIT`] states.
pub fn brute_coarsest_right_invariant(nfa: &Nfa) -> Result<Partition, OracleError> {
    let n = nfa.state_count();
    if n > BRUTE_FORCE_STATE_LIMIT {
        return Err(OracleError::TooManyStates { states: n, limit: BRUTE_FORCE_STATE_LIMIT });
    }
    if n == 0 {
        return Ok(Partition::identity(0));
    }
    let mut best: Option<Partition> = None;
    let mut valid: Vec<Partition> = Vec::new();
    let mut assignment = vec![0usize; n];
    enumerate_partitions(&mut assignment, 1, nfa, &mut |p| {
        if best.as_ref().is_none_or(|b| p.block_count() < b.block_count()) {
            best = Some(p.clone());
        }
        valid.push(p);
    });
    let best = best.expect("the identity partition is always right invariant");
    debug_assert!(valid.iter().all(|p| p.is_finer_than(&best)));
    Ok(best)
}

/// Calls `found` on every right-invariant partition, walking restricted
/// growth strings.
fn enumerate_partitions(
    assignment: &mut Vec<usize>,
    position: usize,
    nfa: &Nfa,
    found: &mut impl FnMut(Partition),
) {
    if position == assignment.len() {
        let p = Partition::from_assignment(assignment);
        if p.is_right_invariant(nfa) {
            found(p);
        }
        return;
    }
    let ceiling = assignment[..position].iter().copied().max().unwrap_or(0) + 1;
    for b in 0..=ceiling {
        assignment[position] = b;
        enumerate_partitions(assignment, position + 1, nfa, found);
    }
}
