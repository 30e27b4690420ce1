//! Helpers shared by the integration suites: independent grammar-word
//! enumeration and small random fixtures.

#![allow(dead_code)]

use rekit::{Alphabet, Grammar, GrammarSymbol, Nfa, Symbol};

/// Every terminal string of exactly `n` tokens the grammar derives, rendered
/// as text, one entry per derivation (duplicates would reveal ambiguity).
///
/// Plain leftmost expansion with minimum-length pruning; independent of the
/// counting tables used for sampling.
pub fn all_grammar_words(grammar: &Grammar, alphabet: &Alphabet, n: usize) -> Vec<String> {
    let min_len = min_lengths(grammar);
    let min_of = |sym: &GrammarSymbol| match sym {
        GrammarSymbol::Nonterminal(b) => min_len[*b],
        _ => 1,
    };
    let mut out = Vec::new();
    let mut prefix = String::new();
    let start = vec![GrammarSymbol::Nonterminal(grammar.start())];
    expand(grammar, alphabet, &start, n, &min_of, &mut prefix, &mut out);
    out.sort();
    out
}

fn expand(
    grammar: &Grammar,
    alphabet: &Alphabet,
    sentential: &[GrammarSymbol],
    budget: usize,
    min_of: &dyn Fn(&GrammarSymbol) -> usize,
    prefix: &mut String,
    out: &mut Vec<String>,
) {
    let floor: usize = sentential.iter().map(min_of).sum();
    if floor > budget {
        return;
    }
    let Some((head, rest)) = sentential.split_first() else {
        if budget == 0 {
            out.push(prefix.clone());
        }
        return;
    };
    match head {
        GrammarSymbol::Literal(t) => {
            if budget == 0 {
                return;
            }
            let saved = prefix.len();
            prefix.push_str(t);
            expand(grammar, alphabet, rest, budget - 1, min_of, prefix, out);
            prefix.truncate(saved);
        }
        GrammarSymbol::LetterClass => {
            if budget == 0 {
                return;
            }
            for s in alphabet.symbols() {
                let saved = prefix.len();
                prefix.push_str(alphabet.name(s));
                expand(grammar, alphabet, rest, budget - 1, min_of, prefix, out);
                prefix.truncate(saved);
            }
        }
        GrammarSymbol::Nonterminal(nt) => {
            for alt in grammar.alternatives(*nt) {
                let mut next: Vec<GrammarSymbol> = alt.clone();
                next.extend_from_slice(rest);
                expand(grammar, alphabet, &next, budget, min_of, prefix, out);
            }
        }
    }
}

/// Shortest derivable length per nonterminal, by fixpoint iteration.
fn min_lengths(grammar: &Grammar) -> Vec<usize> {
    const UNKNOWN: usize = usize::MAX / 4;
    let n = grammar.nonterminal_count();
    let mut min = vec![UNKNOWN; n];
    loop {
        let mut changed = false;
        for nt in 0..n {
            for alt in grammar.alternatives(nt) {
                let total: usize = alt
                    .iter()
                    .map(|s| match s {
                        GrammarSymbol::Nonterminal(b) => min[*b],
                        _ => 1,
                    })
                    .sum();
                if total < min[nt] {
                    min[nt] = total;
                    changed = true;
                }
            }
        }
        if !changed {
            return min;
        }
    }
}

/// Tiny deterministic generator for fixture construction.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }
}

/// A random NFA with up to `max_states` states over two letters; every
/// transition and final flag is an independent coin flip.
pub fn random_nfa(rng: &mut XorShift, max_states: usize, transition_odds: u64) -> Nfa {
    let n = rng.below(max_states as u64) as usize + 1;
    let mut transitions = Vec::new();
    for p in 0..n {
        for s in 0..2 {
            for q in 0..n {
                if rng.below(transition_odds) == 0 {
                    transitions.push((p, Symbol::new(s), q));
                }
            }
        }
    }
    let finals: Vec<usize> = (0..n).filter(|_| rng.below(2) == 0).collect();
    Nfa::new(n, Alphabet::of_size(2), transitions, [0], finals).expect("fixture is well formed")
}
