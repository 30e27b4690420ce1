//! Partial derivatives and the partial derivative automaton.
//!
//! The partial derivative of an expression by a letter is a *set* of
//! expressions whose languages union to the left quotient. Iterating over
//! all letters reachable from an expression yields finitely many derivatives
//! (at most alph + 1 distinct ones), which become the states of the partial
//! derivative automaton.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::Nfa;
use crate::syntax::Regex;

/// All `(letter, tail)` pairs such that `tail` is a partial derivative of
/// the source expression by `letter`.
pub type LinearForm = BTreeSet<(Symbol, Regex)>;

/// Appends `tail` to every expression of `set`, dropping everything when
/// `tail` is `@0` and simplifying `@e · tail` to `tail`.
fn append_tail(set: BTreeSet<Regex>, tail: &Regex) -> BTreeSet<Regex> {
    if matches!(tail, Regex::Empty) {
        return BTreeSet::new();
    }
    set.into_iter()
        .map(|r| {
            if matches!(r, Regex::Epsilon) {
                tail.clone()
            } else {
                Regex::concat(r, tail.clone())
            }
        })
        .collect()
}

/// The set of partial derivatives of `r` by the letter `s`.
pub fn sigma_derivative(r: &Regex, s: Symbol) -> BTreeSet<Regex> {
    match r {
        Regex::Empty | Regex::Epsilon => BTreeSet::new(),
        Regex::Letter(l) => {
            if *l == s {
                BTreeSet::from([Regex::Epsilon])
            } else {
                BTreeSet::new()
            }
        }
        Regex::Union(a, b) => {
            let mut out = sigma_derivative(a, s);
            out.extend(sigma_derivative(b, s));
            out
        }
        Regex::Concat(a, b) => {
            let mut out = append_tail(sigma_derivative(a, s), b);
            if a.nullable() {
                out.extend(sigma_derivative(b, s));
            }
            out
        }
        Regex::Star(body) => append_tail(sigma_derivative(body, s), r),
    }
}

/// The set of partial derivatives of `r` by the word `w` (left to right).
///
/// The derivative by the empty word is `{r}`.
pub fn word_derivative(r: &Regex, w: &[Symbol]) -> BTreeSet<Regex> {
    let mut current = BTreeSet::from([r.clone()]);
    for &s in w {
        let mut next = BTreeSet::new();
        for q in &current {
            next.extend(sigma_derivative(q, s));
        }
        current = next;
    }
    current
}

/// Computes the linear form of `r` in a single traversal.
///
/// For every letter `s`, the tails paired with `s` are exactly
/// `sigma_derivative(r, s)`.
pub fn linear_form(r: &Regex) -> LinearForm {
    fn append(lf: LinearForm, tail: &Regex) -> LinearForm {
        if matches!(tail, Regex::Empty) {
            return LinearForm::new();
        }
        lf.into_iter()
            .map(|(s, t)| {
                let t = if matches!(t, Regex::Epsilon) {
                    tail.clone()
                } else {
                    Regex::concat(t, tail.clone())
                };
                (s, t)
            })
            .collect()
    }
    match r {
        Regex::Empty | Regex::Epsilon => LinearForm::new(),
        Regex::Letter(l) => LinearForm::from([(*l, Regex::Epsilon)]),
        Regex::Union(a, b) => {
            let mut out = linear_form(a);
            out.extend(linear_form(b));
            out
        }
        Regex::Concat(a, b) => {
            let mut out = append(linear_form(a), b);
            if a.nullable() {
                out.extend(linear_form(b));
            }
            out
        }
        Regex::Star(body) => append(linear_form(body), r),
    }
}

/// The partial derivative automaton of `r`.
///
/// States are the distinct derivatives reachable from `r` (state 0 is `r`
/// itself, the rest numbered in discovery order); a state is final when its
/// expression is nullable.
pub fn pd_automaton(r: &Regex, alphabet: &Alphabet) -> Nfa {
    pd_automaton_with_states(r, alphabet).0
}

/// Same as [`pd_automaton`], also returning the expression of every state.
pub fn pd_automaton_with_states(r: &Regex, alphabet: &Alphabet) -> (Nfa, Vec<Regex>) {
    let mut states: Vec<Regex> = vec![r.clone()];
    let mut index: HashMap<Regex, usize> = HashMap::from([(r.clone(), 0)]);
    let mut stack = vec![0usize];
    let mut transitions: BTreeSet<(usize, Symbol, usize)> = BTreeSet::new();
    let mut finals: BTreeSet<usize> = BTreeSet::new();
    while let Some(i) = stack.pop() {
        if states[i].nullable() {
            finals.insert(i);
        }
        for (head, tail) in linear_form(&states[i].clone()) {
            let next = match index.get(&tail) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    states.push(tail.clone());
                    index.insert(tail, id);
                    stack.push(id);
                    id
                }
            };
            transitions.insert((i, head, next));
        }
    }
    let nfa = Nfa::new(states.len(), alphabet.clone(), transitions, [0], finals)
        .expect("derivative states are in range by construction");
    (nfa, states)
}
