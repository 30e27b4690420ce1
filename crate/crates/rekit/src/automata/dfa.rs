//! Deterministic automata: subset construction and minimization.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::{AutomatonError, Nfa};

/// A deterministic finite automaton.
///
/// The transition table may be partial; `complete` records whether every
/// `(state, symbol)` pair has a successor. State and transition counts are
/// taken on the table as stored, so a trimmed automaton does not count a
/// sink state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    table: Vec<Vec<Option<usize>>>,
    initial: usize,
    finals: BTreeSet<usize>,
    complete: bool,
}

impl Dfa {
    fn from_table(
        alphabet: Alphabet,
        table: Vec<Vec<Option<usize>>>,
        initial: usize,
        finals: BTreeSet<usize>,
    ) -> Dfa {
        let complete = table.iter().all(|row| row.iter().all(Option::is_some));
        Dfa { alphabet, table, initial, finals, complete }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.table.len()
    }

    pub fn transition_count(&self) -> usize {
        self.table.iter().map(|row| row.iter().flatten().count()).sum()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn next(&self, q: usize, s: Symbol) -> Option<usize> {
        self.table[q][s.index()]
    }

    /// View as an [`Nfa`] (single initial state, same transitions).
    pub fn to_nfa(&self) -> Nfa {
        let transitions = self.table.iter().enumerate().flat_map(|(p, row)| {
            row.iter().enumerate().filter_map(move |(s, t)| t.map(|q| (p, Symbol::new(s), q)))
        });
        Nfa::new(
            self.state_count(),
            self.alphabet.clone(),
            transitions,
            [self.initial],
            self.finals.iter().copied(),
        )
        .expect("a DFA is a well-formed NFA")
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut q = self.initial;
        for &s in word {
            match self.next(q, s) {
                Some(t) => q = t,
                None => return false,
            }
        }
        self.finals.contains(&q)
    }

    /// The minimal trimmed DFA for the same language.
    ///
    /// Unreachable states and states that cannot reach a final state are
    /// removed (the initial state is always kept), then Hopcroft partition
    /// refinement merges equivalent states. States of the result are
    /// renumbered in breadth-first order from the initial state, so equal
    /// languages over equal alphabets yield identical automata.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();

        // Reachable states.
        let mut reach = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        reach[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for t in self.table[q].iter().flatten() {
                if !reach[*t] {
                    reach[*t] = true;
                    queue.push_back(*t);
                }
            }
        }

        // States that can reach a final state.
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.state_count()];
        for (p, row) in self.table.iter().enumerate() {
            for t in row.iter().flatten() {
                rev[*t].push(p);
            }
        }
        let mut live = vec![false; self.state_count()];
        let mut queue: VecDeque<usize> =
            self.finals.iter().copied().filter(|&q| reach[q]).collect();
        for &q in &queue {
            live[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if reach[p] && !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }

        if !live[self.initial] {
            // Empty language: a lone initial state with no transitions.
            return Dfa::from_table(self.alphabet.clone(), vec![vec![None; k]], 0, BTreeSet::new());
        }

        // Renumber the trimmed states and add a sink so refinement runs on a
        // complete automaton.
        let kept: Vec<usize> = (0..self.state_count()).filter(|&q| reach[q] && live[q]).collect();
        let mut id = vec![usize::MAX; self.state_count()];
        for (i, &q) in kept.iter().enumerate() {
            id[q] = i;
        }
        let n = kept.len();
        let sink = n;
        let mut delta = vec![vec![sink; k]; n + 1];
        for (i, &q) in kept.iter().enumerate() {
            for (s, t) in self.table[q].iter().enumerate() {
                if let Some(t) = t {
                    if id[*t] != usize::MAX {
                        delta[i][s] = id[*t];
                    }
                }
            }
        }
        let finals: BTreeSet<usize> =
            self.finals.iter().filter(|&&q| id[q] != usize::MAX).map(|&q| id[q]).collect();

        let classes = hopcroft(&delta, n + 1, k, &finals);

        // Drop the sink's class and renumber the remaining blocks by a
        // breadth-first walk from the initial block.
        let sink_class = classes[sink];
        let initial_class = classes[id[self.initial]];
        debug_assert_ne!(initial_class, sink_class);
        let class_count = classes.iter().copied().max().unwrap_or(0) + 1;
        let mut rep = vec![usize::MAX; class_count];
        for q in 0..n {
            if rep[classes[q]] == usize::MAX {
                rep[classes[q]] = q;
            }
        }
        let mut order = vec![usize::MAX; class_count];
        let mut next_id = 0;
        let mut queue = VecDeque::from([initial_class]);
        order[initial_class] = next_id;
        next_id += 1;
        let mut table: Vec<Vec<Option<usize>>> = Vec::new();
        while let Some(c) = queue.pop_front() {
            for s in 0..k {
                let t = delta[rep[c]][s];
                let tc = classes[t];
                if tc != sink_class && order[tc] == usize::MAX {
                    order[tc] = next_id;
                    next_id += 1;
                    queue.push_back(tc);
                }
            }
            let row: Vec<Option<usize>> = (0..k)
                .map(|s| {
                    let tc = classes[delta[rep[c]][s]];
                    (tc != sink_class).then(|| order[tc])
                })
                .collect();
            table.push(row);
        }
        let min_finals: BTreeSet<usize> =
            (0..n).filter(|&q| finals.contains(&q)).map(|q| order[classes[q]]).collect();
        Dfa::from_table(self.alphabet.clone(), table, 0, min_finals)
    }
}

/// Hopcroft partition refinement on a complete transition table.
///
/// Returns the class index of every state; class indices are dense.
fn hopcroft(delta: &[Vec<usize>], n: usize, k: usize, finals: &BTreeSet<usize>) -> Vec<usize> {
    // Predecessors per symbol.
    let mut pred: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); k]; n];
    for p in 0..n {
        for s in 0..k {
            pred[delta[p][s]][s].push(p);
        }
    }

    let mut class_of = vec![0usize; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let finals_vec: Vec<usize> = finals.iter().copied().collect();
    let nonfinals: Vec<usize> = (0..n).filter(|q| !finals.contains(q)).collect();
    for group in [finals_vec, nonfinals] {
        if group.is_empty() {
            continue;
        }
        let c = classes.len();
        for &q in &group {
            class_of[q] = c;
        }
        classes.push(group);
    }

    let mut worklist: Vec<(usize, usize)> = Vec::new();
    let smaller = (0..classes.len()).min_by_key(|&c| classes[c].len()).unwrap_or(0);
    for s in 0..k {
        worklist.push((smaller, s));
    }

    while let Some((splitter, s)) = worklist.pop() {
        // States with an s-transition into the splitter class.
        let mut hits: Vec<usize> =
            classes[splitter].iter().flat_map(|&q| pred[q][s].iter().copied()).collect();
        hits.sort_unstable();
        hits.dedup();

        let mut touched: HashMap<usize, Vec<usize>> = HashMap::new();
        for &p in &hits {
            touched.entry(class_of[p]).or_default().push(p);
        }
        let mut touched: Vec<(usize, Vec<usize>)> = touched.into_iter().collect();
        touched.sort_unstable();

        for (c, inside) in touched {
            if inside.len() == classes[c].len() {
                continue;
            }
            // Split class c into inside / outside.
            let inside_set: BTreeSet<usize> = inside.iter().copied().collect();
            let outside: Vec<usize> =
                classes[c].iter().copied().filter(|q| !inside_set.contains(q)).collect();
            let new_c = classes.len();
            let (keep, moved) =
                if inside.len() <= outside.len() { (outside, inside) } else { (inside, outside) };
            classes[c] = keep;
            for &q in &moved {
                class_of[q] = new_c;
            }
            classes.push(moved);
            for t in 0..k {
                worklist.push((new_c, t));
            }
        }
    }

    // Compact class ids.
    let mut seen = vec![usize::MAX; classes.len()];
    let mut next = 0;
    let mut out = vec![0usize; n];
    for q in 0..n {
        let c = class_of[q];
        if seen[c] == usize::MAX {
            seen[c] = next;
            next += 1;
        }
        out[q] = seen[c];
    }
    out
}

impl Nfa {
    /// Subset construction over the accessible subsets.
    ///
    /// The empty subset is never materialized, so the result may be a
    /// partial DFA. Subset states are numbered in breadth-first discovery
    /// order.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet().len();
        let table = self.successor_table();
        let start: Vec<usize> = self.initials().iter().copied().collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = vec![start.clone()];
        index.insert(start, 0);
        let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let subset = subsets[i].clone();
            let mut row = vec![None; k];
            for (s, slot) in row.iter_mut().enumerate() {
                let mut next: BTreeSet<usize> = BTreeSet::new();
                for &q in &subset {
                    next.extend(table[q][s].iter().copied());
                }
                if next.is_empty() {
                    continue;
                }
                let next: Vec<usize> = next.into_iter().collect();
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                *slot = Some(id);
            }
            rows.push(row);
        }
        let finals: BTreeSet<usize> = subsets
            .iter()
            .enumerate()
            .filter(|(_, subset)| subset.iter().any(|q| self.is_final(*q)))
            .map(|(i, _)| i)
            .collect();
        Dfa::from_table(self.alphabet().clone(), rows, 0, finals)
    }

    /// Checked view of a deterministic NFA as a [`Dfa`].
    pub fn to_dfa(&self) -> Result<Dfa, AutomatonError> {
        if !self.is_deterministic() {
            return Err(AutomatonError::NotDeterministic);
        }
        let initial = self.initials().iter().next().copied();
        let k = self.alphabet().len();
        let mut table = vec![vec![None; k]; self.state_count()];
        for (p, s, q) in self.transitions() {
            table[p][s.index()] = Some(q);
        }
        match initial {
            Some(initial) => {
                Ok(Dfa::from_table(self.alphabet().clone(), table, initial, self.finals().clone()))
            }
            None => Ok(Dfa::from_table(
                self.alphabet().clone(),
                vec![vec![None; k]],
                0,
                BTreeSet::new(),
            )),
        }
    }
}
