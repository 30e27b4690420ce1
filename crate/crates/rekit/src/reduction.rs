//! NFA reduction by invariant equivalences.
//!
//! The coarsest right-invariant equivalence (autobisimulation) relates
//! states that cannot be told apart by finality or by following transitions
//! forward; quotienting by it preserves the language. The left-invariant
//! counterpart is the same relation on the reversed automaton. Both are
//! computed here, together with the derived reductions.

use crate::automata::{Nfa, Partition};

/// The coarsest right-invariant equivalence, computed by the naive pairwise
/// saturation.
///
/// A table of distinguishable pairs starts from pairs that disagree on
/// finality and grows: a pair `(x, y)` becomes distinguishable as soon as on
/// some letter `x` has a successor that is distinguishable from every
/// successor of `y`. The complement of the final table is the equivalence.
/// Quadratic in states times the cost of the scan; use
/// [`coarsest_right_invariant`] when speed matters.
pub fn autobisimulation(nfa: &Nfa) -> Partition {
    let n = nfa.state_count();
    let k = nfa.alphabet().len();
    let succ = nfa.successor_table();
    let mut distinct = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            if nfa.is_final(x) != nfa.is_final(y) {
                distinct[x * n + y] = true;
            }
        }
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if distinct[x * n + y] {
                    continue;
                }
                let splits = (0..k).any(|s| {
                    succ[x][s].iter().any(|&z| succ[y][s].iter().all(|&w| distinct[z * n + w]))
                });
                if splits {
                    distinct[x * n + y] = true;
                    distinct[y * n + x] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    partition_from_relation(n, |x, y| !distinct[x * n + y])
}

/// The coarsest right-invariant equivalence, by partition refinement.
///
/// Starts from the finality split and repeatedly separates states whose
/// successor block sets differ on some letter. Produces exactly the
/// partition of [`autobisimulation`], just faster on larger automata.
pub fn coarsest_right_invariant(nfa: &Nfa) -> Partition {
    use std::collections::BTreeMap;

    let n = nfa.state_count();
    if n == 0 {
        return Partition::identity(0);
    }
    let k = nfa.alphabet().len();
    let succ = nfa.successor_table();
    let mut block: Vec<usize> = (0..n).map(|q| nfa.is_final(q) as usize).collect();
    let mut blocks = if block.contains(&1) && block.contains(&0) { 2 } else { 1 };
    loop {
        let mut table: BTreeMap<(usize, Vec<Vec<usize>>), usize> = BTreeMap::new();
        let mut next: Vec<usize> = Vec::with_capacity(n);
        for q in 0..n {
            let mut sig: Vec<Vec<usize>> = Vec::with_capacity(k);
            for s in 0..k {
                let mut targets: Vec<usize> = succ[q][s].iter().map(|&t| block[t]).collect();
                targets.sort_unstable();
                targets.dedup();
                sig.push(targets);
            }
            let id = table.len();
            let id = *table.entry((block[q], sig)).or_insert(id);
            next.push(id);
        }
        let new_blocks = table.len();
        block = next;
        if new_blocks == blocks {
            break;
        }
        blocks = new_blocks;
    }
    Partition::from_assignment(&block)
}

fn partition_from_relation(n: usize, related: impl Fn(usize, usize) -> bool) -> Partition {
    let mut assignment = vec![usize::MAX; n];
    for q in 0..n {
        for p in 0..=q {
            if related(p, q) {
                assignment[q] = p;
                break;
            }
        }
    }
    Partition::from_assignment(&assignment)
}

/// Quotient by the coarsest right-invariant equivalence.
pub fn r_equiv(nfa: &Nfa) -> Nfa {
    nfa.quotient(&coarsest_right_invariant(nfa)).expect("partition covers the states")
}

/// The coarsest left-invariant equivalence: right invariance on the
/// reversed automaton.
pub fn left_equivalence(nfa: &Nfa) -> Partition {
    coarsest_right_invariant(&nfa.reverse())
}

/// Quotient of the original automaton by the coarsest left-invariant
/// equivalence.
pub fn l_equiv(nfa: &Nfa) -> Nfa {
    nfa.quotient(&left_equivalence(nfa)).expect("partition covers the states")
}

/// Left reduction followed by right reduction.
pub fn lr_equiv(nfa: &Nfa) -> Nfa {
    r_equiv(&l_equiv(nfa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Symbol};
    use crate::syntax::parse;

    fn sym(i: usize) -> Symbol {
        Symbol::new(i)
    }

    #[test]
    fn finality_split_is_initialization() {
        let nfa = Nfa::new(2, Alphabet::of_size(1), [], [0], [0, 1]).unwrap();
        let p = autobisimulation(&nfa);
        assert_eq!(p.block_count(), 1);

        let mixed = Nfa::new(2, Alphabet::of_size(1), [], [0], [1]).unwrap();
        let p = autobisimulation(&mixed);
        assert_eq!(p.block_count(), 2);
    }

    #[test]
    fn minimal_dfa_stays_identity() {
        let ab = Alphabet::of_size(2);
        let re = parse("(a+b)*a", &ab).unwrap();
        let min = crate::glushkov::position_automaton(&re, &ab).determinize().minimize().to_nfa();
        let p = autobisimulation(&min);
        assert_eq!(p.block_count(), min.state_count());
        let reduced = r_equiv(&min);
        assert!(reduced.is_isomorphic(&min));
    }

    #[test]
    fn missing_successor_distinguishes() {
        // 0 can move on a, 1 cannot; both non-final.
        let nfa = Nfa::new(3, Alphabet::of_size(1), [(0, sym(0), 2)], [0], [2]).unwrap();
        let p = autobisimulation(&nfa);
        assert!(!p.same_block(0, 1));
    }

    #[test]
    fn fast_path_agrees_with_naive() {
        // Deterministic seed-free sweep over small random automata.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let n = (next() % 6 + 1) as usize;
            let ab = Alphabet::of_size(2);
            let mut transitions = Vec::new();
            for p in 0..n {
                for s in 0..2 {
                    for q in 0..n {
                        if next() % 3 == 0 {
                            transitions.push((p, sym(s), q));
                        }
                    }
                }
            }
            let finals: Vec<usize> = (0..n).filter(|_| next() % 2 == 0).collect();
            let nfa = Nfa::new(n, ab, transitions, [0], finals).unwrap();
            let naive = autobisimulation(&nfa);
            let fast = coarsest_right_invariant(&nfa);
            assert_eq!(naive, fast, "disagreement on {nfa:?}");
            assert!(naive.is_right_invariant(&nfa));
        }
    }

    #[test]
    fn l_equiv_merges_mirror_twins() {
        // 1 and 2 receive the same letters from the same sources and have
        // the same forward continuations into 3.
        let nfa = Nfa::new(
            4,
            Alphabet::of_size(2),
            [(0, sym(0), 1), (0, sym(0), 2), (1, sym(1), 3), (2, sym(1), 3)],
            [0],
            [3],
        )
        .unwrap();
        let reduced = l_equiv(&nfa);
        assert_eq!(reduced.state_count(), 3);
        let chain = lr_equiv(&nfa);
        assert!(chain.size() <= reduced.size());
        assert!(reduced.size() <= nfa.size());
    }

    #[test]
    fn single_word_dfa_is_stable() {
        let ab = Alphabet::of_size(2);
        let re = parse("ab", &ab).unwrap();
        let min = crate::glushkov::position_automaton(&re, &ab).determinize().minimize().to_nfa();
        assert!(l_equiv(&min).is_isomorphic(&min));
        assert!(r_equiv(&min).is_isomorphic(&min));
    }

    #[test]
    fn r_equiv_is_idempotent_up_to_isomorphism() {
        let ab = Alphabet::of_size(2);
        let re = parse("(a+b)*a", &ab).unwrap();
        let pos = crate::glushkov::position_automaton(&re, &ab);
        let once = r_equiv(&pos);
        let twice = r_equiv(&once);
        assert!(once.is_isomorphic(&twice));
        assert!(once.size() <= pos.size());
    }
}
