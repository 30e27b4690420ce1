//! Graph isomorphism of automata.
//!
//! Two automata are isomorphic when a bijection on states preserves
//! initials, finals, and transitions. States are first refined into
//! signature classes (a color refinement over in/out transition profiles);
//! a backtracking search then resolves whatever ties remain. The automata
//! compared here are small, and the refinement usually pins states down
//! almost completely.

use std::collections::{BTreeMap, HashMap};

use crate::automata::Nfa;

impl Nfa {
    /// True iff some state bijection maps `self` onto `other` exactly.
    pub fn is_isomorphic(&self, other: &Nfa) -> bool {
        if self.alphabet() != other.alphabet()
            || self.state_count() != other.state_count()
            || self.transition_count() != other.transition_count()
            || self.initials().len() != other.initials().len()
            || self.finals().len() != other.finals().len()
        {
            return false;
        }
        let n = self.state_count();
        if n == 0 {
            return true;
        }

        let (colors_a, colors_b) = match joint_refinement(self, other) {
            Some(c) => c,
            None => return false,
        };

        // Candidate targets per state of `self`, grouped by color.
        let mut by_color: HashMap<u32, Vec<usize>> = HashMap::new();
        for (q, &c) in colors_b.iter().enumerate() {
            by_color.entry(c).or_default().push(q);
        }

        // Match the most constrained states first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&q| by_color[&colors_a[q]].len());

        let succ_a = self.successor_table();
        let succ_b = other.successor_table();
        let pred_a = self.reverse().successor_table();
        let pred_b = other.reverse().successor_table();

        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        backtrack(
            0, &order, &colors_a, &by_color, &succ_a, &succ_b, &pred_a, &pred_b, &mut map,
            &mut used,
        )
    }
}

/// Color refinement run jointly over both automata so colors are comparable.
/// Returns `None` as soon as the color histograms diverge.
fn joint_refinement(a: &Nfa, b: &Nfa) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = a.state_count();
    let k = a.alphabet().len();
    let succ_a = a.successor_table();
    let succ_b = b.successor_table();
    let pred_a = a.reverse().successor_table();
    let pred_b = b.reverse().successor_table();

    let init = |nfa: &Nfa| -> Vec<u32> {
        (0..n).map(|q| (nfa.initials().contains(&q) as u32) << 1 | nfa.is_final(q) as u32).collect()
    };
    let mut ca = init(a);
    let mut cb = init(b);

    loop {
        let signature =
            |q: usize, colors: &[u32], succ: &[Vec<Vec<usize>>], pred: &[Vec<Vec<usize>>]| {
                let mut sig: Vec<u32> = vec![colors[q]];
                for s in 0..k {
                    let mut out: Vec<u32> = succ[q][s].iter().map(|&t| colors[t]).collect();
                    out.sort_unstable();
                    sig.push(u32::MAX);
                    sig.extend(out);
                    let mut inc: Vec<u32> = pred[q][s].iter().map(|&t| colors[t]).collect();
                    inc.sort_unstable();
                    sig.push(u32::MAX - 1);
                    sig.extend(inc);
                }
                sig
            };

        let mut table: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        let sigs_a: Vec<Vec<u32>> = (0..n).map(|q| signature(q, &ca, &succ_a, &pred_a)).collect();
        let sigs_b: Vec<Vec<u32>> = (0..n).map(|q| signature(q, &cb, &succ_b, &pred_b)).collect();
        for sig in sigs_a.iter().chain(&sigs_b) {
            let next = table.len() as u32;
            table.entry(sig.clone()).or_insert(next);
        }
        let next_a: Vec<u32> = sigs_a.iter().map(|s| table[s]).collect();
        let next_b: Vec<u32> = sigs_b.iter().map(|s| table[s]).collect();

        let mut hist_a: BTreeMap<u32, usize> = BTreeMap::new();
        let mut hist_b: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &next_a {
            *hist_a.entry(c).or_default() += 1;
        }
        for &c in &next_b {
            *hist_b.entry(c).or_default() += 1;
        }
        if hist_a != hist_b {
            return None;
        }

        let stable = next_a == ca && next_b == cb;
        ca = next_a;
        cb = next_b;
        if stable {
            return Some((ca, cb));
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    depth: usize,
    order: &[usize],
    colors_a: &[u32],
    by_color: &HashMap<u32, Vec<usize>>,
    succ_a: &[Vec<Vec<usize>>],
    succ_b: &[Vec<Vec<usize>>],
    pred_a: &[Vec<Vec<usize>>],
    pred_b: &[Vec<Vec<usize>>],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    for &q in &by_color[&colors_a[p]] {
        if used[q] {
            continue;
        }
        if consistent(p, q, succ_a, succ_b, map) && consistent(p, q, pred_a, pred_b, map) {
            map[p] = q;
            used[q] = true;
            if backtrack(
                depth + 1,
                order,
                colors_a,
                by_color,
                succ_a,
                succ_b,
                pred_a,
                pred_b,
                map,
                used,
            ) {
                return true;
            }
            map[p] = usize::MAX;
            used[q] = false;
        }
    }
    false
}

/// Checks that mapping `p -> q` agrees with all already-mapped neighbors of
/// `p` in the given direction (edge counts per pair included).
fn consistent(
    p: usize,
    q: usize,
    adj_a: &[Vec<Vec<usize>>],
    adj_b: &[Vec<Vec<usize>>],
    map: &[usize],
) -> bool {
    for s in 0..adj_a[p].len() {
        for &t in &adj_a[p][s] {
            let mt = if t == p { q } else { map[t] };
            if mt != usize::MAX && !adj_b[q][s].contains(&mt) {
                return false;
            }
        }
        // And the converse: mapped neighbors of q must be hit from p.
        for &t in &adj_b[q][s] {
            if t == q {
                if !adj_a[p][s].contains(&p) {
                    return false;
                }
                continue;
            }
            if let Some(src) = map.iter().position(|&m| m == t) {
                if !adj_a[p][s].contains(&src) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Symbol};

    fn sym(i: usize) -> Symbol {
        Symbol::new(i)
    }

    #[test]
    fn permuted_copy_is_isomorphic() {
        let ab = Alphabet::of_size(2);
        let a = Nfa::new(3, ab.clone(), [(0, sym(0), 1), (1, sym(1), 2), (2, sym(0), 0)], [0], [2])
            .unwrap();
        // Same automaton with states renamed 0->2, 1->0, 2->1.
        let b =
            Nfa::new(3, ab, [(2, sym(0), 0), (0, sym(1), 1), (1, sym(0), 2)], [2], [1]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(b.is_isomorphic(&a));
    }

    #[test]
    fn size_mismatch() {
        let ab = Alphabet::of_size(1);
        let a = Nfa::new(2, ab.clone(), [(0, sym(0), 1)], [0], [1]).unwrap();
        let b = Nfa::new(3, ab, [(0, sym(0), 1)], [0], [1]).unwrap();
        assert!(!a.is_isomorphic(&b));
    }

    #[test]
    fn same_counts_different_shape() {
        let ab = Alphabet::of_size(1);
        // Both have 3 states, 2 transitions, 1 final; shapes differ.
        let chain = Nfa::new(3, ab.clone(), [(0, sym(0), 1), (1, sym(0), 2)], [0], [2]).unwrap();
        let fork = Nfa::new(3, ab, [(0, sym(0), 1), (0, sym(0), 2)], [0], [2]).unwrap();
        assert!(!chain.is_isomorphic(&fork));
    }

    #[test]
    fn self_loops_and_parallel_structure() {
        let ab = Alphabet::of_size(2);
        let a = Nfa::new(2, ab.clone(), [(0, sym(0), 0), (0, sym(1), 1), (1, sym(0), 1)], [0], [1])
            .unwrap();
        let b = Nfa::new(2, ab.clone(), [(1, sym(0), 1), (1, sym(1), 0), (0, sym(0), 0)], [1], [0])
            .unwrap();
        assert!(a.is_isomorphic(&b));
        let c =
            Nfa::new(2, ab, [(0, sym(0), 0), (0, sym(1), 1), (1, sym(1), 1)], [0], [1]).unwrap();
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn finals_must_match() {
        let ab = Alphabet::of_size(1);
        let a = Nfa::new(2, ab.clone(), [(0, sym(0), 1)], [0], [1]).unwrap();
        let b = Nfa::new(2, ab, [(0, sym(0), 1)], [0], [0]).unwrap();
        assert!(!a.is_isomorphic(&b));
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // A 6-cycle versus two 3-cycles: no initials or finals, every state
        // has in/out degree one, so color refinement cannot separate any
        // state and the search alone must decide.
        let ab = Alphabet::of_size(1);
        let cycle = |edges: &[(usize, usize)]| {
            Nfa::new(6, ab.clone(), edges.iter().map(|&(p, q)| (p, sym(0), q)), [], []).unwrap()
        };
        let six = cycle(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let three_three = cycle(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!six.is_isomorphic(&three_three));
        assert!(six.is_isomorphic(&cycle(&[(1, 0), (2, 1), (3, 2), (4, 3), (5, 4), (0, 5)])));
        assert!(three_three.is_isomorphic(&cycle(&[(1, 2), (2, 0), (0, 1), (5, 3), (3, 4), (4, 5)])));
    }
}
