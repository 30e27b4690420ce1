//! Position automata and the follow relation.
//!
//! Positions of an expression are its letter occurrences numbered 1..alph
//! left to right, with 0 the extra start position. The [`FollowTable`]
//! collects `first`, `last`, and `follow` of every position; the position
//! automaton links position `i` to every position in `follow(i)`, labelled
//! with the letter sitting at the target. The follow automaton is the
//! quotient of the position automaton by the follow equivalence.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::Alphabet;
use crate::automata::{Nfa, Partition};
use crate::syntax::{MarkedRegex, Regex};

/// `first`, `last`, and `follow` of a marked expression.
///
/// `follow` has an entry for every position including 0, whose follow set is
/// `first`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FollowTable {
    pub first: BTreeSet<usize>,
    pub last: BTreeSet<usize>,
    pub follow: BTreeMap<usize, BTreeSet<usize>>,
}

struct Info {
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
    nullable: bool,
    empty: bool,
    follow: BTreeMap<usize, BTreeSet<usize>>,
}

impl Info {
    fn void(follow_keys: BTreeMap<usize, BTreeSet<usize>>) -> Info {
        Info {
            first: BTreeSet::new(),
            last: BTreeSet::new(),
            nullable: false,
            empty: true,
            follow: follow_keys,
        }
    }
}

fn merge_follow(
    mut a: BTreeMap<usize, BTreeSet<usize>>,
    b: BTreeMap<usize, BTreeSet<usize>>,
) -> BTreeMap<usize, BTreeSet<usize>> {
    // Positions are unique across subtrees, so this is a disjoint union.
    a.extend(b);
    a
}

fn walk(m: &MarkedRegex) -> Info {
    match m {
        Regex::Empty => Info::void(BTreeMap::new()),
        Regex::Epsilon => Info {
            first: BTreeSet::new(),
            last: BTreeSet::new(),
            nullable: true,
            empty: false,
            follow: BTreeMap::new(),
        },
        Regex::Letter(l) => {
            let pos = l.position;
            Info {
                first: BTreeSet::from([pos]),
                last: BTreeSet::from([pos]),
                nullable: false,
                empty: false,
                follow: BTreeMap::from([(pos, BTreeSet::new())]),
            }
        }
        Regex::Union(a, b) => {
            let ia = walk(a);
            let ib = walk(b);
            Info {
                first: &ia.first | &ib.first,
                last: &ia.last | &ib.last,
                nullable: ia.nullable || ib.nullable,
                empty: ia.empty && ib.empty,
                follow: merge_follow(ia.follow, ib.follow),
            }
        }
        Regex::Concat(a, b) => {
            let ia = walk(a);
            let ib = walk(b);
            let mut follow = merge_follow(ia.follow, ib.follow);
            if ia.empty || ib.empty {
                // No word passes through this node, so none of its positions
                // can occur in a word of the whole expression: every follow
                // link below it dies, matching the language-based definition.
                for set in follow.values_mut() {
                    set.clear();
                }
                return Info::void(follow);
            }
            for &x in &ia.last {
                follow.get_mut(&x).expect("last positions have entries").extend(&ib.first);
            }
            let mut first = ia.first;
            if ia.nullable {
                first.extend(&ib.first);
            }
            let mut last = ib.last;
            if ib.nullable {
                last.extend(&ia.last);
            }
            Info { first, last, nullable: ia.nullable && ib.nullable, empty: false, follow }
        }
        Regex::Star(body) => {
            let info = walk(body);
            let mut follow = info.follow;
            for &x in &info.last {
                follow.get_mut(&x).expect("last positions have entries").extend(&info.first);
            }
            Info { first: info.first, last: info.last, nullable: true, empty: false, follow }
        }
    }
}

/// Computes the follow table of a marked expression by structural induction.
///
/// The result agrees with the marked-language definition of the sets even
/// when `@0` occurs as a strict subexpression.
pub fn follow_table(m: &MarkedRegex) -> FollowTable {
    let info = walk(m);
    let mut follow = info.follow;
    follow.insert(0, info.first.clone());
    FollowTable { first: info.first, last: info.last, follow }
}

/// The position automaton: states `0..=alph`, transitions along `follow`,
/// finals `last` plus 0 when the expression is nullable.
///
/// It has exactly `alph + 1` states and is homogeneous by construction.
pub fn position_automaton(r: &Regex, alphabet: &Alphabet) -> Nfa {
    let marked = r.mark();
    let table = follow_table(&marked);
    let symbol_at = marked.position_symbols();
    let symbol_at = &symbol_at;
    let transitions = table
        .follow
        .iter()
        .flat_map(|(&i, targets)| targets.iter().map(move |&j| (i, symbol_at[j - 1], j)));
    let mut finals = table.last.clone();
    if r.nullable() {
        finals.insert(0);
    }
    Nfa::new(r.alph() + 1, alphabet.clone(), transitions, [0], finals)
        .expect("positions are in range by construction")
}

/// Position automaton computed through the star normal form of `r`.
///
/// For reduced input the result is isomorphic to `position_automaton(r)`.
pub fn position_automaton_snf(r: &Regex, alphabet: &Alphabet) -> Nfa {
    position_automaton(&r.to_snf(), alphabet)
}

/// The follow equivalence on positions: two positions are equivalent when
/// they agree on finality in the position automaton and have equal follow
/// sets.
///
/// Finality (membership in `last` plus 0 when nullable) rather than raw
/// `last` membership keeps the relation right invariant, which quotienting
/// requires.
pub fn follow_equivalence(r: &Regex) -> Partition {
    let marked = r.mark();
    let table = follow_table(&marked);
    let nullable = r.nullable();
    let is_final = |p: usize| table.last.contains(&p) || (p == 0 && nullable);
    let mut groups: BTreeMap<(bool, &BTreeSet<usize>), Vec<usize>> = BTreeMap::new();
    for (&p, follow) in &table.follow {
        groups.entry((is_final(p), follow)).or_default().push(p);
    }
    Partition::new(groups.into_values().collect(), r.alph() + 1)
        .expect("groups partition the positions")
}

/// The follow automaton: quotient of the position automaton by the follow
/// equivalence.
pub fn follow_automaton(r: &Regex, alphabet: &Alphabet) -> Nfa {
    position_automaton(r, alphabet)
        .quotient(&follow_equivalence(r))
        .expect("follow equivalence covers all positions")
}
