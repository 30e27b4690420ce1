//! Oracle-backed property sweeps over uniformly random expressions: every
//! construction, rewrite, and reduction is checked against bounded language
//! enumeration and brute-force equivalences.

mod common;

use common::{random_nfa, XorShift};
use rekit::oracle::{enumerate_nfa, enumerate_re, equivalent_up_to, Lang};
use rekit::{
    autobisimulation, brute_coarsest_right_invariant, coarsest_right_invariant, follow_automaton,
    follow_equivalence, l_equiv, lr_equiv, parse, pd_automaton, position_automaton, r_equiv,
    record_rng, render, sigma_derivative, Alphabet, ReGenerator, Regex, Symbol,
};

/// Deterministic stream of random expressions at the given sizes.
fn samples(k: usize, sizes: &[usize], per_size: usize, seed: u64) -> Vec<(Regex, Alphabet)> {
    let alphabet = Alphabet::of_size(k);
    let mut out = Vec::new();
    for &size in sizes {
        let generator = ReGenerator::new(k, size);
        for i in 0..per_size {
            let mut rng = record_rng(seed, size, i);
            let text = generator.sample_text(size, &mut rng).expect("size is inhabited");
            out.push((parse(&text, &alphabet).expect("generated text parses"), alphabet.clone()));
        }
    }
    out
}

#[test]
fn reduce_preserves_language_and_measures() {
    for (re, ab) in samples(2, &[8, 10, 12, 14], 60, 0xA11CE) {
        let reduced = re.reduce();
        assert!(
            equivalent_up_to(Lang::Re(&re, &ab), Lang::Re(&reduced, &ab), 8).unwrap(),
            "language changed for {}",
            render(&re, &ab)
        );
        assert_eq!(reduced.reduce(), reduced, "not idempotent on {}", render(&re, &ab));
        assert!(reduced.is_reduced());
        assert!(reduced.alph() <= re.alph());
        assert!(reduced.rpn() <= re.rpn());
        assert_eq!(re.is_reduced(), re.reduce() == re);
    }
}

#[test]
fn parse_render_round_trip() {
    for (re, ab) in samples(2, &[10, 20, 35], 80, 0xB0B) {
        let text = render(&re, &ab);
        assert_eq!(parse(&text, &ab).unwrap(), re, "round trip failed for {text}");
        // One token per character, except @e/@0 which render as two chars.
        assert_eq!(re.size(), text.chars().count() - text.matches('@').count());
    }
}

#[test]
fn snf_transform_is_sound() {
    for (re, ab) in samples(2, &[8, 10, 12, 14], 60, 0x5AFE) {
        let reduced = re.reduce();
        let snf = reduced.to_snf();
        assert!(snf.is_snf(), "not in star normal form: {}", render(&snf, &ab));
        assert!(
            equivalent_up_to(Lang::Re(&reduced, &ab), Lang::Re(&snf, &ab), 8).unwrap(),
            "language changed for {}",
            render(&reduced, &ab)
        );
        assert_eq!(snf.alph(), reduced.alph());
        let direct = position_automaton(&reduced, &ab);
        let via_snf = position_automaton(&snf, &ab);
        assert!(direct.is_isomorphic(&via_snf), "{}", render(&reduced, &ab));
    }
}

#[test]
fn constructions_share_the_language() {
    let mut checked = 0;
    for (re, ab) in samples(2, &[8, 10, 12, 14], 40, 0xC0FFEE) {
        let words = enumerate_re(&re, 8);
        let pos = position_automaton(&re, &ab);
        let follow = follow_automaton(&re, &ab);
        let pd = pd_automaton(&re, &ab);
        let min = pos.determinize().minimize().to_nfa();
        for (name, nfa) in [("pos", &pos), ("follow", &follow), ("pd", &pd), ("min", &min)] {
            assert_eq!(enumerate_nfa(nfa, 8), words, "{name} differs on {}", render(&re, &ab));
        }
        assert_eq!(pos.state_count(), re.alph() + 1);
        assert!(pos.is_homogeneous());
        assert!(follow.state_count() <= pos.state_count());
        assert!(pd.state_count() <= pos.state_count());
        if re.is_reduced() && re.is_snf() {
            assert!(pd.size() <= follow.size(), "pd larger on {}", render(&re, &ab));
        }
        checked += 1;
    }
    assert_eq!(checked, 160);
}

#[test]
fn follow_equivalence_is_right_invariant() {
    for (re, ab) in samples(2, &[10, 16], 60, 0xF01) {
        let pos = position_automaton(&re, &ab);
        let equiv = follow_equivalence(&re);
        assert!(equiv.is_right_invariant(&pos), "{}", render(&re, &ab));
        let quotient = pos.quotient(&equiv).unwrap();
        let follow = follow_automaton(&re, &ab);
        assert_eq!(quotient, follow);
        assert!(equivalent_up_to(Lang::Auto(&pos), Lang::Auto(&quotient), 8).unwrap());
    }
}

#[test]
fn derivatives_compute_left_quotients() {
    for (re, ab) in samples(2, &[8, 10, 12], 40, 0xDE1) {
        let words = enumerate_re(&re, 8);
        for s in ab.symbols() {
            // Union of the derivative languages = words starting with s.
            let mut derived: std::collections::BTreeSet<Vec<Symbol>> =
                std::collections::BTreeSet::new();
            for d in sigma_derivative(&re, s) {
                derived.extend(enumerate_re(&d, 7));
            }
            let quotient: std::collections::BTreeSet<Vec<Symbol>> =
                words.iter().filter(|w| w.first() == Some(&s)).map(|w| w[1..].to_vec()).collect();
            assert_eq!(derived, quotient, "on {}", render(&re, &ab));
        }
    }
}

#[test]
fn reductions_preserve_language_and_shrink() {
    for (re, ab) in samples(2, &[10, 14], 40, 0xEE) {
        let pd = pd_automaton(&re, &ab);
        let words = enumerate_nfa(&pd, 8);
        let right = r_equiv(&pd);
        let left = l_equiv(&pd);
        let both = lr_equiv(&pd);
        assert!(both.size() <= left.size());
        assert!(left.size() <= pd.size());
        assert!(right.size() <= pd.size());
        for (name, nfa) in [("r", &right), ("l", &left), ("lr", &both)] {
            assert_eq!(enumerate_nfa(nfa, 8), words, "{name} broke {}", render(&re, &ab));
        }
    }
}

#[test]
fn bisimulation_routes_agree_on_random_nfas() {
    let mut rng = XorShift(0x1234_5678_9abc_def0);
    for _ in 0..250 {
        let nfa = random_nfa(&mut rng, 5, 3);
        let naive = autobisimulation(&nfa);
        let brute = brute_coarsest_right_invariant(&nfa).unwrap();
        let fast = coarsest_right_invariant(&nfa);
        assert_eq!(naive, brute);
        assert_eq!(naive, fast);
        assert!(naive.is_right_invariant(&nfa));
        // Language preserved by the quotient.
        let q = nfa.quotient(&naive).unwrap();
        assert_eq!(enumerate_nfa(&q, 6), enumerate_nfa(&nfa, 6));
    }
}

#[test]
fn reversal_is_involutive_on_random_nfas() {
    let mut rng = XorShift(0xFEED);
    for _ in 0..100 {
        let nfa = random_nfa(&mut rng, 6, 3);
        assert_eq!(nfa.reverse().reverse(), nfa);
    }
}

#[test]
fn determinize_minimize_is_construction_independent() {
    for (re, ab) in samples(2, &[10, 14, 18], 30, 0xD1CE) {
        let from_pos = position_automaton(&re, &ab).determinize().minimize();
        let from_pd = pd_automaton(&re, &ab).determinize().minimize();
        let from_follow = follow_automaton(&re, &ab).determinize().minimize();
        // Canonical numbering makes equal languages yield equal automata.
        assert_eq!(from_pos, from_pd, "on {}", render(&re, &ab));
        assert_eq!(from_pos, from_follow, "on {}", render(&re, &ab));
        assert_eq!(from_pos.minimize(), from_pos);
        assert!(from_pos.state_count() <= position_automaton(&re, &ab).determinize().state_count());
    }
}

#[test]
fn pd_states_stay_within_the_position_bound() {
    for (re, ab) in samples(5, &[20, 30], 50, 0x9D) {
        let pd = pd_automaton(&re, &ab);
        assert!(pd.state_count() <= re.alph() + 1, "{}", render(&re, &ab));
    }
}
