//! Statistical and structural checks of the random expression generator.

mod common;

use common::all_grammar_words;
use num_bigint::BigUint;
use rekit::{grammar_from_dsl, parse, re_grammar, record_rng, Alphabet, ReGenerator, Sampler};

/// The grammar description equivalent to the built-in one.
const RE_GRAMMAR_DSL: &str = r#"
    S := A | C | E | SIGMA | '@e' | '@0' ;
    C := C R | R R ;
    R := '(' A ')' | E | SIGMA ;
    E := '(' A ')' '*' | '(' C ')' '*' | SIGMA '*' ;
    A := '@e' '+' X | Y '+' Z ;
    X := T | T '+' X ;
    T := C | SIGMA ;
    Y := Z | Y '+' Z ;
    Z := C | E | SIGMA ;
"#;

#[test]
fn dsl_description_matches_builtin_grammar() {
    for k in [1usize, 3] {
        let from_dsl = Sampler::new(grammar_from_dsl(RE_GRAMMAR_DSL, k).unwrap(), 20).unwrap();
        let builtin = Sampler::new(re_grammar(k), 20).unwrap();
        for n in 0..=20 {
            assert_eq!(from_dsl.count(n).unwrap(), builtin.count(n).unwrap(), "n={n}, k={k}");
        }
    }
}

#[test]
fn counts_match_enumeration_prefix() {
    // Enumeration-verified table prefix; guards against count regressions.
    let expected_k1 = [0usize, 3, 2, 5, 10, 24, 59, 151, 406, 1108];
    let expected_k2 = [0usize, 4, 6, 22, 72, 252, 890, 3240, 12120, 46300];
    for (k, expected) in [(1usize, &expected_k1), (2usize, &expected_k2)] {
        let sampler = Sampler::new(re_grammar(k), 9).unwrap();
        let alphabet = Alphabet::of_size(k);
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(*sampler.count(n).unwrap(), BigUint::from(want), "count at n={n}, k={k}");
            assert_eq!(all_grammar_words(&re_grammar(k), &alphabet, n).len(), want);
        }
    }
}

#[test]
fn sampling_is_uniform_at_size_7_over_2_letters() {
    let k = 2;
    let n = 7;
    let alphabet = Alphabet::of_size(k);
    let words = all_grammar_words(&re_grammar(k), &alphabet, n);
    let count = words.len();
    let draws = 100 * count;
    let generator = ReGenerator::new(k, n);
    let mut histogram: std::collections::HashMap<String, usize> =
        words.iter().map(|w| (w.clone(), 0)).collect();
    let mut rng = record_rng(0x07EE, n, 0);
    for _ in 0..draws {
        let text = generator.sample_text(n, &mut rng).unwrap();
        *histogram.get_mut(&text).expect("sampled word enumerated") += 1;
    }
    let p = 1.0 / count as f64;
    let se = (p * (1.0 - p) / draws as f64).sqrt();
    let mut worst = 0.0f64;
    for (word, seen) in &histogram {
        let dev = (*seen as f64 / draws as f64 - p).abs() / se;
        worst = worst.max(dev);
        assert!(dev <= 4.0, "{word} deviates by {dev:.2} standard errors");
    }
    assert!(worst > 0.0);
}

#[test]
fn samples_parse_at_the_requested_size_and_alphabet() {
    for (k, size) in [(2usize, 25usize), (10, 50), (30, 40)] {
        let alphabet = Alphabet::of_size(k);
        let generator = ReGenerator::new(k, size);
        for index in 0..40 {
            let mut rng = record_rng(0x51CE, size, index);
            let text = generator.sample_text(size, &mut rng).unwrap();
            let re = parse(&text, &alphabet).unwrap_or_else(|e| panic!("{text}: {e}"));
            let m = re.measures();
            assert_eq!(m.size, size, "{text}");
            assert!(m.alph <= m.rpn && m.alph <= m.size, "{text}");
        }
    }
}

#[test]
fn four_word_grammar_sampling_is_uniform() {
    // S := 'a' S | 'b' S | 'a' | 'b' over forty thousand draws: each of the
    // four length-2 words lands at 0.25 within 0.01.
    let grammar = grammar_from_dsl("S := 'a' S | 'b' S | 'a' | 'b' ;", 1).unwrap();
    let sampler = Sampler::new(grammar, 2).unwrap();
    assert_eq!(*sampler.count(2).unwrap(), BigUint::from(4u32));
    let mut histogram = std::collections::HashMap::new();
    let mut rng = record_rng(0x4004, 2, 0);
    let draws = 40_000;
    for _ in 0..draws {
        let word = sampler.sample(2, &mut rng).unwrap();
        *histogram.entry(format!("{word:?}")).or_insert(0usize) += 1;
    }
    assert_eq!(histogram.len(), 4);
    for (word, seen) in histogram {
        let freq = seen as f64 / draws as f64;
        assert!((freq - 0.25).abs() <= 0.01, "{word}: {freq}");
    }
}

#[test]
fn residual_nonreduced_forms_are_epsilon_unions() {
    // The generator avoids every reduction rule except `@e + nullable`.
    let k = 1; // small alphabet makes nullable alternatives common
    let size = 16;
    let alphabet = Alphabet::of_size(k);
    let generator = ReGenerator::new(k, size);
    let mut nonreduced = 0;
    for index in 0..400 {
        let mut rng = record_rng(0xEE5, size, index);
        let text = generator.sample_text(size, &mut rng).unwrap();
        let re = parse(&text, &alphabet).unwrap();
        if !re.is_reduced() {
            nonreduced += 1;
            assert!(text.contains("@e+"), "unexpected non-reduced shape: {text}");
        }
    }
    // The asymmetry is real: some samples must exercise it.
    assert!(nonreduced > 0, "no @e + nullable sample seen");
}
