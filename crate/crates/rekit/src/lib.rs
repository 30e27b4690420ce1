//! Regular expressions, small ε-free NFAs, and descriptional-complexity
//! experiments.
//!
//! The crate provides:
//!
//! - a regular-expression data model with parsing, printing, size measures,
//!   reduction, and star normal form ([`syntax`]);
//! - three constructions of small ε-free NFAs from an expression — the
//!   position automaton, the follow automaton, and the partial derivative
//!   automaton ([`glushkov`], [`derivatives`]);
//! - generic automaton algebra: reversal, quotients, subset construction,
//!   minimization, isomorphism ([`automata`]);
//! - NFA reduction by the coarsest right- and left-invariant equivalences
//!   ([`reduction`]);
//! - exact uniform random generation of expressions of a given size from an
//!   unambiguous grammar ([`generate`]);
//! - bounded-language oracles used to cross-check all of the above
//!   ([`oracle`]);
//! - an experiment harness that ties everything into per-size statistics
//!   ([`experiment`]).
//!
//! The `rekit` binary exposes the same functionality on the command line;
//! see the crate README.

pub mod alphabet;
pub mod automata;
pub mod derivatives;
pub mod experiment;
pub mod generate;
pub mod glushkov;
pub mod oracle;
pub mod reduction;
pub mod syntax;

pub use alphabet::{Alphabet, AlphabetError, Symbol};
pub use automata::{AutomatonError, Dfa, Nfa, Partition};
pub use derivatives::{
    linear_form, pd_automaton, pd_automaton_with_states, sigma_derivative, word_derivative,
    LinearForm,
};
pub use experiment::{
    compute_record, run_experiment, summaries_from_csv, to_csv, Construction, ExperimentConfig,
    ExperimentError, NfaMeasures, OracleConfig, Reduction, SampleRecord, SampleStats, Summary,
};
pub use generate::{
    emit_dataset, grammar_from_dsl, re_grammar, record_rng, render_dataset, DatasetRecord,
    GenerateError, Grammar, GrammarBuilder, GrammarError, GrammarSymbol, ReGenerator, SampleToken,
    Sampler,
};
pub use glushkov::{
    follow_automaton, follow_equivalence, follow_table, position_automaton, position_automaton_snf,
    FollowTable,
};
pub use oracle::{
    brute_coarsest_right_invariant, enumerate_nfa, enumerate_re, equivalent_up_to,
    first_difference, Lang, OracleError, Word,
};
pub use reduction::{
    autobisimulation, coarsest_right_invariant, l_equiv, left_equivalence, lr_equiv, r_equiv,
};
pub use syntax::{
    infer_alphabet, parse, render, MarkedLetter, MarkedRegex, Measures, ParseError, Regex,
};
