//! The built-in grammar for random regular expressions, and dataset output.
//!
//! The grammar generates almost reduced expressions of a given ordinary
//! length: no `@0` inside a bigger expression, no doubled stars, no useless
//! `@e` in concatenations. The one family of non-reduced expressions it
//! still produces are `@e + x` alternatives where `x` is nullable.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::alphabet::Alphabet;
use crate::generate::count::SampleToken;
use crate::generate::{GenerateError, Grammar, GrammarBuilder, GrammarSymbol, Sampler};

/// The built-in expression grammar over `k` letters.
///
/// ```text
/// S := A | C | E | SIGMA | '@e' | '@0' ;
/// C := C R | R R ;
/// R := '(' A ')' | E | SIGMA ;
/// E := '(' A ')' '*' | '(' C ')' '*' | SIGMA '*' ;
/// A := '@e' '+' X | Y '+' Z ;
/// X := T | T '+' X ;
/// T := C | SIGMA ;
/// Y := Z | Y '+' Z ;
/// Z := C | E | SIGMA ;
/// ```
pub fn re_grammar(k: usize) -> Grammar {
    assert!(k >= 1, "the expression grammar needs at least one letter");
    use GrammarSymbol::{LetterClass, Literal, Nonterminal};
    let lit = |t: &str| Literal(t.to_owned());

    let mut g = GrammarBuilder::new();
    let s = g.nonterminal("S");
    let c = g.nonterminal("C");
    let r = g.nonterminal("R");
    let e = g.nonterminal("E");
    let a = g.nonterminal("A");
    let x = g.nonterminal("X");
    let t = g.nonterminal("T");
    let y = g.nonterminal("Y");
    let z = g.nonterminal("Z");

    g.rule(s, vec![Nonterminal(a)]);
    g.rule(s, vec![Nonterminal(c)]);
    g.rule(s, vec![Nonterminal(e)]);
    g.rule(s, vec![LetterClass]);
    g.rule(s, vec![lit("@e")]);
    g.rule(s, vec![lit("@0")]);

    g.rule(c, vec![Nonterminal(c), Nonterminal(r)]);
    g.rule(c, vec![Nonterminal(r), Nonterminal(r)]);

    g.rule(r, vec![lit("("), Nonterminal(a), lit(")")]);
    g.rule(r, vec![Nonterminal(e)]);
    g.rule(r, vec![LetterClass]);

    g.rule(e, vec![lit("("), Nonterminal(a), lit(")"), lit("*")]);
    g.rule(e, vec![lit("("), Nonterminal(c), lit(")"), lit("*")]);
    g.rule(e, vec![LetterClass, lit("*")]);

    g.rule(a, vec![lit("@e"), lit("+"), Nonterminal(x)]);
    g.rule(a, vec![Nonterminal(y), lit("+"), Nonterminal(z)]);

    g.rule(x, vec![Nonterminal(t)]);
    g.rule(x, vec![Nonterminal(t), lit("+"), Nonterminal(x)]);

    g.rule(t, vec![Nonterminal(c)]);
    g.rule(t, vec![LetterClass]);

    g.rule(y, vec![Nonterminal(z)]);
    g.rule(y, vec![Nonterminal(y), lit("+"), Nonterminal(z)]);

    g.rule(z, vec![Nonterminal(c)]);
    g.rule(z, vec![Nonterminal(e)]);
    g.rule(z, vec![LetterClass]);

    g.build(s, k).expect("the built-in grammar is well formed")
}

/// Uniform generator of expression texts of a fixed ordinary length.
pub struct ReGenerator {
    alphabet: Alphabet,
    sampler: Sampler,
}

impl ReGenerator {
    /// Ready to generate expressions of length up to `max_size` over the
    /// standard alphabet of `k` letters.
    pub fn new(k: usize, max_size: usize) -> ReGenerator {
        let sampler =
            Sampler::new(re_grammar(k), max_size).expect("the built-in grammar always counts");
        ReGenerator { alphabet: Alphabet::of_size(k), sampler }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sampler(&self) -> &Sampler {
        &self.sampler
    }

    /// Count of distinct expressions of exactly the given size.
    pub fn count(&self, size: usize) -> Result<&num_bigint::BigUint, GenerateError> {
        self.sampler.count(size)
    }

    /// One uniform expression text of exactly the given size.
    pub fn sample_text<R: rand::RngCore>(
        &self,
        size: usize,
        rng: &mut R,
    ) -> Result<String, GenerateError> {
        let tokens = self.sampler.sample(size, rng)?;
        Ok(self.token_text(&tokens))
    }

    pub(crate) fn token_text(&self, tokens: &[SampleToken]) -> String {
        tokens
            .iter()
            .map(|t| match t {
                SampleToken::Literal(l) => l.as_str(),
                SampleToken::Letter(i) => self.alphabet.name(crate::alphabet::Symbol::new(*i)),
            })
            .collect()
    }
}

/// One generated dataset row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetRecord {
    pub index: usize,
    pub size: usize,
    pub alphabet_size: usize,
    pub seed: u64,
    pub text: String,
}

/// The random stream of sample `index` at a given expression size: every
/// record is derived independently of all others, so datasets are
/// reproducible and can be produced in any order.
pub fn record_rng(seed: u64, size: usize, index: usize) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(((size as u64) << 32) | index as u64);
    rng
}

/// Generates `count` expressions of the given size, reproducibly from
/// `seed`.
pub fn emit_dataset(
    k: usize,
    size: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<DatasetRecord>, GenerateError> {
    let generator = ReGenerator::new(k, size);
    (0..count)
        .map(|index| {
            let mut rng = record_rng(seed, size, index);
            let text = generator.sample_text(size, &mut rng)?;
            Ok(DatasetRecord { index, size, alphabet_size: k, seed, text })
        })
        .collect()
}

/// Tab-separated dataset lines: index, size, alphabet size, expression.
pub fn render_dataset(records: &[DatasetRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!("{}\t{}\t{}\t{}\n", r.index, r.size, r.alphabet_size, r.text));
    }
    out
}
