//! Exact word counting and uniform unranking.
//!
//! For every nonterminal and length the table stores the exact number of
//! derivable terminal strings, the letter-class terminal counting once per
//! alphabet letter. Sampling draws one arbitrary-precision index below the
//! total and walks it down the table, which gives every word of the target
//! length probability exactly 1/count.

use std::fmt;

use num_bigint::BigUint;
use rand::RngCore;

use crate::generate::{Grammar, GrammarError, GrammarSymbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerateError {
    /// No word of the requested length exists.
    NoWords { length: usize },
    /// The requested length is beyond the precomputed table.
    BeyondTable { length: usize, max_len: usize },
}

impl fmt::Display for GenerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenerateError::NoWords { length } => {
                write!(f, "the grammar derives no word of length {length}")
            }
            GenerateError::BeyondTable { length, max_len } => {
                write!(f, "length {length} exceeds the table bound {max_len}")
            }
        }
    }
}

impl std::error::Error for GenerateError {}

/// One terminal of a sampled word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleToken {
    Literal(String),
    /// Index of the chosen alphabet letter, `0..k`.
    Letter(usize),
}

/// A grammar with its count table, ready to sample words up to a fixed
/// length.
///
/// The table is immutable after construction; one sampler can serve many
/// concurrent callers, each with its own random stream.
pub struct Sampler {
    grammar: Grammar,
    max_len: usize,
    /// counts[nt][len]
    counts: Vec<Vec<BigUint>>,
    /// suffix[nt][alt][pos][len]: words of exactly `len` derivable from the
    /// body tail starting at `pos`.
    suffix: Vec<Vec<Vec<Vec<BigUint>>>>,
}

impl Sampler {
    pub fn new(grammar: Grammar, max_len: usize) -> Result<Sampler, GrammarError> {
        grammar.validate()?;
        let k = BigUint::from(grammar.letter_count());
        let n = grammar.nonterminal_count();
        let order = grammar.unit_topological_order();

        let zero = BigUint::from(0u32);
        let mut counts = vec![vec![zero.clone(); max_len + 1]; n];
        let mut suffix: Vec<Vec<Vec<Vec<BigUint>>>> = (0..n)
            .map(|nt| {
                grammar
                    .alternatives(nt)
                    .iter()
                    .map(|alt| vec![vec![zero.clone(); max_len + 1]; alt.len() + 1])
                    .collect()
            })
            .collect();

        // The empty tail derives exactly the empty string.
        for nt in 0..n {
            for (a, alt) in grammar.alternatives(nt).iter().enumerate() {
                suffix[nt][a][alt.len()][0] = BigUint::from(1u32);
            }
        }

        let terminal_count = |sym: &GrammarSymbol, len: usize, counts: &Vec<Vec<BigUint>>| match sym
        {
            GrammarSymbol::Literal(_) => {
                if len == 1 {
                    BigUint::from(1u32)
                } else {
                    BigUint::from(0u32)
                }
            }
            GrammarSymbol::LetterClass => {
                if len == 1 {
                    k.clone()
                } else {
                    BigUint::from(0u32)
                }
            }
            GrammarSymbol::Nonterminal(b) => counts[*b][len].clone(),
        };

        for len in 1..=max_len {
            // Head cells first, in unit order: a unit alternative reads the
            // count of its target at this same length.
            for &nt in &order {
                let mut total = BigUint::from(0u32);
                for (a, alt) in grammar.alternatives(nt).iter().enumerate() {
                    let mut cell = BigUint::from(0u32);
                    for j in 1..=len {
                        let head = terminal_count(&alt[0], j, &counts);
                        if head == zero {
                            continue;
                        }
                        let rest = &suffix[nt][a][1][len - j];
                        if *rest == zero {
                            continue;
                        }
                        cell += head * rest;
                    }
                    total += &cell;
                    suffix[nt][a][0][len] = cell;
                }
                counts[nt][len] = total;
            }
            // Interior cells only read strictly shorter suffix entries plus
            // the counts just fixed above.
            for nt in 0..n {
                for (a, alt) in grammar.alternatives(nt).iter().enumerate() {
                    for pos in (1..alt.len()).rev() {
                        let mut cell = BigUint::from(0u32);
                        for j in 1..=len {
                            let head = terminal_count(&alt[pos], j, &counts);
                            if head == zero {
                                continue;
                            }
                            let rest = &suffix[nt][a][pos + 1][len - j];
                            if *rest == zero {
                                continue;
                            }
                            cell += head * rest;
                        }
                        suffix[nt][a][pos][len] = cell;
                    }
                }
            }
        }

        Ok(Sampler { grammar, max_len, counts, suffix })
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of words of exactly the given length derivable from the start
    /// symbol.
    pub fn count(&self, length: usize) -> Result<&BigUint, GenerateError> {
        if length > self.max_len {
            return Err(GenerateError::BeyondTable { length, max_len: self.max_len });
        }
        Ok(&self.counts[self.grammar.start()][length])
    }

    /// Draws one word of the given length uniformly at random.
    pub fn sample<R: RngCore>(
        &self,
        length: usize,
        rng: &mut R,
    ) -> Result<Vec<SampleToken>, GenerateError> {
        let total = self.count(length)?.clone();
        if total == BigUint::from(0u32) {
            return Err(GenerateError::NoWords { length });
        }
        let index = random_below(&total, rng);
        Ok(self.word_at(length, &index))
    }

    /// The word of the given length with the given rank (0-based); the
    /// bijection underlying [`Sampler::sample`].
    pub fn word_at(&self, length: usize, index: &BigUint) -> Vec<SampleToken> {
        debug_assert!(index < &self.counts[self.grammar.start()][length]);
        let mut out = Vec::new();
        self.unrank_nonterminal(self.grammar.start(), length, index.clone(), &mut out);
        out
    }

    fn unrank_nonterminal(
        &self,
        nt: usize,
        len: usize,
        mut index: BigUint,
        out: &mut Vec<SampleToken>,
    ) {
        for (a, _) in self.grammar.alternatives(nt).iter().enumerate() {
            let c = &self.suffix[nt][a][0][len];
            if index < *c {
                self.unrank_tail(nt, a, 0, len, index, out);
                return;
            }
            index -= c;
        }
        unreachable!("rank below the count always lands in an alternative");
    }

    fn unrank_tail(
        &self,
        nt: usize,
        alt: usize,
        pos: usize,
        len: usize,
        mut index: BigUint,
        out: &mut Vec<SampleToken>,
    ) {
        let body = &self.grammar.alternatives(nt)[alt];
        if pos == body.len() {
            debug_assert_eq!(len, 0);
            return;
        }
        let zero = BigUint::from(0u32);
        for j in 1..=len {
            let head = self.symbol_count(&body[pos], j);
            if head == zero {
                continue;
            }
            let rest = &self.suffix[nt][alt][pos + 1][len - j];
            if *rest == zero {
                continue;
            }
            let block = &head * rest;
            if index < block {
                let head_rank = &index / rest;
                let rest_rank = &index % rest;
                self.unrank_symbol(&body[pos], j, head_rank, out);
                self.unrank_tail(nt, alt, pos + 1, len - j, rest_rank, out);
                return;
            }
            index -= block;
        }
        unreachable!("rank below the tail count always lands in a split");
    }

    fn unrank_symbol(
        &self,
        sym: &GrammarSymbol,
        len: usize,
        rank: BigUint,
        out: &mut Vec<SampleToken>,
    ) {
        match sym {
            GrammarSymbol::Literal(text) => {
                debug_assert_eq!(len, 1);
                out.push(SampleToken::Literal(text.clone()));
            }
            GrammarSymbol::LetterClass => {
                debug_assert_eq!(len, 1);
                let letter: usize = rank.try_into().expect("letter rank fits a machine word");
                out.push(SampleToken::Letter(letter));
            }
            GrammarSymbol::Nonterminal(b) => self.unrank_nonterminal(*b, len, rank, out),
        }
    }

    fn symbol_count(&self, sym: &GrammarSymbol, len: usize) -> BigUint {
        match sym {
            GrammarSymbol::Literal(_) => BigUint::from((len == 1) as u32),
            GrammarSymbol::LetterClass => {
                if len == 1 {
                    BigUint::from(self.grammar.letter_count())
                } else {
                    BigUint::from(0u32)
                }
            }
            GrammarSymbol::Nonterminal(b) => self.counts[*b][len].clone(),
        }
    }
}

/// Uniform value in `[0, bound)` by rejection over the bound's bit width.
fn random_below<R: RngCore>(bound: &BigUint, rng: &mut R) -> BigUint {
    debug_assert!(*bound > BigUint::from(0u32));
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let spare_bits = (bytes as u64) * 8 - bits;
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[0] &= 0xffu8 >> spare_bits;
        let candidate = BigUint::from_bytes_be(&buf);
        if candidate < *bound {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::GrammarBuilder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn aab_grammar() -> Grammar {
        // S := a S | b
        let mut g = GrammarBuilder::new();
        let s = g.nonterminal("S");
        g.rule(s, vec![GrammarSymbol::Literal("a".into()), GrammarSymbol::Nonterminal(s)]);
        g.rule(s, vec![GrammarSymbol::Literal("b".into())]);
        g.build(s, 1).unwrap()
    }

    fn four_words_grammar() -> Grammar {
        // S := a S | b S | a | b
        let mut g = GrammarBuilder::new();
        let s = g.nonterminal("S");
        g.rule(s, vec![GrammarSymbol::Literal("a".into()), GrammarSymbol::Nonterminal(s)]);
        g.rule(s, vec![GrammarSymbol::Literal("b".into()), GrammarSymbol::Nonterminal(s)]);
        g.rule(s, vec![GrammarSymbol::Literal("a".into())]);
        g.rule(s, vec![GrammarSymbol::Literal("b".into())]);
        g.build(s, 1).unwrap()
    }

    #[test]
    fn counting_examples() {
        let s = Sampler::new(aab_grammar(), 5).unwrap();
        // Exactly one word per length: a^(n-1) b.
        for len in 1..=5 {
            assert_eq!(*s.count(len).unwrap(), BigUint::from(1u32), "len {len}");
        }
        assert_eq!(*s.count(0).unwrap(), BigUint::from(0u32));

        let s = Sampler::new(four_words_grammar(), 4).unwrap();
        assert_eq!(*s.count(2).unwrap(), BigUint::from(4u32));
        assert_eq!(*s.count(3).unwrap(), BigUint::from(8u32));
        assert!(s.count(5).is_err());
    }

    #[test]
    fn unranking_is_a_bijection() {
        let s = Sampler::new(four_words_grammar(), 3).unwrap();
        let count: usize = s.count(2).unwrap().try_into().unwrap();
        let mut words = std::collections::BTreeSet::new();
        for i in 0..count {
            let w = s.word_at(2, &BigUint::from(i));
            assert_eq!(w.len(), 2);
            words.insert(format!("{w:?}"));
        }
        assert_eq!(words.len(), count);
    }

    #[test]
    fn sampling_unique_word() {
        let s = Sampler::new(aab_grammar(), 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let w = s.sample(3, &mut rng).unwrap();
        let tokens: Vec<String> = w
            .iter()
            .map(|t| match t {
                SampleToken::Literal(l) => l.clone(),
                SampleToken::Letter(i) => format!("<{i}>"),
            })
            .collect();
        assert_eq!(tokens.join(""), "aab");
    }

    #[test]
    fn sampling_errors() {
        let mut g = GrammarBuilder::new();
        let s = g.nonterminal("S");
        g.rule(s, vec![GrammarSymbol::Literal("a".into()), GrammarSymbol::Literal("a".into())]);
        let sampler = Sampler::new(g.build(s, 1).unwrap(), 5).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        // Only even lengths are inhabited.
        assert!(matches!(sampler.sample(3, &mut rng), Err(GenerateError::NoWords { .. })));
        assert!(sampler.sample(2, &mut rng).is_ok());
        assert!(matches!(sampler.sample(9, &mut rng), Err(GenerateError::BeyondTable { .. })));
    }

    #[test]
    fn letter_class_multiplicity() {
        // S := SIGMA SIGMA over k = 3.
        let mut g = GrammarBuilder::new();
        let s = g.nonterminal("S");
        g.rule(s, vec![GrammarSymbol::LetterClass, GrammarSymbol::LetterClass]);
        let sampler = Sampler::new(g.build(s, 3).unwrap(), 3).unwrap();
        assert_eq!(*sampler.count(2).unwrap(), BigUint::from(9u32));
        // Unranking resolves letters positionally.
        let w = sampler.word_at(2, &BigUint::from(5u32));
        assert_eq!(w, vec![SampleToken::Letter(1), SampleToken::Letter(2)]);
    }

    #[test]
    fn random_below_is_in_range() {
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        for bound in [1u32, 2, 3, 7, 255, 256, 1000] {
            let b = BigUint::from(bound);
            for _ in 0..50 {
                assert!(random_below(&b, &mut rng) < b);
            }
        }
    }
}
