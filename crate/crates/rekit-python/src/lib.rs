//! Python bindings: the `rekit_py` extension module.
//!
//! Exposes the expression type with its rewrites and measures, the NFA type
//! with constructions, reductions and serialization, plus uniform dataset
//! generation and the experiment pipeline.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rekit::experiment::{ExperimentConfig, OracleConfig};
use rekit::oracle::Lang;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Splits a word into alphabet letters (`ab`, or `a_0a_12` for large
/// alphabets).
fn tokenize_word(alphabet: &rekit::Alphabet, text: &str) -> PyResult<Vec<rekit::Symbol>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let name = if chars[i] == 'a' && chars.get(i + 1) == Some(&'_') {
            let mut j = i + 2;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let name: String = chars[i..j].iter().collect();
            i = j;
            name
        } else {
            let name = chars[i].to_string();
            i += 1;
            name
        };
        match alphabet.lookup(&name) {
            Some(s) => out.push(s),
            None => return Err(value_error(format!("letter {name:?} not in alphabet"))),
        }
    }
    Ok(out)
}

/// A regular expression over a fixed alphabet.
#[pyclass(frozen)]
struct Regex {
    inner: rekit::Regex,
    alphabet: rekit::Alphabet,
}

impl Regex {
    fn wrap(&self, inner: rekit::Regex) -> Regex {
        Regex { inner, alphabet: self.alphabet.clone() }
    }
}

#[pymethods]
impl Regex {
    /// Parses an expression. Without an explicit alphabet, the letters
    /// occurring in the text become the alphabet.
    #[staticmethod]
    #[pyo3(signature = (text, alphabet=None))]
    fn parse(text: &str, alphabet: Option<Vec<String>>) -> PyResult<Regex> {
        let alphabet = match alphabet {
            Some(names) => rekit::Alphabet::new(names).map_err(value_error)?,
            None => rekit::infer_alphabet(text).map_err(value_error)?,
        };
        let inner = rekit::parse(text, &alphabet).map_err(value_error)?;
        Ok(Regex { inner, alphabet })
    }

    fn render(&self) -> String {
        rekit::render(&self.inner, &self.alphabet)
    }

    fn __repr__(&self) -> String {
        format!("Regex({:?})", self.render())
    }

    fn __eq__(&self, other: &Regex) -> bool {
        self.inner == other.inner && self.alphabet == other.alphabet
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.alphabet.names().map(str::to_owned).collect()
    }

    /// `{"size": ..., "alph": ..., "rpn": ...}`.
    fn measures(&self) -> std::collections::HashMap<String, usize> {
        let m = self.inner.measures();
        [("size".to_owned(), m.size), ("alph".to_owned(), m.alph), ("rpn".to_owned(), m.rpn)]
            .into_iter()
            .collect()
    }

    fn nullable(&self) -> bool {
        self.inner.nullable()
    }

    fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    fn is_snf(&self) -> bool {
        self.inner.is_snf()
    }

    fn reduce(&self) -> Regex {
        self.wrap(self.inner.reduce())
    }

    fn to_snf(&self) -> Regex {
        self.wrap(self.inner.to_snf())
    }

    /// Partial derivatives by one letter.
    fn derivative(&self, letter: &str) -> PyResult<Vec<Regex>> {
        let s = self
            .alphabet
            .lookup(letter)
            .ok_or_else(|| value_error(format!("letter {letter:?} not in alphabet")))?;
        Ok(rekit::sigma_derivative(&self.inner, s).into_iter().map(|r| self.wrap(r)).collect())
    }

    /// Partial derivatives by a word.
    fn word_derivative(&self, word: &str) -> PyResult<Vec<Regex>> {
        let w = tokenize_word(&self.alphabet, word)?;
        Ok(rekit::word_derivative(&self.inner, &w).into_iter().map(|r| self.wrap(r)).collect())
    }

    /// All `(letter, tail)` pairs of the linear form.
    fn linear_form(&self) -> Vec<(String, Regex)> {
        rekit::linear_form(&self.inner)
            .into_iter()
            .map(|(s, t)| (self.alphabet.name(s).to_owned(), self.wrap(t)))
            .collect()
    }

    fn position_automaton(&self) -> Nfa {
        Nfa { inner: rekit::position_automaton(&self.inner, &self.alphabet) }
    }

    fn position_automaton_snf(&self) -> Nfa {
        Nfa { inner: rekit::position_automaton_snf(&self.inner, &self.alphabet) }
    }

    fn follow_automaton(&self) -> Nfa {
        Nfa { inner: rekit::follow_automaton(&self.inner, &self.alphabet) }
    }

    fn pd_automaton(&self) -> Nfa {
        Nfa { inner: rekit::pd_automaton(&self.inner, &self.alphabet) }
    }

    /// The minimal trimmed DFA, viewed as an NFA.
    fn minimal_dfa(&self) -> Nfa {
        Nfa {
            inner: rekit::pd_automaton(&self.inner, &self.alphabet)
                .determinize()
                .minimize()
                .to_nfa(),
        }
    }

    /// Words of the language up to the given length.
    fn enumerate(&self, max_len: usize) -> Vec<String> {
        rekit::enumerate_re(&self.inner, max_len)
            .into_iter()
            .map(|w| self.alphabet.word_string(&w))
            .collect()
    }

    /// Bounded language equality with another expression.
    fn equivalent_up_to(&self, other: &Regex, max_len: usize) -> PyResult<bool> {
        rekit::equivalent_up_to(
            Lang::Re(&self.inner, &self.alphabet),
            Lang::Re(&other.inner, &other.alphabet),
            max_len,
        )
        .map_err(value_error)
    }
}

/// An ε-free nondeterministic finite automaton.
#[pyclass(frozen)]
struct Nfa {
    inner: rekit::Nfa,
}

#[pymethods]
impl Nfa {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Nfa> {
        Ok(Nfa { inner: rekit::Nfa::from_json(text).map_err(value_error)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __repr__(&self) -> String {
        format!(
            "Nfa(states={}, transitions={}, initials={:?}, finals={:?})",
            self.inner.state_count(),
            self.inner.transition_count(),
            self.initials(),
            self.finals(),
        )
    }

    fn __eq__(&self, other: &Nfa) -> bool {
        self.inner == other.inner
    }

    #[getter]
    fn states(&self) -> usize {
        self.inner.state_count()
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.inner.alphabet().names().map(str::to_owned).collect()
    }

    fn transitions(&self) -> Vec<(usize, String, usize)> {
        self.inner
            .transitions()
            .map(|(p, s, q)| (p, self.inner.alphabet().name(s).to_owned(), q))
            .collect()
    }

    fn initials(&self) -> Vec<usize> {
        self.inner.initials().iter().copied().collect()
    }

    fn finals(&self) -> Vec<usize> {
        self.inner.finals().iter().copied().collect()
    }

    /// `|Q| + |transitions|`.
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn is_deterministic(&self) -> bool {
        self.inner.is_deterministic()
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    fn accepts(&self, word: &str) -> PyResult<bool> {
        let w = tokenize_word(self.inner.alphabet(), word)?;
        Ok(self.inner.accepts(&w))
    }

    fn reverse(&self) -> Nfa {
        Nfa { inner: self.inner.reverse() }
    }

    /// Quotient by the coarsest right-invariant equivalence.
    fn r_equiv(&self) -> Nfa {
        Nfa { inner: rekit::r_equiv(&self.inner) }
    }

    /// Quotient by the coarsest left-invariant equivalence.
    fn l_equiv(&self) -> Nfa {
        Nfa { inner: rekit::l_equiv(&self.inner) }
    }

    /// Left then right reduction.
    fn lr_equiv(&self) -> Nfa {
        Nfa { inner: rekit::lr_equiv(&self.inner) }
    }

    /// Accessible subset construction (may be a partial DFA).
    fn determinize(&self) -> Nfa {
        Nfa { inner: self.inner.determinize().to_nfa() }
    }

    /// Minimal trimmed DFA of the same language.
    fn minimize(&self) -> Nfa {
        Nfa { inner: self.inner.determinize().minimize().to_nfa() }
    }

    fn is_isomorphic(&self, other: &Nfa) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn enumerate(&self, max_len: usize) -> Vec<String> {
        rekit::enumerate_nfa(&self.inner, max_len)
            .into_iter()
            .map(|w| self.inner.alphabet().word_string(&w))
            .collect()
    }

    fn equivalent_up_to(&self, other: &Nfa, max_len: usize) -> PyResult<bool> {
        rekit::equivalent_up_to(Lang::Auto(&self.inner), Lang::Auto(&other.inner), max_len)
            .map_err(value_error)
    }
}

/// Uniformly random expression texts of one size: `(index, text)` pairs are
/// reproducible from the seed.
#[pyfunction]
fn generate(size: usize, alphabet_size: usize, count: usize, seed: u64) -> PyResult<Vec<String>> {
    let records = rekit::emit_dataset(alphabet_size, size, count, seed).map_err(value_error)?;
    Ok(records.into_iter().map(|r| r.text).collect())
}

/// Number of distinct expressions of the given size over the given alphabet.
#[pyfunction]
fn count_expressions(size: usize, alphabet_size: usize) -> PyResult<BigUint> {
    let sampler =
        rekit::Sampler::new(rekit::re_grammar(alphabet_size), size).map_err(value_error)?;
    Ok(sampler.count(size).map_err(value_error)?.clone())
}

/// Runs the experiment pipeline and returns the CSV text.
#[pyfunction]
#[pyo3(signature = (sizes, alphabet_size, samples, seed, oracle_len=6))]
fn run_experiment_csv(
    sizes: Vec<usize>,
    alphabet_size: usize,
    samples: usize,
    seed: u64,
    oracle_len: usize,
) -> PyResult<String> {
    let cfg = ExperimentConfig {
        sizes,
        alphabet_size,
        samples,
        seed,
        oracle: OracleConfig { max_len: oracle_len, sample_every: 20 },
    };
    let stats = rekit::run_experiment(&cfg).map_err(value_error)?;
    Ok(rekit::to_csv(&stats))
}

#[pymodule]
fn rekit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Regex>()?;
    m.add_class::<Nfa>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(count_expressions, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment_csv, m)?)?;
    Ok(())
}
