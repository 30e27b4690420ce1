//! Alphabets and interned letter symbols.
//!
//! Letters are stored once in an [`Alphabet`] and referenced everywhere else
//! by a compact [`Symbol`] index. Letter names follow the surface syntax:
//! a single lowercase letter `a`..`z`, or `a_N` (with `N` a decimal number)
//! for alphabets with more than 26 letters.

use std::fmt;

/// Index of a letter in an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u16);

impl Symbol {
    pub fn new(index: usize) -> Symbol {
        assert!(index <= u16::MAX as usize, "alphabet too large");
        Symbol(index as u16)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered set of distinct letter names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

/// Error building an [`Alphabet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphabetError {
    InvalidName(String),
    Duplicate(String),
    TooLarge(usize),
}

impl fmt::Display for AlphabetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetError::InvalidName(n) => write!(f, "invalid letter name {n:?}"),
            AlphabetError::Duplicate(n) => write!(f, "duplicate letter {n:?}"),
            AlphabetError::TooLarge(k) => write!(f, "alphabet of {k} letters is too large"),
        }
    }
}

impl std::error::Error for AlphabetError {}

/// True iff `name` is a well-formed letter name (`a`..`z` or `a_N`).
pub fn is_letter_name(name: &str) -> bool {
    let bytes = name.as_bytes();
    match bytes {
        [c] => c.is_ascii_lowercase(),
        [b'a', b'_', digits @ ..] => !digits.is_empty() && digits.iter().all(u8::is_ascii_digit),
        _ => false,
    }
}

impl Alphabet {
    /// Builds an alphabet from explicit letter names, kept in the given order.
    pub fn new<I, S>(names: I) -> Result<Alphabet, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > u16::MAX as usize {
            return Err(AlphabetError::TooLarge(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_letter_name(n) {
                return Err(AlphabetError::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(AlphabetError::Duplicate(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// The standard alphabet of `k` letters: `a`..`z` when `k <= 26`,
    /// otherwise `a_0`..`a_{k-1}`.
    pub fn of_size(k: usize) -> Alphabet {
        let names = if k <= 26 {
            (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (0..k).map(|i| format!("a_{i}")).collect()
        };
        Alphabet::new::<Vec<String>, _>(names).expect("standard names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.names.len()).map(Symbol::new)
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(Symbol::new)
    }

    /// Renders a word (sequence of symbols) as text.
    pub fn word_string(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.name(s)).collect()
    }
}
