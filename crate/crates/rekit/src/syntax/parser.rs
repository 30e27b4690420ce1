//! Surface syntax for regular expressions.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor+              juxtaposition is concatenation
//! factor := atom '*'*
//! atom   := SYMBOL | '@e' | '@0' | '(' expr ')'
//! SYMBOL := [a-z] | 'a_' DIGITS
//! ```
//!
//! `+` has the lowest precedence, juxtaposition binds tighter, `*` tightest.
//! Both `+` and juxtaposition associate to the left. Whitespace is ignored.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::syntax::Regex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownSymbol(String),
}

/// Parse failure with the character offset it occurred at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character {c:?} at position {}", self.position)
            }
            ParseErrorKind::UnexpectedToken(t) => {
                write!(f, "unexpected {t} at position {}", self.position)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of input at position {}", self.position)
            }
            ParseErrorKind::UnknownSymbol(s) => {
                write!(f, "symbol {s:?} at position {} is not in the alphabet", self.position)
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Plus,
    Star,
    LParen,
    RParen,
    Epsilon,
    Empty,
    Sym(String),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Plus => "'+'".into(),
            Token::Star => "'*'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Epsilon => "'@e'".into(),
            Token::Empty => "'@0'".into(),
            Token::Sym(s) => format!("symbol {s:?}"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let pos = i;
        let c = chars[i];
        i += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '+' => Token::Plus,
            '*' => Token::Star,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '@' => match chars.get(i) {
                Some('e') => {
                    i += 1;
                    Token::Epsilon
                }
                Some('0') => {
                    i += 1;
                    Token::Empty
                }
                other => {
                    let bad = other.copied().unwrap_or('@');
                    return Err(ParseError {
                        position: pos,
                        kind: ParseErrorKind::UnexpectedChar(bad),
                    });
                }
            },
            'a' if chars.get(i) == Some(&'_') => {
                let mut name = String::from("a_");
                i += 1;
                let digits_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    name.push(chars[i]);
                    i += 1;
                }
                if i == digits_start {
                    let bad = chars.get(i).copied().unwrap_or('_');
                    return Err(ParseError {
                        position: i,
                        kind: ParseErrorKind::UnexpectedChar(bad),
                    });
                }
                Token::Sym(name)
            }
            c if c.is_ascii_lowercase() => Token::Sym(c.to_string()),
            c => return Err(ParseError { position: pos, kind: ParseErrorKind::UnexpectedChar(c) }),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    next: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.next).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.next).cloned();
        if t.is_some() {
            self.next += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Regex, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.bump();
            acc = Regex::union(acc, self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Regex, ParseError> {
        let mut acc = self.factor()?;
        while matches!(
            self.peek(),
            Some(Token::Sym(_) | Token::Epsilon | Token::Empty | Token::LParen)
        ) {
            acc = Regex::concat(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Regex, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = Regex::star(acc);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Regex, ParseError> {
        let position = self.position();
        match self.bump() {
            None => Err(ParseError { position, kind: ParseErrorKind::UnexpectedEnd }),
            Some((pos, Token::Sym(name))) => match self.alphabet.lookup(&name) {
                Some(s) => Ok(Regex::Letter(s)),
                None => {
                    Err(ParseError { position: pos, kind: ParseErrorKind::UnknownSymbol(name) })
                }
            },
            Some((_, Token::Epsilon)) => Ok(Regex::Epsilon),
            Some((_, Token::Empty)) => Ok(Regex::Empty),
            Some((_, Token::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Token::RParen)) => Ok(inner),
                    Some((pos, t)) => Err(ParseError {
                        position: pos,
                        kind: ParseErrorKind::UnexpectedToken(t.describe()),
                    }),
                    None => {
                        Err(ParseError { position: self.end, kind: ParseErrorKind::UnexpectedEnd })
                    }
                }
            }
            Some((pos, t)) => Err(ParseError {
                position: pos,
                kind: ParseErrorKind::UnexpectedToken(t.describe()),
            }),
        }
    }
}

/// Parses `text` over the given alphabet.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex, ParseError> {
    let tokens = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser { tokens, next: 0, end, alphabet };
    let r = p.expr()?;
    match p.bump() {
        None => Ok(r),
        Some((pos, t)) => {
            Err(ParseError { position: pos, kind: ParseErrorKind::UnexpectedToken(t.describe()) })
        }
    }
}

/// Builds the alphabet of all symbols occurring in `text`, in sorted order.
///
/// Useful when a caller has only an expression and no declared alphabet.
pub fn infer_alphabet(text: &str) -> Result<Alphabet, ParseError> {
    let tokens = lex(text)?;
    let mut names: Vec<String> = tokens
        .into_iter()
        .filter_map(|(_, t)| match t {
            Token::Sym(s) => Some(s),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    Ok(Alphabet::new(names).expect("lexer only yields valid letter names"))
}
