//! Textual grammar descriptions.
//!
//! One rule per nonterminal, alternatives separated by `|`, each rule closed
//! by `;`. Terminals are quoted (single or double quotes); `SIGMA` is the
//! letter-class terminal. The first rule's left-hand side is the start
//! symbol. `#` starts a comment running to the end of the line.
//!
//! ```text
//! S := 'a' S | 'b' ;       # words a^n b
//! ```

use crate::generate::{Grammar, GrammarBuilder, GrammarError, GrammarSymbol};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Quoted(String),
    Sigma,
    Define,
    Pipe,
    Semi,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, GrammarError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        let syntax = |message: String| GrammarError::Syntax { line: lineno + 1, message };
        while i < chars.len() {
            let c = chars[i];
            match c {
                c if c.is_whitespace() => i += 1,
                '|' => {
                    out.push((lineno + 1, Tok::Pipe));
                    i += 1;
                }
                ';' => {
                    out.push((lineno + 1, Tok::Semi));
                    i += 1;
                }
                ':' => {
                    if chars.get(i + 1) == Some(&'=') {
                        out.push((lineno + 1, Tok::Define));
                        i += 2;
                    } else {
                        return Err(syntax("expected ':='".into()));
                    }
                }
                '\'' | '"' => {
                    let quote = c;
                    let start = i + 1;
                    let mut j = start;
                    while j < chars.len() && chars[j] != quote {
                        j += 1;
                    }
                    if j == chars.len() {
                        return Err(syntax("unterminated quote".into()));
                    }
                    if j == start {
                        return Err(syntax("empty terminal".into()));
                    }
                    out.push((lineno + 1, Tok::Quoted(chars[start..j].iter().collect())));
                    i = j + 1;
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    if word == "SIGMA" {
                        out.push((lineno + 1, Tok::Sigma));
                    } else {
                        out.push((lineno + 1, Tok::Ident(word)));
                    }
                }
                c => return Err(syntax(format!("unexpected character {c:?}"))),
            }
        }
    }
    Ok(out)
}

/// Parses a grammar description; `letter_count` fixes the multiplicity of
/// `SIGMA`.
pub fn grammar_from_dsl(text: &str, letter_count: usize) -> Result<Grammar, GrammarError> {
    let tokens = lex(text)?;
    // First pass: declare all left-hand sides so rules may reference forward.
    let mut builder = GrammarBuilder::new();
    let mut lhs_names: Vec<String> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        match (&tokens[i].1, tokens.get(i + 1).map(|t| &t.1)) {
            (Tok::Ident(name), Some(Tok::Define)) if i == 0 || tokens[i - 1].1 == Tok::Semi => {
                builder.nonterminal(name);
                lhs_names.push(name.clone());
            }
            _ => {}
        }
        i += 1;
    }
    if lhs_names.is_empty() {
        return Err(GrammarError::Syntax { line: 1, message: "no rules found".into() });
    }

    let mut i = 0;
    while i < tokens.len() {
        let (line, head) = &tokens[i];
        let name = match head {
            Tok::Ident(name) => name.clone(),
            _ => {
                return Err(GrammarError::Syntax {
                    line: *line,
                    message: "expected a nonterminal name".into(),
                })
            }
        };
        match tokens.get(i + 1) {
            Some((_, Tok::Define)) => {}
            _ => return Err(GrammarError::Syntax { line: *line, message: "expected ':='".into() }),
        }
        i += 2;
        let nt = builder.nonterminal(&name);
        let mut body: Vec<GrammarSymbol> = Vec::new();
        loop {
            match tokens.get(i) {
                Some((_, Tok::Quoted(t))) => {
                    body.push(GrammarSymbol::Literal(t.clone()));
                    i += 1;
                }
                Some((_, Tok::Sigma)) => {
                    body.push(GrammarSymbol::LetterClass);
                    i += 1;
                }
                Some((_, Tok::Ident(name))) => {
                    if !lhs_names.contains(name) {
                        return Err(GrammarError::UnknownName { name: name.clone() });
                    }
                    body.push(GrammarSymbol::Nonterminal(builder.nonterminal(name)));
                    i += 1;
                }
                Some((_, Tok::Pipe)) => {
                    builder.rule(nt, std::mem::take(&mut body));
                    i += 1;
                }
                Some((_, Tok::Semi)) => {
                    builder.rule(nt, std::mem::take(&mut body));
                    i += 1;
                    break;
                }
                Some((line, Tok::Define)) => {
                    return Err(GrammarError::Syntax {
                        line: *line,
                        message: "':=' inside a rule (missing ';'?)".into(),
                    })
                }
                None => {
                    return Err(GrammarError::Syntax {
                        line: *line,
                        message: "rule not closed by ';'".into(),
                    })
                }
            }
        }
    }

    builder.build(0, letter_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::Sampler;
    use num_bigint::BigUint;

    #[test]
    fn parses_simple_grammar() {
        let g = grammar_from_dsl("S := 'a' S | 'b' ;", 1).unwrap();
        assert_eq!(g.nonterminal_count(), 1);
        assert_eq!(g.alternatives(0).len(), 2);
        let sampler = Sampler::new(g, 4).unwrap();
        assert_eq!(*sampler.count(3).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn forward_references_and_comments() {
        let g = grammar_from_dsl("S := T T ;   # two of them\nT := 'x' | SIGMA ;", 2).unwrap();
        assert_eq!(g.nonterminal_count(), 2);
        let sampler = Sampler::new(g, 2).unwrap();
        // T derives x, a, b: 3 choices; S length 2 = 3 * 3.
        assert_eq!(*sampler.count(2).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(grammar_from_dsl("", 1).is_err());
        assert!(grammar_from_dsl("S = 'a' ;", 1).is_err());
        assert!(grammar_from_dsl("S := 'a'", 1).is_err());
        assert!(grammar_from_dsl("S := '' ;", 1).is_err());
        assert!(grammar_from_dsl("S := 'a | b ;", 1).is_err());
        assert!(matches!(grammar_from_dsl("S := T ;", 1), Err(GrammarError::UnknownName { .. })));
        assert!(grammar_from_dsl("S := | 'a' ;", 1).is_err());
    }
}
