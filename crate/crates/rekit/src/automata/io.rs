//! Automaton serialization: JSON and DOT.
//!
//! The JSON form is
//!
//! ```json
//! {"states": 2, "alphabet": ["a", "b"], "initials": [0],
//!  "finals": [1], "transitions": [[0, "a", 1]]}
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::automata::{AutomatonError, Nfa};

#[derive(Serialize, Deserialize)]
struct NfaJson {
    states: usize,
    alphabet: Vec<String>,
    initials: Vec<usize>,
    finals: Vec<usize>,
    transitions: Vec<(usize, String, usize)>,
}

impl Nfa {
    pub fn to_json(&self) -> String {
        let doc = NfaJson {
            states: self.state_count(),
            alphabet: self.alphabet().names().map(str::to_owned).collect(),
            initials: self.initials().iter().copied().collect(),
            finals: self.finals().iter().copied().collect(),
            transitions: self
                .transitions()
                .map(|(p, s, q)| (p, self.alphabet().name(s).to_owned(), q))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("automaton serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Nfa, AutomatonError> {
        let doc: NfaJson =
            serde_json::from_str(text).map_err(|e| AutomatonError::Json(e.to_string()))?;
        let alphabet =
            Alphabet::new(doc.alphabet).map_err(|e| AutomatonError::Json(e.to_string()))?;
        let mut transitions = Vec::with_capacity(doc.transitions.len());
        for (p, name, q) in doc.transitions {
            let s = alphabet.lookup(&name).ok_or_else(|| {
                AutomatonError::Json(format!("transition letter {name:?} not in alphabet"))
            })?;
            transitions.push((p, s, q));
        }
        Nfa::new(doc.states, alphabet, transitions, doc.initials, doc.finals)
    }

    /// GraphViz rendering: states by id, final states doubly circled, one
    /// arrow per initial state.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        for &q in self.initials() {
            let _ = writeln!(out, "  __start{q} [shape=point, label=\"\"];");
        }
        for q in 0..self.state_count() {
            let shape = if self.is_final(q) { " [shape=doublecircle]" } else { "" };
            let _ = writeln!(out, "  {q}{shape};");
        }
        for &q in self.initials() {
            let _ = writeln!(out, "  __start{q} -> {q};");
        }
        for (p, s, q) in self.transitions() {
            let _ = writeln!(out, "  {p} -> {q} [label=\"{}\"];", self.alphabet().name(s));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Symbol;

    fn sample() -> Nfa {
        Nfa::new(
            2,
            Alphabet::of_size(2),
            [(0, Symbol::new(0), 1), (1, Symbol::new(1), 1)],
            [0],
            [1],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let a = sample();
        let text = a.to_json();
        let b = Nfa::from_json(&text).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(Nfa::from_json("{").is_err());
        assert!(Nfa::from_json(
            r#"{"states":1,"alphabet":["a"],"initials":[3],"finals":[],"transitions":[]}"#
        )
        .is_err());
        assert!(Nfa::from_json(
            r#"{"states":1,"alphabet":["a"],"initials":[0],"finals":[],"transitions":[[0,"b",0]]}"#
        )
        .is_err());
    }

    #[test]
    fn dot_output_shape() {
        let dot = sample().to_dot();
        assert!(dot.starts_with("digraph nfa {"));
        assert!(dot.contains("1 [shape=doublecircle];"));
        assert!(dot.contains("0 -> 1 [label=\"a\"];"));
        assert!(dot.contains("__start0 -> 0;"));
    }
}
