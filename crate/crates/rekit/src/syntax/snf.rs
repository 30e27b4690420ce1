//! Star normal form.
//!
//! An expression is in star normal form when the body of every starred
//! subexpression is non-nullable and none of its last positions is followed
//! by one of its first positions. The transformation below is the classic
//! linear-time two-function recursion: `dot` rewrites a whole expression,
//! `circle` rewrites the body of a star so that iteration never re-enters
//! through a nullable path.

use crate::glushkov::follow_table;
use crate::syntax::Regex;

impl Regex {
    /// True iff every starred subexpression `b*` satisfies both star normal
    /// form conditions: `b` is not nullable and `follow(b, x)` is disjoint
    /// from `first(b)` for every `x` in `last(b)`.
    pub fn is_snf(&self) -> bool {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Letter(_) => true,
            Regex::Union(l, r) | Regex::Concat(l, r) => l.is_snf() && r.is_snf(),
            Regex::Star(body) => {
                if body.nullable() {
                    return false;
                }
                let table = follow_table(&body.mark());
                let loop_free =
                    table.last.iter().all(|x| table.follow[x].is_disjoint(&table.first));
                loop_free && body.is_snf()
            }
        }
    }

    /// Rewrites into an equivalent expression in star normal form.
    ///
    /// Non-reduced input is reduced first. The output keeps the same letters
    /// in the same order, so for reduced input the position automaton is
    /// unchanged. No simplification beyond the transformation itself is
    /// performed; the result of rewriting a star body can contain `@0`
    /// alternatives (e.g. `(@e+a)*` becomes `(@0+a)*`).
    pub fn to_snf(&self) -> Regex {
        if self.is_reduced() {
            bk(self).0
        } else {
            bk(&self.reduce()).0
        }
    }
}

/// Returns `(dot, circle)` for `r`, computed together so the whole
/// transformation stays linear in the tree size.
fn bk(r: &Regex) -> (Regex, Regex) {
    match r {
        Regex::Empty => (Regex::Empty, Regex::Empty),
        Regex::Epsilon => (Regex::Epsilon, Regex::Empty),
        Regex::Letter(s) => (Regex::Letter(*s), Regex::Letter(*s)),
        Regex::Union(l, r) => {
            let (ld, lc) = bk(l);
            let (rd, rc) = bk(r);
            (Regex::union(ld, rd), Regex::union(lc, rc))
        }
        Regex::Concat(l, r) => {
            let (ld, lc) = bk(l);
            let (rd, rc) = bk(r);
            let dot = Regex::concat(ld, rd);
            if l.nullable() && r.nullable() {
                (dot, Regex::union(lc, rc))
            } else {
                let circle = dot.clone();
                (dot, circle)
            }
        }
        Regex::Star(body) => {
            let (_, circle) = bk(body);
            (Regex::star(circle.clone()), circle)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::syntax::parse;

    fn re(text: &str) -> Regex {
        parse(text, &Alphabet::of_size(3)).unwrap()
    }

    #[test]
    fn is_snf_examples() {
        assert!(!re("(a*b*)*").is_snf());
        assert!(re("(a+b)*").is_snf());
        assert!(re("ab").is_snf());
        assert!(re("(a+b)*a").is_snf());
        assert!(!re("(a*+b)*").is_snf());
        // Non-nullable star body: both conditions hold.
        assert!(re("(aa*)*").is_snf());
    }

    #[test]
    fn to_snf_examples() {
        assert_eq!(re("(a*b*)*").to_snf(), re("(a+b)*"));
        assert_eq!(re("a*").to_snf(), re("a*"));
        assert_eq!(re("(a+b)*a").to_snf(), re("(a+b)*a"));
        assert_eq!(re("(a*+b)*").to_snf(), re("(a+b)*"));
        assert_eq!(re("(aa*)*").to_snf(), re("(aa*)*"));
    }

    #[test]
    fn to_snf_outputs_are_snf() {
        for text in ["(a*b*)*", "(aa*)*", "((a+@e)(b+@e))*", "(a*+b)*", "(@e+a)*"] {
            let out = re(text).to_snf();
            assert!(out.is_snf(), "{text} -> not snf");
            assert_eq!(out.alph(), re(text).reduce().alph(), "{text}: alph changed");
        }
    }

    #[test]
    fn snf_keeps_epsilon_union_visible() {
        // The star body loses its nullable alternative but keeps its shape.
        assert_eq!(re("(@e+a)*").to_snf(), re("(@0+a)*"));
        assert!(!re("(@0+a)*").is_reduced());
        assert!(re("(@0+a)*").is_snf());
    }
}
