//! Reduction of regular expressions.
//!
//! A reduced expression is a fixed point of the rewrite rules
//!
//! ```text
//! @e r = r @e = r          @e + r = r + @e = r   when r is nullable
//! @0 r = r @0 = @0         r** = r*
//! @0 + r = r + @0 = r      @0* = @e* = @e
//! ```
//!
//! applied anywhere in the tree. The rules preserve the language.

use crate::syntax::Regex;

impl Regex {
    /// Applies the reduction rules bottom-up until none applies.
    ///
    /// A single post-order pass reaches the fixed point; runs in time linear
    /// in the tree size.
    pub fn reduce(&self) -> Regex {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Letter(_) => self.clone(),
            Regex::Union(l, r) => {
                let l = l.reduce();
                let r = r.reduce();
                match (l, r) {
                    (Regex::Empty, r) => r,
                    (l, Regex::Empty) => l,
                    (Regex::Epsilon, r) if r.nullable() => r,
                    (l, Regex::Epsilon) if l.nullable() => l,
                    (l, r) => Regex::union(l, r),
                }
            }
            Regex::Concat(l, r) => {
                let l = l.reduce();
                let r = r.reduce();
                match (l, r) {
                    (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
                    (Regex::Epsilon, r) => r,
                    (l, Regex::Epsilon) => l,
                    (l, r) => Regex::concat(l, r),
                }
            }
            Regex::Star(c) => match c.reduce() {
                Regex::Empty | Regex::Epsilon => Regex::Epsilon,
                inner @ Regex::Star(_) => inner,
                inner => Regex::star(inner),
            },
        }
    }

    /// True iff no reduction rule applies anywhere in the tree.
    pub fn is_reduced(&self) -> bool {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Letter(_) => true,
            Regex::Union(l, r) => {
                !matches!(**l, Regex::Empty)
                    && !matches!(**r, Regex::Empty)
                    && !(matches!(**l, Regex::Epsilon) && r.nullable())
                    && !(matches!(**r, Regex::Epsilon) && l.nullable())
                    && l.is_reduced()
                    && r.is_reduced()
            }
            Regex::Concat(l, r) => {
                !matches!(**l, Regex::Empty | Regex::Epsilon)
                    && !matches!(**r, Regex::Empty | Regex::Epsilon)
                    && l.is_reduced()
                    && r.is_reduced()
            }
            Regex::Star(c) => {
                !matches!(**c, Regex::Empty | Regex::Epsilon | Regex::Star(_)) && c.is_reduced()
            }
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
    fn rule_examples() {
        assert_eq!(re("@ea").reduce(), re("a"));
        assert_eq!(re("a@e").reduce(), re("a"));
        assert_eq!(re("@0a").reduce(), re("@0"));
        assert_eq!(re("a@0").reduce(), re("@0"));
        assert_eq!(re("@0+a*").reduce(), re("a*"));
        assert_eq!(re("a*+@0").reduce(), re("a*"));
        assert_eq!(re("@e+a*").reduce(), re("a*"));
        assert_eq!(re("a**").reduce(), re("a*"));
        assert_eq!(re("@0*").reduce(), re("@e"));
        assert_eq!(re("@e*").reduce(), re("@e"));
    }

    #[test]
    fn epsilon_union_needs_nullable_side() {
        // The rule only fires when the other side is nullable.
        assert_eq!(re("@e+a").reduce(), re("@e+a"));
        assert!(re("@e+a").is_reduced());
        assert_eq!(re("@e+ab*").reduce(), re("@e+ab*"));
    }

    #[test]
    fn nested_cascades() {
        assert_eq!(re("(@0a)*").reduce(), re("@e"));
        assert_eq!(re("(@e(a+@0))*b").reduce(), re("a*b"));
        assert_eq!(re("((a*)*)*").reduce(), re("a*"));
        assert_eq!(re("@e+(@e+a)*").reduce(), re("(@e+a)*"));
    }

    #[test]
    fn is_reduced_examples() {
        assert!(re("(a+b)*a").is_reduced());
        assert!(!re("@ea").is_reduced());
        assert!(re("@e+a").is_reduced());
        assert!(!re("a**").is_reduced());
        assert!(!re("(ab)(b@0)").is_reduced());
    }
}
