//! Printer producing the ASCII grammar accepted by the parser.

use std::fmt;

use super::{Formula, EQ};

// binding strength; quantified formulas are parenthesized whenever they are
// an operand, since their scope runs to the right
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn is_quantified(f: &Formula) -> bool {
    matches!(f, Formula::Forall(..) | Formula::Exists(..))
}

fn operand(f: &Formula, out: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
    if parens || is_quantified(f) {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Prop(p) => out.write_str(p),
            Formula::Atom(p, args) if p == EQ && args.len() == 2 => {
                write!(out, "{} = {}", args[0], args[1])
            }
            Formula::Atom(p, args) => {
                write!(out, "{p}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.write_str(", ")?;
                    }
                    write!(out, "{a}")?;
                }
                out.write_str(")")
            }
            Formula::Neg(a) => {
                out.write_str("~")?;
                operand(a, out, prec(a) < UNARY)
            }
            Formula::Cons(a) => {
                out.write_str("@")?;
                operand(a, out, prec(a) < UNARY)
            }
            Formula::And(a, b) => {
                operand(a, out, prec(a) < AND)?;
                out.write_str(" & ")?;
                operand(b, out, prec(b) <= AND)
            }
            Formula::Or(a, b) => {
                operand(a, out, prec(a) < OR)?;
                out.write_str(" | ")?;
                operand(b, out, prec(b) <= OR)
            }
            Formula::Imp(a, b) => {
                operand(a, out, prec(a) <= IMP)?;
                out.write_str(" -> ")?;
                operand(b, out, prec(b) < IMP)
            }
            Formula::Forall(x, a) => write!(out, "forall {x}. {a}"),
            Formula::Exists(x, a) => write!(out, "exists {x}. {a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_formula, Signature};

    #[test]
    fn prints_minimal_parentheses() {
        let s = Signature::new()
            .with_predicate("P", 1)
            .unwrap()
            .with_predicate("Q", 1)
            .unwrap();
        let cases = [
            ("P(x) & ~P(x)", "P(x) & ~P(x)"),
            ("(a -> b) -> c", "(a -> b) -> c"),
            ("a -> (b -> c)", "a -> b -> c"),
            ("(a & b) & c", "a & b & c"),
            ("a & (b & c)", "a & (b & c)"),
            ("~(forall x. P(x)) -> Q(x)", "~(forall x. P(x)) -> Q(x)"),
            ("exists x. ~P(x) -> ~forall x. P(x)", "exists x. ~P(x) -> ~(forall x. P(x))"),
            ("@(a | b)", "@(a | b)"),
        ];
        for (input, want) in cases {
            assert_eq!(parse_formula(input, &s).unwrap().to_string(), want);
        }
    }
}
