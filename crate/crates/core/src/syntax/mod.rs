//! First-order syntax: signatures, terms, formulas and the substitution
//! machinery shared by every other module.
//!
//! Formulas are plain immutable trees. Derived notations (`<->` and strong
//! negation `!`) are expanded by the parser, so they never show up here.
//!
//! Besides first-order atoms, a formula may contain *propositional letters*
//! ([`Formula::Prop`]). They are the propositional variables of the matrix
//! evaluator and double as schematic formula letters in Hilbert proofs.

mod enumerate;
mod parser;
mod printer;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use enumerate::{enumerate_formulas, enumerate_terms, FormulaEnumerator};
pub use parser::{parse_formula, parse_formula_inferring, parse_term};

/// Name of the distinguished binary equality predicate.
pub const EQ: &str = "=";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("`{term}` is not free for `{var}` in `{formula}`")]
    Capture {
        term: String,
        var: String,
        formula: String,
    },
    #[error("invalid signature: {0}")]
    Signature(String),
}

/// A first-order signature: predicate and function symbols with their
/// arities, individual constants, and an optional equality predicate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    predicates: BTreeMap<String, usize>,
    functions: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
    has_equality: bool,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Result<Self, SyntaxError> {
        self.add_predicate(name, arity)?;
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Result<Self, SyntaxError> {
        self.add_function(name, arity)?;
        Ok(self)
    }

    pub fn with_constant(mut self, name: &str) -> Result<Self, SyntaxError> {
        self.add_constant(name)?;
        Ok(self)
    }

    pub fn with_equality(mut self) -> Self {
        self.has_equality = true;
        self
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        self.check_fresh(name)?;
        if arity == 0 {
            return Err(SyntaxError::Signature(format!(
                "predicate `{name}` must have positive arity"
            )));
        }
        self.predicates.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        self.check_fresh(name)?;
        if arity == 0 {
            return Err(SyntaxError::Signature(format!(
                "function `{name}` must have positive arity; use a constant"
            )));
        }
        self.functions.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str) -> Result<(), SyntaxError> {
        self.check_fresh(name)?;
        self.constants.insert(name.to_string());
        Ok(())
    }

    pub fn set_equality(&mut self, on: bool) {
        self.has_equality = on;
    }

    fn check_fresh(&self, name: &str) -> Result<(), SyntaxError> {
        if !is_identifier(name) {
            return Err(SyntaxError::Signature(format!("`{name}` is not an identifier")));
        }
        if self.predicates.contains_key(name)
            || self.functions.contains_key(name)
            || self.constants.contains(name)
        {
            return Err(SyntaxError::Signature(format!("`{name}` declared twice")));
        }
        Ok(())
    }

    /// Arity of a predicate; the equality predicate counts when enabled.
    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        if name == EQ {
            return self.has_equality.then_some(2);
        }
        self.predicates.get(name).copied()
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn has_equality(&self) -> bool {
        self.has_equality
    }

    /// Non-equality predicates in name order.
    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(n, a)| (n.as_str(), *a))
    }

    /// All predicates including `=` (listed last) when equality is on.
    pub fn all_predicates(&self) -> Vec<(String, usize)> {
        let mut out: Vec<_> = self
            .predicates
            .iter()
            .map(|(n, a)| (n.clone(), *a))
            .collect();
        if self.has_equality {
            out.push((EQ.to_string(), 2));
        }
        out
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.constants.iter().map(String::as_str)
    }

    /// True when every symbol of `self` is declared with the same arity in `other`.
    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.predicates
            .iter()
            .all(|(n, a)| other.predicates.get(n) == Some(a))
            && self
                .functions
                .iter()
                .all(|(n, a)| other.functions.get(n) == Some(a))
            && self.constants.is_subset(&other.constants)
            && (!self.has_equality || other.has_equality)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !parser::KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Self {
        Term::Const(name.to_string())
    }

    /// Variables occurring in the term.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    /// `self(t/x)`: every occurrence of `x` replaced by `t`.
    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == x => t.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
        }
    }

    pub fn check(&self, sig: &Signature) -> Result<(), SyntaxError> {
        match self {
            Term::Var(_) => Ok(()),
            Term::Const(c) if sig.is_constant(c) => Ok(()),
            Term::Const(c) => Err(SyntaxError::UnknownSymbol(c.clone())),
            Term::App(f, args) => {
                let arity = sig
                    .function_arity(f)
                    .ok_or_else(|| SyntaxError::UnknownSymbol(f.clone()))?;
                if arity != args.len() {
                    return Err(SyntaxError::Arity {
                        name: f.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }
}

/// Binary connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    And,
    Or,
    Imp,
}

/// The two quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// Propositional letter (schematic formula letter in proofs).
    Prop(String),
    Atom(String, Vec<Term>),
    Neg(Box<Formula>),
    Cons(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn prop(name: &str) -> Self {
        Formula::Prop(name.to_string())
    }

    pub fn atom(pred: &str, args: Vec<Term>) -> Self {
        Formula::Atom(pred.to_string(), args)
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Atom(EQ.to_string(), vec![lhs, rhs])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn cons(f: Formula) -> Self {
        Formula::Cons(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, f: Formula) -> Self {
        Formula::Forall(x.to_string(), Box::new(f))
    }

    pub fn exists(x: &str, f: Formula) -> Self {
        Formula::Exists(x.to_string(), Box::new(f))
    }

    pub fn binary(op: BinOp, a: Formula, b: Formula) -> Self {
        match op {
            BinOp::And => Formula::and(a, b),
            BinOp::Or => Formula::or(a, b),
            BinOp::Imp => Formula::imp(a, b),
        }
    }

    pub fn quantified(q: Quantifier, x: &str, f: Formula) -> Self {
        match q {
            Quantifier::Forall => Formula::forall(x, f),
            Quantifier::Exists => Formula::exists(x, f),
        }
    }

    /// Strong negation `¬α ∧ ∘α`.
    pub fn strong_neg(f: Formula) -> Self {
        Formula::and(Formula::neg(f.clone()), Formula::cons(f))
    }

    /// `(α → β) ∧ (β → α)`.
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(
            Formula::imp(a.clone(), b.clone()),
            Formula::imp(b, a),
        )
    }

    /// Connective/quantifier nesting depth; atoms and letters have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Atom(..) => 0,
            Formula::Neg(a) | Formula::Cons(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => {
                1 + a.depth()
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(_) => {}
            Formula::Atom(_, args) => {
                for a in args {
                    for v in a.vars() {
                        if !bound.contains(&v.as_str()) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::Neg(a) | Formula::Cons(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Formula::Prop(_) => false,
            Formula::Atom(_, args) => args.iter().any(|a| a.contains_var(x)),
            Formula::Neg(a) | Formula::Cons(a) => a.has_free(x),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.has_free(x) || b.has_free(x)
            }
            Formula::Forall(y, a) | Formula::Exists(y, a) => y != x && a.has_free(x),
        }
    }

    /// Like [`Formula::has_free`], but also true when a propositional letter
    /// occurs outside the scope of a quantifier on `x`: read schematically,
    /// such a letter may stand for a formula with `x` free.
    pub fn may_have_free(&self, x: &str) -> bool {
        match self {
            Formula::Prop(_) => true,
            Formula::Atom(_, args) => args.iter().any(|a| a.contains_var(x)),
            Formula::Neg(a) | Formula::Cons(a) => a.may_have_free(x),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.may_have_free(x) || b.may_have_free(x)
            }
            Formula::Forall(y, a) | Formula::Exists(y, a) => y != x && a.may_have_free(x),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::Atom(..) => true,
            Formula::Neg(a) | Formula::Cons(a) => a.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Propositional letters, in name order.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Prop(_) | Formula::Atom(..) => {}
            Formula::Neg(a) | Formula::Cons(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => {
                a.visit(f)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Checks symbols and arities against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<(), SyntaxError> {
        match self {
            Formula::Prop(_) => Ok(()),
            Formula::Atom(p, args) => {
                let arity = sig
                    .predicate_arity(p)
                    .ok_or_else(|| SyntaxError::UnknownSymbol(p.clone()))?;
                if arity != args.len() {
                    return Err(SyntaxError::Arity {
                        name: p.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
            Formula::Neg(a) | Formula::Cons(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => {
                a.check(sig)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.check(sig)?;
                b.check(sig)
            }
        }
    }

    /// True iff no free occurrence of `x` lies in the scope of a quantifier
    /// binding a variable of `t`.
    pub fn is_free_for(&self, t: &Term, x: &str) -> bool {
        let tvars = t.vars();
        self.free_for_rec(x, &tvars, false)
    }

    fn free_for_rec(&self, x: &str, tvars: &BTreeSet<String>, captured: bool) -> bool {
        match self {
            Formula::Prop(_) => true,
            Formula::Atom(_, args) => !captured || !args.iter().any(|a| a.contains_var(x)),
            Formula::Neg(a) | Formula::Cons(a) => a.free_for_rec(x, tvars, captured),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.free_for_rec(x, tvars, captured) && b.free_for_rec(x, tvars, captured)
            }
            Formula::Forall(y, a) | Formula::Exists(y, a) => {
                if y == x {
                    // no free occurrence of x below
                    true
                } else {
                    a.free_for_rec(x, tvars, captured || tvars.contains(y))
                }
            }
        }
    }

    /// `self(t/x)`. Refuses with [`SyntaxError::Capture`] when `t` is not
    /// free for `x`; bound variables are never renamed.
    pub fn substitute(&self, x: &str, t: &Term) -> Result<Formula, SyntaxError> {
        if !self.is_free_for(t, x) {
            return Err(SyntaxError::Capture {
                term: t.to_string(),
                var: x.to_string(),
                formula: self.to_string(),
            });
        }
        Ok(self.substitute_unchecked(x, t))
    }

    fn substitute_unchecked(&self, x: &str, t: &Term) -> Formula {
        match self {
            Formula::Prop(_) => self.clone(),
            Formula::Atom(p, args) => {
                Formula::Atom(p.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
            Formula::Neg(a) => Formula::neg(a.substitute_unchecked(x, t)),
            Formula::Cons(a) => Formula::cons(a.substitute_unchecked(x, t)),
            Formula::And(a, b) => {
                Formula::and(a.substitute_unchecked(x, t), b.substitute_unchecked(x, t))
            }
            Formula::Or(a, b) => {
                Formula::or(a.substitute_unchecked(x, t), b.substitute_unchecked(x, t))
            }
            Formula::Imp(a, b) => {
                Formula::imp(a.substitute_unchecked(x, t), b.substitute_unchecked(x, t))
            }
            Formula::Forall(y, _) | Formula::Exists(y, _) if y == x => self.clone(),
            Formula::Forall(y, a) => Formula::forall(y, a.substitute_unchecked(x, t)),
            Formula::Exists(y, a) => Formula::exists(y, a.substitute_unchecked(x, t)),
        }
    }

    /// Decides whether `candidate` is some `self[x≀y]`: `self` with a subset
    /// (possibly empty, possibly all) of the free occurrences of `x`
    /// replaced by `y`.
    pub fn replace_some_matches(&self, x: &str, y: &str, candidate: &Formula) -> bool {
        replace_some_rec(self, candidate, x, y, false)
    }

    /// Universal closure: one `∀` per free variable, outermost first in
    /// lexicographic order of the names.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, v| Formula::forall(&v, acc))
    }

    /// Simultaneous substitution of propositional letters by formulas
    /// (an instance of a propositional schema). Letters without an entry
    /// are left alone.
    pub fn instantiate_props(&self, map: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Prop(p) => map.get(p).cloned().unwrap_or_else(|| self.clone()),
            Formula::Atom(..) => self.clone(),
            Formula::Neg(a) => Formula::neg(a.instantiate_props(map)),
            Formula::Cons(a) => Formula::cons(a.instantiate_props(map)),
            Formula::And(a, b) => Formula::and(a.instantiate_props(map), b.instantiate_props(map)),
            Formula::Or(a, b) => Formula::or(a.instantiate_props(map), b.instantiate_props(map)),
            Formula::Imp(a, b) => Formula::imp(a.instantiate_props(map), b.instantiate_props(map)),
            Formula::Forall(x, a) => Formula::forall(x, a.instantiate_props(map)),
            Formula::Exists(x, a) => Formula::exists(x, a.instantiate_props(map)),
        }
    }
}

fn replace_some_term(orig: &Term, cand: &Term, x: &str, y: &str, bound_x: bool) -> bool {
    match (orig, cand) {
        (Term::Var(a), Term::Var(b)) if a == x && !bound_x => b == x || b == y,
        (Term::Var(a), Term::Var(b)) => a == b,
        (Term::Const(a), Term::Const(b)) => a == b,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys)
                    .all(|(s, t)| replace_some_term(s, t, x, y, bound_x))
        }
        _ => false,
    }
}

fn replace_some_rec(orig: &Formula, cand: &Formula, x: &str, y: &str, bound_x: bool) -> bool {
    use Formula::*;
    match (orig, cand) {
        (Prop(a), Prop(b)) => a == b,
        (Atom(p, xs), Atom(q, ys)) => {
            p == q
                && xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys)
                    .all(|(s, t)| replace_some_term(s, t, x, y, bound_x))
        }
        (Neg(a), Neg(b)) | (Cons(a), Cons(b)) => replace_some_rec(a, b, x, y, bound_x),
        (And(a1, a2), And(b1, b2)) | (Or(a1, a2), Or(b1, b2)) | (Imp(a1, a2), Imp(b1, b2)) => {
            replace_some_rec(a1, b1, x, y, bound_x) && replace_some_rec(a2, b2, x, y, bound_x)
        }
        (Forall(v, a), Forall(w, b)) | (Exists(v, a), Exists(w, b)) => {
            v == w && replace_some_rec(a, b, x, y, bound_x || v == x)
        }
        _ => false,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
