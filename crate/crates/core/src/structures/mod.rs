//! Finite partial structures and the three-valued semantics.

mod enumerate;
mod format;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{Connective, Matrix, Truth};
use crate::syntax::{Formula, Signature, SyntaxError, Term, EQ};
use crate::triples::{SetForm, Triple};
use crate::twist::{AssignmentSpace, Elem, TwistError, TwistTriple};

pub use enumerate::{count_structures, enumerate_structures, EqualityMode, StructureSpace};
pub use format::{parse_structure, write_structure, FormatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("domain must be nonempty")]
    EmptyDomain,
    #[error("duplicate domain element `{0}`")]
    DuplicateElement(String),
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} is outside the domain")]
    ElementOutOfRange(usize),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("relation for `{0}` has the wrong number of entries")]
    TableSize(String),
    #[error(transparent)]
    Signature(#[from] SyntaxError),
    #[error("propositional letter `{0}` has no meaning in a structure")]
    PropositionalLetter(String),
    #[error("the matrix lacks a table for `{0}`")]
    IncompleteMatrix(Connective),
    #[error("free variable `{0}` is not in the frame")]
    FrameTooSmall(String),
    #[error("assignment space too large for the set representation: {0}")]
    FrameTooLarge(#[from] TwistError),
    #[error("`{0}` is not a sentence")]
    NotSentence(String),
    #[error("the signature has no equality")]
    NoEquality,
    #[error("constant `{0}` already exists")]
    NameCollision(String),
    #[error("not a reduct: {0}")]
    NotReduct(String),
}

/// Mixed-radix position of a tuple over a domain of size `n`.
pub(crate) fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, a| acc * n + a)
}

pub(crate) fn tuple_at(n: usize, arity: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

/// Map from variables to domain indices, total through a default element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Assignment {
    map: BTreeMap<String, usize>,
    default: usize,
}

impl Assignment {
    /// Every variable sent to the least element.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_default(default: usize) -> Self {
        Assignment { map: BTreeMap::new(), default }
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Self {
        Assignment {
            map: pairs.into_iter().map(|(x, a)| (x.to_string(), a)).collect(),
            default: 0,
        }
    }

    pub fn get(&self, x: &str) -> usize {
        self.map.get(x).copied().unwrap_or(self.default)
    }

    pub fn set(&mut self, x: &str, a: usize) {
        self.map.insert(x.to_string(), a);
    }

    /// `s[x := a]`.
    pub fn with(&self, x: &str, a: usize) -> Self {
        let mut s = self.clone();
        s.set(x, a);
        s
    }

    pub fn default_element(&self) -> usize {
        self.default
    }

    pub fn explicit(&self) -> impl Iterator<Item = (&str, usize)> {
        self.map.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// `x=a, y=b` using the element names of `st`.
    pub fn display(&self, st: &Structure) -> String {
        self.map
            .iter()
            .map(|(x, a)| format!("{x}={}", st.name(*a)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Classification of a sentence in a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Trichotomy {
    /// Classically true: `φ ∧ ∘φ` holds.
    #[serde(rename = "POS")]
    Pos,
    /// Classically false: `¬φ ∧ ∘φ` holds.
    #[serde(rename = "NEG")]
    Neg,
    /// Contradictory: `φ ∧ ¬φ` holds.
    #[serde(rename = "BOTH")]
    Both,
}

impl fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trichotomy::Pos => "POS",
            Trichotomy::Neg => "NEG",
            Trichotomy::Both => "BOTH",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Relation {
    arity: usize,
    values: Vec<Truth>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Function {
    arity: usize,
    values: Vec<usize>,
}

/// A finite partial structure. Elements are indices into the domain list;
/// the list order is the fixed total order used for witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    sig: Signature,
    names: Vec<String>,
    // includes `=` when the signature has equality
    preds: BTreeMap<String, Relation>,
    funs: BTreeMap<String, Function>,
    consts: BTreeMap<String, usize>,
}

impl Structure {
    /// Predicates start out everywhere 0, functions and constants at the
    /// least element, equality classical.
    pub fn new(sig: Signature, names: Vec<String>) -> Result<Self, StructureError> {
        if names.is_empty() {
            return Err(StructureError::EmptyDomain);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(StructureError::DuplicateElement(n.clone()));
            }
        }
        let n = names.len();
        let preds = sig
            .all_predicates()
            .into_iter()
            .map(|(p, arity)| {
                let values = vec![Truth::Zero; n.pow(arity as u32)];
                (p, Relation { arity, values })
            })
            .collect();
        let funs = sig
            .functions()
            .map(|(f, arity)| {
                let values = vec![0; n.pow(arity as u32)];
                (f.to_string(), Function { arity, values })
            })
            .collect();
        let consts = sig.constants().map(|c| (c.to_string(), 0)).collect();
        let mut st = Structure { sig, names, preds, funs, consts };
        if st.sig.has_equality() {
            st.set_classical_equality();
        }
        Ok(st)
    }

    /// Domain elements named `e1, .., en`.
    pub fn with_size(sig: Signature, n: usize) -> Result<Self, StructureError> {
        Self::new(sig, default_names(n))
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn domain(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn check_elem(&self, a: usize) -> Result<(), StructureError> {
        if a < self.size() {
            Ok(())
        } else {
            Err(StructureError::ElementOutOfRange(a))
        }
    }

    fn relation_mut(&mut self, p: &str) -> Result<&mut Relation, StructureError> {
        self.preds
            .get_mut(p)
            .ok_or_else(|| StructureError::UnknownSymbol(p.to_string()))
    }

    fn relation(&self, p: &str) -> Result<&Relation, StructureError> {
        self.preds
            .get(p)
            .ok_or_else(|| StructureError::UnknownSymbol(p.to_string()))
    }

    fn check_args(&self, name: &str, arity: usize, args: &[usize]) -> Result<(), StructureError> {
        if args.len() != arity {
            return Err(StructureError::Arity {
                name: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        args.iter().try_for_each(|&a| self.check_elem(a))
    }

    pub fn set_pred_value(&mut self, p: &str, args: &[usize], v: Truth) -> Result<(), StructureError> {
        let arity = self.relation(p)?.arity;
        self.check_args(p, arity, args)?;
        let n = self.size();
        self.relation_mut(p)?.values[tuple_index(n, args)] = v;
        Ok(())
    }

    pub fn pred_value(&self, p: &str, args: &[usize]) -> Result<Truth, StructureError> {
        let rel = self.relation(p)?;
        self.check_args(p, rel.arity, args)?;
        Ok(rel.values[tuple_index(self.size(), args)])
    }

    /// The whole relation as a value vector in tuple order.
    pub fn pred_values(&self, p: &str) -> Result<&[Truth], StructureError> {
        Ok(&self.relation(p)?.values)
    }

    pub fn set_pred_values(&mut self, p: &str, values: Vec<Truth>) -> Result<(), StructureError> {
        let n = self.size();
        let rel = self.relation_mut(p)?;
        if values.len() != n.pow(rel.arity as u32) {
            return Err(StructureError::TableSize(p.to_string()));
        }
        rel.values = values;
        Ok(())
    }

    /// The relation of `p` as a triple over tuples of element indices.
    pub fn pred_triple(&self, p: &str) -> Result<Triple<Vec<usize>>, StructureError> {
        let rel = self.relation(p)?;
        let n = self.size();
        Ok(Triple::from_map(
            rel.values
                .iter()
                .enumerate()
                .map(|(i, v)| (tuple_at(n, rel.arity, i), *v))
                .collect(),
        ))
    }

    pub fn set_pred_triple(&mut self, p: &str, t: &Triple<Vec<usize>>) -> Result<(), StructureError> {
        let arity = self.relation(p)?.arity;
        let n = self.size();
        let mut values = vec![None; n.pow(arity as u32)];
        for (args, v) in t.as_map() {
            self.check_args(p, arity, args)?;
            values[tuple_index(n, args)] = Some(*v);
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| StructureError::TableSize(p.to_string()))?;
        self.relation_mut(p)?.values = values;
        Ok(())
    }

    pub fn set_fun_value(&mut self, f: &str, args: &[usize], v: usize) -> Result<(), StructureError> {
        let arity = self
            .funs
            .get(f)
            .ok_or_else(|| StructureError::UnknownSymbol(f.to_string()))?
            .arity;
        self.check_args(f, arity, args)?;
        self.check_elem(v)?;
        let n = self.size();
        self.funs.get_mut(f).unwrap().values[tuple_index(n, args)] = v;
        Ok(())
    }

    pub fn fun_value(&self, f: &str, args: &[usize]) -> Result<usize, StructureError> {
        let fun = self
            .funs
            .get(f)
            .ok_or_else(|| StructureError::UnknownSymbol(f.to_string()))?;
        self.check_args(f, fun.arity, args)?;
        Ok(fun.values[tuple_index(self.size(), args)])
    }

    pub fn set_const(&mut self, c: &str, a: usize) -> Result<(), StructureError> {
        self.check_elem(a)?;
        *self
            .consts
            .get_mut(c)
            .ok_or_else(|| StructureError::UnknownSymbol(c.to_string()))? = a;
        Ok(())
    }

    pub fn const_value(&self, c: &str) -> Result<usize, StructureError> {
        self.consts
            .get(c)
            .copied()
            .ok_or_else(|| StructureError::UnknownSymbol(c.to_string()))
    }

    /// Equality: diagonal 1, everything else 0.
    pub fn set_classical_equality(&mut self) {
        let n = self.size();
        if let Some(rel) = self.preds.get_mut(EQ) {
            for i in 0..n * n {
                rel.values[i] = if i / n == i % n { Truth::One } else { Truth::Zero };
            }
        }
    }

    /// True when `≈⊕ ∪ ≈⊙` is exactly the diagonal.
    pub fn is_equality_structure(&self) -> Result<bool, StructureError> {
        let rel = self.preds.get(EQ).ok_or(StructureError::NoEquality)?;
        let n = self.size();
        Ok(rel
            .values
            .iter()
            .enumerate()
            .all(|(i, v)| v.is_designated() == (i / n == i % n)))
    }

    /// Restriction to a subsignature.
    pub fn reduct(&self, sig: &Signature) -> Result<Structure, StructureError> {
        if !sig.is_subsignature_of(&self.sig) {
            return Err(StructureError::NotReduct("not a subsignature".into()));
        }
        let mut out = Structure::new(sig.clone(), self.names.clone())?;
        for p in out.preds.clone().keys() {
            out.preds.insert(p.clone(), self.preds[p].clone());
        }
        for f in out.funs.clone().keys() {
            out.funs.insert(f.clone(), self.funs[f].clone());
        }
        for c in out.consts.clone().keys() {
            out.consts.insert(c.clone(), self.consts[c]);
        }
        Ok(out)
    }

    /// Adds a constant `c_<name>` for each listed element, interpreted as
    /// that element.
    pub fn expand_with_names(&self, elements: &[usize]) -> Result<Structure, StructureError> {
        let mut out = self.clone();
        for &a in elements {
            self.check_elem(a)?;
            let c = constant_name(self.name(a));
            if out.sig.is_constant(&c) {
                return Err(StructureError::NameCollision(c));
            }
            out.sig.add_constant(&c)?;
            out.consts.insert(c, a);
        }
        Ok(out)
    }

    pub(crate) fn from_parts(
        sig: Signature,
        names: Vec<String>,
        pred_values: Vec<(String, Vec<Truth>)>,
        fun_values: Vec<(String, Vec<usize>)>,
        const_values: Vec<(String, usize)>,
    ) -> Structure {
        let mut st = Structure::new(sig, names).expect("nonempty domain");
        for (p, v) in pred_values {
            st.preds.get_mut(&p).expect("declared predicate").values = v;
        }
        for (f, v) in fun_values {
            st.funs.get_mut(&f).expect("declared function").values = v;
        }
        for (c, a) in const_values {
            st.consts.insert(c, a);
        }
        st
    }

    /// Value of a closed or open term under `s`.
    pub fn eval_term(&self, t: &Term, s: &Assignment) -> Result<usize, StructureError> {
        t.check(&self.sig)?;
        Ok(self.term_value(t, &Env::new(s)))
    }

    fn term_value(&self, t: &Term, env: &Env<'_>) -> usize {
        match t {
            Term::Var(x) => env.get(x),
            Term::Const(c) => self.consts[c],
            Term::App(f, args) => {
                let n = self.size();
                let idx = args
                    .iter()
                    .fold(0, |acc, a| acc * n + self.term_value(a, env));
                self.funs[f].values[idx]
            }
        }
    }

    pub(crate) fn validate(&self, f: &Formula) -> Result<(), StructureError> {
        f.check(&self.sig)?;
        if let Some(p) = f.props().into_iter().next() {
            return Err(StructureError::PropositionalLetter(p));
        }
        Ok(())
    }

    /// Three-valued value of `f` under `s`.
    pub fn eval(&self, f: &Formula, s: &Assignment) -> Result<Truth, StructureError> {
        self.eval_with(f, s, &Matrix::ciore())
    }

    /// [`Structure::eval`] with the connectives read from `m`.
    pub fn eval_with(&self, f: &Formula, s: &Assignment, m: &Matrix) -> Result<Truth, StructureError> {
        self.validate(f)?;
        if let Some(&c) = Connective::ALL.iter().find(|&&c| !m.has(c)) {
            return Err(StructureError::IncompleteMatrix(c));
        }
        Ok(self.eval_unchecked(f, s, m))
    }

    /// Evaluation without signature checks; `f` must be well formed over the
    /// signature and `m` total.
    pub(crate) fn eval_unchecked(&self, f: &Formula, s: &Assignment, m: &Matrix) -> Truth {
        let mut env = Env::new(s);
        self.eval_rec(f, &mut env, m)
    }

    fn eval_rec<'a>(&self, f: &'a Formula, env: &mut Env<'a>, m: &Matrix) -> Truth {
        match f {
            Formula::Atom(p, args) => {
                let n = self.size();
                let idx = args
                    .iter()
                    .fold(0, |acc, a| acc * n + self.term_value(a, env));
                self.preds[p].values[idx]
            }
            Formula::Neg(a) => m.neg_(self.eval_rec(a, env, m)),
            Formula::Cons(a) => m.cons_(self.eval_rec(a, env, m)),
            Formula::And(a, b) => {
                let va = self.eval_rec(a, env, m);
                m.and_(va, self.eval_rec(b, env, m))
            }
            Formula::Or(a, b) => {
                let va = self.eval_rec(a, env, m);
                m.or_(va, self.eval_rec(b, env, m))
            }
            Formula::Imp(a, b) => {
                let va = self.eval_rec(a, env, m);
                m.imp_(va, self.eval_rec(b, env, m))
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let mut seen = ValueSet::default();
                env.stack.push((x, 0));
                let universal = matches!(f, Formula::Forall(..));
                for a in 0..self.size() {
                    env.stack.last_mut().unwrap().1 = a;
                    seen.insert(self.eval_rec(body, env, m));
                    if seen.is_decided(universal) {
                        break;
                    }
                }
                env.stack.pop();
                if matches!(f, Formula::Forall(..)) {
                    seen.forall()
                } else {
                    seen.exists()
                }
            }
            Formula::Prop(p) => panic!("propositional letter `{p}` reached the evaluator"),
        }
    }

    pub fn holds(&self, f: &Formula, s: &Assignment) -> Result<bool, StructureError> {
        Ok(self.eval(f, s)?.is_designated())
    }

    /// Assignments of the free variables of `f` (in name order, first
    /// variable most significant), with everything else at the least element.
    pub fn frame_assignments(&self, vars: &[String]) -> impl Iterator<Item = Assignment> + '_ {
        let vars = vars.to_vec();
        let n = self.size();
        (0..n.pow(vars.len() as u32)).map(move |i| {
            let values = tuple_at(n, vars.len(), i);
            Assignment {
                map: vars.iter().cloned().zip(values).collect(),
                default: 0,
            }
        })
    }

    /// `None` if `f` is designated everywhere, otherwise the least refuting
    /// assignment of its free variables.
    pub fn is_valid_in(&self, f: &Formula) -> Result<Option<Assignment>, StructureError> {
        self.validate(f)?;
        Ok(self.refute_unchecked(f, &Matrix::ciore()))
    }

    /// [`Structure::is_valid_in`] with the connectives read from `m`.
    pub fn is_valid_in_with(&self, f: &Formula, m: &Matrix) -> Result<Option<Assignment>, StructureError> {
        self.validate(f)?;
        if let Some(&c) = Connective::ALL.iter().find(|&&c| !m.has(c)) {
            return Err(StructureError::IncompleteMatrix(c));
        }
        Ok(self.refute_unchecked(f, m))
    }

    pub(crate) fn refute_unchecked(&self, f: &Formula, m: &Matrix) -> Option<Assignment> {
        let vars: Vec<String> = f.free_vars().into_iter().collect();
        let frame: Vec<&str> = vars.iter().map(String::as_str).collect();
        self.refute_frame(f, &frame, m)
            .map(|vals| Assignment::from_pairs(frame.iter().copied().zip(vals)))
    }

    /// Least tuple of values for `frame` (first variable most significant)
    /// at which `f` is not designated. `frame` must cover the free variables.
    pub(crate) fn refute_frame(&self, f: &Formula, frame: &[&str], m: &Matrix) -> Option<Vec<usize>> {
        let base = Assignment::new();
        let mut env = Env::new(&base);
        env.stack.extend(frame.iter().map(|&x| (x, 0)));
        let n = self.size();
        for i in 0..n.pow(frame.len() as u32) {
            let vals = tuple_at(n, frame.len(), i);
            for (slot, &v) in env.stack.iter_mut().zip(&vals) {
                slot.1 = v;
            }
            if !self.eval_rec(f, &mut env, m).is_designated() {
                return Some(vals);
            }
        }
        None
    }

    pub fn sentence_trichotomy(&self, f: &Formula) -> Result<Trichotomy, StructureError> {
        if !f.is_sentence() {
            return Err(StructureError::NotSentence(f.to_string()));
        }
        let s = Assignment::new();
        let pos = Formula::and(f.clone(), Formula::cons(f.clone()));
        let neg = Formula::and(Formula::neg(f.clone()), Formula::cons(f.clone()));
        let both = Formula::and(f.clone(), Formula::neg(f.clone()));
        let held: Vec<Trichotomy> = [(pos, Trichotomy::Pos), (neg, Trichotomy::Neg), (both, Trichotomy::Both)]
            .into_iter()
            .filter_map(|(g, t)| match self.holds(&g, &s) {
                Ok(true) => Some(Ok(t)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<_, _>>()?;
        assert_eq!(held.len(), 1, "trichotomy violated for {f}");
        Ok(held[0])
    }

    /// The semantic triple of `f` over assignments to `frame`, computed by
    /// class algebra: atoms from the relations, connectives via the class
    /// formulas, quantifiers via the hat operators.
    pub fn formula_triple(
        &self,
        f: &Formula,
        frame: &[&str],
    ) -> Result<Triple<Vec<usize>>, StructureError> {
        self.formula_triple_with(f, frame, SetForm::Characterized)
    }

    /// [`Structure::formula_triple`] with a choice of class formulas for
    /// `∨` and `→`.
    pub fn formula_triple_with(
        &self,
        f: &Formula,
        frame: &[&str],
        form: SetForm,
    ) -> Result<Triple<Vec<usize>>, StructureError> {
        self.validate(f)?;
        if let Some(x) = f.free_vars().into_iter().find(|x| !frame.contains(&x.as_str())) {
            return Err(StructureError::FrameTooSmall(x));
        }
        let mut vars: Vec<&str> = frame.to_vec();
        let mut bound = BTreeSet::new();
        f.visit(&mut |g| {
            if let Formula::Forall(x, _) | Formula::Exists(x, _) = g {
                bound.insert(x.clone());
            }
        });
        for x in &bound {
            if !vars.contains(&x.as_str()) {
                vars.push(x);
            }
        }
        let space = AssignmentSpace::new(self.size(), &vars)?;
        let z = self.triple_rec(f, &space, form)?;
        let n = self.size();
        let k = frame.len();
        // restrict to assignments where the extra (bound-only) variables sit at 0
        let extra = vars.len() - k;
        let values = (0..n.pow(k as u32))
            .map(|i| {
                let tuple = tuple_at(n, k, i);
                let point = i * n.pow(extra as u32);
                (tuple, z.value_at(point))
            })
            .collect();
        Ok(Triple::from_map(values))
    }

    fn triple_rec(
        &self,
        f: &Formula,
        space: &AssignmentSpace,
        form: SetForm,
    ) -> Result<TwistTriple, StructureError> {
        let alg = space.algebra();
        let sub = |g: &Formula| self.triple_rec(g, space, form);
        Ok(match f {
            Formula::Atom(..) => {
                let mut t = [0 as Elem; 3];
                let empty = Assignment::new();
                let mut env = Env::new(&empty);
                env.stack = space.vars().iter().map(|v| (v.as_str(), 0)).collect();
                for s in 0..space.len() {
                    for (slot, a) in env.stack.iter_mut().zip(space.decode(s)) {
                        slot.1 = a;
                    }
                    let slot = match self.eval_rec(f, &mut env, &Matrix::ciore()) {
                        Truth::One => 0,
                        Truth::Zero => 1,
                        Truth::Half => 2,
                    };
                    t[slot] |= 1 << s;
                }
                TwistTriple(t[0], t[1], t[2])
            }
            Formula::Neg(a) => alg.triple_op(Connective::Neg, sub(a)?, None)?,
            Formula::Cons(a) => alg.triple_op(Connective::Cons, sub(a)?, None)?,
            Formula::And(a, b) => alg.triple_op(Connective::And, sub(a)?, Some(sub(b)?))?,
            Formula::Or(a, b) | Formula::Imp(a, b) => {
                let op = if matches!(f, Formula::Or(..)) { Connective::Or } else { Connective::Imp };
                let (z, w) = (sub(a)?, sub(b)?);
                match form {
                    SetForm::Characterized => alg.triple_op(op, z, Some(w))?,
                    SetForm::Printed => printed_mask_op(op, z, w),
                }
            }
            Formula::Forall(x, a) => space.forall_triple(x, sub(a)?)?,
            Formula::Exists(x, a) => space.exists_triple(x, sub(a)?)?,
            Formula::Prop(p) => return Err(StructureError::PropositionalLetter(p.clone())),
        })
    }
}

fn printed_mask_op(op: Connective, z: TwistTriple, w: TwistTriple) -> TwistTriple {
    let TwistTriple(r1, r2, r3) = z;
    let TwistTriple(u1, u2, u3) = w;
    match op {
        Connective::Or => TwistTriple(r1 | u1, r2 & u2, (r3 & u2) | (r2 & u3) | (r3 & u3)),
        _ => TwistTriple(r2 | u1, (r1 | r3) & u2, (r1 | r3) & u3),
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// Constant naming element `name` in an expansion.
pub fn constant_name(name: &str) -> String {
    format!("c_{name}")
}

struct Env<'a> {
    base: &'a Assignment,
    stack: Vec<(&'a str, usize)>,
}

impl<'a> Env<'a> {
    fn new(base: &'a Assignment) -> Self {
        Env { base, stack: Vec::new() }
    }

    fn get(&self, x: &str) -> usize {
        self.stack
            .iter()
            .rev()
            .find(|(y, _)| *y == x)
            .map(|(_, a)| *a)
            .unwrap_or_else(|| self.base.get(x))
    }
}

/// Which truth values occur in a nonempty set of instances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValueSet {
    zero: bool,
    half: bool,
    one: bool,
}

impl ValueSet {
    pub fn insert(&mut self, v: Truth) {
        match v {
            Truth::Zero => self.zero = true,
            Truth::Half => self.half = true,
            Truth::One => self.one = true,
        }
    }

    pub fn from_values(values: &[Truth]) -> Self {
        let mut s = ValueSet::default();
        values.iter().for_each(|&v| s.insert(v));
        s
    }

    pub fn is_empty(&self) -> bool {
        !(self.zero || self.half || self.one)
    }

    /// Whether further instances can no longer change the quantifier value.
    fn is_decided(&self, universal: bool) -> bool {
        if universal {
            self.zero
        } else {
            self.one || (self.zero && self.half)
        }
    }

    /// `∀̃`: 0 if 0 occurs, 1/2 if only 1/2 occurs, otherwise 1.
    pub fn forall(&self) -> Truth {
        debug_assert!(!self.is_empty());
        if self.zero {
            Truth::Zero
        } else if self.one {
            Truth::One
        } else {
            Truth::Half
        }
    }

    /// `∃̃`: 1/2 on `{1/2}`, 0 on `{0}`, otherwise 1.
    pub fn exists(&self) -> Truth {
        debug_assert!(!self.is_empty());
        match (self.zero, self.half, self.one) {
            (false, true, false) => Truth::Half,
            (true, false, false) => Truth::Zero,
            _ => Truth::One,
        }
    }
}

#[cfg(test)]
mod tests;
