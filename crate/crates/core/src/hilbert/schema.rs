//! Axiom schemas as patterns over formulas, and a matcher for them.

use std::collections::BTreeMap;
use std::fmt;

use crate::matrix::{parse_schema, CIORE_AXIOMS};
use crate::syntax::{Formula, Term, EQ};

/// Side condition attached to a schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCondition {
    None,
    /// `t` is free for `x` in `φ`.
    TermFreeForVar,
    /// `y` is free for `x` in `φ`, and the consequent is some `φ[x≀y]`.
    ReplaceSome,
}

/// Pattern tree. `Meta` is a formula metavariable, `Var` slots stand for
/// object variables, and the single term slot is filled by `Subst`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Meta(String),
    Neg(Box<Pattern>),
    Cons(Box<Pattern>),
    And(Box<Pattern>, Box<Pattern>),
    Or(Box<Pattern>, Box<Pattern>),
    Imp(Box<Pattern>, Box<Pattern>),
    Forall(String, Box<Pattern>),
    Exists(String, Box<Pattern>),
    /// `var1 ≈ var2` between variable slots.
    Eq(String, String),
    /// `meta(t/var)`.
    Subst { meta: String, var: String },
    /// `meta[from≀to]`.
    ReplaceSome { meta: String, from: String, to: String },
}

impl Pattern {
    /// Reads a propositional schema: each letter becomes a metavariable.
    pub fn from_schema(f: &Formula) -> Pattern {
        let b = |f: &Formula| Box::new(Pattern::from_schema(f));
        match f {
            Formula::Prop(p) => Pattern::Meta(p.clone()),
            Formula::Neg(a) => Pattern::Neg(b(a)),
            Formula::Cons(a) => Pattern::Cons(b(a)),
            Formula::And(x, y) => Pattern::And(b(x), b(y)),
            Formula::Or(x, y) => Pattern::Or(b(x), b(y)),
            Formula::Imp(x, y) => Pattern::Imp(b(x), b(y)),
            Formula::Forall(v, a) => Pattern::Forall(v.clone(), b(a)),
            Formula::Exists(v, a) => Pattern::Exists(v.clone(), b(a)),
            Formula::Atom(..) => panic!("schema patterns contain no atoms"),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Meta(m) => f.write_str(m),
            Pattern::Neg(a) => write!(f, "~{a}"),
            Pattern::Cons(a) => write!(f, "@{a}"),
            Pattern::And(a, b) => write!(f, "({a} & {b})"),
            Pattern::Or(a, b) => write!(f, "({a} | {b})"),
            Pattern::Imp(a, b) => write!(f, "({a} -> {b})"),
            Pattern::Forall(x, a) => write!(f, "(forall {x}. {a})"),
            Pattern::Exists(x, a) => write!(f, "(exists {x}. {a})"),
            Pattern::Eq(x, y) => write!(f, "{x} = {y}"),
            Pattern::Subst { meta, var } => write!(f, "{meta}(t/{var})"),
            Pattern::ReplaceSome { meta, from, to } => write!(f, "{meta}[{from}~{to}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub id: &'static str,
    pub pattern: Pattern,
    pub side_condition: SideCondition,
    /// Quantifier or equality axiom (not part of the propositional base).
    pub first_order: bool,
    pub equality: bool,
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.pattern)
    }
}

/// Successful match: bindings for metavariables, variable slots and the
/// term slot.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchEnv {
    pub formulas: BTreeMap<String, Formula>,
    pub vars: BTreeMap<String, String>,
    pub term: Option<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchError {
    #[error("not an instance of {0}")]
    NoMatch(String),
    #[error("instance of {schema} violates its side condition: {detail}")]
    SideCondition { schema: String, detail: String },
}

fn boxed(p: Pattern) -> Box<Pattern> {
    Box::new(p)
}

fn meta(m: &str) -> Pattern {
    Pattern::Meta(m.into())
}

fn quantifier_axioms() -> Vec<AxiomSchema> {
    use Pattern::*;
    let phi = || meta("φ");
    let x = || "x".to_string();
    let fo = |id, pattern, side_condition| AxiomSchema {
        id,
        pattern,
        side_condition,
        first_order: true,
        equality: false,
    };
    vec![
        fo(
            "Ax11",
            Imp(
                boxed(Subst { meta: "φ".into(), var: x() }),
                boxed(Exists(x(), boxed(phi()))),
            ),
            SideCondition::TermFreeForVar,
        ),
        fo(
            "Ax12",
            Imp(
                boxed(Forall(x(), boxed(phi()))),
                boxed(Subst { meta: "φ".into(), var: x() }),
            ),
            SideCondition::TermFreeForVar,
        ),
        fo(
            "Ax13",
            Imp(
                boxed(Cons(boxed(Exists(x(), boxed(phi()))))),
                boxed(Exists(x(), boxed(Cons(boxed(phi()))))),
            ),
            SideCondition::None,
        ),
        fo(
            "Ax14",
            Imp(
                boxed(Cons(boxed(Forall(x(), boxed(phi()))))),
                boxed(Exists(x(), boxed(Cons(boxed(phi()))))),
            ),
            SideCondition::None,
        ),
        fo(
            "Ax15",
            Imp(
                boxed(Exists(x(), boxed(Cons(boxed(phi()))))),
                boxed(Cons(boxed(Exists(x(), boxed(phi()))))),
            ),
            SideCondition::None,
        ),
        fo(
            "Ax16",
            Imp(
                boxed(Exists(x(), boxed(Cons(boxed(phi()))))),
                boxed(Cons(boxed(Forall(x(), boxed(phi()))))),
            ),
            SideCondition::None,
        ),
        AxiomSchema {
            id: "Eq1",
            pattern: Forall(x(), boxed(Eq(x(), x()))),
            side_condition: SideCondition::None,
            first_order: true,
            equality: true,
        },
        AxiomSchema {
            id: "Eq2",
            pattern: Forall(
                x(),
                boxed(Forall(
                    "y".into(),
                    boxed(Imp(
                        boxed(Eq(x(), "y".into())),
                        boxed(Imp(
                            boxed(phi()),
                            boxed(ReplaceSome {
                                meta: "φ".into(),
                                from: x(),
                                to: "y".into(),
                            }),
                        )),
                    )),
                )),
            ),
            side_condition: SideCondition::ReplaceSome,
            first_order: true,
            equality: true,
        },
    ]
}

/// Every axiom schema: the twenty propositional ones, the six quantifier
/// axioms `Ax11..Ax16` and the equality axioms `Eq1`, `Eq2`.
///
/// | id   | schema                         |
/// |------|--------------------------------|
/// | Ax11 | `φ(t/x) → ∃xφ`, t free for x   |
/// | Ax12 | `∀xφ → φ(t/x)`, t free for x   |
/// | Ax13 | `∘∃xφ → ∃x∘φ`                  |
/// | Ax14 | `∘∀xφ → ∃x∘φ`                  |
/// | Ax15 | `∃x∘φ → ∘∃xφ`                  |
/// | Ax16 | `∃x∘φ → ∘∀xφ`                  |
/// | Eq1  | `∀x(x ≈ x)`                    |
/// | Eq2  | `∀x∀y(x ≈ y → (φ → φ[x≀y]))`, y free for x |
pub fn all_schemas() -> Vec<AxiomSchema> {
    let mut out: Vec<AxiomSchema> = CIORE_AXIOMS
        .iter()
        .map(|(id, text)| AxiomSchema {
            id,
            pattern: Pattern::from_schema(&parse_schema(text)),
            side_condition: SideCondition::None,
            first_order: false,
            equality: false,
        })
        .collect();
    out.extend(quantifier_axioms());
    out
}

pub fn schema_by_id(id: &str) -> Option<AxiomSchema> {
    all_schemas().into_iter().find(|s| s.id == id)
}

enum Deferred<'f> {
    Subst { meta: String, var: String, target: &'f Formula },
    ReplaceSome { meta: String, from: String, to: String, target: &'f Formula },
}

struct Matcher<'f> {
    env: MatchEnv,
    deferred: Vec<Deferred<'f>>,
}

impl<'f> Matcher<'f> {
    fn bind_var(&mut self, slot: &str, v: &str) -> bool {
        match self.env.vars.get(slot) {
            Some(w) => w == v,
            None => {
                self.env.vars.insert(slot.to_string(), v.to_string());
                true
            }
        }
    }

    fn walk(&mut self, p: &Pattern, f: &'f Formula) -> bool {
        match (p, f) {
            (Pattern::Meta(m), _) => match self.env.formulas.get(m) {
                Some(g) => g == f,
                None => {
                    self.env.formulas.insert(m.clone(), f.clone());
                    true
                }
            },
            (Pattern::Neg(a), Formula::Neg(b)) | (Pattern::Cons(a), Formula::Cons(b)) => {
                self.walk(a, b)
            }
            (Pattern::And(p1, p2), Formula::And(f1, f2))
            | (Pattern::Or(p1, p2), Formula::Or(f1, f2))
            | (Pattern::Imp(p1, p2), Formula::Imp(f1, f2)) => {
                self.walk(p1, f1) && self.walk(p2, f2)
            }
            (Pattern::Forall(s, a), Formula::Forall(v, b))
            | (Pattern::Exists(s, a), Formula::Exists(v, b)) => {
                self.bind_var(s, v) && self.walk(a, b)
            }
            (Pattern::Eq(s1, s2), Formula::Atom(pred, args)) if pred == EQ && args.len() == 2 => {
                match (&args[0], &args[1]) {
                    (Term::Var(a), Term::Var(b)) => self.bind_var(s1, a) && self.bind_var(s2, b),
                    _ => false,
                }
            }
            (Pattern::Subst { meta, var }, _) => {
                self.deferred.push(Deferred::Subst {
                    meta: meta.clone(),
                    var: var.clone(),
                    target: f,
                });
                true
            }
            (Pattern::ReplaceSome { meta, from, to }, _) => {
                self.deferred.push(Deferred::ReplaceSome {
                    meta: meta.clone(),
                    from: from.clone(),
                    to: to.clone(),
                    target: f,
                });
                true
            }
            _ => false,
        }
    }
}

/// Finds the term `t` with `phi(t/x) = target` by walking both formulas in
/// parallel; `Ok(None)` when `x` has no free occurrence to read it from.
fn infer_term(phi: &Formula, x: &str, target: &Formula) -> Result<Option<Term>, ()> {
    fn terms(s: &Term, u: &Term, x: &str, t: &mut Option<Term>) -> Result<(), ()> {
        match (s, u) {
            (Term::Var(v), _) if v == x => match t {
                Some(prev) if prev != u => Err(()),
                Some(_) => Ok(()),
                None => {
                    *t = Some(u.clone());
                    Ok(())
                }
            },
            (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys).try_for_each(|(a, b)| terms(a, b, x, t))
            }
            _ if s == u => Ok(()),
            _ => Err(()),
        }
    }
    fn rec(p: &Formula, f: &Formula, x: &str, t: &mut Option<Term>) -> Result<(), ()> {
        use Formula::*;
        match (p, f) {
            (Prop(a), Prop(b)) if a == b => Ok(()),
            (Atom(p, xs), Atom(q, ys)) if p == q && xs.len() == ys.len() => {
                xs.iter().zip(ys).try_for_each(|(a, b)| terms(a, b, x, t))
            }
            (Neg(a), Neg(b)) | (Cons(a), Cons(b)) => rec(a, b, x, t),
            (And(a1, a2), And(b1, b2)) | (Or(a1, a2), Or(b1, b2)) | (Imp(a1, a2), Imp(b1, b2)) => {
                rec(a1, b1, x, t)?;
                rec(a2, b2, x, t)
            }
            (Forall(v, a), Forall(w, b)) | (Exists(v, a), Exists(w, b)) if v == w => {
                if v == x {
                    if a == b {
                        Ok(())
                    } else {
                        Err(())
                    }
                } else {
                    rec(a, b, x, t)
                }
            }
            _ => Err(()),
        }
    }
    let mut t = None;
    rec(phi, target, x, &mut t)?;
    Ok(t)
}

/// Matches `f` against `schema`, leftmost-outermost. Metavariables bind on
/// first sight; substitution constraints are resolved once the formula
/// they substitute into is bound.
pub fn match_schema(f: &Formula, schema: &AxiomSchema) -> Result<MatchEnv, MatchError> {
    let no = || MatchError::NoMatch(schema.id.to_string());
    let side = |detail: String| MatchError::SideCondition {
        schema: schema.id.to_string(),
        detail,
    };
    let mut m = Matcher {
        env: MatchEnv::default(),
        deferred: Vec::new(),
    };
    if !m.walk(&schema.pattern, f) {
        return Err(no());
    }
    for d in std::mem::take(&mut m.deferred) {
        match d {
            Deferred::Subst { meta, var, target } => {
                let phi = m.env.formulas.get(&meta).ok_or_else(no)?.clone();
                let x = m.env.vars.get(&var).ok_or_else(no)?.clone();
                let t = infer_term(&phi, &x, target)
                    .map_err(|_| no())?
                    .unwrap_or_else(|| Term::Var(x.clone()));
                if !phi.is_free_for(&t, &x) {
                    return Err(side(format!("{t} is not free for {x} in {phi}")));
                }
                if t != Term::Var(x.clone()) && !phi.props().is_empty() {
                    return Err(side(format!(
                        "cannot substitute {t} for {x} inside a schematic letter of {phi}"
                    )));
                }
                if phi.substitute(&x, &t).map_err(|_| no())? != *target {
                    return Err(no());
                }
                m.env.term = Some(t);
            }
            Deferred::ReplaceSome { meta, from, to, target } => {
                let phi = m.env.formulas.get(&meta).ok_or_else(no)?.clone();
                let x = m.env.vars.get(&from).ok_or_else(no)?.clone();
                let y = m.env.vars.get(&to).ok_or_else(no)?.clone();
                if !phi.replace_some_matches(&x, &y, target) {
                    return Err(no());
                }
                if !phi.is_free_for(&Term::Var(y.clone()), &x) {
                    return Err(side(format!("{y} is not free for {x} in {phi}")));
                }
            }
        }
    }
    Ok(m.env)
}

/// Matches a formula against a propositional schema whose letters act as
/// metavariables.
pub fn match_instance(schema: &Formula, f: &Formula) -> Option<BTreeMap<String, Formula>> {
    let mut m = Matcher {
        env: MatchEnv::default(),
        deferred: Vec::new(),
    };
    if m.walk_literal(schema, f) {
        Some(m.env.formulas)
    } else {
        None
    }
}

impl<'f> Matcher<'f> {
    fn walk_literal(&mut self, p: &Formula, f: &'f Formula) -> bool {
        use Formula::*;
        match (p, f) {
            (Prop(a), _) => match self.env.formulas.get(a) {
                Some(g) => g == f,
                None => {
                    self.env.formulas.insert(a.clone(), f.clone());
                    true
                }
            },
            (Atom(..), _) => p == f,
            (Neg(a), Neg(b)) | (Cons(a), Cons(b)) => self.walk_literal(a, b),
            (And(a1, a2), And(b1, b2)) | (Or(a1, a2), Or(b1, b2)) | (Imp(a1, a2), Imp(b1, b2)) => {
                self.walk_literal(a1, b1) && self.walk_literal(a2, b2)
            }
            (Forall(v, a), Forall(w, b)) | (Exists(v, a), Exists(w, b)) => {
                v == w && self.walk_literal(a, b)
            }
            _ => false,
        }
    }
}
