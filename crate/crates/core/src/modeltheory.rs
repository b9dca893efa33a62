//! Substructures, elementary substructures and elementary equivalence,
//! checked up to a formula depth.
//!
//! A substructure's elements are identified with the elements of the same
//! name in the larger structure. All verdicts are bounded: they cover the
//! formulas of [`enumerate_formulas`] up to the given depth, with free and
//! bound variables from the given list.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::matrix::Truth;
use crate::structures::{tuple_at, Assignment, Structure, StructureError};
use crate::syntax::{enumerate_formulas, Formula, Signature};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelTheoryError {
    #[error("element `{0}` of the smaller structure is not in the larger one")]
    NotSubset(String),
    #[error("the structures have different signatures")]
    SignatureMismatch,
    #[error("not a substructure: {0}")]
    NotSubstructure(SubstructureViolation),
    #[error("a chain needs at least one structure")]
    EmptyChain,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Where `A ⊆ B` breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubstructureViolation {
    pub symbol: String,
    /// `constant`, `function`, or the predicate class `plus`, `minus`, `dot`.
    pub kind: String,
    /// Arguments, by element name.
    pub at: Vec<String>,
}

impl fmt::Display for SubstructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} at ({})", self.symbol, self.kind, self.at.join(", "))
    }
}

fn class_name(v: Truth) -> &'static str {
    match v {
        Truth::One => "plus",
        Truth::Zero => "minus",
        Truth::Half => "dot",
    }
}

/// Positions in `b` of the elements of `a`, matched by name.
pub fn embedding(a: &Structure, b: &Structure) -> Result<Vec<usize>, ModelTheoryError> {
    a.domain()
        .iter()
        .map(|n| b.element(n).ok_or_else(|| ModelTheoryError::NotSubset(n.clone())))
        .collect()
}

/// `None` if `a ⊆ b`, otherwise the first violation (constants, then
/// functions, then predicates, in name order).
pub fn is_substructure(
    a: &Structure,
    b: &Structure,
) -> Result<Option<SubstructureViolation>, ModelTheoryError> {
    if a.signature() != b.signature() {
        return Err(ModelTheoryError::SignatureMismatch);
    }
    let emb = embedding(a, b)?;
    let sig = a.signature();
    let n = a.size();
    let names = |args: &[usize]| args.iter().map(|&i| a.name(i).to_string()).collect();
    for c in sig.constants() {
        if emb[a.const_value(c)?] != b.const_value(c)? {
            return Ok(Some(SubstructureViolation {
                symbol: c.to_string(),
                kind: "constant".into(),
                at: vec![],
            }));
        }
    }
    for (f, arity) in sig.functions() {
        for i in 0..n.pow(arity as u32) {
            let args = tuple_at(n, arity, i);
            let mapped: Vec<usize> = args.iter().map(|&x| emb[x]).collect();
            if emb[a.fun_value(f, &args)?] != b.fun_value(f, &mapped)? {
                return Ok(Some(SubstructureViolation {
                    symbol: f.to_string(),
                    kind: "function".into(),
                    at: names(&args),
                }));
            }
        }
    }
    for (p, arity) in sig.all_predicates() {
        for i in 0..n.pow(arity as u32) {
            let args = tuple_at(n, arity, i);
            let mapped: Vec<usize> = args.iter().map(|&x| emb[x]).collect();
            let (va, vb) = (a.pred_value(&p, &args)?, b.pred_value(&p, &mapped)?);
            if va != vb {
                // the tuple lies in this class of B but not of A
                return Ok(Some(SubstructureViolation {
                    symbol: p.clone(),
                    kind: class_name(vb).into(),
                    at: names(&args),
                }));
            }
        }
    }
    Ok(None)
}

fn require_substructure(a: &Structure, b: &Structure) -> Result<Vec<usize>, ModelTheoryError> {
    match is_substructure(a, b)? {
        Some(v) => Err(ModelTheoryError::NotSubstructure(v)),
        None => embedding(a, b),
    }
}

/// Assignments into `a` over `vars`, paired with their images in `b`.
fn assignment_pairs(a: &Structure, emb: &[usize], vars: &[String]) -> Vec<(Assignment, Assignment)> {
    let n = a.size();
    (0..n.pow(vars.len() as u32))
        .map(|i| {
            let vals = tuple_at(n, vars.len(), i);
            let s = Assignment::from_pairs(vars.iter().map(String::as_str).zip(vals.iter().copied()));
            let sb = Assignment::from_pairs(vars.iter().map(String::as_str).zip(vals.iter().map(|&v| emb[v])));
            (s, sb)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TarskiCondition {
    /// `∃xφ` is 1 in B: A holds witnesses off `φ`'s 0 class and off its ½ class.
    TC1,
    /// `∃xφ` is not ½ in B: A holds a witness off `φ`'s ½ class.
    TC2,
    /// `∀xφ` is 1 in B: A holds a witness in `φ`'s 1 class.
    TC3,
    /// `∀xφ` is 0 in B: A holds a witness in `φ`'s 0 class.
    TC4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TarskiFailure {
    pub condition: TarskiCondition,
    pub formula: String,
    pub var: String,
    pub assignment: String,
    /// Which witness is missing.
    pub missing: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TarskiReport {
    pub checked: usize,
    pub failures: Vec<TarskiFailure>,
}

impl TarskiReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the four Tarski-like conditions for every listed formula, every
/// variable of `vars` and every assignment into `a` over `vars`.
pub fn tarski_conditions(
    a: &Structure,
    b: &Structure,
    formulas: &[Formula],
    vars: &[String],
) -> Result<TarskiReport, ModelTheoryError> {
    let emb = require_substructure(a, b)?;
    let mut report = TarskiReport::default();
    let pairs = assignment_pairs(a, &emb, vars);
    for phi in formulas {
        for x in vars {
            let ex = Formula::exists(x, phi.clone());
            let all = Formula::forall(x, phi.clone());
            for (s, sb) in &pairs {
                report.checked += 1;
                // values of phi in B at s̄ with x moved over A
                let over_a: Vec<Truth> = (0..a.size())
                    .map(|e| b.eval(phi, &sb.with(x, emb[e])))
                    .collect::<Result<_, _>>()?;
                let has = |pred: &dyn Fn(Truth) -> bool| over_a.iter().any(|&v| pred(v));
                let mut fail = |condition, missing: &str| {
                    report.failures.push(TarskiFailure {
                        condition,
                        formula: phi.to_string(),
                        var: x.clone(),
                        assignment: s.display(a),
                        missing: missing.to_string(),
                    })
                };
                let ve = b.eval(&ex, sb)?;
                let va = b.eval(&all, sb)?;
                if ve == Truth::One {
                    if !has(&|v| v != Truth::Zero) {
                        fail(TarskiCondition::TC1, "witness outside the 0 class");
                    }
                    if !has(&|v| v != Truth::Half) {
                        fail(TarskiCondition::TC1, "witness outside the 1/2 class");
                    }
                }
                if ve != Truth::Half && !has(&|v| v != Truth::Half) {
                    fail(TarskiCondition::TC2, "witness outside the 1/2 class");
                }
                if va == Truth::One && !has(&|v| v == Truth::One) {
                    fail(TarskiCondition::TC3, "witness in the 1 class");
                }
                if va == Truth::Zero && !has(&|v| v == Truth::Zero) {
                    fail(TarskiCondition::TC4, "witness in the 0 class");
                }
            }
        }
    }
    Ok(report)
}

/// A formula and assignment on which two structures disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub formula: String,
    pub depth: usize,
    pub assignment: String,
    pub left: Truth,
    pub right: Truth,
}

/// Bounded verdict: `separation` is `None` when no formula up to `depth`
/// tells the structures apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedVerdict {
    pub depth: usize,
    pub formulas_checked: usize,
    pub separation: Option<Separation>,
}

impl BoundedVerdict {
    pub fn holds(&self) -> bool {
        self.separation.is_none()
    }
}

impl fmt::Display for BoundedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.separation {
            None => write!(f, "holds up to depth {} ({} formulas)", self.depth, self.formulas_checked),
            Some(s) => write!(
                f,
                "fails at `{}` (depth {}) under [{}]: {} vs {}",
                s.formula, s.depth, s.assignment, s.left, s.right
            ),
        }
    }
}

/// `A ≺ B` restricted to formulas up to `max_depth` over `vars`: every such
/// formula has the same value in `A` under `s` as in `B` under `s̄`.
pub fn elementary_sub_bounded(
    a: &Structure,
    b: &Structure,
    max_depth: usize,
    vars: &[String],
) -> Result<BoundedVerdict, ModelTheoryError> {
    let emb = require_substructure(a, b)?;
    let pairs = assignment_pairs(a, &emb, vars);
    let formulas: Vec<Formula> = enumerate_formulas(a.signature(), vars, max_depth).collect();
    let first = formulas
        .par_iter()
        .enumerate()
        .map(|(i, phi)| -> Result<Option<(usize, Separation)>, StructureError> {
            for (s, sb) in &pairs {
                let (va, vb) = (a.eval(phi, s)?, b.eval(phi, sb)?);
                if va != vb {
                    return Ok(Some((
                        i,
                        Separation {
                            formula: phi.to_string(),
                            depth: phi.depth(),
                            assignment: s.display(a),
                            left: va,
                            right: vb,
                        },
                    )));
                }
            }
            Ok(None)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    verdict(max_depth, formulas.len(), first.transpose()?.flatten())
}

fn verdict(
    depth: usize,
    total: usize,
    first: Option<(usize, Separation)>,
) -> Result<BoundedVerdict, ModelTheoryError> {
    Ok(match first {
        Some((i, sep)) => BoundedVerdict {
            depth,
            formulas_checked: i + 1,
            separation: Some(sep),
        },
        None => BoundedVerdict {
            depth,
            formulas_checked: total,
            separation: None,
        },
    })
}

/// `A ≡ B` restricted to sentences up to `max_depth` with bound variables
/// from `vars`: every such sentence falls in the same class in both.
pub fn elementary_equiv_bounded(
    a: &Structure,
    b: &Structure,
    max_depth: usize,
    vars: &[String],
) -> Result<BoundedVerdict, ModelTheoryError> {
    if a.signature() != b.signature() {
        return Err(ModelTheoryError::SignatureMismatch);
    }
    let sentences: Vec<Formula> = enumerate_formulas(a.signature(), vars, max_depth)
        .filter(Formula::is_sentence)
        .collect();
    let s = Assignment::new();
    let first = sentences
        .par_iter()
        .enumerate()
        .map(|(i, phi)| -> Result<Option<(usize, Separation)>, StructureError> {
            let (ta, tb) = (a.sentence_trichotomy(phi)?, b.sentence_trichotomy(phi)?);
            if ta == tb {
                return Ok(None);
            }
            Ok(Some((
                i,
                Separation {
                    formula: phi.to_string(),
                    depth: phi.depth(),
                    assignment: String::new(),
                    left: a.eval(phi, &s)?,
                    right: b.eval(phi, &s)?,
                },
            )))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    verdict(max_depth, sentences.len(), first.transpose()?.flatten())
}

/// Restriction of `b` to the named elements, when they are closed under
/// the functions and contain the constants.
pub fn restrict(b: &Structure, keep: &[usize]) -> Result<Option<Structure>, ModelTheoryError> {
    let sig = b.signature();
    let keep: Vec<usize> = keep.iter().copied().sorted().dedup().collect();
    let inside = |e: usize| keep.binary_search(&e).is_ok();
    if sig.constants().any(|c| b.const_value(c).map_or(true, |e| !inside(e))) {
        return Ok(None);
    }
    let m = keep.len();
    for (f, arity) in sig.functions() {
        for i in 0..m.pow(arity as u32) {
            let args: Vec<usize> = tuple_at(m, arity, i).into_iter().map(|j| keep[j]).collect();
            if !inside(b.fun_value(f, &args)?) {
                return Ok(None);
            }
        }
    }
    let names: Vec<String> = keep.iter().map(|&e| b.name(e).to_string()).collect();
    let mut a = Structure::new(sig.clone(), names)?;
    let local = |e: usize| keep.binary_search(&e).unwrap();
    for c in sig.constants() {
        a.set_const(c, local(b.const_value(c)?))?;
    }
    for (f, arity) in sig.functions() {
        for i in 0..m.pow(arity as u32) {
            let args = tuple_at(m, arity, i);
            let mapped: Vec<usize> = args.iter().map(|&j| keep[j]).collect();
            a.set_fun_value(f, &args, local(b.fun_value(f, &mapped)?))?;
        }
    }
    for (p, arity) in sig.all_predicates() {
        for i in 0..m.pow(arity as u32) {
            let args = tuple_at(m, arity, i);
            let mapped: Vec<usize> = args.iter().map(|&j| keep[j]).collect();
            a.set_pred_value(&p, &args, b.pred_value(&p, &mapped)?)?;
        }
    }
    Ok(Some(a))
}

/// Every substructure of `b` (one per nonempty subset of its domain closed
/// under the functions and containing the constants), smallest subsets
/// first.
pub fn substructures(b: &Structure) -> Result<Vec<Structure>, ModelTheoryError> {
    let mut out = Vec::new();
    for k in 1..=b.size() {
        for keep in (0..b.size()).combinations(k) {
            if let Some(a) = restrict(b, &keep)? {
                out.push(a);
            }
        }
    }
    Ok(out)
}

/// Union of an increasing chain `A0 ⊆ A1 ⊆ ..`: the union of the domains
/// (in order of first appearance), of the predicate classes and of the
/// function graphs; constants as in `A0`.
pub fn chain_union(chain: &[Structure]) -> Result<Structure, ModelTheoryError> {
    let first = chain.first().ok_or(ModelTheoryError::EmptyChain)?;
    for w in chain.windows(2) {
        require_substructure(&w[0], &w[1])?;
    }
    let sig: Signature = first.signature().clone();
    let mut names: Vec<String> = Vec::new();
    for st in chain {
        for n in st.domain() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    let mut u = Structure::new(sig.clone(), names)?;
    let pos = |st: &Structure, e: usize| u_index(&u_names(chain), st.name(e));
    for c in sig.constants() {
        u.set_const(c, pos(first, first.const_value(c)?))?;
    }
    for st in chain {
        let n = st.size();
        for (f, arity) in sig.functions() {
            for i in 0..n.pow(arity as u32) {
                let args = tuple_at(n, arity, i);
                let mapped: Vec<usize> = args.iter().map(|&e| pos(st, e)).collect();
                u.set_fun_value(f, &mapped, pos(st, st.fun_value(f, &args)?))?;
            }
        }
        for (p, arity) in sig.all_predicates() {
            for i in 0..n.pow(arity as u32) {
                let args = tuple_at(n, arity, i);
                let mapped: Vec<usize> = args.iter().map(|&e| pos(st, e)).collect();
                u.set_pred_value(&p, &mapped, st.pred_value(&p, &args)?)?;
            }
        }
    }
    Ok(u)
}

fn u_names(chain: &[Structure]) -> Vec<&str> {
    let mut names: Vec<&str> = Vec::new();
    for st in chain {
        for n in st.domain() {
            if !names.contains(&n.as_str()) {
                names.push(n);
            }
        }
    }
    names
}

fn u_index(names: &[&str], name: &str) -> usize {
    names.iter().position(|n| *n == name).expect("element of the chain")
}
