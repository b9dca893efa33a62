//! Hilbert-style proof checking for Ciore, QCiore and QCiore with equality.

mod format;
mod lemmas;
mod schema;
#[cfg(test)]
mod tests;

use std::fmt;

use serde::Serialize;

use crate::syntax::{Formula, Signature, SyntaxError};

pub use format::{parse_mutations, parse_proof, ProofFile, ProofFormatError};
pub use lemmas::{Lemma, LemmaError, LemmaOrigin, LemmaStore};
pub use schema::{
    all_schemas, match_instance, match_schema, schema_by_id, AxiomSchema, MatchEnv, MatchError,
    Pattern, SideCondition,
};

/// Which calculus a proof is checked in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Calculus {
    /// Propositional axioms and modus ponens.
    Ciore,
    /// Adds the quantifier axioms and the two quantifier rules.
    #[default]
    QCiore,
    /// Adds the equality axioms.
    QCioreEq,
}

impl Calculus {
    pub fn admits(self, s: &AxiomSchema) -> bool {
        match self {
            Calculus::Ciore => !s.first_order,
            Calculus::QCiore => !s.equality,
            Calculus::QCioreEq => true,
        }
    }

    fn has_quantifier_rules(self) -> bool {
        self != Calculus::Ciore
    }
}

/// Step justification. Step and hypothesis indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Justification {
    /// An axiom; `None` tries every schema of the calculus.
    Axiom(Option<String>),
    /// Step `j` must be `step i → current`.
    Mp(usize, usize),
    ForallIn(usize),
    ExistsIn(usize),
    Hyp(usize),
    /// A lemma instance `s_i → (s_j → … → current)` for the cited premises.
    Lemma(String, Vec<usize>),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(None) => f.write_str("ax"),
            Justification::Axiom(Some(id)) => write!(f, "ax {id}"),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::ForallIn(i) => write!(f, "forall-in {i}"),
            Justification::ExistsIn(i) => write!(f, "exists-in {i}"),
            Justification::Hyp(k) => write!(f, "hyp {k}"),
            Justification::Lemma(name, premises) => {
                write!(f, "lemma {name}")?;
                for p in premises {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub name: String,
    pub hypotheses: Vec<Formula>,
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn new(name: &str) -> Self {
        Proof {
            name: name.to_string(),
            hypotheses: Vec::new(),
            steps: Vec::new(),
        }
    }

    pub fn hyp(mut self, f: Formula) -> Self {
        self.hypotheses.push(f);
        self
    }

    pub fn step(mut self, formula: Formula, justification: Justification) -> Self {
        self.steps.push(Step {
            formula,
            justification,
        });
        self
    }

    /// The last step's formula.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("step {0} does not exist or is not earlier")]
    BadIndex(usize),
    #[error("there is no hypothesis {0}")]
    NoSuchHypothesis(usize),
    #[error("formula differs from hypothesis {0}")]
    HypothesisMismatch(usize),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("axiom {0} is not available in this calculus")]
    AxiomUnavailable(String),
    #[error("not an instance of {0}")]
    NotAnInstance(String),
    #[error("not an instance of any axiom")]
    NoAxiom,
    #[error("side condition: {0}")]
    SideCondition(String),
    #[error("modus ponens needs step {j} to be `step {i} -> current`")]
    ModusPonens { i: usize, j: usize },
    #[error("rule shape: {0}")]
    RuleShape(String),
    #[error("quantifier rules are not available in this calculus")]
    RuleUnavailable,
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("not an instance of lemma `{0}` with the cited premises")]
    LemmaMismatch(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub formula: String,
    pub justification: String,
    /// `None` when the step is justified.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofVerdict {
    pub name: String,
    pub calculus: Calculus,
    pub steps: Vec<StepReport>,
}

impl ProofVerdict {
    pub fn accepted(&self) -> bool {
        self.steps.iter().all(|s| s.error.is_none())
    }

    pub fn first_failure(&self) -> Option<&StepReport> {
        self.steps.iter().find(|s| s.error.is_some())
    }
}

impl fmt::Display for ProofVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure() {
            None => write!(f, "{}: accepted ({} steps)", self.name, self.steps.len()),
            Some(s) => write!(
                f,
                "{}: rejected at step {}: {}",
                self.name,
                s.step,
                s.error.as_deref().unwrap_or_default()
            ),
        }
    }
}

/// Checks `p` in QCiore, or QCiore with equality when `sig` has `=`.
pub fn check_proof(p: &Proof, sig: &Signature, store: &LemmaStore) -> ProofVerdict {
    let calculus = if sig.has_equality() {
        Calculus::QCioreEq
    } else {
        Calculus::QCiore
    };
    check_proof_in(p, sig, store, calculus)
}

/// Checks every step independently; the verdict lists a diagnostic for each.
pub fn check_proof_in(
    p: &Proof,
    sig: &Signature,
    store: &LemmaStore,
    calculus: Calculus,
) -> ProofVerdict {
    let steps = p
        .steps
        .iter()
        .enumerate()
        .map(|(k, s)| StepReport {
            step: k + 1,
            formula: s.formula.to_string(),
            justification: s.justification.to_string(),
            error: check_step(p, k, sig, store, calculus)
                .err()
                .map(|e| e.to_string()),
        })
        .collect();
    ProofVerdict {
        name: p.name.clone(),
        calculus,
        steps,
    }
}

fn earlier(p: &Proof, k: usize, i: usize) -> Result<&Formula, StepError> {
    if i == 0 || i > k {
        return Err(StepError::BadIndex(i));
    }
    Ok(&p.steps[i - 1].formula)
}

/// Checks step `k` (0-based).
pub(crate) fn check_step(
    p: &Proof,
    k: usize,
    sig: &Signature,
    store: &LemmaStore,
    calculus: Calculus,
) -> Result<(), StepError> {
    let cur = &p.steps[k].formula;
    cur.check(sig)?;
    match &p.steps[k].justification {
        Justification::Hyp(h) => {
            let hyp = p
                .hypotheses
                .get(h.wrapping_sub(1))
                .ok_or(StepError::NoSuchHypothesis(*h))?;
            if hyp == cur {
                Ok(())
            } else {
                Err(StepError::HypothesisMismatch(*h))
            }
        }
        Justification::Axiom(Some(id)) => {
            let s = schema_by_id(id).ok_or_else(|| StepError::UnknownAxiom(id.clone()))?;
            if !calculus.admits(&s) {
                return Err(StepError::AxiomUnavailable(id.clone()));
            }
            match match_schema(cur, &s) {
                Ok(_) => Ok(()),
                Err(MatchError::NoMatch(id)) => Err(StepError::NotAnInstance(id)),
                Err(e @ MatchError::SideCondition { .. }) => {
                    Err(StepError::SideCondition(e.to_string()))
                }
            }
        }
        Justification::Axiom(None) => {
            let mut side = None;
            for s in all_schemas().iter().filter(|s| calculus.admits(s)) {
                match match_schema(cur, s) {
                    Ok(_) => return Ok(()),
                    Err(e @ MatchError::SideCondition { .. }) => side = side.or(Some(e)),
                    Err(MatchError::NoMatch(_)) => {}
                }
            }
            Err(side.map_or(StepError::NoAxiom, |e| StepError::SideCondition(e.to_string())))
        }
        Justification::Mp(i, j) => {
            let a = earlier(p, k, *i)?;
            let b = earlier(p, k, *j)?;
            match b {
                Formula::Imp(x, y) if **x == *a && **y == *cur => Ok(()),
                _ => Err(StepError::ModusPonens { i: *i, j: *j }),
            }
        }
        Justification::ForallIn(i) => {
            if !calculus.has_quantifier_rules() {
                return Err(StepError::RuleUnavailable);
            }
            let prem = earlier(p, k, *i)?;
            let (Formula::Imp(a, b), Formula::Imp(a2, qb)) = (prem, cur) else {
                return Err(StepError::RuleShape(
                    "forall-in needs `a -> b` and yields `a -> forall x. b`".into(),
                ));
            };
            let Formula::Forall(x, b2) = &**qb else {
                return Err(StepError::RuleShape("consequent is not universally quantified".into()));
            };
            if a != a2 || b != b2 {
                return Err(StepError::RuleShape(format!(
                    "step {i} is not `{a2} -> {b2}`"
                )));
            }
            if a.may_have_free(x) {
                return Err(StepError::SideCondition(format!("{x} may be free in {a}")));
            }
            Ok(())
        }
        Justification::ExistsIn(i) => {
            if !calculus.has_quantifier_rules() {
                return Err(StepError::RuleUnavailable);
            }
            let prem = earlier(p, k, *i)?;
            let (Formula::Imp(a, b), Formula::Imp(qa, b2)) = (prem, cur) else {
                return Err(StepError::RuleShape(
                    "exists-in needs `a -> b` and yields `exists x. a -> b`".into(),
                ));
            };
            let Formula::Exists(x, a2) = &**qa else {
                return Err(StepError::RuleShape(
                    "antecedent is not existentially quantified".into(),
                ));
            };
            if a != a2 || b != b2 {
                return Err(StepError::RuleShape(format!(
                    "step {i} is not `{a2} -> {b2}`"
                )));
            }
            if b.may_have_free(x) {
                return Err(StepError::SideCondition(format!("{x} may be free in {b}")));
            }
            Ok(())
        }
        Justification::Lemma(name, premises) => {
            let lemma = store
                .get(name)
                .ok_or_else(|| StepError::UnknownLemma(name.clone()))?;
            let mut target = cur.clone();
            for i in premises.iter().rev() {
                target = Formula::imp(earlier(p, k, *i)?.clone(), target);
            }
            if lemma.directions().iter().any(|d| match_instance(d, &target).is_some()) {
                Ok(())
            } else {
                Err(StepError::LemmaMismatch(name.clone()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a hypothesis of the proof")]
pub struct NotAHypothesis(pub String);

/// True iff no quantifier-rule step of `p` quantifies a variable free in
/// `phi` (the condition under which `phi` may be discharged).
pub fn wdmt_side_condition(p: &Proof, phi: &Formula) -> Result<bool, NotAHypothesis> {
    if !p.hypotheses.contains(phi) {
        return Err(NotAHypothesis(phi.to_string()));
    }
    let free = phi.free_vars();
    Ok(p.steps.iter().all(|s| {
        let var = match (&s.justification, &s.formula) {
            (Justification::ForallIn(_), Formula::Imp(_, b)) => match &**b {
                Formula::Forall(x, _) => Some(x),
                _ => None,
            },
            (Justification::ExistsIn(_), Formula::Imp(a, _)) => match &**a {
                Formula::Exists(x, _) => Some(x),
                _ => None,
            },
            _ => None,
        };
        var.is_none_or(|x| !free.contains(x))
    }))
}
