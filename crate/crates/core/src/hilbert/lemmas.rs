//! Append-only store of verified theorems that proofs may cite.

use std::collections::BTreeMap;

use super::{check_proof_in, parse_proof, Calculus, Proof, ProofFormatError};
use crate::matrix::{format_valuation, is_tautology3, Matrix, CIORE_THEOREMS};
use crate::syntax::Formula;

const TRANSITIVITY: &str = include_str!("../../data/proofs/transitivity.proof");
const STRONG_NEG_EXISTS: &str = include_str!("../../data/proofs/strong-neg-exists.proof");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaOrigin {
    /// Checked Hilbert proof.
    Proof(Box<Proof>),
    /// Propositional schema certified as a tautology of the matrix, which
    /// the propositional calculus proves by completeness.
    Tautology,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma {
    pub name: String,
    pub statement: Formula,
    pub origin: LemmaOrigin,
}

impl Lemma {
    /// Citable forms: the statement itself and, for `(a -> b) & (b -> a)`,
    /// each of the two implications.
    pub fn directions(&self) -> Vec<Formula> {
        let mut out = vec![self.statement.clone()];
        if let Formula::And(l, r) = &self.statement {
            if let (Formula::Imp(a, b), Formula::Imp(b2, a2)) = (&**l, &**r) {
                if a == a2 && b == b2 {
                    out.push((**l).clone());
                    out.push((**r).clone());
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("lemma `{0}` already exists")]
    Duplicate(String),
    #[error("proof `{0}` has hypotheses; only theorems can be lemmas")]
    HasHypotheses(String),
    #[error("proof `{0}` has no steps")]
    Empty(String),
    #[error("proof `{name}` is rejected at step {step}: {error}")]
    Rejected { name: String, step: usize, error: String },
    #[error("`{formula}` is not a tautology: fails at {counterexample}")]
    NotTautology { formula: String, counterexample: String },
    #[error("`{0}` is not a propositional schema")]
    NotPropositional(String),
    #[error(transparent)]
    Format(#[from] ProofFormatError),
}

/// Lemmas are only ever appended; clones are stable snapshots.
#[derive(Debug, Clone, Default)]
pub struct LemmaStore {
    lemmas: Vec<Lemma>,
    index: BTreeMap<String, usize>,
}

impl LemmaStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Transitivity of `->` (proved from `Ax1`, `Ax2`), every derived
    /// propositional schema that is a tautology, and
    /// `strong-neg-exists: !(exists x. a) -> forall x. !a`.
    pub fn standard() -> Self {
        let mut store = LemmaStore::new();
        store
            .add_proof_text(TRANSITIVITY, Calculus::Ciore)
            .expect("transitivity proof checks");
        let ciore = Matrix::ciore();
        for (name, text) in CIORE_THEOREMS {
            let f = crate::matrix::parse_schema(text);
            if is_tautology3(&f, &ciore).ok().flatten().is_none() {
                store.add_tautology(name, f).expect("certified schema");
            }
        }
        store
            .add_proof_text(STRONG_NEG_EXISTS, Calculus::QCiore)
            .expect("strong-neg-exists proof checks");
        store
    }

    pub fn get(&self, name: &str) -> Option<&Lemma> {
        self.index.get(name).map(|&i| &self.lemmas[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn lemmas(&self) -> &[Lemma] {
        &self.lemmas
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.lemmas.iter().map(|l| l.name.as_str())
    }

    fn push(&mut self, lemma: Lemma) -> Result<&Lemma, LemmaError> {
        if self.index.contains_key(&lemma.name) {
            return Err(LemmaError::Duplicate(lemma.name));
        }
        self.index.insert(lemma.name.clone(), self.lemmas.len());
        self.lemmas.push(lemma);
        Ok(self.lemmas.last().unwrap())
    }

    /// Registers a propositional schema after checking it is a tautology
    /// of the three-valued matrix.
    pub fn add_tautology(&mut self, name: &str, statement: Formula) -> Result<&Lemma, LemmaError> {
        if !statement.is_quantifier_free() || !statement.free_vars().is_empty() {
            return Err(LemmaError::NotPropositional(statement.to_string()));
        }
        let mut atoms = false;
        statement.visit(&mut |g| atoms |= matches!(g, Formula::Atom(..)));
        if atoms {
            return Err(LemmaError::NotPropositional(statement.to_string()));
        }
        if let Some(v) = is_tautology3(&statement, &Matrix::ciore())
            .map_err(|_| LemmaError::NotPropositional(statement.to_string()))?
        {
            return Err(LemmaError::NotTautology {
                formula: statement.to_string(),
                counterexample: format_valuation(&v),
            });
        }
        self.push(Lemma {
            name: name.to_string(),
            statement,
            origin: LemmaOrigin::Tautology,
        })
    }

    /// Checks `proof` against the current store and registers its
    /// conclusion under the proof's name.
    pub fn add_proof(&mut self, proof: Proof, calculus: Calculus) -> Result<&Lemma, LemmaError> {
        if !proof.hypotheses.is_empty() {
            return Err(LemmaError::HasHypotheses(proof.name));
        }
        let statement = proof
            .conclusion()
            .cloned()
            .ok_or_else(|| LemmaError::Empty(proof.name.clone()))?;
        let verdict = check_proof_in(&proof, &proof_signature(&proof), self, calculus);
        if let Some(bad) = verdict.first_failure() {
            return Err(LemmaError::Rejected {
                name: proof.name,
                step: bad.step,
                error: bad.error.clone().unwrap_or_default(),
            });
        }
        self.push(Lemma {
            name: proof.name.clone(),
            statement,
            origin: LemmaOrigin::Proof(Box::new(proof)),
        })
    }

    pub fn add_proof_text(&mut self, text: &str, calculus: Calculus) -> Result<&Lemma, LemmaError> {
        let file = parse_proof(text)?;
        self.add_proof(file.proof, calculus)
    }
}

/// Smallest signature covering the symbols of a proof.
fn proof_signature(p: &Proof) -> crate::syntax::Signature {
    let mut sig = crate::syntax::Signature::new();
    let mut add = |f: &Formula| {
        f.visit(&mut |g| {
            if let Formula::Atom(pred, args) = g {
                if pred == crate::syntax::EQ {
                    sig.set_equality(true);
                } else {
                    let _ = sig.add_predicate(pred, args.len());
                }
                for t in args {
                    add_term_symbols(&mut sig, t);
                }
            }
        })
    };
    for f in p.hypotheses.iter().chain(p.steps.iter().map(|s| &s.formula)) {
        add(f);
    }
    sig
}

fn add_term_symbols(sig: &mut crate::syntax::Signature, t: &crate::syntax::Term) {
    use crate::syntax::Term;
    match t {
        Term::Var(_) => {}
        Term::Const(c) => {
            let _ = sig.add_constant(c);
        }
        Term::App(f, args) => {
            let _ = sig.add_function(f, args.len());
            for a in args {
                add_term_symbols(sig, a);
            }
        }
    }
}
