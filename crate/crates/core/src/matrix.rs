//! Three-valued matrices and propositional evaluation.
//!
//! The truth tables are plain data so the same evaluator serves the Ciore
//! matrix and the comparison matrices for P1 and LFI1. Operations a matrix
//! does not define are rejected instead of being filled in.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{parse_formula, Formula, Signature};

/// One of the three truth values `0 < 1/2 < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Truth {
    Zero,
    Half,
    One,
}

impl Truth {
    pub const ALL: [Truth; 3] = [Truth::Zero, Truth::Half, Truth::One];

    /// `1/2` and `1` are designated.
    pub fn is_designated(self) -> bool {
        self != Truth::Zero
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Truth {
        Truth::ALL[i]
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::Zero => "0",
            Truth::Half => "1/2",
            Truth::One => "1",
        })
    }
}

impl std::str::FromStr for Truth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(Truth::Zero),
            "1/2" | "½" | "0.5" => Ok(Truth::Half),
            "1" => Ok(Truth::One),
            other => Err(format!("not a truth value: `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Connective {
    And,
    Or,
    Imp,
    Neg,
    Cons,
}

impl Connective {
    pub const ALL: [Connective; 5] = [
        Connective::And,
        Connective::Or,
        Connective::Imp,
        Connective::Neg,
        Connective::Cons,
    ];

    pub fn is_binary(self) -> bool {
        matches!(self, Connective::And | Connective::Or | Connective::Imp)
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Imp => "->",
            Connective::Neg => "~",
            Connective::Cons => "@",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixId {
    Ciore,
    P1,
    Lfi1,
    /// A modified matrix, e.g. for mutation testing.
    Custom,
}

impl fmt::Display for MatrixId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixId::Ciore => "CIORE",
            MatrixId::P1 => "P1",
            MatrixId::Lfi1 => "LFI1",
            MatrixId::Custom => "CUSTOM",
        })
    }
}

pub type BinaryTable = [[Truth; 3]; 3];
pub type UnaryTable = [Truth; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("the {matrix} matrix has no table for `{op}`")]
    MissingConnective { matrix: MatrixId, op: Connective },
    #[error("valuation does not assign propositional variable `{0}`")]
    MissingVariable(String),
    #[error("`{0}` is not a propositional formula")]
    NotPropositional(String),
}

/// A three-valued matrix with designated values `{1/2, 1}`. Tables are
/// indexed by [`Truth::index`]: `and[a][b]` is `a ∧ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub id: MatrixId,
    pub and: Option<BinaryTable>,
    pub or: Option<BinaryTable>,
    pub imp: Option<BinaryTable>,
    pub neg: Option<UnaryTable>,
    pub cons: Option<UnaryTable>,
}

use Truth::{Half as H, One as I, Zero as O};

impl Matrix {
    /// The Ciore matrix. Note `1 ∧ 1/2 = 1`, `1/2 ∨ 0 = 1` and
    /// `1 → 1/2 = 1`: these are not lattice operations.
    pub fn ciore() -> Matrix {
        Matrix {
            id: MatrixId::Ciore,
            //        rows: a = 0, 1/2, 1; columns: b = 0, 1/2, 1
            and: Some([[O, O, O], [O, H, I], [O, I, I]]),
            or: Some([[O, I, I], [I, H, I], [I, I, I]]),
            imp: Some([[I, I, I], [O, H, I], [O, I, I]]),
            neg: Some([I, H, O]),
            cons: Some([I, O, I]),
        }
    }

    /// Sette's P1: only `→` and `¬`.
    pub fn p1() -> Matrix {
        Matrix {
            id: MatrixId::P1,
            and: None,
            or: None,
            imp: Some([[I, I, I], [O, I, I], [O, I, I]]),
            neg: Some([I, I, O]),
            cons: None,
        }
    }

    pub fn lfi1() -> Matrix {
        Matrix {
            id: MatrixId::Lfi1,
            and: Some([[O, O, O], [O, H, H], [O, H, I]]),
            or: Some([[O, H, I], [H, H, I], [I, I, I]]),
            imp: Some([[I, I, I], [O, H, I], [O, H, I]]),
            neg: Some([I, H, O]),
            cons: Some([I, O, I]),
        }
    }

    pub fn by_id(id: MatrixId) -> Option<Matrix> {
        match id {
            MatrixId::Ciore => Some(Matrix::ciore()),
            MatrixId::P1 => Some(Matrix::p1()),
            MatrixId::Lfi1 => Some(Matrix::lfi1()),
            MatrixId::Custom => None,
        }
    }

    pub fn has(&self, op: Connective) -> bool {
        match op {
            Connective::And => self.and.is_some(),
            Connective::Or => self.or.is_some(),
            Connective::Imp => self.imp.is_some(),
            Connective::Neg => self.neg.is_some(),
            Connective::Cons => self.cons.is_some(),
        }
    }

    /// True when all five tables are present.
    pub fn is_total(&self) -> bool {
        Connective::ALL.iter().all(|&c| self.has(c))
    }

    fn missing(&self, op: Connective) -> MatrixError {
        MatrixError::MissingConnective { matrix: self.id, op }
    }

    pub fn binary(&self, op: Connective, a: Truth, b: Truth) -> Result<Truth, MatrixError> {
        let table = match op {
            Connective::And => self.and,
            Connective::Or => self.or,
            Connective::Imp => self.imp,
            Connective::Neg | Connective::Cons => None,
        }
        .ok_or_else(|| self.missing(op))?;
        Ok(table[a.index()][b.index()])
    }

    pub fn unary(&self, op: Connective, a: Truth) -> Result<Truth, MatrixError> {
        let table = match op {
            Connective::Neg => self.neg,
            Connective::Cons => self.cons,
            _ => None,
        }
        .ok_or_else(|| self.missing(op))?;
        Ok(table[a.index()])
    }

    /// Applies a connective to one or two arguments.
    pub fn apply(&self, op: Connective, a: Truth, b: Option<Truth>) -> Result<Truth, MatrixError> {
        match (op.is_binary(), b) {
            (true, Some(b)) => self.binary(op, a, b),
            (false, None) => self.unary(op, a),
            _ => panic!("connective {op} applied to the wrong number of arguments"),
        }
    }

    // Fast paths for the evaluator; callers guarantee the table exists.
    pub(crate) fn and_(&self, a: Truth, b: Truth) -> Truth {
        self.and.expect("and table")[a.index()][b.index()]
    }
    pub(crate) fn or_(&self, a: Truth, b: Truth) -> Truth {
        self.or.expect("or table")[a.index()][b.index()]
    }
    pub(crate) fn imp_(&self, a: Truth, b: Truth) -> Truth {
        self.imp.expect("imp table")[a.index()][b.index()]
    }
    pub(crate) fn neg_(&self, a: Truth) -> Truth {
        self.neg.expect("neg table")[a.index()]
    }
    pub(crate) fn cons_(&self, a: Truth) -> Truth {
        self.cons.expect("cons table")[a.index()]
    }
}

/// Assignment of truth values to propositional letters.
pub type Valuation = BTreeMap<String, Truth>;

/// Homomorphic extension of `v` through the tables of `m`.
pub fn eval_prop(f: &Formula, v: &Valuation, m: &Matrix) -> Result<Truth, MatrixError> {
    match f {
        Formula::Prop(p) => v
            .get(p)
            .copied()
            .ok_or_else(|| MatrixError::MissingVariable(p.clone())),
        Formula::Neg(a) => m.unary(Connective::Neg, eval_prop(a, v, m)?),
        Formula::Cons(a) => m.unary(Connective::Cons, eval_prop(a, v, m)?),
        Formula::And(a, b) => m.binary(Connective::And, eval_prop(a, v, m)?, eval_prop(b, v, m)?),
        Formula::Or(a, b) => m.binary(Connective::Or, eval_prop(a, v, m)?, eval_prop(b, v, m)?),
        Formula::Imp(a, b) => m.binary(Connective::Imp, eval_prop(a, v, m)?, eval_prop(b, v, m)?),
        Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => {
            Err(MatrixError::NotPropositional(f.to_string()))
        }
    }
}

/// All valuations of `letters` in lexicographic order (first letter most
/// significant, `0 < 1/2 < 1`).
pub fn valuations(letters: &[String]) -> impl Iterator<Item = Valuation> + '_ {
    let n = letters.len();
    let total = 3usize.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut vals = vec![Truth::Zero; n];
        for slot in vals.iter_mut().rev() {
            *slot = Truth::from_index(code % 3);
            code /= 3;
        }
        letters.iter().cloned().zip(vals).collect()
    })
}

/// `Ok(None)` when `f` is designated under every valuation, otherwise the
/// lexicographically least refuting valuation.
pub fn is_tautology3(f: &Formula, m: &Matrix) -> Result<Option<Valuation>, MatrixError> {
    let letters: Vec<String> = f.props().into_iter().collect();
    for v in valuations(&letters) {
        if !eval_prop(f, &v, m)?.is_designated() {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Propositional axiom schemas of Ciore, written over the letters `a b c`.
pub const CIORE_AXIOMS: &[(&str, &str)] = &[
    ("Ax1", "a -> (b -> a)"),
    ("Ax2", "(a -> (b -> c)) -> ((a -> b) -> (a -> c))"),
    ("Ax3", "a -> (b -> (a & b))"),
    ("Ax4", "(a & b) -> a"),
    ("Ax5", "(a & b) -> b"),
    ("Ax6", "a -> (a | b)"),
    ("Ax7", "b -> (a | b)"),
    ("Ax8", "(a -> c) -> ((b -> c) -> ((a | b) -> c))"),
    ("Ax9", "(a -> b) | a"),
    ("Ax10", "a | ~a"),
    ("bc1", "@a -> (a -> (~a -> b))"),
    ("ci", "~@a -> (a & ~a)"),
    ("cf", "~~a -> a"),
    ("ce", "a -> ~~a"),
    ("co1", "(@a | @b) -> @(a & b)"),
    ("co2", "(@a | @b) -> @(a | b)"),
    ("co3", "(@a | @b) -> @(a -> b)"),
    ("cr1", "@(a & b) -> (@a | @b)"),
    ("cr2", "@(a | b) -> (@a | @b)"),
    ("cr3", "@(a -> b) -> (@a | @b)"),
];

/// Derived propositional schemas used as lemmas (`!` is strong negation).
pub const CIORE_THEOREMS: &[(&str, &str)] = &[
    ("identity", "a -> a"),
    ("contraposition", "(a -> b) -> (!b -> !a)"),
    ("contradiction-strong", "(a & ~a) <-> !@a"),
    ("contradiction-weak", "(a & ~a) <-> ~@a"),
    ("cons-cons", "@@a"),
    ("cons-neg", "@a <-> @~a"),
    ("strong-neg-and", "(!a | !b) <-> !(a & b)"),
    ("contradiction-and", "((a & ~a) & (b & ~b)) <-> ((a & b) & ~(a & b))"),
    ("classical-and", "((a & (b & @b)) | ((a & @a) & b)) <-> ((a & b) & @(a & b))"),
    (
        "classical-or",
        "((a & @a) | (b & @b) | ((a & ~a) & !b) | (!a & (b & ~b))) <-> ((a | b) & @(a | b))",
    ),
    ("strong-neg-or", "(!a & !b) <-> !(a | b)"),
    ("contradiction-or", "((a & ~a) & (b & ~b)) <-> ((a | b) & ~(a | b))"),
    ("classical-imp", "(!a | (b & @b)) <-> ((a -> b) & @(a -> b))"),
    ("strong-neg-imp", "(a & !b) <-> !(a -> b)"),
    ("contradiction-imp", "((a & ~a) & (b & ~b)) <-> ((a -> b) & ~(a -> b))"),
];

pub(crate) fn parse_schema(text: &str) -> Formula {
    parse_formula(text, &Signature::new()).expect("built-in schema parses")
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemaResult {
    pub name: String,
    pub formula: String,
    /// Least refuting valuation, printed as `a=1, b=1/2`.
    pub counterexample: Option<String>,
}

impl SchemaResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemaReport {
    pub matrix: MatrixId,
    pub axioms: Vec<SchemaResult>,
    pub theorems: Vec<SchemaResult>,
}

impl SchemaReport {
    pub fn failures(&self) -> impl Iterator<Item = &SchemaResult> {
        self.axioms.iter().chain(&self.theorems).filter(|r| !r.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

pub fn format_valuation(v: &Valuation) -> String {
    v.iter()
        .map(|(k, t)| format!("{k}={t}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs [`is_tautology3`] over every named schema. Schemas using a
/// connective the matrix lacks are reported as errors.
pub fn check_named_schemas(m: &Matrix) -> Result<SchemaReport, MatrixError> {
    let run = |list: &[(&str, &str)]| -> Result<Vec<SchemaResult>, MatrixError> {
        list.iter()
            .map(|(name, text)| {
                let f = parse_schema(text);
                let cex = is_tautology3(&f, m)?;
                Ok(SchemaResult {
                    name: name.to_string(),
                    formula: f.to_string(),
                    counterexample: cex.as_ref().map(format_valuation),
                })
            })
            .collect()
    };
    Ok(SchemaReport {
        matrix: m.id,
        axioms: run(CIORE_AXIOMS)?,
        theorems: run(CIORE_THEOREMS)?,
    })
}
