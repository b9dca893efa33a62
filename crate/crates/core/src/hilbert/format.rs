//! Proof files.
//!
//! ```text
//! # comment
//! name: generalization
//! const: c d            (optional; other term identifiers are variables)
//! hyp: a
//! 1. a ; hyp 1
//! 2. a -> (((forall x. a) -> forall x. a) -> a) ; ax Ax1
//! ```
//!
//! Justifications: `ax`, `ax ID`, `mp i j`, `forall-in i`, `exists-in i`,
//! `hyp k`, `lemma NAME [i j ..]`.

use std::fmt;

use super::{Justification, Proof, Step};
use crate::syntax::{parse_formula_inferring, Signature, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofFormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: SyntaxError },
    #[error("missing `name:` line")]
    MissingName,
}

/// A parsed proof together with the signature its formulas use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofFile {
    pub proof: Proof,
    pub signature: Signature,
}

fn index(tok: &str, line: usize) -> Result<usize, ProofFormatError> {
    tok.parse().map_err(|_| ProofFormatError::Syntax {
        line,
        msg: format!("expected a step number, found `{tok}`"),
    })
}

fn justification(text: &str, line: usize) -> Result<Justification, ProofFormatError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let bad = |msg: &str| ProofFormatError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let one = |toks: &[&str]| match toks {
        [i] => index(i, line),
        _ => Err(bad("expected one step number")),
    };
    match toks.as_slice() {
        ["ax"] => Ok(Justification::Axiom(None)),
        ["ax", id] => Ok(Justification::Axiom(Some(id.to_string()))),
        ["mp", i, j] => Ok(Justification::Mp(index(i, line)?, index(j, line)?)),
        ["forall-in", rest @ ..] => Ok(Justification::ForallIn(one(rest)?)),
        ["exists-in", rest @ ..] => Ok(Justification::ExistsIn(one(rest)?)),
        ["hyp", rest @ ..] => Ok(Justification::Hyp(one(rest)?)),
        ["lemma", name, rest @ ..] => Ok(Justification::Lemma(
            name.to_string(),
            rest.iter().map(|t| index(t, line)).collect::<Result<_, _>>()?,
        )),
        _ => Err(bad(&format!("unrecognised justification `{text}`"))),
    }
}

fn step_line(
    body: &str,
    line: usize,
    sig: &mut Signature,
) -> Result<(usize, Step), ProofFormatError> {
    let (num, rest) = body.split_once('.').ok_or_else(|| ProofFormatError::Syntax {
        line,
        msg: "expected `n. <formula> ; <justification>`".into(),
    })?;
    let k = index(num.trim(), line)?;
    let (f, j) = rest.rsplit_once(';').ok_or_else(|| ProofFormatError::Syntax {
        line,
        msg: "missing `; <justification>`".into(),
    })?;
    let formula = parse_formula_inferring(f.trim(), sig)
        .map_err(|source| ProofFormatError::Formula { line, source })?;
    Ok((
        k,
        Step {
            formula,
            justification: justification(j, line)?,
        },
    ))
}

/// Reads a mutation set: one `n. <formula> ; <justification>` line per
/// mutant, each replacing step `n` of some proof.
pub fn parse_mutations(
    text: &str,
    sig: &Signature,
) -> Result<Vec<(usize, Step)>, ProofFormatError> {
    let mut sig = sig.clone();
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            out.push(step_line(body, n + 1, &mut sig)?);
        }
    }
    Ok(out)
}

pub fn parse_proof(text: &str) -> Result<ProofFile, ProofFormatError> {
    let mut sig = Signature::new();
    let mut name = None;
    let mut hypotheses = Vec::new();
    let mut steps = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let formula = |s: &str, sig: &mut Signature| {
            parse_formula_inferring(s.trim(), sig)
                .map_err(|source| ProofFormatError::Formula { line, source })
        };
        if let Some(rest) = body.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = body.strip_prefix("const:") {
            for c in rest.split([',', ' ']).filter(|c| !c.is_empty()) {
                sig.add_constant(c)
                    .map_err(|source| ProofFormatError::Formula { line, source })?;
            }
        } else if let Some(rest) = body.strip_prefix("hyp:") {
            hypotheses.push(formula(rest, &mut sig)?);
        } else {
            let (k, step) = step_line(body, line, &mut sig)?;
            if k != steps.len() + 1 {
                return Err(ProofFormatError::Syntax {
                    line,
                    msg: format!("expected step {}, found {k}", steps.len() + 1),
                });
            }
            steps.push(step);
        }
    }
    Ok(ProofFile {
        proof: Proof {
            name: name.ok_or(ProofFormatError::MissingName)?,
            hypotheses,
            steps,
        },
        signature: sig,
    })
}

impl Proof {
    /// Copy of the proof with step `k` (1-based) replaced.
    pub fn with_step(&self, k: usize, step: Step) -> Proof {
        let mut p = self.clone();
        p.steps[k - 1] = step;
        p
    }
}

impl fmt::Display for ProofFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let consts: Vec<&str> = self.signature.constants().collect();
        if !consts.is_empty() {
            writeln!(f, "const: {}", consts.join(" "))?;
        }
        write!(f, "{}", self.proof)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        for h in &self.hypotheses {
            writeln!(f, "hyp: {h}")?;
        }
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", k + 1, s.formula, s.justification)?;
        }
        Ok(())
    }
}
