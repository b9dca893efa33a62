//! Deterministic, duplicate-free enumeration of formulas by nesting depth.

use itertools::Itertools;

use super::{BinOp, Formula, Quantifier, Signature, Term};

/// Terms over `vars` and the constants of `sig`, closed under function
/// application up to `max_depth` nested applications.
pub fn enumerate_terms(sig: &Signature, vars: &[String], max_depth: usize) -> Vec<Term> {
    let mut levels: Vec<Vec<Term>> = vec![vars
        .iter()
        .map(|v| Term::Var(v.clone()))
        .chain(sig.constants().map(|c| Term::Const(c.to_string())))
        .collect()];
    for d in 1..=max_depth {
        let below: Vec<Term> = levels.iter().flatten().cloned().collect();
        let mut level = Vec::new();
        for (f, arity) in sig.functions() {
            for args in (0..arity).map(|_| below.iter()).multi_cartesian_product() {
                let t = Term::App(f.to_string(), args.into_iter().cloned().collect());
                if t.depth() == d {
                    level.push(t);
                }
            }
        }
        levels.push(level);
    }
    levels.into_iter().flatten().collect()
}

/// Every formula over the signature whose free variables lie in `vars`,
/// whose quantified variables are taken from `vars`, and whose depth is at
/// most `max_depth`; each exactly once, shallower formulas first.
///
/// Atom arguments range over variables and constants; raise
/// [`FormulaEnumerator::term_depth`] to include function applications.
#[derive(Debug, Clone)]
pub struct FormulaEnumerator {
    sig: Signature,
    vars: Vec<String>,
    max_depth: usize,
    term_depth: usize,
    // materialized levels 0..=max_depth
    levels: Option<Vec<Vec<Formula>>>,
    cursor: (usize, usize),
}

pub fn enumerate_formulas(sig: &Signature, vars: &[String], max_depth: usize) -> FormulaEnumerator {
    FormulaEnumerator {
        sig: sig.clone(),
        vars: vars.to_vec(),
        max_depth,
        term_depth: 0,
        levels: None,
        cursor: (0, 0),
    }
}

impl FormulaEnumerator {
    pub fn term_depth(mut self, depth: usize) -> Self {
        self.term_depth = depth;
        self
    }

    /// Formulas of depth exactly `d`, for each `d` up to the bound.
    pub fn levels(&mut self) -> &[Vec<Formula>] {
        if self.levels.is_none() {
            self.levels = Some(self.build());
        }
        self.levels.as_deref().unwrap()
    }

    fn atoms(&self) -> Vec<Formula> {
        let terms = enumerate_terms(&self.sig, &self.vars, self.term_depth);
        let mut out = Vec::new();
        for (p, arity) in self.sig.all_predicates() {
            for args in (0..arity).map(|_| terms.iter()).multi_cartesian_product() {
                out.push(Formula::Atom(p.clone(), args.into_iter().cloned().collect()));
            }
        }
        out
    }

    fn build(&self) -> Vec<Vec<Formula>> {
        let mut levels = vec![self.atoms()];
        for d in 1..=self.max_depth {
            let prev = &levels[d - 1];
            let mut level = Vec::new();
            level.extend(prev.iter().map(|f| Formula::neg(f.clone())));
            level.extend(prev.iter().map(|f| Formula::cons(f.clone())));
            for q in [Quantifier::Forall, Quantifier::Exists] {
                for x in &self.vars {
                    level.extend(prev.iter().map(|f| Formula::quantified(q, x, f.clone())));
                }
            }
            let lower: Vec<&Formula> = levels[..d - 1].iter().flatten().collect();
            for op in [BinOp::And, BinOp::Or, BinOp::Imp] {
                // at least one side has depth exactly d-1
                for a in prev {
                    for b in lower.iter().copied().chain(prev.iter()) {
                        level.push(Formula::binary(op, a.clone(), b.clone()));
                    }
                }
                for a in &lower {
                    for b in prev {
                        level.push(Formula::binary(op, (*a).clone(), b.clone()));
                    }
                }
            }
            levels.push(level);
        }
        levels
    }
}

impl Iterator for FormulaEnumerator {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        self.levels();
        let levels = self.levels.as_ref().unwrap();
        loop {
            let (d, i) = self.cursor;
            let level = levels.get(d)?;
            if i < level.len() {
                self.cursor.1 += 1;
                return Some(level[i].clone());
            }
            self.cursor = (d + 1, 0);
        }
    }
}
