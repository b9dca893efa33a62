//! Indexed enumeration of all structures of a signature on a fixed domain.
//!
//! Structure `i` is decoded from `i` in mixed radix, most significant digit
//! first: predicate tables (symbols in name order, tuples in index order,
//! values `0 < 1/2 < 1`), then equality, then function tables, then
//! constants.

use super::{default_names, Structure, StructureError};
use crate::matrix::Truth;
use crate::syntax::{Signature, EQ};

/// How the equality predicate, if any, is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EqualityMode {
    /// Fixed to classical identity.
    #[default]
    Classical,
    /// Any partial equality: each diagonal pair 1 or 1/2, the rest 0.
    Normal,
    /// Unconstrained, like any other binary predicate.
    Free,
}

#[derive(Debug, Clone, Copy)]
enum Digit {
    Pred { slot: usize, pos: usize },
    EqDiag { pos: usize },
    Fun { slot: usize, pos: usize },
    Const { slot: usize },
}

impl Digit {
    fn radix(&self, n: usize) -> u128 {
        match self {
            Digit::Pred { .. } => 3,
            Digit::EqDiag { .. } => 2,
            Digit::Fun { .. } | Digit::Const { .. } => n as u128,
        }
    }
}

/// All structures of a signature with domain `e1, .., en`.
#[derive(Debug, Clone)]
pub struct StructureSpace {
    sig: Signature,
    size: usize,
    equality: EqualityMode,
    preds: Vec<(String, usize)>,
    funs: Vec<(String, usize)>,
    consts: Vec<String>,
    digits: Vec<Digit>,
    count: Option<u128>,
}

impl StructureSpace {
    pub fn new(sig: &Signature, size: usize, equality: EqualityMode) -> Result<Self, StructureError> {
        if size == 0 {
            return Err(StructureError::EmptyDomain);
        }
        let mut preds: Vec<(String, usize)> = sig
            .predicates()
            .map(|(p, a)| (p.to_string(), a))
            .collect();
        if sig.has_equality() && equality == EqualityMode::Free {
            preds.push((EQ.to_string(), 2));
        }
        let funs: Vec<(String, usize)> = sig.functions().map(|(f, a)| (f.to_string(), a)).collect();
        let consts: Vec<String> = sig.constants().map(str::to_string).collect();
        let mut digits = Vec::new();
        for (slot, (_, arity)) in preds.iter().enumerate() {
            for pos in 0..size.pow(*arity as u32) {
                digits.push(Digit::Pred { slot, pos });
            }
        }
        if sig.has_equality() && equality == EqualityMode::Normal {
            for i in 0..size {
                digits.push(Digit::EqDiag { pos: i * size + i });
            }
        }
        for (slot, (_, arity)) in funs.iter().enumerate() {
            for pos in 0..size.pow(*arity as u32) {
                digits.push(Digit::Fun { slot, pos });
            }
        }
        for slot in 0..consts.len() {
            digits.push(Digit::Const { slot });
        }
        let count = digits
            .iter()
            .try_fold(1u128, |acc, d| acc.checked_mul(d.radix(size)));
        Ok(StructureSpace {
            sig: sig.clone(),
            size,
            equality,
            preds,
            funs,
            consts,
            digits,
            count,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// Number of structures, or `None` when it exceeds `u128`.
    pub fn count(&self) -> Option<u128> {
        self.count
    }

    /// Structure number `index`; `index` must be below [`Self::count`].
    pub fn decode(&self, mut index: u128) -> Structure {
        let n = self.size;
        let mut pred_values: Vec<Vec<Truth>> = self
            .preds
            .iter()
            .map(|(_, a)| vec![Truth::Zero; n.pow(*a as u32)])
            .collect();
        let mut fun_values: Vec<Vec<usize>> =
            self.funs.iter().map(|(_, a)| vec![0; n.pow(*a as u32)]).collect();
        let mut const_values = vec![0; self.consts.len()];
        let mut eq = if self.sig.has_equality() && self.equality != EqualityMode::Free {
            let mut v = vec![Truth::Zero; n * n];
            for i in 0..n {
                v[i * n + i] = Truth::One;
            }
            Some(v)
        } else {
            None
        };
        for d in self.digits.iter().rev() {
            let r = d.radix(n);
            let digit = (index % r) as usize;
            index /= r;
            match *d {
                Digit::Pred { slot, pos } => pred_values[slot][pos] = Truth::from_index(digit),
                Digit::EqDiag { pos } => {
                    eq.as_mut().unwrap()[pos] = if digit == 0 { Truth::One } else { Truth::Half }
                }
                Digit::Fun { slot, pos } => fun_values[slot][pos] = digit,
                Digit::Const { slot } => const_values[slot] = digit,
            }
        }
        let mut preds: Vec<(String, Vec<Truth>)> = self
            .preds
            .iter()
            .map(|(p, _)| p.clone())
            .zip(pred_values)
            .collect();
        if let Some(eq) = eq {
            preds.push((EQ.to_string(), eq));
        }
        Structure::from_parts(
            self.sig.clone(),
            default_names(n),
            preds,
            self.funs.iter().map(|(f, _)| f.clone()).zip(fun_values).collect(),
            self.consts.iter().cloned().zip(const_values).collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = Structure> + '_ {
        let count = self.count.expect("structure count overflows u128");
        (0..count).map(move |i| self.decode(i))
    }
}

/// Number of structures of size `n`, by the product formula.
pub fn count_structures(sig: &Signature, n: usize, equality: EqualityMode) -> Option<u128> {
    let pow = |base: u128, e: usize| base.checked_pow(u32::try_from(e).ok()?);
    let mut total: u128 = 1;
    for (_, arity) in sig.predicates() {
        total = total.checked_mul(pow(3, n.pow(arity as u32))?)?;
    }
    if sig.has_equality() {
        total = total.checked_mul(match equality {
            EqualityMode::Classical => 1,
            EqualityMode::Normal => pow(2, n)?,
            EqualityMode::Free => pow(3, n * n)?,
        })?;
    }
    for (_, arity) in sig.functions() {
        total = total.checked_mul(pow(n as u128, n.pow(arity as u32))?)?;
    }
    total.checked_mul(pow(n as u128, sig.constants().count())?)
}

/// All structures of size `n` in index order.
pub fn enumerate_structures(
    sig: &Signature,
    n: usize,
    equality: EqualityMode,
) -> Result<Vec<Structure>, StructureError> {
    let space = StructureSpace::new(sig, n, equality)?;
    Ok(space.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_for_small_signatures() {
        let p = Signature::new().with_predicate("P", 1).unwrap();
        assert_eq!(enumerate_structures(&p, 1, EqualityMode::Classical).unwrap().len(), 3);
        assert_eq!(enumerate_structures(&p, 2, EqualityMode::Classical).unwrap().len(), 9);
        let c = Signature::new().with_constant("c").unwrap();
        assert_eq!(enumerate_structures(&c, 2, EqualityMode::Classical).unwrap().len(), 2);
    }

    #[test]
    fn complete_and_duplicate_free() {
        let sig = Signature::new()
            .with_predicate("P", 1)
            .unwrap()
            .with_predicate("R", 2)
            .unwrap()
            .with_function("f", 1)
            .unwrap()
            .with_constant("c")
            .unwrap()
            .with_equality();
        for mode in [EqualityMode::Classical, EqualityMode::Normal, EqualityMode::Free] {
            for n in 1..=2 {
                let all = enumerate_structures(&sig, n, mode).unwrap();
                let expected = count_structures(&sig, n, mode).unwrap();
                assert_eq!(all.len() as u128, expected, "{mode:?} n={n}");
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
                if mode != EqualityMode::Free {
                    assert!(all.iter().all(|s| s.is_equality_structure().unwrap()));
                }
            }
        }
    }

    #[test]
    fn first_structure_is_all_zero() {
        let p = Signature::new().with_predicate("P", 1).unwrap();
        let space = StructureSpace::new(&p, 2, EqualityMode::Classical).unwrap();
        let first = space.decode(0);
        assert_eq!(first.pred_values("P").unwrap(), [Truth::Zero, Truth::Zero]);
        let second = space.decode(1);
        assert_eq!(second.pred_values("P").unwrap(), [Truth::Zero, Truth::Half]);
    }
}
