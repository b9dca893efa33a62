//! Triples over a finite carrier: a partition into the classes `plus`
//! (value 1), `minus` (value 0) and `dot` (value 1/2).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::matrix::{Connective, Matrix, MatrixError, Truth};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("triples have different carriers")]
    CarrierMismatch,
    #[error("classes are not pairwise disjoint")]
    Overlap,
    #[error("map is not total on the carrier")]
    Partial,
    #[error("`{0}` expects {1} argument(s)")]
    Arity(Connective, usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A total map from the carrier into the three truth values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple<X: Ord> {
    values: BTreeMap<X, Truth>,
}

impl<X: Ord + Clone> Triple<X> {
    pub fn from_map(values: BTreeMap<X, Truth>) -> Self {
        Triple { values }
    }

    /// Builds the map for `carrier` from a partial assignment; every carrier
    /// element must be assigned and nothing else.
    pub fn from_partial(
        carrier: &BTreeSet<X>,
        values: &BTreeMap<X, Truth>,
    ) -> Result<Self, TripleError> {
        if values.len() != carrier.len() || !carrier.iter().all(|x| values.contains_key(x)) {
            return Err(TripleError::Partial);
        }
        Ok(Triple { values: values.clone() })
    }

    /// The classes must be pairwise disjoint; their union is the carrier.
    pub fn from_classes(
        plus: impl IntoIterator<Item = X>,
        minus: impl IntoIterator<Item = X>,
        dot: impl IntoIterator<Item = X>,
    ) -> Result<Self, TripleError> {
        let mut values = BTreeMap::new();
        for (class, v) in [
            (plus.into_iter().collect::<Vec<_>>(), Truth::One),
            (minus.into_iter().collect(), Truth::Zero),
            (dot.into_iter().collect(), Truth::Half),
        ] {
            for x in class {
                if values.insert(x, v).is_some_and(|old| old != v) {
                    return Err(TripleError::Overlap);
                }
            }
        }
        Ok(Triple { values })
    }

    /// Every element of `carrier` mapped to `v`.
    pub fn constant(carrier: impl IntoIterator<Item = X>, v: Truth) -> Self {
        Triple { values: carrier.into_iter().map(|x| (x, v)).collect() }
    }

    pub fn to_map(&self) -> BTreeMap<X, Truth> {
        self.values.clone()
    }

    pub fn as_map(&self) -> &BTreeMap<X, Truth> {
        &self.values
    }

    pub fn carrier(&self) -> BTreeSet<X> {
        self.values.keys().cloned().collect()
    }

    pub fn value(&self, x: &X) -> Option<Truth> {
        self.values.get(x).copied()
    }

    pub fn class(&self, v: Truth) -> BTreeSet<X> {
        self.values
            .iter()
            .filter(|(_, t)| **t == v)
            .map(|(x, _)| x.clone())
            .collect()
    }

    pub fn plus(&self) -> BTreeSet<X> {
        self.class(Truth::One)
    }

    pub fn minus(&self) -> BTreeSet<X> {
        self.class(Truth::Zero)
    }

    pub fn dot(&self) -> BTreeSet<X> {
        self.class(Truth::Half)
    }

    fn same_carrier(&self, other: &Self) -> bool {
        self.values.len() == other.values.len()
            && self.values.keys().zip(other.values.keys()).all(|(a, b)| a == b)
    }

    /// Every triple over `carrier`, in lexicographic order of value vectors.
    pub fn all_over(carrier: &[X]) -> Vec<Self> {
        let n = carrier.len();
        (0..3usize.pow(n as u32))
            .map(|mut code| {
                let mut values = BTreeMap::new();
                for x in carrier.iter().rev() {
                    values.insert(x.clone(), Truth::from_index(code % 3));
                    code /= 3;
                }
                Triple { values }
            })
            .collect()
    }
}

impl<X: Ord + fmt::Display> fmt::Display for Triple<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let class = |v: Truth| {
            self.values
                .iter()
                .filter(|(_, t)| **t == v)
                .map(|(x, _)| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "({{{}}}, {{{}}}, {{{}}})",
            class(Truth::One),
            class(Truth::Zero),
            class(Truth::Half)
        )
    }
}

/// Pointwise lift of `m`'s table for `op`.
pub fn triple_op<X: Ord + Clone>(
    op: Connective,
    r: &Triple<X>,
    u: Option<&Triple<X>>,
    m: &Matrix,
) -> Result<Triple<X>, TripleError> {
    if op.is_binary() != u.is_some() {
        return Err(TripleError::Arity(op, if op.is_binary() { 2 } else { 1 }));
    }
    if !m.has(op) {
        return Err(MatrixError::MissingConnective { matrix: m.id, op }.into());
    }
    let values = match u {
        Some(u) => {
            if !r.same_carrier(u) {
                return Err(TripleError::CarrierMismatch);
            }
            r.values
                .iter()
                .zip(u.values.values())
                .map(|((x, a), b)| Ok((x.clone(), m.binary(op, *a, *b)?)))
                .collect::<Result<_, MatrixError>>()?
        }
        None => r
            .values
            .iter()
            .map(|(x, a)| Ok((x.clone(), m.unary(op, *a)?)))
            .collect::<Result<_, MatrixError>>()?,
    };
    Ok(Triple { values })
}

/// [`triple_op`] under the P1 matrix.
pub fn p1_triple_op<X: Ord + Clone>(
    op: Connective,
    r: &Triple<X>,
    u: Option<&Triple<X>>,
) -> Result<Triple<X>, TripleError> {
    triple_op(op, r, u, &Matrix::p1())
}

/// [`triple_op`] under the LFI1 matrix.
pub fn lfi1_triple_op<X: Ord + Clone>(
    op: Connective,
    r: &Triple<X>,
    u: Option<&Triple<X>>,
) -> Result<Triple<X>, TripleError> {
    triple_op(op, r, u, &Matrix::lfi1())
}

/// Which family of set-theoretic formulas [`set_op`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetForm {
    /// Class formulas matching the Ciore tables cell by cell.
    Characterized,
    /// The textbook formulas for `∨` and `→` that send `1/2 ∨ 0` and
    /// `1 → 1/2` to the dot class. They coincide with LFI1, not Ciore.
    Printed,
}

type Classes<X> = (BTreeSet<X>, BTreeSet<X>, BTreeSet<X>);

fn classes<X: Ord + Clone>(t: &Triple<X>) -> Classes<X> {
    (t.plus(), t.minus(), t.dot())
}

fn cap<X: Ord + Clone>(a: &BTreeSet<X>, b: &BTreeSet<X>) -> BTreeSet<X> {
    a.intersection(b).cloned().collect()
}

fn cup<X: Ord + Clone>(sets: &[&BTreeSet<X>]) -> BTreeSet<X> {
    sets.iter().flat_map(|s| s.iter().cloned()).collect()
}

fn assemble<X: Ord + Clone>(
    carrier: BTreeSet<X>,
    (plus, minus, dot): Classes<X>,
) -> Result<Triple<X>, TripleError> {
    let t = Triple::from_classes(plus, minus, dot)?;
    if t.carrier() != carrier {
        return Err(TripleError::Partial);
    }
    Ok(t)
}

/// Computes a Ciore operation through class algebra rather than the table.
/// Fails with [`TripleError::Overlap`] or [`TripleError::Partial`] when the
/// chosen formulas do not produce a partition.
pub fn set_op<X: Ord + Clone>(
    form: SetForm,
    op: Connective,
    r: &Triple<X>,
    u: Option<&Triple<X>>,
) -> Result<Triple<X>, TripleError> {
    if op.is_binary() != u.is_some() {
        return Err(TripleError::Arity(op, if op.is_binary() { 2 } else { 1 }));
    }
    let carrier = r.carrier();
    let (rp, rm, rd) = classes(r);
    let out = match (op, u) {
        (Connective::Neg, None) => (rm, rp, rd),
        (Connective::Cons, None) => (cup(&[&rp, &rm]), rd, BTreeSet::new()),
        (op, Some(u)) => {
            if !r.same_carrier(u) {
                return Err(TripleError::CarrierMismatch);
            }
            let (up, um, ud) = classes(u);
            let rpd = cup(&[&rp, &rd]);
            match (op, form) {
                (Connective::And, _) => (
                    cup(&[&cap(&rp, &up), &cap(&rp, &ud), &cap(&rd, &up)]),
                    cup(&[&rm, &um]),
                    cap(&rd, &ud),
                ),
                (Connective::Or, SetForm::Characterized) => (
                    cup(&[&rp, &up, &cap(&rm, &ud), &cap(&rd, &um)]),
                    cap(&rm, &um),
                    cap(&rd, &ud),
                ),
                (Connective::Or, SetForm::Printed) => (
                    cup(&[&rp, &up]),
                    cap(&rm, &um),
                    cup(&[&cap(&rd, &um), &cap(&rm, &ud), &cap(&rd, &ud)]),
                ),
                (Connective::Imp, SetForm::Characterized) => (
                    cup(&[&rm, &cap(&rp, &up), &cap(&rp, &ud), &cap(&rd, &up)]),
                    cap(&rpd, &um),
                    cap(&rd, &ud),
                ),
                (Connective::Imp, SetForm::Printed) => (
                    cup(&[&rm, &up]),
                    cap(&rpd, &um),
                    cap(&rpd, &ud),
                ),
                _ => unreachable!("binary connective"),
            }
        }
        _ => unreachable!("arity checked above"),
    };
    assemble(carrier, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Connective::*;
    use Truth::{Half as H, One as I, Zero as O};

    fn t(vals: &[(char, Truth)]) -> Triple<char> {
        Triple::from_map(vals.iter().copied().collect())
    }

    #[test]
    fn negation_and_consistency_examples() {
        let m = Matrix::ciore();
        let r = Triple::from_classes(['a'], ['b'], ['c']).unwrap();
        let neg = triple_op(Neg, &r, None, &m).unwrap();
        assert_eq!(neg, Triple::from_classes(['b'], ['a'], ['c']).unwrap());
        let cons = triple_op(Cons, &r, None, &m).unwrap();
        assert_eq!(cons, Triple::from_classes(['a', 'b'], ['c'], []).unwrap());
    }

    #[test]
    fn half_or_zero_is_one() {
        let r = t(&[('x', H)]);
        let u = t(&[('x', O)]);
        let v = triple_op(Or, &r, Some(&u), &Matrix::ciore()).unwrap();
        assert_eq!(v.value(&'x'), Some(I));
    }

    #[test]
    fn map_conversions() {
        let c = Triple::constant(['a', 'b'], I);
        assert_eq!((c.plus().len(), c.minus().len(), c.dot().len()), (2, 0, 0));
        let e: Triple<char> = Triple::from_map(BTreeMap::new());
        assert!(e.plus().is_empty() && e.minus().is_empty() && e.dot().is_empty());
        let r = t(&[('a', H), ('b', O)]);
        assert_eq!(r.plus(), BTreeSet::new());
        assert_eq!(r.minus(), BTreeSet::from(['b']));
        assert_eq!(r.dot(), BTreeSet::from(['a']));
        assert_eq!(Triple::from_map(r.to_map()), r);
        let carrier = BTreeSet::from(['a', 'b']);
        assert_eq!(
            Triple::from_partial(&carrier, &BTreeMap::from([('a', H)])),
            Err(TripleError::Partial)
        );
        assert_eq!(Triple::from_classes(['a'], ['a'], []), Err(TripleError::Overlap));
    }

    #[test]
    fn p1_examples() {
        let all_dot = Triple::constant(['a', 'b'], H);
        let neg = p1_triple_op(Neg, &all_dot, None).unwrap();
        assert_eq!(neg, Triple::constant(['a', 'b'], I));
        let r = Triple::constant(['a', 'b'], I);
        let u = Triple::constant(['a', 'b'], O);
        assert_eq!(p1_triple_op(Imp, &r, Some(&u)).unwrap(), u);
        assert!(matches!(
            p1_triple_op(Cons, &r, None),
            Err(TripleError::Matrix(MatrixError::MissingConnective { .. }))
        ));
    }

    #[test]
    fn p1_closed_forms() {
        // neg r = (r- u r., r+, {}) and r -> u = (r- u u+ u u., (r+ u r.) n u-, {})
        let carrier = ['a', 'b', 'c'];
        for r in Triple::all_over(&carrier) {
            let neg = p1_triple_op(Neg, &r, None).unwrap();
            assert_eq!(neg.plus(), cup(&[&r.minus(), &r.dot()]));
            assert_eq!(neg.minus(), r.plus());
            assert!(neg.dot().is_empty());
            for u in Triple::all_over(&carrier) {
                let imp = p1_triple_op(Imp, &r, Some(&u)).unwrap();
                assert_eq!(imp.plus(), cup(&[&r.minus(), &u.plus(), &u.dot()]));
                assert_eq!(imp.minus(), cap(&cup(&[&r.plus(), &r.dot()]), &u.minus()));
                assert!(imp.dot().is_empty());
            }
        }
    }

    #[test]
    fn lfi1_keeps_dot_meet() {
        let r = Triple::constant(['a'], H);
        let v = lfi1_triple_op(And, &r, Some(&r)).unwrap();
        assert_eq!(v.dot(), BTreeSet::from(['a']));
    }

    #[test]
    fn carrier_mismatch_and_arity() {
        let m = Matrix::ciore();
        let r = Triple::constant(['a'], I);
        let u = Triple::constant(['b'], I);
        assert_eq!(triple_op(And, &r, Some(&u), &m), Err(TripleError::CarrierMismatch));
        assert_eq!(triple_op(And, &r, None, &m), Err(TripleError::Arity(And, 2)));
        assert_eq!(triple_op(Neg, &r, Some(&r), &m), Err(TripleError::Arity(Neg, 1)));
    }

    #[test]
    fn characterized_forms_match_table_exhaustively() {
        let m = Matrix::ciore();
        for n in 0..=3 {
            let carrier: Vec<char> = "abc".chars().take(n).collect();
            let all = Triple::all_over(&carrier);
            for r in &all {
                for op in [Neg, Cons] {
                    assert_eq!(
                        set_op(SetForm::Characterized, op, r, None).unwrap(),
                        triple_op(op, r, None, &m).unwrap()
                    );
                }
                for u in &all {
                    for op in [And, Or, Imp] {
                        assert_eq!(
                            set_op(SetForm::Characterized, op, r, Some(u)).unwrap(),
                            triple_op(op, r, Some(u), &m).unwrap(),
                            "{op} on {r:?} {u:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn printed_forms_diverge_from_ciore_on_or_and_imp() {
        let m = Matrix::ciore();
        let single = |v| Triple::constant(['x'], v);
        let printed_or = set_op(SetForm::Printed, Or, &single(H), Some(&single(O))).unwrap();
        assert_eq!(printed_or.value(&'x'), Some(H));
        assert_eq!(
            triple_op(Or, &single(H), Some(&single(O)), &m).unwrap().value(&'x'),
            Some(I)
        );
        let printed_imp = set_op(SetForm::Printed, Imp, &single(I), Some(&single(H))).unwrap();
        assert_eq!(printed_imp.value(&'x'), Some(H));
        // conjunction agrees, and the printed forms are exactly the LFI1 lift
        let all = Triple::all_over(&['a', 'b']);
        for r in &all {
            for u in &all {
                assert_eq!(
                    set_op(SetForm::Printed, And, r, Some(u)).unwrap(),
                    triple_op(And, r, Some(u), &m).unwrap()
                );
                for op in [Or, Imp] {
                    assert_eq!(
                        set_op(SetForm::Printed, op, r, Some(u)).unwrap(),
                        triple_op(op, r, Some(u), &Matrix::lfi1()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn display_lists_classes() {
        let r = t(&[('a', I), ('b', O), ('c', H)]);
        assert_eq!(r.to_string(), "({a}, {b}, {c})");
    }
}
