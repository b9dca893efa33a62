//! Twist structures (pairs) and structures of triples over finite powerset
//! Boolean algebras, the isomorphism between them, and quantifier operators
//! lifted to algebras of assignment sets.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{Connective, Truth};
use crate::triples::Triple;

/// An element of a powerset algebra: bit `i` set means point `i` belongs.
pub type Elem = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("powerset algebras are limited to 64 points, got {0}")]
    TooLarge(usize),
    #[error("{0:#b} is not an element of the algebra")]
    NotElement(Elem),
    #[error("({0:#b}, {1:#b}) is not a twist pair: the join is not 1")]
    NotPair(Elem, Elem),
    #[error("({0:#b}, {1:#b}, {2:#b}) is not a partition of 1")]
    NotTriple(Elem, Elem, Elem),
    #[error("`{0}` expects {1} argument(s)")]
    Arity(Connective, usize),
    #[error("variable `{0}` is not in the assignment space")]
    UnknownVariable(String),
    #[error("assignment space has {0} points; its algebra must have the same size")]
    SpaceMismatch(usize),
}

/// The Boolean algebra of subsets of `{0, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowersetAlgebra {
    size: usize,
}

impl PowersetAlgebra {
    pub fn new(size: usize) -> Result<Self, TwistError> {
        if size > 64 {
            return Err(TwistError::TooLarge(size));
        }
        Ok(PowersetAlgebra { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn top(&self) -> Elem {
        if self.size == 64 {
            u64::MAX
        } else {
            (1u64 << self.size) - 1
        }
    }

    pub fn bottom(&self) -> Elem {
        0
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        a & b
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        a | b
    }

    pub fn compl(&self, a: Elem) -> Elem {
        !a & self.top()
    }

    /// `a ⊃ b = ∼a ⊔ b`.
    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.compl(a) | b
    }

    pub fn contains(&self, a: Elem) -> bool {
        a & !self.top() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        assert!(self.size < 64, "cannot enumerate a 64-point powerset");
        0..=self.top()
    }

    pub fn pair(&self, a: Elem, b: Elem) -> Result<TwistPair, TwistError> {
        for e in [a, b] {
            if !self.contains(e) {
                return Err(TwistError::NotElement(e));
            }
        }
        if a | b != self.top() {
            return Err(TwistError::NotPair(a, b));
        }
        Ok(TwistPair(a, b))
    }

    pub fn triple(&self, a: Elem, b: Elem, c: Elem) -> Result<TwistTriple, TwistError> {
        for e in [a, b, c] {
            if !self.contains(e) {
                return Err(TwistError::NotElement(e));
            }
        }
        if a & b != 0 || a & c != 0 || b & c != 0 || a | b | c != self.top() {
            return Err(TwistError::NotTriple(a, b, c));
        }
        Ok(TwistTriple(a, b, c))
    }

    /// All members of the twist structure, i.e. pairs with `a ⊔ b = 1`.
    pub fn all_pairs(&self) -> Vec<TwistPair> {
        let top = self.top();
        self.elements()
            .flat_map(|a| {
                let missing = top & !a;
                // b ranges over supersets of the complement of a
                self.elements()
                    .filter(move |b| b & missing == missing)
                    .map(move |b| TwistPair(a, b))
            })
            .collect()
    }

    /// All members of the structure of triples, one per map of the points
    /// into the three classes.
    pub fn all_triples(&self) -> Vec<TwistTriple> {
        let n = self.size;
        (0..3usize.pow(n as u32))
            .map(|mut code| {
                let mut t = [0u64; 3];
                for i in 0..n {
                    t[code % 3] |= 1 << i;
                    code /= 3;
                }
                TwistTriple(t[0], t[1], t[2])
            })
            .collect()
    }

    pub fn bottom_pair(&self) -> TwistPair {
        TwistPair(0, self.top())
    }

    pub fn bottom_triple(&self) -> TwistTriple {
        TwistTriple(0, self.top(), 0)
    }

    /// Pair operations, exactly as in the definition of twist structures.
    pub fn pair_op(
        &self,
        op: Connective,
        z: TwistPair,
        w: Option<TwistPair>,
    ) -> Result<TwistPair, TwistError> {
        let TwistPair(z1, z2) = z;
        let both_half = |w: TwistPair| self.meet(self.meet(z1, z2), self.meet(w.0, w.1));
        let out = match (op, w) {
            (Connective::Neg, None) => TwistPair(z2, z1),
            (Connective::Cons, None) => {
                let m = self.meet(z1, z2);
                TwistPair(self.compl(m), m)
            }
            (Connective::And | Connective::Or | Connective::Imp, Some(w)) => {
                let first = match op {
                    Connective::And => self.meet(z1, w.0),
                    Connective::Or => self.join(z1, w.0),
                    _ => self.imp(z1, w.0),
                };
                TwistPair(first, self.imp(first, both_half(w)))
            }
            _ => return Err(arity(op)),
        };
        Ok(out)
    }

    /// Triple operations in the class form that agrees with the Ciore tables.
    pub fn triple_op(
        &self,
        op: Connective,
        z: TwistTriple,
        w: Option<TwistTriple>,
    ) -> Result<TwistTriple, TwistError> {
        let TwistTriple(z1, z2, z3) = z;
        let out = match (op, w) {
            (Connective::Neg, None) => TwistTriple(z2, z1, z3),
            (Connective::Cons, None) => TwistTriple(z1 | z2, z3, 0),
            (Connective::And, Some(TwistTriple(w1, w2, w3))) => {
                TwistTriple((z1 & w1) | (z1 & w3) | (z3 & w1), z2 | w2, z3 & w3)
            }
            (Connective::Or, Some(TwistTriple(w1, w2, w3))) => {
                TwistTriple(z1 | w1 | (z2 & w3) | (z3 & w2), z2 & w2, z3 & w3)
            }
            (Connective::Imp, Some(TwistTriple(w1, w2, w3))) => TwistTriple(
                z2 | (z1 & w1) | (z1 & w3) | (z3 & w1),
                (z1 | z3) & w2,
                z3 & w3,
            ),
            _ => return Err(arity(op)),
        };
        Ok(out)
    }

    /// `†(z1, z2, z3) = (z1 ⊔ z3, z2 ⊔ z3)`.
    pub fn dagger(&self, z: TwistTriple) -> TwistPair {
        TwistPair(z.0 | z.2, z.1 | z.2)
    }

    /// `‡(z1, z2) = (z1 ⊓ ∼z2, z2 ⊓ ∼z1, z1 ⊓ z2)`.
    pub fn ddagger(&self, p: TwistPair) -> TwistTriple {
        TwistTriple(
            self.meet(p.0, self.compl(p.1)),
            self.meet(p.1, self.compl(p.0)),
            self.meet(p.0, p.1),
        )
    }
}

fn arity(op: Connective) -> TwistError {
    TwistError::Arity(op, if op.is_binary() { 2 } else { 1 })
}

/// `(a, b)`: `a` collects the points where the value is designated, `b`
/// those where its negation is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwistPair(pub Elem, pub Elem);

/// `(a, b, c)`: the points with value 1, 0 and 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwistTriple(pub Elem, pub Elem, pub Elem);

impl TwistTriple {
    pub fn value_at(&self, point: usize) -> Truth {
        let bit = 1u64 << point;
        if self.0 & bit != 0 {
            Truth::One
        } else if self.1 & bit != 0 {
            Truth::Zero
        } else {
            Truth::Half
        }
    }

    pub fn to_triple(&self, size: usize) -> Triple<usize> {
        Triple::from_map((0..size).map(|i| (i, self.value_at(i))).collect())
    }

    pub fn from_triple(t: &Triple<usize>) -> TwistTriple {
        let mask = |v: Truth| t.class(v).into_iter().fold(0u64, |m, i| m | 1 << i);
        TwistTriple(mask(Truth::One), mask(Truth::Zero), mask(Truth::Half))
    }
}

impl fmt::Display for TwistPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:#b}, {:#b})", self.0, self.1)
    }
}

impl fmt::Display for TwistTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:#b}, {:#b}, {:#b})", self.0, self.1, self.2)
    }
}

/// Assignments of a fixed list of variables into `{0, .., domain_size-1}`,
/// numbered in mixed radix with the first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentSpace {
    domain_size: usize,
    vars: Vec<String>,
}

impl AssignmentSpace {
    pub fn new(domain_size: usize, vars: &[&str]) -> Result<Self, TwistError> {
        let space = AssignmentSpace {
            domain_size,
            vars: vars.iter().map(|v| v.to_string()).collect(),
        };
        PowersetAlgebra::new(space.len())?;
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.domain_size.pow(self.vars.len() as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn algebra(&self) -> PowersetAlgebra {
        PowersetAlgebra { size: self.len() }
    }

    /// Values of the variables at assignment `index`.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.vars.len()];
        for slot in out.iter_mut().rev() {
            *slot = index % self.domain_size;
            index /= self.domain_size;
        }
        out
    }

    pub fn encode(&self, values: &[usize]) -> usize {
        values.iter().fold(0, |acc, v| acc * self.domain_size + v)
    }

    fn var_index(&self, x: &str) -> Result<usize, TwistError> {
        self.vars
            .iter()
            .position(|v| v == x)
            .ok_or_else(|| TwistError::UnknownVariable(x.to_string()))
    }

    /// The assignments `s[x := a]` for every `a`.
    fn variants(&self, s: usize, xi: usize) -> impl Iterator<Item = usize> + '_ {
        let mut values = self.decode(s);
        (0..self.domain_size).map(move |a| {
            values[xi] = a;
            self.encode(&values)
        })
    }

    /// `{s : s[x := a] ∈ y for all a}`.
    pub fn forall_hat(&self, x: &str, y: Elem) -> Result<Elem, TwistError> {
        let xi = self.var_index(x)?;
        Ok((0..self.len())
            .filter(|&s| self.variants(s, xi).all(|t| y >> t & 1 == 1))
            .fold(0, |m, s| m | 1 << s))
    }

    /// `{s : s[x := a] ∈ y for some a}`.
    pub fn exists_hat(&self, x: &str, y: Elem) -> Result<Elem, TwistError> {
        let xi = self.var_index(x)?;
        Ok((0..self.len())
            .filter(|&s| self.variants(s, xi).any(|t| y >> t & 1 == 1))
            .fold(0, |m, s| m | 1 << s))
    }

    fn check_triple(&self, z: TwistTriple) -> Result<(), TwistError> {
        self.algebra().triple(z.0, z.1, z.2).map(|_| ())
    }

    /// `[∀x]` on triples: `(∃̂Z1 − ∃̂Z2, ∃̂Z2, ∀̂Z3)`.
    pub fn forall_triple(&self, x: &str, z: TwistTriple) -> Result<TwistTriple, TwistError> {
        self.check_triple(z)?;
        let e1 = self.exists_hat(x, z.0)?;
        let e2 = self.exists_hat(x, z.1)?;
        Ok(TwistTriple(e1 & !e2, e2, self.forall_hat(x, z.2)?))
    }

    /// `[∃x]` on triples: `(S − (∀̂Z2 ∪ ∀̂Z3), ∀̂Z2, ∀̂Z3)`.
    pub fn exists_triple(&self, x: &str, z: TwistTriple) -> Result<TwistTriple, TwistError> {
        self.check_triple(z)?;
        let a2 = self.forall_hat(x, z.1)?;
        let a3 = self.forall_hat(x, z.2)?;
        Ok(TwistTriple(self.algebra().top() & !(a2 | a3), a2, a3))
    }

    /// `[∀x]` on pairs, defined as `† ∘ [∀x]_T ∘ ‡`.
    pub fn forall_pair(&self, x: &str, p: TwistPair) -> Result<TwistPair, TwistError> {
        let alg = self.algebra();
        alg.pair(p.0, p.1)?;
        Ok(alg.dagger(self.forall_triple(x, alg.ddagger(p))?))
    }

    /// `[∃x]` on pairs, defined as `† ∘ [∃x]_T ∘ ‡`.
    pub fn exists_pair(&self, x: &str, p: TwistPair) -> Result<TwistPair, TwistError> {
        let alg = self.algebra();
        alg.pair(p.0, p.1)?;
        Ok(alg.dagger(self.exists_triple(x, alg.ddagger(p))?))
    }

    /// Closed form of [`Self::forall_pair`]:
    /// `((∃̂(Z1−Z2) − ∃̂(Z2−Z1)) ∪ ∀̂(Z1∩Z2), ∃̂(Z2−Z1) ∪ ∀̂(Z1∩Z2))`.
    pub fn forall_pair_closed(&self, x: &str, p: TwistPair) -> Result<TwistPair, TwistError> {
        let TwistPair(z1, z2) = p;
        let only1 = self.exists_hat(x, z1 & !z2)?;
        let only2 = self.exists_hat(x, z2 & !z1)?;
        let both = self.forall_hat(x, z1 & z2)?;
        Ok(TwistPair((only1 & !only2) | both, only2 | both))
    }

    /// Closed form of [`Self::exists_pair`]:
    /// `((S − ∀̂(Z2−Z1)) ∪ ∀̂(Z1∩Z2), ∀̂(Z2−Z1) ∪ ∀̂(Z1∩Z2))`.
    pub fn exists_pair_closed(&self, x: &str, p: TwistPair) -> Result<TwistPair, TwistError> {
        let TwistPair(z1, z2) = p;
        let only2 = self.forall_hat(x, z2 & !z1)?;
        let both = self.forall_hat(x, z1 & z2)?;
        Ok(TwistPair((self.algebra().top() & !only2) | both, only2 | both))
    }
}

/// Outcome of [`verify_isomorphism`].
#[derive(Debug, Clone, Default, Serialize)]
pub struct IsomorphismReport {
    pub algebra_size: usize,
    pub triples: usize,
    pub pairs: usize,
    pub checked: usize,
    /// Human-readable descriptions of the first failures, if any.
    pub failures: Vec<String>,
}

impl IsomorphismReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `†` is a bijection from triples onto pairs, that `‡` is its
/// inverse and that `†` commutes with every connective on every argument.
pub fn verify_isomorphism(alg: &PowersetAlgebra) -> IsomorphismReport {
    const MAX_FAILURES: usize = 20;
    let triples = alg.all_triples();
    let pairs = alg.all_pairs();
    let mut report = IsomorphismReport {
        algebra_size: alg.size(),
        triples: triples.len(),
        pairs: pairs.len(),
        ..Default::default()
    };
    let fail = |report: &mut IsomorphismReport, msg: String| {
        if report.failures.len() < MAX_FAILURES {
            report.failures.push(msg);
        }
    };
    let mut images: Vec<TwistPair> = triples.iter().map(|&z| alg.dagger(z)).collect();
    images.sort();
    images.dedup();
    if images.len() != triples.len() {
        fail(&mut report, "dagger is not injective".into());
    }
    if images.len() != pairs.len() {
        fail(&mut report, "dagger is not onto the pairs".into());
    }
    for &z in &triples {
        if alg.ddagger(alg.dagger(z)) != z {
            fail(&mut report, format!("ddagger(dagger({z})) != {z}"));
        }
    }
    for &p in &pairs {
        if alg.dagger(alg.ddagger(p)) != p {
            fail(&mut report, format!("dagger(ddagger({p})) != {p}"));
        }
    }
    for &z in &triples {
        for op in [Connective::Neg, Connective::Cons] {
            report.checked += 1;
            let lhs = alg.dagger(alg.triple_op(op, z, None).unwrap());
            let rhs = alg.pair_op(op, alg.dagger(z), None).unwrap();
            if lhs != rhs {
                fail(&mut report, format!("{op} at {z}: {lhs} vs {rhs}"));
            }
        }
        for &w in &triples {
            for op in [Connective::And, Connective::Or, Connective::Imp] {
                report.checked += 1;
                let lhs = alg.dagger(alg.triple_op(op, z, Some(w)).unwrap());
                let rhs = alg.pair_op(op, alg.dagger(z), Some(alg.dagger(w))).unwrap();
                if lhs != rhs {
                    fail(&mut report, format!("{op} at {z}, {w}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    report
}

/// Checks on every triple over `space` and every variable that the lifted
/// quantifiers commute with `†` and that the pair operators agree with
/// their closed forms.
pub fn verify_quantifiers(space: &AssignmentSpace) -> IsomorphismReport {
    let alg = space.algebra();
    let triples = alg.all_triples();
    let mut report = IsomorphismReport {
        algebra_size: alg.size(),
        triples: triples.len(),
        pairs: alg.all_pairs().len(),
        ..Default::default()
    };
    for &z in &triples {
        let pz = alg.dagger(z);
        for x in space.vars() {
            let checks = [
                ("forall", alg.dagger(space.forall_triple(x, z).unwrap()), space.forall_pair_closed(x, pz).unwrap()),
                ("exists", alg.dagger(space.exists_triple(x, z).unwrap()), space.exists_pair_closed(x, pz).unwrap()),
            ];
            for (q, lhs, rhs) in checks {
                report.checked += 1;
                if lhs != rhs && report.failures.len() < 20 {
                    report.failures.push(format!("{q} {x} at {z}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::triples::triple_op;
    use Connective::*;

    fn two() -> PowersetAlgebra {
        PowersetAlgebra::new(1).unwrap()
    }

    #[test]
    fn pair_examples() {
        let a = two();
        assert_eq!(a.pair_op(Neg, TwistPair(1, 0), None).unwrap(), TwistPair(0, 1));
        assert_eq!(a.pair_op(Cons, TwistPair(1, 1), None).unwrap(), TwistPair(0, 1));
        assert_eq!(a.pair(0, 0), Err(TwistError::NotPair(0, 0)));
    }

    #[test]
    fn triple_examples() {
        let a = PowersetAlgebra::new(3).unwrap();
        let z = a.triple(0b001, 0b010, 0b100).unwrap();
        assert_eq!(a.triple_op(Neg, z, None).unwrap(), TwistTriple(0b010, 0b001, 0b100));
        let one = two().triple(1, 0, 0).unwrap();
        let zero = two().triple(0, 1, 0).unwrap();
        assert_eq!(two().triple_op(Imp, one, Some(zero)).unwrap(), zero);
        assert!(a.triple(0b011, 0b010, 0b100).is_err());
    }

    #[test]
    fn dagger_examples() {
        let a = two();
        assert_eq!(a.dagger(TwistTriple(1, 0, 0)), TwistPair(1, 0));
        assert_eq!(a.ddagger(TwistPair(1, 1)), TwistTriple(0, 0, 1));
    }

    #[test]
    fn bottom_is_representation_independent() {
        for n in 1..=3 {
            let a = PowersetAlgebra::new(n).unwrap();
            for z in a.all_pairs() {
                let zn = a.pair_op(And, z, Some(a.pair_op(Neg, z, None).unwrap())).unwrap();
                let bot = a.pair_op(And, zn, Some(a.pair_op(Cons, z, None).unwrap())).unwrap();
                assert_eq!(bot, a.bottom_pair());
                let via_imp = a.pair_op(Imp, zn, Some(a.bottom_pair())).unwrap();
                assert_eq!(via_imp, a.pair_op(Cons, z, None).unwrap());
            }
            for w in a.all_triples() {
                let wn = a.triple_op(And, w, Some(a.triple_op(Neg, w, None).unwrap())).unwrap();
                let bot = a.triple_op(And, wn, Some(a.triple_op(Cons, w, None).unwrap())).unwrap();
                assert_eq!(bot, a.bottom_triple());
                let via_imp = a.triple_op(Imp, wn, Some(a.bottom_triple())).unwrap();
                assert_eq!(via_imp, a.triple_op(Cons, w, None).unwrap());
            }
        }
    }

    #[test]
    fn isomorphism_small_algebras() {
        for n in 1..=2 {
            let report = verify_isomorphism(&PowersetAlgebra::new(n).unwrap());
            assert!(report.ok(), "{:?}", report.failures);
            assert_eq!(report.triples, 3usize.pow(n as u32));
            assert_eq!(report.pairs, report.triples);
        }
    }

    #[test]
    fn triple_ops_match_pointwise_table() {
        let a = PowersetAlgebra::new(2).unwrap();
        let m = Matrix::ciore();
        for z in a.all_triples() {
            for w in a.all_triples() {
                for op in [And, Or, Imp] {
                    let got = a.triple_op(op, z, Some(w)).unwrap().to_triple(2);
                    let want = triple_op(op, &z.to_triple(2), Some(&w.to_triple(2)), &m).unwrap();
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn boolean_laws() {
        let a = PowersetAlgebra::new(3).unwrap();
        for x in a.elements() {
            assert_eq!(a.compl(a.compl(x)), x);
            assert_eq!(a.join(x, a.compl(x)), a.top());
            for y in a.elements() {
                assert_eq!(a.compl(a.meet(x, y)), a.join(a.compl(x), a.compl(y)));
                assert_eq!(a.imp(x, y), a.join(a.compl(x), y));
            }
        }
    }

    #[test]
    fn lifted_quantifier_trivial_cases() {
        let space = AssignmentSpace::new(2, &["x", "y"]).unwrap();
        let s = space.algebra().top();
        let all_one = TwistTriple(s, 0, 0);
        let all_half = TwistTriple(0, 0, s);
        assert_eq!(space.forall_triple("x", all_one).unwrap(), all_one);
        assert_eq!(space.forall_triple("x", all_half).unwrap(), all_half);
        assert!(matches!(
            space.forall_triple("z", all_one),
            Err(TwistError::UnknownVariable(_))
        ));
    }

    #[test]
    fn hat_operators() {
        let space = AssignmentSpace::new(2, &["x", "y"]).unwrap();
        // assignments: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1); y = {x=0,y=1}
        let y = 1 << space.encode(&[0, 1]);
        assert_eq!(space.exists_hat("x", y).unwrap(), 0b1010);
        assert_eq!(space.forall_hat("x", y).unwrap(), 0);
        assert_eq!(space.forall_hat("x", 0b1010).unwrap(), 0b1010);
    }

    #[test]
    fn lifted_quantifiers_commute_with_dagger() {
        for vars in [&["x"][..], &["x", "y"][..]] {
            let space = AssignmentSpace::new(2, vars).unwrap();
            let alg = space.algebra();
            for z in alg.all_triples() {
                for x in vars {
                    let pz = alg.dagger(z);
                    assert_eq!(
                        alg.dagger(space.forall_triple(x, z).unwrap()),
                        space.forall_pair(x, pz).unwrap()
                    );
                    assert_eq!(
                        space.forall_pair(x, pz).unwrap(),
                        space.forall_pair_closed(x, pz).unwrap()
                    );
                    assert_eq!(
                        space.exists_pair(x, pz).unwrap(),
                        space.exists_pair_closed(x, pz).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn swapped_difference_in_forall_closed_form_is_wrong() {
        // with ∃̂(Z1−Z2) as the second component, an everywhere-1 argument
        // would get a designated negation
        let space = AssignmentSpace::new(2, &["x"]).unwrap();
        let s = space.algebra().top();
        let p = TwistPair(s, 0);
        let swapped = space.exists_hat("x", p.0 & !p.1).unwrap() | space.forall_hat("x", p.0 & p.1).unwrap();
        assert_eq!(swapped, s);
        assert_eq!(space.forall_pair("x", p).unwrap(), TwistPair(s, 0));
    }
}
