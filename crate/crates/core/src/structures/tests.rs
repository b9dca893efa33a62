use super::*;
use crate::matrix::{eval_prop, Valuation};
use crate::syntax::{enumerate_formulas, enumerate_terms, parse_formula, parse_term};
use Truth::{Half as H, One as I, Zero as O};

const REMARK: &str = "
# the three-element countermodel
domain = {a, b, c}
pred P/1 { plus={(a)} minus={} dot={(b),(c)} }
";

fn remark() -> Structure {
    parse_structure(REMARK).unwrap()
}

fn fml(st: &Structure, s: &str) -> Formula {
    parse_formula(s, st.signature()).unwrap()
}

fn single(v: Truth) -> Structure {
    let sig = Signature::new().with_predicate("P", 1).unwrap();
    let mut st = Structure::new(sig, vec!["a".into()]).unwrap();
    st.set_pred_value("P", &[0], v).unwrap();
    st
}

#[test]
fn term_examples() {
    let sig = Signature::new()
        .with_function("f", 1)
        .unwrap()
        .with_constant("c")
        .unwrap();
    let mut st = Structure::new(sig, vec!["a".into(), "b".into()]).unwrap();
    st.set_fun_value("f", &[0], 1).unwrap();
    st.set_const("c", 0).unwrap();
    let s = Assignment::from_pairs([("x", 1)]);
    let t = |text: &str| parse_term(text, st.signature()).unwrap();
    assert_eq!(st.eval_term(&t("x"), &s).unwrap(), 1);
    assert_eq!(st.eval_term(&t("c"), &s).unwrap(), 0);
    assert_eq!(st.eval_term(&t("f(c)"), &s).unwrap(), 1);
}

#[test]
fn eval_examples() {
    let st = remark();
    for a in 0..3 {
        let s = Assignment::from_pairs([("x", a)]);
        assert_eq!(st.eval(&fml(&st, "forall x. P(x)"), &s).unwrap(), I);
        assert_eq!(st.eval(&fml(&st, "exists x. ~P(x)"), &s).unwrap(), I);
    }
    let one = single(H);
    let s = Assignment::new();
    assert_eq!(one.eval(&fml(&one, "exists x. P(x)"), &s).unwrap(), H);
    assert_eq!(one.eval(&fml(&one, "@exists x. P(x)"), &s).unwrap(), O);
}

#[test]
fn eval_rejects_foreign_symbols_and_letters() {
    let st = remark();
    let sig = Signature::new().with_predicate("Q", 1).unwrap();
    let q = parse_formula("Q(x)", &sig).unwrap();
    assert!(matches!(st.eval(&q, &Assignment::new()), Err(StructureError::Signature(_))));
    assert!(matches!(
        st.eval(&Formula::prop("p"), &Assignment::new()),
        Err(StructureError::PropositionalLetter(_))
    ));
    assert!(matches!(
        st.eval_with(&fml(&st, "P(x)"), &Assignment::new(), &Matrix::p1()),
        Err(StructureError::IncompleteMatrix(_))
    ));
}

#[test]
fn quantifier_functions() {
    let set = |vs: &[Truth]| ValueSet::from_values(vs);
    assert_eq!(set(&[I, H]).forall(), I);
    assert_eq!(set(&[H]).forall(), H);
    assert_eq!(set(&[I, O]).forall(), O);
    assert_eq!(set(&[H, O]).forall(), O);
    assert_eq!(set(&[H]).exists(), H);
    assert_eq!(set(&[O]).exists(), O);
    // no instance is 1, yet the existential is 1
    assert_eq!(set(&[O, H]).exists(), I);
    assert_eq!(set(&[O, I]).exists(), I);
}

#[test]
fn holds_examples() {
    let st = single(H);
    let s = Assignment::new();
    assert!(st.holds(&fml(&st, "P(x)"), &s).unwrap());
    assert!(!single(O).holds(&fml(&st, "P(x)"), &s).unwrap());
    for v in Truth::ALL {
        let st = single(v);
        assert_eq!(st.holds(&fml(&st, "P(x) & @P(x)"), &s).unwrap(), v == I);
    }
}

#[test]
fn validity_examples() {
    let st = remark();
    let f = fml(&st, "(exists x. ~P(x)) -> ~forall x. P(x)");
    assert_eq!(st.is_valid_in(&f).unwrap(), Some(Assignment::new()));
    // the quantifier scopes over the whole implication here, which is valid
    let wide = fml(&st, "exists x. ~P(x) -> ~forall x. P(x)");
    assert_eq!(st.is_valid_in(&wide).unwrap(), None);
    let eq_sig = Signature::new().with_equality();
    let eq = Structure::with_size(eq_sig, 3).unwrap();
    assert_eq!(eq.is_valid_in(&fml(&eq, "x = x")).unwrap(), None);
    let half = single(H);
    assert_eq!(half.is_valid_in(&fml(&half, "exists x. P(x)")).unwrap(), None);
}

#[test]
fn least_refuting_assignment() {
    let sig = Signature::new().with_predicate("P", 1).unwrap();
    let mut st = Structure::with_size(sig, 3).unwrap();
    st.set_pred_values("P", vec![I, O, O]).unwrap();
    let w = st.is_valid_in(&fml(&st, "P(x)")).unwrap().unwrap();
    assert_eq!(w.get("x"), 1);
    assert_eq!(w.display(&st), "x=e2");
}

#[test]
fn formula_triple_examples() {
    let st = remark();
    let tr = |s: &str| st.formula_triple(&fml(&st, s), &["x"]).unwrap();
    let (a, b, c) = (vec![0], vec![1], vec![2]);
    let expect = |p: Vec<Vec<usize>>, m: Vec<Vec<usize>>, d: Vec<Vec<usize>>| {
        Triple::from_classes(p, m, d).unwrap()
    };
    assert_eq!(tr("P(x)"), expect(vec![a.clone()], vec![], vec![b.clone(), c.clone()]));
    assert_eq!(tr("~P(x)"), expect(vec![], vec![a.clone()], vec![b.clone(), c.clone()]));
    assert_eq!(tr("@P(x)"), expect(vec![a], vec![b, c], vec![]));
    assert!(matches!(
        st.formula_triple(&fml(&st, "P(y)"), &["x"]),
        Err(StructureError::FrameTooSmall(_))
    ));
}

#[test]
fn trichotomy_examples() {
    let st = remark();
    assert_eq!(st.sentence_trichotomy(&fml(&st, "forall x. P(x)")).unwrap(), Trichotomy::Pos);
    let h = single(H);
    assert_eq!(h.sentence_trichotomy(&fml(&h, "exists x. P(x)")).unwrap(), Trichotomy::Both);
    let z = single(O);
    assert_eq!(z.sentence_trichotomy(&fml(&z, "exists x. P(x)")).unwrap(), Trichotomy::Neg);
    assert!(matches!(
        st.sentence_trichotomy(&fml(&st, "P(x)")),
        Err(StructureError::NotSentence(_))
    ));
}

#[test]
fn equality_structure_examples() {
    let sig = Signature::new().with_equality();
    let mut st = Structure::with_size(sig, 2).unwrap();
    assert!(st.is_equality_structure().unwrap());
    st.set_pred_values(EQ, vec![H, O, O, H]).unwrap();
    assert!(st.is_equality_structure().unwrap());
    st.set_pred_value(EQ, &[0, 1], I).unwrap();
    assert!(!st.is_equality_structure().unwrap());
    assert_eq!(remark().is_equality_structure(), Err(StructureError::NoEquality));
}

#[test]
fn contradictory_identity_is_allowed() {
    let sig = Signature::new().with_equality();
    let mut st = Structure::with_size(sig, 1).unwrap();
    st.set_pred_values(EQ, vec![H]).unwrap();
    let f = fml(&st, "~(x = x)");
    assert_eq!(st.is_valid_in(&f).unwrap(), None);
}

#[test]
fn expansion_by_names() {
    let st = remark();
    let ex = st.expand_with_names(&[0, 2]).unwrap();
    assert_eq!(ex.const_value("c_a").unwrap(), 0);
    assert_eq!(ex.const_value("c_c").unwrap(), 2);
    assert_eq!(ex.reduct(st.signature()).unwrap(), st);
    assert_eq!(st.expand_with_names(&[]).unwrap(), st);
    assert!(matches!(
        ex.expand_with_names(&[0]),
        Err(StructureError::NameCollision(_))
    ));
    let t = parse_term("c_c", ex.signature()).unwrap();
    assert_eq!(ex.eval_term(&t, &Assignment::new()).unwrap(), 2);
}

#[test]
fn file_round_trip() {
    let text = "
domain = {a, b}
pred P/1 { plus={(a)} minus={(b)} dot={} }
pred R/2 { plus={(a,a)} minus={(a,b),(b,a)} dot={(b,b)} }
fun f/1 {(a)->b, (b)->a}
const k = b
equality normal
pred =/2 { plus={(a,a)} minus={(a,b),(b,a)} dot={(b,b)} }
";
    let st = parse_structure(text).unwrap();
    assert_eq!(st.pred_value("R", &[1, 1]).unwrap(), H);
    assert_eq!(st.fun_value("f", &[0]).unwrap(), 1);
    assert_eq!(st.const_value("k").unwrap(), 1);
    assert!(st.is_equality_structure().unwrap());
    let again = parse_structure(&write_structure(&st)).unwrap();
    assert_eq!(again, st);
    let r = remark();
    assert_eq!(parse_structure(&write_structure(&r)).unwrap(), r);
}

#[test]
fn file_errors() {
    let bad = [
        "pred P/1 { plus={(a)} }",
        "domain = {}",
        "domain = {a, a}",
        "domain = {a}\npred P/1 { plus={(a)} minus={(a)} }",
        "domain = {a, b}\npred P/1 { plus={(a)} }",
        "domain = {a}\npred P/1 { plus={(z)} }",
        "domain = {a}\nfun f/1 {}",
        "domain = {a}\nconst c = b",
        "domain = {a}\nwidget",
        "domain = {a, b}\nequality normal\npred =/2 { plus={(a,b)} minus={(a,a),(b,a),(b,b)} }",
        "domain = {a} $",
    ];
    for text in bad {
        assert!(parse_structure(text).is_err(), "accepted: {text}");
    }
    match parse_structure("domain = {a}\n\npred P/1 { plus={(a)} bogus={} }") {
        Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
}

fn small_sig() -> Signature {
    Signature::new()
        .with_predicate("P", 1)
        .unwrap()
        .with_predicate("R", 2)
        .unwrap()
}

fn vars(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn all_assignments(st: &Structure, vs: &[String]) -> Vec<Assignment> {
    st.frame_assignments(vs).collect()
}

#[test]
fn connective_and_quantifier_clauses() {
    let sig = small_sig();
    let pool: Vec<Formula> = enumerate_formulas(&sig, &vars(&["x", "y"]), 1).collect();
    let m = Matrix::ciore();
    let compounds: Vec<(usize, usize, [Formula; 3])> = (0..pool.len())
        .flat_map(|i| (0..12).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (a, b) = (pool[i].clone(), pool[j].clone());
            (i, j, [Formula::and(a.clone(), b.clone()), Formula::or(a.clone(), b.clone()), Formula::imp(a, b)])
        })
        .collect();
    let quantified: Vec<(Formula, Formula, Formula)> = pool
        .iter()
        .map(|a| (Formula::neg(a.clone()), Formula::forall("x", a.clone()), Formula::exists("x", a.clone())))
        .collect();
    for n in 1..=2 {
        for st in enumerate_structures(&sig, n, EqualityMode::Classical).unwrap().iter().step_by(5) {
            for s in all_assignments(st, &vars(&["x", "y"])) {
                let h = |f: &Formula| st.eval_unchecked(f, &s, &m).is_designated();
                let base: Vec<bool> = pool.iter().map(h).collect();
                for (i, j, [and, or, imp]) in &compounds {
                    let (a, b) = (base[*i], base[*j]);
                    assert_eq!(h(and), a && b);
                    assert_eq!(h(or), a || b);
                    assert_eq!(h(imp), !a || b);
                }
                for (a, (neg, all, some)) in pool.iter().zip(&quantified) {
                    // negation is not classical, but one of a, ~a always holds
                    assert!(h(a) || h(neg));
                    let inst: Vec<bool> = (0..n)
                        .map(|d| st.eval_unchecked(a, &s.with("x", d), &m).is_designated())
                        .collect();
                    assert_eq!(h(all), inst.iter().all(|&b| b), "forall x. {a}");
                    assert_eq!(h(some), inst.iter().any(|&b| b), "exists x. {a}");
                }
            }
        }
    }
}

#[test]
fn value_classes_are_characterised() {
    let sig = small_sig();
    let pool: Vec<Formula> = enumerate_formulas(&sig, &vars(&["x"]), 2).collect();
    let m = Matrix::ciore();
    for st in enumerate_structures(&sig, 2, EqualityMode::Classical).unwrap().iter().step_by(7) {
        for s in all_assignments(st, &vars(&["x"])) {
            for f in &pool {
                let v = st.eval_unchecked(f, &s, &m);
                let h = |g: Formula| st.eval_unchecked(&g, &s, &m).is_designated();
                let pos = h(Formula::and(f.clone(), Formula::cons(f.clone())));
                let neg = h(Formula::and(Formula::neg(f.clone()), Formula::cons(f.clone())));
                let both = h(Formula::and(f.clone(), Formula::neg(f.clone())));
                assert_eq!((pos, neg, both), (v == I, v == O, v == H), "{f}");
                let all_three = h(f.clone()) && h(Formula::neg(f.clone())) && h(Formula::cons(f.clone()));
                assert!(!all_three);
            }
        }
    }
}

#[test]
fn triple_characterisation_agrees_with_evaluation() {
    let sig = small_sig();
    let pool: Vec<Formula> = enumerate_formulas(&sig, &vars(&["x", "y"]), 2).collect();
    let m = Matrix::ciore();
    for st in enumerate_structures(&sig, 2, EqualityMode::Classical).unwrap().iter().step_by(61) {
        for f in pool.iter().step_by(7) {
            let t = st.formula_triple(f, &["x", "y"]).unwrap();
            for (tuple, v) in t.as_map() {
                let s = Assignment::from_pairs([("x", tuple[0]), ("y", tuple[1])]);
                assert_eq!(st.eval_unchecked(f, &s, &m), *v, "{f} at {tuple:?}");
            }
        }
    }
}

#[test]
fn printed_class_formulas_disagree_with_evaluation() {
    // 1/2 | 0 is 1, the printed formulas put it in the dot class
    let sig = Signature::new().with_predicate("P", 1).unwrap().with_predicate("Q", 1).unwrap();
    let mut two = Structure::new(sig, vec!["a".into()]).unwrap();
    two.set_pred_value("P", &[0], H).unwrap();
    two.set_pred_value("Q", &[0], O).unwrap();
    let f = fml(&two, "P(x) | Q(x)");
    let good = two.formula_triple(&f, &["x"]).unwrap();
    let printed = two.formula_triple_with(&f, &["x"], SetForm::Printed).unwrap();
    assert_eq!(good.value(&vec![0]), Some(I));
    assert_eq!(printed.value(&vec![0]), Some(H));
    assert_eq!(two.eval(&f, &Assignment::new()).unwrap(), I);
}

#[test]
fn substitution_lemma() {
    let sig = small_sig().with_function("f", 1).unwrap().with_constant("c").unwrap();
    let vs = vars(&["x", "y"]);
    let pool: Vec<Formula> = enumerate_formulas(&sig, &vs, 1).collect();
    let terms = enumerate_terms(&sig, &vs, 1);
    let m = Matrix::ciore();
    let space = StructureSpace::new(&sig, 2, EqualityMode::Classical).unwrap();
    for idx in (0..space.count().unwrap()).step_by(97) {
        let st = space.decode(idx);
        for s in all_assignments(&st, &vs) {
            for f in &pool {
                for t in &terms {
                    if !f.is_free_for(t, "x") {
                        continue;
                    }
                    let lhs = st.eval_unchecked(&f.substitute("x", t).unwrap(), &s, &m);
                    let a = st.eval_term(t, &s).unwrap();
                    let rhs = st.eval_unchecked(f, &s.with("x", a), &m);
                    assert_eq!(lhs, rhs, "{f} [{t}/x]");
                }
            }
        }
    }
}

#[test]
fn value_depends_only_on_free_variables() {
    let sig = small_sig();
    let pool: Vec<Formula> = enumerate_formulas(&sig, &vars(&["x", "y"]), 2).collect();
    let m = Matrix::ciore();
    for st in enumerate_structures(&sig, 2, EqualityMode::Classical).unwrap().iter().step_by(41) {
        for f in pool.iter().step_by(7) {
            let free: Vec<String> = f.free_vars().into_iter().collect();
            for s in all_assignments(st, &free) {
                let mut moved = Assignment::with_default(1);
                for (x, a) in s.explicit() {
                    moved.set(x, a);
                }
                assert_eq!(st.eval_unchecked(f, &s, &m), st.eval_unchecked(f, &moved, &m));
            }
        }
    }
}

#[test]
fn consistency_commutes_with_quantifiers() {
    let sig = small_sig();
    let pool: Vec<Formula> = enumerate_formulas(&sig, &vars(&["x", "y"]), 1).collect();
    for st in enumerate_structures(&sig, 2, EqualityMode::Classical).unwrap().iter().step_by(11) {
        for f in &pool {
            let ex_cons = Formula::exists("x", Formula::cons(f.clone()));
            for g in [
                Formula::cons(Formula::forall("x", f.clone())),
                Formula::cons(Formula::exists("x", f.clone())),
            ] {
                let law = Formula::iff(ex_cons.clone(), g);
                assert_eq!(st.is_valid_in(&law).unwrap(), None, "{law}");
            }
        }
    }
}

#[test]
fn implication_validity_is_class_inclusion() {
    let sig = small_sig();
    let pool: Vec<Formula> = enumerate_formulas(&sig, &vars(&["x"]), 1).collect();
    for st in enumerate_structures(&sig, 2, EqualityMode::Classical).unwrap().iter().step_by(17) {
        for a in &pool {
            let ta = st.formula_triple(a, &["x"]).unwrap();
            for b in &pool {
                let tb = st.formula_triple(b, &["x"]).unwrap();
                let valid = st.is_valid_in(&Formula::imp(a.clone(), b.clone())).unwrap().is_none();
                assert_eq!(valid, tb.minus().is_subset(&ta.minus()), "{a} -> {b}");
                let des = |t: &Triple<Vec<usize>>| {
                    t.plus().union(&t.dot()).cloned().collect::<BTreeSet<_>>()
                };
                assert_eq!(valid, des(&ta).is_subset(&des(&tb)));
            }
        }
    }
}

#[test]
fn propositional_instances_follow_the_matrix() {
    let st = remark();
    let m = Matrix::ciore();
    let schema = parse_formula("(p & ~q) -> @(p | q)", &Signature::new()).unwrap();
    let atoms = [fml(&st, "P(x)"), fml(&st, "forall x. P(x)"), fml(&st, "~P(x)")];
    for p in &atoms {
        for q in &atoms {
            let map = [("p".to_string(), p.clone()), ("q".to_string(), q.clone())].into();
            let inst = schema.instantiate_props(&map);
            for a in 0..3 {
                let s = Assignment::from_pairs([("x", a)]);
                let v: Valuation = [
                    ("p".to_string(), st.eval(p, &s).unwrap()),
                    ("q".to_string(), st.eval(q, &s).unwrap()),
                ]
                .into();
                assert_eq!(st.eval(&inst, &s).unwrap(), eval_prop(&schema, &v, &m).unwrap());
            }
        }
    }
}

#[test]
fn reduct_rejects_larger_signature() {
    let st = remark();
    let bigger = small_sig();
    assert!(matches!(st.reduct(&bigger), Err(StructureError::NotReduct(_))));
}
