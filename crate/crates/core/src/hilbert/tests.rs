use super::*;
use crate::syntax::{parse_formula, parse_formula_inferring, Term};

const GEN: &str = include_str!("../../data/proofs/generalization.proof");
const EXISTS_CONTRA: &str = include_str!("../../data/proofs/exists-contradiction.proof");
const FORALL_CONTRA: &str = include_str!("../../data/proofs/forall-contradiction.proof");
const GEN_MUT: &str = include_str!("../../data/mutations/generalization.mut");
const EXISTS_MUT: &str = include_str!("../../data/mutations/exists-contradiction.mut");
const FORALL_MUT: &str = include_str!("../../data/mutations/forall-contradiction.mut");

fn sig() -> Signature {
    Signature::new()
        .with_predicate("P", 1)
        .unwrap()
        .with_predicate("R", 2)
        .unwrap()
        .with_function("f", 1)
        .unwrap()
        .with_constant("c")
        .unwrap()
}

fn f(s: &str) -> Formula {
    parse_formula(s, &sig()).unwrap()
}

fn schema(id: &str) -> AxiomSchema {
    schema_by_id(id).unwrap()
}

#[test]
fn every_axiom_listed_once() {
    let ids: Vec<&str> = all_schemas().iter().map(|s| s.id).collect();
    assert_eq!(ids.len(), 28);
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 28);
    assert_eq!(ids.iter().filter(|s| !schema(s).first_order).count(), 20);
}

#[test]
fn existential_introduction_binds_term() {
    let env = match_schema(&f("P(c) -> exists x. P(x)"), &schema("Ax11")).unwrap();
    assert_eq!(env.formulas["φ"], f("P(x)"));
    assert_eq!(env.term, Some(Term::constant("c")));
}

#[test]
fn universal_elimination_with_function_term() {
    let env = match_schema(&f("(forall x. P(x)) -> P(f(x))"), &schema("Ax12")).unwrap();
    assert_eq!(env.term, Some(Term::App("f".into(), vec![Term::var("x")])));
}

#[test]
fn propositional_mismatch() {
    let s = Signature::new();
    let g = parse_formula("p -> (q -> r)", &s).unwrap();
    assert_eq!(
        match_schema(&g, &schema("Ax1")),
        Err(MatchError::NoMatch("Ax1".into()))
    );
    let g = parse_formula("p -> (q -> p)", &s).unwrap();
    assert!(match_schema(&g, &schema("Ax1")).is_ok());
}

#[test]
fn capture_is_a_side_condition_failure() {
    let g = f("(forall x. exists y. R(x, y)) -> exists y. R(y, y)");
    assert!(matches!(
        match_schema(&g, &schema("Ax12")),
        Err(MatchError::SideCondition { .. })
    ));
    let g = f("(exists y. R(y, y)) -> exists x. exists y. R(x, y)");
    assert!(matches!(
        match_schema(&g, &schema("Ax11")),
        Err(MatchError::SideCondition { .. })
    ));
}

#[test]
fn inconsistent_instantiation_is_no_match() {
    assert!(matches!(
        match_schema(&f("(forall x. R(x, x)) -> R(c, f(c))"), &schema("Ax12")),
        Err(MatchError::NoMatch(_))
    ));
    assert!(match_schema(&f("(forall x. R(x, c)) -> R(c, c)"), &schema("Ax12")).is_ok());
}

#[test]
fn vacuous_quantifier_takes_the_variable_itself() {
    let env = match_schema(&f("(forall x. P(c)) -> P(c)"), &schema("Ax12")).unwrap();
    assert_eq!(env.term, Some(Term::var("x")));
}

#[test]
fn schematic_letters_only_instantiate_at_the_variable() {
    let g = parse_formula("(forall x. (a & P(x))) -> (a & P(c))", &sig()).unwrap();
    assert!(matches!(
        match_schema(&g, &schema("Ax12")),
        Err(MatchError::SideCondition { .. })
    ));
    let g = parse_formula("(forall x. (a & P(x))) -> (a & P(x))", &sig()).unwrap();
    assert!(match_schema(&g, &schema("Ax12")).is_ok());
}

#[test]
fn consistency_quantifier_axioms() {
    assert!(match_schema(&f("@(exists x. P(x)) -> exists x. @P(x)"), &schema("Ax13")).is_ok());
    assert!(match_schema(&f("@(forall x. P(x)) -> exists x. @P(x)"), &schema("Ax14")).is_ok());
    assert!(match_schema(&f("(exists x. @P(x)) -> @(exists x. P(x))"), &schema("Ax15")).is_ok());
    assert!(match_schema(&f("(exists x. @P(x)) -> @(forall x. P(x))"), &schema("Ax16")).is_ok());
    assert!(match_schema(&f("(exists y. @P(y)) -> @(forall x. P(x))"), &schema("Ax16")).is_err());
}

#[test]
fn equality_axioms() {
    let s = sig().with_equality();
    let g = |t: &str| parse_formula(t, &s).unwrap();
    assert!(match_schema(&g("forall x. x = x"), &schema("Eq1")).is_ok());
    assert!(match_schema(&g("forall x. y = y"), &schema("Eq1")).is_err());
    let eq2 = schema("Eq2");
    assert!(match_schema(&g("forall x. forall y. x = y -> (R(x, x) -> R(x, y))"), &eq2).is_ok());
    assert!(match_schema(&g("forall x. forall y. x = y -> (R(x, x) -> R(x, x))"), &eq2).is_ok());
    assert!(match_schema(&g("forall x. forall y. x = y -> (R(x, x) -> R(y, c))"), &eq2).is_err());
    assert!(matches!(
        match_schema(
            &g("forall x. forall y. x = y -> ((forall y. R(x, y)) -> forall y. R(y, y))"),
            &eq2
        ),
        Err(MatchError::SideCondition { .. })
    ));
}

#[test]
fn lemma_store_contents() {
    let store = LemmaStore::standard();
    for name in ["transitivity", "identity", "contraposition", "contradiction-strong", "strong-neg-exists"] {
        assert!(store.contains(name), "{name}");
    }
    assert!(!store.contains("classical-imp"));
    assert!(matches!(
        store.get("transitivity").unwrap().origin,
        LemmaOrigin::Proof(_)
    ));
    assert_eq!(store.get("contradiction-strong").unwrap().directions().len(), 3);
}

#[test]
fn non_tautologies_are_refused() {
    let mut store = LemmaStore::new();
    let g = parse_formula("(!a | (b & @b)) <-> ((a -> b) & @(a -> b))", &Signature::new()).unwrap();
    let err = store.add_tautology("bad", g).unwrap_err();
    assert_eq!(
        err,
        LemmaError::NotTautology {
            formula: err_formula(&err),
            counterexample: "a=1, b=1/2".into()
        }
    );
}

fn err_formula(e: &LemmaError) -> String {
    match e {
        LemmaError::NotTautology { formula, .. } => formula.clone(),
        _ => String::new(),
    }
}

fn load(text: &str) -> ProofFile {
    parse_proof(text).unwrap()
}

#[test]
fn transcribed_proofs_are_accepted() {
    let store = LemmaStore::standard();
    for text in [GEN, EXISTS_CONTRA, FORALL_CONTRA] {
        let file = load(text);
        let v = check_proof(&file.proof, &file.signature, &store);
        assert!(v.accepted(), "{v}");
    }
    assert_eq!(load(GEN).proof.steps.len(), 6);
    assert_eq!(load(EXISTS_CONTRA).proof.steps.len(), 11);
    assert_eq!(load(FORALL_CONTRA).proof.steps.len(), 11);
}

#[test]
fn mutants_are_rejected_at_the_mutated_step() {
    let store = LemmaStore::standard();
    for (text, mutations) in [(GEN, GEN_MUT), (EXISTS_CONTRA, EXISTS_MUT), (FORALL_CONTRA, FORALL_MUT)] {
        let file = load(text);
        let muts = parse_mutations(mutations, &file.signature).unwrap();
        assert!(muts.len() >= 6);
        for (k, step) in muts {
            let p = file.proof.with_step(k, step);
            let v = check_proof(&p, &file.signature, &store);
            assert_eq!(
                v.first_failure().map(|s| s.step),
                Some(k),
                "{}: mutant of step {k}: {v}",
                file.proof.name
            );
        }
    }
}

#[test]
fn generalization_side_condition_mutant_reports_side_condition() {
    let store = LemmaStore::standard();
    let file = load(GEN);
    let bad = parse_mutations(
        "4. ((forall x. a) -> forall x. a) -> forall y. a ; forall-in 3",
        &file.signature,
    )
    .unwrap();
    let (k, step) = bad[0].clone();
    let v = check_proof(&file.proof.with_step(k, step), &file.signature, &store);
    let fail = v.first_failure().unwrap();
    assert_eq!(fail.step, 4);
    assert!(fail.error.as_ref().unwrap().starts_with("side condition"));
}

#[test]
fn forall_in_with_free_variable_in_antecedent() {
    let mut s = sig();
    let g = |t: &str, s: &mut Signature| parse_formula_inferring(t, s).unwrap();
    let p = Proof::new("bad")
        .hyp(g("P(x) -> P(x)", &mut s))
        .step(g("P(x) -> P(x)", &mut s), Justification::Hyp(1))
        .step(g("P(x) -> forall x. P(x)", &mut s), Justification::ForallIn(1));
    let v = check_proof(&p, &s, &LemmaStore::new());
    assert_eq!(v.first_failure().unwrap().step, 2);
    assert!(v.steps[0].error.is_none());
}

#[test]
fn exists_in_rule() {
    let mut s = sig();
    let g = |t: &str, s: &mut Signature| parse_formula_inferring(t, s).unwrap();
    let p = Proof::new("ok")
        .step(g("(forall y. P(y)) -> P(x)", &mut s), Justification::Axiom(Some("Ax12".into())))
        .step(g("(exists x. forall y. P(y)) -> P(x)", &mut s), Justification::ExistsIn(1));
    // x is free in the consequent
    let v = check_proof(&p, &s, &LemmaStore::new());
    assert_eq!(v.first_failure().unwrap().step, 2);
    let p = Proof::new("ok")
        .step(g("(forall y. P(y)) -> P(c)", &mut s), Justification::Axiom(None))
        .step(g("(exists x. forall y. P(y)) -> P(c)", &mut s), Justification::ExistsIn(1));
    assert!(check_proof(&p, &s, &LemmaStore::new()).accepted());
}

#[test]
fn diagnostics_for_bad_references() {
    let s = sig();
    let p = Proof::new("refs")
        .step(f("P(c)"), Justification::Mp(1, 2))
        .step(f("P(c)"), Justification::Hyp(1))
        .step(f("P(c)"), Justification::Lemma("nope".into(), vec![]))
        .step(f("P(c)"), Justification::Axiom(Some("Ax99".into())));
    let v = check_proof(&p, &s, &LemmaStore::standard());
    let errs: Vec<_> = v.steps.iter().map(|s| s.error.clone().unwrap()).collect();
    assert!(errs[0].contains("step 1 does not exist"));
    assert!(errs[1].contains("no hypothesis 1"));
    assert!(errs[2].contains("unknown lemma"));
    assert!(errs[3].contains("unknown axiom"));
}

#[test]
fn calculus_restrictions() {
    let s = sig();
    let p = Proof::new("q").step(f("P(c) -> exists x. P(x)"), Justification::Axiom(None));
    assert!(check_proof_in(&p, &s, &LemmaStore::new(), Calculus::QCiore).accepted());
    assert!(!check_proof_in(&p, &s, &LemmaStore::new(), Calculus::Ciore).accepted());
    let se = s.clone().with_equality();
    let e = Proof::new("e").step(parse_formula("forall x. x = x", &se).unwrap(), Justification::Axiom(None));
    assert!(check_proof(&e, &se, &LemmaStore::new()).accepted());
    assert!(!check_proof_in(&e, &se, &LemmaStore::new(), Calculus::QCiore).accepted());
}

#[test]
fn lemma_citation_accepts_both_directions() {
    let store = LemmaStore::standard();
    let s = Signature::new();
    let g = |t: &str| parse_formula(t, &s).unwrap();
    let just = || Justification::Lemma("contradiction-strong".into(), vec![]);
    for t in ["(p & ~p) -> !@p", "!@p -> (p & ~p)", "(p & ~p) <-> !@p"] {
        let p = Proof::new("d").step(g(t), just());
        assert!(check_proof(&p, &s, &store).accepted(), "{t}");
    }
    let p = Proof::new("d").step(g("!@p -> (q & ~p)"), just());
    assert!(!check_proof(&p, &s, &store).accepted());
}

#[test]
fn user_lemmas_extend_the_store() {
    let mut store = LemmaStore::standard();
    let file = load(EXISTS_CONTRA);
    store.add_proof(file.proof, Calculus::QCiore).unwrap();
    let s = sig();
    let p = Proof::new("use").step(
        f("((exists x. P(x)) & ~(exists x. P(x))) -> forall x. (P(x) & ~P(x))"),
        Justification::Lemma("exists-contradiction".into(), vec![]),
    );
    assert!(check_proof(&p, &s, &store).accepted());
    let gen = load(GEN);
    assert!(matches!(
        store.add_proof(gen.proof, Calculus::QCiore),
        Err(LemmaError::HasHypotheses(_))
    ));
}

#[test]
fn wdmt_condition() {
    let mut s = sig();
    let g = |t: &str, s: &mut Signature| parse_formula_inferring(t, s).unwrap();
    let px = g("P(x)", &mut s);
    let p = Proof::new("w")
        .hyp(px.clone())
        .step(g("(forall y. P(y)) -> P(x)", &mut s), Justification::Axiom(None))
        .step(g("(forall y. P(y)) -> forall x. P(x)", &mut s), Justification::ForallIn(1));
    assert_eq!(wdmt_side_condition(&p, &px), Ok(false));
    let pc = g("P(c)", &mut s);
    let p2 = p.clone().hyp(pc.clone());
    assert_eq!(wdmt_side_condition(&p2, &pc), Ok(true));
    let plain = Proof::new("n").hyp(px.clone()).step(px.clone(), Justification::Hyp(1));
    assert_eq!(wdmt_side_condition(&plain, &px), Ok(true));
    assert!(wdmt_side_condition(&plain, &pc).is_err());
}

#[test]
fn proof_file_round_trip() {
    for text in [GEN, EXISTS_CONTRA] {
        let file = load(text);
        let again = load(&file.to_string());
        assert_eq!(again, file);
    }
    assert!(matches!(parse_proof("1. a ; hyp 1"), Err(ProofFormatError::MissingName)));
    assert!(matches!(
        parse_proof("name: x\n2. a ; hyp 1"),
        Err(ProofFormatError::Syntax { line: 2, .. })
    ));
    assert!(matches!(
        parse_proof("name: x\n1. a ; frobnicate"),
        Err(ProofFormatError::Syntax { line: 2, .. })
    ));
}

#[test]
fn deleting_an_unused_step_keeps_acceptance() {
    let store = LemmaStore::standard();
    let file = load(GEN);
    let mut p = file.proof.clone();
    p.steps.push(Step {
        formula: parse_formula("b -> (a -> b)", &file.signature).unwrap(),
        justification: Justification::Axiom(Some("Ax1".into())),
    });
    assert!(check_proof(&p, &file.signature, &store).accepted());
    p.steps.pop();
    assert!(check_proof(&p, &file.signature, &store).accepted());
}
