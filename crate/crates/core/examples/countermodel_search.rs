//! Finds least countermodels, shows bounded consequence checks and prints
//! JSON progress lines for a longer search.

use qciore::search::{
    check_consequence_bounded, find_countermodel, find_countermodel_with_progress, Consequence,
    SearchOutcome, SearchSpec,
};
use qciore::structures::write_structure;
use qciore::syntax::{parse_formula, parse_formula_inferring, Signature};

fn main() {
    let mut sig = Signature::new();
    let targets = [
        "(exists x. ~P(x)) -> ~forall x. P(x)",
        "(forall x. P(x)) -> ~exists x. ~P(x)",
        "(forall x. P(x)) -> P(y)",
    ];
    let parsed: Vec<_> = targets
        .iter()
        .map(|t| parse_formula_inferring(t, &mut sig).unwrap())
        .collect();
    for f in parsed {
        match find_countermodel(&SearchSpec::new(sig.clone(), f.clone(), 3)).unwrap() {
            SearchOutcome::Found(c) => {
                println!("{f}\n  refuted at size {}, index {}:", c.size, c.index);
                print!("{}", write_structure(&c.structure));
            }
            other => println!("{f}\n  {other:?}"),
        }
    }

    let sig = Signature::new()
        .with_predicate("P", 1)
        .unwrap()
        .with_predicate("Q", 1)
        .unwrap()
        .with_constant("c")
        .unwrap();
    let f = |s: &str| parse_formula(s, &sig).unwrap();
    for gamma in [vec![f("P(c)"), f("~P(c)")], vec![f("P(c)"), f("~P(c)"), f("@P(c)")]] {
        let names: Vec<String> = gamma.iter().map(|g| g.to_string()).collect();
        match check_consequence_bounded(&sig, &gamma, &f("Q(c)"), 2).unwrap() {
            Consequence::Refuted(c) => println!("{{{}}} does not entail Q(c): size {}", names.join(", "), c.size),
            Consequence::NoCountermodelUpTo(n) => println!("{{{}}}: no countermodel up to size {n}", names.join(", ")),
        }
    }

    let sig = Signature::new().with_predicate("R", 2).unwrap();
    let sound = parse_formula("(forall x. forall y. R(x, y)) -> forall y. forall x. R(x, y)", &sig).unwrap();
    let spec = SearchSpec::new(sig, sound, 3);
    let out = find_countermodel_with_progress(&spec, |p| println!("{}", serde_json::to_string(&p).unwrap())).unwrap();
    println!("{out:?}");
}
