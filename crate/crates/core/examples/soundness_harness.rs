//! Runs the soundness harness on a small signature, then on a matrix with a
//! deliberately wrong conjunction to show what a violation looks like.

use qciore::matrix::{Matrix, MatrixId, Truth};
use qciore::search::{soundness_harness, HarnessConfig};
use qciore::syntax::Signature;

fn main() {
    let sig = Signature::new()
        .with_predicate("P", 1)
        .unwrap()
        .with_predicate("R", 2)
        .unwrap();
    let mut cfg = HarnessConfig::new(sig, 1, 1);
    cfg.samples_per_rule = 1000;
    let r = soundness_harness(&cfg).unwrap();
    println!(
        "{} instances on {} structures, {} rule checks, {} violations",
        r.instances,
        r.structures,
        r.rule_checks,
        r.violations.len()
    );

    let mut m = Matrix::ciore();
    m.id = MatrixId::Custom;
    let t = Truth::ALL;
    m.and = Some(t.map(|a| t.map(|b| a.min(b))));
    cfg.matrix = m;
    cfg.depth = 0;
    cfg.check_rules = false;
    let r = soundness_harness(&cfg).unwrap();
    println!("with a min conjunction, violated: {:?}", r.violated());
    if let Some(v) = r.violations.first() {
        println!("first: {} under [{}] in\n{}", v.formula, v.assignment, v.structure);
    }
}
