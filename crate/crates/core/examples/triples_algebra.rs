//! Connectives on semantic triples over a small carrier, computed pointwise
//! from the table and through class algebra.

use qciore::matrix::{Connective, Matrix};
use qciore::triples::{set_op, triple_op, SetForm, Triple};

fn main() {
    let r = Triple::from_classes(["a"], ["b"], ["c"]).unwrap();
    let u = Triple::from_classes(["b"], ["c"], ["a"]).unwrap();
    println!("R = {r}");
    println!("U = {u}");
    let m = Matrix::ciore();
    for op in [Connective::Neg, Connective::Cons] {
        println!("{op}R = {}", triple_op(op, &r, None, &m).unwrap());
    }
    for op in [Connective::And, Connective::Or, Connective::Imp] {
        let table = triple_op(op, &r, Some(&u), &m).unwrap();
        let classes = set_op(SetForm::Characterized, op, &r, Some(&u)).unwrap();
        assert_eq!(table, classes);
        println!("R {op} U = {table}");
        match set_op(SetForm::Printed, op, &r, Some(&u)) {
            Ok(t) if t != table => println!("  printed class formulas give {t}"),
            Ok(_) => {}
            Err(e) => println!("  printed class formulas: {e}"),
        }
    }
}
