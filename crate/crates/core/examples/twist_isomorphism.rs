//! Checks that the twist map is an isomorphism between the triple and pair
//! algebras over small powersets, and that the lifted quantifiers commute
//! with it.

use qciore::twist::{verify_isomorphism, verify_quantifiers, AssignmentSpace, PowersetAlgebra};

fn main() {
    for n in 1..=3 {
        let alg = PowersetAlgebra::new(n).unwrap();
        let r = verify_isomorphism(&alg);
        println!(
            "|X|={n}: {} triples, {} pairs, {} connective checks, {}",
            r.triples,
            r.pairs,
            r.checked,
            if r.ok() { "isomorphic" } else { "FAILED" }
        );
        if n == 2 {
            let z = alg.all_triples()[4];
            println!("  dagger{z} = {}", alg.dagger(z));
        }
    }
    let space = AssignmentSpace::new(2, &["x", "y"]).unwrap();
    let q = verify_quantifiers(&space);
    println!("quantifiers on 2 elements, vars x,y: {} checks, ok = {}", q.checked, q.ok());
}
