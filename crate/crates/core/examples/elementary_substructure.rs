//! Substructures, the Tarski-like conditions and bounded elementarity on a
//! three-element structure.

use qciore::modeltheory::{
    elementary_equiv_bounded, elementary_sub_bounded, substructures, tarski_conditions,
};
use qciore::structures::{parse_structure, write_structure};
use qciore::syntax::parse_formula;

const B: &str = "
domain = {a, b, c}
pred P/1 { plus={(a)} minus={(c)} dot={(b)} }
";

fn main() {
    let b = parse_structure(B).unwrap();
    let vars = vec!["x".to_string(), "y".to_string()];
    let phi = parse_formula("P(x)", b.signature()).unwrap();
    for a in substructures(&b).unwrap() {
        let names = a.domain().join(", ");
        let tc = tarski_conditions(&a, &b, std::slice::from_ref(&phi), &vars).unwrap();
        let el = elementary_sub_bounded(&a, &b, 2, &vars).unwrap();
        let eq = elementary_equiv_bounded(&a, &b, 2, &vars).unwrap();
        println!("A = {{{names}}}");
        println!("  Tarski-like conditions on P(x): {} failures", tc.failures.len());
        for f in tc.failures.iter().take(2) {
            println!("    {:?} under [{}]: no {}", f.condition, f.assignment, f.missing);
        }
        println!("  elementary: {el}");
        println!("  equivalent: {eq}");
    }
    print!("B:\n{}", write_structure(&b));
}
