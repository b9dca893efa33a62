//! Evaluates formulas in a small partial structure and classifies sentences.

use qciore::structures::{parse_structure, Assignment};
use qciore::syntax::parse_formula;

const TEXT: &str = "
domain = {a, b, c}
pred P/1 { plus={(a)} minus={} dot={(b),(c)} }
";

fn main() {
    let st = parse_structure(TEXT).unwrap();
    let sentences = [
        "forall x. P(x)",
        "exists x. ~P(x)",
        "(exists x. ~P(x)) -> ~forall x. P(x)",
        "forall x. @P(x)",
        "exists x. @P(x)",
    ];
    for text in sentences {
        let f = parse_formula(text, st.signature()).unwrap();
        let v = st.eval(&f, &Assignment::new()).unwrap();
        let class = st.sentence_trichotomy(&f).unwrap();
        println!("{text:<40} {v:<4} {class}");
    }
    let open = parse_formula("P(x) & ~P(x)", st.signature()).unwrap();
    let t = st.formula_triple(&open, &["x"]).unwrap();
    println!("classes of `{open}` over x: {t:?}");
    match st.is_valid_in(&open).unwrap() {
        None => println!("`{open}` is valid"),
        Some(s) => println!("`{open}` is refuted under [{}]", s.display(&st)),
    }
}
