//! Checks the bundled proofs, then shows how a broken step is reported.

use qciore::hilbert::{check_proof, parse_mutations, parse_proof, LemmaStore};

const PROOFS: [(&str, &str, &str); 3] = [
    (
        "generalization",
        include_str!("../data/proofs/generalization.proof"),
        include_str!("../data/mutations/generalization.mut"),
    ),
    (
        "exists-contradiction",
        include_str!("../data/proofs/exists-contradiction.proof"),
        include_str!("../data/mutations/exists-contradiction.mut"),
    ),
    (
        "forall-contradiction",
        include_str!("../data/proofs/forall-contradiction.proof"),
        include_str!("../data/mutations/forall-contradiction.mut"),
    ),
];

fn main() {
    let store = LemmaStore::standard();
    println!("lemma store: {}", store.names().collect::<Vec<_>>().join(", "));
    for (name, text, muts) in PROOFS {
        let file = parse_proof(text).unwrap();
        println!("{}", check_proof(&file.proof, &file.signature, &store));
        for (k, step) in parse_mutations(muts, &file.signature).unwrap().into_iter().take(2) {
            let broken = file.proof.clone().with_step(k, step);
            let v = check_proof(&broken, &file.signature, &store);
            println!("  mutant of {name} step {k}: {v}");
        }
    }
}
