//! Prints the connective tables of the three matrices and checks the named
//! propositional schemas against each of them.

use qciore::matrix::{check_named_schemas, Connective, Matrix, Truth};

fn print_matrix(m: &Matrix) {
    println!("== {} ==", m.id);
    for op in Connective::ALL {
        if !m.has(op) {
            continue;
        }
        if op.is_binary() {
            println!("{op:>3} | 0    1/2  1");
            for a in Truth::ALL {
                let row: Vec<String> = Truth::ALL
                    .iter()
                    .map(|&b| format!("{:<4}", m.binary(op, a, b).unwrap().to_string()))
                    .collect();
                println!("{:>3} | {}", a.to_string(), row.join(" "));
            }
        } else {
            let row: Vec<String> = Truth::ALL
                .iter()
                .map(|&a| format!("{op}{a}={}", m.unary(op, a).unwrap()))
                .collect();
            println!("{}", row.join("  "));
        }
    }
}

fn main() {
    for m in [Matrix::ciore(), Matrix::lfi1(), Matrix::p1()] {
        print_matrix(&m);
        match check_named_schemas(&m) {
            Ok(report) => {
                let failures: Vec<_> = report.failures().collect();
                println!("schemas: {} refuted", failures.len());
                for r in failures {
                    println!("  {} at {}", r.name, r.counterexample.as_deref().unwrap_or("?"));
                }
            }
            Err(e) => println!("schemas: {e}"),
        }
        println!();
    }
}
