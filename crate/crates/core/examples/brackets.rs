// Deformed brackets of gl_n: the case table against the definition, and Jacobi.
//
// ```text
// cargo run --example brackets
// ```

use std::error::Error;

use mirabolic::lie::{
    bracket_table, contracted_bracket, deformed_bracket, jacobi_check, Basis, ContractionSplit, Epsilon, LieElement,
};
use mirabolic::rational::rat;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let split = ContractionSplit::new(3)?;
    let labels = |v: Vec<Basis>| v.iter().map(|b| b.label()).collect::<Vec<_>>().join(" ");
    println!("m_3:        {}", labels(split.subalgebra()));
    println!("complement: {}", labels(split.complement()));

    let e12 = LieElement::basis(2, Basis::E12)?;
    let e21 = LieElement::basis(2, Basis::E21)?;
    for eps in [rat(1, 1), rat(1, 2), rat(0, 1)] {
        let eps = Epsilon(eps);
        println!("[e_12, e_21]_{} = {}", eps.value(), contracted_bracket(&eps, &e12, &e21)?);
    }

    for n in 2..=4 {
        for eps in [rat(0, 1), rat(3, 7), rat(-5, 2), rat(1, 1)] {
            let eps = Epsilon(eps);
            let mut agree = 0;
            if !eps.is_zero() {
                for (a, b, table) in bracket_table(n, &eps)? {
                    let def = deformed_bracket(&eps, &LieElement::basis(n, a)?, &LieElement::basis(n, b)?)?;
                    if def != table {
                        return Err(format!("n={n}, eps={}: table and definition differ on [{a},{b}]", eps.value()).into());
                    }
                    agree += 1;
                }
            }
            let report = jacobi_check(n, &eps)?;
            if !report.passed() {
                return Err(format!("Jacobi fails for n={n}, eps={}: {:?}", eps.value(), report.first_failure).into());
            }
            println!(
                "n={n} eps={:>4}: table = definition on {agree:>3} pairs, Jacobi over {} triples",
                eps.value().to_string(),
                report.triples_checked
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
