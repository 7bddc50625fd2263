// Constant families: a character of GL₂ and the principal series restricted to `m₂`.
//
// ```text
// cargo run --example constant_families
// ```

use std::error::Error;

use mirabolic::lab::{build_scenario, default_test_set, sweep, Quadrature, ScenarioId};
use mirabolic::params::ParamSet;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (id, params) in [
        (ScenarioId::Prop1, "lambda=2/5,sigma=0"),
        (ScenarioId::Lemma1Principal, "sigma=0,nu=1/3,mu=2/7"),
    ] {
        let scenario = build_scenario(id, &ParamSet::parse(params)?)?;
        let tests = default_test_set(scenario.domain());
        let report = sweep(&scenario, &tests, &Quadrature::default())?;
        println!("{id} ({params}), target {}", scenario.target().name());
        for row in &report.rows {
            println!(
                "  eps={:<8} {} {:<10} l2={:.6e} sup={:.6e} exact_zero={}",
                row.epsilon.to_string(),
                row.basis,
                row.testfn,
                row.l2_defect,
                row.sup_defect,
                row.exact_zero
            );
        }
        if !report.passed() {
            return Err(format!("{id} disagrees with its prediction").into());
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
