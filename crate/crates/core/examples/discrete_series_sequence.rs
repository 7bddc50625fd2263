// Discrete series in the Kirillov model contracting along `ε_n = −4λ/n²` and `ε_n = −4/n³`.
//
// ```text
// cargo run --example discrete_series_sequence
// ```

use std::error::Error;

use mirabolic::lab::{build_scenario, default_test_set, sweep, Quadrature, ScenarioId};
use mirabolic::params::ParamSet;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (id, params) in [(ScenarioId::Prop3, "lambda=1"), (ScenarioId::Prop4, "")] {
        let scenario = build_scenario(id, &ParamSet::parse(params)?)?;
        let tests = default_test_set(scenario.domain());
        let report = sweep(&scenario, &tests, &Quadrature::default())?;
        println!("{id} ({params})");
        for row in report.rows.iter().filter(|r| r.testfn == tests[0].id()) {
            println!(
                "  n={:<3} eps={:<10} {}  l2={:.6e}  predicted={:.6e}",
                row.index.unwrap_or(0),
                row.epsilon.to_string(),
                row.basis,
                row.l2_defect,
                row.predicted_l2
            );
        }
        for r in &report.rates {
            println!("  rate {} {}: {:?}", r.basis, r.testfn, r.rate);
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
