// The principal series `dP̃^{σ, β/ε, λ+β/ε}` contracting to `dη^{λ,σ}_(0,β)`.
//
// ```text
// cargo run --example prop5_sweep
// ```

use std::error::Error;

use mirabolic::lab::{build_scenario, default_test_set, sweep, Quadrature, ScenarioId};
use mirabolic::lie::Basis;
use mirabolic::params::ParamSet;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let scenario = build_scenario(ScenarioId::Prop5, &ParamSet::parse("beta=1,lambda=0,sigma=0")?)?;
    let p = &scenario.schedule()[0];
    for y in Basis::GL2 {
        println!("D_eps({y}) at eps={} : {}", p.epsilon, scenario.defect_operator(p, y)?);
    }
    let tests = default_test_set(scenario.domain());
    let report = sweep(&scenario, &tests, &Quadrature::default())?;
    print!("{}", report.to_csv());
    for r in &report.rates {
        println!("rate {} {}: {:?}", r.basis, r.testfn, r.rate);
    }
    if !report.passed() {
        return Err("prop5 sweep disagrees with its prediction".into());
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
