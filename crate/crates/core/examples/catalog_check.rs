// Every catalog family is a representation: 16 exact bracket identities each.
//
// ```text
// cargo run --example catalog_check
// ```

use std::error::Error;

use mirabolic::catalog::{bracket_check, build_algebra_rep, Family, RepParams};
use mirabolic::params::ParamSet;

const SAMPLES: [(Family, &str); 9] = [
    (Family::Eta00Scalar, "lambda=2/5,sigma=1"),
    (Family::Eta00, ""),
    (Family::Eta10, "lambda=3/7"),
    (Family::Eta0Beta, "lambda=0,beta=1,sigma=0"),
    (Family::PiMu, "mu=-4/9"),
    (Family::DiscreteKirillov, "n=2,q=1"),
    (Family::DiscreteKirillov, "n=5,q=-3/2"),
    (Family::PrincipalTilde, "sigma=0,nu=1/3,mu=2/7"),
    (Family::PrincipalTilde, "sigma=1,nu=-2,mu=0.125"),
];

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (family, params) in SAMPLES {
        let p = RepParams::from_params(family, &ParamSet::parse(params)?)?;
        let rep = build_algebra_rep(&p)?;
        let report = bracket_check(&rep)?;
        println!("{:<17} {:<26} {}/{}", family.id(), params, report.passed, report.checked);
        for (b, op) in rep.images() {
            println!("    {b} -> {op}");
        }
        if !report.all_passed() {
            return Err(format!("{family} fails: {:?}", report.first_failure).into());
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
