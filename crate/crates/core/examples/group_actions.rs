// Group-level formulas: homomorphism, unitarity and the derivative link to the operators.
//
// ```text
// cargo run --example group_actions
// ```

use std::error::Error;

use mirabolic::catalog::{
    linkage_check, unitarity_check, GroupAction, GroupElement, RepParams, DEFAULT_LINKAGE_STEPS,
};
use mirabolic::lab::{default_test_set, Domain, Quadrature};
use mirabolic::lie::{Basis, Gl2Element, MirabolicElement};
use mirabolic::rational::{int, rat};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let quad = Quadrature::default();
    let cases = [
        RepParams::Eta00Scalar { lambda: rat(2, 5), sigma: 1 },
        RepParams::Eta00,
        RepParams::Eta10 { lambda: rat(3, 2) },
        RepParams::Eta0Beta { lambda: rat(1, 3), sigma: 1, beta: int(-2) },
        RepParams::PiMu { mu: rat(2, 7) },
        RepParams::PrincipalTilde { sigma: 1, nu: rat(1, 3), mu: rat(2, 7) },
    ];
    for params in cases {
        let family = params.family();
        let action = GroupAction::new(&params)?;
        let (g, h): (GroupElement, GroupElement) = if family.is_gl2() {
            (Gl2Element::new(1.2, 0.1, -0.2, 0.9)?.into(), Gl2Element::new(0.8, -0.3, 0.1, 1.1)?.into())
        } else {
            (
                MirabolicElement::planar(0.3, -0.5, 1.5, 0.2)?.into(),
                MirabolicElement::planar(-0.4, 0.7, -0.8, 0.1)?.into(),
            )
        };
        let f = default_test_set(family.domain()).remove(0);
        let x = match family.domain() {
            Domain::Line => 0.2,
            Domain::PuncturedLine => 1.4,
            Domain::Singleton => Domain::SINGLETON_POINT,
        };
        let inner = |y: f64| action.apply_test(&h, &f, y).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let nested = action.apply(&g, inner, x)?;
        let direct = action.apply_test(&g.product(&h)?, &f, x)?;
        let residual = (nested - direct).norm();

        let unit = unitarity_check(&action, &g, &f, &quad)?;
        println!("{family}: homomorphism residual {residual:.2e}, unitarity deviation {:.2e}", unit.deviation);
        if residual > 1e-12 || unit.deviation > 1e-9 {
            return Err(format!("{family}: group-level check failed").into());
        }
        for dir in Basis::GL2 {
            let link = linkage_check(&params, dir, &f, x, &DEFAULT_LINKAGE_STEPS)?;
            println!("    {dir}: algebra value {:.6}, slope {:?}", link.algebra_value, link.slope);
            if !link.passed(1.8, 2.2) {
                return Err(format!("{family} {dir}: linkage slope {:?}", link.slope).into());
            }
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
