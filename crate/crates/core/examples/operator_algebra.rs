// Differential operators with Laurent coefficients: composition, commutators, evaluation.
//
// ```text
// cargo run --example operator_algebra
// ```

use std::error::Error;

use mirabolic::lab::{Domain, TestFunction};
use mirabolic::ops::{DiffOperator, GaussianRational, LaurentPolynomial};
use mirabolic::rational::{int, rat};
use num_traits::One;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let one = GaussianRational::one;
    let x = DiffOperator::x_pow(1);
    let d = DiffOperator::d(1);
    let x_d = DiffOperator::term(one(), 1, 1);

    println!("d o x       = {}", d.compose(&x));
    println!("xd o xd     = {}", x_d.compose(&x_d));
    println!("d^2 o x     = {}", DiffOperator::d(2).compose(&x));
    println!("[d, x]      = {}", d.commutator(&x));

    // Discrete-series commutator [iqx, dD(e_21)] for n = 3, q = 2/5.
    let (n, q) = (int(3), rat(2, 5));
    let iqx = DiffOperator::term(GaussianRational::imag(q.clone()), 1, 0);
    let e21 = DiffOperator::from_terms([
        (GaussianRational::imag(-(&n * &n - int(1)) / (int(4) * &q)), -1, 0),
        (GaussianRational::imag(int(1) / &q), 1, 2),
    ]);
    let c = iqx.commutator(&e21);
    println!("[iqx, dD(e_21)] = {c}");
    if c != x_d.scale_rational(&int(2)) {
        return Err("discrete-series commutator is not 2x∂".into());
    }

    let p = LaurentPolynomial::monomial(2);
    let image: Vec<String> = x_d.act(&p).terms().map(|(k, c)| format!("{c}·x^{k}")).collect();
    println!("(x∂)(x^2)   = {}", image.join(" + "));
    let f = TestFunction::bump(Domain::PuncturedLine, 1.0, 2.0)?;
    let inv_x = DiffOperator::term(GaussianRational::i(), -1, 0);
    println!("(i/x) f at 1.5 = {}", inv_x.apply(&f, 1.5)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
