use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;

use super::GaussianRational;
use crate::rational::Rational;

/// A function known through its derivatives at any point.
pub trait Jet {
    /// Highest derivative order available; `None` means unbounded.
    fn max_order(&self) -> Option<u32>;

    /// `f^{(order)}(x)`; callers stay within `max_order`.
    fn derivative(&self, order: u32, x: f64) -> Complex64;
}

/// `b (b−1) ⋯ (b−j+1)`, also for negative `b`.
pub fn falling_factorial(b: i64, j: u32) -> Rational {
    (0..j as i64).fold(Rational::from_integer(1.into()), |acc, m| {
        acc * Rational::from_integer((b - m).into())
    })
}

pub fn binomial(k: u32, j: u32) -> Rational {
    falling_factorial(k as i64, j) / falling_factorial(j as i64, j)
}

/// Finite Laurent polynomial `Σ c_p x^p` with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i32, GaussianRational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(power: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(power, GaussianRational::real(Rational::from_integer(1.into())));
        p
    }

    pub fn add_term(&mut self, power: i32, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(power).or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussianRational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Jet for LaurentPolynomial {
    fn max_order(&self) -> Option<u32> {
        None
    }

    fn derivative(&self, order: u32, x: f64) -> Complex64 {
        self.terms()
            .map(|(p, c)| {
                let fall = crate::rational::to_f64(&falling_factorial(p as i64, order));
                c.to_complex() * fall * x.powi(p - order as i32)
            })
            .sum()
    }
}
