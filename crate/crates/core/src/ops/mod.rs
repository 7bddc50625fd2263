//! Differential operators `Σ c · x^a · ∂^k` with Laurent coefficients.
//!
//! Coefficients are Gaussian rationals, exponents are any integers and
//! orders are non-negative. Composition is exact, so commutator identities
//! can be compared term by term.

mod gaussian;
mod jet;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

pub use gaussian::GaussianRational;
pub use jet::{binomial, falling_factorial, Jet, LaurentPolynomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApplyError {
    #[error("operator has a negative power of x and cannot be evaluated at x = 0")]
    Singular,
    #[error("operator needs derivatives up to order {needed}, test function provides {available}")]
    JetOrder { needed: u32, available: u32 },
}

/// `x^exponent ∂^order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub order: u32,
    pub exponent: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffOperator {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(GaussianRational::one())
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Self::term(c, 0, 0)
    }

    /// `c · x^exponent · ∂^order`.
    pub fn term(c: GaussianRational, exponent: i32, order: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(Monomial { order, exponent }, c);
        out
    }

    /// Multiplication by `x^exponent`.
    pub fn x_pow(exponent: i32) -> Self {
        Self::term(GaussianRational::one(), exponent, 0)
    }

    /// `∂^order`.
    pub fn d(order: u32) -> Self {
        Self::term(GaussianRational::one(), 0, order)
    }

    /// Builds an operator from `(coefficient, exponent, order)` triples.
    pub fn from_terms(terms: impl IntoIterator<Item = (GaussianRational, i32, u32)>) -> Self {
        let mut out = Self::zero();
        for (c, exponent, order) in terms {
            out.add_term(Monomial { order, exponent }, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &GaussianRational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, exponent: i32, order: u32) -> GaussianRational {
        self.terms
            .get(&Monomial { order, exponent })
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(|m| m.order).max().unwrap_or(0)
    }

    pub fn has_negative_powers(&self) -> bool {
        self.terms.keys().any(|m| m.exponent < 0)
    }

    /// True when every term is a pure multiplication (`k = 0`).
    pub fn is_multiplication(&self) -> bool {
        self.terms.keys().all(|m| m.order == 0)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (m, d) in self.terms() {
            out.add_term(m, c * d);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussianRational::real(r.clone()))
    }

    /// `self ∘ other`, by the Leibniz rule
    /// `(x^a ∂^k)(x^b ∂^m) = Σ_j C(k,j) b^(j↓) x^{a+b−j} ∂^{k+m−j}`.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = Self::zero();
        for (l, cl) in self.terms() {
            for (r, cr) in other.terms() {
                let c = cl * cr;
                for j in 0..=l.order {
                    let factor = binomial(l.order, j) * falling_factorial(r.exponent as i64, j);
                    if factor.is_zero() {
                        continue;
                    }
                    let m = Monomial {
                        order: l.order + r.order - j,
                        exponent: l.exponent + r.exponent - j as i32,
                    };
                    out.add_term(m, c.scale(&factor));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &DiffOperator) -> DiffOperator {
        &self.compose(other) - &other.compose(self)
    }

    /// Exact action on a Laurent polynomial.
    pub fn act(&self, p: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (m, c) in self.terms() {
            for (power, d) in p.terms() {
                let fall = falling_factorial(power as i64, m.order);
                if fall.is_zero() {
                    continue;
                }
                out.add_term(m.exponent + power - m.order as i32, (c * d).scale(&fall));
            }
        }
        out
    }

    /// `Σ c · x^a · f^{(k)}(x)`.
    pub fn apply<J: Jet + ?Sized>(&self, f: &J, x: f64) -> Result<Complex64, ApplyError> {
        if let Some(available) = f.max_order() {
            let needed = self.max_order();
            if needed > available {
                return Err(ApplyError::JetOrder { needed, available });
            }
        }
        if x == 0.0 && self.has_negative_powers() {
            return Err(ApplyError::Singular);
        }
        let mut acc = Complex64::zero();
        let mut cached: Vec<Option<Complex64>> = vec![None; self.max_order() as usize + 1];
        for (m, c) in self.terms() {
            let deriv = *cached[m.order as usize].get_or_insert_with(|| f.derivative(m.order, x));
            acc += c.to_complex() * x.powi(m.exponent) * deriv;
        }
        Ok(acc)
    }
}

/// Exact equality after zero pruning.
pub fn op_equal(a: &DiffOperator, b: &DiffOperator) -> bool {
    a == b
}

impl<'a> Add<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn add(self, o: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (m, c) in o.terms() {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Add for DiffOperator {
    type Output = DiffOperator;
    fn add(self, o: DiffOperator) -> DiffOperator {
        &self + &o
    }
}

impl<'a> Sub<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn sub(self, o: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (m, c) in o.terms() {
            out.add_term(m, -c);
        }
        out
    }
}

impl Sub for DiffOperator {
    type Output = DiffOperator;
    fn sub(self, o: DiffOperator) -> DiffOperator {
        &self - &o
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        self.scale(&-GaussianRational::one())
    }
}

impl Neg for DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        -&self
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if !c.is_one() || (m.exponent == 0 && m.order == 0) {
                factors.push(c.to_string());
            }
            match m.exponent {
                0 => {}
                1 => factors.push("x".to_string()),
                e => factors.push(format!("x^{e}")),
            }
            match m.order {
                0 => {}
                1 => factors.push("∂".to_string()),
                o => factors.push(format!("∂^{o}")),
            }
            f.write_str(&factors.join("·"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn real(r: Rational) -> GaussianRational {
        GaussianRational::real(r)
    }

    fn x_d() -> DiffOperator {
        DiffOperator::term(GaussianRational::one(), 1, 1)
    }

    #[test]
    fn apply_examples() {
        // x∂ on x² at 3
        let got = x_d().apply(&LaurentPolynomial::monomial(2), 3.0).unwrap();
        assert!((got - Complex64::new(18.0, 0.0)).norm() < 1e-12);
        // i/x on 1 at 2
        let op = DiffOperator::term(GaussianRational::i(), -1, 0);
        let got = op.apply(&LaurentPolynomial::monomial(0), 2.0).unwrap();
        assert!((got - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert_eq!(
            op.apply(&LaurentPolynomial::monomial(0), 0.0),
            Err(ApplyError::Singular)
        );
    }

    #[test]
    fn compose_examples() {
        let d = DiffOperator::d(1);
        let x = DiffOperator::x_pow(1);
        assert_eq!(d.compose(&x), &x_d() + &DiffOperator::identity());
        let want = &DiffOperator::term(GaussianRational::one(), 2, 2) + &x_d();
        assert_eq!(x_d().compose(&x_d()), want);
        let want = &DiffOperator::term(GaussianRational::one(), 1, 2)
            + &DiffOperator::term(real(int(2)), 0, 1);
        assert_eq!(DiffOperator::d(2).compose(&x), want);
    }

    #[test]
    fn compose_with_laurent_terms() {
        // ∂ ∘ x^{-1} = x^{-1}∂ − x^{-2}
        let got = DiffOperator::d(1).compose(&DiffOperator::x_pow(-1));
        let want = &DiffOperator::term(GaussianRational::one(), -1, 1)
            - &DiffOperator::x_pow(-2);
        assert_eq!(got, want);
    }

    #[test]
    fn commutator_examples() {
        let x = DiffOperator::x_pow(1);
        assert_eq!(DiffOperator::d(1).commutator(&x), DiffOperator::identity());
        for a in -3..=3 {
            for k in 0..=3u32 {
                let m = DiffOperator::term(GaussianRational::one(), a, k);
                let want = m.scale_rational(&int(a as i64 - k as i64));
                assert_eq!(x_d().commutator(&m), want, "a={a} k={k}");
            }
        }
    }

    #[test]
    fn discrete_series_commutator() {
        // [iqx, −i(n²−1)/(4q)·x^{-1} + i(x/q)∂²] = 2x∂ for n = 3, q = 5/2
        let q = rat(5, 2);
        let n2m1 = int(8);
        let e12 = DiffOperator::term(GaussianRational::imag(q.clone()), 1, 0);
        let e21 = &DiffOperator::term(GaussianRational::imag(-n2m1 / (int(4) * &q)), -1, 0)
            + &DiffOperator::term(GaussianRational::imag(int(1) / &q), 1, 2);
        assert_eq!(e12.commutator(&e21), x_d().scale_rational(&int(2)));
    }

    #[test]
    fn jet_order_is_enforced() {
        struct Order1;
        impl Jet for Order1 {
            fn max_order(&self) -> Option<u32> {
                Some(1)
            }
            fn derivative(&self, _: u32, _: f64) -> Complex64 {
                Complex64::new(1.0, 0.0)
            }
        }
        let err = DiffOperator::d(2).apply(&Order1, 1.0).unwrap_err();
        assert_eq!(err, ApplyError::JetOrder { needed: 2, available: 1 });
    }

    #[test]
    fn equality_prunes_zeros() {
        let d = DiffOperator::d(1);
        let x = DiffOperator::x_pow(1);
        assert!(op_equal(&(&d.compose(&x) - &x_d()), &DiffOperator::identity()));
        assert!((&x_d() - &x_d()).is_zero());
    }

    #[test]
    fn display() {
        let op = &DiffOperator::term(real(rat(-1, 2)), 0, 0) + &x_d();
        assert_eq!(op.to_string(), "-1/2 + x·∂");
        let op = DiffOperator::term(GaussianRational::imag(int(3)), -1, 2);
        assert_eq!(op.to_string(), "3i·x^-1·∂^2");
    }
}
