//! Smooth compactly supported test vectors with closed-form jets.

use std::fmt;

use num_complex::Complex64;

use super::LabError;
use crate::ops::Jet;

/// Measure space a representation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// `L²(R, dx)`.
    Line,
    /// `L²(R*, dx/|x|)`.
    PuncturedLine,
    /// One point with counting measure.
    Singleton,
}

impl Domain {
    /// Coordinate used when a one-point space is evaluated through `x`-based code.
    pub const SINGLETON_POINT: f64 = 1.0;

    pub fn name(self) -> &'static str {
        match self {
            Domain::Line => "line",
            Domain::PuncturedLine => "punctured-line",
            Domain::Singleton => "singleton",
        }
    }

    pub(crate) fn check_window(self, w: Interval) -> Result<(), LabError> {
        if self == Domain::PuncturedLine && w.contains(0.0) {
            return Err(LabError::WindowContainsOrigin(w));
        }
        Ok(())
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, LabError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(LabError::BadInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Profile {
    /// `exp(1/(u²−1))` with `u` the affine image of the support in `(−1, 1)`.
    Bump,
    /// The constant `1` on the one-point space.
    Unit,
}

/// Order-2 jet `(f, f′, f″)` of a test vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    id: String,
    domain: Domain,
    support: Interval,
    profile: Profile,
}

impl TestFunction {
    pub fn bump(domain: Domain, lo: f64, hi: f64) -> Result<Self, LabError> {
        let support = Interval::new(lo, hi)?;
        if domain == Domain::Singleton {
            return Err(LabError::DomainMismatch {
                expected: Domain::Line,
                found: domain,
            });
        }
        domain.check_window(support)?;
        Ok(TestFunction {
            id: format!("bump({lo}:{hi})"),
            domain,
            support,
            profile: Profile::Bump,
        })
    }

    pub fn unit_point() -> Self {
        TestFunction {
            id: "point".to_string(),
            domain: Domain::Singleton,
            support: Interval {
                lo: Domain::SINGLETON_POINT,
                hi: Domain::SINGLETON_POINT,
            },
            profile: Profile::Unit,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn support(&self) -> Interval {
        self.support
    }

    pub fn value(&self, x: f64) -> f64 {
        self.real_derivative(0, x)
    }

    fn real_derivative(&self, order: u32, x: f64) -> f64 {
        match self.profile {
            Profile::Unit => {
                if order == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            Profile::Bump => {
                let Interval { lo, hi } = self.support;
                let scale = 2.0 / (hi - lo);
                let u = scale * (x - lo) - 1.0;
                let (phi, dphi, ddphi) = bump_jet(u);
                match order {
                    0 => phi,
                    1 => dphi * scale,
                    2 => ddphi * scale * scale,
                    _ => unreachable!("bump jets stop at order 2"),
                }
            }
        }
    }
}

/// `(φ, φ′, φ″)` of `φ(u) = exp(1/(u²−1))` on `|u| < 1`, zero outside.
fn bump_jet(u: f64) -> (f64, f64, f64) {
    if u.abs() >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    let s = u * u - 1.0;
    let phi = (1.0 / s).exp();
    let g1 = -2.0 * u / (s * s);
    let g2 = (6.0 * u * u + 2.0) / (s * s * s);
    (phi, phi * g1, phi * (g1 * g1 + g2))
}

impl Jet for TestFunction {
    fn max_order(&self) -> Option<u32> {
        match self.profile {
            Profile::Bump => Some(2),
            Profile::Unit => Some(0),
        }
    }

    fn derivative(&self, order: u32, x: f64) -> Complex64 {
        Complex64::new(self.real_derivative(order, x), 0.0)
    }
}

/// Three bumps: `[−1, 1]` on the line; `[1, 2]` and `[−2, −1]` on the punctured line.
pub fn default_test_set(domain: Domain) -> Vec<TestFunction> {
    match domain {
        Domain::Line => vec![TestFunction::bump(Domain::Line, -1.0, 1.0).unwrap()],
        Domain::PuncturedLine => vec![
            TestFunction::bump(Domain::PuncturedLine, 1.0, 2.0).unwrap(),
            TestFunction::bump(Domain::PuncturedLine, -2.0, -1.0).unwrap(),
        ],
        Domain::Singleton => vec![TestFunction::unit_point()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn jets_match_finite_differences() {
        let f = TestFunction::bump(Domain::PuncturedLine, 1.0, 2.0).unwrap();
        for &x in &[1.1, 1.3, 1.5, 1.77, 1.95] {
            let d1 = central(|y| f.real_derivative(0, y), x, 1e-5);
            let d2 = central(|y| f.real_derivative(1, y), x, 1e-5);
            let f1 = f.real_derivative(1, x);
            let f2 = f.real_derivative(2, x);
            assert!((d1 - f1).abs() <= 1e-7 * (1.0 + f1.abs()), "x={x}: {d1} vs {f1}");
            assert!((d2 - f2).abs() <= 1e-6 * (1.0 + f2.abs()), "x={x}: {d2} vs {f2}");
        }
    }

    #[test]
    fn vanishes_outside_support() {
        let f = TestFunction::bump(Domain::Line, -1.0, 1.0).unwrap();
        for x in [-1.0, 1.0, 1.5, -3.0] {
            assert_eq!(f.value(x), 0.0);
        }
        assert!((f.value(0.0) - (-1f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn punctured_support_must_avoid_origin() {
        assert!(TestFunction::bump(Domain::PuncturedLine, -1.0, 1.0).is_err());
        assert!(TestFunction::bump(Domain::Line, 2.0, 1.0).is_err());
    }

    #[test]
    fn default_sets() {
        assert_eq!(default_test_set(Domain::Line).len(), 1);
        assert_eq!(default_test_set(Domain::PuncturedLine).len(), 2);
        assert_eq!(default_test_set(Domain::Singleton)[0].id(), "point");
    }
}
