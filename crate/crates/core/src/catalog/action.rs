//! Group-level actions, evaluated in floating point from the printed formulas.

use num_complex::Complex64;

use super::{CatalogError, Family, RepParams};
use crate::lab::{Interval, TestFunction};
use crate::lie::{Gl2Element, MirabolicElement};
use crate::rational::to_f64;

#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    /// `((v1, v2), [[a, b], [0, 1]])` in R²⋊M₂.
    Mirabolic(MirabolicElement<f64>),
    /// `[[a, b], [c, d]]` in GL₂(R).
    General(Gl2Element),
}

impl GroupElement {
    pub fn product(&self, other: &GroupElement) -> Result<GroupElement, CatalogError> {
        match (self, other) {
            (GroupElement::Mirabolic(g), GroupElement::Mirabolic(h)) => {
                Ok(GroupElement::Mirabolic(g.product(h)?))
            }
            (GroupElement::General(g), GroupElement::General(h)) => {
                Ok(GroupElement::General(g.product(h)))
            }
            _ => Err(CatalogError::MixedGroups),
        }
    }
}

impl From<MirabolicElement<f64>> for GroupElement {
    fn from(g: MirabolicElement<f64>) -> Self {
        GroupElement::Mirabolic(g)
    }
}

impl From<Gl2Element> for GroupElement {
    fn from(g: Gl2Element) -> Self {
        GroupElement::General(g)
    }
}

/// `r^w` for `r > 0`.
fn cpow(r: f64, w: Complex64) -> Complex64 {
    (w * r.ln()).exp()
}

fn sgn_pow(value: f64, sigma: u8) -> f64 {
    if sigma == 1 && value < 0.0 {
        -1.0
    } else {
        1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Rule {
    Eta00Scalar { lambda: f64, sigma: u8 },
    Eta00,
    Eta10 { lambda: f64 },
    Eta0Beta { lambda: f64, sigma: u8, beta: f64 },
    PiMu { mu: f64 },
    PrincipalTilde { sigma: u8, nu: f64, mu: f64 },
}

/// The group-level realization of a catalog family.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAction {
    params: RepParams,
    rule: Rule,
}

impl GroupAction {
    pub fn new(params: &RepParams) -> Result<Self, CatalogError> {
        params.validate()?;
        let rule = match params {
            RepParams::Eta00Scalar { lambda, sigma } => Rule::Eta00Scalar {
                lambda: to_f64(lambda),
                sigma: *sigma,
            },
            RepParams::Eta00 => Rule::Eta00,
            RepParams::Eta10 { lambda } => Rule::Eta10 {
                lambda: to_f64(lambda),
            },
            RepParams::Eta0Beta { lambda, sigma, beta } => Rule::Eta0Beta {
                lambda: to_f64(lambda),
                sigma: *sigma,
                beta: to_f64(beta),
            },
            RepParams::PiMu { mu } => Rule::PiMu { mu: to_f64(mu) },
            RepParams::PrincipalTilde { sigma, nu, mu } => Rule::PrincipalTilde {
                sigma: *sigma,
                nu: to_f64(nu),
                mu: to_f64(mu),
            },
            RepParams::DiscreteKirillov { .. } => {
                return Err(CatalogError::NoGroupForm(Family::DiscreteKirillov))
            }
        };
        Ok(GroupAction {
            params: params.clone(),
            rule,
        })
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn params(&self) -> &RepParams {
        &self.params
    }

    fn mirabolic(&self, g: &GroupElement) -> Result<(f64, f64, f64, f64), CatalogError> {
        match g {
            GroupElement::Mirabolic(m) => m.planar_coords().ok_or(CatalogError::WrongGroup {
                family: self.family(),
                expected: "R²⋊M₂",
            }),
            _ => Err(CatalogError::WrongGroup {
                family: self.family(),
                expected: "R²⋊M₂",
            }),
        }
    }

    fn general(&self, g: &GroupElement) -> Result<Gl2Element, CatalogError> {
        match g {
            GroupElement::General(m) => Ok(*m),
            _ => Err(CatalogError::WrongGroup {
                family: self.family(),
                expected: "GL₂(R)",
            }),
        }
    }

    /// `(action(g) f)(x)` for an arbitrary function `f`.
    pub fn apply<F: Fn(f64) -> Complex64>(
        &self,
        g: &GroupElement,
        f: F,
        x: f64,
    ) -> Result<Complex64, CatalogError> {
        let i = Complex64::i();
        match self.rule {
            Rule::Eta00Scalar { lambda, sigma } => {
                let (_, _, a, _) = self.mirabolic(g)?;
                Ok(sgn_pow(a, sigma) * cpow(a.abs(), i * lambda) * f(x))
            }
            Rule::Eta00 => {
                let (_, _, a, b) = self.mirabolic(g)?;
                if x == 0.0 {
                    return Err(CatalogError::Origin);
                }
                Ok((i * b * x).exp() * f(a * x))
            }
            Rule::Eta10 { lambda } => {
                let (v1, _, a, b) = self.mirabolic(g)?;
                if x == 0.0 {
                    return Err(CatalogError::Origin);
                }
                Ok((i * v1 / x).exp() * (i * lambda * b * x).exp() * f(x * a))
            }
            Rule::Eta0Beta { lambda, sigma, beta } => {
                let (v1, v2, a, b) = self.mirabolic(g)?;
                let phase = (i * beta * (-x * v1 + v2)).exp();
                let modulus = cpow(a.abs(), Complex64::new(-0.5, lambda));
                Ok(phase * sgn_pow(a, sigma) * modulus * f((b + x) / a))
            }
            Rule::PiMu { mu } => {
                let m = self.general(g)?;
                Ok(cpow(m.det().abs(), i * mu) * f(x))
            }
            Rule::PrincipalTilde { sigma, nu, mu } => {
                let m = self.general(g)?;
                let denom = m.c * x + m.a;
                if denom == 0.0 {
                    return Err(CatalogError::SingularMobius(x));
                }
                let det_factor = cpow(m.det().abs(), Complex64::new(0.5, mu));
                let jac = cpow(denom.abs(), Complex64::new(-1.0, -nu));
                Ok(det_factor * sgn_pow(denom, sigma) * jac * f((m.d * x + m.b) / denom))
            }
        }
    }

    /// `(action(g) f)(x)` for a test function.
    pub fn apply_test(&self, g: &GroupElement, f: &TestFunction, x: f64) -> Result<Complex64, CatalogError> {
        if f.domain() != self.family().domain() {
            return Err(CatalogError::DomainMismatch {
                expected: self.family().domain(),
                found: f.domain(),
            });
        }
        self.apply(g, |y| Complex64::new(f.value(y), 0.0), x)
    }

    /// Support of `action(g) f` given the support of `f`: the preimage under the point map.
    pub fn transformed_support(&self, g: &GroupElement, support: Interval) -> Result<Interval, CatalogError> {
        let sorted = |p: f64, q: f64| Interval::new(p.min(q), p.max(q)).map_err(CatalogError::from);
        match self.rule {
            Rule::Eta00Scalar { .. } | Rule::PiMu { .. } => Ok(support),
            Rule::Eta00 | Rule::Eta10 { .. } => {
                let (_, _, a, _) = self.mirabolic(g)?;
                sorted(support.lo / a, support.hi / a)
            }
            Rule::Eta0Beta { .. } => {
                let (_, _, a, b) = self.mirabolic(g)?;
                sorted(a * support.lo - b, a * support.hi - b)
            }
            Rule::PrincipalTilde { .. } => {
                let m = self.general(g)?;
                // inverse of y = (dx+b)/(cx+a) is x = (ay−b)/(d−cy)
                let pole = |y: f64| m.d - m.c * y;
                if pole(support.lo).signum() != pole(support.hi).signum()
                    || pole(support.lo) == 0.0
                    || pole(support.hi) == 0.0
                {
                    return Err(CatalogError::UnboundedSupport);
                }
                let pre = |y: f64| (m.a * y - m.b) / pole(y);
                sorted(pre(support.lo), pre(support.hi))
            }
        }
    }
}
