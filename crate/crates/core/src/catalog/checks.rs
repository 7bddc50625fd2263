//! Numerical links between the group-level and algebra-level catalog.

use num_complex::Complex64;

use super::{build_algebra_rep, CatalogError, GroupAction, GroupElement, RepParams};
use crate::lab::{fit_rate, Quadrature, Rate, TestFunction};
use crate::lie::{exp_basis, exp_gl2, Basis};

/// Steps `2^-4, …, 2^-9` for the central differences.
pub const DEFAULT_LINKAGE_STEPS: [f64; 6] = [0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625, 0.001953125];

#[derive(Debug, Clone, PartialEq)]
pub struct LinkageRow {
    pub t: f64,
    pub estimate: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkageReport {
    pub params: RepParams,
    pub direction: Basis,
    pub x: f64,
    /// `(ρ(direction) f)(x)` from the algebra-level operator.
    pub algebra_value: Complex64,
    pub rows: Vec<LinkageRow>,
    /// Log-log slope of error against `t`.
    pub slope: Rate,
}

impl LinkageReport {
    /// Second-order agreement, or exact agreement when the operator is zero.
    pub fn passed(&self, lo: f64, hi: f64) -> bool {
        match self.slope {
            Rate::Fitted(s) => (lo..=hi).contains(&s),
            Rate::ExactZero => self.rows.iter().all(|r| r.error == 0.0),
            Rate::Undetermined => false,
        }
    }
}

fn one_parameter(params: &RepParams, direction: Basis, t: f64) -> Result<GroupElement, CatalogError> {
    Ok(if params.family().is_gl2() {
        exp_gl2(direction, t)?.into()
    } else {
        exp_basis(direction, t)?.into()
    })
}

/// Central differences of `t ↦ action(exp(t·direction)) f` at `x`, against the algebra operator.
pub fn linkage_check(
    params: &RepParams,
    direction: Basis,
    f: &TestFunction,
    x: f64,
    steps: &[f64],
) -> Result<LinkageReport, CatalogError> {
    if steps.is_empty() {
        return Err(CatalogError::Schedule("no steps"));
    }
    if steps.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(CatalogError::Schedule("steps must be positive"));
    }
    if steps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(CatalogError::Schedule("steps must be strictly decreasing"));
    }
    let rep = build_algebra_rep(params)?;
    let action = GroupAction::new(params)?;
    let algebra_value = rep.image(direction).apply(f, x)?;

    let mut rows = Vec::with_capacity(steps.len());
    for &t in steps {
        let forward = action.apply_test(&one_parameter(params, direction, t)?, f, x)?;
        let backward = action.apply_test(&one_parameter(params, direction, -t)?, f, x)?;
        let estimate = (forward - backward) / (2.0 * t);
        rows.push(LinkageRow {
            t,
            estimate,
            error: (estimate - algebra_value).norm(),
        });
    }
    let slope = fit_rate(&rows.iter().map(|r| (r.t, r.error)).collect::<Vec<_>>());
    Ok(LinkageReport {
        params: params.clone(),
        direction,
        x,
        algebra_value,
        rows,
        slope,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitarityReport {
    pub norm: f64,
    pub transformed_norm: f64,
    pub deviation: f64,
}

/// `| ‖action(g) f‖ − ‖f‖ |` in the family's L² space.
pub fn unitarity_check(
    action: &GroupAction,
    g: &GroupElement,
    f: &TestFunction,
    quad: &Quadrature,
) -> Result<UnitarityReport, CatalogError> {
    let domain = action.family().domain();
    if f.domain() != domain {
        return Err(CatalogError::DomainMismatch {
            expected: domain,
            found: f.domain(),
        });
    }
    let norm = quad.l2_norm(|x| Complex64::new(f.value(x), 0.0), f.support(), domain)?;
    let window = action.transformed_support(g, f.support())?;
    let mut failure = None;
    let transformed_norm = quad.l2_norm(
        |x| match action.apply_test(g, f, x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(f64::NAN, 0.0)
            }
        },
        window,
        domain,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(UnitarityReport {
        norm,
        transformed_norm,
        deviation: (transformed_norm - norm).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::Domain;
    use crate::lie::{Gl2Element, MirabolicElement};
    use crate::rational::{int, rat};

    #[test]
    fn linkage_eta10_e12() {
        let p = RepParams::Eta10 { lambda: rat(3, 2) };
        let f = TestFunction::bump(Domain::PuncturedLine, 1.0, 2.0).unwrap();
        let r = linkage_check(&p, Basis::E12, &f, 1.37, &DEFAULT_LINKAGE_STEPS).unwrap();
        let want = Complex64::new(0.0, 1.5 * 1.37 * f.value(1.37));
        assert!((r.algebra_value - want).norm() < 1e-15);
        assert!(r.passed(1.8, 2.2), "{:?}", r.slope);
    }

    #[test]
    fn linkage_eta0beta_e22() {
        let p = RepParams::Eta0Beta { lambda: int(0), sigma: 1, beta: rat(-2, 3) };
        let f = TestFunction::bump(Domain::Line, -1.0, 1.0).unwrap();
        let r = linkage_check(&p, Basis::E22, &f, 0.31, &DEFAULT_LINKAGE_STEPS).unwrap();
        let want = Complex64::new(0.0, -2.0 / 3.0) * f.value(0.31);
        assert!((r.algebra_value - want).norm() < 1e-15);
        assert!(r.passed(1.8, 2.2), "{:?}", r.slope);
    }

    #[test]
    fn linkage_zero_direction() {
        let f = TestFunction::bump(Domain::PuncturedLine, 1.0, 2.0).unwrap();
        let r = linkage_check(&RepParams::Eta00, Basis::E22, &f, 1.5, &DEFAULT_LINKAGE_STEPS).unwrap();
        assert_eq!(r.slope, Rate::ExactZero);
        assert!(r.passed(1.8, 2.2));
    }

    #[test]
    fn linkage_rejects_bad_schedules() {
        let f = TestFunction::bump(Domain::PuncturedLine, 1.0, 2.0).unwrap();
        for steps in [&[][..], &[0.1, 0.2][..], &[0.1, -0.05][..]] {
            assert!(linkage_check(&RepParams::Eta00, Basis::E11, &f, 1.5, steps).is_err());
        }
    }

    #[test]
    fn unitarity_eta00_dilation() {
        let act = GroupAction::new(&RepParams::Eta00).unwrap();
        let g = MirabolicElement::planar(0.0, 0.0, 2.0, 0.7).unwrap().into();
        let f = TestFunction::bump(Domain::PuncturedLine, 1.0, 2.0).unwrap();
        let r = unitarity_check(&act, &g, &f, &Quadrature::default()).unwrap();
        assert!(r.deviation < 1e-12, "{r:?}");
    }

    #[test]
    fn unitarity_identity_is_exact() {
        let act = GroupAction::new(&RepParams::Eta0Beta { lambda: int(1), sigma: 0, beta: int(1) }).unwrap();
        let f = TestFunction::bump(Domain::Line, -1.0, 1.0).unwrap();
        let e = MirabolicElement::identity(2).into();
        let r = unitarity_check(&act, &e, &f, &Quadrature::default()).unwrap();
        assert_eq!(r.deviation, 0.0);
    }

    #[test]
    fn unitarity_eta0beta_dilation() {
        let act = GroupAction::new(&RepParams::Eta0Beta { lambda: rat(2, 3), sigma: 1, beta: int(2) }).unwrap();
        let f = TestFunction::bump(Domain::Line, -1.0, 1.0).unwrap();
        let g = MirabolicElement::planar(0.0, 0.0, -3.0, 0.0).unwrap().into();
        let r = unitarity_check(&act, &g, &f, &Quadrature::default()).unwrap();
        assert!(r.deviation < 1e-12, "{r:?}");
    }

    #[test]
    fn unitarity_principal_series() {
        let act = GroupAction::new(&RepParams::PrincipalTilde { sigma: 1, nu: rat(1, 3), mu: rat(2, 7) }).unwrap();
        let f = TestFunction::bump(Domain::Line, -1.0, 1.0).unwrap();
        let g = Gl2Element::new(1.5, 0.25, -0.3, 0.8).unwrap().into();
        let r = unitarity_check(&act, &g, &f, &Quadrature::default()).unwrap();
        assert!(r.deviation < 1e-9, "{r:?}");
    }
}
