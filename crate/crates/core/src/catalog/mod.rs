//! Representation catalog for R²⋊M₂ and GL₂(R).
//!
//! Each family comes with its operator assignment on the basis
//! `e_11, e_12, e_21, e_22` and, where a closed group action exists, the
//! group-level formula. Families of R²⋊M₂ represent the contracted bracket
//! (tag 0); families of GL₂(R) represent gl₂ itself (tag 1).

mod action;
mod checks;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lab::{Domain, LabError};
use crate::lie::{contracted_bracket, Basis, Epsilon, GroupError, LieElement, LieError};
use crate::ops::{ApplyError, DiffOperator, GaussianRational};
use crate::params::{ParamError, ParamSet};
use crate::rational::{int, rat, Rational};

pub use action::{GroupAction, GroupElement};
pub use checks::{
    linkage_check, unitarity_check, LinkageReport, LinkageRow, UnitarityReport,
    DEFAULT_LINKAGE_STEPS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("family {0} has no group-level action in the catalog")]
    NoGroupForm(Family),
    #[error("family {family} acts through {expected}, got a different group element")]
    WrongGroup { family: Family, expected: &'static str },
    #[error("cannot multiply elements of different groups")]
    MixedGroups,
    #[error("Möbius denominator cx + a vanishes at x = {0}")]
    SingularMobius(f64),
    #[error("x = 0 is outside the punctured line")]
    Origin,
    #[error("transformed support is unbounded")]
    UnboundedSupport,
    #[error("test function lives on the {found}, family acts on the {expected}")]
    DomainMismatch { expected: Domain, found: Domain },
    #[error("invalid step schedule: {0}")]
    Schedule(&'static str),
    #[error(transparent)]
    Apply(#[from] ApplyError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lab(#[from] LabError),
}

/// Stable family identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Characters `sgn(a)^σ |a|^{iλ}` of M₂, trivial on R².
    Eta00Scalar,
    /// The infinite-dimensional representation of M₂ on `L²(R*, dx/|x|)`.
    Eta00,
    /// Orbit of `χ_(1,0)`.
    Eta10,
    /// Orbit of `χ_(0,β)`, on `L²(R, dx)`.
    Eta0Beta,
    /// `|det|^{iμ}` of GL₂(R).
    PiMu,
    /// Discrete series in the Kirillov model, twisted by `diag(q, 1)`.
    DiscreteKirillov,
    /// Principal series twisted by inverse transpose and extended by `|det|^{1/2+iμ}`.
    PrincipalTilde,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Eta00Scalar,
        Family::Eta00,
        Family::Eta10,
        Family::Eta0Beta,
        Family::PiMu,
        Family::DiscreteKirillov,
        Family::PrincipalTilde,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Eta00Scalar => "eta00scalar",
            Family::Eta00 => "eta00",
            Family::Eta10 => "eta10",
            Family::Eta0Beta => "eta0beta",
            Family::PiMu => "piMu",
            Family::DiscreteKirillov => "discreteKirillov",
            Family::PrincipalTilde => "principalTilde",
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            Family::Eta00Scalar | Family::PiMu => Domain::Singleton,
            Family::Eta00 | Family::Eta10 | Family::DiscreteKirillov => Domain::PuncturedLine,
            Family::Eta0Beta | Family::PrincipalTilde => Domain::Line,
        }
    }

    pub fn tag(self) -> BracketTag {
        match self {
            Family::PiMu | Family::DiscreteKirillov | Family::PrincipalTilde => BracketTag::Full,
            _ => BracketTag::Contracted,
        }
    }

    /// Whether the family is a representation of GL₂(R) rather than R²⋊M₂.
    pub fn is_gl2(self) -> bool {
        self.tag() == BracketTag::Full
    }

    pub fn has_group_form(self) -> bool {
        self != Family::DiscreteKirillov
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

/// Which bracket an [`AlgebraRep`] is a homomorphism for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketTag {
    /// `[,]_0`, the algebra R²⋊m₂.
    Contracted,
    /// `[,]_1`, gl₂ itself.
    Full,
}

impl BracketTag {
    pub fn epsilon(self) -> Epsilon {
        match self {
            BracketTag::Contracted => Epsilon::zero(),
            BracketTag::Full => Epsilon::one(),
        }
    }
}

/// Admissible parameters, one variant per family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepParams {
    Eta00Scalar { lambda: Rational, sigma: u8 },
    Eta00,
    Eta10 { lambda: Rational },
    Eta0Beta { lambda: Rational, sigma: u8, beta: Rational },
    PiMu { mu: Rational },
    DiscreteKirillov { n: u32, q: Rational },
    PrincipalTilde { sigma: u8, nu: Rational, mu: Rational },
}

impl RepParams {
    pub fn family(&self) -> Family {
        match self {
            RepParams::Eta00Scalar { .. } => Family::Eta00Scalar,
            RepParams::Eta00 => Family::Eta00,
            RepParams::Eta10 { .. } => Family::Eta10,
            RepParams::Eta0Beta { .. } => Family::Eta0Beta,
            RepParams::PiMu { .. } => Family::PiMu,
            RepParams::DiscreteKirillov { .. } => Family::DiscreteKirillov,
            RepParams::PrincipalTilde { .. } => Family::PrincipalTilde,
        }
    }

    /// Reads the family's keys; `sigma` defaults to 0.
    pub fn from_params(family: Family, params: &ParamSet) -> Result<Self, CatalogError> {
        let mut r = params.reader(format!("family {family}"));
        let out = match family {
            Family::Eta00Scalar => RepParams::Eta00Scalar {
                lambda: r.required("lambda")?,
                sigma: r.sigma()?,
            },
            Family::Eta00 => RepParams::Eta00,
            Family::Eta10 => RepParams::Eta10 {
                lambda: r.required("lambda")?,
            },
            Family::Eta0Beta => RepParams::Eta0Beta {
                lambda: r.required("lambda")?,
                sigma: r.sigma()?,
                beta: r.nonzero("beta")?,
            },
            Family::PiMu => RepParams::PiMu {
                mu: r.required("mu")?,
            },
            Family::DiscreteKirillov => RepParams::DiscreteKirillov {
                n: r.integer_above("n", 1)?,
                q: r.nonzero("q")?,
            },
            Family::PrincipalTilde => RepParams::PrincipalTilde {
                sigma: r.sigma()?,
                nu: r.required("nu")?,
                mu: r.required("mu")?,
            },
        };
        r.finish()?;
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let ctx = || format!("family {}", self.family());
        let bad = |key: &str, reason: &str| {
            CatalogError::Params(ParamError::Inadmissible {
                key: key.to_string(),
                context: ctx(),
                reason: reason.to_string(),
            })
        };
        match self {
            RepParams::Eta00Scalar { sigma, .. }
            | RepParams::Eta0Beta { sigma, .. }
            | RepParams::PrincipalTilde { sigma, .. }
                if *sigma > 1 =>
            {
                Err(bad("sigma", "must be 0 or 1"))
            }
            RepParams::Eta0Beta { beta, .. } if beta.is_zero() => Err(bad("beta", "must be nonzero")),
            RepParams::DiscreteKirillov { n, .. } if *n < 2 => {
                Err(bad("n", "must be an integer greater than 1"))
            }
            RepParams::DiscreteKirillov { q, .. } if q.is_zero() => Err(bad("q", "must be nonzero")),
            _ => Ok(()),
        }
    }

    pub fn sigma(&self) -> Option<u8> {
        match self {
            RepParams::Eta00Scalar { sigma, .. }
            | RepParams::Eta0Beta { sigma, .. }
            | RepParams::PrincipalTilde { sigma, .. } => Some(*sigma),
            _ => None,
        }
    }
}

/// Operator images of `e_11, e_12, e_21, e_22`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraRep {
    name: String,
    tag: BracketTag,
    domain: Domain,
    sigma: Option<u8>,
    images: [DiffOperator; 4],
}

impl AlgebraRep {
    /// `images` in the order `e_11, e_12, e_21, e_22`.
    pub fn new(name: impl Into<String>, tag: BracketTag, domain: Domain, images: [DiffOperator; 4]) -> Self {
        AlgebraRep {
            name: name.into(),
            tag,
            domain,
            sigma: None,
            images,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tag(&self) -> BracketTag {
        self.tag
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// `σ`, carried as a label only: it has no algebra-level image.
    pub fn sigma(&self) -> Option<u8> {
        self.sigma
    }

    pub fn image(&self, b: Basis) -> &DiffOperator {
        let slot = b.gl2_slot().expect("catalog representations are indexed by gl_2 units");
        &self.images[slot]
    }

    pub fn images(&self) -> impl Iterator<Item = (Basis, &DiffOperator)> {
        Basis::GL2.into_iter().zip(self.images.iter())
    }

    /// Linear extension to an arbitrary element of gl₂.
    pub fn image_of(&self, x: &LieElement) -> Result<DiffOperator, CatalogError> {
        if x.n() != 2 {
            return Err(LieError::DimensionMismatch { left: x.n(), right: 2 }.into());
        }
        Ok(x.terms().fold(DiffOperator::zero(), |acc, (b, c)| {
            &acc + &self.image(b).scale_rational(c)
        }))
    }
}

fn c(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

fn op(coeff: GaussianRational, exponent: i32, order: u32) -> DiffOperator {
    DiffOperator::term(coeff, exponent, order)
}

fn x_d() -> DiffOperator {
    op(GaussianRational::one(), 1, 1)
}

/// The catalog's operator assignment for `params`.
pub fn build_algebra_rep(params: &RepParams) -> Result<AlgebraRep, CatalogError> {
    params.validate()?;
    let zero = DiffOperator::zero;
    let i_times = |r: &Rational| GaussianRational::imag(r.clone());
    let images = match params {
        RepParams::Eta00Scalar { lambda, .. } => {
            [DiffOperator::scalar(i_times(lambda)), zero(), zero(), zero()]
        }
        RepParams::Eta00 => [x_d(), op(GaussianRational::i(), 1, 0), zero(), zero()],
        RepParams::Eta10 { lambda } => [
            x_d(),
            op(i_times(lambda), 1, 0),
            op(GaussianRational::i(), -1, 0),
            zero(),
        ],
        RepParams::Eta0Beta { lambda, beta, .. } => [
            &DiffOperator::scalar(c(rat(-1, 2), lambda.clone())) - &x_d(),
            DiffOperator::d(1),
            op(i_times(&-beta), 1, 0),
            DiffOperator::scalar(i_times(beta)),
        ],
        RepParams::PiMu { mu } => [
            DiffOperator::scalar(i_times(mu)),
            zero(),
            zero(),
            DiffOperator::scalar(i_times(mu)),
        ],
        RepParams::DiscreteKirillov { n, q } => {
            let n = int(*n as i64);
            let casimir = (&n * &n - int(1)) / (int(4) * q);
            [
                x_d(),
                op(i_times(q), 1, 0),
                &op(i_times(&-casimir), -1, 0) + &op(i_times(&(Rational::one() / q)), 1, 2),
                -x_d(),
            ]
        }
        RepParams::PrincipalTilde { nu, mu, .. } => [
            &DiffOperator::scalar(c(rat(-1, 2), mu - nu)) - &x_d(),
            DiffOperator::d(1),
            &op(c(int(-1), -nu.clone()), 1, 0) - &op(GaussianRational::one(), 2, 1),
            &DiffOperator::scalar(c(rat(1, 2), mu.clone())) + &x_d(),
        ],
    };
    let family = params.family();
    Ok(AlgebraRep {
        name: family.id().to_string(),
        tag: family.tag(),
        domain: family.domain(),
        sigma: params.sigma(),
        images,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketFailure {
    pub x: Basis,
    pub y: Basis,
    pub commutator: DiffOperator,
    pub expected: DiffOperator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketReport {
    pub name: String,
    pub checked: usize,
    pub passed: usize,
    pub first_failure: Option<BracketFailure>,
}

impl BracketReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.checked
    }
}

/// Checks `[ρ(X), ρ(Y)] = ρ([X, Y]_tag)` exactly on all 16 ordered unit pairs.
pub fn bracket_check(rep: &AlgebraRep) -> Result<BracketReport, CatalogError> {
    let eps = rep.tag.epsilon();
    let mut report = BracketReport {
        name: rep.name.clone(),
        checked: 0,
        passed: 0,
        first_failure: None,
    };
    for x in Basis::GL2 {
        for y in Basis::GL2 {
            report.checked += 1;
            let commutator = rep.image(x).commutator(rep.image(y));
            let br = contracted_bracket(&eps, &LieElement::basis(2, x)?, &LieElement::basis(2, y)?)?;
            let expected = rep.image_of(&br)?;
            if commutator == expected {
                report.passed += 1;
            } else if report.first_failure.is_none() {
                report.first_failure = Some(BracketFailure {
                    x,
                    y,
                    commutator,
                    expected,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn imag(r: Rational) -> GaussianRational {
        GaussianRational::imag(r)
    }

    #[test]
    fn eta10_images() {
        let rep = build_algebra_rep(&RepParams::Eta10 { lambda: int(2) }).unwrap();
        assert_eq!(rep.image(Basis::E21), &op(GaussianRational::i(), -1, 0));
        assert_eq!(rep.image(Basis::E12), &op(imag(int(2)), 1, 0));
        assert_eq!(rep.tag(), BracketTag::Contracted);
    }

    #[test]
    fn eta0beta_images() {
        let rep = build_algebra_rep(&RepParams::Eta0Beta {
            lambda: int(0),
            sigma: 0,
            beta: int(1),
        })
        .unwrap();
        let want = &DiffOperator::scalar(GaussianRational::real(rat(-1, 2))) - &x_d();
        assert_eq!(rep.image(Basis::E11), &want);
        assert_eq!(rep.image(Basis::E22), &DiffOperator::scalar(GaussianRational::i()));
    }

    #[test]
    fn discrete_series_images() {
        let rep = build_algebra_rep(&RepParams::DiscreteKirillov { n: 2, q: int(1) }).unwrap();
        let want = &op(imag(rat(-3, 4)), -1, 0) + &op(GaussianRational::i(), 1, 2);
        assert_eq!(rep.image(Basis::E21), &want);
        // scalar matrices act trivially
        assert!((rep.image(Basis::E11) + rep.image(Basis::E22)).is_zero());
    }

    #[test]
    fn admissibility() {
        let bad = [
            RepParams::Eta0Beta { lambda: int(0), sigma: 0, beta: int(0) },
            RepParams::DiscreteKirillov { n: 1, q: int(1) },
            RepParams::DiscreteKirillov { n: 3, q: int(0) },
            RepParams::PrincipalTilde { sigma: 2, nu: int(0), mu: int(0) },
        ];
        for p in bad {
            assert!(matches!(build_algebra_rep(&p), Err(CatalogError::Params(_))), "{p:?}");
        }
        let p = ParamSet::parse("lambda=1").unwrap();
        assert!(RepParams::from_params(Family::Eta0Beta, &p).is_err());
        let p = ParamSet::parse("n=3,q=-2/5").unwrap();
        assert_eq!(
            RepParams::from_params(Family::DiscreteKirillov, &p).unwrap(),
            RepParams::DiscreteKirillov { n: 3, q: rat(-2, 5) }
        );
    }

    #[test]
    fn bracket_check_examples() {
        let rep = build_algebra_rep(&RepParams::Eta10 { lambda: rat(3, 7) }).unwrap();
        let r = bracket_check(&rep).unwrap();
        assert_eq!((r.checked, r.passed), (16, 16));

        let rep = build_algebra_rep(&RepParams::PrincipalTilde {
            sigma: 1,
            nu: rat(1, 3),
            mu: rat(2, 7),
        })
        .unwrap();
        let comm = rep.image(Basis::E12).commutator(rep.image(Basis::E21));
        let want = &op(c(int(-1), rat(-1, 3)), 0, 0) - &x_d().scale_rational(&int(2));
        assert_eq!(comm, want);
        assert!(bracket_check(&rep).unwrap().all_passed());

        let rep = build_algebra_rep(&RepParams::PiMu { mu: rat(5, 3) }).unwrap();
        assert!(bracket_check(&rep).unwrap().all_passed());
    }

    #[test]
    fn wrong_tag_is_detected() {
        let rep = build_algebra_rep(&RepParams::Eta10 { lambda: int(1) }).unwrap();
        let swapped = AlgebraRep::new("eta10-as-gl2", BracketTag::Full, rep.domain(), rep.images.clone());
        let r = bracket_check(&swapped).unwrap();
        assert!(!r.all_passed());
        assert!(r.first_failure.is_some());
    }

    #[test]
    fn family_ids_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.id().parse::<Family>().unwrap(), f);
        }
        assert!("etaXY".parse::<Family>().is_err());
    }
}
