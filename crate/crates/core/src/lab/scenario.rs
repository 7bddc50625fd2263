//! Contraction scenarios and their exact defect operators.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::{sup_on_grid, Domain, Quadrature, ScenarioError, TestFunction, SUP_GRID_POINTS};
use crate::catalog::{build_algebra_rep, AlgebraRep, BracketTag, RepParams};
use crate::lie::{contraction_map, Basis, Epsilon, LieElement};
use crate::ops::{DiffOperator, GaussianRational};
use crate::params::ParamSet;
use crate::rational::{int, inverse_power_of_ten, rat, to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScenarioId {
    /// Constant family `dπ_λ` contracting to the character `dη^{λ,σ}_(0,0)`.
    Prop1,
    /// Constant principal-series family contracting to its restriction to `m₂`.
    Lemma1Principal,
    /// Discrete series `dD^{n,λ}` along `ε_n = −4λ/n²`, target `dη^λ_(1,0)`.
    Prop3,
    /// Discrete series `dD^{n,1/n}` along `ε_n = −4/n³`, target `dη^0_(1,0)`.
    Prop4,
    /// `dP̃^{σ, β/ε, λ+β/ε}` contracting to `dη^{λ,σ}_(0,β)`.
    Prop5,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 5] = [
        ScenarioId::Prop1,
        ScenarioId::Lemma1Principal,
        ScenarioId::Prop3,
        ScenarioId::Prop4,
        ScenarioId::Prop5,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ScenarioId::Prop1 => "prop1",
            ScenarioId::Lemma1Principal => "lemma1-principal",
            ScenarioId::Prop3 => "prop3",
            ScenarioId::Prop4 => "prop4",
            ScenarioId::Prop5 => "prop5",
        }
    }

    /// Whether the schedule is indexed by an integer `n` rather than given by `ε` directly.
    pub fn is_sequence(self) -> bool {
        matches!(self, ScenarioId::Prop3 | ScenarioId::Prop4)
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ScenarioId {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.id() == s)
            .ok_or_else(|| ScenarioError::UnknownScenario(s.to_string()))
    }
}

/// One schedule entry: the exact `ε`, plus `n` for sequence scenarios.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulePoint {
    pub epsilon: Rational,
    pub index: Option<u32>,
}

/// How the family member at a schedule point is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyRule {
    /// The same representation at every `ε`.
    Constant(RepParams),
    /// `dD^{n,q}` with `q = λ` fixed, or `q = 1/n` when `lambda` is `None`.
    DiscreteSeries { lambda: Option<Rational> },
    /// `dP̃^{σ, β/ε, λ+β/ε}`.
    RescaledPrincipal { sigma: u8, lambda: Rational, beta: Rational },
}

/// Closed-form defect `scale · shape`, derived by hand for each scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub scale: Rational,
    pub shape: DiffOperator,
}

impl Prediction {
    fn zero() -> Self {
        Prediction {
            scale: Rational::zero(),
            shape: DiffOperator::zero(),
        }
    }

    pub fn operator(&self) -> DiffOperator {
        self.shape.scale_rational(&self.scale)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionScenario {
    id: ScenarioId,
    params: ParamSet,
    rule: FamilyRule,
    target: AlgebraRep,
    schedule: Vec<SchedulePoint>,
}

/// Wires `id` with its parameters and default schedule.
pub fn build_scenario(id: ScenarioId, params: &ParamSet) -> Result<ContractionScenario, ScenarioError> {
    let mut r = params.reader(format!("scenario {id}"));
    let (rule, target) = match id {
        ScenarioId::Prop1 => {
            let lambda = r.required("lambda")?;
            let sigma = r.sigma()?;
            let target = build_algebra_rep(&RepParams::Eta00Scalar {
                lambda: lambda.clone(),
                sigma,
            })?;
            (FamilyRule::Constant(RepParams::PiMu { mu: lambda }), target)
        }
        ScenarioId::Lemma1Principal => {
            let family = RepParams::PrincipalTilde {
                sigma: r.sigma()?,
                nu: r.required("nu")?,
                mu: r.required("mu")?,
            };
            let full = build_algebra_rep(&family)?;
            let images = [
                full.image(Basis::E11).clone(),
                full.image(Basis::E12).clone(),
                DiffOperator::zero(),
                DiffOperator::zero(),
            ];
            let target = AlgebraRep::new("principalTilde|m2", BracketTag::Contracted, Domain::Line, images);
            (FamilyRule::Constant(family), target)
        }
        ScenarioId::Prop3 => {
            let lambda = r.nonzero("lambda")?;
            let target = build_algebra_rep(&RepParams::Eta10 { lambda: lambda.clone() })?;
            (FamilyRule::DiscreteSeries { lambda: Some(lambda) }, target)
        }
        ScenarioId::Prop4 => {
            let target = build_algebra_rep(&RepParams::Eta10 { lambda: Rational::zero() })?;
            (FamilyRule::DiscreteSeries { lambda: None }, target)
        }
        ScenarioId::Prop5 => {
            let lambda = r.required("lambda")?;
            let sigma = r.sigma()?;
            let beta = r.nonzero("beta")?;
            let target = build_algebra_rep(&RepParams::Eta0Beta {
                lambda: lambda.clone(),
                sigma,
                beta: beta.clone(),
            })?;
            (FamilyRule::RescaledPrincipal { sigma, lambda, beta }, target)
        }
    };
    r.finish()?;
    let mut scenario = ContractionScenario {
        id,
        params: params.clone(),
        rule,
        target,
        schedule: Vec::new(),
    };
    scenario.schedule = if id.is_sequence() {
        scenario.sequence_points(&[4, 8, 16, 32, 64])
    } else {
        (1..=5).map(|k| SchedulePoint { epsilon: inverse_power_of_ten(k), index: None }).collect()
    };
    Ok(scenario)
}

impl ContractionScenario {
    pub fn id(&self) -> ScenarioId {
        self.id
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn rule(&self) -> &FamilyRule {
        &self.rule
    }

    pub fn target(&self) -> &AlgebraRep {
        &self.target
    }

    pub fn domain(&self) -> Domain {
        self.target.domain()
    }

    pub fn schedule(&self) -> &[SchedulePoint] {
        &self.schedule
    }

    /// `ε_n` of a sequence scenario.
    pub fn sequence_epsilon(&self, n: u32) -> Option<Rational> {
        let n = int(n as i64);
        match &self.rule {
            FamilyRule::DiscreteSeries { lambda: Some(l) } => Some(int(-4) * l / (&n * &n)),
            FamilyRule::DiscreteSeries { lambda: None } => Some(int(-4) / (&n * &n * &n)),
            _ => None,
        }
    }

    fn sequence_points(&self, ns: &[u32]) -> Vec<SchedulePoint> {
        ns.iter()
            .map(|&n| SchedulePoint {
                epsilon: self.sequence_epsilon(n).expect("sequence scenario"),
                index: Some(n),
            })
            .collect()
    }

    /// Replaces the schedule: values are `ε` for continuous scenarios and `n` for sequences.
    pub fn with_schedule(mut self, values: &[Rational]) -> Result<Self, ScenarioError> {
        if values.is_empty() {
            return Err(ScenarioError::Schedule("empty".into()));
        }
        let points = if self.id.is_sequence() {
            let mut ns = Vec::with_capacity(values.len());
            for v in values {
                let n = v
                    .is_integer()
                    .then(|| num_traits::ToPrimitive::to_u32(&v.to_integer()))
                    .flatten()
                    .filter(|n| *n > 1)
                    .ok_or_else(|| ScenarioError::Schedule(format!("`{v}` is not an integer n > 1")))?;
                ns.push(n);
            }
            self.sequence_points(&ns)
        } else {
            if let Some(v) = values.iter().find(|v| v.is_zero()) {
                return Err(ScenarioError::Schedule(format!("`{v}` is not a nonzero epsilon")));
            }
            values
                .iter()
                .map(|v| SchedulePoint { epsilon: v.clone(), index: None })
                .collect()
        };
        if points.windows(2).any(|w| w[1].epsilon.abs() >= w[0].epsilon.abs()) {
            return Err(ScenarioError::Schedule("|epsilon| must be strictly decreasing".into()));
        }
        self.schedule = points;
        Ok(self)
    }

    /// `π_ε` at a schedule point.
    pub fn family_at(&self, point: &SchedulePoint) -> Result<AlgebraRep, ScenarioError> {
        let params = match &self.rule {
            FamilyRule::Constant(p) => p.clone(),
            FamilyRule::DiscreteSeries { lambda } => {
                let n = point
                    .index
                    .ok_or_else(|| ScenarioError::Schedule("sequence point without n".into()))?;
                let q = lambda.clone().unwrap_or_else(|| rat(1, n as i64));
                RepParams::DiscreteKirillov { n, q }
            }
            FamilyRule::RescaledPrincipal { sigma, lambda, beta } => {
                let nu = beta / &point.epsilon;
                RepParams::PrincipalTilde {
                    sigma: *sigma,
                    mu: lambda + &nu,
                    nu,
                }
            }
        };
        Ok(build_algebra_rep(&params)?)
    }

    /// `π_ε(t_ε Y) − π_0(Y)`, exact.
    pub fn defect_operator(&self, point: &SchedulePoint, y: Basis) -> Result<DiffOperator, ScenarioError> {
        let family = self.family_at(point)?;
        let scaled = contraction_map(&Epsilon(point.epsilon.clone()), &LieElement::basis(2, y)?, false)?;
        Ok(&family.image_of(&scaled)? - self.target.image(y))
    }

    /// The hand-derived closed form of the defect operator.
    pub fn prediction(&self, point: &SchedulePoint, y: Basis) -> Prediction {
        let eps = &point.epsilon;
        let i = GaussianRational::i;
        let real = |r: Rational| GaussianRational::real(r);
        let x_d = || DiffOperator::term(GaussianRational::one(), 1, 1);
        let n = point.index.map(|n| int(n as i64));
        let with = |scale: Rational, shape: DiffOperator| Prediction { scale, shape };
        // −i(x⁻¹ + 4x∂²), common to both discrete-series scenarios.
        let kirillov_e21 = || {
            DiffOperator::from_terms([(-i(), -1, 0), (i().scale(&int(-4)), 1, 2)])
        };
        match (&self.rule, self.id, y) {
            (FamilyRule::Constant(RepParams::PiMu { mu }), _, Basis::E22) => {
                with(eps.clone(), DiffOperator::scalar(GaussianRational::imag(mu.clone())))
            }
            (FamilyRule::Constant(RepParams::PrincipalTilde { nu, .. }), _, Basis::E21) => with(
                eps.clone(),
                DiffOperator::from_terms([
                    (GaussianRational::new(int(-1), -nu.clone()), 1, 0),
                    (real(int(-1)), 2, 1),
                ]),
            ),
            (FamilyRule::Constant(RepParams::PrincipalTilde { mu, .. }), _, Basis::E22) => with(
                eps.clone(),
                &DiffOperator::scalar(GaussianRational::new(rat(1, 2), mu.clone())) + &x_d(),
            ),
            (FamilyRule::DiscreteSeries { .. }, ScenarioId::Prop3, Basis::E21)
            | (FamilyRule::DiscreteSeries { .. }, ScenarioId::Prop4, Basis::E21) => {
                let n = n.expect("sequence point");
                with(Rational::one() / (&n * &n), kirillov_e21())
            }
            (FamilyRule::DiscreteSeries { lambda: Some(l) }, _, Basis::E22) => {
                let n = n.expect("sequence point");
                with(int(4) * l / (&n * &n), x_d())
            }
            (FamilyRule::DiscreteSeries { lambda: None }, _, Basis::E12) => {
                let n = n.expect("sequence point");
                with(Rational::one() / &n, DiffOperator::term(i(), 1, 0))
            }
            (FamilyRule::DiscreteSeries { lambda: None }, _, Basis::E22) => {
                let n = n.expect("sequence point");
                with(int(4) / (&n * &n * &n), x_d())
            }
            (FamilyRule::RescaledPrincipal { .. }, _, Basis::E21) => with(
                eps.clone(),
                DiffOperator::from_terms([(real(int(-1)), 1, 0), (real(int(-1)), 2, 1)]),
            ),
            (FamilyRule::RescaledPrincipal { lambda, .. }, _, Basis::E22) => with(
                eps.clone(),
                &DiffOperator::scalar(GaussianRational::new(rat(1, 2), lambda.clone())) + &x_d(),
            ),
            _ => Prediction::zero(),
        }
    }
}

/// Measured defect of one `(ε, Y, f)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Defect {
    pub operator: DiffOperator,
    /// `‖D_ε f‖` in the scenario's L² space.
    pub l2: f64,
    /// `max |D_ε f|` over the sup grid on the support of `f`.
    pub sup: f64,
    /// `|scale| · ‖shape f‖` from the closed-form prediction.
    pub predicted_l2: f64,
}

fn norm_of(op: &DiffOperator, f: &TestFunction, quad: &Quadrature) -> Result<(f64, f64), ScenarioError> {
    if op.is_zero() {
        return Ok((0.0, 0.0));
    }
    let mut failure = None;
    let mut eval = |x: f64| match op.apply(f, x) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            Complex64::new(f64::NAN, 0.0)
        }
    };
    let l2 = quad.l2_norm(&mut eval, f.support(), f.domain())?;
    let sup = sup_on_grid(&mut eval, f.support(), f.domain(), SUP_GRID_POINTS)?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok((l2, sup)),
    }
}

pub fn defect(
    scenario: &ContractionScenario,
    point: &SchedulePoint,
    y: Basis,
    f: &TestFunction,
    quad: &Quadrature,
) -> Result<Defect, ScenarioError> {
    if f.domain() != scenario.domain() {
        return Err(super::LabError::DomainMismatch {
            expected: scenario.domain(),
            found: f.domain(),
        }
        .into());
    }
    let operator = scenario.defect_operator(point, y)?;
    let (l2, sup) = norm_of(&operator, f, quad)?;
    let prediction = scenario.prediction(point, y);
    let (shape_l2, _) = norm_of(&prediction.shape, f, quad)?;
    Ok(Defect {
        operator,
        l2,
        sup,
        predicted_l2: to_f64(&prediction.scale.abs()) * shape_l2,
    })
}
