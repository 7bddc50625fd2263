mod common;

use mirabolic::catalog::{bracket_check, build_algebra_rep, GroupAction, GroupElement, RepParams};
use mirabolic::lab::{
    build_scenario, default_test_set, sweep, Domain, Interval, Quadrature, QuadratureSettings, ScenarioId,
};
use mirabolic::lie::{
    contracted_bracket, contraction_map, standard_bracket, Basis, ContractionSplit, Epsilon, LieElement, Matrix,
    MirabolicElement,
};
use mirabolic::ops::{DiffOperator, GaussianRational, LaurentPolynomial};
use mirabolic::params::ParamSet;
use mirabolic::rational::{rat, to_f64, Rational};
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn operator() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec((gaussian(), -2i32..=3, 0u32..=2), 0..=3).prop_map(DiffOperator::from_terms)
}

fn multiplication() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec((gaussian(), -2i32..=3), 0..=3)
        .prop_map(|t| DiffOperator::from_terms(t.into_iter().map(|(c, a)| (c, a, 0))))
}

fn lie_element(n: usize) -> impl Strategy<Value = LieElement> {
    prop::collection::vec(rational(), n * n).prop_map(move |cs| {
        let terms = Basis::all(n).zip(cs);
        LieElement::from_terms(n, terms).unwrap()
    })
}

fn sized_element() -> impl Strategy<Value = (LieElement, LieElement, LieElement)> {
    (2usize..=4).prop_flat_map(|n| (lie_element(n), lie_element(n), lie_element(n)))
}

fn mirabolic(n: usize) -> impl Strategy<Value = MirabolicElement<Rational>> {
    (prop::collection::vec(rational(), n), prop::collection::vec(rational(), n * (n - 1))).prop_filter_map(
        "invertible",
        move |(v, top)| {
            let mut rows = top;
            rows.extend((0..n).map(|j| if j + 1 == n { Rational::one() } else { Rational::zero() }));
            MirabolicElement::new(v, Matrix::from_rows(n, rows).ok()?).ok()
        },
    )
}

fn mirabolic_triple() -> impl Strategy<Value = [MirabolicElement<Rational>; 3]> {
    (2usize..=3).prop_flat_map(|n| [mirabolic(n), mirabolic(n), mirabolic(n)])
}

fn catalog_params() -> impl Strategy<Value = RepParams> {
    prop_oneof![
        (rational(), 0u8..=1).prop_map(|(lambda, sigma)| RepParams::Eta00Scalar { lambda, sigma }),
        Just(RepParams::Eta00),
        rational().prop_map(|lambda| RepParams::Eta10 { lambda }),
        (rational(), 0u8..=1, nonzero_rational())
            .prop_map(|(lambda, sigma, beta)| RepParams::Eta0Beta { lambda, sigma, beta }),
        rational().prop_map(|mu| RepParams::PiMu { mu }),
        (2u32..=9, nonzero_rational()).prop_map(|(n, q)| RepParams::DiscreteKirillov { n, q }),
        (0u8..=1, rational(), rational()).prop_map(|(sigma, nu, mu)| RepParams::PrincipalTilde { sigma, nu, mu }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(a.compose(&b.compose(&c)), a.compose(&b).compose(&c));
    }

    #[test]
    fn commutator_is_a_lie_bracket(a in operator(), b in operator(), c in operator(), s in gaussian()) {
        prop_assert_eq!(a.commutator(&b), -b.commutator(&a));
        let lhs = (&a + &b.scale(&s)).commutator(&c);
        prop_assert_eq!(lhs, &a.commutator(&c) + &b.commutator(&c).scale(&s));
        let jacobi = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a)))
            + &c.commutator(&a.commutator(&b));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn composition_matches_functional_composition(a in operator(), b in operator(), p in -4i32..=6) {
        let m = LaurentPolynomial::monomial(p);
        prop_assert_eq!(a.compose(&b).act(&m), a.act(&b.act(&m)));
    }

    #[test]
    fn euler_operator_grades_monomials(c in gaussian(), a in -3i32..=4, k in 0u32..=3) {
        let x_d = DiffOperator::term(GaussianRational::one(), 1, 1);
        let t = DiffOperator::term(c, a, k);
        prop_assert_eq!(x_d.commutator(&t), t.scale_rational(&rat((a - k as i32) as i64, 1)));
    }

    #[test]
    fn multiplication_operators_commute(a in multiplication(), b in multiplication()) {
        prop_assert!(a.commutator(&b).is_zero());
    }

    #[test]
    fn structure_constants_are_affine((x, y, _) in sized_element(), e in rational()) {
        let at = |v: Rational| contracted_bracket(&Epsilon(v), &x, &y).unwrap();
        let (b0, b1) = (at(Rational::zero()), at(Rational::one()));
        let affine = b0.try_add(&b1.try_sub(&b0).unwrap().scale(&e)).unwrap();
        prop_assert_eq!(at(e.clone()), affine);
        prop_assert_eq!(b1, standard_bracket(&x, &y).unwrap());
    }

    #[test]
    fn contraction_map_inverts((x, _, _) in sized_element(), e in nonzero_rational()) {
        let eps = Epsilon(e);
        let there = contraction_map(&eps, &x, false).unwrap();
        prop_assert_eq!(contraction_map(&eps, &there, true).unwrap(), x);
    }

    #[test]
    fn complement_is_an_abelian_ideal(n in 2usize..=4) {
        let split = ContractionSplit::new(n).unwrap();
        let zero = Epsilon::zero();
        for s in split.complement() {
            let es = LieElement::basis(n, s).unwrap();
            for t in split.complement() {
                let br = contracted_bracket(&zero, &es, &LieElement::basis(n, t).unwrap()).unwrap();
                prop_assert!(br.is_zero());
            }
            for k in split.subalgebra() {
                let br = contracted_bracket(&zero, &LieElement::basis(n, k).unwrap(), &es).unwrap();
                prop_assert!(br.terms().all(|(b, _)| split.in_complement(b)));
            }
        }
    }

    #[test]
    fn mirabolic_group_laws([g, h, k] in mirabolic_triple()) {
        let gh_k = g.product(&h).unwrap().product(&k).unwrap();
        let g_hk = g.product(&h.product(&k).unwrap()).unwrap();
        prop_assert_eq!(gh_k, g_hk);
        let e = MirabolicElement::<Rational>::identity(g.n());
        prop_assert_eq!(g.product(&g.inverse().unwrap()).unwrap(), e.clone());
        prop_assert_eq!(e.product(&g).unwrap(), g);
    }

    #[test]
    fn catalog_families_are_representations(p in catalog_params()) {
        let rep = build_algebra_rep(&p).unwrap();
        let report = bracket_check(&rep).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report.first_failure);
        if let RepParams::DiscreteKirillov { .. } = p {
            prop_assert!((rep.image(Basis::E11) + rep.image(Basis::E22)).is_zero());
        }
    }

    #[test]
    fn group_actions_are_homomorphisms(
        p in catalog_params().prop_filter("group form", |p| p.family().has_group_form()),
        m in prop::array::uniform8(-1.0f64..1.0),
        x in 0.3f64..0.9,
    ) {
        let family = p.family();
        let action = GroupAction::new(&p).unwrap();
        let (g, h): (GroupElement, GroupElement) = if family.is_gl2() {
            (
                mirabolic::lie::Gl2Element::new(1.0 + 0.2 * m[0], 0.2 * m[1], 0.2 * m[2], 1.0 + 0.2 * m[3]).unwrap().into(),
                mirabolic::lie::Gl2Element::new(1.0 + 0.2 * m[4], 0.2 * m[5], 0.2 * m[6], -1.0 + 0.2 * m[7]).unwrap().into(),
            )
        } else {
            (
                MirabolicElement::planar(m[0], m[1], 1.5 + m[2], m[3]).unwrap().into(),
                MirabolicElement::planar(m[4], m[5], -1.5 + m[6], m[7]).unwrap().into(),
            )
        };
        let x = match family.domain() {
            Domain::Singleton => Domain::SINGLETON_POINT,
            Domain::PuncturedLine => 1.0 + x,
            Domain::Line => x - 0.6,
        };
        let f = default_test_set(family.domain()).remove(0);
        let inner = |y: f64| action.apply_test(&h, &f, y).unwrap();
        let nested = action.apply(&g, inner, x).unwrap();
        let direct = action.apply_test(&g.product(&h).unwrap(), &f, x).unwrap();
        prop_assert!((nested - direct).norm() <= 1e-12);
    }

    #[test]
    fn l2_norm_is_homogeneous(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let c = Complex64::new(re, im);
        let b = common::Bump { lo: 1.0, hi: 2.0 };
        let q = Quadrature::default();
        let w = Interval::new(1.0, 2.0).unwrap();
        let g = |x: f64| Complex64::new(b.jet(x).0, x);
        let base = q.l2_norm(g, w, Domain::PuncturedLine).unwrap();
        let scaled = q.l2_norm(|x| c * g(x), w, Domain::PuncturedLine).unwrap();
        prop_assert!((scaled - c.norm() * base).abs() <= 1e-12 * (1.0 + scaled));
    }
}

const SCENARIOS: [(ScenarioId, &str); 5] = [
    (ScenarioId::Prop1, "lambda=2/5"),
    (ScenarioId::Lemma1Principal, "sigma=0,nu=1/3,mu=2/7"),
    (ScenarioId::Prop3, "lambda=1"),
    (ScenarioId::Prop4, ""),
    (ScenarioId::Prop5, "beta=1,lambda=0,sigma=0"),
];

#[test]
fn doubling_quadrature_nodes_is_stable() {
    let base = Quadrature::default();
    let fine = Quadrature::new(QuadratureSettings::default().doubled());
    for (id, params) in SCENARIOS {
        let s = build_scenario(id, &ParamSet::parse(params).unwrap()).unwrap();
        let tests = default_test_set(s.domain());
        let a = sweep(&s, &tests, &base).unwrap();
        let b = sweep(&s, &tests, &fine).unwrap();
        for (r, t) in a.rows.iter().zip(&b.rows) {
            let gap = common::rel(r.l2_defect, t.l2_defect);
            assert!(gap <= 1e-10, "{id} {} at ε={}: {gap:e}", r.basis, r.epsilon);
        }
    }
}

#[test]
fn sup_defect_is_linear_in_epsilon() {
    let cases = [
        (ScenarioId::Prop5, "beta=1,lambda=0,sigma=0", [Basis::E21, Basis::E22]),
        (ScenarioId::Lemma1Principal, "sigma=0,nu=1/3,mu=2/7", [Basis::E21, Basis::E22]),
        (ScenarioId::Prop3, "lambda=1", [Basis::E21, Basis::E22]),
    ];
    for (id, params, ys) in cases {
        let s = build_scenario(id, &ParamSet::parse(params).unwrap()).unwrap();
        let tests = default_test_set(s.domain());
        let report = sweep(&s, &tests, &Quadrature::default()).unwrap();
        for y in ys {
            for f in &tests {
                let ratios: Vec<f64> = report
                    .rows_for(y)
                    .filter(|r| r.testfn == f.id())
                    .map(|r| r.sup_defect / to_f64(&r.epsilon).abs())
                    .collect();
                for r in &ratios {
                    assert!(common::rel(*r, ratios[0]) <= 1e-6, "{id} {y} {}: {ratios:?}", f.id());
                }
            }
        }
    }
}
