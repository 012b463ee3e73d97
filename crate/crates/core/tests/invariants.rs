mod common;

use proptest::prelude::*;

use common::{filiform, s};
use schouten_core::classify::{canonical_pair, classify, supported_pairs, MetricVariant, RicciOperator};
use schouten_core::constraints::{eq1_components, verify_family, FamilyParams};
use schouten_core::curvature::{CurvatureReport, Metric};
use schouten_core::lie::{constants_as_point, LieAlgebra, StructureConstants};
use schouten_core::matrix::Matrix;
use schouten_core::scalar::FieldScalar;
use schouten_core::segre::{segre_type, SegreType};

fn rational() -> impl Strategy<Value = FieldScalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| FieldScalar::from_ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = FieldScalar> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn sign() -> impl Strategy<Value = i64> {
    prop_oneof![Just(1i64), Just(-1i64)]
}

fn diagonal_metric() -> impl Strategy<Value = Metric> {
    [sign(), sign(), sign(), sign()]
        .prop_map(|e| Metric::diagonal(&e.map(FieldScalar::from_int)).unwrap())
}

fn vector() -> impl Strategy<Value = Vec<FieldScalar>> {
    proptest::collection::vec(rational(), 4)
}

/// `P` with `P^T g P = g` for the diagonal metric `g`: rational rotations in
/// definite planes and rational boosts in indefinite ones.
fn isometry(g: &Metric, i: usize, j: usize, t: &FieldScalar) -> Matrix {
    let one = FieldScalar::one();
    let t2 = t * t;
    let mut p = Matrix::identity(4);
    if g.g(i, i) == g.g(j, j) {
        let den = (&one + &t2).inv().unwrap();
        let c = &(&one - &t2) * &den;
        let sn = &(&FieldScalar::from_int(2) * t) * &den;
        p.set(i, i, c.clone());
        p.set(j, j, c);
        p.set(i, j, -&sn);
        p.set(j, i, sn);
    } else {
        let den = (&one - &t2).inv().unwrap();
        let ch = &(&one + &t2) * &den;
        let sh = &(&FieldScalar::from_int(2) * t) * &den;
        p.set(i, i, ch.clone());
        p.set(j, j, ch);
        p.set(i, j, sh.clone());
        p.set(j, i, sh);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filiform_family_satisfies_jacobi(p in rational(), q in rational(), r in rational()) {
        prop_assert!(filiform(p, q, r).is_valid());
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        p in rational(), q in rational(), r in rational(),
        x in vector(), y in vector(), z in vector(), k in rational(),
    ) {
        let g = filiform(p, q, r);
        let xy = g.bracket(&x, &y).unwrap();
        let yx = g.bracket(&y, &x).unwrap();
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
        let kx_plus_z: Vec<FieldScalar> = x.iter().zip(&z).map(|(a, b)| &(&k * a) + b).collect();
        let lhs = g.bracket(&kx_plus_z, &y).unwrap();
        let zy = g.bracket(&z, &y).unwrap();
        let rhs: Vec<FieldScalar> = xy.iter().zip(&zy).map(|(a, b)| &(&k * a) + b).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_weyl_is_divergence_of_weyl(p in rational(), q in rational(), r in rational(), g in diagonal_metric()) {
        let rep = CurvatureReport::compute(&filiform(p, q, r), &g).unwrap();
        prop_assert!(rep.identity_holds().unwrap());
        prop_assert_eq!(rep.schouten_weyl.is_zero(), rep.eq1_holds());
    }

    #[test]
    fn symbolic_equations_match_numeric_schouten_weyl(
        p in rational(), q in rational(), r in rational(), g in diagonal_metric(),
    ) {
        let alg = filiform(p, q, r);
        let rep = CurvatureReport::compute(&alg, &g).unwrap();
        let target = rep.ricci.map(|x| schouten_core::poly::MultiPoly::constant(x.clone()));
        let point = constants_as_point(alg.constants());
        for ((x, y, z), poly) in eq1_components(&g, &target) {
            let numeric = rep.schouten_weyl.get(&[x, y, z]);
            prop_assert_eq!(poly.eval(&point), &FieldScalar::from_int(2) * numeric);
        }
    }

    #[test]
    fn segre_type_survives_isometries(
        t in proptest::sample::select(supported_pairs()),
        signs in [sign(), sign(), sign(), sign()],
        moves in proptest::collection::vec((0usize..4, 0usize..4, rational()), 1..4),
    ) {
        let ty = SegreType::parse(t).unwrap();
        let signs = signs.map(|e| e as i8);
        let pair = canonical_pair(&ty, signs, MetricVariant::SignFlipped).unwrap();
        let params = [s("3"), s("-2"), s("1/2"), s("5")];
        let r = pair.ricci_at(&params);
        let g = pair.metric.clone();
        let base = segre_type(RicciOperator::new(&r, &g).unwrap().matrix()).unwrap();
        prop_assert_eq!(&base, &ty);
        // only diagonal metrics get the rotation/boost construction
        let diagonal = (0..4).all(|i| (0..4).all(|j| i == j || g.g(i, j).is_zero()));
        prop_assume!(diagonal);
        let mut r2 = r.clone();
        for (i, j, t) in moves {
            if i == j || (t.abs() == FieldScalar::one()) {
                continue;
            }
            let p = isometry(&g, i, j, &t);
            prop_assert_eq!(p.transpose().mul(g.matrix()).mul(&p), g.matrix().clone());
            r2 = p.transpose().mul(&r2).mul(&p);
        }
        prop_assert_eq!(segre_type(RicciOperator::new(&r2, &g).unwrap().matrix()).unwrap(), base);
    }

    #[test]
    fn segre_type_survives_change_of_basis(
        t in proptest::sample::select(supported_pairs()),
        signs in [sign(), sign(), sign(), sign()],
        upper in proptest::collection::vec(rational(), 6),
    ) {
        let ty = SegreType::parse(t).unwrap();
        let pair = canonical_pair(&ty, signs.map(|e| e as i8), MetricVariant::SignFlipped).unwrap();
        let r = pair.ricci_at(&[s("3"), s("-2"), s("1/2"), s("5")]);
        let mut q = Matrix::identity(4);
        let mut it = upper.into_iter();
        for i in 0..4 {
            for j in i + 1..4 {
                q.set(i, j, it.next().unwrap());
            }
        }
        let g2 = Metric::new(q.transpose().mul(pair.metric.matrix()).mul(&q)).unwrap();
        let r2 = q.transpose().mul(&r).mul(&q);
        prop_assert_eq!(segre_type(RicciOperator::new(&r2, &g2).unwrap().matrix()).unwrap(), ty);
    }

    #[test]
    fn family_is_a_ray(a in nonzero_rational(), delta in sign(), e2 in sign(), e3 in sign()) {
        let base = FamilyParams { a: a.clone(), delta: delta as i8, eps1: 1, eps2: e2 as i8, eps3: e3 as i8, variant: MetricVariant::SignFlipped };
        let rep = verify_family(&base).unwrap();
        for scaled in [-&a, &FieldScalar::from_int(2) * &a] {
            let other = verify_family(&FamilyParams { a: scaled.clone(), ..base.clone() }).unwrap();
            prop_assert_eq!(other.classification.predicates, rep.classification.predicates);
            prop_assert_eq!(other.segre(), rep.segre());
            prop_assert_eq!((other.jacobi_ok(), other.ricci_matches, other.eigen_matches), (true, true, true));
            let ratio = (&scaled * &scaled).checked_div(&(&a * &a)).unwrap();
            for k in 0..4 {
                prop_assert_eq!(&other.expected[k], &(&ratio * &rep.expected[k]));
            }
        }
    }
}

#[test]
fn classification_is_coherent_on_the_corpus() {
    for m in common::corpus() {
        for g in &m.metrics {
            let rep = CurvatureReport::compute(&m.algebra, g).unwrap();
            let c = classify(&rep, g, m.radicand).unwrap();
            assert!(c.ricci_operator.is_self_adjoint(g), "{}", m.name);
            if c.predicates.einstein {
                assert!(c.spectrum.segre == SegreType::parse("{(1111)}").unwrap(), "{}", m.name);
            }
        }
    }
}

#[test]
fn jacobi_violations_are_rejected_by_the_pipeline() {
    let mut c = StructureConstants::zero(4);
    c.set(0, 1, 2, s("1")).unwrap();
    c.set(0, 2, 0, s("1")).unwrap();
    let bad = LieAlgebra::new(c);
    assert!(CurvatureReport::compute(&bad, &Metric::identity(4)).is_err());
}
