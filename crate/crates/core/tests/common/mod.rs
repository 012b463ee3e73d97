#![allow(dead_code)]

pub mod displays;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schouten_core::classify::MetricVariant;
use schouten_core::constraints::{family_algebra, family_metric, FamilyParams};
use schouten_core::curvature::Metric;
use schouten_core::lie::LieAlgebra;
use schouten_core::matrix::Matrix;
use schouten_core::scalar::FieldScalar;

pub fn s(x: &str) -> FieldScalar {
    x.parse().unwrap()
}

pub struct Member {
    pub name: String,
    pub algebra: LieAlgebra,
    pub metrics: Vec<Metric>,
    pub radicand: u64,
}

fn diag(signs: [i64; 4]) -> Metric {
    Metric::diagonal(&signs.map(FieldScalar::from_int)).unwrap()
}

/// Riemannian, Lorentzian, neutral and a non-diagonal Lorentzian metric.
pub fn standard_metrics() -> Vec<Metric> {
    let hyperbolic = Matrix::from_rows(vec![
        vec![s("0"), s("1"), s("0"), s("0")],
        vec![s("1"), s("0"), s("0"), s("0")],
        vec![s("0"), s("0"), s("2"), s("1/2")],
        vec![s("0"), s("0"), s("1/2"), s("1")],
    ])
    .unwrap();
    vec![diag([1, 1, 1, 1]), diag([1, 1, 1, -1]), diag([1, -1, 1, -1]), Metric::new(hyperbolic).unwrap()]
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> FieldScalar {
    let num = loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            break n;
        }
    };
    FieldScalar::from_ratio(num, rng.gen_range(1..=5))
}

/// `[e1,e2] = p e3`, `[e1,e3] = q e4`, `[e2,e3] = r e4`.
pub fn filiform(p: FieldScalar, q: FieldScalar, r: FieldScalar) -> LieAlgebra {
    LieAlgebra::from_entries(4, &[(1, 2, 3, p), (1, 3, 4, q), (2, 3, 4, r)]).unwrap()
}

pub fn family_points() -> Vec<FamilyParams> {
    let raw = [
        ("1", 1, 1, 1, 1),
        ("1", -1, 1, 1, 1),
        ("1/2", 1, -1, 1, 1),
        ("2", -1, 1, -1, 1),
        ("-1", 1, 1, 1, -1),
        ("3", 1, -1, -1, 1),
        ("-2/3", -1, 1, 1, -1),
        ("5/4", 1, -1, -1, -1),
    ];
    raw.iter()
        .map(|&(a, delta, e1, e2, e3)| FamilyParams {
            a: s(a),
            delta,
            eps1: e1,
            eps2: e2,
            eps3: e3,
            variant: MetricVariant::SignFlipped,
        })
        .collect()
}

/// At least 30 Jacobi-valid algebras, each with metrics of two or more
/// signatures.
pub fn corpus() -> Vec<Member> {
    let mut out = Vec::new();
    out.push(Member { name: "abelian".into(), algebra: LieAlgebra::abelian(4), metrics: standard_metrics(), radicand: 1 });
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..20 {
        let (p, q, r) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
        let name = format!("filiform #{k} ({p}, {q}, {r})");
        let metrics = standard_metrics().into_iter().skip(k % 2).take(3).collect();
        out.push(Member { name, algebra: filiform(p, q, r), metrics, radicand: 1 });
    }
    let round = LieAlgebra::from_entries(4, &[(1, 2, 3, s("1")), (2, 3, 1, s("1")), (1, 3, 2, s("-1"))]).unwrap();
    out.push(Member { name: "su(2) + R".into(), algebra: round, metrics: standard_metrics(), radicand: 1 });
    let hyperbolic =
        LieAlgebra::from_entries(4, &[(1, 2, 2, s("1")), (1, 3, 3, s("1")), (1, 4, 4, s("1"))]).unwrap();
    out.push(Member { name: "real hyperbolic".into(), algebra: hyperbolic, metrics: standard_metrics(), radicand: 1 });
    let shared = LieAlgebra::from_entries(4, &[(1, 2, 3, s("1")), (1, 3, 3, s("1"))]).unwrap();
    out.push(Member { name: "shared target".into(), algebra: shared, metrics: standard_metrics(), radicand: 1 });
    for p in family_points() {
        let own = family_metric(&p).unwrap();
        let other = family_metric(&FamilyParams { eps1: -p.eps1, ..p.clone() }).unwrap();
        out.push(Member {
            name: format!("family a={} delta={} eps=({}, {}, {})", p.a, p.delta, p.eps1, p.eps2, p.eps3),
            algebra: family_algebra(&p).unwrap(),
            metrics: vec![own, other, diag([1, 1, 1, 1])],
            radicand: 3,
        });
    }
    out
}
