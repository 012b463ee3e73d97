//! Ricci operator, canonical metric/Ricci pairs per Segre type, and the
//! Einstein / conformally flat / Ricci parallel / SW-zero predicates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::curvature::{CurvatureReport, Metric};
use crate::error::GeometryError;
use crate::matrix::Matrix;
use crate::poly::{MultiPoly, VarSet};
use crate::scalar::FieldScalar;
use crate::segre::{analyze, SegreType, SpectralData};

/// `rho = g^{-1} r`, the endomorphism associated with the Ricci tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciOperator {
    matrix: Matrix,
}

impl RicciOperator {
    pub fn new(r: &Matrix, g: &Metric) -> Result<Self, GeometryError> {
        if r.rows() != g.dim() || !r.is_square() {
            return Err(crate::error::AlgebraError::DimensionMismatch { expected: g.dim(), got: r.rows() }.into());
        }
        Ok(RicciOperator { matrix: g.inverse().mul(r) })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `g rho` is symmetric.
    pub fn is_self_adjoint(&self, g: &Metric) -> bool {
        g.matrix().mul(&self.matrix).is_symmetric()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Predicates {
    pub einstein: bool,
    pub conformally_flat: bool,
    pub ricci_parallel: bool,
    pub sw_zero: bool,
}

pub fn predicates(report: &CurvatureReport, g: &Metric) -> Predicates {
    let n = g.dim();
    let lambda = &report.scalar * &FieldScalar::from_ratio(1, n as i64);
    Predicates {
        einstein: report.ricci == g.matrix().scaled(&lambda),
        conformally_flat: report.weyl.is_zero(),
        ricci_parallel: report.nabla_ricci.is_zero(),
        sw_zero: report.schouten_weyl.is_zero(),
    }
}

/// The Segre types admitted by non-Einstein, non-conformally-flat,
/// non-Ricci-parallel four-dimensional metric Lie groups with zero
/// Schouten-Weyl tensor.
pub fn sw_zero_types() -> Vec<SegreType> {
    ["{1(12)}", "{(11)2}", "{(112)}", "{(22)}", "{1111~}"]
        .iter()
        .map(|s| SegreType::parse(s).expect("valid literal"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub ricci_operator: RicciOperator,
    pub spectrum: SpectralData,
    pub predicates: Predicates,
    /// False when the type needs a neutral metric but `g` is not neutral.
    pub admissible: bool,
}

/// Ricci operator, exact Segre type and predicates of a computed report.
pub fn classify(report: &CurvatureReport, g: &Metric, radicand: u64) -> Result<Classification, GeometryError> {
    let ricci_operator = RicciOperator::new(&report.ricci, g)?;
    let spectrum = analyze(ricci_operator.matrix(), radicand)?;
    let admissible = !(spectrum.segre.is_neutral_only() && !g.is_neutral());
    Ok(Classification { predicates: predicates(report, g), ricci_operator, spectrum, admissible })
}

/// How the metric of the `{111 1̄}` pair treats its last two directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MetricVariant {
    /// `diag(e1, e2, e3, -e3)`: the operator block is a rotation-scaling,
    /// giving a complex pair.
    #[default]
    SignFlipped,
    /// `diag(e1, e2, e3, e3)`.
    SameSign,
}

impl MetricVariant {
    pub fn name(self) -> &'static str {
        match self {
            MetricVariant::SignFlipped => "sign-flipped",
            MetricVariant::SameSign => "same-sign",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sign-flipped" => Some(MetricVariant::SignFlipped),
            "same-sign" => Some(MetricVariant::SameSign),
            _ => None,
        }
    }
}

/// Parameter names, in variable order, used by every canonical pair.
pub const PAIR_PARAMS: [&str; 4] = ["rho1", "rho2", "alpha", "beta"];

/// A concrete metric and a Ricci tensor whose entries are polynomials in
/// [`PAIR_PARAMS`] (variables `0..4`).
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalPair {
    pub segre: SegreType,
    pub signs: [i8; 4],
    pub metric: Metric,
    pub ricci: Matrix<MultiPoly>,
    /// Polynomials in the parameters assumed nonzero.
    pub assumptions: Vec<MultiPoly>,
    pub variant: MetricVariant,
}

fn sign(e: i8) -> Result<FieldScalar, GeometryError> {
    match e {
        1 => Ok(FieldScalar::one()),
        -1 => Ok(FieldScalar::from_int(-1)),
        _ => Err(GeometryError::BadSign),
    }
}

fn p(i: usize) -> MultiPoly {
    MultiPoly::var(i)
}

fn c(x: &FieldScalar) -> MultiPoly {
    MultiPoly::constant(x.clone())
}

impl CanonicalPair {
    pub fn param_names() -> VarSet {
        VarSet::new(PAIR_PARAMS)
    }

    /// Ricci tensor at a parameter point `(rho1, rho2, alpha, beta)`.
    pub fn ricci_at(&self, params: &[FieldScalar; 4]) -> Matrix {
        self.ricci.map(|e| e.eval(params))
    }

    /// Ricci operator at a parameter point.
    pub fn operator_at(&self, params: &[FieldScalar; 4]) -> Result<RicciOperator, GeometryError> {
        RicciOperator::new(&self.ricci_at(params), &self.metric)
    }

    /// Whether every assumption is nonzero at the point.
    pub fn admits(&self, params: &[FieldScalar; 4]) -> bool {
        self.assumptions.iter().all(|a| !a.eval(params).is_zero())
    }

    pub fn describe_assumptions(&self) -> Vec<String> {
        let names = Self::param_names();
        self.assumptions
            .iter()
            .map(|a| format!("{} != 0", names.render(a, crate::poly::MonomialOrder::Lex)))
            .collect()
    }
}

/// Canonical `(g, r)` for the implemented Segre types.
pub fn canonical_pair(t: &SegreType, signs: [i8; 4], variant: MetricVariant) -> Result<CanonicalPair, GeometryError> {
    let e: Vec<FieldScalar> = signs.iter().map(|&x| sign(x)).collect::<Result<_, _>>()?;
    let zero = FieldScalar::zero;
    let one = FieldScalar::one;
    let (rho1, rho2, alpha, beta) = (p(0), p(1), p(2), p(3));
    let diff = rho1.sub(&rho2);
    let hyperbolic = |g: &mut Matrix, at: usize| {
        g.set(at, at, zero());
        g.set(at + 1, at + 1, zero());
        g.set(at, at + 1, one());
        g.set(at + 1, at, one());
    };
    // [[eps, lambda], [lambda, 0]] against the hyperbolic metric block gives
    // the operator [[lambda, 0], [eps, lambda]]
    let jordan2 = |r: &mut Matrix<MultiPoly>, at: usize, eps: &FieldScalar, lambda: &MultiPoly| {
        r.set(at, at, c(eps));
        r.set(at, at + 1, lambda.clone());
        r.set(at + 1, at, lambda.clone());
        r.set(at + 1, at + 1, MultiPoly::zero());
    };
    let mut g = Matrix::diagonal(&e);
    let mut r: Matrix<MultiPoly> = Matrix::zeros(4, 4);
    let assumptions;
    let m = t.machine();
    match m.as_str() {
        "{(11)(11)}" => {
            for (i, lam) in [&rho1, &rho1, &rho2, &rho2].into_iter().enumerate() {
                r.set(i, i, lam.scale(&e[i]));
            }
            assumptions = vec![diff];
        }
        "{1111~}" => {
            let e3 = &e[2];
            if variant == MetricVariant::SignFlipped {
                g.set(3, 3, -e3);
            } else {
                g.set(3, 3, e3.clone());
            }
            r.set(0, 0, rho1.scale(&e[0]));
            r.set(1, 1, rho2.scale(&e[1]));
            r.set(2, 2, alpha.scale(e3));
            r.set(3, 3, alpha.scale(&-e3));
            r.set(2, 3, beta.scale(e3));
            r.set(3, 2, beta.scale(e3));
            assumptions = vec![diff, beta];
        }
        "{1(12)}" => {
            hyperbolic(&mut g, 2);
            r.set(0, 0, rho1.scale(&e[0]));
            r.set(1, 1, rho2.scale(&e[1]));
            jordan2(&mut r, 2, &e[2], &rho2);
            assumptions = vec![diff];
        }
        "{(11)2}" => {
            hyperbolic(&mut g, 2);
            r.set(0, 0, rho1.scale(&e[0]));
            r.set(1, 1, rho1.scale(&e[1]));
            jordan2(&mut r, 2, &e[2], &rho2);
            assumptions = vec![diff];
        }
        "{(112)}" => {
            hyperbolic(&mut g, 2);
            r.set(0, 0, rho1.scale(&e[0]));
            r.set(1, 1, rho1.scale(&e[1]));
            jordan2(&mut r, 2, &e[2], &rho1);
            assumptions = vec![];
        }
        "{(22)}" => {
            hyperbolic(&mut g, 0);
            hyperbolic(&mut g, 2);
            jordan2(&mut r, 0, &e[0], &rho1);
            jordan2(&mut r, 2, &e[2], &rho1);
            assumptions = vec![];
        }
        _ => return Err(GeometryError::UnsupportedSegre(m)),
    }
    Ok(CanonicalPair { segre: t.clone(), signs, metric: Metric::new(g)?, ricci: r, assumptions, variant })
}

/// Machine spellings of the types [`canonical_pair`] implements.
pub fn supported_pairs() -> Vec<&'static str> {
    vec!["{(11)(11)}", "{1111~}", "{1(12)}", "{(11)2}", "{(112)}", "{(22)}"]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::segre::segre_type;

    fn s(x: &str) -> FieldScalar {
        x.parse().unwrap()
    }

    #[test]
    fn operator_of_metric_is_identity() {
        let g = Metric::diagonal(&[s("1"), s("-1"), s("1"), s("2")]).unwrap();
        let rho = RicciOperator::new(g.matrix(), &g).unwrap();
        assert_eq!(*rho.matrix(), Matrix::identity(4));
        assert!(rho.is_self_adjoint(&g));
    }

    #[test]
    fn abelian_satisfies_all_predicates() {
        let g = Metric::identity(4);
        let rep = CurvatureReport::compute(&LieAlgebra::abelian(4), &g).unwrap();
        let cls = classify(&rep, &g, 0).unwrap();
        assert_eq!(cls.predicates, Predicates { einstein: true, conformally_flat: true, ricci_parallel: true, sw_zero: true });
        assert_eq!(cls.spectrum.segre.machine(), "{(1111)}");
    }

    #[test]
    fn canonical_pairs_have_their_type() {
        let point = [s("1"), s("2"), s("3"), s("5")];
        for name in supported_pairs() {
            let t = SegreType::parse(name).unwrap();
            for signs in [[1, 1, 1, 1], [-1, 1, -1, 1], [1, -1, 1, -1]] {
                let pair = canonical_pair(&t, signs, MetricVariant::SignFlipped).unwrap();
                let rho = pair.operator_at(&point).unwrap();
                assert!(rho.is_self_adjoint(&pair.metric));
                assert_eq!(segre_type(rho.matrix()).unwrap(), t, "{name} {signs:?}");
            }
        }
        assert!(matches!(
            canonical_pair(&SegreType::parse("{4}").unwrap(), [1; 4], MetricVariant::SignFlipped),
            Err(GeometryError::UnsupportedSegre(_))
        ));
    }

    #[test]
    fn same_sign_metric_block_gives_real_spectrum() {
        let t = SegreType::parse("{1111~}").unwrap();
        let pair = canonical_pair(&t, [1; 4], MetricVariant::SameSign).unwrap();
        let rho = pair.operator_at(&[s("1"), s("2"), s("3"), s("4")]).unwrap();
        // block [[3, 4], [4, -3]] has eigenvalues +-5
        assert_eq!(segre_type(rho.matrix()).unwrap().machine(), "{1111}");
    }
}
