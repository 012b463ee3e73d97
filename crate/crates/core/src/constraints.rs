//! Polynomial systems on the structure constants.
//!
//! Fixing a canonical metric `g` and a Ricci tensor `r` with parameters, the
//! condition `(nabla_z r)(x, y) = (nabla_y r)(x, z)` becomes a system that is
//! bilinear in the 24 structure constants and the parameters. The Jacobi
//! identity and the equality `Ricci(C, g) = r` add quadratic equations.
//!
//! Variable layout: `C_i_j^k` for `i < j` in `(i, j, k)` order (indices
//! `0..24`), then `rho1, rho2, alpha, beta, a, t`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::classify::{canonical_pair, classify, CanonicalPair, Classification, MetricVariant};
use crate::curvature::{levi_civita, nabla_ricci, ricci, riemann, CurvatureReport, Metric};
use crate::error::{AlgebraError, GeometryError};
use crate::groebner::{buchberger, GbConfig};
use crate::lie::{jacobi_polynomials, structure_constant_index, structure_constant_vars, symbolic_constants, LieAlgebra};
use crate::linear::{reduce_linear, LinearReduction};
use crate::matrix::Matrix;
use crate::poly::{MonomialOrder, MultiPoly, VarSet};
use crate::ring::Ring;
use crate::scalar::FieldScalar;
use crate::segre::{Eigenvalue, SegreType};
use crate::tensor::Tensor;

pub const C_COUNT: usize = 24;
pub const RHO1: usize = 24;
pub const RHO2: usize = 25;
pub const ALPHA: usize = 26;
pub const BETA: usize = 27;
pub const A: usize = 28;
pub const T: usize = 29;

/// All variable names in index order.
pub fn system_vars() -> VarSet {
    let mut vs = structure_constant_vars(4);
    for name in ["rho1", "rho2", "alpha", "beta", "a", "t"] {
        vs.push(name);
    }
    vs
}

/// Indices of the structure-constant variables.
pub fn c_vars() -> Vec<usize> {
    (0..C_COUNT).collect()
}

/// Moves the pair's parameter variables `0..4` to `RHO1..`.
fn lift_params(p: &MultiPoly) -> MultiPoly {
    let map: BTreeMap<usize, MultiPoly> = (0..4).map(|k| (k, MultiPoly::var(RHO1 + k))).collect();
    p.substitute(&map)
}

fn symbolic_connection(g: &Metric) -> Tensor<MultiPoly> {
    levi_civita(&symbolic_constants(4), g).expect("dimensions agree")
}

/// `(nabla_z r)_{xy} - (nabla_y r)_{xz}` for all `x` and `y < z`, with the
/// connection of symbolic structure constants. Zero components are kept so
/// that positions are stable.
pub fn eq1_components(g: &Metric, r_target: &Matrix<MultiPoly>) -> Vec<((usize, usize, usize), MultiPoly)> {
    let gamma = symbolic_connection(g);
    let nr = nabla_ricci(r_target, &gamma);
    let mut out = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            for z in y + 1..4 {
                out.push(((x, y, z), nr.get(&[x, y, z]).minus(nr.get(&[x, z, y]))));
            }
        }
    }
    out
}

/// The equations of `SW = 0` for a canonical pair, nonzero components only.
pub fn generate_sw_equations(pair: &CanonicalPair) -> Vec<MultiPoly> {
    let target = pair.ricci.map(lift_params);
    eq1_components(&pair.metric, &target).into_iter().map(|(_, p)| p).filter(|p| !p.is_zero()).collect()
}

/// The Ricci tensor of the symbolic structure constants, quadratic in them.
pub fn symbolic_ricci(g: &Metric) -> Matrix<MultiPoly> {
    let c = symbolic_constants(4);
    let gamma = levi_civita(&c, g).expect("dimensions agree");
    let riem = riemann(&c, g, &gamma);
    ricci(&riem, g).0
}

/// `Ricci(C, g)_{ij} - r_{ij}` for `i <= j`.
pub fn generate_ricci_equations(pair: &CanonicalPair) -> Vec<MultiPoly> {
    let ric = symbolic_ricci(&pair.metric);
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            out.push(ric.get(i, j).sub(&lift_params(pair.ricci.get(i, j))));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSystem {
    pub pair: CanonicalPair,
    pub sw_eqs: Vec<MultiPoly>,
    pub jacobi_eqs: Vec<MultiPoly>,
    pub ricci_eqs: Vec<MultiPoly>,
    /// Nonvanishing polynomials in the system variables.
    pub assumptions: Vec<MultiPoly>,
}

pub fn assemble_system(pair: &CanonicalPair) -> ConstraintSystem {
    ConstraintSystem {
        sw_eqs: generate_sw_equations(pair),
        jacobi_eqs: jacobi_polynomials(4),
        ricci_eqs: generate_ricci_equations(pair),
        assumptions: pair.assumptions.iter().map(lift_params).collect(),
        pair: pair.clone(),
    }
}

impl ConstraintSystem {
    pub fn all_equations(&self) -> Vec<MultiPoly> {
        self.sw_eqs.iter().chain(&self.jacobi_eqs).chain(&self.ricci_eqs).cloned().collect()
    }

    /// Deterministic text form: a `#` header, then one section per family of
    /// equations with one polynomial per line, terms in grevlex order.
    pub fn dump(&self) -> String {
        let vs = system_vars();
        let mut out = String::new();
        let signs: Vec<String> =
            self.pair.signs.iter().enumerate().map(|(i, s)| format!("e{}={}", i + 1, s)).collect();
        let _ = writeln!(out, "# segre {}", self.pair.segre.machine());
        let _ = writeln!(out, "# signs {}", signs.join(" "));
        let _ = writeln!(out, "# metric {}", render_metric(self.pair.metric.matrix()));
        if self.pair.segre.machine() == "{1111~}" {
            let _ = writeln!(out, "# metric-variant {}", self.pair.variant.name());
        }
        for a in self.pair.describe_assumptions() {
            let _ = writeln!(out, "# assume {a}");
        }
        for (name, eqs) in [("sw", &self.sw_eqs), ("jacobi", &self.jacobi_eqs), ("ricci", &self.ricci_eqs)] {
            let _ = writeln!(out, "[{name}] {}", eqs.len());
            for e in eqs {
                let _ = writeln!(out, "{}", vs.render(e, MonomialOrder::GrevLex));
            }
        }
        out
    }
}

fn render_metric(g: &Matrix) -> String {
    let n = g.rows();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || g.get(i, j).is_zero()));
    if diagonal {
        let d: Vec<String> = (0..n).map(|i| format!("{}", g.get(i, i))).collect();
        return format!("diag({})", d.join(", "));
    }
    let rows: Vec<String> =
        (0..n).map(|i| (0..n).map(|j| format!("{}", g.get(i, j))).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

/// Rank over the parameter field, estimated at concrete parameter points:
/// the maximum over `points` of the rank of the coefficient matrix in the
/// structure constants. Each point gives a lower bound for the generic rank.
pub fn rank_at_points(system: &[MultiPoly], points: &[BTreeMap<usize, FieldScalar>]) -> usize {
    points
        .iter()
        .map(|pt| {
            let rows: Vec<Vec<FieldScalar>> = system
                .iter()
                .map(|p| {
                    let q = p.substitute_values(pt);
                    let mut row = vec![FieldScalar::zero(); C_COUNT + 1];
                    for (m, c) in q.terms() {
                        let vars: Vec<usize> = m.support().map(|(v, _)| v).collect();
                        match vars.as_slice() {
                            [] => row[C_COUNT] = c.clone(),
                            [v] if *v < C_COUNT && m.degree() == 1 => row[*v] = c.clone(),
                            _ => panic!("system is not linear in the structure constants at the given point"),
                        }
                    }
                    row
                })
                .collect();
            if rows.is_empty() {
                0
            } else {
                Matrix::from_rows(rows).expect("rectangular").rank()
            }
        })
        .max()
        .unwrap_or(0)
}

/// Whether two linear systems have the same span at every given point.
pub fn same_span(a: &[MultiPoly], b: &[MultiPoly], points: &[BTreeMap<usize, FieldScalar>]) -> bool {
    let both: Vec<MultiPoly> = a.iter().chain(b).cloned().collect();
    points.iter().all(|pt| {
        let one = core::slice::from_ref(pt);
        let r = rank_at_points(&both, one);
        r == rank_at_points(a, one) && r == rank_at_points(b, one)
    })
}

/// Whether `eq` lies in the span of `system` at every given point.
pub fn span_contains(system: &[MultiPoly], eq: &MultiPoly, points: &[BTreeMap<usize, FieldScalar>]) -> bool {
    let mut ext = system.to_vec();
    ext.push(eq.clone());
    points.iter().all(|pt| {
        let one = core::slice::from_ref(pt);
        rank_at_points(&ext, one) == rank_at_points(system, one)
    })
}

/// Linear reduction of the SW equations in the structure constants.
pub fn reduce_sw(system: &ConstraintSystem) -> Result<LinearReduction, AlgebraError> {
    reduce_linear(&system.sw_eqs, &c_vars(), &system.assumptions, Some(&system_vars()))
}

/// `nabla r` with the target Ricci tensor, after substituting a linear
/// solution. Zero means the solution forces a Ricci-parallel metric.
pub fn nabla_ricci_after(system: &ConstraintSystem, solution: &BTreeMap<usize, MultiPoly>) -> Tensor<MultiPoly> {
    let gamma = symbolic_connection(&system.pair.metric).map(|p| p.substitute(solution));
    nabla_ricci(&system.pair.ricci.map(lift_params), &gamma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LinearThenGb,
    GbOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionReport {
    pub strategy: Strategy,
    pub linear: Option<LinearReduction>,
    /// Reduced Groebner basis of the saturated ideal, when computed.
    pub basis: Option<Vec<MultiPoly>>,
    pub budget_exhausted: bool,
    /// Structure-constant variables that appear as basis elements.
    pub forced_zero: Vec<usize>,
}

/// Solves a desk-scale system. Nonvanishing assumptions are imposed by
/// adjoining `t * prod(assumptions) - 1`.
pub fn solve_small(
    equations: &[MultiPoly],
    assumptions: &[MultiPoly],
    strategy: Strategy,
    config: &GbConfig,
) -> Result<SolutionReport, AlgebraError> {
    let mut work: Vec<MultiPoly> = equations.to_vec();
    let mut linear = None;
    if strategy == Strategy::LinearThenGb {
        let lin: Vec<MultiPoly> = equations.iter().filter(|p| p.degree_in(&c_vars()) <= 1).cloned().collect();
        let red = reduce_linear(&lin, &c_vars(), assumptions, None)?;
        let sol = red.solution_map();
        let mut next: Vec<MultiPoly> = sol.iter().map(|(v, e)| MultiPoly::var(*v).sub(e)).collect();
        next.extend(red.uncertified.iter().cloned());
        next.extend(
            equations.iter().filter(|p| p.degree_in(&c_vars()) > 1).map(|p| p.substitute(&sol)).filter(|p| !p.is_zero()),
        );
        work = next;
        linear = Some(red);
    }
    if !assumptions.is_empty() {
        let prod = assumptions.iter().fold(MultiPoly::constant(FieldScalar::one()), |acc, a| acc.mul(a));
        work.push(MultiPoly::var(T).mul(&prod).sub(&MultiPoly::constant(FieldScalar::one())));
    }
    let (basis, budget_exhausted) = match buchberger(&work, config) {
        Ok(b) => (Some(b), false),
        Err(AlgebraError::BudgetExhausted(_)) => (None, true),
        Err(AlgebraError::EmptySystem) => (Some(Vec::new()), false),
        Err(e) => return Err(e),
    };
    let mut forced_zero: Vec<usize> = basis
        .iter()
        .flatten()
        .filter_map(|g| {
            let vars = g.variables();
            (g.len() == 1 && vars.len() == 1 && vars[0] < C_COUNT && g.total_degree() == Some(1)).then(|| vars[0])
        })
        .collect();
    forced_zero.sort_unstable();
    Ok(SolutionReport { strategy, linear, basis, budget_exhausted, forced_zero })
}

// ---- the four-dimensional family with a complex Ricci pair ----------------

fn unit(s: i8) -> Result<FieldScalar, GeometryError> {
    match s {
        1 => Ok(FieldScalar::one()),
        -1 => Ok(FieldScalar::from_int(-1)),
        _ => Err(GeometryError::BadSign),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub a: FieldScalar,
    pub delta: i8,
    pub eps1: i8,
    pub eps2: i8,
    pub eps3: i8,
    pub variant: MetricVariant,
}

impl FamilyParams {
    pub fn new(a: FieldScalar, delta: i8) -> Self {
        FamilyParams { a, delta, eps1: 1, eps2: 1, eps3: 1, variant: MetricVariant::SignFlipped }
    }

    pub fn signs(&self) -> [i8; 4] {
        let last = match self.variant {
            MetricVariant::SignFlipped => -self.eps3,
            MetricVariant::SameSign => self.eps3,
        };
        [self.eps1, self.eps2, self.eps3, last]
    }
}

/// Structure constants (1-based) `C_23^3 = -C_24^4 = -a delta sqrt(3)`,
/// `C_23^4 = C_24^3 = a`, `C_34^2 = 2 a eps2 eps3`.
pub fn family_algebra(p: &FamilyParams) -> Result<LieAlgebra, GeometryError> {
    if p.a.is_zero() {
        return Err(GeometryError::ZeroFamilyParameter);
    }
    let d = unit(p.delta)?;
    let e = &unit(p.eps2)? * &unit(p.eps3)?;
    let r3 = FieldScalar::sqrt_of(3)?;
    let ad3 = &(&p.a * &d) * &r3;
    LieAlgebra::from_entries(
        4,
        &[
            (2, 3, 3, -&ad3),
            (2, 4, 4, ad3.clone()),
            (2, 3, 4, p.a.clone()),
            (2, 4, 3, p.a.clone()),
            (3, 4, 2, &(&FieldScalar::from_int(2) * &p.a) * &e),
        ],
    )
}

pub fn family_metric(p: &FamilyParams) -> Result<Metric, GeometryError> {
    let s = p.signs();
    Metric::diagonal(&s.iter().map(|&x| unit(x)).collect::<Result<Vec<_>, _>>()?)
}

/// `(rho1, rho2, alpha, beta) = (0, -8 a^2 eps2, 4 a^2 eps2, 4 sqrt(3) a^2 delta eps2)`.
pub fn family_expected(p: &FamilyParams) -> Result<[FieldScalar; 4], GeometryError> {
    let a2 = &p.a * &p.a;
    let e2 = unit(p.eps2)?;
    let d = unit(p.delta)?;
    let four_a2 = &(&FieldScalar::from_int(4) * &a2) * &e2;
    Ok([
        FieldScalar::zero(),
        &(&FieldScalar::from_int(-8) * &a2) * &e2,
        four_a2.clone(),
        &(&four_a2 * &d) * &FieldScalar::sqrt_of(3)?,
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub params: FamilyParams,
    pub algebra: LieAlgebra,
    pub metric: Metric,
    pub curvature: CurvatureReport,
    pub classification: Classification,
    pub expected: [FieldScalar; 4],
    /// The computed Ricci tensor equals the canonical one at `expected`.
    pub ricci_matches: bool,
    /// The real eigenvalues, each simple, are `rho1` and `rho2`, and the
    /// complex pair is `alpha +- i |beta|`.
    pub eigen_matches: bool,
    pub identity_holds: bool,
    pub eq1_holds: bool,
}

impl FamilyReport {
    pub fn jacobi_ok(&self) -> bool {
        self.algebra.is_valid()
    }

    pub fn sw_zero(&self) -> bool {
        self.classification.predicates.sw_zero
    }

    pub fn segre(&self) -> &SegreType {
        &self.classification.spectrum.segre
    }
}

pub fn verify_family(p: &FamilyParams) -> Result<FamilyReport, GeometryError> {
    let algebra = family_algebra(p)?;
    let metric = family_metric(p)?;
    let curvature = CurvatureReport::compute(&algebra, &metric)?;
    let classification = classify(&curvature, &metric, 3)?;
    let expected = family_expected(p)?;
    let t = SegreType::parse("{1111~}").expect("literal");
    let pair = canonical_pair(&t, p.signs(), p.variant)?;
    let ricci_matches = curvature.ricci == pair.ricci_at(&expected);
    let groups = &classification.spectrum.groups;
    let real: Vec<&FieldScalar> = groups
        .iter()
        .filter_map(|g| match &g.value {
            Eigenvalue::Exact(x) if g.multiplicity == 1 => Some(x),
            _ => None,
        })
        .collect();
    let complex: Vec<(&FieldScalar, &Option<FieldScalar>)> = groups
        .iter()
        .filter_map(|g| match &g.value {
            Eigenvalue::Complex { re, im, .. } if g.multiplicity == 1 => Some((re, im)),
            _ => None,
        })
        .collect();
    let eigen_matches = groups.len() == 3
        && real.len() == 2
        && real.contains(&&expected[0])
        && real.contains(&&expected[1])
        && complex.len() == 1
        && *complex[0].0 == expected[2]
        && complex[0].1.as_ref() == Some(&expected[3].abs());
    Ok(FamilyReport {
        identity_holds: curvature.identity_holds()?,
        eq1_holds: curvature.eq1_holds(),
        params: p.clone(),
        algebra,
        metric,
        curvature,
        classification,
        expected,
        ricci_matches,
        eigen_matches,
    })
}

/// The family as a substitution in terms of the variable `a`: structure
/// constants and `rho1, rho2, alpha, beta`.
pub fn family_substitution(delta: i8, eps2: i8, eps3: i8) -> Result<BTreeMap<usize, MultiPoly>, GeometryError> {
    let d = unit(delta)?;
    let e2 = unit(eps2)?;
    let e3 = unit(eps3)?;
    let r3 = FieldScalar::sqrt_of(3)?;
    let a = MultiPoly::var(A);
    let a2 = a.mul(&a);
    let mut map: BTreeMap<usize, MultiPoly> = (0..C_COUNT).map(|v| (v, MultiPoly::zero())).collect();
    let ad3 = a.scale(&(&d * &r3));
    map.insert(structure_constant_index(4, 1, 2, 2), ad3.neg());
    map.insert(structure_constant_index(4, 1, 3, 3), ad3);
    map.insert(structure_constant_index(4, 1, 2, 3), a.clone());
    map.insert(structure_constant_index(4, 1, 3, 2), a.clone());
    map.insert(structure_constant_index(4, 2, 3, 1), a.scale(&(&(&FieldScalar::from_int(2) * &e2) * &e3)));
    map.insert(RHO1, MultiPoly::zero());
    map.insert(RHO2, a2.scale(&(&FieldScalar::from_int(-8) * &e2)));
    map.insert(ALPHA, a2.scale(&(&FieldScalar::from_int(4) * &e2)));
    map.insert(BETA, a2.scale(&(&(&FieldScalar::from_int(4) * &d) * &(&e2 * &r3))));
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> FieldScalar {
        x.parse().unwrap()
    }

    #[test]
    fn family_at_unit_parameter() {
        let rep = verify_family(&FamilyParams::new(s("1"), 1)).unwrap();
        assert!(rep.jacobi_ok() && rep.sw_zero() && rep.ricci_matches && rep.eigen_matches);
        assert_eq!(rep.segre().machine(), "{1111~}");
        assert_eq!(rep.curvature.scalar, s("0"));
    }

    #[test]
    fn zero_parameter_rejected() {
        assert_eq!(verify_family(&FamilyParams::new(s("0"), 1)).unwrap_err(), GeometryError::ZeroFamilyParameter);
    }

    #[test]
    fn toy_saturation() {
        let mut vs = system_vars();
        let x = vs.parse("C_1_2^1").unwrap();
        let y = vs.parse("C_1_2^2").unwrap();
        let eqs = [x.mul(&x).sub(&MultiPoly::constant(s("1"))), x.mul(&y).sub(&y)];
        let rep = solve_small(&eqs, &[], Strategy::GbOnly, &GbConfig::default()).unwrap();
        let basis = rep.basis.unwrap();
        // the point (1, 7) satisfies every basis element
        let mut pt = vec![FieldScalar::zero(); 30];
        pt[0] = s("1");
        pt[1] = s("7");
        assert!(basis.iter().all(|g| g.eval(&pt).is_zero()));
        pt[0] = s("-1");
        assert!(!basis.iter().all(|g| g.eval(&pt).is_zero()));
    }
}
