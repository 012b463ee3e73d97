//! Curvature of a left-invariant metric on a Lie group.
//!
//! All tensors are components in a fixed left-invariant frame `e_1..e_n`, so
//! every component is a constant. The covariant derivative of a
//! left-invariant tensor therefore has no directional-derivative term:
//!
//! ```text
//! (nabla_k T)_{ij} = - sum_m ( Gamma^m_{ki} T_{mj} + Gamma^m_{kj} T_{im} )
//! ```
//!
//! This algebraic formula is used for `A`, `r` and `W` alike.
//!
//! Conventions:
//!
//! * `nabla_{e_i} e_j = Gamma^k_{ij} e_k`, computed with the Koszul formula
//!   `2<nabla_i e_j, e_k> = <[e_i,e_j],e_k> - <[e_j,e_k],e_i> + <[e_k,e_i],e_j>`.
//! * `R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]` and
//!   `R_{ijkl} = g(R(e_i,e_j) e_l, e_k)`, so `R_{1212}` is the sectional
//!   curvature numerator of the `(e_1, e_2)` plane.
//! * `r_{jk} = g^{il} R_{ijlk}`, `s = g^{jk} r_{jk}`.
//! * `A = (r - s g / (2(n-1))) / (n-2)`, `W = R - A (.) g` with the
//!   Kulkarni-Nomizu product
//!   `(A (.) g)_{ijkl} = A_ik g_jl + A_jl g_ik - A_il g_jk - A_jk g_il`.
//! * `SW_{ijk} = (nabla_k A)_{ij} - (nabla_j A)_{ik}` and
//!   `(div W)_{xyz} = g^{ab} (nabla_a W)_{bxyz}`.
//!
//! With these choices `SW = -(n-3) div W` holds identically.
//!
//! Every function is generic over [`Ring`] so the same code evaluates
//! concrete algebras and symbolic structure constants. The metric itself is
//! always concrete.

use alloc::vec::Vec;

use crate::error::{AlgebraError, GeometryError};
use crate::lie::{LieAlgebra, StructureConstants};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::scalar::FieldScalar;
use crate::tensor::Tensor;

/// A nondegenerate symmetric bilinear form with its cached inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    g: Matrix,
    g_inv: Matrix,
    inertia: (usize, usize, usize),
}

impl Metric {
    pub fn new(g: Matrix) -> Result<Self, GeometryError> {
        if !g.is_square() {
            return Err(AlgebraError::DimensionMismatch { expected: g.rows(), got: g.cols() }.into());
        }
        if !g.is_symmetric() {
            return Err(GeometryError::AsymmetricMetric);
        }
        let g_inv = g.inverse().map_err(|_| GeometryError::DegenerateMetric)?;
        let inertia = g.inertia();
        Ok(Metric { g, g_inv, inertia })
    }

    pub fn diagonal(entries: &[FieldScalar]) -> Result<Self, GeometryError> {
        Self::new(Matrix::diagonal(entries))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n)).expect("identity is nondegenerate")
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse(&self) -> &Matrix {
        &self.g_inv
    }

    pub fn g(&self, i: usize, j: usize) -> &FieldScalar {
        self.g.get(i, j)
    }

    pub fn g_inv(&self, i: usize, j: usize) -> &FieldScalar {
        self.g_inv.get(i, j)
    }

    /// Number of positive and negative directions.
    pub fn signature(&self) -> (usize, usize) {
        (self.inertia.0, self.inertia.1)
    }

    /// Signature `(2, 2)`.
    pub fn is_neutral(&self) -> bool {
        self.dim() == 4 && self.signature() == (2, 2)
    }

    pub fn is_riemannian(&self) -> bool {
        self.inertia.1 == 0
    }

    pub fn scaled(&self, c: &FieldScalar) -> Result<Self, GeometryError> {
        Self::new(self.g.scaled(c))
    }
}

/// `<[e_a, e_b], e_c>`.
fn bracket_lowered<R: Ring>(c: &StructureConstants<R>, g: &Metric, a: usize, b: usize, k: usize) -> R {
    let mut acc = R::zero();
    for m in 0..c.dim() {
        let gm = g.g(m, k);
        if gm.is_zero() {
            continue;
        }
        let cm = c.get(a, b, m);
        if !cm.is_zero() {
            acc.add_assign_ref(&cm.scaled(gm));
        }
    }
    acc
}

/// Lowers the last index of `Gamma`: `L_{ijk} = <nabla_i e_j, e_k>`.
pub fn lower_connection<R: Ring>(gamma: &Tensor<R>, g: &Metric) -> Tensor<R> {
    let n = gamma.dim();
    Tensor::from_fn(n, 3, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = R::zero();
        for m in 0..n {
            let gm = g.g(m, k);
            if !gm.is_zero() {
                acc.add_assign_ref(&gamma.get(&[i, j, m]).scaled(gm));
            }
        }
        acc
    })
}

/// `Gamma` with `gamma.get(&[i, j, k]) = Gamma^k_{ij}`.
pub fn levi_civita<R: Ring>(c: &StructureConstants<R>, g: &Metric) -> Result<Tensor<R>, GeometryError> {
    let n = c.dim();
    if g.dim() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, got: g.dim() }.into());
    }
    let half = FieldScalar::from_ratio(1, 2);
    let lowered = Tensor::from_fn(n, 3, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        bracket_lowered(c, g, i, j, k)
            .minus(&bracket_lowered(c, g, j, k, i))
            .plus(&bracket_lowered(c, g, k, i, j))
            .scaled(&half)
    });
    Ok(Tensor::from_fn(n, 3, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = R::zero();
        for l in 0..n {
            let gi = g.g_inv(l, k);
            if !gi.is_zero() {
                acc.add_assign_ref(&lowered.get(&[i, j, l]).scaled(gi));
            }
        }
        acc
    }))
}

/// `nabla_X Y - nabla_Y X = [X, Y]` on basis vectors.
pub fn is_torsion_free<R: Ring>(gamma: &Tensor<R>, c: &StructureConstants<R>) -> bool {
    gamma.indices().all(|idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        gamma.get(&[i, j, k]).minus(gamma.get(&[j, i, k])) == c.get(i, j, k)
    })
}

/// `<nabla_i e_j, e_k> + <e_j, nabla_i e_k> = 0`.
pub fn is_metric_compatible<R: Ring>(gamma: &Tensor<R>, g: &Metric) -> bool {
    let low = lower_connection(gamma, g);
    let ok = low.indices().all(|idx| low.get(&idx).plus(low.get(&[idx[0], idx[2], idx[1]])).is_zero());
    ok
}

/// `R_{ijkl} = g(R(e_i,e_j) e_l, e_k)`.
pub fn riemann<R: Ring>(c: &StructureConstants<R>, g: &Metric, gamma: &Tensor<R>) -> Tensor<R> {
    let n = c.dim();
    // (R(e_i,e_j) e_k)^p
    let endo = Tensor::from_fn(n, 4, |idx| {
        let (i, j, k, p) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = R::zero();
        for m in 0..n {
            let a = gamma.get(&[j, k, m]);
            if !a.is_zero() {
                acc.add_assign_ref(&a.times(gamma.get(&[i, m, p])));
            }
            let b = gamma.get(&[i, k, m]);
            if !b.is_zero() {
                acc = acc.minus(&b.times(gamma.get(&[j, m, p])));
            }
            let cm = c.get(i, j, m);
            if !cm.is_zero() {
                acc = acc.minus(&cm.times(gamma.get(&[m, k, p])));
            }
        }
        acc
    });
    Tensor::from_fn(n, 4, |idx| {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = R::zero();
        for p in 0..n {
            let gp = g.g(p, k);
            if !gp.is_zero() {
                acc.add_assign_ref(&endo.get(&[i, j, l, p]).scaled(gp));
            }
        }
        acc
    })
}

/// Antisymmetry in each pair, pair symmetry and the first Bianchi identity.
pub fn has_curvature_symmetries<R: Ring>(t: &Tensor<R>) -> bool {
    t.indices().all(|idx| {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let v = t.get(&idx);
        v.plus(t.get(&[j, i, k, l])).is_zero()
            && v.plus(t.get(&[i, j, l, k])).is_zero()
            && *v == *t.get(&[k, l, i, j])
            && v.plus(t.get(&[j, k, i, l])).plus(t.get(&[k, i, j, l])).is_zero()
    })
}

/// Ricci tensor `r_{jk} = g^{il} R_{ijlk}` and scalar curvature.
pub fn ricci<R: Ring>(riem: &Tensor<R>, g: &Metric) -> (Matrix<R>, R) {
    let n = riem.dim();
    let r = Matrix::from_fn(n, n, |j, k| {
        let mut acc = R::zero();
        for i in 0..n {
            for l in 0..n {
                let gi = g.g_inv(i, l);
                if !gi.is_zero() {
                    acc.add_assign_ref(&riem.get(&[i, j, l, k]).scaled(gi));
                }
            }
        }
        acc
    });
    let s = trace_with(&r, g);
    (r, s)
}

/// `g^{ij} T_{ij}`.
pub fn trace_with<R: Ring>(t: &Matrix<R>, g: &Metric) -> R {
    let n = t.rows();
    let mut acc = R::zero();
    for i in 0..n {
        for j in 0..n {
            let gi = g.g_inv(i, j);
            if !gi.is_zero() {
                acc.add_assign_ref(&t.get(i, j).scaled(gi));
            }
        }
    }
    acc
}

/// `A = (r - s g / (2(n-1))) / (n-2)`.
pub fn one_dim_curvature<R: Ring>(r: &Matrix<R>, s: &R, g: &Metric) -> Result<Matrix<R>, GeometryError> {
    let n = g.dim();
    if n < 3 {
        return Err(GeometryError::DimensionTooSmall(n, 3));
    }
    let inv_n2 = FieldScalar::from_ratio(1, n as i64 - 2);
    let s_coef = s.scaled(&FieldScalar::from_ratio(1, 2 * (n as i64 - 1)));
    Ok(Matrix::from_fn(n, n, |i, j| r.get(i, j).minus(&s_coef.scaled(g.g(i, j))).scaled(&inv_n2)))
}

/// `(nabla_k T)_{ij}` as the tensor with index order `(i, j, k)`.
pub fn covariant_derivative_2<R: Ring>(t: &Matrix<R>, gamma: &Tensor<R>) -> Tensor<R> {
    let n = gamma.dim();
    Tensor::from_fn(n, 3, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = R::zero();
        for m in 0..n {
            let a = gamma.get(&[k, i, m]);
            if !a.is_zero() {
                acc.add_assign_ref(&a.times(t.get(m, j)));
            }
            let b = gamma.get(&[k, j, m]);
            if !b.is_zero() {
                acc.add_assign_ref(&b.times(t.get(i, m)));
            }
        }
        acc.negated()
    })
}

/// `SW_{ijk} = (nabla_k A)_{ij} - (nabla_j A)_{ik}`.
pub fn schouten_weyl<R: Ring>(a: &Matrix<R>, gamma: &Tensor<R>) -> Tensor<R> {
    let na = covariant_derivative_2(a, gamma);
    Tensor::from_fn(gamma.dim(), 3, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        na.get(&[i, j, k]).minus(na.get(&[i, k, j]))
    })
}

/// `(A (.) g)_{ijkl}`.
pub fn kulkarni_nomizu<R: Ring>(a: &Matrix<R>, g: &Metric) -> Tensor<R> {
    Tensor::from_fn(g.dim(), 4, |idx| {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        a.get(i, k)
            .scaled(g.g(j, l))
            .plus(&a.get(j, l).scaled(g.g(i, k)))
            .minus(&a.get(i, l).scaled(g.g(j, k)))
            .minus(&a.get(j, k).scaled(g.g(i, l)))
    })
}

/// `W = R - A (.) g`.
pub fn weyl<R: Ring>(riem: &Tensor<R>, a: &Matrix<R>, g: &Metric) -> Tensor<R> {
    riem.minus(&kulkarni_nomizu(a, g))
}

/// All contractions `g^{ik} W_{ijkl}` vanish.
pub fn is_trace_free<R: Ring>(w: &Tensor<R>, g: &Metric) -> bool {
    let n = g.dim();
    (0..n).all(|j| {
        (0..n).all(|l| {
            let mut acc = R::zero();
            for i in 0..n {
                for k in 0..n {
                    let gi = g.g_inv(i, k);
                    if !gi.is_zero() {
                        acc.add_assign_ref(&w.get(&[i, j, k, l]).scaled(gi));
                    }
                }
            }
            acc.is_zero()
        })
    })
}

/// `(nabla_a T)_{bxyz}` for a left-invariant `(0,4)` tensor, index order
/// `(a, b, x, y, z)`.
pub fn covariant_derivative_4<R: Ring>(t: &Tensor<R>, gamma: &Tensor<R>) -> Tensor<R> {
    let n = gamma.dim();
    Tensor::from_fn(n, 5, |idx| {
        let a = idx[0];
        let slots = [idx[1], idx[2], idx[3], idx[4]];
        let mut acc = R::zero();
        for pos in 0..4 {
            for m in 0..n {
                let gm = gamma.get(&[a, slots[pos], m]);
                if gm.is_zero() {
                    continue;
                }
                let mut moved = slots;
                moved[pos] = m;
                acc.add_assign_ref(&gm.times(t.get(&moved)));
            }
        }
        acc.negated()
    })
}

/// `(div W)_{xyz} = g^{ab} (nabla_a W)_{bxyz}`.
pub fn div_weyl<R: Ring>(w: &Tensor<R>, gamma: &Tensor<R>, g: &Metric) -> Tensor<R> {
    let n = g.dim();
    let nw = covariant_derivative_4(w, gamma);
    Tensor::from_fn(n, 3, |idx| {
        let mut acc = R::zero();
        for a in 0..n {
            for b in 0..n {
                let gi = g.g_inv(a, b);
                if !gi.is_zero() {
                    acc.add_assign_ref(&nw.get(&[a, b, idx[0], idx[1], idx[2]]).scaled(gi));
                }
            }
        }
        acc
    })
}

/// `SW + (n-3) div W = 0`, componentwise.
pub fn identity_check<R: Ring>(sw: &Tensor<R>, div_w: &Tensor<R>) -> Result<bool, GeometryError> {
    let n = sw.dim();
    if n < 4 {
        return Err(GeometryError::DimensionTooSmall(n, 4));
    }
    let k = FieldScalar::from_int(n as i64 - 3);
    Ok(sw.components().iter().zip(div_w.components()).all(|(a, b)| a.plus(&b.scaled(&k)).is_zero()))
}

/// `(nabla_k r)_{ij}` with index order `(i, j, k)`.
pub fn nabla_ricci<R: Ring>(r: &Matrix<R>, gamma: &Tensor<R>) -> Tensor<R> {
    covariant_derivative_2(r, gamma)
}

/// `(nabla_k r)_{ij} = (nabla_j r)_{ik}` for all indices.
pub fn eq1_check<R: Ring>(nabla_r: &Tensor<R>) -> bool {
    nabla_r.indices().all(|idx| nabla_r.get(&idx) == nabla_r.get(&[idx[0], idx[2], idx[1]]))
}

/// Every curvature object of a concrete metric Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureReport {
    pub gamma: Tensor<FieldScalar>,
    pub riemann: Tensor<FieldScalar>,
    pub ricci: Matrix,
    pub scalar: FieldScalar,
    pub schouten: Matrix,
    pub weyl: Tensor<FieldScalar>,
    pub schouten_weyl: Tensor<FieldScalar>,
    pub div_weyl: Tensor<FieldScalar>,
    pub nabla_ricci: Tensor<FieldScalar>,
}

impl CurvatureReport {
    pub fn compute(alg: &LieAlgebra, g: &Metric) -> Result<Self, GeometryError> {
        let report = alg.jacobi_check();
        if !report.ok {
            return Err(GeometryError::JacobiViolated(report.violations.iter().map(|v| v.triple).collect()));
        }
        let c = alg.constants();
        let gamma = levi_civita(c, g)?;
        let riem = riemann(c, g, &gamma);
        let (r, s) = ricci(&riem, g);
        let a = one_dim_curvature(&r, &s, g)?;
        let w = weyl(&riem, &a, g);
        Ok(CurvatureReport {
            schouten_weyl: schouten_weyl(&a, &gamma),
            div_weyl: div_weyl(&w, &gamma, g),
            nabla_ricci: nabla_ricci(&r, &gamma),
            gamma,
            riemann: riem,
            ricci: r,
            scalar: s,
            schouten: a,
            weyl: w,
        })
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn identity_holds(&self) -> Result<bool, GeometryError> {
        identity_check(&self.schouten_weyl, &self.div_weyl)
    }

    pub fn eq1_holds(&self) -> bool {
        eq1_check(&self.nabla_ricci)
    }

    /// `R = W + A (.) g`.
    pub fn reconstructs_riemann(&self, g: &Metric) -> bool {
        self.weyl.plus(&kulkarni_nomizu(&self.schouten, g)) == self.riemann
    }

    /// Independent SW components: `j < k`, `i` arbitrary, in `(i, j, k)` order.
    pub fn sw_components(&self) -> Vec<((usize, usize, usize), FieldScalar)> {
        independent_sw(&self.schouten_weyl)
    }
}

/// Components with `j < k` of a tensor antisymmetric in its last two slots.
pub fn independent_sw<R: Ring>(t: &Tensor<R>) -> Vec<((usize, usize, usize), R)> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                out.push(((i, j, k), t.get(&[i, j, k]).clone()));
            }
        }
    }
    out
}

/// Sectional curvature of the plane spanned by `e_i`, `e_j`.
pub fn sectional_curvature(riem: &Tensor<FieldScalar>, g: &Metric, i: usize, j: usize) -> Result<FieldScalar, GeometryError> {
    let den = &(g.g(i, i) * g.g(j, j)) - &(g.g(i, j) * g.g(i, j));
    Ok(riem.get(&[i, j, i, j]).checked_div(&den)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> FieldScalar {
        x.parse().unwrap()
    }

    fn round_factor() -> LieAlgebra {
        LieAlgebra::from_entries(4, &[(1, 2, 3, s("1")), (2, 3, 1, s("1")), (1, 3, 2, s("-1"))]).unwrap()
    }

    #[test]
    fn abelian_is_flat() {
        let rep = CurvatureReport::compute(&LieAlgebra::abelian(4), &Metric::identity(4)).unwrap();
        assert!(rep.gamma.is_zero() && rep.riemann.is_zero() && rep.weyl.is_zero());
        assert!(rep.identity_holds().unwrap() && rep.eq1_holds());
    }

    #[test]
    fn round_factor_has_quarter_curvature() {
        let g = Metric::identity(4);
        let rep = CurvatureReport::compute(&round_factor(), &g).unwrap();
        assert_eq!(sectional_curvature(&rep.riemann, &g, 0, 1).unwrap(), s("1/4"));
        assert!(has_curvature_symmetries(&rep.riemann));
        assert!(is_trace_free(&rep.weyl, &g));
        assert!(rep.reconstructs_riemann(&g));

        let g4 = g.scaled(&s("4")).unwrap();
        let rep4 = CurvatureReport::compute(&round_factor(), &g4).unwrap();
        assert_eq!(rep4.ricci, rep.ricci);
        assert_eq!(rep4.scalar, &rep.scalar * &s("1/4"));
    }

    #[test]
    fn filiform_connection() {
        let alg = LieAlgebra::from_entries(4, &[(1, 2, 3, s("1"))]).unwrap();
        let g = Metric::identity(4);
        let gamma = levi_civita(alg.constants(), &g).unwrap();
        assert_eq!(*gamma.get(&[0, 1, 2]), s("1/2"));
        assert!(is_torsion_free(&gamma, alg.constants()));
        assert!(is_metric_compatible(&gamma, &g));
    }

    #[test]
    fn degenerate_and_asymmetric_metrics_rejected() {
        let z = Matrix::diagonal(&[s("1"), s("0"), s("1"), s("1")]);
        assert_eq!(Metric::new(z), Err(GeometryError::DegenerateMetric));
        let mut a = Matrix::identity(4);
        a.set(0, 1, s("1"));
        assert_eq!(Metric::new(a), Err(GeometryError::AsymmetricMetric));
    }

    #[test]
    fn identity_needs_dimension_four() {
        let alg = LieAlgebra::from_entries(3, &[(1, 2, 3, s("1"))]).unwrap();
        let rep = CurvatureReport::compute(&alg, &Metric::identity(3)).unwrap();
        assert_eq!(rep.identity_holds(), Err(GeometryError::DimensionTooSmall(3, 4)));
    }
}
