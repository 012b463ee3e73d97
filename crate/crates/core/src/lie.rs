//! Lie algebras given by structure constants `[e_i, e_j] = sum_k C_{ij}^k e_k`.
//!
//! Indices are 0-based in code and 1-based in every rendered form.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::GeometryError;
use crate::poly::{MultiPoly, VarSet};
use crate::ring::Ring;
use crate::scalar::FieldScalar;

/// Antisymmetric structure constants, stored for `i < j` only.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<R> {
    dim: usize,
    data: Vec<R>,
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    // number of pairs (a, b) with a < i, plus offset within row i
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

impl<R: Ring> StructureConstants<R> {
    pub fn zero(dim: usize) -> Self {
        StructureConstants { dim, data: vec![R::zero(); dim * (dim - 1) / 2 * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `C_{ij}^k` for any `i`, `j` (antisymmetry applied).
    pub fn get(&self, i: usize, j: usize, k: usize) -> R {
        use core::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.data[pair_index(self.dim, i, j) * self.dim + k].clone(),
            Greater => self.data[pair_index(self.dim, j, i) * self.dim + k].negated(),
            Equal => R::zero(),
        }
    }

    /// Sets `C_{ij}^k` for `i < j`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: R) -> Result<(), GeometryError> {
        if !(i < j && j < self.dim && k < self.dim) {
            return Err(GeometryError::BadIndex(i + 1, j + 1, k + 1));
        }
        let p = pair_index(self.dim, i, j);
        self.data[p * self.dim + k] = value;
        Ok(())
    }

    /// Nonzero constants as `((i, j, k), value)` with `i < j`.
    pub fn nonzero(&self) -> Vec<((usize, usize, usize), R)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push(((i, j, k), v));
                    }
                }
            }
        }
        out
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket(&self, x: &[R], y: &[R]) -> Result<Vec<R>, GeometryError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(crate::error::AlgebraError::DimensionMismatch { expected: self.dim, got: v.len() }.into());
            }
        }
        let mut out = vec![R::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let xy = x[i].times(&y[j]);
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        slot.add_assign_ref(&xy.times(&c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<R> {
        (0..self.dim).map(|k| self.get(i, j, k)).collect()
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` expanded in the
    /// basis: component `l` is
    /// `sum_m C_{ij}^m C_{mk}^l + C_{jk}^m C_{mi}^l + C_{ki}^m C_{mj}^l`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<R> {
        (0..self.dim)
            .map(|l| {
                let mut acc = R::zero();
                for m in 0..self.dim {
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let left = self.get(a, b, m);
                        if left.is_zero() {
                            continue;
                        }
                        let right = self.get(m, c, l);
                        if !right.is_zero() {
                            acc.add_assign_ref(&left.times(&right));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> StructureConstants<S> {
        StructureConstants { dim: self.dim, data: self.data.iter().map(f).collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<FieldScalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub ok: bool,
    pub violations: Vec<JacobiViolation>,
}

/// A concrete Lie algebra candidate; the Jacobi identity is checked at
/// construction and recorded, not assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    constants: StructureConstants<FieldScalar>,
    valid: bool,
}

impl LieAlgebra {
    pub fn new(constants: StructureConstants<FieldScalar>) -> Self {
        let valid = jacobi_check(&constants).ok;
        LieAlgebra { constants, valid }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(StructureConstants::zero(dim))
    }

    /// Builds from 1-based `(i, j, k, value)` entries with `i < j`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, FieldScalar)]) -> Result<Self, GeometryError> {
        let mut c = StructureConstants::zero(dim);
        for (i, j, k, v) in entries {
            if *i == 0 || *j == 0 || *k == 0 {
                return Err(GeometryError::BadIndex(*i, *j, *k));
            }
            c.set(i - 1, j - 1, k - 1, v.clone())?;
        }
        Ok(Self::new(c))
    }

    pub fn dim(&self) -> usize {
        self.constants.dim
    }

    pub fn constants(&self) -> &StructureConstants<FieldScalar> {
        &self.constants
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn bracket(&self, x: &[FieldScalar], y: &[FieldScalar]) -> Result<Vec<FieldScalar>, GeometryError> {
        self.constants.bracket(x, y)
    }

    pub fn jacobi_check(&self) -> JacobiReport {
        jacobi_check(&self.constants)
    }
}

/// Checks all triples `i < j < k` and reports every violation.
pub fn jacobi_check(c: &StructureConstants<FieldScalar>) -> JacobiReport {
    let n = c.dim();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let residual = c.jacobiator(i, j, k);
                if residual.iter().any(|x| !x.is_zero()) {
                    violations.push(JacobiViolation { triple: (i, j, k), residual });
                }
            }
        }
    }
    JacobiReport { ok: violations.is_empty(), violations }
}

/// Name of the variable for `C_{ij}^k` (0-based arguments, 1-based name).
pub fn structure_constant_name(i: usize, j: usize, k: usize) -> String {
    alloc::format!("C_{}_{}^{}", i + 1, j + 1, k + 1)
}

/// Variables for all `C_{ij}^k` with `i < j`, ordered by `(i, j, k)`.
pub fn structure_constant_vars(dim: usize) -> VarSet {
    let mut names = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in 0..dim {
                names.push(structure_constant_name(i, j, k));
            }
        }
    }
    VarSet::new(names)
}

/// Index of `C_{ij}^k` (`i < j`, 0-based) in [`structure_constant_vars`].
pub fn structure_constant_index(dim: usize, i: usize, j: usize, k: usize) -> usize {
    pair_index(dim, i, j) * dim + k
}

/// Structure constants whose entries are the polynomial variables of
/// [`structure_constant_vars`].
pub fn symbolic_constants(dim: usize) -> StructureConstants<MultiPoly> {
    let count = dim * (dim - 1) / 2 * dim;
    StructureConstants { dim, data: (0..count).map(MultiPoly::var).collect() }
}

/// The Jacobi identity as polynomials in the structure constants: one per
/// triple `i < j < k` and output index `l`.
pub fn jacobi_polynomials(dim: usize) -> Vec<MultiPoly> {
    let c = symbolic_constants(dim);
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                out.extend(c.jacobiator(i, j, k));
            }
        }
    }
    out
}

/// Values of all structure constants in variable order, for evaluating
/// polynomials from [`jacobi_polynomials`] and friends.
pub fn constants_as_point(c: &StructureConstants<FieldScalar>) -> Vec<FieldScalar> {
    c.data.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> FieldScalar {
        x.parse().unwrap()
    }

    fn e(dim: usize, i: usize) -> Vec<FieldScalar> {
        (0..dim).map(|k| if k == i { FieldScalar::one() } else { FieldScalar::zero() }).collect()
    }

    #[test]
    fn abelian_bracket_vanishes() {
        let g = LieAlgebra::abelian(4);
        assert!(g.bracket(&e(4, 0), &e(4, 1)).unwrap().iter().all(FieldScalar::is_zero));
        assert!(g.jacobi_check().ok);
        assert!(g.bracket(&e(4, 0), &e(3, 1)).is_err());
    }

    #[test]
    fn sharing_target_direction_is_still_a_lie_algebra() {
        // [e1,e2] = e3, [e1,e3] = e3: every cyclic term of the (1,2,3) sum vanishes
        let g = LieAlgebra::from_entries(4, &[(1, 2, 3, s("1")), (1, 3, 3, s("1"))]).unwrap();
        assert!(g.is_valid());
    }

    #[test]
    fn violating_example_is_reported_with_residual() {
        // [e1,e2] = e3, [e1,e3] = e1: [[e3,e1],e2] = -[e1,e2] = -e3
        let g = LieAlgebra::from_entries(4, &[(1, 2, 3, s("1")), (1, 3, 1, s("1"))]).unwrap();
        let rep = g.jacobi_check();
        assert!(!rep.ok && !g.is_valid());
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].triple, (0, 1, 2));
        assert_eq!(rep.violations[0].residual, vec![s("0"), s("0"), s("-1"), s("0")]);
    }

    #[test]
    fn symbolic_and_numeric_jacobi_agree() {
        let g = LieAlgebra::from_entries(4, &[(1, 2, 3, s("1")), (1, 3, 1, s("1"))]).unwrap();
        let point = constants_as_point(g.constants());
        let polys = jacobi_polynomials(4);
        assert_eq!(polys.len(), 16);
        let values: Vec<FieldScalar> = polys.iter().map(|p| p.eval(&point)).collect();
        let numeric: Vec<FieldScalar> = (0..4)
            .flat_map(|i| (i + 1..4).flat_map(move |j| (j + 1..4).map(move |k| (i, j, k))))
            .flat_map(|(i, j, k)| g.constants().jacobiator(i, j, k))
            .collect();
        assert_eq!(values, numeric);
    }

    #[test]
    fn index_layout_matches_names() {
        let vs = structure_constant_vars(4);
        assert_eq!(vs.len(), 24);
        assert_eq!(vs.name(structure_constant_index(4, 1, 2, 2)), "C_2_3^3");
        assert_eq!(vs.name(structure_constant_index(4, 2, 3, 1)), "C_3_4^2");
    }
}
