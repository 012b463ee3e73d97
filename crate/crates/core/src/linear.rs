//! Echelon reduction of systems that are linear in a designated set of
//! variables, with coefficients that are polynomials in the remaining
//! (parameter) variables.
//!
//! A coefficient may serve as a pivot only when it is certified nonzero: a
//! nonzero constant times a product of the caller's nonvanishing
//! assumptions (e.g. `rho1 - rho2`).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::AlgebraError;
use crate::poly::{MultiPoly, VarSet};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearReduction {
    /// Designated variables forced to vanish.
    pub forced_zero: Vec<usize>,
    /// Remaining nonzero rows as linear forms (not of the `var = 0` shape).
    pub relations: Vec<MultiPoly>,
    /// Number of nonzero rows in the echelon form.
    pub rank: usize,
    /// Certified pivot rows: `(pivot variable, row)`, fully reduced so no
    /// other pivot variable appears.
    pub pivots: Vec<(usize, MultiPoly)>,
    /// Rows without a certified pivot.
    pub uncertified: Vec<MultiPoly>,
}

impl LinearReduction {
    /// Expresses each pivot variable through the free variables, using the
    /// certified rows. Rows with a non-constant pivot coefficient are
    /// skipped.
    pub fn solution_map(&self) -> BTreeMap<usize, MultiPoly> {
        let mut map = BTreeMap::new();
        for (v, row) in &self.pivots {
            let Some((coef, rest)) = row.split_linear(*v) else { continue };
            let Some(c) = coef.as_constant() else { continue };
            let Ok(inv) = c.inv() else { continue };
            map.insert(*v, rest.scale(&-inv));
        }
        map
    }
}

struct Row {
    /// coefficient of each designated variable
    coeffs: Vec<MultiPoly>,
    /// part free of designated variables
    rest: MultiPoly,
}

impl Row {
    fn is_zero(&self) -> bool {
        self.rest.is_zero() && self.coeffs.iter().all(MultiPoly::is_zero)
    }

    fn entries_mut(&mut self) -> impl Iterator<Item = &mut MultiPoly> {
        self.coeffs.iter_mut().chain(core::iter::once(&mut self.rest))
    }

    fn entries(&self) -> impl Iterator<Item = &MultiPoly> {
        self.coeffs.iter().chain(core::iter::once(&self.rest))
    }

    fn to_poly(&self, vars: &[usize]) -> MultiPoly {
        let mut p = self.rest.clone();
        for (c, &v) in self.coeffs.iter().zip(vars) {
            p = p.add(&c.mul(&MultiPoly::var(v)));
        }
        p
    }

    /// Divides out assumption factors common to every entry, then scales so
    /// the first nonzero constant-coefficient entry becomes 1.
    fn normalize(&mut self, assumptions: &[MultiPoly]) {
        loop {
            let mut changed = false;
            for a in assumptions {
                if a.as_constant().is_some() {
                    continue;
                }
                let all: Option<Vec<MultiPoly>> =
                    self.entries().map(|e| if e.is_zero() { Some(MultiPoly::zero()) } else { e.div_exact(a) }).collect();
                if let Some(q) = all {
                    if !self.is_zero() {
                        for (slot, v) in self.entries_mut().zip(q) {
                            *slot = v;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let first = self.entries().find_map(|e| e.as_constant().filter(|c| !c.is_zero()));
        if let Some(c) = first {
            let inv = c.inv().expect("nonzero");
            for e in self.entries_mut() {
                *e = e.scale(&inv);
            }
        }
    }
}

/// True when `c` is a nonzero constant times a product of assumptions.
fn certified_nonzero(c: &MultiPoly, assumptions: &[MultiPoly]) -> bool {
    let mut cur = c.clone();
    'outer: loop {
        if let Some(k) = cur.as_constant() {
            return !k.is_zero();
        }
        for a in assumptions {
            if a.as_constant().is_some() {
                continue;
            }
            if let Some(q) = cur.div_exact(a) {
                cur = q;
                continue 'outer;
            }
        }
        return false;
    }
}

/// Reduces `system` (each polynomial of degree at most 1 in `vars`) to
/// reduced echelon form under the nonvanishing `assumptions`.
pub fn reduce_linear(
    system: &[MultiPoly],
    vars: &[usize],
    assumptions: &[MultiPoly],
    names: Option<&VarSet>,
) -> Result<LinearReduction, AlgebraError> {
    let mut rows = Vec::with_capacity(system.len());
    for p in system {
        let mut row = Row { coeffs: Vec::with_capacity(vars.len()), rest: MultiPoly::zero() };
        for (m, c) in p.terms() {
            let deg: u32 = vars.iter().map(|&v| m.exp(v) as u32).sum();
            if deg > 1 {
                let term = MultiPoly::term(m.clone(), c.clone());
                let text = match names {
                    Some(n) => n.render(&term, crate::poly::MonomialOrder::GrevLex),
                    None => alloc::format!("{m:?}"),
                };
                return Err(AlgebraError::NonLinear(text));
            }
        }
        let mut rest = p.clone();
        for &v in vars {
            let (lin, r) = rest.split_linear(v).expect("degree checked above");
            row.coeffs.push(lin);
            rest = r;
        }
        row.rest = rest;
        row.normalize(assumptions);
        if !row.is_zero() {
            rows.push(row);
        }
    }

    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index, column)
    let mut next = 0;
    for col in 0..vars.len() {
        // prefer constant pivots, then sparse rows
        let candidate = (next..rows.len())
            .filter(|&r| !rows[r].coeffs[col].is_zero())
            .filter(|&r| certified_nonzero(&rows[r].coeffs[col], assumptions))
            .min_by_key(|&r| {
                let support = rows[r].entries().filter(|e| !e.is_zero()).count();
                (rows[r].coeffs[col].as_constant().is_none(), support, rows[r].coeffs[col].len(), r)
            });
        let Some(pr) = candidate else { continue };
        rows.swap(next, pr);
        let pivot = rows[next].coeffs[col].clone();
        for r in 0..rows.len() {
            if r == next || rows[r].coeffs[col].is_zero() {
                continue;
            }
            let factor = rows[r].coeffs[col].clone();
            let (head, tail) = rows.split_at_mut(r.max(next));
            let (target, source) = if r > next { (&mut tail[0], &head[next]) } else { (&mut head[r], &tail[0]) };
            let src: Vec<MultiPoly> = source.entries().cloned().collect();
            for (slot, s) in target.entries_mut().zip(src) {
                *slot = slot.mul(&pivot).sub(&factor.mul(&s));
            }
            target.normalize(assumptions);
        }
        pivots.push((next, col));
        next += 1;
    }
    rows.retain(|r| !r.is_zero());
    // pivot rows keep their position at the front; recompute after retain
    let pivot_cols: BTreeMap<usize, usize> = pivots.iter().map(|&(r, c)| (r, c)).collect();

    let mut out = LinearReduction {
        forced_zero: Vec::new(),
        relations: Vec::new(),
        rank: rows.len(),
        pivots: Vec::new(),
        uncertified: Vec::new(),
    };
    for (idx, row) in rows.iter().enumerate() {
        let poly = row.to_poly(vars);
        match pivot_cols.get(&idx) {
            Some(&col) => {
                let single = row.rest.is_zero() && row.coeffs.iter().enumerate().all(|(c, e)| c == col || e.is_zero());
                if single {
                    out.forced_zero.push(vars[col]);
                } else {
                    out.relations.push(poly.clone());
                }
                out.pivots.push((vars[col], poly));
            }
            None => {
                out.relations.push(poly.clone());
                out.uncertified.push(poly);
            }
        }
    }
    out.forced_zero.sort_unstable();
    Ok(out)
}
