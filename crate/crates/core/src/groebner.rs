//! Buchberger's algorithm with the coprime-leading-monomial criterion.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::AlgebraError;
use crate::poly::{Monomial, MonomialOrder, MultiPoly};
use crate::scalar::FieldScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    pub order: MonomialOrder,
    /// Maximum number of single-term reduction steps.
    pub budget: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { order: MonomialOrder::GrevLex, budget: 100_000 }
    }
}

/// Terms in increasing order, so the leading term is last.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<(Monomial, FieldScalar)>,
}

impl Sorted {
    fn from_poly(p: &MultiPoly, order: MonomialOrder) -> Self {
        let mut terms = p.sorted_terms(order);
        terms.reverse();
        Sorted { terms }
    }

    fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().cloned())
    }

    fn lead(&self) -> Option<&(Monomial, FieldScalar)> {
        self.terms.last()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            let inv = c.inv().expect("nonzero coefficient");
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
    }

    /// `self - k * m * g`, all in increasing order.
    fn sub_scaled(&self, k: &FieldScalar, m: &Monomial, g: &Sorted, order: MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), -(gc * k))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (xm, xc) = a.next().unwrap();
                        let (_, yc) = b.next().unwrap();
                        let c = xc + &yc;
                        if !c.is_zero() {
                            out.push((xm.clone(), c));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Sorted { terms: out }
    }
}

fn normal_form(
    p: &Sorted,
    basis: &[Sorted],
    order: MonomialOrder,
    steps: &mut usize,
    budget: usize,
) -> Result<Sorted, AlgebraError> {
    let mut work = p.clone();
    let mut rem_desc: Vec<(Monomial, FieldScalar)> = Vec::new();
    while let Some((m, c)) = work.lead().cloned() {
        let divisor = basis.iter().find(|g| g.lead().is_some_and(|(gm, _)| gm.divides(&m)));
        match divisor {
            Some(g) => {
                *steps += 1;
                if *steps > budget {
                    return Err(AlgebraError::BudgetExhausted(*steps - 1));
                }
                let (gm, gc) = g.lead().unwrap();
                let q = gm.quotient_of(&m);
                let k = c.checked_div(gc)?;
                work = work.sub_scaled(&k, &q, g, order);
            }
            None => {
                work.terms.pop();
                rem_desc.push((m, c));
            }
        }
    }
    rem_desc.reverse();
    Ok(Sorted { terms: rem_desc })
}

/// Full reduction of `f` modulo `basis` (the remainder of multivariate
/// division).
pub fn reduce(f: &MultiPoly, basis: &[MultiPoly], order: MonomialOrder) -> MultiPoly {
    let b: Vec<Sorted> = basis.iter().filter(|g| !g.is_zero()).map(|g| Sorted::from_poly(g, order)).collect();
    let mut steps = 0;
    normal_form(&Sorted::from_poly(f, order), &b, order, &mut steps, usize::MAX)
        .expect("unbounded reduction cannot exhaust its budget")
        .to_poly()
}

pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: MonomialOrder) -> MultiPoly {
    let (Some((fm, fc)), Some((gm, gc))) = (f.leading(order), g.leading(order)) else {
        return MultiPoly::zero();
    };
    let l = fm.lcm(gm);
    let a = f.mul_monomial(&fm.quotient_of(&l), &fc.inv().expect("nonzero"));
    let b = g.mul_monomial(&gm.quotient_of(&l), &gc.inv().expect("nonzero"));
    a.sub(&b)
}

/// Reduced Groebner basis of the ideal generated by `system`.
pub fn buchberger(system: &[MultiPoly], config: &GbConfig) -> Result<Vec<MultiPoly>, AlgebraError> {
    if system.is_empty() {
        return Err(AlgebraError::EmptySystem);
    }
    let order = config.order;
    let mut steps = 0usize;
    let mut basis: Vec<Sorted> = Vec::new();
    for p in system.iter().filter(|p| !p.is_zero()) {
        let mut s = Sorted::from_poly(p, order);
        s.make_monic();
        basis.push(s);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let lcm_of = |&(i, j): &(usize, usize)| basis[i].lead().unwrap().0.lcm(&basis[j].lead().unwrap().0);
        let (best, _) = pairs
            .iter()
            .enumerate()
            .map(|(k, p)| (k, lcm_of(p)))
            .min_by(|a, b| order.cmp(&a.1, &b.1).then(a.0.cmp(&b.0)))
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        let (mi, ci) = basis[i].lead().unwrap().clone();
        let (mj, cj) = basis[j].lead().unwrap().clone();
        if mi.coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let empty = Sorted { terms: Vec::new() };
        let a = empty.sub_scaled(&-ci.inv()?, &mi.quotient_of(&l), &basis[i], order);
        let s = a.sub_scaled(&cj.inv()?, &mj.quotient_of(&l), &basis[j], order);
        let mut r = normal_form(&s, &basis, order, &mut steps, config.budget)?;
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        basis.push(r);
        let n = basis.len() - 1;
        for k in 0..n {
            pairs.push((k, n));
        }
    }
    // minimal basis
    let mut keep: Vec<Sorted> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let gm = &g.lead().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            let hm = &h.lead().unwrap().0;
            o != k && hm.divides(gm) && (hm != gm || o < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<Sorted> = keep.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, g)| g.clone()).collect();
        let lead = keep[k].lead().unwrap().clone();
        let tail = Sorted { terms: keep[k].terms[..keep[k].terms.len() - 1].to_vec() };
        let mut r = normal_form(&tail, &others, order, &mut steps, config.budget)?;
        // leading term is irreducible by minimality; append it back on top
        r.terms.push(lead);
        r.make_monic();
        reduced.push(r.to_poly());
    }
    reduced.sort_by(|a, b| {
        let la = a.leading(order).unwrap().0;
        let lb = b.leading(order).unwrap().0;
        order.cmp(la, lb)
    });
    Ok(reduced)
}

/// Checks the Buchberger criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[MultiPoly], order: MonomialOrder) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            if !reduce(&s_polynomial(&basis[i], &basis[j], order), basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}
