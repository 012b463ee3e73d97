//! Univariate polynomials over `Q(sqrt(d))`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::matrix::Matrix;
use crate::scalar::{FieldScalar, Rational};

/// Coefficients stored lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UPoly {
    coeffs: Vec<FieldScalar>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<FieldScalar>) -> Self {
        while coeffs.last().is_some_and(FieldScalar::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldScalar::one())
    }

    pub fn constant(c: FieldScalar) -> Self {
        Self::new(vec![c])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![FieldScalar::zero(); n + 1];
        c[n] = FieldScalar::one();
        UPoly { coeffs: c }
    }

    /// `x - r`.
    pub fn linear_root(r: &FieldScalar) -> Self {
        Self::new(vec![-r, FieldScalar::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> FieldScalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![FieldScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, k: &FieldScalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![FieldScalar::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldScalar::from_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldScalar) -> FieldScalar {
        self.coeffs.iter().rev().fold(FieldScalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).plus(&Matrix::identity(n).scaled(c));
        }
        acc
    }

    /// Yun's square-free decomposition: monic, pairwise coprime factors
    /// `f_m` with `self = lc * prod f_m^m`; factors equal to 1 are omitted.
    pub fn square_free_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut m = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), m));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            m += 1;
        }
        out
    }

    fn sturm_chain(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&FieldScalar::from_int(-1)));
        }
        seq
    }

    /// Number of distinct real roots (Sturm's theorem; exact).
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.sturm_chain();
        let at_pos: Vec<i32> = seq.iter().map(|p| p.leading().signum()).collect();
        let at_neg: Vec<i32> = seq
            .iter()
            .map(|p| {
                let s = p.leading().signum();
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        sign_changes(at_neg) - sign_changes(at_pos)
    }

    /// Distinct rational roots, found exactly.
    ///
    /// The square-free part is bisected with its Sturm chain until every
    /// isolating interval is narrower than the gap between two fractions
    /// whose denominators divide the leading coefficient; the simplest
    /// fraction in the interval is then the only possible rational root.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 || !self.coeffs.iter().all(FieldScalar::is_rational) {
            return out;
        }
        let f = self.div_rem(&self.gcd(&self.derivative())).0.monic();
        let coeffs: Vec<Rational> = f.coeffs.iter().map(|c| c.rational_part().clone()).collect();
        let lead = coeffs.iter().fold(BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let gap = Rational::new(BigInt::from(1), &lead * &lead);
        let bound = coeffs.iter().map(|c| c.abs()).fold(Rational::from_integer(BigInt::from(1)), |m, c| m + c);
        let chain = f.sturm_chain();
        let changes = |x: &Rational| {
            let x = FieldScalar::from_rational(x.clone());
            sign_changes(chain.iter().map(|p| p.eval(&x).signum()).collect())
        };
        let lo = -bound.clone();
        let (v_lo, v_hi) = (changes(&lo), changes(&bound));
        let mut stack = vec![(lo, v_lo, bound, v_hi)];
        while let Some((lo, v_lo, hi, v_hi)) = stack.pop() {
            let count = v_lo - v_hi;
            if count == 0 {
                continue;
            }
            if count == 1 && &hi - &lo < gap {
                let c = simplest_between(&lo, &hi);
                if f.eval(&FieldScalar::from_rational(c.clone())).is_zero() {
                    out.push(c);
                }
                continue;
            }
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            let v_mid = changes(&mid);
            stack.push((lo, v_lo, mid.clone(), v_mid));
            stack.push((mid, v_mid, hi, v_hi));
        }
        out.sort();
        out
    }

    /// Complex roots by the Durand-Kerner iteration, as `(re, im)` pairs.
    pub fn roots_approx(&self, tolerance: f64) -> Vec<(f64, f64)> {
        let Some(n) = self.degree() else {
            return Vec::new();
        };
        if n == 0 {
            return Vec::new();
        }
        let lead = self.leading().to_f64();
        let c: Vec<(f64, f64)> = self.coeffs.iter().map(|x| (x.to_f64() / lead, 0.0)).collect();
        let eval = |z: (f64, f64)| {
            let mut acc = (0.0, 0.0);
            for a in c.iter().rev() {
                acc = cadd(cmul(acc, z), *a);
            }
            acc
        };
        let bound = 1.0 + c[..n].iter().map(|a| cabs(*a)).fold(0.0, f64::max);
        let mut z: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let t = 0.4 + 2.0 * core::f64::consts::PI * k as f64 / n as f64;
                (bound * 0.9 * libm::cos(t), bound * 0.9 * libm::sin(t))
            })
            .collect();
        let tol = tolerance.max(1e-15);
        for _ in 0..2000 {
            let mut delta: f64 = 0.0;
            for i in 0..n {
                let mut den = (1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den = cmul(den, csub(z[i], z[j]));
                    }
                }
                if cabs(den) == 0.0 {
                    den = (1e-300, 0.0);
                }
                let step = cdiv(eval(z[i]), den);
                z[i] = csub(z[i], step);
                delta = delta.max(cabs(step));
            }
            if delta < tol * 1e-3 {
                break;
            }
        }
        z
    }

    /// Distinct roots lying in `Q(sqrt(d))` (`d` = 0 for the rationals),
    /// located numerically and then confirmed by exact evaluation.
    pub fn roots_in_field(&self, d: u64) -> Vec<FieldScalar> {
        let mut found: Vec<FieldScalar> = Vec::new();
        let Some(deg) = self.degree() else {
            return found;
        };
        if deg == 0 {
            return found;
        }
        let push = |r: FieldScalar, found: &mut Vec<FieldScalar>| {
            if !found.contains(&r) && self.eval(&r).is_zero() {
                found.push(r);
            }
        };
        if deg == 1 {
            let r = -(&self.coeff(0) * &self.coeff(1).inv().expect("degree one"));
            push(r, &mut found);
            return found;
        }
        for r in self.rational_roots() {
            push(FieldScalar::from_rational(r), &mut found);
        }
        let roots = self.roots_approx(1e-13);
        let real: Vec<f64> = roots.iter().filter(|z| z.1.abs() < 1e-6 * (1.0 + z.0.abs())).map(|z| z.0).collect();
        for &x in &real {
            if let Some(r) = approx_rational(x) {
                push(FieldScalar::from_rational(r), &mut found);
            }
        }
        if d >= 2 {
            let conj = UPoly::new(self.coeffs.iter().map(FieldScalar::conjugate).collect());
            let conj_real: Vec<f64> = conj
                .roots_approx(1e-13)
                .iter()
                .filter(|z| z.1.abs() < 1e-6 * (1.0 + z.0.abs()))
                .map(|z| z.0)
                .collect();
            let sd = libm::sqrt(d as f64);
            for &x in &real {
                for &y in &conj_real {
                    let (Some(u), Some(v)) = (approx_rational((x + y) / 2.0), approx_rational((x - y) / (2.0 * sd)))
                    else {
                        continue;
                    };
                    if let Ok(r) = FieldScalar::new(u, v, d) {
                        push(r, &mut found);
                    }
                }
            }
        }
        found
    }

    pub fn display_in(&self, var: &str) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        if self.is_zero() {
            return "0".into();
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0 && c.is_rational();
            let mag = if neg { -c } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if mag.is_rational() { alloc::format!("{mag}") } else { alloc::format!("({mag})") };
            match i {
                0 => s.push_str(&coeff),
                _ => {
                    if !mag.is_one() {
                        let _ = write!(s, "{coeff}*");
                    }
                    s.push_str(var);
                    if i > 1 {
                        let _ = write!(s, "^{i}");
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

fn sign_changes(signs: Vec<i32>) -> usize {
    let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The fraction with the smallest denominator in `[lo, hi]`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let zero = Rational::from_integer(BigInt::from(0));
    if hi < &zero {
        return -simplest_between(&-hi, &-lo);
    }
    if lo <= &zero {
        return zero;
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl < hi.floor() || &hi.floor() == hi {
        return fl + Rational::from_integer(BigInt::from(1));
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Best rational approximation with a small denominator, by continued
/// fractions.
fn approx_rational(x: f64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let tol = 1e-7 * (1.0 + x.abs());
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut r = x;
    for _ in 0..40 {
        let a = libm::floor(r);
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > 1_000_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - x).abs() < tol {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 != 0 && (h1 as f64 / k1 as f64 - x).abs() < tol {
        Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
    } else {
        None
    }
}

fn cadd(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 + b.0, a.1 + b.1)
}
fn csub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}
fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}
fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let den = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / den, (a.1 * b.0 - a.0 * b.1) / den)
}
fn cabs(a: (f64, f64)) -> f64 {
    libm::hypot(a.0, a.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| FieldScalar::from_int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.mul(&b).add(&p(&[1])).div_rem(&a);
        assert_eq!(q, b);
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn yun_decomposition() {
        // x (x+8) (x-1)^2 (x^2+1)^3
        let f = p(&[0, 1]).mul(&p(&[8, 1])).mul(&p(&[-1, 1]).pow(2)).mul(&p(&[1, 0, 1]).pow(3));
        let dec = f.square_free_decomposition();
        assert_eq!(dec, vec![(p(&[0, 8, 1]), 1), (p(&[-1, 1]), 2), (p(&[1, 0, 1]), 3)]);
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(p(&[0, 8, 1]).mul(&p(&[64, -8, 1])).count_real_roots(), 2);
        assert_eq!(p(&[-1, 0, 0, 1]).count_real_roots(), 1);
        assert_eq!(p(&[24, -50, 35, -10, 1]).count_real_roots(), 4);
        assert_eq!(p(&[1, 0, 1]).count_real_roots(), 0);
    }

    #[test]
    fn field_roots_are_exact() {
        let f = p(&[24, -50, 35, -10, 1]);
        let mut r = f.roots_in_field(0);
        r.sort_by(|a, b| a.to_f64().partial_cmp(&b.to_f64()).unwrap());
        assert_eq!(r, (1..=4).map(FieldScalar::from_int).collect::<Vec<_>>());
        // x^2 - 2x - 2 has roots 1 +- sqrt(3)
        let g = p(&[-2, -2, 1]);
        assert!(g.roots_in_field(0).is_empty());
        assert_eq!(g.roots_in_field(3).len(), 2);
        // x^2 - 2 has no root in Q(sqrt(3))
        assert!(p(&[-2, 0, 1]).roots_in_field(3).is_empty());
    }

    #[test]
    fn clustered_rational_roots() {
        let r = |n: i64, d: i64| FieldScalar::from_ratio(n, d);
        let roots = [r(-2000000001, 1000000000), r(-2, 1), r(-2000000003, 1000000000), r(7, 3)];
        let f = roots.iter().fold(UPoly::one(), |acc, x| acc.mul(&UPoly::linear_root(x)));
        let f = f.mul(&UPoly::linear_root(&roots[1]));
        let mut found = f.rational_roots();
        found.sort();
        let mut want: Vec<Rational> = roots.iter().map(|x| x.rational_part().clone()).collect();
        want.sort();
        assert_eq!(found, want);
        assert!(p(&[-2, 0, 1]).rational_roots().is_empty());
    }
}
