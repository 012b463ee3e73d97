//! Exact numbers `p + q*sqrt(d)` with rational `p`, `q`.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

pub type Rational = num_rational::BigRational;

/// An element of `Q(sqrt(d))`.
///
/// `d` is square-free and shared by every irrational value taking part in
/// one computation. Values with `q = 0` are plain rationals and carry
/// `d = 0`, so they combine freely with any field. Combining two irrational
/// values over different radicals panics; parsers reject such input before
/// it reaches arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    p: Rational,
    q: Rational,
    d: u64,
}

pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return true;
    }
    let mut n = d;
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return false;
            }
        }
        f += 1;
    }
    true
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let dn = r.denom();
    let sn = n.sqrt();
    let sd = dn.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == dn {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

impl FieldScalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(p: Rational) -> Self {
        FieldScalar { p, q: Rational::zero(), d: 0 }
    }

    /// Builds `p + q*sqrt(d)`; `d` must be square-free.
    pub fn new(p: Rational, q: Rational, d: u64) -> Result<Self, AlgebraError> {
        if !is_square_free(d) {
            return Err(AlgebraError::NotSquareFree(d));
        }
        Ok(Self::normalized(p, q, d))
    }

    /// `sqrt(d)` for square-free `d`.
    pub fn sqrt_of(d: u64) -> Result<Self, AlgebraError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    fn normalized(p: Rational, q: Rational, d: u64) -> Self {
        match d {
            0 => FieldScalar { p, q: Rational::zero(), d: 0 },
            1 => FieldScalar { p: p + q, q: Rational::zero(), d: 0 },
            _ if q.is_zero() => FieldScalar { p, q, d: 0 },
            _ => FieldScalar { p, q, d },
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn radical_part(&self) -> &Rational {
        &self.q
    }

    /// The radicand, or 0 for a rational value.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.q.is_zero() && self.p.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// The radicand shared by `self` and `other`, panicking on a mix.
    fn common_d(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (a, b) if a == b => a,
            (a, b) => panic!("{}", AlgebraError::MixedRadicals(a, b)),
        }
    }

    /// Checks radicand compatibility without panicking.
    pub fn compatible(&self, other: &Self) -> Result<u64, AlgebraError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(AlgebraError::MixedRadicals(a, b)),
        }
    }

    /// Galois conjugate `p - q*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        FieldScalar { p: self.p.clone(), q: -self.q.clone(), d: self.d }
    }

    /// Field norm `p^2 - q^2 d`.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * rat(self.d as i64)
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.norm();
        assert!(!n.is_zero(), "zero norm for nonzero element of Q(sqrt({}))", self.d);
        Ok(Self::normalized(&self.p / &n, -&self.q / &n, self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.d == 0 && other.d == 0 {
            if other.p.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            return Ok(Self::from_rational(&self.p / &other.p));
        }
        Ok(self * &other.inv()?)
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // p and q*sqrt(d) have opposite signs: compare magnitudes squared.
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * rat(self.d as i64);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Square root inside `Q(sqrt(d))` (`d` = 0 for the rationals), if one
    /// exists. Returns the nonnegative root.
    pub fn sqrt_in(&self, d: u64) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        let d = self.compatible(&Self::normalized(Rational::zero(), Rational::one(), d)).ok()?;
        if self.q.is_zero() {
            if let Some(r) = rational_sqrt(&self.p) {
                return Some(Self::from_rational(r));
            }
            if d < 2 {
                return None;
            }
            // p = d y^2
            let y = rational_sqrt(&(&self.p / rat(d as i64)))?;
            return Some(Self::normalized(Rational::zero(), y, d));
        }
        // (x + y sqrt(d))^2 = x^2 + d y^2 + 2xy sqrt(d), x != 0
        let disc = rational_sqrt(&self.norm())?;
        let two = rat(2);
        for cand in [(&self.p + &disc) / &two, (&self.p - &disc) / &two] {
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.q / (&two * &x);
                let root = Self::normalized(x, y, d);
                if &(&root * &root) == self {
                    return Some(root.abs());
                }
            }
        }
        None
    }

    /// Square root in the value's own field.
    pub fn sqrt(&self) -> Option<Self> {
        self.sqrt_in(self.d)
    }

    /// `sqrt(self)` where the result may need the radical `sqrt(self)` itself:
    /// for a rational `r`, writes `r = s^2 * k` with `k` square-free and
    /// returns `s*sqrt(k)`.
    pub fn sqrt_rational_extend(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if let Some(s) = rational_sqrt(r) {
            return Some(Self::from_rational(s));
        }
        // r = n/m = n*m / m^2
        let nm = r.numer() * r.denom();
        let nm = nm.to_u64()?;
        let (s, k) = split_square(nm);
        let coeff = Rational::new(BigInt::from(s), r.denom().clone());
        Self::new(Rational::zero(), coeff, k).ok()
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        if self.q.is_zero() {
            return p;
        }
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * libm::sqrt(self.d as f64)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// `n = s^2 * k` with `k` square-free.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut k = 1u64;
    let mut f = 2u64;
    while f * f <= n {
        let mut e = 0;
        while n % f == 0 {
            n /= f;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= f;
        }
        if e % 2 == 1 {
            k *= f;
        }
        f += 1;
    }
    k *= n;
    (s, k)
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

impl Default for FieldScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for FieldScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, o: &FieldScalar) -> FieldScalar {
        if self.d == 0 && o.d == 0 {
            return FieldScalar::from_rational(&self.p + &o.p);
        }
        let d = self.common_d(o);
        FieldScalar::normalized(&self.p + &o.p, &self.q + &o.q, d)
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, o: &FieldScalar) -> FieldScalar {
        if self.d == 0 && o.d == 0 {
            return FieldScalar::from_rational(&self.p - &o.p);
        }
        let d = self.common_d(o);
        FieldScalar::normalized(&self.p - &o.p, &self.q - &o.q, d)
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, o: &FieldScalar) -> FieldScalar {
        if self.d == 0 && o.d == 0 {
            return FieldScalar::from_rational(&self.p * &o.p);
        }
        let d = self.common_d(o);
        let p = &self.p * &o.p + &self.q * &o.q * rat(d as i64);
        let q = &self.p * &o.q + &self.q * &o.p;
        FieldScalar::normalized(p, q, d)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, o: FieldScalar) -> FieldScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, o: &FieldScalar) -> FieldScalar {
                (&self).$m(o)
            }
        }
        impl $atr<&FieldScalar> for FieldScalar {
            fn $am(&mut self, o: &FieldScalar) {
                *self = (&*self).$m(o);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar { p: -self.p, q: -self.q, d: self.d }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -self.clone()
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical exact form: `p`, `q*sqrt(d)`, `p+q*sqrt(d)` or `p-q*sqrt(d)`
/// with `q` omitted when it is 1.
impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return f.write_str(&fmt_rational(&self.p));
        }
        let qabs = self.q.abs();
        let radical = if qabs.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_rational(&qabs), self.d)
        };
        let neg = self.q.is_negative();
        if self.p.is_zero() {
            if neg {
                write!(f, "-{radical}")
            } else {
                f.write_str(&radical)
            }
        } else {
            let sign = if neg { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rational(&self.p), sign, radical)
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        // decimal literal, exact
        let neg = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.trim() == "-" || int.trim().is_empty() {
            BigInt::zero()
        } else {
            int.trim().parse().ok()?
        };
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let f: BigInt = frac.parse().ok()?;
        let mag = int_part.abs() * &scale + f;
        let n = if neg { -mag } else { mag };
        return Some(Rational::new(n, scale));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Parses the radical term `[rational "*"] "sqrt(" int ")"` (no sign).
fn parse_radical(s: &str) -> Option<(Rational, u64)> {
    let s = s.trim();
    let idx = s.find("sqrt(")?;
    let coeff = s[..idx].trim();
    let coeff = if coeff.is_empty() {
        Rational::one()
    } else {
        parse_rational(coeff.strip_suffix('*')?)?
    };
    let rest = s[idx + 5..].strip_suffix(')')?;
    let d: u64 = rest.trim().parse().ok()?;
    Some((coeff, d))
}

/// Accepts `rational`, `[sign][rational*]sqrt(d)` and
/// `rational (+|-) [rational*]sqrt(d)`.
impl FromStr for FieldScalar {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AlgebraError::ParseScalar(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if !t.contains("sqrt(") {
            return parse_rational(&t).map(Self::from_rational).ok_or_else(err);
        }
        // Split at the sign that starts the radical term (not a leading sign).
        let bytes = t.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'*' {
                split = Some(i);
                break;
            }
        }
        let (p, sign, rad) = match split {
            Some(i) if !t[..i].contains("sqrt(") => {
                let p = parse_rational(&t[..i]).ok_or_else(err)?;
                (p, &t[i..=i], &t[i + 1..])
            }
            _ => {
                if let Some(r) = t.strip_prefix('-') {
                    (Rational::zero(), "-", r)
                } else {
                    (Rational::zero(), "+", t.strip_prefix('+').unwrap_or(&t))
                }
            }
        };
        let (mut q, d) = parse_radical(rad).ok_or_else(err)?;
        if sign == "-" {
            q = -q;
        }
        if is_square_free(d) {
            Self::new(p, q, d)
        } else {
            // fold square factors: sqrt(s^2 k) = s sqrt(k)
            let (sq, k) = split_square(d);
            Self::new(p, q * rat(sq as i64), k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> FieldScalar {
        x.parse().unwrap()
    }

    #[test]
    fn conjugate_product() {
        assert_eq!(s("1+sqrt(3)") * s("1-sqrt(3)"), FieldScalar::from_int(-2));
        assert_eq!(s("sqrt(3)") * s("sqrt(3)"), FieldScalar::from_int(3));
    }

    #[test]
    fn inverse_by_multiplying_back() {
        let x = s("2+sqrt(3)");
        let inv = x.inv().unwrap();
        assert_eq!(inv, s("2-sqrt(3)"));
        assert!((&inv * &x).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(FieldScalar::one().checked_div(&FieldScalar::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn degenerate_radicands_fold() {
        let one = FieldScalar::new(rat(2), rat(3), 1).unwrap();
        assert_eq!(one, FieldScalar::from_int(5));
        assert!(one.is_rational());
        let zero = FieldScalar::new(rat(2), rat(3), 0).unwrap();
        assert_eq!(zero, FieldScalar::from_int(2));
        assert!(FieldScalar::new(rat(1), rat(1), 12).is_err());
    }

    #[test]
    #[should_panic]
    fn mixed_radicals_panic() {
        let _ = s("sqrt(2)") + s("sqrt(3)");
    }

    #[test]
    fn parse_and_display() {
        for text in ["0", "-3/2", "sqrt(3)", "-sqrt(3)", "1/2+3/4*sqrt(5)", "2-sqrt(3)", "-7*sqrt(2)"] {
            assert_eq!(s(text).to_string(), text);
        }
        assert_eq!(s("sqrt(12)"), s("2*sqrt(3)"));
        assert_eq!(s("0.25"), FieldScalar::from_ratio(1, 4));
        assert_eq!(s("-1/2 - 3*sqrt(3)").to_string(), "-1/2-3*sqrt(3)");
        assert!("abc".parse::<FieldScalar>().is_err());
        assert!("1/0".parse::<FieldScalar>().is_err());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(s("2-sqrt(3)").signum(), 1);
        assert_eq!(s("1-sqrt(3)").signum(), -1);
        assert_eq!(s("-2+sqrt(3)").signum(), -1);
        assert_eq!(s("-1+sqrt(3)").signum(), 1);
        assert_eq!(FieldScalar::zero().signum(), 0);
    }

    #[test]
    fn square_roots_in_field() {
        assert_eq!(s("48").sqrt(), None);
        assert_eq!(s("48").sqrt_in(3), Some(s("4*sqrt(3)")));
        assert_eq!(s("2").sqrt_in(3), None);
        assert_eq!(s("4+2*sqrt(3)").sqrt(), Some(s("1+sqrt(3)")));
        assert_eq!(s("9/4").sqrt(), Some(s("3/2")));
        assert_eq!(s("-1").sqrt(), None);
        assert_eq!(FieldScalar::sqrt_rational_extend(&rat(48)), Some(s("4*sqrt(3)")));
    }
}
