//! The arithmetic the tensor code needs, shared by exact scalars and
//! polynomials so that one implementation serves the numeric and the
//! symbolic pipelines.

use core::fmt::Debug;

use crate::scalar::FieldScalar;

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_scalar(c: &FieldScalar) -> Self;

    fn scaled(&self, c: &FieldScalar) -> Self {
        self.times(&Self::from_scalar(c))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }
}

impl Ring for FieldScalar {
    fn zero() -> Self {
        FieldScalar::zero()
    }
    fn one() -> Self {
        FieldScalar::one()
    }
    fn is_zero(&self) -> bool {
        FieldScalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_scalar(c: &FieldScalar) -> Self {
        c.clone()
    }
    fn scaled(&self, c: &FieldScalar) -> Self {
        self * c
    }
}
