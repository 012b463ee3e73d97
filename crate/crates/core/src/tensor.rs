//! Dense tensors with all indices running over `0..n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<R> {
    dim: usize,
    order: usize,
    data: Vec<R>,
}

impl<R: Ring> Tensor<R> {
    pub fn zeros(dim: usize, order: usize) -> Self {
        Tensor { dim, order, data: vec![R::zero(); dim.pow(order as u32)] }
    }

    pub fn from_fn(dim: usize, order: usize, mut f: impl FnMut(&[usize]) -> R) -> Self {
        let len = dim.pow(order as u32);
        let mut idx = vec![0usize; order];
        let mut data = Vec::with_capacity(len);
        for flat in 0..len {
            let mut rem = flat;
            for slot in (0..order).rev() {
                idx[slot] = rem % dim;
                rem /= dim;
            }
            data.push(f(&idx));
        }
        Tensor { dim, order, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &R {
        &self.data[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: R) {
        let f = self.flat(idx);
        self.data[f] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    /// Components in row-major index order.
    pub fn components(&self) -> &[R] {
        &self.data
    }

    /// Multi-indices in the same order as [`Tensor::components`].
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let (dim, order) = (self.dim, self.order);
        (0..self.data.len()).map(move |flat| {
            let mut idx = vec![0usize; order];
            let mut rem = flat;
            for slot in (0..order).rev() {
                idx[slot] = rem % dim;
                rem /= dim;
            }
            idx
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Tensor<S> {
        Tensor { dim: self.dim, order: self.order, data: self.data.iter().map(f).collect() }
    }

    pub fn minus(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.order), (other.dim, other.order));
        Tensor {
            dim: self.dim,
            order: self.order,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.order), (other.dim, other.order));
        Tensor {
            dim: self.dim,
            order: self.order,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }
}
