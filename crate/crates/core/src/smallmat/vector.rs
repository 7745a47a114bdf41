use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::error::{invalid, mismatch};
use crate::{Real, Result};

/// Dense column vector.
#[derive(Clone, PartialEq)]
pub struct Vector<T> {
    data: Vec<T>,
}

impl<T: Real> Vector<T> {
    pub fn from_slice(entries: &[T]) -> Result<Self> {
        Self::from_vec(entries.to_vec())
    }

    pub fn from_vec(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid!("empty vector"));
        }
        if let Some(i) = entries.iter().position(|x| !x.is_finite()) {
            return Err(invalid!("non-finite vector entry at index {i}"));
        }
        Ok(Self { data: entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<T>) -> Self {
        Self { data: entries }
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "vector dimension must be positive");
        Self {
            data: vec![T::zero(); n],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.data.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Max-abs norm.
    pub fn norm_inf(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, factor: T) -> Self {
        Self {
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    /// Entry-wise clamp to `[-bound, bound]`.
    pub fn clamp_abs(&self, bound: T) -> Self {
        Self {
            data: self.data.iter().map(|&x| x.max(-bound).min(bound)).collect(),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_len(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_len(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    fn check_len(&self, rhs: &Self) -> Result<()> {
        if self.len() != rhs.len() {
            return Err(mismatch!("vector lengths {} and {}", self.len(), rhs.len()));
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> Self {
        Self {
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl<T: Real> Index<usize> for Vector<T> {
    type Output = T;

    #[inline]
    fn index(&self, i: usize) -> &T {
        &self.data[i]
    }
}

impl<T: Real> Add for &Vector<T> {
    type Output = Vector<T>;

    fn add(self, rhs: Self) -> Vector<T> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Real> Sub for &Vector<T> {
    type Output = Vector<T>;

    fn sub(self, rhs: Self) -> Vector<T> {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: fmt::Debug> fmt::Debug for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.data).finish()
    }
}
