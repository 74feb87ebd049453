//! Adaptive quadrature: finite intervals, hinted semi-infinite tails, and
//! integrals against oscillatory Bessel kernels split at the kernel zeros.

mod adaptive;
mod bessel_kernel;
mod semi_infinite;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::real::Real;

pub use adaptive::{integrate, integrate_with, QuadOptions};
pub use bessel_kernel::{integrate_bessel_kernel, integrate_bessel_kernel_abel, wynn_epsilon, BesselKernel};
pub use semi_infinite::{integrate_semi_infinite, tail_cutoff, DecayHint};

/// Value an integrand may return: a real scalar or a complex number.
pub trait QuadValue<T: Real>:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> + Send + Sync
{
    fn magnitude(&self) -> T;
    fn reciprocal(self) -> Self;
}

impl<T: Real> QuadValue<T> for T {
    #[inline]
    fn magnitude(&self) -> T {
        self.abs()
    }

    #[inline]
    fn reciprocal(self) -> Self {
        self.recip()
    }
}

impl<T: Real> QuadValue<T> for Complex<T> {
    #[inline]
    fn magnitude(&self) -> T {
        self.norm()
    }

    #[inline]
    fn reciprocal(self) -> Self {
        self.inv()
    }
}

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult<T, V = T> {
    pub value: V,
    pub error_estimate: T,
    pub evaluations: usize,
}

impl<T: Real, V: QuadValue<T>> QuadratureResult<T, V> {
    pub(crate) fn zero() -> Self {
        Self {
            value: V::zero(),
            error_estimate: T::zero(),
            evaluations: 0,
        }
    }

    pub(crate) fn accumulate(&mut self, other: &Self) {
        self.value = self.value + other.value;
        self.error_estimate = self.error_estimate + other.error_estimate;
        self.evaluations += other.evaluations;
    }
}
