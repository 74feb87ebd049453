//! Seeded families of test functions with known transforms.
//!
//! `f(y) = sum_n a_n (c y)^n e^{-c y}` has the closed-form image
//! `H f(x) = c^-1 sum_n a_n n! L_n(x/c) e^{-x/c}`. In the radial variable
//! `s = sqrt(2y)` these are gaussians times even polynomials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kleingordon::{Parity, WavePacket};
use crate::quad::DecayHint;
use crate::real::Real;

/// Dilations drawn by [`test_family`].
pub const SCALES: [f64; 3] = [0.25, 1.0, 4.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaguerreTest {
    pub coefs: Vec<f64>,
    pub scale: f64,
}

fn laguerre<T: Real>(n: usize, x: T) -> T {
    let (mut prev, mut cur) = (T::one(), T::one() - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let kf = T::from_count(k);
        let next = ((T::from_count(2 * k + 1) - x) * cur - kf * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

impl LaguerreTest {
    pub fn eval<T: Real>(&self, y: T) -> T {
        let z = T::cst(self.scale) * y;
        let mut p = T::zero();
        for &a in self.coefs.iter().rev() {
            p = p * z + T::cst(a);
        }
        p * (-z).exp()
    }

    /// The closed-form `H f(x)`.
    pub fn h_eval<T: Real>(&self, x: T) -> T {
        let z = x / T::cst(self.scale);
        let s: T = self.coefs.iter().enumerate().map(|(n, &a)| T::cst(a * factorial(n)) * laguerre(n, z)).sum();
        s * (-z).exp() / T::cst(self.scale)
    }

    pub fn decay(&self) -> DecayHint {
        DecayHint::Exponential { rate: 0.5 * self.scale }
    }

    pub fn h_decay(&self) -> DecayHint {
        DecayHint::Exponential { rate: 0.5 / self.scale }
    }

    /// `||f||_2^2 = c^-1 sum a_n a_m (n+m)! / 2^{n+m+1}`.
    pub fn norm_sq(&self) -> f64 {
        let mut s = 0.0;
        for (n, &a) in self.coefs.iter().enumerate() {
            for (m, &b) in self.coefs.iter().enumerate() {
                s += a * b * factorial(n + m) / 2f64.powi((n + m + 1) as i32);
            }
        }
        s / self.scale
    }
}

/// `count` test functions from a seeded ChaCha stream: degree 0 to 3,
/// coefficients uniform in `[-1, 1]` (leading one kept away from zero), scale
/// from [`SCALES`].
pub fn test_family(seed: u64, count: usize) -> Vec<LaguerreTest> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=3);
            let mut coefs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            if coefs[degree].abs() < 0.25 {
                coefs[degree] = 0.25f64.copysign(coefs[degree]);
            }
            let scale = SCALES[rng.gen_range(0..SCALES.len())];
            LaguerreTest { coefs, scale }
        })
        .collect()
}

/// `(center, sigma)` of the gaussian packets used for cross-path checks. All
/// place `alpha(DEFAULT_LAMBDA_MIN)` below `1e-12`, so the traces decay cleanly.
pub const PACKET_PARAMS: [(f64, f64); 5] = [(2.0, 0.25), (1.5, 0.18), (1.2, 0.15), (2.5, 0.3), (1.8, 0.22)];

/// PT-even gaussian packets from [`PACKET_PARAMS`].
pub fn packet_family<T: Real>(n: usize) -> Result<Vec<WavePacket<T>>> {
    PACKET_PARAMS.iter().map(|&(c, s)| WavePacket::gaussian(T::cst(c), T::cst(s), n, Parity::Even)).collect()
}
