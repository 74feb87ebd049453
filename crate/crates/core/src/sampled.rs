//! Functions known through samples on a uniform or log-uniform grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_semi_infinite, DecayHint, QuadValue};
use crate::real::Real;

/// Spacing law of a sample grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Uniform,
    LogUniform,
}

/// `n` equally spaced points on `[min, max]`.
pub fn uniform_grid<T: Real>(min: T, max: T, n: usize) -> Vec<T> {
    let n = n.max(2);
    let h = (max - min) / T::from_count(n - 1);
    (0..n).map(|i| if i == n - 1 { max } else { min + h * T::from_count(i) }).collect()
}

/// `n` points on `[min, max]` equally spaced in `ln x`.
pub fn log_grid<T: Real>(min: T, max: T, n: usize) -> Vec<T> {
    let n = n.max(2);
    let (a, b) = (min.ln(), max.ln());
    let h = (b - a) / T::from_count(n - 1);
    (0..n)
        .map(|i| match i {
            0 => min,
            i if i == n - 1 => max,
            i => (a + h * T::from_count(i)).exp(),
        })
        .collect()
}

/// Continuation of a sampled function toward the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeadModel<T, V> {
    /// `x^exponent (c0 + c1 x + c2 x^2)`.
    Power { exponent: T, coefs: [V; 3] },
    /// The first sample, when no sensible fit exists.
    Constant(V),
}

/// Samples `values[i] = f(grid[i])` plus the metadata needed to evaluate `f`
/// anywhere on `(0, inf)`.
///
/// Between samples: cubic Lagrange interpolation in `x` (uniform grids) or in
/// `ln x` (log grids). Below the grid: `x^a` times the quadratic through the
/// first three samples of `f(x)/x^a`, with `a` read off the leading log-slopes
/// (and snapped to a nearby half-integer); the first sample when no exponent
/// in `(-1/2, 10]` fits. Above
/// the grid: continuation along the decay hint.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<T, V = T> {
    grid: Vec<T>,
    values: Vec<V>,
    grid_kind: GridKind,
    decay: DecayHint,
}

impl<T: Real, V: QuadValue<T>> SampledFunction<T, V> {
    pub fn new(grid: Vec<T>, values: Vec<V>, grid_kind: GridKind, decay: DecayHint) -> Result<Self> {
        decay.validate()?;
        if grid.len() < 4 {
            return Err(Error::InvalidData(format!("need at least 4 samples, got {}", grid.len())));
        }
        if grid.len() != values.len() {
            return Err(Error::InvalidData(format!(
                "{} grid points but {} values",
                grid.len(),
                values.len()
            )));
        }
        if !(grid[0] > T::zero()) {
            return Err(Error::InvalidData("grid points must be positive".into()));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidData("grid must be finite and strictly increasing".into()));
        }
        if values.iter().any(|v| !v.magnitude().is_finite()) {
            return Err(Error::InvalidData("sample values must be finite".into()));
        }
        let coord = |x: T| match grid_kind {
            GridKind::Uniform => x,
            GridKind::LogUniform => x.ln(),
        };
        let n = grid.len();
        let h = (coord(grid[n - 1]) - coord(grid[0])) / T::from_count(n - 1);
        let slack = T::cst(1e-6) * h;
        if grid.windows(2).any(|w| ((coord(w[1]) - coord(w[0])) - h).abs() > slack) {
            return Err(Error::InvalidData(format!("grid is not {grid_kind:?}")));
        }
        Ok(Self {
            grid,
            values,
            grid_kind,
            decay,
        })
    }

    /// Samples `f` on `grid`.
    pub fn from_fn(f: impl Fn(T) -> V, grid: Vec<T>, grid_kind: GridKind, decay: DecayHint) -> Result<Self> {
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::new(grid, values, grid_kind, decay)
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn grid_kind(&self) -> GridKind {
        self.grid_kind
    }

    pub fn decay(&self) -> DecayHint {
        self.decay
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn grid_min(&self) -> T {
        self.grid[0]
    }

    pub fn grid_max(&self) -> T {
        self.grid[self.grid.len() - 1]
    }

    fn coord(&self, x: T) -> T {
        match self.grid_kind {
            GridKind::Uniform => x,
            GridKind::LogUniform => x.ln(),
        }
    }

    /// Value at `x > 0` (zero for `x <= 0`).
    pub fn eval(&self, x: T) -> V {
        let n = self.grid.len();
        if !(x > T::zero()) {
            return V::zero();
        }
        if x < self.grid[0] {
            return self.below(x);
        }
        if x > self.grid[n - 1] {
            return self.above(x);
        }
        let c0 = self.coord(self.grid[0]);
        let h = (self.coord(self.grid[n - 1]) - c0) / T::from_count(n - 1);
        let t = (self.coord(x) - c0) / h;
        let i = t.floor().to_usize().unwrap_or(0).min(n - 2);
        // four-point stencil i-1..i+2, shifted inward at the ends
        let start = i.saturating_sub(1).min(n - 4);
        let s = t - T::from_count(start);
        let nodes = [T::zero(), T::one(), T::two(), T::cst(3.0)];
        let mut acc = V::zero();
        for j in 0..4 {
            let mut w = T::one();
            for m in 0..4 {
                if m != j {
                    w = w * (s - nodes[m]) / (nodes[j] - nodes[m]);
                }
            }
            acc = acc + self.values[start + j] * w;
        }
        acc
    }

    /// Model used for `0 < x < grid_min`.
    pub fn head_model(&self) -> HeadModel<T, V> {
        let x = [self.grid[0], self.grid[1], self.grid[2]];
        let v = [self.values[0], self.values[1], self.values[2]];
        let m = [v[0].magnitude(), v[1].magnitude(), v[2].magnitude()];
        let mut exponent = T::zero();
        if m.iter().all(|&mi| mi > T::zero()) {
            let unit = |k: usize| v[k] * (T::one() / m[k]);
            let aligned = (unit(0) - unit(1)).magnitude() < T::cst(1e-8) && (unit(1) - unit(2)).magnitude() < T::cst(1e-8);
            if aligned {
                // log-slopes at the geometric midpoints, extrapolated linearly to x = 0
                let s1 = (m[1] / m[0]).ln() / (x[1] / x[0]).ln();
                let s2 = (m[2] / m[1]).ln() / (x[2] / x[1]).ln();
                let (c1, c2) = ((x[0] * x[1]).sqrt(), (x[1] * x[2]).sqrt());
                let mut a = (c2 * s1 - c1 * s2) / (c2 - c1);
                let snapped = (a * T::two()).round() * T::half();
                if (a - snapped).abs() < T::cst(0.02) {
                    a = snapped;
                }
                if !(a > T::cst(-0.49) && a <= T::cst(10.0)) {
                    return HeadModel::Constant(v[0]);
                }
                exponent = a;
            }
        }
        // quadratic through the first three samples of g(x) / x^a
        let r: Vec<V> = (0..3).map(|k| v[k] * x[k].powf(-exponent)).collect();
        let d01 = (r[1] - r[0]) * (T::one() / (x[1] - x[0]));
        let d12 = (r[2] - r[1]) * (T::one() / (x[2] - x[1]));
        let d012 = (d12 - d01) * (T::one() / (x[2] - x[0]));
        let c2 = d012;
        let c1 = d01 - d012 * (x[0] + x[1]);
        let c0 = r[0] - d01 * x[0] + d012 * (x[0] * x[1]);
        HeadModel::Power {
            exponent,
            coefs: [c0, c1, c2],
        }
    }

    fn below(&self, x: T) -> V {
        match self.head_model() {
            HeadModel::Power { exponent, coefs } => (coefs[0] + coefs[1] * x + coefs[2] * (x * x)) * x.powf(exponent),
            HeadModel::Constant(v) => v,
        }
    }

    fn above(&self, x: T) -> V {
        let n = self.grid.len();
        let (xn, vn) = (self.grid[n - 1], self.values[n - 1]);
        match self.decay {
            DecayHint::Exponential { rate } => vn * (-(T::cst(rate) * (x - xn))).exp(),
            DecayHint::Algebraic { power } => vn * (xn / x).powf(T::cst(power)),
            DecayHint::Compact { .. } => V::zero(),
        }
    }

    /// Applies `f` to every sample, keeping grid and metadata.
    pub fn map<W: QuadValue<T>>(&self, f: impl Fn(T, V) -> W) -> SampledFunction<T, W> {
        SampledFunction {
            grid: self.grid.clone(),
            values: self.grid.iter().zip(&self.values).map(|(&x, &v)| f(x, v)).collect(),
            grid_kind: self.grid_kind,
            decay: self.decay,
        }
    }

    pub fn with_decay(mut self, decay: DecayHint) -> Result<Self> {
        decay.validate()?;
        self.decay = decay;
        Ok(self)
    }

    /// Compares the samples of the last decade (last tenth of a uniform grid)
    /// with the declared decay; a sample exceeding ten times the envelope
    /// anchored at the start of that stretch is a hint error.
    pub fn check_decay(&self) -> Result<()> {
        let n = self.grid.len();
        let start = match self.grid_kind {
            GridKind::Uniform => n - (n / 10).max(2),
            GridKind::LogUniform => {
                let cut = self.grid_max() / T::cst(10.0);
                self.grid.partition_point(|&x| x < cut).min(n - 2)
            }
        };
        let x0 = self.grid[start];
        let scale = self.values.iter().fold(T::zero(), |m, v| m.max(v.magnitude()));
        let anchor = self.values[start..].iter().fold(T::zero(), |m, v| m.max(v.magnitude())).max(scale * T::cst(1e-14));
        for (&x, v) in self.grid[start..].iter().zip(&self.values[start..]) {
            let envelope = match self.decay {
                DecayHint::Exponential { rate } => anchor * (-(T::cst(rate) * (x - x0))).exp(),
                DecayHint::Algebraic { power } => anchor * (x0 / x).powf(T::cst(power)),
                DecayHint::Compact { support_end } => {
                    if x > T::cst(support_end) {
                        scale * T::cst(1e-12)
                    } else {
                        anchor
                    }
                }
            };
            if v.magnitude() > T::cst(10.0) * envelope.max(scale * T::cst(1e-12)) {
                return Err(Error::Hint(format!(
                    "sample at x = {x} (|f| = {:e}) inconsistent with {:?}",
                    v.magnitude(),
                    self.decay
                )));
            }
        }
        Ok(())
    }

    fn native_step(&self) -> T {
        let n = self.grid.len();
        (self.coord(self.grid[n - 1]) - self.coord(self.grid[0])) / T::from_count(n - 1)
    }

    /// `int_0^inf w(x, f(x)) dx`: Simpson over the samples, the head model on
    /// `(0, grid_min)` and the decay continuation past `grid_max`.
    pub fn integral_of(&self, w: impl Fn(T, V) -> T, tol: T) -> Result<T> {
        let n = self.grid.len();
        let weights = simpson_weights(n, self.native_step());
        let mut body = T::zero();
        for i in 0..n {
            let jac = match self.grid_kind {
                GridKind::Uniform => T::one(),
                GridKind::LogUniform => self.grid[i],
            };
            body = body + weights[i] * jac * w(self.grid[i], self.values[i]);
        }
        let g = |x: T| w(x, self.eval(x));
        let head = integrate(&g, T::zero(), self.grid[0], tol * T::half())?.value;
        let tail = match self.decay {
            DecayHint::Compact { .. } => T::zero(),
            hint => integrate_semi_infinite(&g, self.grid[n - 1], tol * T::half(), hint)?.value,
        };
        Ok(head + body + tail)
    }

    /// `f'` on the same grid by fourth-order finite differences in the native
    /// coordinate (one-sided stencils at the two ends of the grid).
    pub fn derivative(&self) -> SampledFunction<T, V> {
        let n = self.grid.len();
        let f = &self.values;
        let inv = T::one() / (T::cst(12.0) * self.native_step());
        let c = |k: f64| T::cst(k);
        let mut d = vec![V::zero(); n];
        for i in 0..n {
            let raw = if n < 5 {
                // too few points for the five-point stencils
                let (a, b) = if i + 1 < n { (i, i + 1) } else { (i - 1, i) };
                (f[b] - f[a]) * c(12.0)
            } else if i == 0 {
                f[0] * c(-25.0) + f[1] * c(48.0) - f[2] * c(36.0) + f[3] * c(16.0) - f[4] * c(3.0)
            } else if i == 1 {
                f[0] * c(-3.0) - f[1] * c(10.0) + f[2] * c(18.0) - f[3] * c(6.0) + f[4]
            } else if i == n - 2 {
                (f[n - 1] * c(-3.0) - f[n - 2] * c(10.0) + f[n - 3] * c(18.0) - f[n - 4] * c(6.0) + f[n - 5]) * c(-1.0)
            } else if i == n - 1 {
                (f[n - 1] * c(-25.0) + f[n - 2] * c(48.0) - f[n - 3] * c(36.0) + f[n - 4] * c(16.0) - f[n - 5] * c(3.0)) * c(-1.0)
            } else {
                f[i - 2] - f[i - 1] * c(8.0) + f[i + 1] * c(8.0) - f[i + 2]
            };
            let jac = match self.grid_kind {
                GridKind::Uniform => T::one(),
                GridKind::LogUniform => T::one() / self.grid[i],
            };
            d[i] = raw * (inv * jac);
        }
        SampledFunction {
            grid: self.grid.clone(),
            values: d,
            grid_kind: self.grid_kind,
            decay: self.decay,
        }
    }

    /// `x -> int_x^inf f` on the same grid (cellwise Gauss-Legendre on the
    /// interpolant, plus the continued tail past `grid_max`).
    pub fn tail_integral(&self, tol: T) -> Result<SampledFunction<T, V>> {
        const NODES: [f64; 2] = [-0.577_350_269_189_625_8, 0.577_350_269_189_625_8];
        let n = self.grid.len();
        let mut acc = match self.decay {
            DecayHint::Compact { .. } => V::zero(),
            hint => integrate_semi_infinite(|x: T| self.eval(x), self.grid[n - 1], tol, hint)?.value,
        };
        let mut out = vec![V::zero(); n];
        out[n - 1] = acc;
        for i in (0..n - 1).rev() {
            let (a, b) = (self.grid[i], self.grid[i + 1]);
            let (mid, half) = ((a + b) * T::half(), (b - a) * T::half());
            // two-point rule on two half cells: exact for the cubic pieces
            let mut cell = V::zero();
            for (m, h) in [(mid - half * T::half(), half * T::half()), (mid + half * T::half(), half * T::half())] {
                for &z in &NODES {
                    cell = cell + self.eval(m + h * T::cst(z)) * h;
                }
            }
            acc = acc + cell;
            out[i] = acc;
        }
        Ok(SampledFunction {
            grid: self.grid.clone(),
            values: out,
            grid_kind: self.grid_kind,
            decay: self.decay,
        })
    }
}

/// Decay law guessed from trailing samples: compact when the tail is
/// identically zero or below `1e-13` of the peak, otherwise an exponential rate fitted to the last tenth of
/// the grid (clipped below at 1e-3).
pub fn infer_decay<T: Real>(grid: &[T], values: &[T]) -> DecayHint {
    let n = grid.len();
    let Some(last_nz) = values.iter().rposition(|v| *v != T::zero()) else {
        return DecayHint::Compact { support_end: grid.first().map_or(0.0, |x| x.as_f64()) };
    };
    if last_nz + 1 < n {
        return DecayHint::Compact { support_end: grid[last_nz + 1].as_f64() };
    }
    if n < 2 {
        return DecayHint::Exponential { rate: 1.0 };
    }
    let start = n - (n / 10).max(2);
    let (x0, x1) = (grid[start].as_f64(), grid[n - 1].as_f64());
    let m0 = values[start..].iter().fold(0.0f64, |m, v| m.max(v.abs().as_f64()));
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs().as_f64()));
    if m0 <= 1e-13 * peak {
        // tail at rounding level: treat the samples as the whole support
        return DecayHint::Compact { support_end: x1 };
    }
    let m1 = values[n - 1].abs().as_f64().max(f64::MIN_POSITIVE);
    let rate = ((m0 / m1).ln() / (x1 - x0)).max(1e-3);
    DecayHint::Exponential { rate: if rate.is_finite() { rate } else { 1.0 } }
}

/// Composite Simpson weights for `n` equally spaced nodes with spacing `h`
/// (a cubic end panel when `n` is even).
pub fn simpson_weights<T: Real>(n: usize, h: T) -> Vec<T> {
    let mut w = vec![T::zero(); n];
    if n < 2 {
        return w;
    }
    if n == 2 {
        w[0] = h * T::half();
        w[1] = h * T::half();
        return w;
    }
    let m = if n % 2 == 1 { n } else { n - 1 };
    let third = h / T::cst(3.0);
    for i in 0..m {
        let c = if i == 0 || i == m - 1 {
            T::one()
        } else if i % 2 == 1 {
            T::cst(4.0)
        } else {
            T::two()
        };
        w[i] = w[i] + third * c;
    }
    if m < n {
        // last interval by the cubic through the last four nodes
        let h24 = h / T::cst(24.0);
        w[n - 4] = w[n - 4] + h24;
        w[n - 3] = w[n - 3] - h24 * T::cst(5.0);
        w[n - 2] = w[n - 2] + h24 * T::cst(19.0);
        w[n - 1] = w[n - 1] + h24 * T::cst(9.0);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expo(n: usize) -> SampledFunction<f64> {
        SampledFunction::from_fn(|x: f64| (-x).exp(), log_grid(1e-3, 40.0, n), GridKind::LogUniform, DecayHint::Exponential { rate: 1.0 }).unwrap()
    }

    #[test]
    fn grids() {
        let g = uniform_grid(0.5, 2.5, 5);
        assert_eq!(g, vec![0.5, 1.0, 1.5, 2.0, 2.5]);
        let g: Vec<f64> = log_grid(1e-2, 1e2, 5);
        assert!((g[2] - 1.0).abs() < 1e-14 && g[0] == 1e-2 && g[4] == 1e2);
    }

    #[test]
    fn interpolation_accuracy() {
        let f = expo(2048);
        for &x in &[1.3e-3, 0.0371, 0.5, 1.0, 3.3, 17.0, 39.9] {
            assert!((f.eval(x) - (-x).exp()).abs() < 1e-10, "x = {x}");
        }
        let g = SampledFunction::from_fn(|x: f64| x.sin(), uniform_grid(0.1, 10.0, 2001), GridKind::Uniform, DecayHint::Compact { support_end: 10.0 }).unwrap();
        assert!((g.eval(3.21) - 3.21f64.sin()).abs() < 1e-11);
        // samples are reproduced exactly
        assert!((g.eval(g.grid()[7]) - g.values()[7]).abs() < 1e-15);
    }

    #[test]
    fn extrapolation() {
        let f = expo(512);
        assert!((f.eval(50.0) - (-50.0f64).exp()).abs() < 1e-20);
        assert!((f.eval(1e-4) - (-1e-4f64).exp()).abs() < 1e-9);
        let s = SampledFunction::from_fn(|x: f64| x.sqrt(), log_grid(1e-2, 1.0, 64), GridKind::LogUniform, DecayHint::Compact { support_end: 1.0 }).unwrap();
        assert!((s.eval(1e-4) - 1e-2).abs() < 1e-12);
        assert_eq!(s.eval(2.0), 0.0);
        assert_eq!(s.eval(-1.0), 0.0);
    }

    #[test]
    fn validation() {
        let g = vec![1.0, 2.0, 3.0, 4.0];
        assert!(SampledFunction::new(g.clone(), vec![1.0; 3], GridKind::Uniform, DecayHint::Exponential { rate: 1.0 }).is_err());
        assert!(SampledFunction::new(vec![1.0, 3.0, 2.0, 4.0], vec![1.0; 4], GridKind::Uniform, DecayHint::Exponential { rate: 1.0 }).is_err());
        assert!(SampledFunction::new(g.clone(), vec![1.0, f64::NAN, 1.0, 1.0], GridKind::Uniform, DecayHint::Exponential { rate: 1.0 }).is_err());
        assert!(SampledFunction::new(g.clone(), vec![1.0; 4], GridKind::LogUniform, DecayHint::Exponential { rate: 1.0 }).is_err());
        assert!(SampledFunction::new(vec![0.0, 1.0, 2.0, 3.0], vec![1.0; 4], GridKind::Uniform, DecayHint::Exponential { rate: 1.0 }).is_err());
        assert!(SampledFunction::new(g, vec![1.0; 4], GridKind::Uniform, DecayHint::Exponential { rate: -1.0 }).is_err());
    }

    #[test]
    fn decay_check() {
        assert!(expo(256).check_decay().is_ok());
        let slow = SampledFunction::from_fn(|x: f64| 1.0 / (1.0 + x), log_grid(1e-3, 40.0, 256), GridKind::LogUniform, DecayHint::Exponential { rate: 1.0 }).unwrap();
        assert!(matches!(slow.check_decay(), Err(Error::Hint(_))));
    }

    #[test]
    fn simpson_exactness() {
        for n in [5usize, 6, 9, 10, 33] {
            let h = 2.0 / (n - 1) as f64;
            let w = simpson_weights(n, h);
            let s: f64 = (0..n).map(|i| w[i] * (i as f64 * h).powi(3)).sum();
            assert!((s - 4.0).abs() < 1e-12, "n = {n}: {s}");
        }
    }
}
