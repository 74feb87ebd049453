//! The H transform `H f(x) = int_0^inf J0(2 sqrt(xy)) f(y) dy`, the order-zero
//! Hankel transform it is conjugate to, and the Mellin-side description
//! `(H g)^(s) = chi(s) g^(1 - s)` on `Re s = 1/2`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quad::{integrate_bessel_kernel, integrate_semi_infinite, BesselKernel, DecayHint};
use crate::real::Real;
use crate::sampled::{infer_decay, simpson_weights, GridKind, HeadModel, SampledFunction};
use crate::specfun::chi_multiplier;

/// `H f(x)` for `x > 0` by zero-split Bessel quadrature.
pub fn h_transform_point<T, F>(f: F, decay: DecayHint, x: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("H transform evaluated at x = {x}; need x > 0")));
    }
    let r = integrate_bessel_kernel(f, BesselKernel::J0, |y: T| T::two() * (x * y).sqrt(), T::zero(), tol, decay)?;
    Ok(r.value)
}

fn tabulate<T, G>(x_grid: Vec<T>, kind: GridKind, point: G) -> Result<SampledFunction<T>>
where
    T: Real,
    G: Fn(T) -> Result<T> + Sync,
{
    let values: Vec<T> = x_grid.par_iter().map(|&x| point(x)).collect::<Result<_>>()?;
    let decay = infer_decay(&x_grid, &values);
    SampledFunction::new(x_grid, values, kind, decay)
}

/// `H f` tabulated on `x_grid`; the output decay hint is fitted to its tail.
pub fn h_transform<T, F>(f: F, decay: DecayHint, x_grid: Vec<T>, kind: GridKind, tol: T) -> Result<SampledFunction<T>>
where
    T: Real,
    F: Fn(T) -> T + Sync,
{
    tabulate(x_grid, kind, |x| h_transform_point(&f, decay, x, tol))
}

/// `H f` for sampled `f` (evaluated between samples by cubic interpolation).
pub fn h_transform_sampled<T: Real>(f: &SampledFunction<T>, x_grid: Vec<T>, kind: GridKind, tol: T) -> Result<SampledFunction<T>> {
    h_transform(|y| f.eval(y), f.decay(), x_grid, kind, tol)
}

/// Order-zero Hankel transform `A(r) = int_0^inf sqrt(rs) J0(rs) B(s) ds`.
pub fn hankel0_transform_point<T, F>(b: F, decay: DecayHint, r: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::Domain(format!("Hankel transform evaluated at r = {r}; need r > 0")));
    }
    let rr = r;
    let res = integrate_bessel_kernel(|s: T| (rr * s).sqrt() * b(s), BesselKernel::J0, |s: T| rr * s, T::zero(), tol, decay)?;
    Ok(res.value)
}

/// [`hankel0_transform_point`] tabulated on `r_grid`.
pub fn hankel0_transform<T: Real>(b: &SampledFunction<T>, r_grid: Vec<T>, kind: GridKind, tol: T) -> Result<SampledFunction<T>> {
    tabulate(r_grid, kind, |r| hankel0_transform_point(|s| b.eval(s), b.decay(), r, tol))
}

/// The same transform through H: `A(r) = sqrt(r) (H q)(r^2/2)` with
/// `q(v) = B(sqrt(2v)) / (2v)^{1/4}`.
pub fn hankel0_via_h_point<T, F>(b: F, decay_in_v: DecayHint, r: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let q = |v: T| {
        let s = (T::two() * v).sqrt();
        if s > T::zero() {
            b(s) / s.sqrt()
        } else {
            T::zero()
        }
    };
    Ok(r.sqrt() * h_transform_point(q, decay_in_v, r * r * T::half(), tol)?)
}

/// Complex samples of a function of `s = 1/2 + i tau` on a symmetric uniform
/// `tau` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalLineSamples<T> {
    tau_grid: Vec<T>,
    values: Vec<Complex<T>>,
}

/// `n` equally spaced points on `[-tau_max, tau_max]`.
pub fn symmetric_tau_grid<T: Real>(tau_max: T, n: usize) -> Vec<T> {
    let n = n.max(3);
    let h = T::two() * tau_max / T::from_count(n - 1);
    (0..n)
        .map(|i| {
            // mirror the upper half exactly so the grid is symmetric to the bit
            let j = i.min(n - 1 - i);
            let v = -tau_max + h * T::from_count(j);
            if i == j {
                v
            } else {
                -v
            }
        })
        .collect()
}

impl<T: Real> CriticalLineSamples<T> {
    pub fn new(tau_grid: Vec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        let n = tau_grid.len();
        if n == 0 || n != values.len() {
            return Err(Error::InvalidData("critical-line samples need matching, nonempty grid and values".into()));
        }
        let h = if n > 1 { (tau_grid[n - 1] - tau_grid[0]) / T::from_count(n - 1) } else { T::zero() };
        let slack = T::cst(1e-9) * h.abs().max(T::one());
        for i in 0..n {
            if (tau_grid[i] + tau_grid[n - 1 - i]).abs() > slack {
                return Err(Error::InvalidData("tau grid is not symmetric about 0".into()));
            }
            if i > 0 && ((tau_grid[i] - tau_grid[i - 1]) - h).abs() > slack {
                return Err(Error::InvalidData("tau grid is not uniform".into()));
            }
        }
        Ok(Self { tau_grid, values })
    }

    pub fn tau_grid(&self) -> &[T] {
        &self.tau_grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Largest `|values(-tau) - conj(values(tau))|`; zero for transforms of real functions.
    pub fn conjugate_symmetry_defect(&self) -> T {
        let n = self.values.len();
        (0..n).fold(T::zero(), |m, i| m.max((self.values[n - 1 - i] - self.values[i].conj()).norm()))
    }

    /// Magnitude at the ends of the grid, a proxy for the truncation error.
    pub fn edge_magnitude(&self) -> T {
        self.values[0].norm().max(self.values[self.values.len() - 1].norm())
    }

    /// Pointwise product with `m(tau)`.
    pub fn multiply(&self, m: impl Fn(T) -> Complex<T>) -> Self {
        Self {
            tau_grid: self.tau_grid.clone(),
            values: self.tau_grid.iter().zip(&self.values).map(|(&t, &v)| m(t) * v).collect(),
        }
    }

    /// `tau -> values(-tau)`, i.e. the samples of `F(1 - s)`.
    pub fn reflect(&self) -> Self {
        Self {
            tau_grid: self.tau_grid.clone(),
            values: self.values.iter().rev().copied().collect(),
        }
    }

    /// Inverse Mellin transform `(1/2pi) int F(1/2 + i tau) u^{-1/2 + i tau} d tau`
    /// at `u > 0` (real part).
    pub fn inverse_at(&self, u: T) -> T {
        let n = self.tau_grid.len();
        let h = self.tau_grid[1] - self.tau_grid[0];
        let w = simpson_weights(n, h);
        let lu = u.ln();
        let mut acc = T::zero();
        for i in 0..n {
            let (s, c) = (self.tau_grid[i] * lu).sin_cos();
            acc = acc + w[i] * (self.values[i].re * c - self.values[i].im * s);
        }
        acc / (T::two() * T::PI() * u.sqrt())
    }
}

fn cpow<T: Real>(u: T, z: Complex<T>) -> Complex<T> {
    (z * u.ln()).exp()
}

// int_0^{u0} model(u) u^{-s} du
fn head_integral<T: Real>(model: HeadModel<T, T>, u0: T, s: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    match model {
        HeadModel::Power { exponent, coefs } => (0..3).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
            let z = one * (exponent + T::from_count(k + 1)) - s;
            acc + cpow(u0, z) / z * coefs[k]
        }),
        HeadModel::Constant(v) => {
            let z = one - s;
            cpow(u0, z) / z * v
        }
    }
}

/// Step in `ln u` of the internal Mellin quadrature.
const MELLIN_LOG_STEP: f64 = 0.0025;

/// `g^(1/2 + i tau) = int_0^inf g(u) u^{-1/2 - i tau} du` on `tau_grid`.
///
/// The integral is the Fourier integral of `e^{t/2} g(e^t)`, summed by
/// Simpson's rule on a fine uniform `t` grid from `ln grid_min` to a point
/// past which the decay hint makes the tail smaller than `tol / 100`. The
/// piece below `grid_min` is integrated exactly against the sampled
/// function's head model; a head that cannot be modelled and holds more than
/// `tol` of mass, or a tail that never becomes negligible, is a range error.
pub fn mellin_transform<T: Real>(g: &SampledFunction<T>, tau_grid: &[T], tol: T) -> Result<CriticalLineSamples<T>> {
    let u0 = g.grid_min();
    let model = g.head_model();
    if let HeadModel::Constant(v) = model {
        let mass = v.abs() * T::two() * u0.sqrt();
        if mass > tol {
            return Err(Error::Range(format!(
                "no model for g below u = {u0}; truncated mass {mass:e} exceeds tolerance"
            )));
        }
    }
    let u_max = mellin_upper_end(g, tol * T::cst(0.01))?;
    let (t0, t1) = (u0.ln(), u_max.ln());
    let n = (((t1 - t0) / T::cst(MELLIN_LOG_STEP)).ceil().as_f64() as usize).max(8) | 1;
    let h = (t1 - t0) / T::from_count(n - 1);
    let w = simpson_weights(n, h);
    let samples: Vec<(T, T)> = (0..n)
        .map(|i| {
            let t = t0 + h * T::from_count(i);
            (t, w[i] * (t * T::half()).exp() * g.eval(t.exp()))
        })
        .collect();
    let values: Vec<Complex<T>> = tau_grid
        .par_iter()
        .map(|&tau| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for &(t, wg) in &samples {
                let (s, c) = (tau * t).sin_cos();
                acc = acc + Complex::new(wg * c, -wg * s);
            }
            acc + head_integral(model, u0, Complex::new(T::half(), tau))
        })
        .collect();
    CriticalLineSamples::new(tau_grid.to_vec(), values)
}

fn mellin_upper_end<T: Real>(g: &SampledFunction<T>, tail_tol: T) -> Result<T> {
    let top = g.grid_max();
    match g.decay() {
        DecayHint::Compact { support_end } => Ok(T::cst(support_end).min(top).max(g.grid_min() * T::cst(1.0001))),
        hint => {
            // bound on int_U^inf |g| u^{-1/2} du from the hinted continuation
            let tail = |u: T| -> T {
                let m = g.eval(u).abs() / u.sqrt();
                match hint {
                    DecayHint::Exponential { rate } => m / T::cst(rate),
                    DecayHint::Algebraic { power } => m * u / T::cst(power - 0.5).max(T::cst(1e-3)),
                    DecayHint::Compact { .. } => T::zero(),
                }
            };
            let mut u = top;
            while tail(u) > tail_tol {
                u = u * T::cst(1.25);
                if u > top * T::cst(1e4) {
                    return Err(Error::Range(format!(
                        "tail of g beyond u = {top} not below {tail_tol:e} within four decades"
                    )));
                }
            }
            Ok(u)
        }
    }
}

/// `H g` through the Mellin multiplier: the inverse Mellin transform of
/// `chi(s) g^(1 - s)` along `Re s = 1/2`, with `tau` sampled on `n_tau`
/// points of `[-tau_max, tau_max]`.
pub fn h_via_mellin<T: Real>(
    g: &SampledFunction<T>,
    x_grid: Vec<T>,
    kind: GridKind,
    tau_max: T,
    n_tau: usize,
    tol: T,
) -> Result<SampledFunction<T>> {
    let taus = symmetric_tau_grid(tau_max, n_tau);
    let ghat = mellin_transform(g, &taus, tol)?;
    let hhat = ghat.reflect().multiply(chi_multiplier);
    let values: Vec<T> = x_grid.par_iter().map(|&x| hhat.inverse_at(x)).collect();
    let decay = infer_decay(&x_grid, &values);
    SampledFunction::new(x_grid, values, kind, decay)
}

/// Pointwise quotient `num / den` of two sample sets on the same grid.
pub fn multiplier_quotient<T: Real>(num: &CriticalLineSamples<T>, den: &CriticalLineSamples<T>) -> Result<Vec<Complex<T>>> {
    if num.tau_grid != den.tau_grid {
        return Err(Error::InvalidData("critical-line grids differ".into()));
    }
    Ok(num.values.iter().zip(&den.values).map(|(a, b)| a / b).collect())
}

/// Boost flow on a trace: `g_xi(u) = e^{xi/2} g(e^xi u)`.
pub fn boost_trace<T: Real>(g: impl Fn(T) -> T, xi: T) -> impl Fn(T) -> T {
    let (a, b) = ((xi * T::half()).exp(), xi.exp());
    move |u| a * g(b * u)
}

/// `||f||_2` on `(0, inf)`.
pub fn l2_norm<T, F>(f: F, decay: DecayHint, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let squared = match decay {
        DecayHint::Exponential { rate } => DecayHint::Exponential { rate: 2.0 * rate },
        DecayHint::Algebraic { power } => DecayHint::Algebraic { power: 2.0 * power },
        c @ DecayHint::Compact { .. } => c,
    };
    let r = integrate_semi_infinite(|x: T| f(x) * f(x), T::zero(), tol, squared)?;
    Ok(r.value.max(T::zero()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampled::{log_grid, uniform_grid};
    use crate::specfun::{gamma_complex, hankel0_multiplier};

    const EXP1: DecayHint = DecayHint::Exponential { rate: 1.0 };

    #[test]
    fn fixed_point() {
        for &x in &[0.01, 0.3, 1.0, 4.0, 20.0] {
            let v = h_transform_point(|y: f64| (-y).exp(), EXP1, x, 1e-12).unwrap();
            assert!((v - (-x).exp()).abs() < 1e-10, "x = {x}");
        }
        assert_eq!(h_transform_point(|_y: f64| 0.0, EXP1, 1.0, 1e-12).unwrap(), 0.0);
        let v = h_transform_point(|y: f64| 2.0 * (-y).exp(), EXP1, 1.0, 1e-12).unwrap();
        assert!((v - 2.0 * (-1.0f64).exp()).abs() < 1e-10);
        assert!(h_transform_point(|y: f64| y, EXP1, 0.0, 1e-12).is_err());
    }

    #[test]
    fn laguerre_eigenfunctions() {
        // H(y e^{-y}) = e^{-x} (1 - x), H(y^2 e^{-y}) = e^{-x} (2 - 4x + x^2)
        for &x in &[0.2, 1.5, 6.0] {
            let v1 = h_transform_point(|y: f64| y * (-y).exp(), EXP1, x, 1e-12).unwrap();
            assert!((v1 - (-x).exp() * (1.0 - x)).abs() < 1e-10);
            let v2 = h_transform_point(|y: f64| y * y * (-y).exp(), EXP1, x, 1e-12).unwrap();
            assert!((v2 - (-x).exp() * (2.0 - 4.0 * x + x * x)).abs() < 1e-10);
        }
    }

    #[test]
    fn scale_reversal() {
        let lam = 3.0;
        let f = |y: f64| y * (-y).exp();
        for &x in &[0.5, 2.0, 7.0] {
            let lhs = h_transform_point(|y| f(lam * y), DecayHint::Exponential { rate: lam }, x, 1e-12).unwrap();
            let rhs = h_transform_point(f, EXP1, x / lam, 1e-12).unwrap() / lam;
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn sampled_input_matches_callable() {
        let f = SampledFunction::from_fn(|y: f64| (-y).exp(), log_grid(1e-3, 40.0, 2048), GridKind::LogUniform, EXP1).unwrap();
        let out = h_transform_sampled(&f, log_grid(0.01, 20.0, 16), GridKind::LogUniform, 1e-10).unwrap();
        for (&x, &v) in out.grid().iter().zip(out.values()) {
            assert!((v - (-x).exp()).abs() < 1e-8, "x = {x}");
        }
        assert!(matches!(out.decay(), DecayHint::Exponential { .. }));
    }

    #[test]
    fn hankel_self_reciprocal_gaussian() {
        let b = |s: f64| s.sqrt() * (-s * s / 2.0).exp();
        let hint = DecayHint::Exponential { rate: 1.0 };
        for &r in &[0.1, 0.7, 1.5, 3.0] {
            let a = hankel0_transform_point(b, hint, r, 1e-12).unwrap();
            assert!((a - b(r)).abs() < 1e-10, "r = {r}");
            let via = hankel0_via_h_point(b, hint, r, 1e-12).unwrap();
            assert!((via - a).abs() < 1e-9);
        }
    }

    #[test]
    fn hankel_odd_laguerre_round_trip() {
        // s^{5/2} e^{-s^2/2}: transform twice returns the input, norm preserved
        let b = |s: f64| s.powf(2.5) * (-s * s / 2.0).exp();
        let hint = DecayHint::Exponential { rate: 1.0 };
        let grid = uniform_grid(0.01, 9.0, 600);
        let a = SampledFunction::from_fn(|r| hankel0_transform_point(b, hint, r, 1e-12).unwrap(), grid, GridKind::Uniform, hint).unwrap();
        for &s in &[0.4, 1.0, 2.2] {
            let back = hankel0_transform_point(|r| a.eval(r), hint, s, 1e-11).unwrap();
            assert!((back - b(s)).abs() < 1e-6, "s = {s}: {back} vs {}", b(s));
        }
        let n_in = l2_norm(b, hint, 1e-12).unwrap();
        let n_out = l2_norm(|r| a.eval(r), hint, 1e-12).unwrap();
        assert!((n_in - n_out).abs() < 1e-6);
    }

    #[test]
    fn mellin_of_exponential_is_gamma() {
        // with the u^{-s} convention the Mellin transform of e^{-u} is Gamma(1 - s)
        let g = SampledFunction::from_fn(|u: f64| (-u).exp(), log_grid(1e-3, 40.0, 2048), GridKind::LogUniform, EXP1).unwrap();
        let taus = symmetric_tau_grid(2.0, 5);
        let m = mellin_transform(&g, &taus, 1e-10).unwrap();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((m.values()[2] - sqrt_pi).norm() < 1e-8);
        let want = gamma_complex(Complex::new(0.5, -1.0)).unwrap();
        assert!((m.values()[3] - want).norm() < 1e-8);
        assert!((m.values()[1] - want.conj()).norm() < 1e-8);
        assert!(m.conjugate_symmetry_defect() < 1e-12);
    }

    #[test]
    fn mellin_of_indicator() {
        let g = SampledFunction::from_fn(|_u: f64| 1.0, log_grid(1e-3, 1.0, 512), GridKind::LogUniform, DecayHint::Compact { support_end: 1.0 }).unwrap();
        let m = mellin_transform(&g, &[0.0], 1e-10).unwrap();
        assert!((m.values()[0] - 2.0).norm() < 1e-10);
    }

    #[test]
    fn mellin_range_errors() {
        // 1/u blows up at the origin: no head model and large truncated mass
        let g = SampledFunction::from_fn(|u: f64| 1.0 / u, log_grid(1e-3, 40.0, 256), GridKind::LogUniform, EXP1).unwrap();
        assert!(matches!(mellin_transform(&g, &[0.0], 1e-8), Err(Error::Range(_))));
        // tail that the hint cannot make small
        let g = SampledFunction::from_fn(|u: f64| 1.0 / (1.0 + u), log_grid(1e-3, 40.0, 256), GridKind::LogUniform, DecayHint::Algebraic { power: 1.0001 }).unwrap();
        assert!(matches!(mellin_transform(&g, &[0.0], 1e-12), Err(Error::Range(_))));
    }

    #[test]
    fn multiplier_path_fixed_point() {
        let g = SampledFunction::from_fn(|u: f64| (-u).exp(), log_grid(1e-3, 40.0, 2048), GridKind::LogUniform, EXP1).unwrap();
        let out = h_via_mellin(&g, log_grid(0.01, 20.0, 32), GridKind::LogUniform, 40.0, 4096, 1e-10).unwrap();
        for (&x, &v) in out.grid().iter().zip(out.values()) {
            assert!((v - (-x).exp()).abs() < 1e-6, "x = {x}: {v}");
        }
        let zero = SampledFunction::from_fn(|_u: f64| 0.0, log_grid(1e-3, 40.0, 64), GridKind::LogUniform, EXP1).unwrap();
        let out = h_via_mellin(&zero, log_grid(0.01, 20.0, 8), GridKind::LogUniform, 40.0, 513, 1e-10).unwrap();
        assert!(out.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn hankel_multiplier_from_quadrature() {
        // A = Hankel(B) for B = s^{5/2} e^{-s^2/2}; A^(w) / B^(1 - w) is the Hankel-0 multiplier
        let b = |s: f64| s.powf(2.5) * (-s * s / 2.0).exp();
        let hint = DecayHint::Exponential { rate: 1.0 };
        let grid = log_grid(1e-3, 12.0, 2048);
        let bs = SampledFunction::from_fn(b, grid.clone(), GridKind::LogUniform, hint).unwrap();
        let a = hankel0_transform(&bs, grid, GridKind::LogUniform, 1e-12).unwrap().with_decay(hint).unwrap();
        let taus = symmetric_tau_grid(3.0, 7);
        let ah = mellin_transform(&a, &taus, 1e-10).unwrap();
        let bh = mellin_transform(&bs, &taus, 1e-10).unwrap().reflect();
        let q = multiplier_quotient(&ah, &bh).unwrap();
        for (t, v) in taus.iter().zip(q) {
            assert!((v - hankel0_multiplier(*t)).norm() < 1e-4, "tau = {t}: {v}");
        }
    }

    #[test]
    fn tau_grid_is_symmetric() {
        let t = symmetric_tau_grid(40.0f64, 4096);
        assert!(t.iter().zip(t.iter().rev()).all(|(a, b)| *a == -*b));
        assert!(CriticalLineSamples::new(vec![0.0, 1.0, 2.0], vec![Complex::new(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn boost_intertwining() {
        let g = |u: f64| u * (-u).exp();
        let xi = 0.8;
        let gx = boost_trace(g, xi);
        let hg = |x: f64| h_transform_point(g, EXP1, x, 1e-12).unwrap();
        let hgm = boost_trace(hg, -xi);
        for &x in &[0.3, 1.0, 4.0] {
            let lhs = h_transform_point(&gx, DecayHint::Exponential { rate: xi.exp() }, x, 1e-12).unwrap();
            assert!((lhs - hgm(x)).abs() < 1e-9);
        }
    }
}
