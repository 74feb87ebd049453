//! The isometric expansion between the scattered trace `k` and Cauchy data
//! `(F, G)`:
//!
//! `F(x) = int_{x/2}^inf J0(sqrt(x(2v - x))) k(v) dv`,
//! `G(x) = k(x/2) - int_{x/2}^inf x J1(r)/r k(v) dv` with the same `r`,
//! `k(v) = G(2v) + (1/2) int_0^{2v} [J0(r) F(x) - x J1(r)/r G(x)] dx`,
//!
//! and `2 int |k|^2 = int (|F|^2 + |G|^2)`. Swapping `F` and `G` turns the
//! reconstruction of `k` into that of `g`, with `k = H g`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kleingordon::{CauchyData, Extension};
use crate::quad::{integrate_bessel_kernel, integrate_bessel_kernel_abel, integrate_with, BesselKernel, DecayHint, QuadOptions, QuadratureResult};
use crate::real::Real;
use crate::sampled::{infer_decay, GridKind, HeadModel, SampledFunction};
use crate::specfun::{j0_unchecked, j1_over_x_unchecked};

fn check_point<T: Real>(x: T, what: &str) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} evaluated at {x}; need a positive finite point")))
    }
}

fn radius<T: Real>(x: T) -> impl Fn(T) -> T {
    move |v: T| (x * (T::two() * v - x)).max(T::zero()).sqrt()
}

/// `F(x)` from a trace `k` with a truncating decay hint.
pub fn expand_f_from_k<T: Real>(k: impl Fn(T) -> T, decay: DecayHint, x: T, tol: T) -> Result<T> {
    check_point(x, "F")?;
    Ok(integrate_bessel_kernel(k, BesselKernel::J0, radius(x), x * T::half(), tol, decay)?.value)
}

/// `G(x)` from a trace `k` with a truncating decay hint.
pub fn expand_g_from_k<T: Real>(k: impl Fn(T) -> T, decay: DecayHint, x: T, tol: T) -> Result<T> {
    check_point(x, "G")?;
    let head = k(x * T::half());
    let r = integrate_bessel_kernel(&k, BesselKernel::J1Ratio, radius(x), x * T::half(), tol / x.max(T::one()), decay)?;
    Ok(head - x * r.value)
}

/// `F(x)` for traces decaying too slowly for a truncated tail: the integral
/// is Abel-summed (`e^{-eps v}` damping extrapolated to `eps = 0`).
pub fn expand_f_from_k_abel<T: Real>(k: impl Fn(T) -> T, x: T, tol: T, eps_start: T) -> Result<QuadratureResult<T>> {
    check_point(x, "F")?;
    integrate_bessel_kernel_abel(k, BesselKernel::J0, radius(x), x * T::half(), tol, eps_start)
}

/// Abel-summed counterpart of [`expand_g_from_k`].
pub fn expand_g_from_k_abel<T: Real>(k: impl Fn(T) -> T, x: T, tol: T, eps_start: T) -> Result<QuadratureResult<T>> {
    check_point(x, "G")?;
    let mut r = integrate_bessel_kernel_abel(&k, BesselKernel::J1Ratio, radius(x), x * T::half(), tol / x.max(T::one()), eps_start)?;
    r.value = k(x * T::half()) - x * r.value;
    r.error_estimate = r.error_estimate * x;
    Ok(r)
}

/// `(F, G)` on `x_grid` from a sampled trace.
///
/// The value `k(0+)` is split off first as `k(0+) e^{-v}`, whose image is
/// `k(0+) (e^{-x}, e^{-x})` exactly; only the remainder, which vanishes at
/// the origin, goes through the quadrature.
pub fn expand_sampled<T: Real>(k: &SampledFunction<T>, x_grid: Vec<T>, kind: GridKind, tol: T) -> Result<CauchyData<T>> {
    let k0 = match k.head_model() {
        HeadModel::Power { exponent, coefs } if exponent == T::zero() => coefs[0],
        HeadModel::Constant(v) => v,
        HeadModel::Power { .. } => T::zero(),
    };
    let decay = k.decay();
    let rest = |v: T| k.eval(v) - k0 * (-v).exp();
    let hint = match decay {
        // the subtracted exponential must not outlast the declared tail
        DecayHint::Exponential { rate } => DecayHint::Exponential { rate: rate.min(1.0) },
        DecayHint::Compact { .. } if k0 != T::zero() => DecayHint::Exponential { rate: 1.0 },
        h => h,
    };
    let fg: Vec<(T, T)> = x_grid
        .par_iter()
        .map(|&x| {
            let e = k0 * (-x).exp();
            Ok((e + expand_f_from_k(rest, hint, x, tol)?, e + expand_g_from_k(rest, hint, x, tol)?))
        })
        .collect::<Result<_>>()?;
    let (f, g): (Vec<T>, Vec<T>) = fg.into_iter().unzip();
    CauchyData::from_samples(x_grid, f, g, kind, Extension::FEvenGOdd)
}

/// `k(v) = G(2v) + (1/2) int_0^{2v} [J0(r) F(x) - x J1(r)/r G(x)] dx` for
/// callable data; `breaks` are extra panel boundaries inside `(0, 2v)`.
pub fn reconstruct_k_fn<T: Real>(f: impl Fn(T) -> T, g: impl Fn(T) -> T, v: T, breaks: &[T], tol: T) -> Result<T> {
    check_point(v, "k")?;
    let top = T::two() * v;
    let integrand = |x: T| {
        let r = (x * (top - x)).max(T::zero()).sqrt();
        j0_unchecked(r) * f(x) - x * j1_over_x_unchecked(r) * g(x)
    };
    let mut points = vec![T::zero()];
    points.extend(breaks.iter().copied().filter(|&b| b > T::zero() && b < top));
    points.push(top);
    let r = integrate_with(integrand, &points, QuadOptions::absolute(tol))?;
    Ok(g(top) + r.value * T::half())
}

fn coverage<T: Real>(fg: &CauchyData<T>, v: T) -> Result<()> {
    let top = T::two() * v;
    if top > fg.f.grid_max() {
        return Err(Error::Coverage {
            grid_min: 0.0,
            grid_max: fg.f.grid_max().as_f64(),
            need_min: 0.0,
            need_max: top.as_f64(),
        });
    }
    Ok(())
}

/// `k(v)` from sampled Cauchy data, which must cover `(0, 2v]`.
pub fn reconstruct_k<T: Real>(fg: &CauchyData<T>, v: T, tol: T) -> Result<T> {
    coverage(fg, v)?;
    reconstruct_k_fn(|x| fg.f.eval(x), |x| fg.g.eval(x), v, fg.grid(), tol)
}

/// `g(u)`: the same formula with `F` and `G` exchanged.
pub fn reconstruct_g<T: Real>(fg: &CauchyData<T>, u: T, tol: T) -> Result<T> {
    reconstruct_k(&fg.swapped(), u, tol)
}

fn tabulate<T: Real>(grid: Vec<T>, kind: GridKind, point: impl Fn(T) -> Result<T> + Sync) -> Result<SampledFunction<T>> {
    let values: Vec<T> = grid.par_iter().map(|&v| point(v)).collect::<Result<_>>()?;
    let decay = infer_decay(&grid, &values);
    SampledFunction::new(grid, values, kind, decay)
}

/// `k` tabulated on `v_grid`.
pub fn reconstruct_k_sampled<T: Real>(fg: &CauchyData<T>, v_grid: Vec<T>, kind: GridKind, tol: T) -> Result<SampledFunction<T>> {
    tabulate(v_grid, kind, |v| reconstruct_k(fg, v, tol))
}

/// `g` tabulated on `u_grid`.
pub fn reconstruct_g_sampled<T: Real>(fg: &CauchyData<T>, u_grid: Vec<T>, kind: GridKind, tol: T) -> Result<SampledFunction<T>> {
    let swapped = fg.swapped();
    tabulate(u_grid, kind, |u| reconstruct_k(&swapped, u, tol))
}

/// Both sides of the isometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsometryReport<T> {
    /// `2 int |k|^2`.
    pub trace_side: T,
    /// `int (|F|^2 + |G|^2)`.
    pub cauchy_side: T,
    /// `2 int |g|^2`, when `g` was supplied.
    pub g_side: Option<T>,
    /// `|trace_side - cauchy_side|`.
    pub defect: T,
}

pub fn isometry_defect<T: Real>(k: &SampledFunction<T>, fg: &CauchyData<T>, g: Option<&SampledFunction<T>>, tol: T) -> Result<IsometryReport<T>> {
    let sq = |_: T, v: T| v * v;
    let trace_side = T::two() * k.integral_of(sq, tol)?;
    let cauchy_side = fg.norm_sq(tol)?;
    let g_side = g.map(|g| g.integral_of(sq, tol).map(|n| T::two() * n)).transpose()?;
    Ok(IsometryReport {
        trace_side,
        cauchy_side,
        g_side,
        defect: (trace_side - cauchy_side).abs(),
    })
}

/// The expansion in the variables `h(x) = sqrt(x) k(x^2/2)`,
/// `f(y) = sqrt(y) F(y^2)`, `g(y) = sqrt(y) G(y^2)`, in which
/// `int |h|^2 = int (|f|^2 + |g|^2)`.
pub fn original_debranges_forms<T: Real>(
    h: &SampledFunction<T>,
    y_grid: Vec<T>,
    kind: GridKind,
    tol: T,
) -> Result<(SampledFunction<T>, SampledFunction<T>)> {
    let quarter = T::cst(0.25);
    let k = |v: T| {
        if v > T::zero() {
            h.eval((T::two() * v).sqrt()) / (T::two() * v).powf(quarter)
        } else {
            T::zero()
        }
    };
    // decay of k in v, read off samples on the image of h's grid
    let vs: Vec<T> = h.grid().iter().map(|&x| x * x * T::half()).collect();
    let ks: Vec<T> = vs.iter().map(|&v| k(v)).collect();
    let hint = infer_decay(&vs, &ks);
    let fg: Vec<(T, T)> = y_grid
        .par_iter()
        .map(|&y| {
            let (x, s) = (y * y, y.sqrt());
            Ok((s * expand_f_from_k(k, hint, x, tol)?, s * expand_g_from_k(k, hint, x, tol)?))
        })
        .collect::<Result<_>>()?;
    let (f, g): (Vec<T>, Vec<T>) = fg.into_iter().unzip();
    let (fd, gd) = (infer_decay(&y_grid, &f), infer_decay(&y_grid, &g));
    Ok((SampledFunction::new(y_grid.clone(), f, kind, fd)?, SampledFunction::new(y_grid, g, kind, gd)?))
}

/// Inverse of [`original_debranges_forms`]: `h` on `x_grid` from `(f, g)`.
pub fn original_debranges_inverse<T: Real>(
    f: &SampledFunction<T>,
    g: &SampledFunction<T>,
    x_grid: Vec<T>,
    kind: GridKind,
    tol: T,
) -> Result<SampledFunction<T>> {
    let quarter = T::cst(0.25);
    let unwrap = |s: &SampledFunction<T>, x: T| if x > T::zero() { s.eval(x.sqrt()) / x.powf(quarter) } else { T::zero() };
    let top = f.grid_max().min(g.grid_max());
    let breaks: Vec<T> = f.grid().iter().map(|&y| y * y).collect();
    tabulate(x_grid, kind, |x| {
        let v = x * x * T::half();
        if (T::two() * v).sqrt() > top {
            return Err(Error::Coverage {
                grid_min: 0.0,
                grid_max: top.as_f64(),
                need_min: 0.0,
                need_max: (T::two() * v).sqrt().as_f64(),
            });
        }
        Ok(x.sqrt() * reconstruct_k_fn(|t| unwrap(f, t), |t| unwrap(g, t), v, &breaks, tol)?)
    })
}

/// Sup norms behind the causal support equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportReport<T> {
    pub a: T,
    /// `max |g|` on `(0, a)`.
    pub max_g: T,
    /// `max |k|` on `(0, a)`.
    pub max_k: T,
    /// `max |F|` on `(0, 2a)` re-expanded from the traces, when computed.
    pub max_f: Option<T>,
    /// `max |G|` on `(0, 2a)`, when computed.
    pub max_g_data: Option<T>,
}

/// Traces reconstructed from `fg` on `n` points of `(0, a)`; if `fg`
/// vanishes on `(0, 2a)` both sup norms vanish.
pub fn support_equivalence_check<T: Real>(fg: &CauchyData<T>, a: T, n: usize, tol: T) -> Result<SupportReport<T>> {
    check_point(a, "support radius")?;
    let pts: Vec<T> = (1..=n).map(|i| a * T::from_count(i) / T::from_count(n + 1)).collect();
    let sup = |vals: Vec<T>| vals.into_iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let ks: Vec<T> = pts.par_iter().map(|&v| reconstruct_k(fg, v, tol)).collect::<Result<_>>()?;
    let gs: Vec<T> = pts.par_iter().map(|&u| reconstruct_g(fg, u, tol)).collect::<Result<_>>()?;
    Ok(SupportReport {
        a,
        max_g: sup(gs),
        max_k: sup(ks),
        max_f: None,
        max_g_data: None,
    })
}

/// The converse direction: `(F, G)` re-expanded by Abel summation from a
/// trace `k` at the points `xs` (typically inside `(0, 2a)`); returns the two
/// sup norms.
pub fn support_from_trace<T: Real>(k: impl Fn(T) -> T + Sync, xs: &[T], tol: T, eps_start: T) -> Result<(T, T)> {
    let vals: Vec<(T, T)> = xs
        .par_iter()
        .map(|&x| Ok((expand_f_from_k_abel(&k, x, tol, eps_start)?.value, expand_g_from_k_abel(&k, x, tol, eps_start)?.value)))
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold((T::zero(), T::zero()), |(mf, mg), (f, g)| (mf.max(f.abs()), mg.max(g.abs()))))
}

/// A trace `k` from callable Cauchy data supported in `support`, tabulated
/// on a uniform grid in `w = sqrt(2v)` (where it oscillates at bounded
/// frequency) up to `w_max`, and reconstructed directly beyond.
pub struct TraceTable<'a, T> {
    table: SampledFunction<T>,
    f: Box<dyn Fn(T) -> T + Sync + 'a>,
    g: Box<dyn Fn(T) -> T + Sync + 'a>,
    breaks: Vec<T>,
    tol: T,
}

impl<'a, T: Real> TraceTable<'a, T> {
    pub fn new(
        f: impl Fn(T) -> T + Sync + 'a,
        g: impl Fn(T) -> T + Sync + 'a,
        support: (T, T),
        w_max: T,
        n: usize,
        tol: T,
    ) -> Result<Self> {
        let breaks = vec![support.0, support.1];
        let grid = crate::sampled::uniform_grid(w_max / T::from_count(n), w_max, n);
        let values: Vec<T> = grid
            .par_iter()
            .map(|&w| reconstruct_k_fn(&f, &g, w * w * T::half(), &breaks, tol))
            .collect::<Result<_>>()?;
        let table = SampledFunction::new(grid, values, GridKind::Uniform, DecayHint::Algebraic { power: 1.5 })?;
        Ok(Self { table, f: Box::new(f), g: Box::new(g), breaks, tol })
    }

    pub fn eval(&self, v: T) -> T {
        if v <= T::zero() {
            return self.table.eval(self.table.grid_min());
        }
        let w = (T::two() * v).sqrt();
        if w <= self.table.grid_max() {
            self.table.eval(w)
        } else {
            reconstruct_k_fn(&self.f, &self.g, v, &self.breaks, self.tol).unwrap_or(T::nan())
        }
    }
}
