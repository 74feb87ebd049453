//! Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{QuadValue, QuadratureResult};
use crate::error::{Error, Result};
use crate::real::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tuning knobs for [`integrate_with`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions<T> {
    /// Absolute error target.
    pub abs_tol: T,
    /// Relative error target; the run stops once either target is met.
    pub rel_tol: T,
    /// Maximum number of subintervals before giving up.
    pub max_intervals: usize,
}

impl<T: Real> QuadOptions<T> {
    pub fn absolute(tol: T) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: T::zero(),
            max_intervals: 2000,
        }
    }
}

#[derive(Clone, Copy)]
struct Panel<T, V> {
    a: T,
    b: T,
    value: V,
    error: T,
}

// Max-heap ordering on the error estimate.
struct ByError<T, V>(Panel<T, V>);

impl<T: Real, V> PartialEq for ByError<T, V> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real, V> Eq for ByError<T, V> {}
impl<T: Real, V> PartialOrd for ByError<T, V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real, V> Ord for ByError<T, V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .partial_cmp(&other.0.error)
            .unwrap_or(Ordering::Equal)
            // ties broken by position so the refinement order is reproducible
            .then_with(|| other.0.a.partial_cmp(&self.0.a).unwrap_or(Ordering::Equal))
    }
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
pub(crate) fn gk15<T, V, F>(f: &F, a: T, b: T) -> (V, T)
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + ?Sized,
{
    let center = (a + b) * T::half();
    let half = (b - a) * T::half();
    let fc = f(center);
    let mut resk = fc * T::cst(WGK[7]);
    let mut resg = fc * T::cst(WG[3]);
    let mut fv1 = [V::zero(); 7];
    let mut fv2 = [V::zero(); 7];
    for j in 0..7 {
        let dx = half * T::cst(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk = resk + (f1 + f2) * T::cst(WGK[j]);
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * T::cst(WG[j / 2]);
        }
    }
    let reskh = resk * T::half();
    let mut resasc = WGK[7] * (fc - reskh).magnitude().as_f64();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).magnitude() + (fv2[j] - reskh).magnitude()).as_f64();
    }
    let habs = half.abs().as_f64();
    resasc *= habs;
    let mut err = ((resk - resg) * half).magnitude().as_f64();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    (resk * half, T::cst(err))
}

/// Integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<T, V, F>(f: F, a: T, b: T, tol: T) -> Result<QuadratureResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    integrate_with(f, &[a, b], QuadOptions::absolute(tol))
}

/// Integral of `f` over `[points[0], points.last()]`, starting from the panels
/// delimited by `points` (which must be nondecreasing).
pub fn integrate_with<T, V, F>(f: F, points: &[T], opts: QuadOptions<T>) -> Result<QuadratureResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    if points.len() < 2 {
        return Err(Error::Domain("integration needs at least two endpoints".into()));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }
    if points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("integration limits must satisfy a <= b".into()));
    }
    if !(opts.abs_tol >= T::zero() && opts.rel_tol >= T::zero()) || (opts.abs_tol == T::zero() && opts.rel_tol == T::zero()) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }

    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel<T, V>> = Vec::new();
    let mut evaluations = 0usize;
    let mut total = V::zero();
    let mut total_err = T::zero();
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let (value, error) = gk15(&f, w[0], w[1]);
        evaluations += 15;
        total = total + value;
        total_err = total_err + error;
        heap.push(ByError(Panel { a: w[0], b: w[1], value, error }));
    }
    if heap.is_empty() {
        return Ok(QuadratureResult {
            value: V::zero(),
            error_estimate: T::zero(),
            evaluations: 1,
        });
    }

    let roundoff = T::cst(50.0) * T::epsilon();
    let target = |v: V| opts.abs_tol.max(opts.rel_tol * v.magnitude());
    while total_err > target(total) {
        let Some(ByError(worst)) = heap.pop() else { break };
        let mid = (worst.a + worst.b) * T::half();
        // panel too narrow to split further: freeze it
        if (worst.b - worst.a) <= roundoff * worst.a.abs().max(worst.b.abs()).max(T::min_positive_value()) || mid <= worst.a || mid >= worst.b {
            done.push(worst);
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        evaluations += 30;
        total = total - worst.value + v1 + v2;
        total_err = total_err - worst.error + e1 + e2;
        heap.push(ByError(Panel { a: worst.a, b: mid, value: v1, error: e1 }));
        heap.push(ByError(Panel { a: mid, b: worst.b, value: v2, error: e2 }));
        if heap.len() + done.len() > opts.max_intervals {
            break;
        }
    }

    // Re-sum in interval order so the result does not depend on refinement history.
    done.extend(heap.into_iter().map(|p| p.0));
    done.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(Ordering::Equal));
    let mut value = V::zero();
    let mut error = T::zero();
    for p in &done {
        value = value + p.value;
        error = error + p.error;
    }
    let scale = done.iter().fold(T::zero(), |acc, p| acc + p.value.magnitude());
    let floor = roundoff * scale;
    if !(value.magnitude().is_finite()) {
        return Err(Error::Domain("integrand produced a non-finite value".into()));
    }
    if error > target(value).max(floor) {
        return Err(Error::Accuracy {
            estimate: value.magnitude().as_f64(),
            error: error.as_f64(),
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
    })
}
