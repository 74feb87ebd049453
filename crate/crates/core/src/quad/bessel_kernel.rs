//! Integrals `int_a^inf f(y) K(z(y)) dy` against an oscillatory Bessel kernel
//! `K = J0` or `K = J1(z)/z`, split at the kernel zeros.

use super::adaptive::{integrate_with, QuadOptions};
use super::semi_infinite::{tail_cutoff, thin};
use super::{DecayHint, QuadValue, QuadratureResult};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::{bessel_zero, first_zero_above, j0_unchecked, j1_over_x_unchecked, ZeroOrder};

/// Oscillatory factor of the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKernel {
    J0,
    /// `J1(z)/z`, finite at `z = 0`.
    J1Ratio,
}

impl BesselKernel {
    #[inline]
    pub fn eval<T: Real>(self, z: T) -> T {
        match self {
            BesselKernel::J0 => j0_unchecked(z),
            BesselKernel::J1Ratio => j1_over_x_unchecked(z),
        }
    }

    /// Supremum of `|K|` on `[0, inf)`.
    pub fn bound(self) -> f64 {
        match self {
            BesselKernel::J0 => 1.0,
            BesselKernel::J1Ratio => 0.5,
        }
    }

    fn zeros(self) -> ZeroOrder {
        match self {
            BesselKernel::J0 => ZeroOrder::J0,
            BesselKernel::J1Ratio => ZeroOrder::J1,
        }
    }
}

/// Walks the successive solutions of `phase_arg(y) = j_k`.
struct ZeroWalker<'a, T, P: ?Sized> {
    phase_arg: &'a P,
    order: ZeroOrder,
    k: usize,
    y: T,
    z: T,
    step: T,
}

impl<'a, T: Real, P: Fn(T) -> T + ?Sized> ZeroWalker<'a, T, P> {
    fn new(phase_arg: &'a P, order: ZeroOrder, a: T) -> Result<Self> {
        let z = phase_arg(a);
        if !z.is_finite() || z < T::zero() {
            return Err(Error::KernelZero(format!("phase argument {z} at y = {a} is not a finite nonnegative number")));
        }
        Ok(Self {
            phase_arg,
            order,
            k: first_zero_above(order, z.as_f64()),
            y: a,
            z,
            step: T::one().max(a.abs() * T::cst(0.1)),
        })
    }

    fn next_zero(&mut self) -> Result<T> {
        let target = T::cst(bessel_zero(self.order, self.k));
        let (mut lo, mut zlo) = (self.y, self.z);
        let mut hi = lo + self.step;
        let mut zhi = (self.phase_arg)(hi);
        let mut grow = 0;
        while !(zhi >= target) {
            if !zhi.is_finite() || zhi < zlo {
                return Err(Error::KernelZero(format!(
                    "phase argument not increasing near y = {hi} (z = {zhi})"
                )));
            }
            lo = hi;
            zlo = zhi;
            self.step = self.step * T::two();
            hi = lo + self.step;
            zhi = (self.phase_arg)(hi);
            grow += 1;
            if grow > 200 {
                return Err(Error::KernelZero(format!("zero j_{} = {target} not bracketed", self.k)));
            }
        }
        // Illinois regula falsi on phase_arg - target
        let (mut flo, mut fhi) = (zlo - target, zhi - target);
        let mut side = 0i8;
        let mut root = hi;
        for _ in 0..200 {
            if fhi == T::zero() {
                root = hi;
                break;
            }
            let mut c = hi - fhi * (hi - lo) / (fhi - flo);
            if !(c > lo && c < hi) {
                c = (lo + hi) * T::half();
            }
            let fc = (self.phase_arg)(c) - target;
            if !fc.is_finite() {
                return Err(Error::KernelZero(format!("phase argument not finite at y = {c}")));
            }
            if fc < T::zero() {
                lo = c;
                flo = fc;
                if side == -1 {
                    fhi = fhi * T::half();
                }
                side = -1;
            } else {
                hi = c;
                fhi = fc;
                if side == 1 {
                    flo = flo * T::half();
                }
                side = 1;
            }
            root = c;
            if (hi - lo) <= T::cst(4.0) * T::epsilon() * hi.abs().max(T::one()) || fc == T::zero() {
                break;
            }
        }
        self.step = (root - self.y).max(T::epsilon() * root.abs().max(T::one()));
        self.y = root;
        self.z = target;
        self.k += 1;
        Ok(root)
    }
}

/// `int_a^inf f(y) K(phase_arg(y)) dy` with panels split at kernel zeros.
///
/// `phase_arg` must be nonnegative and increasing on `[a, inf)`. Exponential
/// and compact hints truncate the range; an algebraic hint sums panel by panel
/// and accelerates the partial sums with Wynn's epsilon algorithm.
pub fn integrate_bessel_kernel<T, V, F, P>(
    f: F,
    kernel: BesselKernel,
    phase_arg: P,
    a: T,
    tol: T,
    hint: DecayHint,
) -> Result<QuadratureResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V,
    P: Fn(T) -> T,
{
    if !(tol > T::zero()) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    hint.validate()?;
    let integrand = |y: T| f(y) * kernel.eval(phase_arg(y));
    let mut walker = ZeroWalker::new(&phase_arg, kernel.zeros(), a)?;
    match hint {
        DecayHint::Exponential { .. } | DecayHint::Compact { .. } => {
            let env = |y: T| f(y).magnitude() * T::cst(kernel.bound());
            let (cut, _) = tail_cutoff(&env, a, tol * T::half(), hint)?;
            let mut points = vec![a];
            loop {
                let y = walker.next_zero()?;
                if y >= cut {
                    break;
                }
                points.push(y);
            }
            if cut > a {
                points.push(cut);
            }
            let mut r = integrate_with(&integrand, &thin(points, 1 << 16), QuadOptions::absolute(tol * T::half()))?;
            r.error_estimate = r.error_estimate + tol * T::half();
            Ok(r)
        }
        DecayHint::Algebraic { .. } => {
            const MIN_PANELS: usize = 12;
            const MAX_PANELS: usize = 20_000;
            let panel_tol = tol * T::cst(1e-2);
            let mut total = QuadratureResult::<T, V>::zero();
            let mut sums: Vec<V> = Vec::new();
            let mut left = a;
            let mut last: Option<V> = None;
            let mut settled = 0;
            for n in 1..=MAX_PANELS {
                let right = walker.next_zero()?;
                let piece = integrate_with(&integrand, &[left, right], QuadOptions::absolute(panel_tol))?;
                total.accumulate(&piece);
                sums.push(total.value);
                left = right;
                // panel endpoints are half-periods apart; accelerate the tail of the sequence
                let window = &sums[sums.len().saturating_sub(24)..];
                let est = wynn_epsilon(window);
                if let Some(prev) = last {
                    if (est - prev).magnitude() < tol * T::half() {
                        settled += 1;
                    } else {
                        settled = 0;
                    }
                }
                last = Some(est);
                if n >= MIN_PANELS && settled >= 3 {
                    return Ok(QuadratureResult {
                        value: est,
                        error_estimate: total.error_estimate + tol * T::half(),
                        evaluations: total.evaluations,
                    });
                }
            }
            let est = last.unwrap_or_else(V::zero);
            Err(Error::Accuracy {
                estimate: est.magnitude().as_f64(),
                error: f64::INFINITY,
            })
        }
    }
}

/// Abel-summed `lim_{eps -> 0} int_a^inf e^{-eps (y - a)} f(y) K(phase_arg(y)) dy`.
///
/// Used for integrands that only converge conditionally (slow, oscillating
/// tails). The damping is reduced by a factor of three per level, each level
/// evaluated with an exponential tail cut; levels are combined by polynomial
/// extrapolation to `eps = 0` and the loop stops when two successive
/// extrapolants agree within `tol`. `f` must be bounded.
pub fn integrate_bessel_kernel_abel<T, V, F, P>(
    f: F,
    kernel: BesselKernel,
    phase_arg: P,
    a: T,
    tol: T,
    eps_start: T,
) -> Result<QuadratureResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V,
    P: Fn(T) -> T,
{
    const LEVELS: usize = 10;
    if !(eps_start > T::zero()) {
        return Err(Error::Domain("initial damping must be positive".into()));
    }
    let mut eps = eps_start;
    let mut xs: Vec<T> = Vec::new();
    let mut table: Vec<V> = Vec::new();
    let mut last: Option<V> = None;
    let mut evaluations = 0;
    let mut error_estimate = T::zero();
    for _ in 0..LEVELS {
        let damped = |y: T| f(y) * (-(eps * (y - a))).exp();
        let r = integrate_bessel_kernel(
            damped,
            kernel,
            &phase_arg,
            a,
            tol * T::cst(0.1),
            DecayHint::Exponential { rate: eps.as_f64() },
        )?;
        evaluations += r.evaluations;
        error_estimate = r.error_estimate;
        xs.push(eps);
        table.push(r.value);
        let est = neville_at_zero(&xs, &table);
        if let Some(prev) = last {
            let delta = (est - prev).magnitude();
            if delta < tol {
                return Ok(QuadratureResult {
                    value: est,
                    error_estimate: error_estimate + delta,
                    evaluations,
                });
            }
        }
        last = Some(est);
        eps = eps / T::cst(3.0);
    }
    Err(Error::Accuracy {
        estimate: last.map_or(0.0, |v| v.magnitude().as_f64()),
        error: error_estimate.as_f64(),
    })
}

// Polynomial through the last (at most three) points, evaluated at 0.
fn neville_at_zero<T: Real, V: QuadValue<T>>(xs: &[T], ys: &[V]) -> V {
    let n = xs.len().min(3);
    let xs = &xs[xs.len() - n..];
    let mut p: Vec<V> = ys[ys.len() - n..].to_vec();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            p[i] = (p[i + 1] * xi - p[i] * xj) * (T::one() / (xi - xj));
        }
    }
    p[0]
}

/// Wynn's epsilon extrapolation of a sequence of partial sums; returns the
/// highest-order even column entry available.
pub fn wynn_epsilon<T: Real, V: QuadValue<T>>(s: &[V]) -> V {
    let n = s.len();
    if n < 3 {
        return s.last().copied().unwrap_or_else(V::zero);
    }
    // e[k] holds column k; column -1 is zero
    let mut prev: Vec<V> = vec![V::zero(); n + 1];
    let mut cur: Vec<V> = s.to_vec();
    let mut best = s[n - 1];
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            let m = d.magnitude();
            if m == T::zero() || !m.is_finite() {
                // converged (or degenerate) column; stop here
                return if col % 2 == 0 { cur[cur.len() - 1] } else { best };
            }
            next.push(prev[i + 1] + d.reciprocal());
        }
        prev = cur;
        cur = next;
        col += 1;
        if col % 2 == 0 {
            best = cur[cur.len() - 1];
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;

    fn h_phase(x: f64) -> impl Fn(f64) -> f64 {
        move |y: f64| 2.0 * (x * y).sqrt()
    }

    #[test]
    fn fixed_point_of_h() {
        for &x in &[1.0, 4.0, 0.05, 20.0] {
            let r = integrate_bessel_kernel(|y: f64| (-y).exp(), BesselKernel::J0, h_phase(x), 0.0, 1e-11, DecayHint::Exponential { rate: 1.0 }).unwrap();
            assert!((r.value - (-x).exp()).abs() < 1e-10, "x = {x}: {}", r.value);
        }
    }

    #[test]
    fn zero_integrand() {
        let r = integrate_bessel_kernel(|_y: f64| 0.0, BesselKernel::J0, h_phase(1.0), 0.0, 1e-10, DecayHint::Exponential { rate: 1.0 }).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn splitting_matches_brute_force() {
        for &x in &[0.5, 1.0, 5.0] {
            let f = |y: f64| (-y).exp() * (3.0 * y).cos();
            let split = integrate_bessel_kernel(f, BesselKernel::J0, h_phase(x), 0.0, 1e-12, DecayHint::Exponential { rate: 1.0 }).unwrap();
            // brute force: fine uniform composite Simpson on [0, 40]
            let n = 400_000;
            let h = 40.0 / n as f64;
            let g = |y: f64| f(y) * j0_unchecked(2.0 * (x * y).sqrt());
            let mut s = g(0.0) + g(40.0);
            for i in 1..n {
                s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
            }
            let brute = s * h / 3.0;
            assert!((split.value - brute).abs() < 1e-8, "x = {x}: {} vs {brute}", split.value);
        }
    }

    #[test]
    fn j1_ratio_kernel_closed_form() {
        // int_0^inf J1(y)/y dy = 1
        let r = integrate_bessel_kernel(|_y: f64| 1.0, BesselKernel::J1Ratio, |y: f64| y, 0.0, 1e-9, DecayHint::Algebraic { power: 1.5 }).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn algebraic_hint_uses_acceleration() {
        // int_0^inf J0(y) dy = 1 converges only conditionally
        let r = integrate_bessel_kernel(|_y: f64| 1.0, BesselKernel::J0, |y: f64| y, 0.0, 1e-9, DecayHint::Algebraic { power: 1.5 }).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn abel_summation_of_conditionally_convergent_integral() {
        // int_0^inf J0(y) dy = 1 again, now by damping
        let r = integrate_bessel_kernel_abel(|_y: f64| 1.0, BesselKernel::J0, |y: f64| y, 0.0, 1e-7, 0.5).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // ln 2 = 1 - 1/2 + 1/3 - ...
        let mut s = 0.0;
        let sums: Vec<f64> = (1..=15)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((wynn_epsilon(&sums) - 2f64.ln()).abs() < 1e-10);
        assert!((sums[14] - 2f64.ln()).abs() > 1e-2);
    }

    #[test]
    fn non_monotone_phase_reported() {
        let r = integrate_bessel_kernel(|y: f64| (-y).exp(), BesselKernel::J0, |y: f64| 10.0 * (-y).exp(), 0.0, 1e-8, DecayHint::Exponential { rate: 1.0 });
        assert!(matches!(r, Err(Error::KernelZero(_))), "{r:?}");
    }

    #[test]
    fn plain_quadrature_agrees_on_a_short_range() {
        let f = |y: f64| (-y).exp();
        let r1 = integrate(|y: f64| f(y) * j0_unchecked(2.0 * y.sqrt()), 0.0, 50.0, 1e-12).unwrap();
        let r2 = integrate_bessel_kernel(f, BesselKernel::J0, h_phase(1.0), 0.0, 1e-12, DecayHint::Exponential { rate: 1.0 }).unwrap();
        assert!((r1.value - r2.value).abs() < 1e-11);
    }
}
