//! Riemann's method for the Cauchy problem:
//!
//! `phi(t,x) = [phi0(x-t) + phi0(x+t)]/2 - (t/2) int J1(r)/r phi0 + (1/2) int J0(r) phi1`
//!
//! with `r = sqrt(t^2 - (x - x')^2)` and both integrals over `[x - t, x + t]`.

use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::real::Real;
use crate::specfun::{j0_unchecked, j1_over_x_unchecked};

/// `phi(t, x)` from data `phi(0, .) = phi0`, `phi_t(0, .) = phi1` known on
/// `domain`. Negative `t` is handled by time reversal.
///
/// Both kernels are entire functions of `r^2`, so the integrands are as
/// smooth as the data.
pub fn riemann_propagate<T, F0, F1>(phi0: F0, phi1: F1, domain: (T, T), t: T, x: T, tol: T) -> Result<T>
where
    T: Real,
    F0: Fn(T) -> T,
    F1: Fn(T) -> T,
{
    if !t.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!("non-finite spacetime point ({t}, {x})")));
    }
    let s = t.abs();
    let (lo, hi) = (x - s, x + s);
    if lo < domain.0 || hi > domain.1 {
        return Err(Error::Coverage {
            grid_min: domain.0.as_f64(),
            grid_max: domain.1.as_f64(),
            need_min: lo.as_f64(),
            need_max: hi.as_f64(),
        });
    }
    if s == T::zero() {
        return Ok(phi0(x));
    }
    let r2 = |y: T| {
        let d = y - x;
        (s * s - d * d).max(T::zero())
    };
    let endpoint = (phi0(lo) + phi0(hi)) * T::half();
    let ratio = integrate(|y: T| j1_over_x_unchecked(r2(y).sqrt()) * phi0(y), lo, hi, tol * T::half())?.value;
    let source = integrate(|y: T| j0_unchecked(r2(y).sqrt()) * phi1(y), lo, hi, tol * T::half())?.value;
    let direction = if t < T::zero() { -T::one() } else { T::one() };
    Ok(endpoint - s * T::half() * ratio + direction * T::half() * source)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WIDE: (f64, f64) = (-100.0, 100.0);

    #[test]
    fn zero_data() {
        assert_eq!(riemann_propagate(|_| 0.0, |_| 0.0, WIDE, 0.5, 2.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn static_exponential_outside_the_cone() {
        // e^{-|x|} solves the equation away from x = 0, so it is reproduced at
        // points whose domain of dependence avoids the kink
        for &(t, x) in &[(0.5, 2.0), (1.0, 3.0), (-0.7, 1.5), (2.0, -4.5), (0.1, 0.2)] {
            let phi = riemann_propagate(|y: f64| (-y.abs()).exp(), |_| 0.0, WIDE, t, x, 1e-13).unwrap();
            assert!((phi - (-x.abs()).exp()).abs() < 1e-10, "({t}, {x}): {phi}");
        }
    }

    #[test]
    fn plane_wave() {
        let (t, x) = (0.7, 1.3);
        let phi = riemann_propagate(|y: f64| y.cos(), |_| 0.0, WIDE, t, x, 1e-13).unwrap();
        let exact = x.cos() * (2f64.sqrt() * t).cos();
        assert!((phi - exact).abs() < 1e-12, "{phi} vs {exact}");
        // sine-in-time mode exercises the phi1 term and time reversal
        let w = 2f64.sqrt();
        for &t in &[0.9, -0.9] {
            let phi = riemann_propagate(|_| 0.0, |y: f64| w * y.cos(), WIDE, t, x, 1e-13).unwrap();
            assert!((phi - x.cos() * (w * t).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn coverage() {
        let e = riemann_propagate(|y: f64| y, |_| 0.0, (0.0, 3.0), 1.0, 2.5, 1e-10);
        assert!(matches!(e, Err(Error::Coverage { .. })));
    }
}
