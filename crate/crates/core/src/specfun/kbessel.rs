//! Modified Bessel functions `K_{i gamma}(x)` and `K_{1/2 + i gamma}(x)` from
//! the integral representation `K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quad::{integrate_with, QuadOptions};
use crate::real::Real;

/// A K-Bessel value with an underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KValue<V> {
    pub value: V,
    /// Set when `e^{-x}` underflows and the value was returned as zero.
    pub underflow: bool,
}

// Integrate e^{-x (cosh t - 1)} w(t) on [0, T] with x cosh T past the underflow
// bound, then restore the e^{-x} factor.
fn scaled_integral<T, V, W>(x: T, extra_growth: T, weight: W) -> Result<KValue<V>>
where
    T: Real,
    V: crate::quad::QuadValue<T>,
    W: Fn(T) -> V,
{
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("K-Bessel argument must be positive and finite, got {x}")));
    }
    let limit = T::cst(T::UNDERFLOW_LOG);
    if x > limit {
        return Ok(KValue {
            value: V::zero(),
            underflow: true,
        });
    }
    // smallest T with x cosh T - growth(T) > limit; the weight grows at most like e^{extra_growth t}
    let mut t_end = ((limit / x).max(T::one())).acosh();
    while x * t_end.cosh() - extra_growth * t_end <= limit {
        t_end = t_end + T::half();
    }
    let f = |t: T| weight(t) * (-(x * (t.cosh() - T::one()))).exp();
    // breakpoints every unit of t keep the panels aligned with the decay scale
    let n = (t_end.ceil().as_f64() as usize).max(1);
    let mut points: Vec<T> = (0..n).map(T::from_count).collect();
    points.push(t_end);
    let opts = QuadOptions {
        abs_tol: T::epsilon(),
        rel_tol: T::epsilon() * T::cst(16.0),
        max_intervals: 4000,
    };
    let r = integrate_with(f, &points, opts)?;
    Ok(KValue {
        value: r.value * (-x).exp(),
        underflow: false,
    })
}

/// `K_{i gamma}(x)` for `x > 0`; real and even in `gamma`.
pub fn bessel_k_imag_order<T: Real>(gamma: T, x: T) -> Result<KValue<T>> {
    if !gamma.is_finite() {
        return Err(Error::Domain(format!("order {gamma} is not finite")));
    }
    let g = gamma.abs();
    scaled_integral(x, T::zero(), |t: T| (g * t).cos())
}

/// `d/dx K_{i gamma}(x) = -int_0^inf cosh t e^{-x cosh t} cos(gamma t) dt`.
pub fn bessel_k_imag_order_deriv<T: Real>(gamma: T, x: T) -> Result<KValue<T>> {
    if !gamma.is_finite() {
        return Err(Error::Domain(format!("order {gamma} is not finite")));
    }
    let g = gamma.abs();
    let mut k = scaled_integral(x, T::one(), |t: T| t.cosh() * (g * t).cos())?;
    k.value = -k.value;
    Ok(k)
}

/// `K_{1/2 + i gamma}(x)` for `x > 0`.
///
/// Real part `int e^{-x cosh t} cosh(t/2) cos(gamma t) dt`, imaginary part
/// `int e^{-x cosh t} sinh(t/2) sin(gamma t) dt`.
pub fn bessel_k_half_plus_imag<T: Real>(gamma: T, x: T) -> Result<KValue<Complex<T>>> {
    if !gamma.is_finite() {
        return Err(Error::Domain(format!("order {gamma} is not finite")));
    }
    scaled_integral(x, T::half(), |t: T| {
        let h = t * T::half();
        let (s, c) = (gamma * t).sin_cos();
        Complex::new(h.cosh() * c, h.sinh() * s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k0_at_one() {
        // mpmath besselk(0, 1)
        let k = bessel_k_imag_order(0.0f64, 1.0).unwrap();
        assert!(!k.underflow);
        assert!((k.value - 0.421_024_438_240_708_3).abs() < 1e-13);
    }

    #[test]
    fn even_in_order() {
        let a: f64 = bessel_k_imag_order(2.0, 3.0).unwrap().value;
        let b = bessel_k_imag_order(-2.0, 3.0).unwrap().value;
        assert_eq!(a, b);
        // mpmath besselk(2j, 3)
        assert!((a - 0.019_156_728_326_977_343).abs() < 1e-13);
    }

    #[test]
    fn decays_at_large_argument() {
        let k: f64 = bessel_k_imag_order(1.0, 20.0).unwrap().value;
        assert!(k.abs() <= (-20.0f64).exp() * 10.0);
        // mpmath besselk(1j, 20)
        assert!((k - 5.602_785_755_346_475e-10).abs() < 1e-20);
    }

    #[test]
    fn derivative_of_k0() {
        // K0' = -K1; mpmath besselk(1, 1.5)
        let d: f64 = bessel_k_imag_order_deriv(0.0, 1.5).unwrap().value;
        assert!((d + 0.277_387_800_456_843_8).abs() < 1e-13, "{d}");
    }

    #[test]
    fn half_order_closed_form() {
        // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
        for &x in &[0.1f64, 1.0, 7.5] {
            let k = bessel_k_half_plus_imag(0.0, x).unwrap().value;
            let want = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(((k.re - want) / want).abs() < 1e-12, "x = {x}");
            assert_eq!(k.im, 0.0);
        }
    }

    #[test]
    fn underflow_flag_and_domain() {
        let k = bessel_k_imag_order(1.0, 800.0).unwrap();
        assert!(k.underflow && k.value == 0.0);
        assert!(bessel_k_imag_order(1.0, 0.0).is_err());
        assert!(bessel_k_imag_order(1.0, -1.0).is_err());
        assert!(bessel_k_imag_order(f64::NAN, 1.0).is_err());
    }
}
