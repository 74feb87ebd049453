//! Complex gamma function.
//!
//! Lanczos approximation with Pugh's `r = 10.900511` coefficient set on
//! `Re s >= 1/2`, reflection `Gamma(s) Gamma(1-s) = pi / sin(pi s)` below.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

const LANCZOS_R: f64 = 10.900_511;

const LANCZOS_D: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

/// ln(2 sqrt(e/pi))
const LN_TWO_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

fn pole_check<T: Real>(s: Complex<T>) -> Result<()> {
    if s.im == T::zero() && s.re <= T::zero() && s.re == s.re.round() {
        return Err(Error::Pole(s.re.as_f64() as i64));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("gamma argument {s} is not finite")));
    }
    Ok(())
}

fn ln_gamma_right<T: Real>(s: Complex<T>) -> Complex<T> {
    let mut sum = Complex::new(T::cst(LANCZOS_D[0]), T::zero());
    for (k, &d) in LANCZOS_D.iter().enumerate().skip(1) {
        sum = sum + Complex::new(T::cst(d), T::zero()) / (s + T::from_count(k) - T::one());
    }
    let shifted = s - T::half() + T::cst(LANCZOS_R);
    Complex::new(T::cst(LN_TWO_SQRT_E_OVER_PI), T::zero())
        + (s - T::half()) * (shifted.ln() - T::one())
        + sum.ln()
}

/// A branch of `ln Gamma(s)`; only its exponential is unambiguous.
pub fn ln_gamma_complex<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    pole_check(s)?;
    if s.re >= T::half() {
        Ok(ln_gamma_right(s))
    } else {
        let pi = T::PI();
        let sin = (s * pi).sin();
        Ok(Complex::new(pi.ln(), T::zero()) - sin.ln() - ln_gamma_right(Complex::new(T::one(), T::zero()) - s))
    }
}

/// `Gamma(s)` for complex `s` away from the non-positive integers.
pub fn gamma_complex<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let v = ln_gamma_complex(s)?.exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("gamma({s}) overflows")))
    }
}

/// `arg Gamma(1/2 + i gamma)` on the principal branch `(-pi, pi]`.
pub fn arg_gamma_half_line<T: Real>(gamma: T) -> T {
    let v = ln_gamma_right(Complex::new(T::half(), gamma));
    wrap_phase(v.im)
}

/// Reduces an angle to `(-pi, pi]`.
pub fn wrap_phase<T: Real>(theta: T) -> T {
    let two_pi = T::two() * T::PI();
    let mut t = theta - two_pi * (theta / two_pi).round();
    if t <= -T::PI() {
        t = t + two_pi;
    } else if t > T::PI() {
        t = t - two_pi;
    }
    t
}
