//! Unit-modulus multipliers on the critical line.

use num_complex::Complex;

use super::gamma::ln_gamma_complex;
use crate::error::Result;
use crate::real::Real;

// Gamma(conj s) = conj Gamma(s), so on Re s = 1/2 these ratios are
// exp(-2 i Im ln Gamma(.)) and have modulus one exactly.
fn unit_phase<T: Real>(phase: T) -> Complex<T> {
    let (s, c) = phase.sin_cos();
    Complex::new(c, s)
}

/// `chi(s) = Gamma(1 - s) / Gamma(s)` for general complex `s`.
pub fn chi<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    Ok((ln_gamma_complex(one - s)? - ln_gamma_complex(s)?).exp())
}

/// `chi(1/2 + i tau)`.
pub fn chi_multiplier<T: Real>(tau: T) -> Complex<T> {
    let lg = ln_gamma_complex(Complex::new(T::half(), tau)).expect("no poles on the critical line");
    unit_phase(-T::two() * lg.im)
}

/// `S(gamma) = Gamma(1/2 - i gamma) / Gamma(1/2 + i gamma)`.
pub fn scatter_s<T: Real>(gamma: T) -> Complex<T> {
    chi_multiplier(gamma)
}

/// `2^{1/2 - w} Gamma(3/4 - w/2) / Gamma(1/4 + w/2)` at `w = 1/2 + i tau`.
pub fn hankel0_multiplier<T: Real>(tau: T) -> Complex<T> {
    let lg = ln_gamma_complex(Complex::new(T::half(), tau * T::half())).expect("no poles on the critical line");
    unit_phase(-T::two() * lg.im - tau * T::LN_2())
}
