//! Special functions: `J0`, `J1`, their zeros, complex `Gamma`, `K` of
//! imaginary order and the critical-line multipliers.

mod bessel;
mod gamma;
mod kbessel;
mod multipliers;
mod zeros;

pub use bessel::{bessel_j0, bessel_j1, bessel_j1_over_x, j0_unchecked, j1_over_x_unchecked, j1_unchecked};
pub use gamma::{arg_gamma_half_line, gamma_complex, ln_gamma_complex, wrap_phase};
pub use kbessel::{bessel_k_half_plus_imag, bessel_k_imag_order, bessel_k_imag_order_deriv, KValue};
pub use multipliers::{chi, chi_multiplier, hankel0_multiplier, scatter_s};
pub use zeros::{bessel_zero, first_zero_above, ZeroOrder};
