//! The H transform `H f(x) = int_0^inf J0(2 sqrt(xy)) f(y) dy` and its
//! realization as light-cone scattering for the Klein-Gordon equation
//! `phi_tt - phi_xx + phi = 0`.

pub mod debranges;
pub mod error;
pub mod htransform;
pub mod io;
pub mod kleingordon;
pub mod quad;
pub mod real;
pub mod sampled;
pub mod scattering;
pub mod specfun;
pub mod testfamily;
pub mod verify;

pub use error::{Error, Result};
pub use real::Real;

/// `f64` instances of the generic types.
pub type SampledFunction64 = sampled::SampledFunction<f64>;
pub type WavePacket64 = kleingordon::WavePacket<f64>;
pub type CauchyData64 = kleingordon::CauchyData<f64>;
pub type ConeTraces64 = kleingordon::ConeTraces<f64>;
pub type EnergyMomentum64 = kleingordon::EnergyMomentum<f64>;
pub type OdeSolution64 = scattering::OdeSolution<f64>;
pub type Complex64 = num_complex::Complex<f64>;
