//! Finite-energy Klein-Gordon solutions: wave packets, energy and momentum,
//! Riemann's propagator, light-cone traces, boosts and the Dirac partner.

mod cauchy;
mod cone;
mod packet;
mod riemann;

pub use cauchy::{cauchy_energy, line_energy, CauchyData, Extension};
pub use cone::{cone_energy_momentum, tail_energy, trace_g, trace_g_reflected, trace_k, trace_p, ConeTraces};
pub use packet::{boost_energy_momentum, spinor_boost, EnergyMomentum, PacketField, Parity, WavePacket, DEFAULT_LAMBDA_MIN, PARTNER_LAMBDA_MIN};
pub use riemann::riemann_propagate;
