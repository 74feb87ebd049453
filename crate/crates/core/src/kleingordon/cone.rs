//! Light-cone traces `g(u) = phi(-u, u)`, `p(v) = phi(v, v)`, `k = -p'`, the
//! energy and momentum they carry, and the energy escaping the light cone.

use num_complex::Complex;
use rayon::prelude::*;

use super::packet::{EnergyMomentum, WavePacket};
use crate::error::Result;
use crate::quad::{integrate_semi_infinite, DecayHint, QuadValue};
use crate::real::Real;
use crate::sampled::{infer_decay, GridKind, SampledFunction};

use super::cauchy::real_parts;

/// Traces on the two half light-cones bounding the Rindler wedge.
///
/// `g_reflected` holds `u -> g(-u)`, the trace on the future cone `t = -x`;
/// when absent `g` is taken to be even (PT-even solutions).
#[derive(Debug, Clone, PartialEq)]
pub struct ConeTraces<T, V = T> {
    pub g: SampledFunction<T, V>,
    pub k: SampledFunction<T, V>,
    pub p: Option<SampledFunction<T, V>>,
    pub g_reflected: Option<SampledFunction<T, V>>,
}

fn tabulate<T: Real>(grid: Vec<T>, kind: GridKind, f: impl Fn(T) -> Complex<T> + Sync) -> Result<SampledFunction<T, Complex<T>>> {
    let values: Vec<Complex<T>> = grid.par_iter().map(|&x| f(x)).collect();
    let mags: Vec<T> = values.iter().map(|v| v.norm()).collect();
    let decay = infer_decay(&grid, &mags);
    SampledFunction::new(grid, values, kind, decay)
}

fn one<T: Real>(_: T) -> [Complex<T>; 1] {
    [Complex::new(T::one(), T::zero())]
}

/// `g(u) = int e^{i lambda u} alpha dlambda`.
pub fn trace_g<T: Real>(packet: &WavePacket<T>, u_grid: Vec<T>, kind: GridKind) -> Result<SampledFunction<T, Complex<T>>> {
    tabulate(u_grid, kind, |u| packet.integrate_modes(u, T::zero(), one)[0])
}

/// `u -> g(-u)`.
pub fn trace_g_reflected<T: Real>(packet: &WavePacket<T>, u_grid: Vec<T>, kind: GridKind) -> Result<SampledFunction<T, Complex<T>>> {
    tabulate(u_grid, kind, |u| packet.integrate_modes(-u, T::zero(), one)[0])
}

/// `p(v) = int e^{-i v / lambda} alpha dlambda`.
pub fn trace_p<T: Real>(packet: &WavePacket<T>, v_grid: Vec<T>, kind: GridKind) -> Result<SampledFunction<T, Complex<T>>> {
    tabulate(v_grid, kind, |v| packet.integrate_modes(T::zero(), v, one)[0])
}

/// `k(v) = -p'(v) = int (i / lambda) e^{-i v / lambda} alpha dlambda`.
pub fn trace_k<T: Real>(packet: &WavePacket<T>, v_grid: Vec<T>, kind: GridKind) -> Result<SampledFunction<T, Complex<T>>> {
    tabulate(v_grid, kind, |v| packet.integrate_modes(T::zero(), v, |l| [Complex::new(T::zero(), l.recip())])[0])
}

impl<T: Real> ConeTraces<T, Complex<T>> {
    /// All four traces of a packet; `u` and `v` share one grid.
    pub fn from_packet(packet: &WavePacket<T>, grid: Vec<T>, kind: GridKind) -> Result<Self> {
        Ok(Self {
            g: trace_g(packet, grid.clone(), kind)?,
            k: trace_k(packet, grid.clone(), kind)?,
            p: Some(trace_p(packet, grid.clone(), kind)?),
            g_reflected: Some(trace_g_reflected(packet, grid, kind)?),
        })
    }

    /// Real traces (fails when an imaginary part is not negligible).
    pub fn to_real(&self) -> Result<ConeTraces<T>> {
        let re = |f: &SampledFunction<T, Complex<T>>| -> Result<SampledFunction<T>> {
            let values = real_parts(f.values())?;
            SampledFunction::new(f.grid().to_vec(), values, f.grid_kind(), f.decay())
        };
        Ok(ConeTraces {
            g: re(&self.g)?,
            k: re(&self.k)?,
            p: self.p.as_ref().map(re).transpose()?,
            g_reflected: self.g_reflected.as_ref().map(re).transpose()?,
        })
    }
}

/// `E` and `P` from the traces:
///
/// `E = (1/2pi) [int_{-inf}^0 (|g|^2 + |g'|^2) du + int_0^inf (|p|^2 + |p'|^2) dv]`,
/// `P = (1/2pi) [int_{-inf}^0 (|g'|^2 - |g|^2) du + int_0^inf (|p|^2 - |p'|^2) dv]`.
///
/// `g'` is a fourth-order finite difference; a missing `p` is recovered as
/// `int_v^inf k`.
pub fn cone_energy_momentum<T: Real, V: QuadValue<T>>(traces: &ConeTraces<T, V>, tol: T) -> Result<EnergyMomentum<T>> {
    let sq = |_: T, v: V| v.magnitude() * v.magnitude();
    let past = traces.g_reflected.as_ref().unwrap_or(&traces.g);
    let g2 = past.integral_of(sq, tol)?;
    let dg2 = past.derivative().integral_of(sq, tol)?;
    let p = match &traces.p {
        Some(p) => p.clone(),
        None => traces.k.tail_integral(tol)?,
    };
    let p2 = p.integral_of(sq, tol)?;
    let k2 = traces.k.integral_of(sq, tol)?;
    let two_pi = T::two() * T::PI();
    Ok(EnergyMomentum::new((g2 + dg2 + p2 + k2) / two_pi, (dg2 - g2 + p2 - k2) / two_pi))
}

/// `(1/2pi) int_{|x| > t} (|phi|^2 + |phi_x|^2 + |phi_t|^2)(t, x) dx`, the
/// energy outside the light cone at time `t >= 0`.
pub fn tail_energy<T: Real>(packet: &WavePacket<T>, t: T, tol: T) -> Result<T> {
    if !(t >= T::zero()) {
        return Err(crate::error::Error::Domain(format!("tail energy needs t >= 0, got {t}")));
    }
    let hint = DecayHint::Exponential { rate: 0.25 };
    let side = |sign: T| integrate_semi_infinite(|y: T| packet.field(t, sign * y).energy_density(), t, tol * T::half(), hint);
    let (right, left) = rayon::join(|| side(T::one()), || side(-T::one()));
    Ok((right?.value + left?.value) / (T::two() * T::PI()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::htransform::h_transform_point;
    use crate::kleingordon::packet::Parity;
    use crate::sampled::{log_grid, uniform_grid};

    #[test]
    fn closed_form_traces() {
        // g = e^{-u} (even), p = k = e^{-v}: E - P = 1/pi
        let grid = log_grid(1e-4, 40.0, 4096);
        let e = |x: f64| (-x).exp();
        let hint = DecayHint::Exponential { rate: 1.0 };
        let f = SampledFunction::from_fn(e, grid, GridKind::LogUniform, hint).unwrap();
        let traces = ConeTraces { g: f.clone(), k: f.clone(), p: Some(f.clone()), g_reflected: None };
        let em = cone_energy_momentum(&traces, 1e-10).unwrap();
        assert!((em.e_minus_p() - std::f64::consts::FRAC_1_PI).abs() < 1e-7);
        // p recovered from k
        let no_p = ConeTraces { p: None, ..traces };
        let em2 = cone_energy_momentum(&no_p, 1e-10).unwrap();
        assert!((em2.energy - em.energy).abs() < 1e-7);
    }

    #[test]
    fn zero_traces() {
        let z = SampledFunction::from_fn(|_| 0.0, uniform_grid(0.1, 1.0, 10), GridKind::Uniform, DecayHint::Compact { support_end: 1.0 }).unwrap();
        let traces = ConeTraces { g: z.clone(), k: z, p: None, g_reflected: None };
        let em = cone_energy_momentum(&traces, 1e-10).unwrap();
        assert_eq!((em.energy, em.momentum), (0.0, 0.0));
    }

    #[test]
    fn packet_cone_energy() {
        let p = WavePacket::<f64>::gaussian(2.0, 0.3, 801, Parity::None).unwrap();
        let traces = ConeTraces::from_packet(&p, uniform_grid(2e-3, 80.0, 8000), GridKind::Uniform).unwrap();
        let em = cone_energy_momentum(&traces, 1e-9).unwrap();
        let exact = p.energy_momentum();
        assert!((em.energy / exact.energy - 1.0).abs() < 1e-4, "{} vs {}", em.energy, exact.energy);
        assert!((em.momentum / exact.momentum - 1.0).abs() < 1e-4, "{} vs {}", em.momentum, exact.momentum);
    }

    #[test]
    fn even_packet_traces_are_real_and_k_is_h_of_g() {
        let p = WavePacket::<f64>::gaussian(2.0, 0.25, 801, Parity::Even).unwrap();
        let traces = ConeTraces::from_packet(&p, uniform_grid(2e-3, 40.0, 8000), GridKind::Uniform).unwrap().to_real().unwrap();
        assert!(traces.k.values()[0].abs() < 1e-2);
        let g = &traces.g;
        for &v in &[0.3, 1.0, 2.5, 6.0] {
            let hk = h_transform_point(|u| g.eval(u), DecayHint::Exponential { rate: 1.0 }, v, 1e-10).unwrap();
            assert!((hk - traces.k.eval(v)).abs() < 1e-6, "v = {v}: {hk} vs {}", traces.k.eval(v));
        }
    }

    #[test]
    fn tail_energy_decreases() {
        let p = WavePacket::<f64>::gaussian(2.0, 0.3, 601, Parity::None).unwrap();
        let e0 = tail_energy(&p, 0.0, 1e-9).unwrap();
        assert!((e0 / p.energy() - 1.0).abs() < 1e-3, "{e0} vs {}", p.energy());
        let e5 = tail_energy(&p, 5.0, 1e-9).unwrap();
        assert!(e5 <= e0 + 1e-6);
    }
}
