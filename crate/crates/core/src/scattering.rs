//! Scattering in the conformal coordinates `x = 2e^zeta cosh xi`,
//! `t = 2e^zeta sinh xi` of the right wedge: the boost flow on traces, the
//! `A`/`B` combinations of the Dirac pair, the Schrodinger equations
//! `-Phi'' + V Phi = gamma^2 Phi` with exponential barriers, and the phase
//! shifts read off their solutions.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kleingordon::{ConeTraces, WavePacket};
use crate::quad::{DecayHint, QuadValue};
use crate::real::Real;
use crate::sampled::SampledFunction;
use crate::specfun::{arg_gamma_half_line, bessel_k_half_plus_imag, bessel_k_imag_order, bessel_k_imag_order_deriv, ln_gamma_complex, scatter_s, wrap_phase};

/// Which barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    /// `4e^{2 zeta}`, the Klein-Gordon equation itself.
    KleinGordon,
    /// `4e^{2 zeta} - 2e^zeta`, the equation for `A`.
    AMinus,
    /// `4e^{2 zeta} + 2e^zeta`, the equation for `B`.
    BPlus,
}

impl PotentialKind {
    fn linear_coef(self) -> f64 {
        match self {
            PotentialKind::KleinGordon => 0.0,
            PotentialKind::AMinus => -2.0,
            PotentialKind::BPlus => 2.0,
        }
    }
}

pub fn potential<T: Real>(kind: PotentialKind, zeta: T) -> T {
    let e = zeta.exp();
    T::cst(4.0) * e * e + T::cst(kind.linear_coef()) * e
}

fn dilate<T: Real, V: QuadValue<T>>(f: &SampledFunction<T, V>, c: T, amp: T) -> Result<SampledFunction<T, V>> {
    // x -> amp f(c x)
    let grid: Vec<T> = f.grid().iter().map(|&x| x / c).collect();
    let values: Vec<V> = f.values().iter().map(|&v| v * amp).collect();
    let cf = c.as_f64();
    let decay = match f.decay() {
        DecayHint::Exponential { rate } => DecayHint::Exponential { rate: rate * cf },
        DecayHint::Compact { support_end } => DecayHint::Compact { support_end: support_end / cf },
        h => h,
    };
    SampledFunction::new(grid, values, f.grid_kind(), decay)
}

/// The boost flow: `g_xi(u) = e^{xi/2} g(e^xi u)`,
/// `k_xi(v) = e^{-xi/2} k(e^{-xi} v)` and correspondingly
/// `p_xi(v) = e^{xi/2} p(e^{-xi} v)`. Preserves the `L^2` norms of `g` and `k`.
pub fn boost_flow<T: Real, V: QuadValue<T>>(traces: &ConeTraces<T, V>, xi: T) -> Result<ConeTraces<T, V>> {
    let (up, down) = (xi.exp(), (-xi).exp());
    let (grow, shrink) = ((xi * T::half()).exp(), (-xi * T::half()).exp());
    Ok(ConeTraces {
        g: dilate(&traces.g, up, grow)?,
        k: dilate(&traces.k, down, shrink)?,
        p: traces.p.as_ref().map(|p| dilate(p, down, grow)).transpose()?,
        g_reflected: traces.g_reflected.as_ref().map(|g| dilate(g, up, grow)).transpose()?,
    })
}

/// `A = (1/2) e^{zeta/2} (e^{-xi/2} phi + e^{xi/2} psi)`,
/// `B = (i/2) e^{zeta/2} (-e^{-xi/2} phi + e^{xi/2} psi)`.
pub fn ab_from_phi_psi<T: Real>(phi: Complex<T>, psi: Complex<T>, xi: T, zeta: T) -> (Complex<T>, Complex<T>) {
    let s = (zeta * T::half()).exp() * T::half();
    let (a, b) = ((-xi * T::half()).exp(), (xi * T::half()).exp());
    let i = Complex::new(T::zero(), T::one());
    ((phi * a + psi * b) * s, i * (psi * b - phi * a) * s)
}

/// `(t, x)` of the conformal point `(xi, zeta)`.
pub fn wedge_point<T: Real>(xi: T, zeta: T) -> (T, T) {
    let eta = T::two() * zeta.exp();
    (eta * xi.sinh(), eta * xi.cosh())
}

/// `(A, B)` at `(xi, zeta)` for the Dirac pair `(phi, psi)` of packets.
pub fn ab_field<T: Real>(phi: &WavePacket<T>, psi: &WavePacket<T>, xi: T, zeta: T) -> (Complex<T>, Complex<T>) {
    let (t, x) = wedge_point(xi, zeta);
    ab_from_phi_psi(phi.synthesize_phi(t, x), psi.synthesize_phi(t, x), xi, zeta)
}

/// Relative residual of the time-dependent system
/// `i A_xi = (d_zeta - 2e^zeta) B`, `i B_xi = -(d_zeta + 2e^zeta) A` at
/// `(xi, zeta)`, with central differences of step `h`.
pub fn ab_system_residual<T: Real>(phi: &WavePacket<T>, psi: &WavePacket<T>, xi: T, zeta: T, h: T) -> T {
    let at = |a: T, b: T| ab_field(phi, psi, a, b);
    let (a0, b0) = at(xi, zeta);
    let two_h = T::two() * h;
    let (ap, bp) = at(xi + h, zeta);
    let (am, bm) = at(xi - h, zeta);
    let (az, bz) = at(xi, zeta + h);
    let (aw, bw) = at(xi, zeta - h);
    let (a_xi, b_xi) = ((ap - am) / two_h, (bp - bm) / two_h);
    let (a_z, b_z) = ((az - aw) / two_h, (bz - bw) / two_h);
    let i = Complex::new(T::zero(), T::one());
    let e2 = T::two() * zeta.exp();
    let r1 = i * a_xi - (b_z - b0 * e2);
    let r2 = i * b_xi + (a_z + a0 * e2);
    let scale = a_xi.norm().max(b_xi.norm()).max(a_z.norm()).max(b_z.norm()).max(T::min_positive_value());
    r1.norm().max(r2.norm()) / scale
}

/// Samples of a solution `Phi` and `Phi'` of `-Phi'' + V Phi = gamma^2 Phi`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeSolution<T> {
    pub zeta_grid: Vec<T>,
    pub values: Vec<T>,
    pub derivatives: Vec<T>,
    pub gamma: T,
    pub potential: PotentialKind,
    /// Set when some samples underflowed to zero.
    pub underflow: bool,
}

impl<T: Real> OdeSolution<T> {
    /// Residual `-Phi'' + (V - gamma^2) Phi` at the interior points of a
    /// uniform grid, `Phi''` from the five-point stencil on the values.
    pub fn residuals(&self) -> Result<Vec<(T, T)>> {
        let z = &self.zeta_grid;
        let n = z.len();
        if n < 5 {
            return Err(Error::InvalidData(format!("{n} samples; the residual stencil needs 5")));
        }
        let h = z[1] - z[0];
        for w in z.windows(2) {
            if ((w[1] - w[0]) - h).abs() > h.abs() * T::cst(1e-6) {
                return Err(Error::InvalidData("residuals need a uniform zeta grid".into()));
            }
        }
        let y = &self.values;
        let g2 = self.gamma * self.gamma;
        Ok((2..n - 2)
            .map(|i| {
                let d2 = (-y[i + 2] + T::cst(16.0) * (y[i + 1] + y[i - 1]) - T::cst(30.0) * y[i] - y[i - 2]) / (T::cst(12.0) * h * h);
                (z[i], -d2 + (potential(self.potential, z[i]) - g2) * y[i])
            })
            .collect())
    }

    pub fn max_residual(&self) -> Result<T> {
        Ok(self.residuals()?.into_iter().fold(T::zero(), |m, (_, r)| m.max(r.abs())))
    }

    /// `(Phi, Phi')` at `zeta` by cubic Hermite interpolation.
    pub fn eval(&self, zeta: T) -> Result<(T, T)> {
        let z = &self.zeta_grid;
        let ascending = z[z.len() - 1] >= z[0];
        let (lo, hi) = if ascending { (z[0], z[z.len() - 1]) } else { (z[z.len() - 1], z[0]) };
        if zeta < lo || zeta > hi {
            return Err(Error::Coverage {
                grid_min: lo.as_f64(),
                grid_max: hi.as_f64(),
                need_min: zeta.as_f64(),
                need_max: zeta.as_f64(),
            });
        }
        let i = z
            .windows(2)
            .position(|w| (w[0] - zeta) * (w[1] - zeta) <= T::zero())
            .unwrap_or(z.len() - 2);
        let h = z[i + 1] - z[i];
        let s = (zeta - z[i]) / h;
        let (y0, y1, d0, d1) = (self.values[i], self.values[i + 1], self.derivatives[i] * h, self.derivatives[i + 1] * h);
        let (s2, s3) = (s * s, s * s * s);
        let three = T::cst(3.0);
        let value = (T::two() * s3 - three * s2 + T::one()) * y0 + (s3 - T::two() * s2 + s) * d0 + (three * s2 - T::two() * s3) * y1 + (s3 - s2) * d1;
        let slope = ((T::cst(6.0) * s2 - T::cst(6.0) * s) * (y0 - y1) + (three * s2 - T::cst(4.0) * s + T::one()) * d0 + (three * s2 - T::two() * s) * d1) / h;
        Ok((value, slope))
    }
}

/// The solution square-integrable at `+inf`:
/// `KleinGordon`: `K_{i gamma}(2e^zeta)`;
/// `AMinus`: `A = 2 e^{zeta/2} Re K_{1/2 + i gamma}(2e^zeta)`;
/// `BPlus`: `B = -2 e^{zeta/2} Im K_{1/2 + i gamma}(2e^zeta)`.
///
/// Derivatives come from `A' = -2e^zeta A - gamma B`, `B' = 2e^zeta B + gamma A`.
#[allow(non_snake_case)]
pub fn reference_solution_K<T: Real>(gamma: T, kind: PotentialKind, zeta_grid: Vec<T>) -> Result<OdeSolution<T>> {
    let samples: Vec<(T, T, bool)> = zeta_grid
        .par_iter()
        .map(|&zeta| {
            let e = zeta.exp();
            let z = T::two() * e;
            match kind {
                PotentialKind::KleinGordon => {
                    let k = bessel_k_imag_order(gamma, z)?;
                    let dk = bessel_k_imag_order_deriv(gamma, z)?;
                    Ok((k.value, z * dk.value, k.underflow))
                }
                _ => {
                    let k = bessel_k_half_plus_imag(gamma, z)?;
                    let w = T::two() * (zeta * T::half()).exp();
                    let (a, b) = (w * k.value.re, -w * k.value.im);
                    let (da, db) = (-z * a - gamma * b, z * b + gamma * a);
                    Ok(if kind == PotentialKind::AMinus { (a, da, k.underflow) } else { (b, db, k.underflow) })
                }
            }
        })
        .collect::<Result<_>>()?;
    Ok(OdeSolution {
        underflow: samples.iter().any(|s| s.2),
        values: samples.iter().map(|s| s.0).collect(),
        derivatives: samples.iter().map(|s| s.1).collect(),
        zeta_grid,
        gamma,
        potential: kind,
    })
}

/// Fixed-step RK4 for `Phi'' = (V - gamma^2) Phi` from `zeta_start` to
/// `zeta_end` (either direction) with step `h > 0`.
pub fn integrate_schrodinger<T: Real>(gamma: T, kind: PotentialKind, zeta_start: T, zeta_end: T, start: (T, T), h: T) -> Result<OdeSolution<T>> {
    let limit = T::cst(0.1) / gamma.abs().max(T::one());
    if !(h > T::zero()) || h > limit {
        return Err(Error::Resolution { step: h.as_f64(), limit: limit.as_f64() });
    }
    let span = zeta_end - zeta_start;
    let steps = ((span.abs() / h).ceil().as_f64() as usize).max(1);
    let dz = span / T::from_count(steps);
    let g2 = gamma * gamma;
    let rhs = |z: T, y: T, d: T| (d, (potential(kind, z) - g2) * y);
    let (mut z, mut y, mut d) = (zeta_start, start.0, start.1);
    let mut sol = OdeSolution {
        zeta_grid: Vec::with_capacity(steps + 1),
        values: Vec::with_capacity(steps + 1),
        derivatives: Vec::with_capacity(steps + 1),
        gamma,
        potential: kind,
        underflow: false,
    };
    let half = T::half();
    for i in 0..=steps {
        sol.zeta_grid.push(z);
        sol.values.push(y);
        sol.derivatives.push(d);
        if i == steps {
            break;
        }
        let k1 = rhs(z, y, d);
        let k2 = rhs(z + dz * half, y + k1.0 * dz * half, d + k1.1 * dz * half);
        let k3 = rhs(z + dz * half, y + k2.0 * dz * half, d + k2.1 * dz * half);
        let k4 = rhs(z + dz, y + k3.0 * dz, d + k3.1 * dz);
        let sixth = dz / T::cst(6.0);
        y = y + sixth * (k1.0 + T::two() * (k2.0 + k3.0) + k4.0);
        d = d + sixth * (k1.1 + T::two() * (k2.1 + k3.1) + k4.1);
        z = zeta_start + dz * T::from_count(i + 1);
    }
    Ok(sol)
}

/// Phase read off at `zeta0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseShift<T> {
    /// `theta` in `Phi ~ C cos(gamma zeta - theta)`, in `(-pi, pi]`.
    pub theta: T,
    pub zeta0: T,
    /// `|V(zeta0)|`.
    pub potential: T,
    /// `gamma^-1 int_{-inf}^{zeta0} |V|`, a first-order bound on the bias of `theta`.
    pub bias: T,
}

/// Largest tolerated phase bias in [`extract_phase_shift`].
pub const MAX_PHASE_BIAS: f64 = 1e-3;

/// Fits `Phi ~ C cos(gamma zeta - theta)` to `(Phi, Phi')` at `zeta0`:
/// `theta = gamma zeta0 - atan2(-Phi'/gamma, Phi)`.
pub fn extract_phase_shift<T: Real>(sol: &OdeSolution<T>, zeta0: T, max_bias: T) -> Result<PhaseShift<T>> {
    let gamma = sol.gamma;
    if gamma == T::zero() || !gamma.is_finite() {
        return Err(Error::Domain(format!("phase fit needs a nonzero finite gamma, got {gamma}")));
    }
    let e = zeta0.exp();
    let pot = potential(sol.potential, zeta0).abs();
    let bias = (T::two() * e * e + T::cst(sol.potential.linear_coef().abs()) * e) / gamma.abs();
    if bias > max_bias {
        return Err(Error::Contamination { potential: pot.as_f64(), bias: bias.as_f64() });
    }
    let (y, d) = sol.eval(zeta0)?;
    let theta = wrap_phase(gamma * zeta0 - (-d / gamma).atan2(y));
    Ok(PhaseShift { theta, zeta0, potential: pot, bias })
}

/// The predicted `theta`: `arg Gamma(i gamma)` for the Klein-Gordon barrier,
/// `arg Gamma(1/2 + i gamma)` for `A`, and that plus `pi/2` for `B`.
pub fn reference_phase<T: Real>(gamma: T, kind: PotentialKind) -> Result<T> {
    Ok(match kind {
        PotentialKind::KleinGordon => wrap_phase(ln_gamma_complex(Complex::new(T::zero(), gamma))?.im),
        PotentialKind::AMinus => arg_gamma_half_line(gamma),
        PotentialKind::BPlus => wrap_phase(arg_gamma_half_line(gamma) + T::PI() * T::half()),
    })
}

/// `-2 theta`, the phase of the reflection coefficient; equals `arg S(gamma)`
/// for `A` and `arg(-S(gamma))` for `B`.
pub fn reflection_phase<T: Real>(theta: T) -> T {
    wrap_phase(-T::two() * theta)
}

/// `arg S(gamma)` for `A`, `arg(-S(gamma))` for `B`.
pub fn expected_reflection_phase<T: Real>(gamma: T, kind: PotentialKind) -> T {
    let s = scatter_s(gamma);
    match kind {
        PotentialKind::BPlus => (-s).arg(),
        _ => s.arg(),
    }
}

/// Settings of the phase-shift sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions<T> {
    pub zeta_start: T,
    pub zeta0: T,
    pub step: T,
    pub max_bias: T,
}

impl<T: Real> Default for SweepOptions<T> {
    fn default() -> Self {
        Self {
            zeta_start: T::two(),
            zeta0: T::cst(-10.0),
            step: T::cst(1e-3),
            max_bias: T::cst(MAX_PHASE_BIAS),
        }
    }
}

/// One row of the sweep CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseRow<T> {
    pub gamma: T,
    pub theta_extracted: T,
    pub theta_reference: T,
    pub abs_error: T,
}

/// `theta` for one `gamma`: seed with the reference solution at
/// `zeta_start`, integrate down to `zeta0` (the decaying solution grows in
/// that direction, so the companion cannot take over), fit the phase there.
pub fn phase_shift<T: Real>(gamma: T, kind: PotentialKind, opts: SweepOptions<T>) -> Result<PhaseRow<T>> {
    let seed = reference_solution_K(gamma, kind, vec![opts.zeta_start])?;
    let step = opts.step.min(T::cst(0.1) / gamma.abs().max(T::one()));
    let sol = integrate_schrodinger(gamma, kind, opts.zeta_start, opts.zeta0, (seed.values[0], seed.derivatives[0]), step)?;
    let theta = extract_phase_shift(&sol, opts.zeta0, opts.max_bias)?.theta;
    let reference = reference_phase(gamma, kind)?;
    Ok(PhaseRow {
        gamma,
        theta_extracted: theta,
        theta_reference: reference,
        abs_error: wrap_phase(theta - reference).abs(),
    })
}

fn unwrap_phases<T: Real>(xs: &mut [T]) {
    let two_pi = T::two() * T::PI();
    for i in 1..xs.len() {
        let jump = xs[i] - xs[i - 1];
        xs[i] = xs[i] - two_pi * (jump / two_pi).round();
    }
}

/// Rows for each `gamma`, in input order, with both phase columns unwrapped
/// along the sweep.
pub fn phase_sweep<T: Real>(gammas: &[T], kind: PotentialKind, opts: SweepOptions<T>) -> Result<Vec<PhaseRow<T>>> {
    let mut rows: Vec<PhaseRow<T>> = gammas.par_iter().map(|&g| phase_shift(g, kind, opts)).collect::<Result<_>>()?;
    let mut ext: Vec<T> = rows.iter().map(|r| r.theta_extracted).collect();
    let mut refs: Vec<T> = rows.iter().map(|r| r.theta_reference).collect();
    unwrap_phases(&mut ext);
    unwrap_phases(&mut refs);
    for (r, (e, f)) in rows.iter_mut().zip(ext.into_iter().zip(refs)) {
        r.theta_extracted = e;
        r.theta_reference = f;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kleingordon::Parity;
    use crate::sampled::{log_grid, uniform_grid, GridKind};

    #[test]
    fn potentials() {
        assert_eq!(potential(PotentialKind::KleinGordon, 0.0f64), 4.0);
        assert_eq!(potential(PotentialKind::AMinus, 0.0f64), 2.0);
        assert!((potential(PotentialKind::BPlus, 2f64.ln()) - 20.0).abs() < 1e-13);
    }

    #[test]
    fn ab_combinations() {
        let z = Complex::new(0.0f64, 0.0);
        assert_eq!(ab_from_phi_psi(z, z, 0.3, 0.2), (z, z));
        let one = Complex::new(1.0f64, 0.0);
        let (a, b) = ab_from_phi_psi(one, one, 0.0, 0.0);
        assert!((a - one).norm() < 1e-15 && b.norm() < 1e-15);
    }

    #[test]
    fn reference_matches_mpmath() {
        // mpmath: 2 e^{z/2} re/im besselk(0.5 + 1j, 2 e^z) at z = -5, 0
        let a = reference_solution_K(1.0f64, PotentialKind::AMinus, vec![-5.0, 0.0]).unwrap();
        assert!((a.values[0] + 0.323_543_027_629_403_46).abs() < 1e-10);
        assert!((a.derivatives[0] + 0.407_388_717_639_649_7).abs() < 1e-10);
        assert!((a.values[1] - 0.190_874_364_808_534_58).abs() < 1e-10);
        let b = reference_solution_K(1.0f64, PotentialKind::BPlus, vec![0.0]).unwrap();
        assert!((b.values[0] + 0.040_732_518_382_366_695).abs() < 1e-10);
        // besselk(1j, 2) and 2 d/dx besselk(1j, x) at x = 2
        let k = reference_solution_K(1.0f64, PotentialKind::KleinGordon, vec![0.0]).unwrap();
        assert!((k.values[0] - 0.092_385_459_890_391_18).abs() < 1e-11);
        assert!((k.derivatives[0] + 0.210_142_953_864_935_83).abs() < 1e-11);
    }

    #[test]
    fn reference_residual_and_symmetry() {
        for kind in [PotentialKind::KleinGordon, PotentialKind::AMinus, PotentialKind::BPlus] {
            let sol = reference_solution_K(1.0f64, kind, uniform_grid(-8.2, 2.2, 417)).unwrap();
            assert!(sol.max_residual().unwrap() < 1e-6, "{kind:?}");
        }
        let k = |g: f64| reference_solution_K(g, PotentialKind::KleinGordon, vec![-1.0, 0.5]).unwrap().values;
        assert_eq!(k(1.7), k(-1.7));
        let far = reference_solution_K(1.0f64, PotentialKind::AMinus, vec![1.5, 2.0]).unwrap();
        for (z, v) in far.zeta_grid.iter().zip(&far.values) {
            assert!(v.abs() < (-z.exp()).exp());
        }
    }

    #[test]
    fn free_limit_and_resolution() {
        let sol = integrate_schrodinger(0.0f64, PotentialKind::KleinGordon, -30.0, -12.0, (1.0, 0.0), 1e-2).unwrap();
        assert!(sol.values.iter().all(|v| (v - 1.0).abs() < 1e-9));
        let e = integrate_schrodinger(5.0f64, PotentialKind::AMinus, 0.0, -1.0, (1.0, 0.0), 0.05);
        assert!(matches!(e, Err(Error::Resolution { .. })));
    }

    #[test]
    fn wronskian_is_constant() {
        let a = integrate_schrodinger(1.3f64, PotentialKind::BPlus, 1.0, -6.0, (1.0, 0.0), 1e-3).unwrap();
        let b = integrate_schrodinger(1.3f64, PotentialKind::BPlus, 1.0, -6.0, (0.0, 1.0), 1e-3).unwrap();
        let w: Vec<f64> = (0..a.values.len()).map(|i| a.values[i] * b.derivatives[i] - a.derivatives[i] * b.values[i]).collect();
        assert!(w.iter().all(|x| (x - 1.0).abs() < 1e-7));
    }

    #[test]
    fn ode_matches_k_path() {
        let seed = reference_solution_K(1.0f64, PotentialKind::AMinus, vec![2.0, -5.0]).unwrap();
        let sol = integrate_schrodinger(1.0, PotentialKind::AMinus, 2.0, -10.0, (seed.values[0], seed.derivatives[0]), 1e-3).unwrap();
        let (v, _) = sol.eval(-5.0).unwrap();
        assert!((v / seed.values[1] - 1.0).abs() < 1e-5, "{v} vs {}", seed.values[1]);
    }

    #[test]
    fn phases() {
        let opts = SweepOptions::default();
        for kind in [PotentialKind::AMinus, PotentialKind::BPlus, PotentialKind::KleinGordon] {
            for &g in &[0.5f64, 1.0, 2.0, 4.0] {
                let row = phase_shift(g, kind, opts).unwrap();
                assert!(row.abs_error < 1e-3, "{kind:?} gamma = {g}: {row:?}");
                if kind != PotentialKind::KleinGordon {
                    let d = wrap_phase(reflection_phase(row.theta_extracted) - expected_reflection_phase(g, kind));
                    assert!(d.abs() < 2e-3, "{kind:?} gamma = {g}: {d}");
                }
            }
        }
        // mpmath arg(gamma(0.5 + 1j))
        assert!((reference_phase(1.0f64, PotentialKind::AMinus).unwrap() + 0.955_007_724_342_569_1).abs() < 1e-12);
    }

    #[test]
    fn phase_errors() {
        let sol = integrate_schrodinger(0.0f64, PotentialKind::AMinus, -9.0, -11.0, (1.0, 0.0), 1e-2).unwrap();
        assert!(matches!(extract_phase_shift(&sol, -10.0, 1e-3), Err(Error::Domain(_))));
        let sol = integrate_schrodinger(1.0f64, PotentialKind::AMinus, 0.0, -2.0, (1.0, 0.0), 1e-2).unwrap();
        assert!(matches!(extract_phase_shift(&sol, -1.0, 1e-3), Err(Error::Contamination { .. })));
    }

    #[test]
    fn sweep_unwraps() {
        let rows = phase_sweep(&[0.5f64, 1.0, 2.0], PotentialKind::AMinus, SweepOptions::default()).unwrap();
        assert_eq!(rows.len(), 3);
        for w in rows.windows(2) {
            assert!((w[1].theta_reference - w[0].theta_reference).abs() <= std::f64::consts::PI);
        }
    }

    #[test]
    fn boost_flow_preserves_norms_and_intertwines() {
        let e = |x: f64| (-x).exp();
        let hint = DecayHint::Exponential { rate: 1.0 };
        let g = SampledFunction::from_fn(|u| u * e(u), log_grid(1e-4, 60.0, 2048), GridKind::LogUniform, hint).unwrap();
        // H(u e^{-u}) = (1 - v) e^{-v}
        let k = SampledFunction::from_fn(|v| (1.0 - v) * e(v), log_grid(1e-4, 60.0, 2048), GridKind::LogUniform, hint).unwrap();
        let traces = ConeTraces { g, k, p: None, g_reflected: None };
        let same = boost_flow(&traces, 0.0).unwrap();
        assert_eq!(same.g.values(), traces.g.values());
        let b = boost_flow(&traces, 1.3).unwrap();
        let sq = |_: f64, v: f64| v * v;
        let n = |f: &SampledFunction<f64>| f.integral_of(sq, 1e-12).unwrap();
        assert!((n(&b.g) - n(&traces.g)).abs() < 1e-8);
        assert!((n(&b.k) - n(&traces.k)).abs() < 1e-8);
        for &v in &[0.2, 1.0, 4.0] {
            let hg = crate::htransform::h_transform_point(|u| b.g.eval(u), b.g.decay(), v, 1e-11).unwrap();
            assert!((hg - b.k.eval(v)).abs() < 1e-5, "v = {v}");
        }
    }

    #[test]
    fn packet_ab_system() {
        let phi = WavePacket::<f64>::gaussian(1.5, 0.3, 401, Parity::None).unwrap();
        let psi = phi.dirac_partner().unwrap();
        for &(xi, zeta) in &[(0.0, 0.0), (0.4, -0.5), (-0.8, 0.7)] {
            let r = ab_system_residual(&phi, &psi, xi, zeta, 1e-4);
            assert!(r < 1e-4, "({xi}, {zeta}): {r}");
        }
    }
}
