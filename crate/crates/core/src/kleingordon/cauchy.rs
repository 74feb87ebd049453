//! Cauchy data `(F, G) = (phi(0, x), psi(0, x))` on `x > 0` and the energy
//! of Cauchy data.

use std::path::Path;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::packet::WavePacket;
use crate::error::{Error, Result};
use crate::io::{read_table, write_table, Format};
use crate::quad::QuadValue;
use crate::real::Real;
use crate::sampled::{infer_decay, simpson_weights, GridKind, SampledFunction};

/// How half-line data continue to `x < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    /// PT-even solutions: `F` even, `G` odd.
    FEvenGOdd,
    FOddGEven,
    /// No symmetry assumed; only the half line is used.
    BothFiniteEnergy,
}

/// `F(x) = phi(0, x)` and `G(x) = psi(0, x)` sampled on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyData<T> {
    pub f: SampledFunction<T>,
    pub g: SampledFunction<T>,
    pub extension: Extension,
}

impl<T: Real> CauchyData<T> {
    pub fn new(f: SampledFunction<T>, g: SampledFunction<T>, extension: Extension) -> Result<Self> {
        if f.grid() != g.grid() {
            return Err(Error::InvalidData("F and G must share one grid".into()));
        }
        Ok(Self { f, g, extension })
    }

    /// Samples two callables; decay hints are fitted to the tails.
    pub fn from_fns(f: impl Fn(T) -> T, g: impl Fn(T) -> T, x_grid: Vec<T>, kind: GridKind, extension: Extension) -> Result<Self> {
        let fv = x_grid.iter().map(|&x| f(x)).collect();
        let gv = x_grid.iter().map(|&x| g(x)).collect();
        Self::from_samples(x_grid, fv, gv, kind, extension)
    }

    /// `F = phi(0, .)`, `G = psi(0, .)` from a packet and its Dirac partner.
    /// The values must be real (PT-even packets).
    pub fn from_packets(phi: &WavePacket<T>, psi: &WavePacket<T>, x_grid: Vec<T>, kind: GridKind) -> Result<Self> {
        let fc: Vec<Complex<T>> = x_grid.par_iter().map(|&x| phi.synthesize_phi(T::zero(), x)).collect();
        let gc: Vec<Complex<T>> = x_grid.par_iter().map(|&x| psi.synthesize_phi(T::zero(), x)).collect();
        Self::from_samples(x_grid, real_parts(&fc)?, real_parts(&gc)?, kind, Extension::FEvenGOdd)
    }

    pub fn from_samples(x_grid: Vec<T>, f: Vec<T>, g: Vec<T>, kind: GridKind, extension: Extension) -> Result<Self> {
        let fd = infer_decay(&x_grid, &f);
        let gd = infer_decay(&x_grid, &g);
        Self::new(SampledFunction::new(x_grid.clone(), f, kind, fd)?, SampledFunction::new(x_grid, g, kind, gd)?, extension)
    }

    pub fn grid(&self) -> &[T] {
        self.f.grid()
    }

    /// `int_0^inf (F^2 + G^2) dx`.
    pub fn norm_sq(&self, tol: T) -> Result<T> {
        Ok(self.f.integral_of(|_, v| v * v, tol)? + self.g.integral_of(|_, v| v * v, tol)?)
    }

    /// Swaps `F` and `G` (time reversal of the wedge problem).
    pub fn swapped(&self) -> Self {
        let extension = match self.extension {
            Extension::FEvenGOdd => Extension::FOddGEven,
            Extension::FOddGEven => Extension::FEvenGOdd,
            e => e,
        };
        Self {
            f: self.g.clone(),
            g: self.f.clone(),
            extension,
        }
    }
}

impl CauchyData<f64> {
    /// Writes columns `x,F,G`.
    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        write_table(path, &["x", "F", "G"], &[self.f.grid(), self.f.values(), self.g.values()], format)
    }

    /// Reads columns `x,F,G` (CSV or JSON arrays).
    pub fn read(path: &Path, extension: Extension) -> Result<Self> {
        let cols = read_table(path, &["x", "F", "G"])?;
        let kind = crate::io::infer_grid_kind(&cols[0]);
        let mut cols = cols.into_iter();
        let (x, f, g) = (cols.next().unwrap_or_default(), cols.next().unwrap_or_default(), cols.next().unwrap_or_default());
        Self::from_samples(x, f, g, kind, extension)
    }
}

pub(crate) fn real_parts<T: Real>(values: &[Complex<T>]) -> Result<Vec<T>> {
    let scale = values.iter().fold(T::zero(), |m, v| m.max(v.norm()));
    if let Some(v) = values.iter().find(|v| v.im.abs() > T::cst(1e-8) * scale) {
        return Err(Error::InvalidData(format!("expected real values, found imaginary part {:e}", v.im)));
    }
    Ok(values.iter().map(|v| v.re).collect())
}

/// `(1/2pi) int_R (|phi|^2 + |phi_x|^2 + |phi_t|^2) dx` for data given on the
/// half line and extended to `x < 0` by either parity (the density is even
/// under both). `phi_x` comes from fourth-order finite differences.
pub fn cauchy_energy<T: Real, V: QuadValue<T>>(phi0: &SampledFunction<T, V>, dphi_dt0: &SampledFunction<T, V>, tol: T) -> Result<T> {
    let sq = |_: T, v: V| v.magnitude() * v.magnitude();
    let d = phi0.derivative();
    let total = phi0.integral_of(sq, tol)? + d.integral_of(sq, tol)? + dphi_dt0.integral_of(sq, tol)?;
    Ok(total / T::PI())
}

/// The same energy for samples on a uniform grid covering the whole support
/// (no symmetry assumed).
pub fn line_energy<T: Real>(x_grid: &[T], phi: &[Complex<T>], phi_t: &[Complex<T>]) -> Result<T> {
    let n = x_grid.len();
    if n < 5 || phi.len() != n || phi_t.len() != n {
        return Err(Error::InvalidData("line energy needs at least 5 matching samples".into()));
    }
    let h = (x_grid[n - 1] - x_grid[0]) / T::from_count(n - 1);
    let w = simpson_weights(n, h);
    let inv = T::one() / (T::cst(12.0) * h);
    let mut total = T::zero();
    for i in 0..n {
        let dx = if i < 2 || i + 2 >= n {
            let (a, b) = if i + 1 < n { (i, i + 1) } else { (i - 1, i) };
            (phi[b] - phi[a]) / h
        } else {
            (phi[i - 2] - phi[i - 1] * T::cst(8.0) + phi[i + 1] * T::cst(8.0) - phi[i + 2]) * inv
        };
        total = total + w[i] * (phi[i].norm_sqr() + dx.norm_sqr() + phi_t[i].norm_sqr());
    }
    Ok(total / (T::two() * T::PI()))
}
