//! Finite-energy solutions of `phi_tt - phi_xx + phi = 0` as superpositions
//! `phi(t, x) = int e^{i(lambda u - v / lambda)} alpha(lambda) dlambda` with
//! light-cone coordinates `u = (x - t)/2`, `v = (x + t)/2`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Default exclusion radius around `lambda = 0`.
pub const DEFAULT_LAMBDA_MIN: f64 = 0.05;

/// Smallest `|lambda|` carrying amplitude that [`WavePacket::dirac_partner`]
/// accepts; below it `int lambda^-2 |alpha|^2` is treated as divergent.
pub const PARTNER_LAMBDA_MIN: f64 = 1e-3;

// phase advance allowed per Gauss-Legendre panel during synthesis
const MAX_PANEL_PHASE: f64 = 0.5;

const GL4_X: [f64; 4] = [-0.861_136_311_594_052_6, -0.339_981_043_584_856_3, 0.339_981_043_584_856_3, 0.861_136_311_594_052_6];
const GL4_W: [f64; 4] = [0.347_854_845_137_453_9, 0.652_145_154_862_546_1, 0.652_145_154_862_546_1, 0.347_854_845_137_453_9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// `alpha(-lambda) = alpha(lambda)`; the solution is PT-even.
    Even,
    /// `alpha(-lambda) = -alpha(lambda)` (the Dirac partner of an even packet).
    Odd,
    None,
}

impl Parity {
    fn sign(self) -> Option<f64> {
        match self {
            Parity::Even => Some(1.0),
            Parity::Odd => Some(-1.0),
            Parity::None => None,
        }
    }
}

/// `E` and `P` of a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyMomentum<T> {
    pub energy: T,
    pub momentum: T,
}

impl<T: Real> EnergyMomentum<T> {
    pub fn new(energy: T, momentum: T) -> Self {
        Self { energy, momentum }
    }

    pub fn e_minus_p(&self) -> T {
        self.energy - self.momentum
    }

    pub fn e_plus_p(&self) -> T {
        self.energy + self.momentum
    }

    /// `E^2 - P^2`, the boost invariant.
    pub fn mass_squared(&self) -> T {
        self.e_minus_p() * self.e_plus_p()
    }
}

/// Effect of the boost `Lambda = e^xi`: `E - P` scales by `Lambda`, `E + P` by `1/Lambda`.
pub fn boost_energy_momentum<T: Real>(em: EnergyMomentum<T>, xi: T) -> EnergyMomentum<T> {
    let lam = xi.exp();
    let (minus, plus) = (em.e_minus_p() * lam, em.e_plus_p() / lam);
    EnergyMomentum::new((plus + minus) * T::half(), (plus - minus) * T::half())
}

/// `phi` and its first derivatives at one spacetime point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketField<T> {
    pub phi: Complex<T>,
    pub phi_t: Complex<T>,
    pub phi_x: Complex<T>,
}

impl<T: Real> PacketField<T> {
    /// `|phi|^2 + |phi_x|^2 + |phi_t|^2`.
    pub fn energy_density(&self) -> T {
        self.phi.norm_sqr() + self.phi_x.norm_sqr() + self.phi_t.norm_sqr()
    }

    /// `-2 Re(conj(phi_x) phi_t)`, the flux with `d_t density + d_x flux = 0`.
    pub fn momentum_density(&self) -> T {
        -(T::two() * (self.phi_x.conj() * self.phi_t).re)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PacketFile {
    lambda_grid: Vec<f64>,
    alpha_re: Vec<f64>,
    alpha_im: Vec<f64>,
    parity: Parity,
}

/// A wave packet `alpha` sampled on a grid avoiding a neighbourhood of zero.
///
/// The grid may have a negative and a positive branch; the interval that
/// straddles zero carries no amplitude. Quadrature over each branch is
/// composite Simpson on the (possibly non-uniform) nodes.
#[derive(Debug, Clone)]
pub struct WavePacket<T> {
    lambda_grid: Vec<T>,
    alpha: Vec<Complex<T>>,
    parity: Parity,
    weights: Vec<T>,
    cells: Vec<Cell<T>>,
}

/// One grid interval carrying amplitude, with `alpha` cached at its four
/// Gauss-Legendre nodes (weights folded in).
#[derive(Debug, Clone)]
struct Cell<T> {
    lo: T,
    hi: T,
    inner: T,
    // interpolation stencil: lambda_grid[start..start + len]
    start: usize,
    len: usize,
    gauss: [(T, Complex<T>); 4],
}

fn interpolate<T: Real>(nodes: &[T], values: &[Complex<T>], x: T) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..nodes.len() {
        let mut w = T::one();
        for m in 0..nodes.len() {
            if m != j {
                w = w * (x - nodes[m]) / (nodes[j] - nodes[m]);
            }
        }
        acc = acc + values[j] * w;
    }
    acc
}

fn build_cells<T: Real>(grid: &[T], alpha: &[Complex<T>], branches: &[(usize, usize)]) -> Vec<Cell<T>> {
    let mut cells = Vec::new();
    for &(a, b) in branches {
        let nb = b - a;
        if nb < 2 {
            continue;
        }
        for i in 0..nb - 1 {
            let start = i.saturating_sub(1).min(nb.saturating_sub(4));
            let len = 4.min(nb);
            let stencil = &alpha[a + start..a + start + len];
            if stencil.iter().all(|z| z.norm_sqr() == T::zero()) {
                continue;
            }
            let nodes = &grid[a + start..a + start + len];
            let (lo, hi) = (grid[a + i], grid[a + i + 1]);
            let half = (hi - lo) * T::half();
            let mid = (lo + hi) * T::half();
            let gauss = std::array::from_fn(|k| {
                let l = mid + half * T::cst(GL4_X[k]);
                (l, interpolate(nodes, stencil, l) * (half * T::cst(GL4_W[k])))
            });
            cells.push(Cell {
                lo,
                hi,
                inner: lo.abs().min(hi.abs()),
                start: a + start,
                len,
                gauss,
            });
        }
    }
    cells
}

fn lagrange_at<T: Real>(nodes: &[T], x: T) -> Vec<T> {
    (0..nodes.len())
        .map(|j| {
            let mut w = T::one();
            for m in 0..nodes.len() {
                if m != j {
                    w = w * (x - nodes[m]) / (nodes[j] - nodes[m]);
                }
            }
            w
        })
        .collect()
}

/// Simpson weights for non-uniform nodes; an odd interval count closes with
/// the quadratic through the last three nodes.
fn branch_weights<T: Real>(x: &[T]) -> Vec<T> {
    let n = x.len();
    let mut w = vec![T::zero(); n];
    if n < 2 {
        return w;
    }
    if n == 2 {
        let h = (x[1] - x[0]) * T::half();
        return vec![h, h];
    }
    let six = T::cst(6.0);
    let mut i = 0;
    while i + 2 < n {
        let (h0, h1) = (x[i + 1] - x[i], x[i + 2] - x[i + 1]);
        let s = h0 + h1;
        w[i] = w[i] + s / six * (T::two() - h1 / h0);
        w[i + 1] = w[i + 1] + s * s * s / (six * h0 * h1);
        w[i + 2] = w[i + 2] + s / six * (T::two() - h0 / h1);
        i += 2;
    }
    if i == n - 2 {
        let nodes = [x[n - 3], x[n - 2], x[n - 1]];
        let (a, b) = (x[n - 2], x[n - 1]);
        for &z in &[-0.577_350_269_189_625_8, 0.577_350_269_189_625_8] {
            let p = (a + b) * T::half() + (b - a) * T::half() * T::cst(z);
            for (k, l) in lagrange_at(&nodes, p).into_iter().enumerate() {
                w[n - 3 + k] = w[n - 3 + k] + l * (b - a) * T::half();
            }
        }
    }
    w
}

impl<T: Real> WavePacket<T> {
    pub fn new(lambda_grid: Vec<T>, alpha: Vec<Complex<T>>, parity: Parity) -> Result<Self> {
        let n = lambda_grid.len();
        if n < 2 || alpha.len() != n {
            return Err(Error::InvalidData(format!("packet needs matching grid and amplitude arrays (got {n} and {})", alpha.len())));
        }
        if lambda_grid.iter().any(|l| !l.is_finite() || *l == T::zero()) || alpha.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidData("packet grid must avoid zero and all samples must be finite".into()));
        }
        if lambda_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidData("packet grid must be strictly increasing".into()));
        }
        let split = lambda_grid.partition_point(|&l| l < T::zero());
        let branches: Vec<(usize, usize)> = [(0, split), (split, n)].into_iter().filter(|(a, b)| b > a).collect();
        let mut weights = vec![T::zero(); n];
        for &(a, b) in &branches {
            weights[a..b].copy_from_slice(&branch_weights(&lambda_grid[a..b]));
        }
        if let Some(sign) = parity.sign() {
            let scale = alpha.iter().fold(T::zero(), |m, a| m.max(a.norm()));
            for i in 0..n {
                let j = n - 1 - i;
                let grid_ok = (lambda_grid[i] + lambda_grid[j]).abs() <= T::cst(1e-12) * lambda_grid[i].abs().max(T::one());
                if !grid_ok || (alpha[i] - alpha[j] * T::cst(sign)).norm() > T::cst(1e-12) * scale.max(T::min_positive_value()) {
                    return Err(Error::InvalidData(format!("parity {parity:?} needs a mirrored grid with alpha(-lambda) = {sign} alpha(lambda)")));
                }
            }
        }
        let cells = build_cells(&lambda_grid, &alpha, &branches);
        let packet = Self {
            lambda_grid,
            alpha,
            parity,
            weights,
            cells,
        };
        if !packet.energy().is_finite() {
            return Err(Error::InvalidData("packet energy is not finite".into()));
        }
        Ok(packet)
    }

    /// Samples `alpha` on `n` uniform points of `[lo, hi]` (one branch, `0 < lo`
    /// or `hi < 0`); a parity mirrors the branch to negative `lambda`.
    pub fn from_fn(alpha: impl Fn(T) -> Complex<T>, lo: T, hi: T, n: usize, parity: Parity) -> Result<Self> {
        if !(lo < hi) || (lo <= T::zero() && hi >= T::zero()) || n < 2 {
            return Err(Error::Domain(format!("packet branch [{lo}, {hi}] must have one sign and n >= 2")));
        }
        let h = (hi - lo) / T::from_count(n - 1);
        let branch: Vec<T> = (0..n).map(|i| if i == n - 1 { hi } else { lo + h * T::from_count(i) }).collect();
        let grid = match parity {
            Parity::Even | Parity::Odd => {
                let pos: Vec<T> = branch.iter().map(|l| l.abs()).collect();
                let mut g: Vec<T> = pos.iter().rev().map(|&l| -l).collect();
                let mut p = pos;
                p.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
                g.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
                g.extend(p);
                g
            }
            Parity::None => branch,
        };
        let values = match parity.sign() {
            Some(sign) => grid.iter().map(|&l| if l < T::zero() { alpha(-l) * T::cst(sign) } else { alpha(l) }).collect(),
            None => grid.iter().map(|&l| alpha(l)).collect(),
        };
        Self::new(grid, values, parity)
    }

    /// Gaussian bump `exp(-(lambda - center)^2 / (2 sigma^2))` on
    /// `center +- 8 sigma`, clipped to `|lambda| >= DEFAULT_LAMBDA_MIN`.
    pub fn gaussian(center: T, sigma: T, n: usize, parity: Parity) -> Result<Self> {
        if !(center > T::zero()) || !(sigma > T::zero()) {
            return Err(Error::Domain("gaussian packet needs center > 0 and sigma > 0".into()));
        }
        let lo = (center - sigma * T::cst(8.0)).max(T::cst(DEFAULT_LAMBDA_MIN));
        let hi = center + sigma * T::cst(8.0);
        let two_s2 = T::two() * sigma * sigma;
        Self::from_fn(|l| Complex::new((-(l - center) * (l - center) / two_s2).exp(), T::zero()), lo, hi, n, parity)
    }

    pub fn zero(parity: Parity) -> Self {
        let one = T::one();
        let grid = vec![-(one + one), -one, one, one + one];
        Self::new(grid, vec![Complex::new(T::zero(), T::zero()); 4], parity).expect("valid zero packet")
    }

    pub fn lambda_grid(&self) -> &[T] {
        &self.lambda_grid
    }

    pub fn alpha(&self) -> &[Complex<T>] {
        &self.alpha
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Quadrature of `w(lambda) |alpha|^2` over both branches.
    pub fn weighted_norm(&self, w: impl Fn(T) -> T) -> T {
        self.lambda_grid.iter().zip(&self.alpha).zip(&self.weights).map(|((&l, a), &q)| q * w(l) * a.norm_sqr()).sum()
    }

    /// `E = int (1 + lambda^2) |alpha|^2`.
    pub fn energy(&self) -> T {
        self.weighted_norm(|l| T::one() + l * l)
    }

    /// `P = int (lambda^2 - 1) |alpha|^2`.
    pub fn momentum(&self) -> T {
        self.weighted_norm(|l| l * l - T::one())
    }

    pub fn energy_momentum(&self) -> EnergyMomentum<T> {
        EnergyMomentum::new(self.energy(), self.momentum())
    }

    /// `int e^{i(lambda u - v/lambda)} alpha(lambda) m_j(lambda) dlambda` for
    /// each multiplier `m_j`.
    ///
    /// Each grid cell is split into Gauss-Legendre panels short enough that
    /// the phase advances by at most half a radian per panel; `alpha` is
    /// evaluated between nodes by cubic interpolation within its branch.
    pub fn integrate_modes<const N: usize>(&self, u: T, v: T, m: impl Fn(T) -> [Complex<T>; N]) -> [Complex<T>; N] {
        let mut acc = [Complex::new(T::zero(), T::zero()); N];
        let mut add = |l: T, weighted_alpha: Complex<T>| {
            let theta = l * u - v / l;
            let e = Complex::new(theta.cos(), theta.sin()) * weighted_alpha;
            let mj = m(l);
            for j in 0..N {
                acc[j] = acc[j] + e * mj[j];
            }
        };
        for cell in &self.cells {
            let slope = u.abs() + v.abs() / (cell.inner * cell.inner);
            let phase = slope * (cell.hi - cell.lo);
            let panels = (phase / T::cst(MAX_PANEL_PHASE)).ceil().to_usize().unwrap_or(1).max(1);
            if panels == 1 {
                for &(l, wa) in &cell.gauss {
                    add(l, wa);
                }
                continue;
            }
            let nodes = &self.lambda_grid[cell.start..cell.start + cell.len];
            let alpha = &self.alpha[cell.start..cell.start + cell.len];
            let h = (cell.hi - cell.lo) / T::from_count(panels);
            for p in 0..panels {
                let c = cell.lo + h * (T::from_count(p) + T::half());
                for k in 0..4 {
                    let l = c + h * T::half() * T::cst(GL4_X[k]);
                    add(l, interpolate(nodes, alpha, l) * (h * T::half() * T::cst(GL4_W[k])));
                }
            }
        }
        acc
    }

    /// `phi(t, x)`.
    pub fn synthesize_phi(&self, t: T, x: T) -> Complex<T> {
        let (u, v) = ((x - t) * T::half(), (x + t) * T::half());
        self.integrate_modes(u, v, |_| [Complex::new(T::one(), T::zero())])[0]
    }

    /// `phi`, `phi_t` and `phi_x` at `(t, x)`.
    pub fn field(&self, t: T, x: T) -> PacketField<T> {
        let (u, v) = ((x - t) * T::half(), (x + t) * T::half());
        let [phi, phi_t, phi_x] = self.integrate_modes(u, v, |l| {
            let (omega, mu) = ((l + l.recip()) * T::half(), (l - l.recip()) * T::half());
            [Complex::new(T::one(), T::zero()), Complex::new(T::zero(), -omega), Complex::new(T::zero(), mu)]
        });
        PacketField { phi, phi_t, phi_x }
    }

    /// The boosted packet `Lambda alpha(Lambda lambda)`, `Lambda = e^xi`.
    pub fn lorentz_boost(&self, xi: T) -> Self {
        self.rescaled(xi, xi.exp())
    }

    fn rescaled(&self, xi: T, factor: T) -> Self {
        let lam = xi.exp();
        let grid = self.lambda_grid.iter().map(|&l| l / lam).collect();
        let alpha = self.alpha.iter().map(|&a| a * factor).collect();
        Self::new(grid, alpha, self.parity).expect("rescaling preserves validity")
    }

    /// Packet `beta = alpha / (-i lambda)` of the Dirac partner `psi`, with
    /// `psi_u = -phi` and `phi_v = -psi`.
    pub fn dirac_partner(&self) -> Result<Self> {
        let cut = T::cst(PARTNER_LAMBDA_MIN);
        if let Some((l, _)) = self.lambda_grid.iter().zip(&self.alpha).find(|(l, a)| l.abs() < cut && a.norm_sqr() > T::zero()) {
            return Err(Error::Domain(format!("amplitude at lambda = {l} makes int lambda^-2 |alpha|^2 too large for the Dirac partner")));
        }
        let beta = self.lambda_grid.iter().zip(&self.alpha).map(|(&l, &a)| a * Complex::new(T::zero(), l.recip())).collect();
        let parity = match self.parity {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::None => Parity::None,
        };
        Self::new(self.lambda_grid.clone(), beta, parity)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = PacketFile {
            lambda_grid: self.lambda_grid.iter().map(|l| l.as_f64()).collect(),
            alpha_re: self.alpha.iter().map(|a| a.re.as_f64()).collect(),
            alpha_im: self.alpha.iter().map(|a| a.im.as_f64()).collect(),
            parity: self.parity,
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }
}

impl WavePacket<f64> {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PacketFile = serde_json::from_str(text)?;
        if file.alpha_re.len() != file.alpha_im.len() {
            return Err(Error::InvalidData("alpha_re and alpha_im lengths differ".into()));
        }
        let alpha = file.alpha_re.iter().zip(&file.alpha_im).map(|(&r, &i)| Complex::new(r, i)).collect();
        Self::new(file.lambda_grid, alpha, file.parity)
    }
}

/// Spinor boost of a Dirac pair: `phi -> e^{-xi/2} phi(e^-xi u, e^xi v)`,
/// `psi -> e^{xi/2} psi(e^-xi u, e^xi v)`, which keeps the first-order system.
pub fn spinor_boost<T: Real>(phi: &WavePacket<T>, psi: &WavePacket<T>, xi: T) -> (WavePacket<T>, WavePacket<T>) {
    (phi.rescaled(xi, (xi * T::half()).exp()), psi.rescaled(xi, (xi * T::cst(1.5)).exp()))
}
