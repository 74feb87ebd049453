//! Integrals over `[a, inf)` truncated where a declared decay law makes the
//! remaining tail negligible.

use serde::{Deserialize, Serialize};

use super::adaptive::{integrate_with, QuadOptions};
use super::{QuadValue, QuadratureResult};
use crate::error::{Error, Result};
use crate::real::Real;

/// Declared decay of an integrand (or sampled function) at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayHint {
    /// `|f(y)| <= C e^{-rate y}`.
    Exponential { rate: f64 },
    /// `|f(y)| <= C y^{-power}`, `power > 1`.
    Algebraic { power: f64 },
    /// `f(y) = 0` for `y > support_end`.
    Compact { support_end: f64 },
}

impl DecayHint {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DecayHint::Exponential { rate } => rate.is_finite() && rate > 0.0,
            DecayHint::Algebraic { power } => power.is_finite() && power > 1.0,
            DecayHint::Compact { support_end } => support_end.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("decay hint parameters out of range: {self:?}")))
        }
    }
}

const SAMPLES_PER_WINDOW: usize = 32;
const MAX_WINDOWS: usize = 200_000;

fn window_max<T: Real, V: QuadValue<T>, F: Fn(T) -> V + ?Sized>(f: &F, s: T, e: T, weight: impl Fn(T) -> T) -> T {
    (0..=SAMPLES_PER_WINDOW)
        .map(|i| {
            let y = s + (e - s) * T::from_count(i) / T::from_count(SAMPLES_PER_WINDOW);
            f(y).magnitude() * weight(y)
        })
        .fold(T::zero(), |m, v| if v > m || v.is_nan() { v } else { m })
}

/// Truncation point `T >= a` beyond which the hinted tail of `f` is below
/// `tail_tol`, together with the window boundaries passed on the way.
///
/// Samples past `T` are checked against the hint; a sample exceeding ten
/// times the predicted envelope is reported as [`Error::Hint`].
pub fn tail_cutoff<T, V, F>(f: &F, a: T, tail_tol: T, hint: DecayHint) -> Result<(T, Vec<T>)>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + ?Sized,
{
    hint.validate()?;
    match hint {
        DecayHint::Compact { support_end } => {
            let end = T::cst(support_end).max(a);
            let scale = T::one() + end.abs();
            for frac in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0] {
                let y = end + scale * T::cst(frac);
                let m = f(y).magnitude();
                if !(m <= T::cst(10.0) * tail_tol) {
                    return Err(Error::Hint(format!("f({y}) = {m:e} beyond declared support end {support_end}")));
                }
            }
            Ok((end, vec![a, end]))
        }
        DecayHint::Exponential { rate } => {
            let rate_t = T::cst(rate);
            let len = T::one() / rate_t;
            // geometric envelope: sum of e^{-j} over windows
            let factor = T::cst(1.582);
            let mut s = a;
            let mut quiet = 0;
            let mut marks = vec![a];
            let mut last_max = T::zero();
            for n in 1..=MAX_WINDOWS {
                let e = s + len;
                last_max = window_max(f, s, e, |_| T::one());
                if !last_max.is_finite() {
                    return Err(Error::Domain(format!("integrand not finite on [{s}, {e}]")));
                }
                if factor * last_max / rate_t < tail_tol {
                    quiet += 1;
                } else {
                    quiet = 0;
                }
                s = e;
                marks.push(s);
                if quiet >= 3 && n >= 4 {
                    break;
                }
                if n == MAX_WINDOWS {
                    return Err(Error::Hint(format!(
                        "no exponential decay at rate {rate} observed up to y = {s}"
                    )));
                }
            }
            let floor = tail_tol * rate_t * T::cst(1e-8);
            for j in 1..=6 {
                let y = s + len * T::from_count(j);
                let predicted = last_max * (-T::from_count(j - 1)).exp();
                let m = f(y).magnitude();
                if !(m <= T::cst(10.0) * predicted.max(floor)) {
                    return Err(Error::Hint(format!(
                        "f({y}) = {m:e} exceeds the exponential envelope (rate {rate}) by more than 10x"
                    )));
                }
            }
            Ok((s, marks))
        }
        DecayHint::Algebraic { power } => {
            let p = T::cst(power);
            let mut s = a.max(T::one());
            let mut marks = vec![a];
            if s > a {
                marks.push(s);
            }
            let mut quiet = 0;
            let mut c_est;
            loop {
                let e = s * T::two();
                c_est = window_max(f, s, e, |y| y.powf(p));
                if !c_est.is_finite() {
                    return Err(Error::Domain(format!("integrand not finite on [{s}, {e}]")));
                }
                let tail = c_est * e.powf(T::one() - p) / (p - T::one());
                if tail < tail_tol {
                    quiet += 1;
                } else {
                    quiet = 0;
                }
                s = e;
                marks.push(s);
                if quiet >= 2 {
                    break;
                }
                if s > T::cst(1e15) {
                    return Err(Error::Hint(format!(
                        "algebraic tail (power {power}) not below {tail_tol:e} before y = 1e15"
                    )));
                }
            }
            let floor = tail_tol * (p - T::one()) * s.powf(p - T::one());
            for mult in [1.5, 2.0, 4.0, 8.0] {
                let y = s * T::cst(mult);
                let m = f(y).magnitude() * y.powf(p);
                if !(m <= T::cst(10.0) * c_est.max(floor)) {
                    return Err(Error::Hint(format!(
                        "f({y}) decays slower than y^-{power}"
                    )));
                }
            }
            Ok((s, marks))
        }
    }
}

/// Integral of `f` over `[a, inf)` under the declared decay `hint`.
pub fn integrate_semi_infinite<T, V, F>(f: F, a: T, tol: T, hint: DecayHint) -> Result<QuadratureResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    if !(tol > T::zero()) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    if !a.is_finite() {
        return Err(Error::Domain("lower limit must be finite".into()));
    }
    let (_, marks) = tail_cutoff(&f, a, tol * T::half(), hint)?;
    let mut r = integrate_with(&f, &thin(marks, 4096), QuadOptions::absolute(tol * T::half()))?;
    r.error_estimate = r.error_estimate + tol * T::half();
    Ok(r)
}

/// Keeps at most `max` breakpoints (always including both ends).
pub(crate) fn thin<T: Copy>(marks: Vec<T>, max: usize) -> Vec<T> {
    if marks.len() <= max {
        return marks;
    }
    let stride = marks.len().div_ceil(max);
    let last = *marks.last().expect("nonempty");
    let mut out: Vec<T> = marks.into_iter().step_by(stride).collect();
    out.push(last);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_j0;

    #[test]
    fn exponentials() {
        let r = integrate_semi_infinite(|y: f64| (-y).exp(), 0.0, 1e-10, DecayHint::Exponential { rate: 1.0 }).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        let r = integrate_semi_infinite(|y: f64| (-2.0 * y).exp(), 0.0, 1e-10, DecayHint::Exponential { rate: 2.0 }).unwrap();
        assert!((r.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn fixed_point_at_one() {
        let f = |y: f64| bessel_j0(2.0 * y.sqrt()).unwrap() * (-y).exp();
        let r = integrate_semi_infinite(f, 0.0, 1e-10, DecayHint::Exponential { rate: 1.0 }).unwrap();
        assert!((r.value - (-1.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn algebraic_and_compact() {
        let r = integrate_semi_infinite(|y: f64| 1.0 / (1.0 + y).powi(3), 0.0, 1e-9, DecayHint::Algebraic { power: 3.0 }).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
        let r = integrate_semi_infinite(
            |y: f64| if y < 2.0 { y } else { 0.0 },
            0.0,
            1e-12,
            DecayHint::Compact { support_end: 2.0 },
        )
        .unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_hints_rejected() {
        // decays at rate 1/4 while the hint claims rate 1
        let r = integrate_semi_infinite(|y: f64| (-0.25 * y).exp(), 0.0, 1e-8, DecayHint::Exponential { rate: 1.0 });
        assert!(matches!(r, Err(Error::Hint(_))), "{r:?}");
        let r = integrate_semi_infinite(|y: f64| (-y).exp(), 0.0, 1e-8, DecayHint::Compact { support_end: 1.0 });
        assert!(matches!(r, Err(Error::Hint(_))));
        let r = integrate_semi_infinite(|y: f64| 1.0 / (1.0 + y), 0.0, 1e-8, DecayHint::Algebraic { power: 3.0 });
        assert!(r.is_err());
    }

    #[test]
    fn invalid_hint_parameters() {
        assert!(DecayHint::Exponential { rate: 0.0 }.validate().is_err());
        assert!(DecayHint::Algebraic { power: 1.0 }.validate().is_err());
        assert!(DecayHint::Compact { support_end: f64::NAN }.validate().is_err());
    }

    #[test]
    fn hint_json_shape() {
        let s = serde_json::to_string(&DecayHint::Exponential { rate: 1.5 }).unwrap();
        assert_eq!(s, r#"{"kind":"exponential","rate":1.5}"#);
    }
}
