//! Bessel functions of the first kind, orders zero and one.
//!
//! Below `x = 8` both functions are summed from their power series. Above,
//! the Hankel amplitude/phase form
//! `J(x) = sqrt(2/(pi x)) (P(x) cos(x - phi) - Q(x) sin(x - phi))`
//! is used with rational approximations of `P` and `Q`: the Cephes `j0`
//! coefficients for order zero and the FreeBSD msun `pone`/`qone` coefficients
//! (Copyright (C) 1993 Sun Microsystems, freely distributable) for order one.

use crate::error::{Error, Result};
use crate::real::Real;

/// Switch point between the power series and the amplitude/phase form.
pub const SERIES_LIMIT: f64 = 8.0;

/// `J0(x)` for finite `x` (even in `x`).
pub fn bessel_j0<T: Real>(x: T) -> Result<T> {
    check_finite(x)?;
    Ok(j0_unchecked(x))
}

/// `J1(x)` for finite `x` (odd in `x`).
pub fn bessel_j1<T: Real>(x: T) -> Result<T> {
    check_finite(x)?;
    Ok(j1_unchecked(x))
}

/// `J1(x)/x`, equal to 1/2 at the removable singularity `x = 0`.
pub fn bessel_j1_over_x<T: Real>(x: T) -> Result<T> {
    check_finite(x)?;
    Ok(j1_over_x_unchecked(x))
}

fn check_finite<T: Real>(x: T) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Bessel function argument {x} is not finite")))
    }
}

/// `J0` without the finiteness check, for quadrature inner loops.
#[inline]
pub fn j0_unchecked<T: Real>(x: T) -> T {
    let ax = x.abs();
    if ax < T::cst(SERIES_LIMIT) {
        j0_series(ax)
    } else {
        j0_asymptotic(ax)
    }
}

#[inline]
pub fn j1_unchecked<T: Real>(x: T) -> T {
    let ax = x.abs();
    let v = if ax < T::cst(SERIES_LIMIT) {
        ax * j1_over_x_series(ax)
    } else {
        j1_asymptotic(ax)
    };
    if x < T::zero() {
        -v
    } else {
        v
    }
}

#[inline]
pub fn j1_over_x_unchecked<T: Real>(x: T) -> T {
    let ax = x.abs();
    if ax < T::cst(SERIES_LIMIT) {
        j1_over_x_series(ax)
    } else {
        j1_asymptotic(ax) / ax
    }
}

fn j0_series<T: Real>(x: T) -> T {
    let q = -(x * x) / T::cst(4.0);
    let mut term = T::one();
    let mut sum = T::one();
    let eps = T::epsilon() * T::cst(1e-3);
    for k in 1..60 {
        let kf = T::from_count(k);
        term = term * q / (kf * kf);
        sum = sum + term;
        if term.abs() < eps {
            break;
        }
    }
    sum
}

fn j1_over_x_series<T: Real>(x: T) -> T {
    let q = -(x * x) / T::cst(4.0);
    let mut term = T::half();
    let mut sum = term;
    let eps = T::epsilon() * T::cst(1e-3);
    for k in 1..60 {
        let kf = T::from_count(k);
        term = term * q / (kf * (kf + T::one()));
        sum = sum + term;
        if term.abs() < eps {
            break;
        }
    }
    sum
}

// Cephes j0.c, x > 5: P = PP(q)/PQ(q), Q = QP(q)/QQ(q), q = 25/x^2.
const J0_PP: [f64; 7] = [
    7.969_367_292_973_471e-4,
    8.283_523_921_074_408e-2,
    1.239_533_716_464_143,
    5.447_250_030_587_687,
    8.747_165_001_998_17,
    5.303_240_382_353_949,
    1.0,
];
const J0_PQ: [f64; 7] = [
    9.244_088_105_588_637e-4,
    8.562_884_743_544_745e-2,
    1.253_527_439_010_589_5,
    5.470_977_403_304_171,
    8.761_908_832_370_695,
    5.306_052_882_353_947,
    1.0,
];
const J0_QP: [f64; 8] = [
    -1.136_638_388_984_691_6e-2,
    -1.282_527_186_705_093_1,
    -1.955_395_442_577_359_7e1,
    -9.320_601_521_237_683e1,
    -1.776_811_679_804_880_6e2,
    -1.470_775_051_549_511_8e2,
    -5.141_053_267_665_993e1,
    -6.050_143_506_007_285,
];
// Leading coefficient 1 is implicit.
const J0_QQ: [f64; 7] = [
    6.431_782_561_181_78e1,
    8.564_300_259_769_806e2,
    3.882_401_836_054_016_3e3,
    7.240_467_741_956_525e3,
    5.930_727_011_873_169e3,
    2.062_093_316_603_278_3e3,
    2.420_057_402_402_914e2,
];

// msun e_j1.c, x >= 8.
const J1_PR8: [f64; 6] = [
    0.0,
    1.171_874_999_999_886_5e-1,
    1.323_948_065_930_735_8e1,
    4.120_518_543_073_785_6e2,
    3.874_745_389_139_605_3e3,
    7.914_479_540_318_917e3,
];
const J1_PS8: [f64; 5] = [
    1.142_073_703_756_784_1e2,
    3.650_930_834_208_534_6e3,
    3.695_620_602_690_334_6e4,
    9.760_279_359_349_508e4,
    3.080_427_206_278_888e4,
];
const J1_QR8: [f64; 6] = [
    0.0,
    -1.025_390_624_999_927_1e-1,
    -1.627_175_345_445_9e1,
    -7.596_017_225_139_501e2,
    -1.184_980_667_024_295_9e4,
    -4.843_851_242_857_503_5e4,
];
const J1_QS8: [f64; 6] = [
    1.613_953_697_007_229e2,
    7.825_385_999_233_485e3,
    1.338_753_362_872_495_8e5,
    7.196_577_236_832_409e5,
    6.666_012_326_177_764e5,
    -2.944_902_643_038_346_4e5,
];

/// Horner evaluation, coefficients ordered from the highest degree.
#[inline]
fn polevl<T: Real>(x: T, coef: &[f64]) -> T {
    coef.iter().fold(T::zero(), |acc, &c| acc * x + T::cst(c))
}

/// Horner evaluation with an implicit leading coefficient of one.
#[inline]
fn p1evl<T: Real>(x: T, coef: &[f64]) -> T {
    coef.iter().fold(T::one(), |acc, &c| acc * x + T::cst(c))
}

/// Horner evaluation, coefficients ordered from the constant term.
#[inline]
fn horner_ascending<T: Real>(z: T, coef: &[f64]) -> T {
    coef.iter().rev().fold(T::zero(), |acc, &c| acc * z + T::cst(c))
}

fn j0_asymptotic<T: Real>(x: T) -> T {
    let w = T::cst(5.0) / x;
    let q = w * w;
    let p = polevl(q, &J0_PP) / polevl(q, &J0_PQ);
    let qq = polevl(q, &J0_QP) / p1evl(q, &J0_QQ);
    // cos(x - pi/4) = (cos x + sin x)/sqrt 2, sin(x - pi/4) = (sin x - cos x)/sqrt 2
    let (s, c) = x.sin_cos();
    let amp = (T::FRAC_2_PI() / x).sqrt() * T::FRAC_1_SQRT_2();
    amp * (p * (c + s) - w * qq * (s - c))
}

fn j1_asymptotic<T: Real>(x: T) -> T {
    let z = T::one() / (x * x);
    let r = horner_ascending(z, &J1_PR8);
    let s = T::one() + z * horner_ascending(z, &J1_PS8);
    let p = T::one() + r / s;
    let r = horner_ascending(z, &J1_QR8);
    let s = T::one() + z * horner_ascending(z, &J1_QS8);
    let q = (T::cst(0.375) + r / s) / x;
    // cos(x - 3pi/4) = (sin x - cos x)/sqrt 2, sin(x - 3pi/4) = -(sin x + cos x)/sqrt 2
    let (sn, cs) = x.sin_cos();
    let cc = sn - cs;
    let ss = -sn - cs;
    (p * cc - q * ss) / (T::PI() * x).sqrt()
}
