//! Positive zeros of `J0` and `J1`.
//!
//! The first [`TABLE_LEN`] zeros of each function are refined by Newton's
//! method from McMahon's expansion and cached; later zeros come straight from
//! McMahon's expansion, which is accurate to well below 1e-13 there.

use std::sync::OnceLock;

use super::bessel::{j0_unchecked, j1_unchecked};

pub const TABLE_LEN: usize = 200;

/// Bessel order whose zeros are requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroOrder {
    J0,
    J1,
}

fn mcmahon(order: ZeroOrder, k: usize) -> f64 {
    let (nu, mu) = match order {
        ZeroOrder::J0 => (0.0, 0.0),
        ZeroOrder::J1 => (1.0, 4.0),
    };
    let beta = (k as f64 + nu / 2.0 - 0.25) * std::f64::consts::PI;
    let b8 = 8.0 * beta;
    let b8_3 = b8 * b8 * b8;
    let b8_5 = b8_3 * b8 * b8;
    let b8_7 = b8_5 * b8 * b8;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8_3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8_5)
        - 64.0 * (mu - 1.0) * (6949.0 * mu * mu * mu - 153_855.0 * mu * mu + 1_585_743.0 * mu - 6_277_237.0)
            / (105.0 * b8_7)
}

fn newton(order: ZeroOrder, mut x: f64) -> f64 {
    for _ in 0..20 {
        let (f, df) = match order {
            ZeroOrder::J0 => (j0_unchecked(x), -j1_unchecked(x)),
            ZeroOrder::J1 => {
                let j1 = j1_unchecked(x);
                (j1, j0_unchecked(x) - j1 / x)
            }
        };
        let step = f / df;
        x -= step;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    x
}

fn table(order: ZeroOrder) -> &'static [f64] {
    static J0_ZEROS: OnceLock<Vec<f64>> = OnceLock::new();
    static J1_ZEROS: OnceLock<Vec<f64>> = OnceLock::new();
    let cell = match order {
        ZeroOrder::J0 => &J0_ZEROS,
        ZeroOrder::J1 => &J1_ZEROS,
    };
    cell.get_or_init(|| (1..=TABLE_LEN).map(|k| newton(order, mcmahon(order, k))).collect())
}

/// The `k`-th positive zero (`k >= 1`).
pub fn bessel_zero(order: ZeroOrder, k: usize) -> f64 {
    assert!(k >= 1, "zeros are numbered from 1");
    if k <= TABLE_LEN {
        table(order)[k - 1]
    } else {
        mcmahon(order, k)
    }
}

/// Index of the first zero strictly greater than `z`.
pub fn first_zero_above(order: ZeroOrder, z: f64) -> usize {
    let t = table(order);
    if z < t[TABLE_LEN - 1] {
        return t.partition_point(|&r| r <= z) + 1;
    }
    // zeros are spaced by about pi beyond the table
    let mut k = TABLE_LEN + ((z - t[TABLE_LEN - 1]) / std::f64::consts::PI).floor() as usize;
    while bessel_zero(order, k) <= z {
        k += 1;
    }
    while k > TABLE_LEN + 1 && bessel_zero(order, k - 1) > z {
        k -= 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros() {
        assert!((bessel_zero(ZeroOrder::J0, 1) - 2.404_825_557_695_773).abs() < 1e-13);
        assert!((bessel_zero(ZeroOrder::J0, 2) - 5.520_078_110_286_311).abs() < 1e-13);
        assert!((bessel_zero(ZeroOrder::J1, 1) - 3.831_705_970_207_512_4).abs() < 1e-13);
        assert!((bessel_zero(ZeroOrder::J1, 2) - 7.015_586_669_815_619).abs() < 1e-13);
    }

    #[test]
    fn table_seam_matches_asymptotics() {
        for order in [ZeroOrder::J0, ZeroOrder::J1] {
            let last = bessel_zero(order, TABLE_LEN);
            assert!((last - mcmahon(order, TABLE_LEN)).abs() < 1e-13);
            let f = match order {
                ZeroOrder::J0 => j0_unchecked(mcmahon(order, TABLE_LEN + 7)),
                ZeroOrder::J1 => j1_unchecked(mcmahon(order, TABLE_LEN + 7)),
            };
            assert!(f.abs() < 1e-14);
        }
    }

    #[test]
    fn zero_lookup() {
        assert_eq!(first_zero_above(ZeroOrder::J0, 0.0), 1);
        assert_eq!(first_zero_above(ZeroOrder::J0, 2.5), 2);
        let z = bessel_zero(ZeroOrder::J1, 350) + 0.1;
        assert_eq!(first_zero_above(ZeroOrder::J1, z), 351);
    }
}
