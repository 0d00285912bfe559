//! Zeroth-order Boys function.

use crate::error::{Error, Result};

/// Below this argument the positive-term series is used; above it, the
/// error-function closed form.
pub const SERIES_CUTOFF: f64 = 12.0;

/// F0(t) = integral over u in [0, 1] of exp(-t u^2).
pub fn boys_f0(t: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::Domain(format!("boys_f0 requires finite t >= 0, got {t}")));
    }
    Ok(if t < SERIES_CUTOFF {
        series(t)
    } else {
        large_argument(t)
    })
}

/// F0(t) = exp(-t) * sum_k (2t)^k / (2k+1)!!, every term positive.
fn series(t: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0u32;
    loop {
        k += 1;
        term *= 2.0 * t / f64::from(2 * k + 1);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    (-t).exp() * sum
}

fn large_argument(t: f64) -> f64 {
    let x = t.sqrt();
    0.5 * (std::f64::consts::PI / t).sqrt() * (1.0 - erfc_cf(x))
}

/// Complementary error function by backward evaluation of the Laplace
/// continued fraction; accurate to machine precision for x >= 3.
fn erfc_cf(x: f64) -> f64 {
    const TERMS: u32 = 80;
    let mut tail = x;
    for k in (1..=TERMS).rev() {
        tail = x + 0.5 * f64::from(k) / tail;
    }
    (-x * x).exp() / (std::f64::consts::PI.sqrt() * tail)
}
