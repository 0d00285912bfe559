//! Closed-form integrals over unit-normalized s-type Gaussian primitives.

use std::f64::consts::PI;

use nalgebra::Vector3;

use super::boys::boys_f0;
use crate::error::{Error, Result};

pub type Point = Vector3<f64>;

/// Normalization constant of exp(-a r^2).
pub fn norm_s(a: f64) -> f64 {
    (2.0 * a / PI).powf(0.75)
}

fn check(exponents: &[f64]) -> Result<()> {
    match exponents.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        Some(a) => Err(Error::Domain(format!(
            "Gaussian exponents must be finite and positive, got {a}"
        ))),
        None => Ok(()),
    }
}

struct Pair {
    p: f64,
    center: Point,
    /// exp(-mu |A-B|^2) including both normalization constants.
    prefactor: f64,
    mu_r2: f64,
}

impl Pair {
    fn new(a: f64, ca: &Point, b: f64, cb: &Point) -> Self {
        let p = a + b;
        let mu_r2 = a * b / p * (ca - cb).norm_squared();
        Pair {
            p,
            center: (ca * a + cb * b) / p,
            prefactor: norm_s(a) * norm_s(b) * (-mu_r2).exp(),
            mu_r2,
        }
    }
}

pub fn overlap_s(a: f64, ca: &Point, b: f64, cb: &Point) -> Result<f64> {
    check(&[a, b])?;
    let pair = Pair::new(a, ca, b, cb);
    Ok(pair.prefactor * (PI / pair.p).powf(1.5))
}

pub fn kinetic_s(a: f64, ca: &Point, b: f64, cb: &Point) -> Result<f64> {
    check(&[a, b])?;
    let pair = Pair::new(a, ca, b, cb);
    let mu = a * b / pair.p;
    Ok(pair.prefactor * (PI / pair.p).powf(1.5) * (3.0 * mu - 2.0 * mu * pair.mu_r2))
}

/// Attraction to a point charge `z` at `nucleus`; the sign is included.
pub fn nuclear_s(a: f64, ca: &Point, b: f64, cb: &Point, nucleus: &Point, z: f64) -> Result<f64> {
    check(&[a, b])?;
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::Domain(format!("nuclear charge must be positive, got {z}")));
    }
    let pair = Pair::new(a, ca, b, cb);
    let t = pair.p * (pair.center - nucleus).norm_squared();
    Ok(-z * pair.prefactor * 2.0 * PI / pair.p * boys_f0(t)?)
}

/// Electron repulsion (ab|cd), chemist ordering.
#[allow(clippy::too_many_arguments)]
pub fn eri_s(
    a: f64,
    ca: &Point,
    b: f64,
    cb: &Point,
    c: f64,
    cc: &Point,
    d: f64,
    cd: &Point,
) -> Result<f64> {
    check(&[a, b, c, d])?;
    let bra = Pair::new(a, ca, b, cb);
    let ket = Pair::new(c, cc, d, cd);
    let (p, q) = (bra.p, ket.p);
    let t = p * q / (p + q) * (bra.center - ket.center).norm_squared();
    Ok(bra.prefactor * ket.prefactor * 2.0 * PI.powf(2.5) / (p * q * (p + q).sqrt()) * boys_f0(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(z: f64) -> Point {
        Point::new(0.0, 0.0, z)
    }

    // Trapezoid on a wide uniform grid; spectrally accurate for smooth,
    // rapidly decaying integrands.
    fn line(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
        let h = (hi - lo) / n as f64;
        (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                w * f(lo + i as f64 * h)
            })
            .sum::<f64>()
            * h
    }

    fn gauss(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
        let x = (0.6f64).sqrt();
        let h = (hi - lo) / panels as f64;
        (0..panels)
            .map(|i| {
                let m = lo + (i as f64 + 0.5) * h;
                let r = 0.5 * h;
                r * (5.0 / 9.0 * f(m - r * x) + 8.0 / 9.0 * f(m) + 5.0 / 9.0 * f(m + r * x))
            })
            .sum()
    }

    fn g1(a: f64, c: f64, x: f64) -> f64 {
        (2.0 * a / PI).powf(0.25) * (-a * (x - c).powi(2)).exp()
    }

    fn dg1(a: f64, c: f64, x: f64) -> f64 {
        -2.0 * a * (x - c) * g1(a, c, x)
    }

    // 3D integrals over a product of separable Gaussians reduce to products of
    // 1D quadratures along each axis.
    fn overlap_oracle(a: f64, b: f64, r: f64) -> f64 {
        let axis = |ca: f64, cb: f64| line(|x| g1(a, ca, x) * g1(b, cb, x), -15.0, 15.0 + r, 6000);
        axis(0.0, 0.0).powi(2) * axis(0.0, r)
    }

    fn kinetic_oracle(a: f64, b: f64, r: f64) -> f64 {
        let s = |ca: f64, cb: f64| line(|x| g1(a, ca, x) * g1(b, cb, x), -15.0, 15.0 + r, 6000);
        let t = |ca: f64, cb: f64| line(|x| dg1(a, ca, x) * dg1(b, cb, x), -15.0, 15.0 + r, 6000);
        let (sx, sz) = (s(0.0, 0.0), s(0.0, r));
        let (tx, tz) = (t(0.0, 0.0), t(0.0, r));
        0.5 * (2.0 * tx * sx * sz + sx * sx * tz)
    }

    #[test]
    fn overlap_self_is_one_and_decays() {
        let o = at(0.0);
        assert!((overlap_s(0.7, &o, 0.7, &o).unwrap() - 1.0).abs() < 1e-14);
        let mut prev = 1.0;
        for k in 1..40 {
            let s = overlap_s(0.7, &o, 0.7, &at(0.25 * k as f64)).unwrap();
            assert!(s < prev && s >= 0.0);
            prev = s;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn overlap_matches_quadrature() {
        let s = overlap_s(1.0, &at(0.0), 1.0, &at(1.4)).unwrap();
        assert!((s - overlap_oracle(1.0, 1.0, 1.4)).abs() < 1e-10);
        let s = overlap_s(0.3, &at(0.0), 2.1, &at(0.8)).unwrap();
        assert!((s - overlap_oracle(0.3, 2.1, 0.8)).abs() < 1e-10);
    }

    #[test]
    fn kinetic_values() {
        let o = at(0.0);
        let t = kinetic_s(0.8, &o, 0.8, &o).unwrap();
        assert!((t - 1.2).abs() < 1e-13);
        assert!((t - kinetic_oracle(0.8, 0.8, 0.0)).abs() < 1e-10);
        let t = kinetic_s(0.5, &o, 1.5, &at(1.0)).unwrap();
        assert!((t - kinetic_oracle(0.5, 1.5, 1.0)).abs() < 1e-10);
        assert!(kinetic_s(0.5, &o, 0.5, &at(40.0)).unwrap().abs() < 1e-30);
    }

    #[test]
    fn symmetric_under_exchange() {
        let (ca, cb, cn) = (Point::new(0.1, -0.2, 0.3), Point::new(1.0, 0.4, -0.7), at(0.5));
        let pairs = [(0.4, 1.9), (3.4, 0.17)];
        for (a, b) in pairs {
            let s1 = overlap_s(a, &ca, b, &cb).unwrap();
            let s2 = overlap_s(b, &cb, a, &ca).unwrap();
            assert!((s1 - s2).abs() < 1e-15);
            let t1 = kinetic_s(a, &ca, b, &cb).unwrap();
            let t2 = kinetic_s(b, &cb, a, &ca).unwrap();
            assert!((t1 - t2).abs() < 1e-15);
            let v1 = nuclear_s(a, &ca, b, &cb, &cn, 1.0).unwrap();
            let v2 = nuclear_s(b, &cb, a, &ca, &cn, 1.0).unwrap();
            assert!((v1 - v2).abs() < 1e-15);
        }
    }

    #[test]
    fn nuclear_same_center_matches_radial_quadrature() {
        let a = 0.9;
        let o = at(0.0);
        let v = nuclear_s(a, &o, a, &o, &o, 1.0).unwrap();
        let n2 = norm_s(a).powi(2);
        let oracle = -gauss(|r| 4.0 * PI * r * n2 * (-2.0 * a * r * r).exp(), 0.0, 12.0, 2000);
        assert!(v < 0.0);
        assert!((v - oracle).abs() < 1e-10, "{v} vs {oracle}");
    }

    #[test]
    fn nuclear_far_field_is_point_charge() {
        let (a, b) = (0.6, 1.1);
        let (ca, cb) = (at(0.0), at(1.0));
        let c = Point::new(0.0, 30.0, 0.5);
        let v = nuclear_s(a, &ca, b, &cb, &c, 2.0).unwrap();
        let s = overlap_s(a, &ca, b, &cb).unwrap();
        let mid = (ca * a + cb * b) / (a + b);
        let limit = -2.0 * s / (mid - c).norm();
        assert!(((v - limit) / limit).abs() < 1e-6);
    }

    #[test]
    fn nuclear_always_negative() {
        for k in 0..20 {
            let c = Point::new(0.3 * k as f64, 0.0, -1.0);
            assert!(nuclear_s(0.2 + 0.1 * k as f64, &at(0.0), 1.0, &at(2.0), &c, 1.0).unwrap() < 0.0);
        }
    }

    #[test]
    fn eri_same_center_matches_shell_quadrature() {
        // Self-repulsion of the spherical density rho = g^2 (exponent 2a), by
        // the shell theorem: V(r) = Q(r)/r + integral_r^inf 4 pi s rho(s) ds.
        let a = 0.75;
        let o = at(0.0);
        let value = eri_s(a, &o, a, &o, a, &o, a, &o).unwrap();
        let n2 = norm_s(a).powi(2);
        let rho = |r: f64| n2 * (-2.0 * a * r * r).exp();
        let rmax = 9.0;
        let potential = |r: f64| {
            let enclosed = gauss(|s| 4.0 * PI * s * s * rho(s), 0.0, r, 60);
            let outside = gauss(|s| 4.0 * PI * s * rho(s), r, rmax, 200);
            enclosed / r + outside
        };
        let oracle = gauss(|r| 4.0 * PI * r * r * rho(r) * potential(r), 0.0, rmax, 400);
        assert!((value - oracle).abs() < 1e-8, "{value} vs {oracle}");
        assert!((value - 2.0 * (a / PI).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn eri_symmetries_and_coulomb_limit() {
        let (ca, cb, cc, cd) = (at(0.0), at(0.7), at(0.2), Point::new(0.3, 0.0, 1.0));
        let (a, b, c, d) = (0.4, 1.3, 0.9, 2.2);
        let base = eri_s(a, &ca, b, &cb, c, &cc, d, &cd).unwrap();
        for v in [
            eri_s(b, &cb, a, &ca, c, &cc, d, &cd).unwrap(),
            eri_s(a, &ca, b, &cb, d, &cd, c, &cc).unwrap(),
            eri_s(c, &cc, d, &cd, a, &ca, b, &cb).unwrap(),
        ] {
            assert!((v - base).abs() < 1e-14);
        }
        let far = 20.0;
        let (cc, cd) = (at(far), at(far + 0.5));
        let (ab, cdv) = (overlap_s(a, &ca, b, &cb).unwrap(), overlap_s(c, &cc, d, &cd).unwrap());
        let pq = ((ca * a + cb * b) / (a + b) - (cc * c + cd * d) / (c + d)).norm();
        let v = eri_s(a, &ca, b, &cb, c, &cc, d, &cd).unwrap();
        assert!(((v - ab * cdv / pq) / v).abs() < 1e-4);
    }

    #[test]
    fn rejects_nonpositive_exponents() {
        let o = at(0.0);
        assert!(overlap_s(0.0, &o, 1.0, &o).is_err());
        assert!(kinetic_s(1.0, &o, -2.0, &o).is_err());
        assert!(nuclear_s(1.0, &o, 1.0, &o, &o, 0.0).is_err());
        assert!(eri_s(1.0, &o, 1.0, &o, f64::NAN, &o, 1.0, &o).is_err());
    }
}
