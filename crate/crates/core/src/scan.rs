//! Dissociation scans and the curvature/magic peak analysis.

use std::fmt;

use crate::error::{Error, Result};
use crate::fci::fci_ground_state;
use crate::integrals::{assemble_integrals, BasisName, BasisSet};
use crate::magic::{filtered_sre, mana, sre};
use crate::majorana::wigner_spectrum_with;
use crate::par::Execution;
use crate::scf::atomic_asymptote;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub basis: BasisName,
    pub ell_min: f64,
    pub ell_max: f64,
    pub step: f64,
}

impl ScanConfig {
    pub fn new(basis: BasisName, ell_min: f64, ell_max: f64, step: f64) -> Result<Self> {
        if !(ell_min.is_finite() && ell_max.is_finite() && step.is_finite()) {
            return Err(Error::Config("scan bounds must be finite".into()));
        }
        if ell_min <= 0.0 {
            return Err(Error::Config(format!("ell_min must be positive, got {ell_min}")));
        }
        if ell_min >= ell_max {
            return Err(Error::Config(format!("ell_min {ell_min} must be below ell_max {ell_max}")));
        }
        if step <= 0.0 {
            return Err(Error::Config(format!("step must be positive, got {step}")));
        }
        Ok(Self {
            basis,
            ell_min,
            ell_max,
            step,
        })
    }

    /// Uniform grid ell_min + i * step, up to ell_max.
    pub fn grid(&self) -> Vec<f64> {
        let count = ((self.ell_max - self.ell_min) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.ell_min + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    /// Bond length, angstrom.
    pub ell: f64,
    pub e_total: f64,
    pub e_binding: f64,
    pub theta: f64,
    pub two_det_weight: f64,
    pub s2: f64,
    pub fs2: f64,
    pub mana: f64,
    /// Sum of W(v)^2 over the spectrum.
    pub purity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSeries {
    pub basis: BasisName,
    /// Energy of one isolated hydrogen atom in the basis.
    pub e_h: f64,
    pub step: f64,
    pub n_modes: usize,
    pub points: Vec<ScanPoint>,
}

impl ScanSeries {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ells(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.ell).collect()
    }
}

/// Full pipeline at one geometry.
pub fn evaluate_point(ell: f64, basis: &BasisSet, e_h: f64, exec: Execution) -> Result<(ScanPoint, usize)> {
    let ints = assemble_integrals(ell, basis)?;
    let (_, gs) = fci_ground_state(&ints)?;
    let w = wigner_spectrum_with(&gs.fock_vector, exec)?;
    Ok((
        ScanPoint {
            ell,
            e_total: gs.energy,
            e_binding: gs.energy - 2.0 * e_h,
            theta: gs.theta,
            two_det_weight: gs.two_det_weight,
            s2: sre(&w, 2.0)?,
            fs2: filtered_sre(&w, 2.0)?,
            mana: mana(&w),
            purity: w.purity_sum(),
        },
        w.n_modes(),
    ))
}

pub fn run_scan(config: &ScanConfig) -> Result<ScanSeries> {
    run_scan_with(config, Execution::default())
}

/// Geometries are independent and evaluated under `exec`; the first failing
/// geometry (smallest ell) aborts the scan.
pub fn run_scan_with(config: &ScanConfig, exec: Execution) -> Result<ScanSeries> {
    let basis = BasisSet::builtin(config.basis);
    let e_h = atomic_asymptote(&basis)?;
    let grid = config.grid();
    let results = exec.map(grid.len(), |i| {
        evaluate_point(grid[i], &basis, e_h, Execution::Sequential).map_err(|e| Error::ScanPoint {
            ell: grid[i],
            source: Box::new(e),
        })
    });
    let mut points = Vec::with_capacity(grid.len());
    let mut n_modes = 0;
    for r in results {
        let (p, n) = r?;
        points.push(p);
        n_modes = n;
    }
    Ok(ScanSeries {
        basis: config.basis,
        e_h,
        step: config.step,
        n_modes,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Proxy {
    S2,
    Fs2,
    Mana,
}

impl Proxy {
    pub const ALL: [Proxy; 3] = [Proxy::S2, Proxy::Fs2, Proxy::Mana];

    pub fn name(self) -> &'static str {
        match self {
            Proxy::S2 => "s2",
            Proxy::Fs2 => "fs2",
            Proxy::Mana => "mana",
        }
    }

    pub fn value(self, p: &ScanPoint) -> f64 {
        match self {
            Proxy::S2 => p.s2,
            Proxy::Fs2 => p.fs2,
            Proxy::Mana => p.mana,
        }
    }
}

impl fmt::Display for Proxy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A located maximum: grid index, parabolically refined position, and the
/// sampled value at the grid index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub ell: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureAnalysis {
    /// dE/dl, hartree per angstrom.
    pub d1: Vec<f64>,
    /// d2E/dl2, hartree per angstrom squared.
    pub d2: Vec<f64>,
    pub kappa: Vec<f64>,
    /// Curvature maximum on the concave (bond-breaking) branch, where E'' < 0.
    pub ell_star: Peak,
    /// Maximum of |E''| on the concave branch.
    pub max_abs_d2: Peak,
    /// Unrestricted interior maxima, dominated by the repulsive wall.
    pub kappa_global: Peak,
    pub max_abs_d2_global: Peak,
    pub ell_magic: Vec<(Proxy, Peak)>,
    pub n_points: usize,
}

impl CurvatureAnalysis {
    pub fn magic(&self, proxy: Proxy) -> Option<Peak> {
        self.ell_magic.iter().find(|(p, _)| *p == proxy).map(|(_, k)| *k)
    }
}

/// Points on each end whose derivatives use one-sided stencils.
pub const EDGE_POINTS: usize = 2;
pub const MIN_CURVATURE_POINTS: usize = 7;

/// Five-point finite differences: central in the interior, one-sided on the
/// two outermost points at each end.
pub fn five_point_derivatives(e: &[f64], h: f64) -> (Vec<f64>, Vec<f64>) {
    let n = e.len();
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    for i in 2..n - 2 {
        d1[i] = (-e[i + 2] + 8.0 * e[i + 1] - 8.0 * e[i - 1] + e[i - 2]) / (12.0 * h);
        d2[i] = (-e[i + 2] + 16.0 * e[i + 1] - 30.0 * e[i] + 16.0 * e[i - 1] - e[i - 2]) / (12.0 * h * h);
    }
    let forward = |f: &[f64]| {
        (
            (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h),
            (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) / (12.0 * h * h),
            (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h),
            (11.0 * f[0] - 20.0 * f[1] + 6.0 * f[2] + 4.0 * f[3] - f[4]) / (12.0 * h * h),
        )
    };
    let (a1, a2, b1, b2) = forward(&e[..5]);
    d1[0] = a1;
    d2[0] = a2;
    d1[1] = b1;
    d2[1] = b2;
    let tail: Vec<f64> = e[n - 5..].iter().rev().copied().collect();
    let (a1, a2, b1, b2) = forward(&tail);
    // Reversing the abscissa flips the sign of odd derivatives.
    d1[n - 1] = -a1;
    d2[n - 1] = a2;
    d1[n - 2] = -b1;
    d2[n - 2] = b2;
    (d1, d2)
}

fn refine(ells: &[f64], y: &[f64], i: usize) -> f64 {
    if i == 0 || i + 1 >= y.len() {
        return ells[i];
    }
    let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    if curvature >= 0.0 {
        return ells[i];
    }
    let h = ells[i + 1] - ells[i];
    let shift = (0.5 * (y0 - y2) / curvature).clamp(-0.5, 0.5);
    ells[i] + shift * h
}

/// Maximum over `candidates` (ascending), ties to the smaller index.
fn argmax(ells: &[f64], y: &[f64], candidates: impl Iterator<Item = usize>) -> Option<Peak> {
    let mut best: Option<usize> = None;
    for i in candidates {
        if best.is_none_or(|b| y[i] > y[b]) {
            best = Some(i);
        }
    }
    best.map(|index| Peak {
        index,
        ell: refine(ells, y, index),
        value: y[index],
    })
}

pub fn curvature_analysis(series: &ScanSeries) -> Result<CurvatureAnalysis> {
    let n = series.len();
    if n < MIN_CURVATURE_POINTS {
        return Err(Error::Contract(format!(
            "curvature analysis needs at least {MIN_CURVATURE_POINTS} points, got {n}"
        )));
    }
    let ells = series.ells();
    let h = series.step;
    for w in ells.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0) {
            return Err(Error::Contract("scan grid is not uniform".into()));
        }
    }
    let e: Vec<f64> = series.points.iter().map(|p| p.e_binding).collect();
    let (d1, d2) = five_point_derivatives(&e, h);
    let kappa: Vec<f64> = d1
        .iter()
        .zip(&d2)
        .map(|(a, b)| b.abs() / (1.0 + a * a).powf(1.5))
        .collect();
    let abs_d2: Vec<f64> = d2.iter().map(|x| x.abs()).collect();

    let interior = || EDGE_POINTS..n - EDGE_POINTS;
    let concave: Vec<usize> = interior().filter(|&i| d2[i] < 0.0).collect();
    let kappa_global = argmax(&ells, &kappa, interior()).expect("interior is non-empty");
    let max_abs_d2_global = argmax(&ells, &abs_d2, interior()).expect("interior is non-empty");
    let ell_star = argmax(&ells, &kappa, concave.iter().copied()).unwrap_or(kappa_global);
    let max_abs_d2 = argmax(&ells, &abs_d2, concave.iter().copied()).unwrap_or(max_abs_d2_global);

    let ell_magic = Proxy::ALL
        .iter()
        .map(|&proxy| {
            let y: Vec<f64> = series.points.iter().map(|p| proxy.value(p)).collect();
            (proxy, argmax(&ells, &y, 0..n).expect("series is non-empty"))
        })
        .collect();

    Ok(CurvatureAnalysis {
        d1,
        d2,
        kappa,
        ell_star,
        max_abs_d2,
        kappa_global,
        max_abs_d2_global,
        ell_magic,
        n_points: n,
    })
}

/// Mixing angle linearly interpolated at the refined S2 peak.
pub fn theta_at_peak(series: &ScanSeries, analysis: &CurvatureAnalysis) -> Result<f64> {
    let peak = analysis
        .magic(Proxy::S2)
        .ok_or_else(|| Error::Contract("analysis has no s2 peak".into()))?;
    let n = series.len();
    if peak.index == 0 || peak.index + 1 >= n {
        return Err(Error::Boundary(format!(
            "s2 maximum at grid end ell = {}",
            series.points[peak.index].ell
        )));
    }
    let pts = &series.points;
    let j = if peak.ell >= pts[peak.index].ell {
        peak.index
    } else {
        peak.index - 1
    };
    let (a, b) = (&pts[j], &pts[j + 1]);
    let t = (peak.ell - a.ell) / (b.ell - a.ell);
    Ok(a.theta + t * (b.theta - a.theta))
}
