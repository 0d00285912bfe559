//! Full configuration interaction in the one-alpha, one-beta electron sector.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::integrals::IntegralSet;
use crate::linalg::jacobi_eigen;
use crate::majorana::FockVector;
use crate::mo::{ao_to_mo, MoIntegrals};
use crate::scf::{rhf_scf, ScfResult};

/// Eigenvalues closer than this to the lowest one are treated as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Below this two-determinant weight the cos/sin ansatz is flagged.
pub const ANSATZ_WEIGHT_THRESHOLD: f64 = 0.99;

/// Fock index of the reference determinant |1100> (alpha MO0, beta MO0).
pub const REFERENCE_INDEX: usize = 0b0011;
/// Fock index of the doubly excited determinant |0011> (alpha MO1, beta MO1).
pub const DOUBLE_INDEX: usize = 0b1100;

/// c_p on an occupation bitstring, with the Jordan-Wigner sign.
#[inline]
pub fn annihilate(p: usize, det: u64) -> Option<(u64, f64)> {
    if (det >> p) & 1 == 0 {
        return None;
    }
    let sign = if (det & ((1 << p) - 1)).count_ones() & 1 == 0 { 1.0 } else { -1.0 };
    Some((det ^ (1 << p), sign))
}

#[inline]
pub fn create(p: usize, det: u64) -> Option<(u64, f64)> {
    if (det >> p) & 1 == 1 {
        return None;
    }
    let sign = if (det & ((1 << p) - 1)).count_ones() & 1 == 0 { 1.0 } else { -1.0 };
    Some((det | (1 << p), sign))
}

/// Determinants with one alpha and one beta electron, alpha MO major.
pub fn sector_determinants(n_spatial: usize) -> Vec<u64> {
    let mut dets = Vec::with_capacity(n_spatial * n_spatial);
    for a in 0..n_spatial {
        for b in 0..n_spatial {
            dets.push((1 << (2 * a)) | (1 << (2 * b + 1)));
        }
    }
    dets
}

#[derive(Debug, Clone)]
pub struct SectorHamiltonian {
    pub matrix: DMatrix<f64>,
    pub determinants: Vec<u64>,
    pub n_modes: usize,
}

/// H |det> as a sparse map, H = sum h_pq c+_p c_q + 1/4 sum <pq||rs> c+_p c+_q c_s c_r.
fn apply_hamiltonian(mo: &MoIntegrals, det: u64) -> HashMap<u64, f64> {
    let n = mo.n_modes();
    let mut out = HashMap::new();
    for q in 0..n {
        let Some((d1, s1)) = annihilate(q, det) else { continue };
        for p in 0..n {
            let h = mo.h_mo[(p, q)];
            if h == 0.0 {
                continue;
            }
            if let Some((d2, s2)) = create(p, d1) {
                *out.entry(d2).or_insert(0.0) += h * s1 * s2;
            }
        }
    }
    for r in 0..n {
        let Some((d1, s1)) = annihilate(r, det) else { continue };
        for s in 0..n {
            let Some((d2, s2)) = annihilate(s, d1) else { continue };
            for q in 0..n {
                let Some((d3, s3)) = create(q, d2) else { continue };
                for p in 0..n {
                    let g = mo.eri_so.get(p, q, r, s);
                    if g == 0.0 {
                        continue;
                    }
                    if let Some((d4, s4)) = create(p, d3) {
                        *out.entry(d4).or_insert(0.0) += 0.25 * g * s1 * s2 * s3 * s4;
                    }
                }
            }
        }
    }
    out
}

pub fn build_sector_hamiltonian(mo: &MoIntegrals) -> SectorHamiltonian {
    let determinants = sector_determinants(mo.n_spatial());
    let index: HashMap<u64, usize> = determinants.iter().enumerate().map(|(i, d)| (*d, i)).collect();
    let dim = determinants.len();
    let mut matrix = DMatrix::zeros(dim, dim);
    for (j, &det) in determinants.iter().enumerate() {
        for (target, value) in apply_hamiltonian(mo, det) {
            // Particle number and spin projection are conserved.
            let i = index[&target];
            matrix[(i, j)] += value;
        }
    }
    let matrix = (&matrix + matrix.transpose()) * 0.5;
    SectorHamiltonian {
        matrix,
        determinants,
        n_modes: mo.n_modes(),
    }
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    /// Electronic eigenvalue plus nuclear repulsion.
    pub energy: f64,
    pub amplitudes: DVector<f64>,
    pub residual: f64,
}

/// Lowest eigenpair with the reference determinant (position 0) amplitude >= 0.
/// Within a degenerate lowest eigenspace the vector with the largest
/// reference amplitude is chosen.
pub fn ground_eigenpair(h: &DMatrix<f64>, nuclear_repulsion: f64) -> Result<Eigenpair> {
    let eig = jacobi_eigen(h)?;
    let lowest = eig.values[0];
    let degenerate: Vec<usize> = (0..eig.values.len())
        .filter(|&i| eig.values[i] - lowest < DEGENERACY_TOLERANCE)
        .collect();

    let mut x = DVector::zeros(h.nrows());
    for &i in &degenerate {
        x += eig.vectors.column(i) * eig.vectors[(0, i)];
    }
    let norm = x.norm();
    if norm < 1e-12 {
        x = eig.vectors.column(0).into_owned();
    } else {
        x /= norm;
    }
    let lead = if x[0].abs() > 1e-14 {
        0
    } else {
        x.iamax()
    };
    if x[lead] < 0.0 {
        x.neg_mut();
    }

    let residual = (h * &x - &x * lowest).amax();
    if residual >= RESIDUAL_TOLERANCE {
        return Err(Error::Convergence {
            what: "ground eigenpair",
            iterations: crate::linalg::JACOBI_MAX_SWEEPS,
            residual,
        });
    }
    Ok(Eigenpair {
        energy: lowest + nuclear_repulsion,
        amplitudes: x,
        residual,
    })
}

/// Place sector amplitudes into the 2^n occupation basis.
pub fn embed_fock(amplitudes: &[f64], determinants: &[u64], n_modes: usize) -> Result<FockVector> {
    if amplitudes.len() != determinants.len() {
        return Err(Error::Dimension("amplitude and determinant counts differ".into()));
    }
    let mut fock = vec![0.0; 1 << n_modes];
    for (&a, &d) in amplitudes.iter().zip(determinants) {
        let slot = fock
            .get_mut(d as usize)
            .ok_or_else(|| Error::Dimension(format!("determinant {d:#b} outside {n_modes} modes")))?;
        *slot = a;
    }
    FockVector::from_real(&fock)
}

/// Inverse of [`embed_fock`] for real amplitudes.
pub fn project_sector(fock: &FockVector, determinants: &[u64]) -> Vec<f64> {
    determinants.iter().map(|&d| fock.amplitudes()[d as usize].re).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaFit {
    pub theta: f64,
    pub two_det_weight: f64,
    /// False when the two determinants carry less than 99% of the norm.
    pub ansatz_ok: bool,
}

/// Mixing angle of cos(theta)|1100> + sin(theta)|0011>.
pub fn extract_theta(fock: &FockVector) -> Result<ThetaFit> {
    if fock.n_modes() < 4 {
        return Err(Error::Dimension("mixing angle needs at least 4 modes".into()));
    }
    let reference = fock.amplitudes()[REFERENCE_INDEX].re;
    let double = fock.amplitudes()[DOUBLE_INDEX].re;
    let weight = reference * reference + double * double;
    Ok(ThetaFit {
        theta: double.atan2(reference),
        two_det_weight: weight,
        ansatz_ok: weight >= ANSATZ_WEIGHT_THRESHOLD,
    })
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub sector_amplitudes: Vec<f64>,
    pub determinants: Vec<u64>,
    pub fock_vector: FockVector,
    pub theta: f64,
    pub two_det_weight: f64,
    pub ansatz_ok: bool,
}

/// Full pipeline for one geometry: RHF, MO transform, sector FCI.
pub fn fci_ground_state(ints: &IntegralSet) -> Result<(ScfResult, GroundState)> {
    let scf = rhf_scf(ints)?;
    let mo = ao_to_mo(ints, &scf)?;
    let ham = build_sector_hamiltonian(&mo);
    let pair = ground_eigenpair(&ham.matrix, ints.nuclear_repulsion)?;
    let amplitudes: Vec<f64> = pair.amplitudes.iter().copied().collect();
    let fock_vector = embed_fock(&amplitudes, &ham.determinants, ham.n_modes)?;
    let fit = extract_theta(&fock_vector)?;
    Ok((
        scf,
        GroundState {
            energy: pair.energy,
            sector_amplitudes: amplitudes,
            determinants: ham.determinants,
            fock_vector,
            theta: fit.theta,
            two_det_weight: fit.two_det_weight,
            ansatz_ok: fit.ansatz_ok,
        },
    ))
}

/// Lower end of the mixing-angle range under the reference-phase convention.
pub const THETA_DISSOCIATED: f64 = -FRAC_PI_4;
