//! One- and two-electron integrals over contracted s Gaussians on hydrogen nuclei.

pub mod basis;
pub mod boys;
pub mod primitive;

use nalgebra::DMatrix;

pub use basis::{BasisName, BasisSet, ContractedShell, GaussianPrimitive};
pub use boys::boys_f0;
pub use primitive::{eri_s, kinetic_s, norm_s, nuclear_s, overlap_s, Point};

use crate::error::{Error, Result};

/// Bohr per angstrom.
pub const ANGSTROM_TO_BOHR: f64 = 1.889_725_988_6;

/// Dense 4-index tensor (pq|rs) in chemist ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct EriTensor {
    k: usize,
    data: Vec<f64>,
}

impl EriTensor {
    pub fn zeros(k: usize) -> Self {
        Self {
            k,
            data: vec![0.0; k * k * k * k],
        }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    #[inline]
    fn index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.k + q) * self.k + r) * self.k + s
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.data[self.index(p, q, r, s)]
    }

    #[inline]
    pub fn set(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
        let i = self.index(p, q, r, s);
        self.data[i] = value;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

#[derive(Debug, Clone)]
pub struct IntegralSet {
    pub overlap: DMatrix<f64>,
    pub kinetic: DMatrix<f64>,
    pub nuclear: DMatrix<f64>,
    pub eri: EriTensor,
    pub nuclear_repulsion: f64,
    pub n_ao: usize,
    /// AO permutation exchanging the two nuclei, present for diatomics.
    pub inversion: Option<Vec<usize>>,
}

impl IntegralSet {
    /// One-body core Hamiltonian T + V.
    pub fn core_hamiltonian(&self) -> DMatrix<f64> {
        &self.kinetic + &self.nuclear
    }
}

/// Integrals for H2 with bond length `ell` in angstrom, bond along z.
pub fn assemble_integrals(ell: f64, basis: &BasisSet) -> Result<IntegralSet> {
    if !(ell.is_finite() && ell > 0.0) {
        return Err(Error::Domain(format!("bond length must be positive, got {ell}")));
    }
    let r = ell * ANGSTROM_TO_BOHR;
    assemble_at(&[Point::zeros(), Point::new(0.0, 0.0, r)], basis)
}

/// Integrals for unit-charge nuclei at arbitrary positions (bohr), each
/// carrying a copy of `basis`. AOs are ordered atom-major, shell-minor.
pub fn assemble_at(nuclei: &[Point], basis: &BasisSet) -> Result<IntegralSet> {
    let shells = nuclei
        .iter()
        .flat_map(|c| basis.shells.iter().map(move |prims| ContractedShell::new(*c, prims)))
        .collect::<Result<Vec<_>>>()?;
    let k = shells.len();

    let mut overlap = DMatrix::zeros(k, k);
    let mut kinetic = DMatrix::zeros(k, k);
    let mut nuclear = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..=i {
            let (mut s, mut t, mut v) = (0.0, 0.0, 0.0);
            for p in &shells[i].primitives {
                for q in &shells[j].primitives {
                    let w = p.coefficient * q.coefficient;
                    let (a, ca, b, cb) = (p.exponent, &shells[i].center, q.exponent, &shells[j].center);
                    s += w * overlap_s(a, ca, b, cb)?;
                    t += w * kinetic_s(a, ca, b, cb)?;
                    for c in nuclei {
                        v += w * nuclear_s(a, ca, b, cb, c, 1.0)?;
                    }
                }
            }
            for (m, x) in [(&mut overlap, s), (&mut kinetic, t), (&mut nuclear, v)] {
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
    }

    let mut eri = EriTensor::zeros(k);
    for p in 0..k {
        for q in 0..=p {
            for r in 0..k {
                for s in 0..=r {
                    if p * (p + 1) / 2 + q < r * (r + 1) / 2 + s {
                        continue;
                    }
                    let value = contracted_eri([&shells[p], &shells[q], &shells[r], &shells[s]])?;
                    for (a, b, c, d) in [
                        (p, q, r, s),
                        (q, p, r, s),
                        (p, q, s, r),
                        (q, p, s, r),
                        (r, s, p, q),
                        (s, r, p, q),
                        (r, s, q, p),
                        (s, r, q, p),
                    ] {
                        eri.set(a, b, c, d, value);
                    }
                }
            }
        }
    }

    let mut nuclear_repulsion = 0.0;
    for (i, a) in nuclei.iter().enumerate() {
        for b in &nuclei[..i] {
            nuclear_repulsion += 1.0 / (a - b).norm();
        }
    }

    let per_atom = basis.shells.len();
    let inversion = (nuclei.len() == 2).then(|| (0..k).map(|i| (i + per_atom) % k).collect());

    Ok(IntegralSet {
        overlap,
        kinetic,
        nuclear,
        eri,
        nuclear_repulsion,
        n_ao: k,
        inversion,
    })
}

fn contracted_eri(sh: [&ContractedShell; 4]) -> Result<f64> {
    let mut total = 0.0;
    for a in &sh[0].primitives {
        for b in &sh[1].primitives {
            for c in &sh[2].primitives {
                for d in &sh[3].primitives {
                    total += a.coefficient
                        * b.coefficient
                        * c.coefficient
                        * d.coefficient
                        * eri_s(
                            a.exponent,
                            &sh[0].center,
                            b.exponent,
                            &sh[1].center,
                            c.exponent,
                            &sh[2].center,
                            d.exponent,
                            &sh[3].center,
                        )?;
                }
            }
        }
    }
    Ok(total)
}
