//! AO to MO integral transformation and spin-orbital expansion.
//!
//! Spin orbitals are interleaved by ascending orbital energy:
//! `(alpha MO0, beta MO0, alpha MO1, beta MO1, ...)`, so mode `2i + s` is
//! spatial MO `i` with spin `s` (0 = alpha, 1 = beta).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::integrals::{EriTensor, IntegralSet};
use crate::scf::ScfResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinOrbital {
    pub mo: usize,
    pub spin: Spin,
}

pub fn mode_order(n_mo: usize) -> Vec<SpinOrbital> {
    (0..2 * n_mo)
        .map(|m| SpinOrbital {
            mo: m / 2,
            spin: if m % 2 == 0 { Spin::Alpha } else { Spin::Beta },
        })
        .collect()
}

/// Antisymmetrized physicist-convention tensor <pq||rs> over spin orbitals.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymmetrizedTensor {
    n: usize,
    data: Vec<f64>,
}

impl AntisymmetrizedTensor {
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.data[((p * self.n + q) * self.n + r) * self.n + s]
    }
}

#[derive(Debug, Clone)]
pub struct MoIntegrals {
    /// One-body integrals over spatial MOs.
    pub h_spatial: DMatrix<f64>,
    /// (pq|rs) over spatial MOs, chemist ordering.
    pub eri_spatial: EriTensor,
    /// One-body integrals over spin orbitals, 2K x 2K.
    pub h_mo: DMatrix<f64>,
    pub eri_so: AntisymmetrizedTensor,
    pub mode_order: Vec<SpinOrbital>,
}

impl MoIntegrals {
    pub fn n_spatial(&self) -> usize {
        self.h_spatial.nrows()
    }

    pub fn n_modes(&self) -> usize {
        self.h_mo.nrows()
    }

    /// Physicist <pq|rs> over spin orbitals, before antisymmetrization.
    pub fn coulomb_so(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let o = &self.mode_order;
        if o[p].spin != o[r].spin || o[q].spin != o[s].spin {
            return 0.0;
        }
        self.eri_spatial.get(o[p].mo, o[r].mo, o[q].mo, o[s].mo)
    }
}

/// Four quarter transforms of (mu nu|la si) into the MO basis.
fn transform_eri(eri: &EriTensor, c: &DMatrix<f64>) -> EriTensor {
    let k = eri.dim();
    let mut current = eri.clone();
    for axis in 0..4 {
        let mut next = EriTensor::zeros(k);
        for a in 0..k {
            for b in 0..k {
                for cc in 0..k {
                    for d in 0..k {
                        let mut sum = 0.0;
                        for m in 0..k {
                            let (idx, coeff) = match axis {
                                0 => ((m, b, cc, d), c[(m, a)]),
                                1 => ((a, m, cc, d), c[(m, b)]),
                                2 => ((a, b, m, d), c[(m, cc)]),
                                _ => ((a, b, cc, m), c[(m, d)]),
                            };
                            sum += coeff * current.get(idx.0, idx.1, idx.2, idx.3);
                        }
                        next.set(a, b, cc, d, sum);
                    }
                }
            }
        }
        current = next;
    }
    symmetrize(&mut current);
    current
}

/// Average each 8-fold permutation orbit so the symmetry holds bitwise.
fn symmetrize(t: &mut EriTensor) {
    let k = t.dim();
    for p in 0..k {
        for q in 0..k {
            for r in 0..k {
                for s in 0..k {
                    let orbit = [
                        (p, q, r, s),
                        (q, p, r, s),
                        (p, q, s, r),
                        (q, p, s, r),
                        (r, s, p, q),
                        (s, r, p, q),
                        (r, s, q, p),
                        (s, r, q, p),
                    ];
                    let mean = orbit.iter().map(|&(a, b, c, d)| t.get(a, b, c, d)).sum::<f64>() / 8.0;
                    for (a, b, c, d) in orbit {
                        t.set(a, b, c, d, mean);
                    }
                }
            }
        }
    }
}

pub fn ao_to_mo(ints: &IntegralSet, scf: &ScfResult) -> Result<MoIntegrals> {
    let c = &scf.mo_coefficients;
    let k = ints.n_ao;
    if c.nrows() != k || c.ncols() != k || ints.eri.dim() != k {
        return Err(Error::Dimension(format!(
            "{}x{} MO coefficients for {k} AOs",
            c.nrows(),
            c.ncols()
        )));
    }
    if !scf.converged {
        return Err(Error::Contract("MO transform requires a converged SCF".into()));
    }
    let h_spatial = c.transpose() * ints.core_hamiltonian() * c;
    let h_spatial = (&h_spatial + h_spatial.transpose()) * 0.5;
    let eri_spatial = transform_eri(&ints.eri, c);
    let order = mode_order(k);
    let n = 2 * k;

    let h_mo = DMatrix::from_fn(n, n, |p, q| {
        if order[p].spin == order[q].spin {
            h_spatial[(order[p].mo, order[q].mo)]
        } else {
            0.0
        }
    });

    let mut mo = MoIntegrals {
        h_spatial,
        eri_spatial,
        h_mo,
        eri_so: AntisymmetrizedTensor {
            n,
            data: Vec::new(),
        },
        mode_order: order,
    };
    let mut data = vec![0.0; n * n * n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    data[((p * n + q) * n + r) * n + s] =
                        mo.coulomb_so(p, q, r, s) - mo.coulomb_so(p, q, s, r);
                }
            }
        }
    }
    mo.eri_so.data = data;
    Ok(mo)
}
