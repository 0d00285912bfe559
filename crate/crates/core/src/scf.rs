//! Closed-shell Hartree-Fock for two electrons.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::integrals::{assemble_at, BasisSet, IntegralSet, Point};
use crate::linalg::{adapt_degenerate, generalized_eigen, SymmetricEigen};

#[derive(Debug, Clone, Copy)]
pub struct ScfOptions {
    pub max_iterations: usize,
    /// Fraction of the previous density kept at each step.
    pub damping: f64,
    pub energy_tolerance: f64,
    pub density_tolerance: f64,
}

impl Default for ScfOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            damping: 0.5,
            energy_tolerance: 1e-12,
            density_tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScfResult {
    /// Columns are MOs expanded over AOs.
    pub mo_coefficients: DMatrix<f64>,
    pub orbital_energies: DVector<f64>,
    /// Electronic plus nuclear repulsion energy.
    pub scf_energy: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Fix each MO column's sign so its largest-magnitude entry (first on ties) is positive.
fn canonical_signs(c: &mut DMatrix<f64>) {
    for mut col in c.column_iter_mut() {
        let max = col.amax();
        if let Some(lead) = col.iter().position(|x| x.abs() >= max - 1e-10) {
            if col[lead] < 0.0 {
                col.neg_mut();
            }
        }
    }
}

fn two_electron_part(ints: &IntegralSet, density: &DMatrix<f64>) -> DMatrix<f64> {
    let k = ints.n_ao;
    DMatrix::from_fn(k, k, |i, j| {
        let mut g = 0.0;
        for a in 0..k {
            for b in 0..k {
                g += density[(a, b)] * (ints.eri.get(i, j, a, b) - 0.5 * ints.eri.get(i, a, j, b));
            }
        }
        g
    })
}

fn closed_shell_density(c: &DMatrix<f64>, occupied: usize) -> DMatrix<f64> {
    let occ = c.column(occupied);
    occ * occ.transpose() * 2.0
}

/// Column of `c` with the largest S-overlap with `previous`. Keeps the
/// occupation continuous when occupied and virtual levels become degenerate
/// near dissociation, where plain aufbau flips between them.
fn max_overlap_column(c: &DMatrix<f64>, s: &DMatrix<f64>, previous: &DVector<f64>) -> usize {
    let projected = c.transpose() * (s * previous);
    projected.iamax()
}

/// Average the density with its inversion image. The damped iteration has an
/// oscillating charge-transfer mode at long bond lengths that otherwise grows
/// from rounding noise into the ionic solution.
fn symmetrize_density(d: DMatrix<f64>, ints: &IntegralSet) -> DMatrix<f64> {
    match &ints.inversion {
        Some(perm) => {
            let image = DMatrix::from_fn(d.nrows(), d.ncols(), |i, j| d[(perm[i], perm[j])]);
            (d + image) * 0.5
        }
        None => d,
    }
}

fn symmetric_eigen(f: &DMatrix<f64>, ints: &IntegralSet) -> Result<SymmetricEigen> {
    let mut eig = generalized_eigen(f, &ints.overlap)?;
    if let Some(perm) = &ints.inversion {
        let k = ints.n_ao;
        let inversion = DMatrix::from_fn(k, k, |i, j| if perm[j] == i { 1.0 } else { 0.0 });
        adapt_degenerate(&mut eig, &ints.overlap, &inversion)?;
    }
    Ok(eig)
}

pub fn rhf_scf(ints: &IntegralSet) -> Result<ScfResult> {
    rhf_scf_with(ints, &ScfOptions::default())
}

pub fn rhf_scf_with(ints: &IntegralSet, opts: &ScfOptions) -> Result<ScfResult> {
    let h = ints.core_hamiltonian();
    let guess = symmetric_eigen(&h, ints)?;
    let mut occupied_mo: DVector<f64> = guess.vectors.column(0).into_owned();
    let mut density = symmetrize_density(closed_shell_density(&guess.vectors, 0), ints);
    let mut previous_energy = f64::INFINITY;
    let mut residual = f64::INFINITY;

    for iteration in 1..=opts.max_iterations {
        let fock = &h + two_electron_part(ints, &density);
        let energy = 0.5 * density.component_mul(&(&h + &fock)).sum();
        let eig = symmetric_eigen(&fock, ints)?;
        let occupied = max_overlap_column(&eig.vectors, &ints.overlap, &occupied_mo);
        let fresh = symmetrize_density(closed_shell_density(&eig.vectors, occupied), ints);
        let density_change = (&fresh - &density).amax();
        residual = density_change.max((energy - previous_energy).abs());

        if (energy - previous_energy).abs() < opts.energy_tolerance
            && density_change < opts.density_tolerance
        {
            // Occupied orbital first, virtuals in ascending order.
            let mut order: Vec<usize> = (0..eig.values.len()).filter(|&i| i != occupied).collect();
            order.insert(0, occupied);
            let mut mo_coefficients = eig.vectors.select_columns(&order);
            canonical_signs(&mut mo_coefficients);
            return Ok(ScfResult {
                mo_coefficients,
                orbital_energies: DVector::from_iterator(order.len(), order.iter().map(|&i| eig.values[i])),
                scf_energy: energy + ints.nuclear_repulsion,
                iterations: iteration,
                converged: true,
            });
        }
        previous_energy = energy;
        occupied_mo = eig.vectors.column(occupied).into_owned();
        density = &density * opts.damping + fresh * (1.0 - opts.damping);
    }
    Err(Error::Convergence {
        what: "RHF SCF",
        iterations: opts.max_iterations,
        residual,
    })
}

/// Lowest one-electron energy of an isolated hydrogen atom in `basis`.
pub fn atomic_asymptote(basis: &BasisSet) -> Result<f64> {
    let ints = assemble_at(&[Point::zeros()], basis)?;
    let eig = generalized_eigen(&ints.core_hamiltonian(), &ints.overlap)?;
    Ok(eig.values[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrals::{assemble_integrals, BasisName};

    #[test]
    fn sto3g_orbitals_are_symmetry_forced() {
        let basis = BasisSet::builtin(BasisName::Sto3g);
        for &ell in &[0.4, 0.7414, 1.6, 3.0, 5.7, 6.0, 8.0, 10.0] {
            let ints = assemble_integrals(ell, &basis).unwrap();
            let scf = rhf_scf(&ints).unwrap();
            assert!(scf.converged);
            let s12 = ints.overlap[(0, 1)];
            let g = 1.0 / (2.0 * (1.0 + s12)).sqrt();
            let u = 1.0 / (2.0 * (1.0 - s12)).sqrt();
            let c = &scf.mo_coefficients;
            assert!((c[(0, 0)] - g).abs() < 1e-8 && (c[(1, 0)] - g).abs() < 1e-8);
            assert!((c[(0, 1)] - u).abs() < 1e-8 && (c[(1, 1)] + u).abs() < 1e-8);
            let ctsc = c.transpose() * &ints.overlap * c;
            assert!((ctsc - DMatrix::identity(2, 2)).amax() < 1e-10);
            assert!(scf.orbital_energies[0] <= scf.orbital_energies[1]);
        }
    }

    #[test]
    fn six31g_orthonormal_and_ascending() {
        let ints = assemble_integrals(1.2, &BasisSet::builtin(BasisName::Six31g)).unwrap();
        let scf = rhf_scf(&ints).unwrap();
        let c = &scf.mo_coefficients;
        assert!((c.transpose() * &ints.overlap * c - DMatrix::identity(4, 4)).amax() < 1e-10);
        for w in scf.orbital_energies.as_slice().windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let ints = assemble_integrals(1.0, &BasisSet::builtin(BasisName::Sto3g)).unwrap();
        let opts = ScfOptions {
            max_iterations: 1,
            ..Default::default()
        };
        assert!(matches!(rhf_scf_with(&ints, &opts), Err(Error::Convergence { .. })));
    }

    #[test]
    fn atomic_energies_are_variational() {
        let sto = atomic_asymptote(&BasisSet::builtin(BasisName::Sto3g)).unwrap();
        let split = atomic_asymptote(&BasisSet::builtin(BasisName::Six31g)).unwrap();
        assert!(sto > -0.5 && split > -0.5);
        assert!(split < sto);
    }
}
