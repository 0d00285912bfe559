//! The sector Hamiltonian against an independent dense Fock-space build from
//! spatial integrals, and FCI invariance under orbital rotations.

use bondmagic::fci::{build_sector_hamiltonian, ground_eigenpair};
use bondmagic::integrals::{assemble_integrals, BasisName, BasisSet};
use bondmagic::mo::{ao_to_mo, MoIntegrals};
use bondmagic::scf::rhf_scf;
use nalgebra::{DMatrix, SymmetricEigen};

/// Apply a creation (dagger = true) or annihilation operator; sign from the
/// number of occupied modes below `p`.
fn ladder(p: usize, state: usize, dagger: bool) -> Option<(usize, f64)> {
    let occupied = state >> p & 1 == 1;
    if occupied == dagger {
        return None;
    }
    let sign = if (state & ((1 << p) - 1)).count_ones() & 1 == 0 { 1.0 } else { -1.0 };
    Some((state ^ (1 << p), sign))
}

/// Dense 2^n Hamiltonian with H = sum h c+c + 1/2 sum <pq|rs> c+_p c+_q c_s c_r,
/// spin orbitals p -> (MO p/2, spin p%2).
fn fock_space_hamiltonian(mo: &MoIntegrals) -> DMatrix<f64> {
    let k = mo.n_spatial();
    let n = 2 * k;
    let dim = 1 << n;
    let h1 = |p: usize, q: usize| if p % 2 == q % 2 { mo.h_spatial[(p / 2, q / 2)] } else { 0.0 };
    let g = |p: usize, q: usize, r: usize, s: usize| {
        if p % 2 == r % 2 && q % 2 == s % 2 {
            mo.eri_spatial.get(p / 2, r / 2, q / 2, s / 2)
        } else {
            0.0
        }
    };
    let mut h = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        for p in 0..n {
            for q in 0..n {
                let Some((a, s1)) = ladder(q, col, false) else { continue };
                let Some((b, s2)) = ladder(p, a, true) else { continue };
                h[(b, col)] += h1(p, q) * s1 * s2;
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let v = g(p, q, r, s);
                        if v == 0.0 {
                            continue;
                        }
                        let Some((a, s1)) = ladder(r, col, false) else { continue };
                        let Some((b, s2)) = ladder(s, a, false) else { continue };
                        let Some((c, s3)) = ladder(q, b, true) else { continue };
                        let Some((d, s4)) = ladder(p, c, true) else { continue };
                        h[(d, col)] += 0.5 * v * s1 * s2 * s3 * s4;
                    }
                }
            }
        }
    }
    h
}

fn check_against_fock_space(basis: BasisName, ell: f64) {
    let ints = assemble_integrals(ell, &BasisSet::builtin(basis)).unwrap();
    let mo = ao_to_mo(&ints, &rhf_scf(&ints).unwrap()).unwrap();
    let sector = build_sector_hamiltonian(&mo);
    let full = fock_space_hamiltonian(&mo);
    for (i, &di) in sector.determinants.iter().enumerate() {
        for (j, &dj) in sector.determinants.iter().enumerate() {
            let a = sector.matrix[(i, j)];
            let b = full[(di as usize, dj as usize)];
            assert!((a - b).abs() < 1e-10, "{basis} ell={ell} <{di:b}|H|{dj:b}>: {a} vs {b}");
        }
    }
    // The two-electron singlet ground state is the lowest state of the
    // whole two-electron block.
    let two: Vec<usize> = (0..full.nrows()).filter(|s| s.count_ones() == 2).collect();
    let block = DMatrix::from_fn(two.len(), two.len(), |i, j| full[(two[i], two[j])]);
    let lowest_full = SymmetricEigen::new(block).eigenvalues.min();
    let lowest_sector = ground_eigenpair(&sector.matrix, 0.0).unwrap().energy;
    assert!((lowest_full - lowest_sector).abs() < 1e-9, "{basis} ell={ell}");
}

#[test]
fn sto3g_sector_matches_fock_space() {
    for ell in [0.5, 0.7414, 1.6, 3.0] {
        check_against_fock_space(BasisName::Sto3g, ell);
    }
}

#[test]
fn six31g_sector_matches_fock_space() {
    for ell in [0.7414, 2.0] {
        check_against_fock_space(BasisName::Six31g, ell);
    }
}

#[test]
fn fci_energy_is_invariant_under_orbital_rotation() {
    for (basis, ell) in [(BasisName::Sto3g, 1.2), (BasisName::Six31g, 0.9)] {
        let ints = assemble_integrals(ell, &BasisSet::builtin(basis)).unwrap();
        let scf = rhf_scf(&ints).unwrap();
        let reference = ground_eigenpair(&build_sector_hamiltonian(&ao_to_mo(&ints, &scf).unwrap()).matrix, 0.0)
            .unwrap()
            .energy;
        for phi in [0.1, 0.7, 1.3] {
            let mut rotated = scf.clone();
            let (s, c) = f64::sin_cos(phi);
            let c0 = scf.mo_coefficients.column(0).into_owned();
            let c1 = scf.mo_coefficients.column(1).into_owned();
            rotated.mo_coefficients.set_column(0, &(&c0 * c - &c1 * s));
            rotated.mo_coefficients.set_column(1, &(&c0 * s + &c1 * c));
            let mo = ao_to_mo(&ints, &rotated).unwrap();
            let e = ground_eigenpair(&build_sector_hamiltonian(&mo).matrix, 0.0).unwrap().energy;
            assert!((e - reference).abs() < 1e-9, "{basis} phi={phi}: {e} vs {reference}");
        }
    }
}
