//! Exhaustive operator identities for the Majorana strings on small mode counts,
//! checked on dense matrices assembled column by column.

use bondmagic::majorana::{majorana_apply, wigner_spectrum, FockVector, PhasePoint};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

type CMatrix = DMatrix<Complex64>;

fn dense(v: &PhasePoint) -> CMatrix {
    let n = v.n_modes();
    let dim = 1 << n;
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let out = majorana_apply(v, &FockVector::basis_state(n, col).unwrap()).unwrap();
        for (row, a) in out.amplitudes().iter().enumerate() {
            m[(row, col)] = *a;
        }
    }
    m
}

fn all_strings(n: usize) -> Vec<(u64, CMatrix)> {
    (0..1u64 << (2 * n))
        .map(|b| (b, dense(&PhasePoint::new(b, n).unwrap())))
        .collect()
}

fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    (a - b).iter().all(|z| z.norm() < tol)
}

#[test]
fn single_majoranas_anticommute() {
    for n in 1..=3 {
        let dim = 1 << n;
        let id = CMatrix::identity(dim, dim);
        let gammas: Vec<CMatrix> = (0..2 * n)
            .map(|a| dense(&PhasePoint::new(1 << a, n).unwrap()))
            .collect();
        for (a, ga) in gammas.iter().enumerate() {
            for (b, gb) in gammas.iter().enumerate() {
                let anti = ga * gb + gb * ga;
                let expected = if a == b { &id * Complex64::new(2.0, 0.0) } else { CMatrix::zeros(dim, dim) };
                assert!(close(&anti, &expected, 1e-14), "n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn strings_are_hermitian_involutions() {
    for n in 1..=3 {
        let id = CMatrix::identity(1 << n, 1 << n);
        for (b, m) in all_strings(n) {
            assert!(close(&(&m * &m), &id, 1e-14), "square n={n} v={b:b}");
            assert!(close(&m.adjoint(), &m, 1e-14), "hermitian n={n} v={b:b}");
        }
    }
}

#[test]
fn strings_are_trace_orthogonal() {
    for n in 1..=3 {
        let dim = (1 << n) as f64;
        let strings = all_strings(n);
        for (a, ma) in &strings {
            for (b, mb) in &strings {
                let tr = (ma * mb).trace();
                let expected = if a == b { dim } else { 0.0 };
                assert!((tr - Complex64::new(expected, 0.0)).norm() < 1e-12, "n={n} {a:b} {b:b}");
            }
        }
    }
}

#[test]
fn wigner_values_reconstruct_the_density_matrix() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    for n in 1..=3 {
        let dim = 1 << n;
        let strings = all_strings(n);
        for _ in 0..5 {
            let amps: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let amps: Vec<Complex64> = amps.iter().map(|z| z / norm).collect();
            let x = FockVector::new(amps.clone()).unwrap();
            let w = wigner_spectrum(&x).unwrap();
            let mut rho = CMatrix::zeros(dim, dim);
            for ((_, m), value) in strings.iter().zip(w.values()) {
                rho += m * Complex64::new(*value / dim as f64, 0.0);
            }
            let psi = nalgebra::DVector::from_vec(amps);
            let expected = &psi * psi.adjoint();
            assert!(close(&rho, &expected, 1e-12), "n={n}");
        }
    }
}
