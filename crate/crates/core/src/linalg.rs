//! Cyclic Jacobi diagonalization for small dense symmetric matrices.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm, relative to the full norm, at which sweeps stop.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

fn off_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

pub fn jacobi_eigen(matrix: &DMatrix<f64>) -> Result<SymmetricEigen> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", n, matrix.ncols())));
    }
    if matrix.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let mut a = matrix.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.norm().max(f64::MIN_POSITIVE);

    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&a) <= JACOBI_TOLERANCE * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > JACOBI_TOLERANCE * scale {
        return Err(Error::Convergence {
            what: "Jacobi eigensolver",
            iterations: JACOBI_MAX_SWEEPS,
            residual: off_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| a[(i, i)]));
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymmetricEigen { values, vectors })
}

/// Symmetric (Loewdin) orthogonalizer S^{-1/2}.
pub fn inverse_sqrt(s: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = jacobi_eigen(s)?;
    let smallest = eig.values[0];
    if smallest <= 1e-10 {
        return Err(Error::Singular(format!(
            "overlap matrix smallest eigenvalue {smallest:e}"
        )));
    }
    let d = DMatrix::from_diagonal(&eig.values.map(|x| 1.0 / x.sqrt()));
    Ok(&eig.vectors * d * eig.vectors.transpose())
}

/// Solve F C = S C e for symmetric F and positive definite S.
pub fn generalized_eigen(f: &DMatrix<f64>, s: &DMatrix<f64>) -> Result<SymmetricEigen> {
    let x = inverse_sqrt(s)?;
    let fp = x.transpose() * f * &x;
    let fp = (&fp + fp.transpose()) * 0.5;
    let eig = jacobi_eigen(&fp)?;
    Ok(SymmetricEigen {
        values: eig.values,
        vectors: x * eig.vectors,
    })
}

/// Eigenvalues closer than this are resolved by a symmetry operator.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;

/// Within each cluster of (nearly) degenerate eigenvalues, rotate the
/// S-orthonormal eigenvectors onto eigenvectors of `symmetry`, an involution
/// commuting with the problem. Fixes the otherwise arbitrary mixing of
/// degenerate levels.
pub fn adapt_degenerate(
    eig: &mut SymmetricEigen,
    s: &DMatrix<f64>,
    symmetry: &DMatrix<f64>,
) -> Result<()> {
    let n = eig.values.len();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end] - eig.values[end - 1] < CLUSTER_TOLERANCE {
            end += 1;
        }
        if end - start > 1 {
            let block = eig.vectors.columns(start, end - start).into_owned();
            let rep = block.transpose() * s * symmetry * &block;
            let rep = (&rep + rep.transpose()) * 0.5;
            let sub = jacobi_eigen(&rep)?;
            // Symmetric combinations first.
            let order: Vec<usize> = (0..sub.values.len()).rev().collect();
            let rotated = block * sub.vectors.select_columns(&order);
            eig.vectors.columns_mut(start, end - start).copy_from(&rotated);
        }
        start = end;
    }
    Ok(())
}
