//! Single-qubit view of the two-determinant ground state and its relation
//! to the T gate under Clifford conjugation.
//!
//! Rotations follow R_a(phi) = exp(-i phi sigma_a / 2).

use nalgebra::Matrix2;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};

pub type Gate = Matrix2<Complex64>;

/// Tolerance for equality up to global phase.
pub const PHASE_TOLERANCE: f64 = 1e-10;
/// Tolerance of the rotation-conjugation identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity() -> Gate {
    Gate::identity()
}

pub fn pauli_x() -> Gate {
    Gate::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}

pub fn pauli_y() -> Gate {
    Gate::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0))
}

pub fn pauli_z() -> Gate {
    Gate::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0))
}

pub fn hadamard() -> Gate {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Gate::new(c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0))
}

pub fn phase_s() -> Gate {
    Gate::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0))
}

pub fn t_gate() -> Gate {
    Gate::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), Complex64::from_polar(1.0, FRAC_PI_4))
}

pub fn t_dagger() -> Gate {
    t_gate().adjoint()
}

/// exp(-i phi sigma / 2) = cos(phi/2) I - i sin(phi/2) sigma.
fn rotation(sigma: Gate, phi: f64) -> Gate {
    identity() * c((phi / 2.0).cos(), 0.0) - sigma * c(0.0, (phi / 2.0).sin())
}

pub fn rx(phi: f64) -> Gate {
    rotation(pauli_x(), phi)
}

pub fn ry(phi: f64) -> Gate {
    rotation(pauli_y(), phi)
}

pub fn rz(phi: f64) -> Gate {
    rotation(pauli_z(), phi)
}

/// Returns `phase` with `a = phase * b` when the two agree up to a global
/// phase within `tol` (max-abs entry norm).
pub fn proportional(a: &Gate, b: &Gate, tol: f64) -> Option<Complex64> {
    let (idx, largest) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
    if largest.norm() == 0.0 {
        return None;
    }
    let ratio = a[idx] / largest;
    if ratio.norm().is_nan() || ratio.norm() == 0.0 {
        return None;
    }
    let phase = ratio / ratio.norm();
    let diff = a - b * phase;
    diff.iter().all(|z| z.norm() < tol).then_some(phase)
}

pub fn is_unitary(u: &Gate, tol: f64) -> bool {
    (u.adjoint() * u - identity()).iter().all(|z| z.norm() < tol)
}

#[derive(Debug, Clone)]
pub struct GroupElement {
    /// Word in the generators (`H`, `S`) or a Pauli label; `I` for identity.
    pub id: String,
    pub matrix: Gate,
}

/// The 24 single-qubit Clifford elements modulo global phase, enumerated
/// breadth-first from words in H and S.
pub fn clifford_group() -> Vec<GroupElement> {
    let generators = [("H", hadamard()), ("S", phase_s())];
    let mut elements = vec![GroupElement {
        id: "I".into(),
        matrix: identity(),
    }];
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        for (name, g) in &generators {
            let candidate = g * current.matrix;
            if elements
                .iter()
                .all(|e| proportional(&candidate, &e.matrix, PHASE_TOLERANCE).is_none())
            {
                let id = if current.id == "I" {
                    (*name).to_string()
                } else {
                    format!("{name}{}", current.id)
                };
                elements.push(GroupElement {
                    id,
                    matrix: candidate,
                });
            }
        }
        frontier += 1;
    }
    elements
}

pub fn pauli_group() -> Vec<GroupElement> {
    [("I", identity()), ("X", pauli_x()), ("Y", pauli_y()), ("Z", pauli_z())]
        .into_iter()
        .map(|(id, matrix)| GroupElement {
            id: id.into(),
            matrix,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateTarget {
    T,
    TDagger,
}

impl GateTarget {
    pub fn matrix(self) -> Gate {
        match self {
            GateTarget::T => t_gate(),
            GateTarget::TDagger => t_dagger(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GateTarget::T => "T",
            GateTarget::TDagger => "T^dagger",
        }
    }
}

/// `C U C^dagger = phase * target`.
#[derive(Debug, Clone)]
pub struct ConjugationHit {
    pub element: String,
    pub conjugator: Gate,
    pub target: GateTarget,
    pub phase: Complex64,
}

#[derive(Debug, Clone, Default)]
pub struct ConjugationResult {
    pub clifford_hits: Vec<ConjugationHit>,
    pub pauli_hits: Vec<ConjugationHit>,
}

fn search(u: &Gate, group: &[GroupElement]) -> Vec<ConjugationHit> {
    let mut hits = Vec::new();
    for element in group {
        let conjugated = element.matrix * u * element.matrix.adjoint();
        for target in [GateTarget::T, GateTarget::TDagger] {
            if let Some(phase) = proportional(&conjugated, &target.matrix(), PHASE_TOLERANCE) {
                hits.push(ConjugationHit {
                    element: element.id.clone(),
                    conjugator: element.matrix,
                    target,
                    phase,
                });
            }
        }
    }
    hits
}

/// Every Clifford and, separately, every Pauli element mapping `u` onto
/// T or T^dagger up to global phase.
pub fn conjugation_search(u: &Gate) -> ConjugationResult {
    ConjugationResult {
        clifford_hits: search(u, &clifford_group()),
        pauli_hits: search(u, &pauli_group()),
    }
}

#[derive(Debug, Clone)]
pub struct QubitView {
    pub theta: f64,
    pub u_matrix: Gate,
    /// Clifford elements conjugating U to T or T^dagger, with the phase.
    pub conjugating_elements: Vec<(String, GateTarget, Complex64)>,
}

/// U(theta) = R_y(2 theta) = [[cos, -sin], [sin, cos]] on {|1100>, |0011>}.
pub fn qubit_unitary(theta: f64) -> QubitView {
    let (s, co) = theta.sin_cos();
    let u_matrix = Gate::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0));
    let conjugating_elements = conjugation_search(&u_matrix)
        .clifford_hits
        .into_iter()
        .map(|h| (h.element, h.target, h.phase))
        .collect();
    QubitView {
        theta,
        u_matrix,
        conjugating_elements,
    }
}

/// Sign `s` with R_x(s pi/2) R_z(2 theta) R_x(-s pi/2) = R_y(2 theta) up to
/// global phase. Both signs work only when theta is a multiple of pi, and
/// `+1` is returned then.
pub fn rotation_identity_check(theta: f64) -> Result<i8> {
    if !theta.is_finite() {
        return Err(Error::Domain("theta must be finite".into()));
    }
    let target = ry(2.0 * theta);
    let works = |s: f64| {
        let lhs = rx(s * std::f64::consts::FRAC_PI_2) * rz(2.0 * theta) * rx(-s * std::f64::consts::FRAC_PI_2);
        proportional(&lhs, &target, IDENTITY_TOLERANCE).is_some()
    };
    match (works(1.0), works(-1.0)) {
        (true, true) => {
            if theta.sin().abs() > 1e-9 {
                return Err(Error::Consistency(format!(
                    "both conjugation signs reproduce R_y at theta = {theta}"
                )));
            }
            Ok(1)
        }
        (true, false) => Ok(1),
        (false, true) => Ok(-1),
        (false, false) => Err(Error::Consistency(format!(
            "R_x conjugation of R_z does not reproduce R_y at theta = {theta}"
        ))),
    }
}

/// Eigenvalues of a 2x2 matrix.
pub fn eigenvalues(m: &Gate) -> [Complex64; 2] {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * 4.0).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}
