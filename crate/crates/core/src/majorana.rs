//! Majorana strings over the Fock occupation basis and the fermionic Wigner
//! function W(v) = <x|M_v|x> on the phase space (Z_2)^{2n}.
//!
//! Conventions: bit `p` of a Fock index is the occupation of mode `p`; bit `j`
//! of a phase point selects Majorana operator `j` (0-based), where operator
//! `2p` is `c_p + c_p^dag` and operator `2p + 1` is `i (c_p - c_p^dag)`.
//! Annihilating or creating mode `p` picks up `(-1)^(occupied modes below p)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::Execution;

/// Largest mode count the exhaustive spectrum accepts.
pub const MAX_ENUMERATED_MODES: usize = 12;
/// Imaginary residue tolerated in an expectation value of a Hermitian string.
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    bits: u64,
    n_modes: usize,
}

impl PhasePoint {
    pub fn new(bits: u64, n_modes: usize) -> Result<Self> {
        if n_modes == 0 || 2 * n_modes > 63 {
            return Err(Error::Domain(format!("unsupported mode count {n_modes}")));
        }
        if bits >> (2 * n_modes) != 0 {
            return Err(Error::Dimension(format!(
                "phase point {bits:#b} longer than 2n = {}",
                2 * n_modes
            )));
        }
        Ok(Self { bits, n_modes })
    }

    pub fn from_bits(v: &[bool]) -> Result<Self> {
        if v.len() & 1 == 1 {
            return Err(Error::Dimension("phase point length must be even".into()));
        }
        let bits = v.iter().enumerate().filter(|(_, b)| **b).fold(0u64, |acc, (j, _)| acc | 1 << j);
        Self::new(bits, v.len() / 2)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Occupations flipped by the string: mode `p` flips when exactly one of
    /// its two Majoranas is present.
    pub fn flip_mask(&self) -> u64 {
        let mut mask = 0;
        for p in 0..self.n_modes {
            if (self.bits >> (2 * p)) & 1 != (self.bits >> (2 * p + 1)) & 1 {
                mask |= 1 << p;
            }
        }
        mask
    }
}

/// `i^(v . Omega v)` with `Omega` strictly lower triangular ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MajoranaString {
    pub point: PhasePoint,
    pub phase_exponent: u8,
}

impl MajoranaString {
    pub fn new(point: PhasePoint) -> Self {
        let w = u64::from(point.weight());
        // Number of index pairs j > k with both bits set.
        let phase_exponent = ((w * w.saturating_sub(1) / 2) % 4) as u8;
        Self {
            point,
            phase_exponent,
        }
    }

    /// Image of Fock basis state `b`: returns the target index and the
    /// exponent of `i` multiplying it, prefactor included.
    #[inline]
    pub fn act_on_basis(&self, b: u64) -> (u64, u8) {
        let v = self.point.bits;
        let mut state = b;
        let mut exponent = self.phase_exponent;
        let mut remaining = v;
        // Rightmost factor acts first: walk Majorana indices high to low.
        while remaining != 0 {
            let j = 63 - remaining.leading_zeros() as usize;
            remaining &= !(1u64 << j);
            let p = j / 2;
            let below = state & ((1u64 << p) - 1);
            let mut e = if below.count_ones() % 2 == 1 { 2 } else { 0 };
            if j % 2 == 1 {
                // i (c - c^dag): +i on an occupied mode, -i on an empty one.
                e += if (state >> p) & 1 == 1 { 1 } else { 3 };
            }
            exponent = (exponent + e) % 4;
            state ^= 1 << p;
        }
        (state, exponent)
    }
}

/// Pure-state amplitudes over the 2^n occupation basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<Complex64>,
    n_modes: usize,
}

impl FockVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Dimension(format!("Fock vector length {len} is not 2^n, n >= 1")));
        }
        if amplitudes.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::Domain("non-finite Fock amplitude".into()));
        }
        Ok(Self {
            n_modes: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn basis_state(n_modes: usize, index: usize) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_modes];
        *amps
            .get_mut(index)
            .ok_or_else(|| Error::Dimension(format!("index {index} outside 2^{n_modes}")))? =
            Complex64::new(1.0, 0.0);
        Self::new(amps)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Relabel modes: mode `p` of `self` becomes mode `perm[p]`.
    pub fn permute_modes(&self, perm: &[usize]) -> Result<FockVector> {
        let n = self.n_modes;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&q| q >= n || std::mem::replace(&mut seen[q], true)) {
            return Err(Error::Dimension("not a permutation of the modes".into()));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (b, a) in self.amplitudes.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let occupied: Vec<usize> = (0..n).filter(|p| (b >> p) & 1 == 1).collect();
            let mut target = 0usize;
            for &p in &occupied {
                target |= 1 << perm[p];
            }
            // Reordering creators into ascending order costs one sign per inversion.
            let mut inversions = 0;
            for (i, &p) in occupied.iter().enumerate() {
                for &q in &occupied[i + 1..] {
                    if perm[p] > perm[q] {
                        inversions += 1;
                    }
                }
            }
            out[target] = if inversions % 2 == 1 { -*a } else { *a };
        }
        FockVector::new(out)
    }

    fn support(&self) -> Vec<(u64, Complex64)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() != 0.0)
            .map(|(b, a)| (b as u64, *a))
            .collect()
    }
}

/// M_v x.
pub fn majorana_apply(v: &PhasePoint, x: &FockVector) -> Result<FockVector> {
    if v.n_modes() != x.n_modes() {
        return Err(Error::Dimension(format!(
            "phase point over {} modes applied to a {}-mode vector",
            v.n_modes(),
            x.n_modes()
        )));
    }
    let string = MajoranaString::new(*v);
    let mut out = vec![Complex64::new(0.0, 0.0); x.amplitudes.len()];
    for (b, a) in x.amplitudes.iter().enumerate() {
        let (target, e) = string.act_on_basis(b as u64);
        out[target as usize] += I_POWERS[e as usize] * a;
    }
    FockVector::new(out)
}

fn expectation(support: &[(u64, Complex64)], x: &FockVector, string: &MajoranaString) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(b, a) in support {
        let (target, e) = string.act_on_basis(b);
        let bra = x.amplitudes[target as usize];
        if bra.norm_sqr() != 0.0 {
            acc += bra.conj() * I_POWERS[e as usize] * a;
        }
    }
    acc
}

fn real_part(value: Complex64, v: &PhasePoint) -> Result<f64> {
    if value.im.abs() > IMAGINARY_TOLERANCE {
        return Err(Error::Consistency(format!(
            "Wigner value at v={:#b} has imaginary part {:e}",
            v.bits(),
            value.im
        )));
    }
    Ok(value.re)
}

/// W(v) = <x|M_v|x>.
pub fn wigner_value(x: &FockVector, v: &PhasePoint) -> Result<f64> {
    if v.n_modes() != x.n_modes() {
        return Err(Error::Dimension("phase point and state mode counts differ".into()));
    }
    real_part(expectation(&x.support(), x, &MajoranaString::new(*v)), v)
}

/// Wigner values at every phase point, indexed by the integer value of `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerSpectrum {
    values: Vec<f64>,
    n_modes: usize,
}

impl WignerSpectrum {
    pub fn from_values(values: Vec<f64>, n_modes: usize) -> Result<Self> {
        if values.len() != 1usize << (2 * n_modes) {
            return Err(Error::Dimension(format!(
                "{} values for {n_modes} modes",
                values.len()
            )));
        }
        Ok(Self { values, n_modes })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Fock-space dimension 2^n, the normalization of all magic measures.
    pub fn dimension(&self) -> f64 {
        (1u64 << self.n_modes) as f64
    }

    /// Sum of W(v)^2; equals 2^n for a normalized pure state.
    pub fn purity_sum(&self) -> f64 {
        self.values.iter().map(|w| w * w).sum()
    }

    /// Index of the all-ones phase point (the fermion parity string).
    pub fn parity_index(&self) -> usize {
        self.values.len() - 1
    }
}

pub fn wigner_spectrum(x: &FockVector) -> Result<WignerSpectrum> {
    wigner_spectrum_with(x, Execution::default())
}

pub fn wigner_spectrum_with(x: &FockVector, exec: Execution) -> Result<WignerSpectrum> {
    let n = x.n_modes();
    if n > MAX_ENUMERATED_MODES {
        return Err(Error::Capacity(format!(
            "{n} modes exceed the exhaustive limit of {MAX_ENUMERATED_MODES}; \
             estimate the norms by sampling Majorana strings instead"
        )));
    }
    let support = x.support();
    let count = 1usize << (2 * n);
    let raw = exec.map(count, |v| {
        let point = PhasePoint { bits: v as u64, n_modes: n };
        let value = expectation(&support, x, &MajoranaString::new(point));
        real_part(value, &point)
    });
    let values = raw.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(WignerSpectrum { values, n_modes: n })
}

/// (sum |W|^p)^(1/p); no root is taken for p = 1.
pub fn lp_norm(w: &WignerSpectrum, p: f64) -> Result<f64> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::Domain(format!("L^p norm needs p > 0, got {p}")));
    }
    let sum: f64 = w.values.iter().map(|x| x.abs().powf(p)).sum();
    Ok(if p == 1.0 { sum } else { sum.powf(1.0 / p) })
}
