//! Magic proxies from a Wigner spectrum: mana, stabilizer Renyi entropies and
//! their filtered variant, plus closed forms for the two-determinant state.
//!
//! All logarithms are natural. Sums are normalized by the Fock dimension 2^n,
//! under which Sum W^2 = 2^n for any pure state.

use crate::error::{Error, Result};
use crate::majorana::{lp_norm, WignerSpectrum};

/// Filtered purity below which the filtered entropy is undefined.
pub const FILTERED_PURITY_FLOOR: f64 = 1e-14;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) || alpha == 1.0 {
        return Err(Error::Domain(format!(
            "Renyi index must be positive and != 1, got {alpha}"
        )));
    }
    Ok(())
}

/// log(||W||_1 / 2^n).
pub fn mana(w: &WignerSpectrum) -> f64 {
    let l1 = lp_norm(w, 1.0).expect("p = 1 is valid");
    (l1 / w.dimension()).ln()
}

fn power_sum<'a>(values: impl Iterator<Item = &'a f64>, exponent: f64) -> f64 {
    if exponent == 4.0 {
        values.map(|x| (x * x) * (x * x)).sum()
    } else {
        values.map(|x| x.abs().powf(exponent)).sum()
    }
}

/// S_alpha = log(Sum |W|^(2 alpha) / 2^n) / (1 - alpha).
pub fn sre(w: &WignerSpectrum, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let sum = power_sum(w.values().iter(), 2.0 * alpha);
    Ok((sum / w.dimension()).ln() / (1.0 - alpha))
}

/// Like [`sre`] with the identity and parity strings removed, normalized by
/// the filtered purity instead of 2^n.
pub fn filtered_sre(w: &WignerSpectrum, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let (num, den) = filtered_sums(w, alpha);
    if den < FILTERED_PURITY_FLOOR {
        return Err(Error::Degenerate(format!(
            "filtered purity {den:e} leaves nothing to normalize"
        )));
    }
    Ok((num / den).ln() / (1.0 - alpha))
}

fn filtered_sums(w: &WignerSpectrum, alpha: f64) -> (f64, f64) {
    let parity = w.parity_index();
    let interior = &w.values()[1..parity];
    (
        power_sum(interior.iter(), 2.0 * alpha),
        interior.iter().map(|x| x * x).sum(),
    )
}

/// -log(1 - sin^2(4 theta) / 4).
pub fn analytic_s2_theta(theta: f64) -> f64 {
    -(1.0 - (4.0 * theta).sin().powi(2) / 4.0).ln()
}

/// log((1 + |cos 2 theta| + |sin 2 theta|) / 2).
pub fn analytic_mana_theta(theta: f64) -> f64 {
    ((1.0 + (2.0 * theta).cos().abs() + (2.0 * theta).sin().abs()) / 2.0).ln()
}

/// -log(1 - (2/7) sin^2(4 theta)): filtered S_2 of the two-determinant state,
/// by the same string counting with identity and parity removed.
pub fn analytic_fs2_theta(theta: f64) -> f64 {
    -(1.0 - 2.0 / 7.0 * (4.0 * theta).sin().powi(2)).ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRecord {
    pub alpha: f64,
    /// Sum |W|^(2 alpha) over all phase points.
    pub power_sum: f64,
    pub filtered_power_sum: f64,
    pub filtered_purity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagicReport {
    pub mana: f64,
    /// (alpha, S_alpha) pairs in the order requested.
    pub sre: Vec<(f64, f64)>,
    pub filtered_sre: Vec<(f64, f64)>,
    pub l1_norm: f64,
    pub norms: Vec<NormRecord>,
    pub n_modes: usize,
}

impl MagicReport {
    pub fn compute(w: &WignerSpectrum, alphas: &[f64]) -> Result<Self> {
        let mut report = MagicReport {
            mana: mana(w),
            sre: Vec::with_capacity(alphas.len()),
            filtered_sre: Vec::with_capacity(alphas.len()),
            l1_norm: lp_norm(w, 1.0)?,
            norms: Vec::with_capacity(alphas.len()),
            n_modes: w.n_modes(),
        };
        for &alpha in alphas {
            report.sre.push((alpha, sre(w, alpha)?));
            report.filtered_sre.push((alpha, filtered_sre(w, alpha)?));
            let (fnum, fden) = filtered_sums(w, alpha);
            report.norms.push(NormRecord {
                alpha,
                power_sum: power_sum(w.values().iter(), 2.0 * alpha),
                filtered_power_sum: fnum,
                filtered_purity: fden,
            });
        }
        Ok(report)
    }

    pub fn sre_at(&self, alpha: f64) -> Option<f64> {
        self.sre.iter().find(|(a, _)| *a == alpha).map(|(_, s)| *s)
    }

    pub fn filtered_sre_at(&self, alpha: f64) -> Option<f64> {
        self.filtered_sre.iter().find(|(a, _)| *a == alpha).map(|(_, s)| *s)
    }
}
