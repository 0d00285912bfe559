//! Hydrogen s-type basis sets and their text format.
//!
//! A basis file holds `#` comment lines, a header `H <n_shells>`, and per
//! shell a line `shell <n_prim>` followed by `n_prim` lines of
//! `<exponent> <coefficient>`. Coefficients multiply unit-normalized primitives.

use std::fmt;
use std::str::FromStr;

use super::primitive::{overlap_s, Point};
use crate::error::{Error, Result};

const STO_3G: &str = include_str!("../../data/sto-3g.basis");
const SIX_31G: &str = include_str!("../../data/6-31g.basis");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPrimitive {
    pub exponent: f64,
    pub coefficient: f64,
}

impl GaussianPrimitive {
    pub fn new(exponent: f64, coefficient: f64) -> Result<Self> {
        if !(exponent.is_finite() && exponent > 0.0) {
            return Err(Error::Domain(format!("primitive exponent must be > 0, got {exponent}")));
        }
        if !coefficient.is_finite() {
            return Err(Error::Domain("primitive coefficient must be finite".into()));
        }
        Ok(Self {
            exponent,
            coefficient,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisName {
    Sto3g,
    Six31g,
}

impl BasisName {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisName::Sto3g => "sto-3g",
            BasisName::Six31g => "6-31g",
        }
    }
}

impl fmt::Display for BasisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sto-3g" | "sto3g" => Ok(BasisName::Sto3g),
            "6-31g" | "631g" => Ok(BasisName::Six31g),
            other => Err(Error::Config(format!(
                "unknown basis '{other}' (expected sto-3g or 6-31g)"
            ))),
        }
    }
}

/// Contraction tables for one hydrogen atom.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    pub name: String,
    pub shells: Vec<Vec<GaussianPrimitive>>,
}

impl BasisSet {
    pub fn builtin(name: BasisName) -> Self {
        let text = match name {
            BasisName::Sto3g => STO_3G,
            BasisName::Six31g => SIX_31G,
        };
        Self::parse(name.as_str(), text).expect("embedded basis data is well-formed")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::builtin(name.parse()?))
    }

    pub fn functions_per_atom(&self) -> usize {
        self.shells.len()
    }

    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, message: &str| Error::BasisParse {
            line,
            message: message.to_string(),
        };

        let (line, header) = lines.next().ok_or_else(|| err(0, "empty basis file"))?;
        let n_shells = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["H", n] => n.parse::<usize>().map_err(|_| err(line, "bad shell count"))?,
            _ => return Err(err(line, "expected `H <n_shells>`")),
        };

        let mut shells = Vec::with_capacity(n_shells);
        for _ in 0..n_shells {
            let (line, shell) = lines.next().ok_or_else(|| err(line, "missing shell"))?;
            let n_prim = match shell.split_whitespace().collect::<Vec<_>>()[..] {
                ["shell", n] => n.parse::<usize>().map_err(|_| err(line, "bad primitive count"))?,
                _ => return Err(err(line, "expected `shell <n_prim>`")),
            };
            if n_prim == 0 {
                return Err(err(line, "shell without primitives"));
            }
            let mut prims = Vec::with_capacity(n_prim);
            for _ in 0..n_prim {
                let (line, pair) = lines.next().ok_or_else(|| err(line, "missing primitive"))?;
                let nums = pair
                    .split_whitespace()
                    .map(f64::from_str)
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err(line, "non-numeric primitive"))?;
                let [exponent, coefficient] = nums[..] else {
                    return Err(err(line, "expected `<exponent> <coefficient>`"));
                };
                prims.push(
                    GaussianPrimitive::new(exponent, coefficient)
                        .map_err(|e| err(line, &e.to_string()))?,
                );
            }
            shells.push(prims);
        }
        if let Some((line, _)) = lines.next() {
            return Err(err(line, "trailing content"));
        }
        Ok(BasisSet {
            name: name.to_string(),
            shells,
        })
    }
}

/// A contracted s function with coefficients rescaled to unit self-overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractedShell {
    pub center: Point,
    pub primitives: Vec<GaussianPrimitive>,
}

impl ContractedShell {
    pub fn new(center: Point, primitives: &[GaussianPrimitive]) -> Result<Self> {
        if primitives.is_empty() {
            return Err(Error::Domain("contracted shell needs a primitive".into()));
        }
        let mut shell = ContractedShell {
            center,
            primitives: primitives.to_vec(),
        };
        let norm = shell.self_overlap()?.sqrt();
        for p in &mut shell.primitives {
            p.coefficient /= norm;
        }
        Ok(shell)
    }

    pub fn self_overlap(&self) -> Result<f64> {
        let mut s = 0.0;
        for p in &self.primitives {
            for q in &self.primitives {
                s += p.coefficient
                    * q.coefficient
                    * overlap_s(p.exponent, &self.center, q.exponent, &self.center)?;
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_sets_have_expected_shell_counts() {
        assert_eq!(BasisSet::builtin(BasisName::Sto3g).functions_per_atom(), 1);
        assert_eq!(BasisSet::builtin(BasisName::Six31g).functions_per_atom(), 2);
        let b = BasisSet::by_name("6-31G").unwrap();
        assert_eq!(b.shells[0].len(), 3);
        assert_eq!(b.shells[1][0].exponent, 0.1612778);
    }

    #[test]
    fn unknown_basis_is_config_error() {
        assert!(matches!(BasisSet::by_name("cc-pvdz"), Err(Error::Config(_))));
    }

    #[test]
    fn contracted_shell_is_normalized() {
        for name in [BasisName::Sto3g, BasisName::Six31g] {
            for prims in BasisSet::builtin(name).shells {
                let shell = ContractedShell::new(Point::new(0.3, -1.0, 2.0), &prims).unwrap();
                assert!((shell.self_overlap().unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "H 1\nshell 2\n1.0 0.5\n";
        assert!(matches!(BasisSet::parse("x", bad), Err(Error::BasisParse { .. })));
        let bad = "# c\nH 1\nshell 1\n-1.0 0.5\n";
        match BasisSet::parse("x", bad) {
            Err(Error::BasisParse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(BasisSet::parse("x", "H 1\nshell 1\n1.0 1.0\nextra\n").is_err());
        assert!(BasisSet::parse("x", "He 1\n").is_err());
    }
}
