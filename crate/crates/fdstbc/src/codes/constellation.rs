//! Square QAM and HEX signal sets built from a √M-PAM alphabet.

use crate::algebra::LKind;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ConstellationKind {
    Qam,
    Hex,
}

impl ConstellationKind {
    pub fn lattice(self) -> LKind {
        match self {
            ConstellationKind::Qam => LKind::Gaussian,
            ConstellationKind::Hex => LKind::Eisenstein,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstellationKind::Qam => "QAM",
            ConstellationKind::Hex => "HEX",
        }
    }
}

/// Point `idx` is `pam[idx / √M] + β·pam[idx % √M]` with β = i (QAM) or ω (HEX).
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub kind: ConstellationKind,
    pub m: usize,
    pub pam: Vec<f64>,
    pub points: Vec<Complex64>,
    pub avg_energy: f64,
}

impl Constellation {
    pub fn new(kind: ConstellationKind, m: usize) -> Result<Self> {
        let side = (m as f64).sqrt().round() as usize;
        if side < 2 || side * side != m || !side.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("constellation size {m} is not a power of 4")));
        }
        let pam: Vec<f64> = (0..side).map(|i| 2.0 * i as f64 - (side as f64 - 1.0)).collect();
        let beta = kind.lattice().generator();
        let points: Vec<Complex64> = (0..m)
            .map(|idx| Complex64::new(pam[idx / side], 0.0) + beta * pam[idx % side])
            .collect();
        let avg_energy = points.iter().map(|p| p.norm_sqr()).sum::<f64>() / m as f64;
        Ok(Constellation { kind, m, pam, points, avg_energy })
    }

    pub fn qam(m: usize) -> Result<Self> {
        Self::new(ConstellationKind::Qam, m)
    }

    pub fn hex(m: usize) -> Result<Self> {
        Self::new(ConstellationKind::Hex, m)
    }

    /// √M, the number of PAM levels per real coordinate.
    pub fn side(&self) -> usize {
        self.pam.len()
    }

    /// Real coordinates (s̄, š) of `s = s̄ + β·š`.
    pub fn real_coords(kind: ConstellationKind, s: Complex64) -> (f64, f64) {
        match kind {
            ConstellationKind::Qam => (s.re, s.im),
            ConstellationKind::Hex => {
                let check = s.im / (3f64.sqrt() / 2.0);
                (s.re + check / 2.0, check)
            }
        }
    }

    pub fn from_real_coords(kind: ConstellationKind, bar: f64, check: f64) -> Complex64 {
        Complex64::new(bar, 0.0) + kind.lattice().generator() * check
    }

    /// PAM level indices of a point index.
    pub fn level_indices(&self, idx: usize) -> (usize, usize) {
        (idx / self.side(), idx % self.side())
    }

    pub fn index_of_levels(&self, a: usize, b: usize) -> usize {
        a * self.side() + b
    }

    /// Index of the point nearest to `s` (exact match for constellation points).
    pub fn nearest(&self, s: Complex64) -> usize {
        let mut best = 0;
        let mut bd = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            let d = (p - s).norm_sqr();
            if d < bd {
                bd = d;
                best = i;
            }
        }
        best
    }

    /// Nearest PAM level index to `x`, clamped to the alphabet.
    pub fn round_to_level(&self, x: f64) -> usize {
        let side = self.side() as f64;
        let k = ((x + side - 1.0) / 2.0).round();
        k.clamp(0.0, side - 1.0) as usize
    }

    pub fn label(&self) -> String {
        format!("{}-{}", self.m, self.kind.name())
    }
}

impl fmt::Display for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies() {
        assert!((Constellation::qam(4).unwrap().avg_energy - 2.0).abs() < 1e-12);
        assert!((Constellation::hex(4).unwrap().avg_energy - 2.0).abs() < 1e-12);
        assert!((Constellation::qam(16).unwrap().avg_energy - 10.0).abs() < 1e-12);
        assert!((Constellation::hex(16).unwrap().avg_energy - 10.0).abs() < 1e-12);
        assert!((Constellation::qam(64).unwrap().avg_energy - 42.0).abs() < 1e-12);
        assert!(Constellation::qam(8).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        for c in [Constellation::qam(16).unwrap(), Constellation::hex(16).unwrap()] {
            for (idx, &p) in c.points.iter().enumerate() {
                let (bar, check) = Constellation::real_coords(c.kind, p);
                let (a, b) = c.level_indices(idx);
                assert!((bar - c.pam[a]).abs() < 1e-12 && (check - c.pam[b]).abs() < 1e-12);
                assert_eq!(c.nearest(p), idx);
                assert_eq!(c.round_to_level(bar + 0.3), a);
            }
        }
    }

    #[test]
    fn rounding_clamps() {
        let c = Constellation::qam(16).unwrap();
        assert_eq!(c.round_to_level(100.0), 3);
        assert_eq!(c.round_to_level(-100.0), 0);
        assert_eq!(c.round_to_level(0.1), 2);
    }
}
