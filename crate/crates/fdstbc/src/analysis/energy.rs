//! Monte Carlo transmit energy of normalized codewords.

use crate::codes::{CodeDescriptor, Constellation};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub trials: u64,
    /// Mean ‖S‖²_F.
    pub mean_total: f64,
    /// Mean squared norm of each time-slot column.
    pub column_means: Vec<f64>,
}

impl EnergyReport {
    /// Total within ±tol·T and each column within ±tol of 1.
    pub fn within(&self, t: usize, tol: f64) -> bool {
        (self.mean_total / t as f64 - 1.0).abs() <= tol
            && self.column_means.iter().all(|c| (c - 1.0).abs() <= tol)
    }
}

pub fn energy_check(desc: &CodeDescriptor, constellation: &Constellation, trials: u64, seed: u64) -> EnergyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols = vec![0.0; desc.t];
    for _ in 0..trials {
        let s: Vec<Complex64> =
            (0..desc.k).map(|_| constellation.points[rng.random_range(0..constellation.m)]).collect();
        let x = desc.encode(&s, Some(constellation)).expect("k symbols");
        for (c, acc) in cols.iter_mut().enumerate() {
            *acc += x.column(c).iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
    }
    let column_means: Vec<f64> = cols.iter().map(|c| c / trials as f64).collect();
    EnergyReport { trials, mean_total: column_means.iter().sum(), column_means }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_code, CodeId};

    #[test]
    fn s4_energy() {
        let q = Constellation::qam(16).unwrap();
        let r = energy_check(&build_code(CodeId::S4x2), &q, 4000, 2);
        assert!(r.within(4, 0.03), "{r:?}");
    }
}
