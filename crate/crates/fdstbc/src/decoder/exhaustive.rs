//! Exhaustive ML decoding by depth-first enumeration over a triangularised model.

use super::model::{symbols_from_levels, RealModel};
use super::DecodeResult;
use crate::codes::{CodeDescriptor, Constellation};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

pub const EXHAUSTIVE_DECODE_CAP: f64 = 1e8;
pub(crate) const TIE_TOL: f64 = 1e-12;

struct Tree {
    n: usize,
    /// tri[e][d] for d ≤ e: coefficient of coordinate d in row e.
    tri: Vec<Vec<f64>>,
    z: Vec<f64>,
    pam: Vec<f64>,
    /// sigma[d][e] = Σ_{d' < d} tri[e][d']·x_{d'} for e ≥ d.
    sigma: Vec<Vec<f64>>,
    levels: Vec<usize>,
    best_levels: Vec<usize>,
    best: f64,
    leaves: u64,
}

impl Tree {
    fn run(&mut self, d: usize, partial: f64) {
        let last = d + 1 == self.n;
        for li in 0..self.pam.len() {
            let x = self.pam[li];
            let r = self.z[d] - self.sigma[d][d] - self.tri[d][d] * x;
            let p = partial + r * r;
            self.levels[d] = li;
            if last {
                self.leaves += 1;
                if !self.best.is_finite() || p < self.best - TIE_TOL * self.best.abs() {
                    self.best = p;
                    self.best_levels.copy_from_slice(&self.levels);
                }
            } else {
                let (head, tail) = self.sigma.split_at_mut(d + 1);
                let (cur, next) = (&head[d], &mut tail[0]);
                for e in d + 1..self.n {
                    next[e] = cur[e] + self.tri[e][d] * x;
                }
                self.run(d + 1, p);
            }
        }
    }
}

/// Global ML minimum over all M^k symbol vectors; ties resolve to the lexicographically
/// smallest symbol-index vector.
pub fn ml_exhaustive(
    desc: &CodeDescriptor,
    constellation: &Constellation,
    y: &CMatrix,
    h: &CMatrix,
    rho: f64,
) -> Result<DecodeResult> {
    let size = (constellation.m as f64).powi(desc.k as i32);
    if size > EXHAUSTIVE_DECODE_CAP {
        return Err(Error::TooLarge { size, cap: EXHAUSTIVE_DECODE_CAP });
    }
    let model = RealModel::new(desc, constellation, y, h, rho)?;
    let n = desc.real_dim();
    if model.b.nrows() < n {
        return Err(Error::DimMismatch(format!(
            "{} real observations for {} unknowns",
            model.b.nrows(),
            n
        )));
    }
    // Reversing the columns makes coordinate 0 the root of the triangular recursion.
    let mut rev = model.b.clone();
    for j in 0..n {
        rev.set_column(j, &model.b.column(n - 1 - j));
    }
    let qr = rev.qr();
    let q = qr.q();
    let r = qr.r();
    let qy = q.transpose() * &model.y;
    let offset = model.y.norm_squared() - qy.norm_squared();
    let tri = (0..n)
        .map(|e| (0..=e).map(|d| r[(n - 1 - e, n - 1 - d)]).collect())
        .collect();
    let z = (0..n).map(|e| qy[n - 1 - e]).collect();
    let mut tree = Tree {
        n,
        tri,
        z,
        pam: constellation.pam.clone(),
        sigma: vec![vec![0.0; n]; n],
        levels: vec![0; n],
        best_levels: vec![0; n],
        best: f64::INFINITY,
        leaves: 0,
    };
    tree.run(0, offset.max(0.0));
    let indices = symbols_from_levels(constellation, &tree.best_levels);
    DecodeResult::finish(desc, constellation, y, h, rho, indices, tree.leaves, 0)
}
