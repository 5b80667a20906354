//! Real-valued form of the received signal model.

use crate::codes::{CodeDescriptor, Constellation};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// ‖Y − √ρ·H·S‖² for the energy-normalized codeword S of `s`.
pub fn ml_metric(
    desc: &CodeDescriptor,
    constellation: &Constellation,
    y: &CMatrix,
    h: &CMatrix,
    rho: f64,
    s: &[Complex64],
) -> Result<f64> {
    check_dims(desc, y, h)?;
    let x = desc.encode(s, Some(constellation))?;
    let r = y - h * x * Complex64::new(rho.sqrt(), 0.0);
    Ok(r.iter().map(|z| z.norm_sqr()).sum())
}

pub(crate) fn check_dims(desc: &CodeDescriptor, y: &CMatrix, h: &CMatrix) -> Result<()> {
    if h.ncols() != desc.n_t {
        return Err(Error::DimMismatch(format!("H has {} columns, code has {} antennas", h.ncols(), desc.n_t)));
    }
    if y.nrows() != h.nrows() || y.ncols() != desc.t {
        return Err(Error::DimMismatch(format!(
            "Y is {}x{}, expected {}x{}",
            y.nrows(),
            y.ncols(),
            h.nrows(),
            desc.t
        )));
    }
    Ok(())
}

/// Column-major real vectorisation with each entry expanded to [Re, Im].
pub fn realvec(m: &CMatrix) -> DVector<f64> {
    let mut v = DVector::zeros(2 * m.len());
    for (i, z) in m.iter().enumerate() {
        v[2 * i] = z.re;
        v[2 * i + 1] = z.im;
    }
    v
}

/// y = B·x + noise, where x holds the real symbol coordinates and column j of B is
/// √ρ·(c/√E)·realvec(H·W_j).
#[derive(Debug, Clone)]
pub struct RealModel {
    pub b: DMatrix<f64>,
    pub y: DVector<f64>,
}

impl RealModel {
    pub fn new(
        desc: &CodeDescriptor,
        constellation: &Constellation,
        y: &CMatrix,
        h: &CMatrix,
        rho: f64,
    ) -> Result<Self> {
        check_dims(desc, y, h)?;
        let gain = rho.sqrt() * desc.scale(constellation.avg_energy);
        let rows = 2 * h.nrows() * desc.t;
        let mut b = DMatrix::zeros(rows, desc.real_dim());
        for (j, w) in desc.weights.iter().enumerate() {
            let col = realvec(&(h * w)) * gain;
            b.set_column(j, &col);
        }
        Ok(RealModel { b, y: realvec(y) })
    }

    pub fn metric(&self, x: &[f64]) -> f64 {
        (&self.y - &self.b * DVector::from_column_slice(x)).norm_squared()
    }
}

/// Symbol indices from per-coordinate PAM level indices (s̄, š, s̄, š, …).
pub(crate) fn symbols_from_levels(constellation: &Constellation, levels: &[usize]) -> Vec<usize> {
    levels.chunks(2).map(|p| constellation.index_of_levels(p[0], p[1])).collect()
}
