//! Small dense complex helpers shared by the code, analysis and decoder modules.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Determinant of the row-major `n × n` matrix in `a`, destroying it (partial pivoting).
pub fn det_in_place(a: &mut [Complex64], n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let mut p = c;
        let mut best = a[c * n + c].norm_sqr();
        for r in c + 1..n {
            let v = a[r * n + c].norm_sqr();
            if v > best {
                best = v;
                p = r;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            for k in c..n {
                a.swap(p * n + k, c * n + k);
            }
            det = -det;
        }
        let piv = a[c * n + c];
        det *= piv;
        let inv = piv.inv();
        for r in c + 1..n {
            let f = a[r * n + c] * inv;
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for k in c + 1..n {
                let v = a[c * n + k];
                a[r * n + k] -= f * v;
            }
        }
    }
    det
}

pub fn det(m: &CMatrix) -> Complex64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    let mut buf: Vec<Complex64> = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            buf.push(m[(r, c)]);
        }
    }
    det_in_place(&mut buf, n)
}

/// Largest entrywise modulus of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Squared Frobenius norm.
pub fn frob_sq(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Numerical rank with singular values below `rel_tol · σ_max` treated as zero.
pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_matches_nalgebra() {
        let m = CMatrix::from_fn(5, 5, |r, c| {
            Complex64::new(((r * 7 + c * 3) % 5) as f64 - 2.0, ((r + 2 * c) % 3) as f64 - 1.0)
        });
        let d = det(&m);
        let reference = m.clone().determinant();
        assert!((d - reference).norm() < 1e-9 * (1.0 + reference.norm()));
    }

    #[test]
    fn rank_of_zero_is_zero() {
        assert_eq!(numerical_rank(&DMatrix::zeros(4, 3), 1e-9), 0);
        assert_eq!(numerical_rank(&DMatrix::identity(4, 3), 1e-9), 3);
    }
}
