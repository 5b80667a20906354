//! The 4×2 code built from the A, B, C, D blocks of rotated QAM symbols and its
//! factorisation through the golden-field structure.

use crate::linalg::{max_abs_diff, CMatrix};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

/// Rotation angle tan⁻¹(2)/2 applied to every QAM symbol.
pub fn rotation_angle() -> f64 {
    2f64.atan() / 2.0
}

fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// The 2×2 block [[p_I + i q_Q, −r_I + i t_Q], [r_I + i t_Q, p_I − i q_Q]].
fn quad_block(p: Complex64, q: Complex64, r: Complex64, t: Complex64) -> [[Complex64; 2]; 2] {
    let i = Complex64::i();
    [
        [p.re + i * q.im, -r.re + i * t.im],
        [r.re + i * t.im, p.re - i * q.im],
    ]
}

/// Codeword for eight (unrotated) symbols s_1..s_8.
pub fn sr_codeword(s: &[Complex64]) -> CMatrix {
    assert_eq!(s.len(), 8, "the 4x2 block code carries eight symbols");
    let rot = Complex64::from_polar(1.0, rotation_angle());
    let x: Vec<Complex64> = s.iter().map(|v| rot * v).collect();
    let a = quad_block(x[0], x[2], x[1], x[3]);
    let b = quad_block(x[4], x[6], x[5], x[7]);
    let c = quad_block(x[6], x[4], x[7], x[5]);
    let d = quad_block(x[2], x[0], x[3], x[1]);
    let e = Complex64::from_polar(1.0, FRAC_PI_4);
    let mut m = CMatrix::zeros(4, 4);
    for r in 0..2 {
        for col in 0..2 {
            m[(r, col)] = a[r][col];
            m[(r, col + 2)] = e * c[r][col];
            m[(r + 2, col)] = e * b[r][col];
            m[(r + 2, col + 2)] = d[r][col];
        }
    }
    m
}

/// f = u + θ·v as the pair (u, v).
#[derive(Clone, Copy)]
struct GoldenElem {
    u: Complex64,
    v: Complex64,
}

impl GoldenElem {
    fn value(self) -> Complex64 {
        self.u + self.v * golden()
    }
    fn tau(self) -> Complex64 {
        self.u + self.v * (1.0 - golden())
    }
    fn sigma(self) -> Complex64 {
        self.value().conj()
    }
    fn sigma_tau(self) -> Complex64 {
        self.tau().conj()
    }
}

/// S' with the golden-code-like layout of the four symbol combinations f_0..f_3.
pub fn sr_inner_matrix(s: &[Complex64]) -> CMatrix {
    let i = Complex64::i();
    let f = |a: usize, b: usize| GoldenElem {
        u: -s[a].im + i * s[b].re,
        v: s[a].re + i * s[b].im,
    };
    let f0 = f(0, 2);
    let f1 = f(1, 3);
    let f2 = f(4, 6);
    let f3 = f(5, 7);
    let rows = [
        [f0.value(), -f1.sigma(), i * f2.tau(), -i * f3.sigma_tau()],
        [f1.value(), f0.sigma(), i * f3.tau(), i * f2.sigma_tau()],
        [f2.value(), -f3.sigma(), f0.tau(), -f1.sigma_tau()],
        [f3.value(), f2.sigma(), f1.tau(), f0.sigma_tau()],
    ];
    CMatrix::from_fn(4, 4, |r, c| rows[r][c])
}

/// Right factor diag[s, s, −iθs, iθs] with s = sin θ_g.
pub fn sr_right_factor() -> CMatrix {
    let s = rotation_angle().sin();
    let t = golden() * s;
    CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Complex64::new(s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(0.0, -t),
        Complex64::new(0.0, t),
    ]))
}

/// U·S'·Uᴴ·D for the given right factor D.
pub fn sr_factored(s: &[Complex64], d: &CMatrix) -> CMatrix {
    let e = Complex64::from_polar(1.0, FRAC_PI_4);
    let one = Complex64::new(1.0, 0.0);
    let u = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![one, one, e, e]));
    &u * sr_inner_matrix(s) * u.adjoint() * d
}

/// Largest entrywise difference between the block-defined codeword and U·S'·Uᴴ·D.
pub fn sr_decompose_check(s: &[Complex64]) -> f64 {
    max_abs_diff(&sr_codeword(s), &sr_factored(s, &sr_right_factor()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    fn sample(seed: u64) -> Vec<Complex64> {
        (0..8)
            .map(|k| {
                let a = ((seed * 31 + k * 17) % 7) as f64 - 3.0;
                let b = ((seed * 13 + k * 29) % 5) as f64 - 2.0;
                Complex64::new(a, b)
            })
            .collect()
    }

    #[test]
    fn zero_and_unit_symbols() {
        assert_eq!(sr_decompose_check(&[Complex64::new(0.0, 0.0); 8]), 0.0);
        let mut s = vec![Complex64::new(0.0, 0.0); 8];
        s[0] = Complex64::new(1.0, 0.0);
        assert!(sr_decompose_check(&s) < 1e-12);
    }

    #[test]
    fn factorisation_on_integer_vectors() {
        for seed in 0..100 {
            assert!(sr_decompose_check(&sample(seed)) < 1e-12);
        }
    }

    #[test]
    fn real_diagonal_factor_does_not_reconstruct() {
        let s = rotation_angle().sin();
        let t = golden() * s;
        let literal = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(t, 0.0),
            Complex64::new(t, 0.0),
        ]));
        let x = sample(3);
        let diff = max_abs_diff(&sr_codeword(&x), &sr_factored(&x, &literal));
        assert!(diff > 1e-3);
        // both factors have the same determinant modulus
        assert!((det(&literal).norm() - det(&sr_right_factor()).norm()).abs() < 1e-12);
    }
}
