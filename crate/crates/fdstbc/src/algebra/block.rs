//! The block matrix M built from (A0, A1), its explicit inverse and the check that
//! det(M) is fixed by τ.

use super::numfield::{KElem, NumberFieldCtx};
use super::quaternion::{
    mat2_add, mat2_identity, mat2_inv, mat2_mul, mat2_scale, mat2_upsilon, mat2_zero, AlgElem,
    Mat2,
};
use crate::error::{Error, Result};
use crate::linalg::{det, CMatrix};
use num_complex::Complex64;

/// Exact square matrix over K, row-major.
pub type ExactMatrix = Vec<Vec<KElem>>;

/// Place 2×2 blocks into a 2n×2n matrix; `blocks[r][c]` is `None` for zero blocks.
fn assemble(ctx: &NumberFieldCtx, blocks: &[Vec<Option<Mat2>>]) -> ExactMatrix {
    let n = blocks.len();
    let mut m = vec![vec![ctx.zero(); 2 * n]; 2 * n];
    for (br, row) in blocks.iter().enumerate() {
        for (bc, blk) in row.iter().enumerate() {
            if let Some(b) = blk {
                for i in 0..2 {
                    for j in 0..2 {
                        m[2 * br + i][2 * bc + j] = b[i][j].clone();
                    }
                }
            }
        }
    }
    m
}

/// M with diagonal blocks Υ^l(A0), sub-diagonal blocks Υ^l(A1) and top-right block
/// γ_M·Υ^{n−1}(A1).
pub fn structured_matrix(ctx: &NumberFieldCtx, a0: &AlgElem, a1: &AlgElem) -> ExactMatrix {
    let n = ctx.n;
    let m0 = a0.matrix();
    let m1 = a1.matrix();
    let mut blocks: Vec<Vec<Option<Mat2>>> = vec![vec![None; n]; n];
    for l in 0..n {
        blocks[l][l] = Some(mat2_upsilon(&m0, l, ctx));
        let u1 = mat2_upsilon(&m1, l, ctx);
        if l + 1 < n {
            blocks[l + 1][l] = Some(u1);
        } else {
            blocks[0][n - 1] = Some(mat2_scale(&u1, &ctx.gamma_m));
        }
    }
    assemble(ctx, &blocks)
}

pub fn embed_matrix(ctx: &NumberFieldCtx, m: &ExactMatrix) -> CMatrix {
    CMatrix::from_fn(m.len(), m[0].len(), |r, c| ctx.embed(&m[r][c]))
}

/// Entrywise τ^k.
pub fn upsilon_matrix(ctx: &NumberFieldCtx, m: &ExactMatrix, k: usize) -> ExactMatrix {
    m.iter().map(|row| row.iter().map(|e| ctx.tau_pow(e, k)).collect()).collect()
}

/// Exact 2×2 blocks B_0, …, B_{n−1} of the inverse of M.
pub fn inverse_blocks(ctx: &NumberFieldCtx, a0: &AlgElem, a1: &AlgElem) -> Result<Vec<Mat2>> {
    let n = ctx.n;
    if a0.is_zero() && a1.is_zero() {
        return Err(Error::SingularInput);
    }
    let m0 = a0.matrix();
    let m1 = a1.matrix();
    if a1.is_zero() {
        let mut out = vec![mat2_zero(ctx); n];
        out[0] = mat2_inv(&m0, ctx).ok_or(Error::SingularInput)?;
        return Ok(out);
    }
    let m1_inv = mat2_inv(&m1, ctx).ok_or(Error::SingularInput)?;
    let a0p = mat2_mul(&m0, &m1_inv, ctx);
    let conj: Vec<Mat2> = (0..n).map(|k| mat2_upsilon(&a0p, k, ctx)).collect();
    let mut prod = mat2_identity(ctx);
    for c in &conj {
        prod = mat2_mul(&prod, c, ctx);
    }
    if (n - 1) % 2 == 1 {
        prod = mat2_scale(&prod, &crate::algebra::lfield::LElem::from_ints(-1, 0, ctx.kind));
    }
    let gamma_i = mat2_scale(&mat2_identity(ctx), &ctx.gamma_m);
    let b_last = mat2_inv(&mat2_add(&prod, &gamma_i), ctx).ok_or(Error::SingularInput)?;
    let minus = crate::algebra::lfield::LElem::from_ints(-1, 0, ctx.kind);
    let mut primes = vec![mat2_zero(ctx); n];
    let mut tail = mat2_identity(ctx);
    for k in 1..=n {
        if k > 1 {
            tail = mat2_mul(&conj[n - k + 1], &tail, ctx);
        }
        let mut v = mat2_mul(&tail, &b_last, ctx);
        if (k - 1) % 2 == 1 {
            v = mat2_scale(&v, &minus);
        }
        primes[n - k] = v;
    }
    primes
        .iter()
        .enumerate()
        .map(|(i, bp)| {
            let u = mat2_inv(&mat2_upsilon(&m1, i, ctx), ctx).ok_or(Error::SingularInput)?;
            Ok(mat2_mul(&u, bp, ctx))
        })
        .collect()
}

/// Exact inverse of M: block (r, c) is Υ^c(B_{r−c}) for r ≥ c and γ_M·Υ^c(B_{n+r−c}) above
/// the diagonal.
pub fn block_inverse_exact(ctx: &NumberFieldCtx, a0: &AlgElem, a1: &AlgElem) -> Result<ExactMatrix> {
    let n = ctx.n;
    let b = inverse_blocks(ctx, a0, a1)?;
    let mut blocks: Vec<Vec<Option<Mat2>>> = vec![vec![None; n]; n];
    for r in 0..n {
        for c in 0..n {
            let blk = if r >= c {
                mat2_upsilon(&b[r - c], c, ctx)
            } else {
                mat2_scale(&mat2_upsilon(&b[n + r - c], c, ctx), &ctx.gamma_m)
            };
            blocks[r][c] = Some(blk);
        }
    }
    Ok(assemble(ctx, &blocks))
}

/// Numeric inverse of M assembled from the exact blocks.
pub fn block_inverse(ctx: &NumberFieldCtx, a0: &AlgElem, a1: &AlgElem) -> Result<CMatrix> {
    Ok(embed_matrix(ctx, &block_inverse_exact(ctx, a0, a1)?))
}

/// |det(Υ(M)) − det(M)| evaluated numerically.
pub fn det_in_l_check(ctx: &NumberFieldCtx, m: &ExactMatrix) -> f64 {
    let d0 = det(&embed_matrix(ctx, m));
    let d1 = det(&embed_matrix(ctx, &upsilon_matrix(ctx, m, 1)));
    (d1 - d0).norm()
}

/// Exact determinant over K by Gaussian elimination, skipping structural zeros.
pub fn det_exact(ctx: &NumberFieldCtx, m: &ExactMatrix) -> KElem {
    let n = m.len();
    let mut a: Vec<Vec<KElem>> = m.clone();
    let mut det = ctx.one();
    let mut negate = false;
    for c in 0..n {
        // pick the nonzero pivot with the smallest coordinate height
        let mut piv: Option<usize> = None;
        for r in c..n {
            if !a[r][c].is_zero()
                && piv.is_none_or(|p| a[r][c].height_bits() < a[p][c].height_bits())
            {
                piv = Some(r);
            }
        }
        let Some(p) = piv else {
            return ctx.zero();
        };
        if p != c {
            a.swap(p, c);
            negate = !negate;
        }
        let pinv = ctx.inv(&a[c][c]).expect("nonzero pivot");
        det = ctx.mul(&det, &a[c][c]);
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = ctx.mul(&a[r][c], &pinv);
            let (top, bottom) = a.split_at_mut(r);
            let (pivot, row) = (&top[c], &mut bottom[0]);
            for (x, p) in row.iter_mut().zip(pivot).skip(c + 1) {
                if !p.is_zero() {
                    *x = x.sub(&ctx.mul(&f, p));
                }
            }
            a[r][c] = ctx.zero();
        }
    }
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Largest entrywise |M·M_inv − I|.
pub fn inverse_residual(m: &CMatrix, m_inv: &CMatrix) -> f64 {
    let p = m * m_inv;
    let n = p.nrows();
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            let target = if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((p[(r, c)] - target).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::numfield::FieldId;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_inverse() {
        let ctx = NumberFieldCtx::new(FieldId::F6x2);
        let inv = block_inverse(&ctx, &AlgElem::one(&ctx), &AlgElem::zero(&ctx)).unwrap();
        assert!(inverse_residual(&CMatrix::identity(6, 6), &inv) < 1e-15);
        assert_eq!(
            block_inverse(&ctx, &AlgElem::zero(&ctx), &AlgElem::zero(&ctx)),
            Err(Error::SingularInput)
        );
    }

    #[test]
    fn random_block_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for id in FieldId::ALL {
            let ctx = NumberFieldCtx::new(id);
            for _ in 0..5 {
                let a0 = AlgElem::random(&ctx, &mut rng, 2);
                let a1 = AlgElem::random(&ctx, &mut rng, 2);
                let m = structured_matrix(&ctx, &a0, &a1);
                let mi = block_inverse(&ctx, &a0, &a1).unwrap();
                assert!(inverse_residual(&embed_matrix(&ctx, &m), &mi) < 1e-9, "{id:?}");
                let d = det_exact(&ctx, &m);
                assert!(d.in_base_field(), "{id:?}");
                let dn = det(&embed_matrix(&ctx, &m));
                assert!((ctx.embed(&d) - dn).norm() < 1e-8 * (1.0 + dn.norm()));
                assert!(det_in_l_check(&ctx, &m) < 1e-9 * (1.0 + dn.norm()));
            }
        }
    }

    #[test]
    fn diagonal_case() {
        let ctx = NumberFieldCtx::new(FieldId::F4x2);
        let a0 = AlgElem::new(ctx.from_poly(&[(1, 1), (0, -1)]), ctx.zero());
        let m = structured_matrix(&ctx, &a0, &AlgElem::zero(&ctx));
        assert!(det_in_l_check(&ctx, &m) < 1e-12);
        let inv = block_inverse_exact(&ctx, &a0, &AlgElem::zero(&ctx)).unwrap();
        let expected = a0.inv(&ctx).unwrap().matrix();
        assert_eq!(inv[0][0], expected[0][0]);
        assert_eq!(inv[3][3], ctx.tau(&expected[1][1]));
        assert!(inv[2][0].is_zero());
    }
}
