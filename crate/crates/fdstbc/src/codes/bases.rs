//! Integral bases {θ_1, …, θ_n} of K over L used to spread symbols over the field.

use crate::algebra::{FieldId, KElem, LElem, NumberFieldCtx};

/// 2cos(2πk/m)-type values as polynomials in θ = 2cos(2π/m): D_0 = 2, D_1 = θ,
/// D_{k+1} = θ·D_k − D_{k−1}.
pub fn chebyshev_sums(ctx: &NumberFieldCtx, count: usize) -> Vec<KElem> {
    let two = ctx.from_poly(&[(2, 0)]);
    let mut out = vec![two, ctx.theta()];
    while out.len() < count {
        let k = out.len();
        let next = ctx.mul(&ctx.theta(), &out[k - 1]).sub(&out[k - 2]);
        out.push(next);
    }
    out.truncate(count);
    out
}

pub fn basis(ctx: &NumberFieldCtx) -> Vec<KElem> {
    match ctx.id {
        FieldId::F4x2 => {
            let alpha = ctx.from_poly(&[(1, 1), (0, -1)]);
            vec![alpha.clone(), ctx.mul(&alpha, &ctx.theta())]
        }
        FieldId::F6x2 => vec![
            ctx.from_poly(&[(1, 1), (1, 0)]),
            ctx.from_poly(&[(-1, -2), (0, 0), (0, 1)]),
            ctx.from_poly(&[(-1, -2), (1, 1), (1, 1)]),
        ],
        FieldId::F8x2 => {
            let alpha = ctx.from_poly(&[(1, -3), (0, 0), (0, 1)]);
            [
                ctx.from_poly(&[(1, 0)]),
                ctx.from_poly(&[(0, 0), (1, 0)]),
                ctx.from_poly(&[(0, 0), (-3, 0), (0, 0), (1, 0)]),
                ctx.from_poly(&[(-1, 0), (-3, 0), (1, 0), (1, 0)]),
            ]
            .iter()
            .map(|p| ctx.mul(&alpha, p))
            .collect()
        }
        FieldId::F12x2 => {
            // θ = 2cos(π/14) = 2cos(2π/28); the basis is
            // {D_1, D_2 − 1 − ω, D_6 − 1 − ω, D_10 − 1 − ω, D_3, D_5}.
            let d = chebyshev_sums(ctx, 11);
            let shift = ctx.from_l(&LElem::from_ints(1, 1, ctx.kind));
            vec![
                d[1].clone(),
                d[2].sub(&shift),
                d[6].sub(&shift),
                d[10].sub(&shift),
                d[3].clone(),
                d[5].clone(),
            ]
        }
    }
}

/// Numeric matrix with entry (k, j) = τ^k(θ_j).
pub fn conjugate_matrix(ctx: &NumberFieldCtx) -> Vec<Vec<num_complex::Complex64>> {
    let b = basis(ctx);
    (0..ctx.n)
        .map(|k| b.iter().map(|e| ctx.embed_conjugate(e, k)).collect())
        .collect()
}
