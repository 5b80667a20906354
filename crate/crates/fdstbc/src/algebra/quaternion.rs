//! The algebra A = (K/Q(θ), σ, −1) with elements a + j·b, its 2×2 matrix representation
//! and the map Υ that applies τ to both components.

use super::lfield::LElem;
use super::numfield::{KElem, NumberFieldCtx};
use num_complex::Complex64;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgElem {
    pub a: KElem,
    pub b: KElem,
}

/// Exact 2×2 matrix over K, row-major.
pub type Mat2 = [[KElem; 2]; 2];

impl AlgElem {
    pub fn new(a: KElem, b: KElem) -> Self {
        AlgElem { a, b }
    }

    pub fn zero(ctx: &NumberFieldCtx) -> Self {
        AlgElem::new(ctx.zero(), ctx.zero())
    }

    pub fn one(ctx: &NumberFieldCtx) -> Self {
        AlgElem::new(ctx.one(), ctx.zero())
    }

    pub fn j(ctx: &NumberFieldCtx) -> Self {
        AlgElem::new(ctx.zero(), ctx.one())
    }

    pub fn from_k(ctx: &NumberFieldCtx, a: KElem) -> Self {
        AlgElem::new(a, ctx.zero())
    }

    pub fn from_l(ctx: &NumberFieldCtx, x: &LElem) -> Self {
        AlgElem::new(ctx.from_l(x), ctx.zero())
    }

    pub fn random<R: Rng + ?Sized>(ctx: &NumberFieldCtx, rng: &mut R, bound: i64) -> Self {
        AlgElem::new(ctx.random(rng, bound), ctx.random(rng, bound))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &AlgElem) -> AlgElem {
        AlgElem::new(self.a.add(&o.a), self.b.add(&o.b))
    }

    pub fn sub(&self, o: &AlgElem) -> AlgElem {
        AlgElem::new(self.a.sub(&o.a), self.b.sub(&o.b))
    }

    pub fn neg(&self) -> AlgElem {
        AlgElem::new(self.a.neg(), self.b.neg())
    }

    /// (a + jb)(c + jd) = (ac − σ(b)d) + j(bc + σ(a)d).
    pub fn mul(&self, o: &AlgElem, ctx: &NumberFieldCtx) -> AlgElem {
        let re = ctx.mul(&self.a, &o.a).sub(&ctx.mul(&self.b.sigma(), &o.b));
        let jp = ctx.mul(&self.b, &o.a).add(&ctx.mul(&self.a.sigma(), &o.b));
        AlgElem::new(re, jp)
    }

    /// Υ(a + jb) = τ(a) + jτ(b).
    pub fn upsilon(&self, ctx: &NumberFieldCtx) -> AlgElem {
        AlgElem::new(ctx.tau(&self.a), ctx.tau(&self.b))
    }

    pub fn upsilon_pow(&self, k: usize, ctx: &NumberFieldCtx) -> AlgElem {
        AlgElem::new(ctx.tau_pow(&self.a, k), ctx.tau_pow(&self.b, k))
    }

    /// Two-sided inverse (σ(a) − jb)·ν⁻¹ with ν = aσ(a) + bσ(b).
    pub fn inv(&self, ctx: &NumberFieldCtx) -> Option<AlgElem> {
        if self.is_zero() {
            return None;
        }
        let nu = ctx
            .mul(&self.a, &self.a.sigma())
            .add(&ctx.mul(&self.b, &self.b.sigma()));
        let nu_inv = ctx.inv(&nu)?;
        Some(AlgElem::new(ctx.mul(&self.a.sigma(), &nu_inv), ctx.mul(&self.b.neg(), &nu_inv)))
    }

    /// Matrix representation [[a, −σ(b)], [b, σ(a)]].
    pub fn matrix(&self) -> Mat2 {
        [[self.a.clone(), self.b.sigma().neg()], [self.b.clone(), self.a.sigma()]]
    }

    /// Numeric matrix representation under the fixed embedding.
    pub fn embed_matrix(&self, ctx: &NumberFieldCtx) -> [[Complex64; 2]; 2] {
        mat2_embed(&self.matrix(), ctx)
    }
}

pub fn mat2_embed(m: &Mat2, ctx: &NumberFieldCtx) -> [[Complex64; 2]; 2] {
    [[ctx.embed(&m[0][0]), ctx.embed(&m[0][1])], [ctx.embed(&m[1][0]), ctx.embed(&m[1][1])]]
}

pub fn mat2_zero(ctx: &NumberFieldCtx) -> Mat2 {
    [[ctx.zero(), ctx.zero()], [ctx.zero(), ctx.zero()]]
}

pub fn mat2_identity(ctx: &NumberFieldCtx) -> Mat2 {
    [[ctx.one(), ctx.zero()], [ctx.zero(), ctx.one()]]
}

pub fn mat2_mul(x: &Mat2, y: &Mat2, ctx: &NumberFieldCtx) -> Mat2 {
    let e = |r: usize, c: usize| ctx.mul(&x[r][0], &y[0][c]).add(&ctx.mul(&x[r][1], &y[1][c]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_add(x: &Mat2, y: &Mat2) -> Mat2 {
    [
        [x[0][0].add(&y[0][0]), x[0][1].add(&y[0][1])],
        [x[1][0].add(&y[1][0]), x[1][1].add(&y[1][1])],
    ]
}

pub fn mat2_scale(x: &Mat2, c: &LElem) -> Mat2 {
    [[x[0][0].scale(c), x[0][1].scale(c)], [x[1][0].scale(c), x[1][1].scale(c)]]
}

/// Entrywise τ^k.
pub fn mat2_upsilon(x: &Mat2, k: usize, ctx: &NumberFieldCtx) -> Mat2 {
    let t = |e: &KElem| ctx.tau_pow(e, k);
    [[t(&x[0][0]), t(&x[0][1])], [t(&x[1][0]), t(&x[1][1])]]
}

pub fn mat2_inv(x: &Mat2, ctx: &NumberFieldCtx) -> Option<Mat2> {
    let det = ctx.mul(&x[0][0], &x[1][1]).sub(&ctx.mul(&x[0][1], &x[1][0]));
    let di = ctx.inv(&det)?;
    Some([
        [ctx.mul(&x[1][1], &di), ctx.mul(&x[0][1].neg(), &di)],
        [ctx.mul(&x[1][0].neg(), &di), ctx.mul(&x[0][0], &di)],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lfield::LKind;
    use crate::algebra::numfield::FieldId;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn j_squared_is_minus_one() {
        let ctx = NumberFieldCtx::new(FieldId::F4x2);
        let j = AlgElem::j(&ctx);
        assert_eq!(j.mul(&j, &ctx), AlgElem::one(&ctx).neg());
    }

    #[test]
    fn i_times_j() {
        let ctx = NumberFieldCtx::new(FieldId::F4x2);
        let i = AlgElem::from_l(&ctx, &LElem::generator(LKind::Gaussian));
        let j = AlgElem::j(&ctx);
        let expected = AlgElem::new(ctx.zero(), ctx.from_l(&LElem::from_ints(0, -1, LKind::Gaussian)));
        assert_eq!(i.mul(&j, &ctx), expected);
    }

    #[test]
    fn upsilon_examples() {
        let ctx = NumberFieldCtx::new(FieldId::F4x2);
        let t = AlgElem::from_k(&ctx, ctx.theta());
        assert_eq!(t.upsilon(&ctx), AlgElem::from_k(&ctx, ctx.from_poly(&[(1, 0), (-1, 0)])));
        let j = AlgElem::j(&ctx);
        assert_eq!(j.upsilon(&ctx), j);
    }

    #[test]
    fn algebra_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for id in FieldId::ALL {
            let ctx = NumberFieldCtx::new(id);
            for _ in 0..60 {
                let x = AlgElem::random(&ctx, &mut rng, 3);
                let y = AlgElem::random(&ctx, &mut rng, 3);
                let z = AlgElem::random(&ctx, &mut rng, 3);
                let xy = x.mul(&y, &ctx);
                assert_eq!(xy.upsilon(&ctx), x.upsilon(&ctx).mul(&y.upsilon(&ctx), &ctx));
                assert_eq!(xy.mul(&z, &ctx), x.mul(&y.mul(&z, &ctx), &ctx));
                assert_eq!(x.upsilon_pow(ctx.n, &ctx), x);
                assert_eq!(mat2_mul(&x.matrix(), &y.matrix(), &ctx), xy.matrix());
                if !x.is_zero() {
                    let xi = x.inv(&ctx).unwrap();
                    assert_eq!(x.mul(&xi, &ctx), AlgElem::one(&ctx));
                    assert_eq!(xi.mul(&x, &ctx), AlgElem::one(&ctx));
                }
            }
        }
    }
}
