//! The relative extension K = L(θ) with θ real, its automorphisms σ (acting on L) and
//! τ (generating Gal(K/L)), and exact element arithmetic.

use super::lfield::{LElem, LKind};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FieldId {
    F4x2,
    F6x2,
    F8x2,
    F12x2,
}

impl FieldId {
    pub const ALL: [FieldId; 4] = [FieldId::F4x2, FieldId::F6x2, FieldId::F8x2, FieldId::F12x2];
}

/// Image of θ under the generator τ of Gal(K/L).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TauRule {
    /// θ ↦ 1 − θ (golden field).
    Golden1MinusTheta,
    /// θ ↦ θ² − 2, from ζ ↦ ζ² on θ = ζ + ζ⁻¹.
    ThetaSqMinus2,
    /// θ ↦ θ⁵ − 5θ³ + 5θ, from ζ ↦ ζ⁵ on θ = ζ + ζ⁻¹.
    Chebyshev5,
}

impl TauRule {
    /// Integer coefficients (low degree first) of the polynomial giving τ(θ).
    pub fn polynomial(self) -> Vec<i64> {
        match self {
            TauRule::Golden1MinusTheta => vec![1, -1],
            TauRule::ThetaSqMinus2 => vec![-2, 0, 1],
            TauRule::Chebyshev5 => vec![0, 5, 0, -5, 0, 1],
        }
    }

    pub fn apply_f64(self, x: f64) -> f64 {
        self.polynomial()
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }
}

/// Exact element of K: coordinates over {θ^r, θ^r·β} (β = i or ω) stored as integer
/// numerators over one positive common denominator, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    /// `num[2r]` is the rational part and `num[2r + 1]` the β part of the θ^r coordinate.
    num: Vec<BigInt>,
    den: BigInt,
    kind: LKind,
}

impl KElem {
    pub fn zero(kind: LKind, n: usize) -> Self {
        KElem { num: vec![BigInt::zero(); 2 * n], den: BigInt::one(), kind }
    }

    pub fn one(kind: LKind, n: usize) -> Self {
        Self::from_l(&LElem::one(kind), n)
    }

    /// θ itself.
    pub fn theta(kind: LKind, n: usize) -> Self {
        let mut e = Self::zero(kind, n);
        if n > 1 {
            e.num[2] = BigInt::one();
        }
        e
    }

    pub fn from_l(x: &LElem, n: usize) -> Self {
        let mut coeffs = vec![LElem::zero(x.kind); n];
        coeffs[0] = x.clone();
        Self::from_coeffs(&coeffs)
    }

    /// Integer coordinates: `pairs[r] = (a, b)` for the θ^r coefficient a + βb.
    pub fn from_int_pairs(pairs: &[(i64, i64)], kind: LKind) -> Self {
        let num = pairs
            .iter()
            .flat_map(|&(a, b)| [BigInt::from(a), BigInt::from(b)])
            .collect();
        KElem { num, den: BigInt::one(), kind }
    }

    pub fn from_coeffs(coeffs: &[LElem]) -> Self {
        let kind = coeffs[0].kind;
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| {
            acc.lcm(c.a.denom()).lcm(c.b.denom())
        });
        let mut num = Vec::with_capacity(2 * coeffs.len());
        for c in coeffs {
            num.push(c.a.numer() * (&den / c.a.denom()));
            num.push(c.b.numer() * (&den / c.b.denom()));
        }
        let mut e = KElem { num, den, kind };
        e.normalize();
        e
    }

    pub fn coeffs(&self) -> Vec<LElem> {
        self.num
            .chunks(2)
            .map(|p| {
                LElem::new(
                    BigRational::new(p[0].clone(), self.den.clone()),
                    BigRational::new(p[1].clone(), self.den.clone()),
                    self.kind,
                )
            })
            .collect()
    }

    pub fn kind(&self) -> LKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.num.len() / 2
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn is_integral_coords(&self) -> bool {
        self.den.is_one()
    }

    /// True when every θ^r coordinate with r ≥ 1 vanishes.
    pub fn in_base_field(&self) -> bool {
        self.num[2..].iter().all(|x| x.is_zero())
    }

    /// Constant coordinate (meaningful when `in_base_field`).
    pub fn constant(&self) -> LElem {
        self.coeffs().swap_remove(0)
    }

    /// Largest bit length among numerators and the denominator.
    pub fn height_bits(&self) -> u64 {
        self.num.iter().map(|x| x.bits()).chain([self.den.bits()]).max().unwrap_or(0)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for x in &mut self.num {
                *x = -&*x;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            self.den /= &g;
            for x in &mut self.num {
                *x /= &g;
            }
        }
    }

    fn combine(&self, o: &KElem, sign: i32) -> KElem {
        let (num, den) = if self.den == o.den {
            let num = self
                .num
                .iter()
                .zip(&o.num)
                .map(|(x, y)| if sign > 0 { x + y } else { x - y })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&o.num)
                .map(|(x, y)| {
                    let l = x * &o.den;
                    let r = y * &self.den;
                    if sign > 0 {
                        l + r
                    } else {
                        l - r
                    }
                })
                .collect();
            (num, &self.den * &o.den)
        };
        let mut e = KElem { num, den, kind: self.kind };
        e.normalize();
        e
    }

    pub fn add(&self, o: &KElem) -> KElem {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &KElem) -> KElem {
        self.combine(o, -1)
    }

    pub fn neg(&self) -> KElem {
        KElem { num: self.num.iter().map(|x| -x).collect(), den: self.den.clone(), kind: self.kind }
    }

    /// Multiply by an element of L.
    pub fn scale(&self, c: &LElem) -> KElem {
        let cden = c.a.denom().lcm(c.b.denom());
        let ca = c.a.numer() * (&cden / c.a.denom());
        let cb = c.b.numer() * (&cden / c.b.denom());
        let mut num = Vec::with_capacity(self.num.len());
        for p in self.num.chunks(2) {
            let (x, y) = l_mul(self.kind, &p[0], &p[1], &ca, &cb);
            num.push(x);
            num.push(y);
        }
        let mut e = KElem { num, den: &self.den * cden, kind: self.kind };
        e.normalize();
        e
    }

    /// σ applied to every L coordinate; θ is fixed.
    pub fn sigma(&self) -> KElem {
        let mut num = Vec::with_capacity(self.num.len());
        for p in self.num.chunks(2) {
            match self.kind {
                LKind::Gaussian => {
                    num.push(p[0].clone());
                    num.push(-&p[1]);
                }
                LKind::Eisenstein => {
                    num.push(&p[0] - &p[1]);
                    num.push(-&p[1]);
                }
            }
        }
        KElem { num, den: self.den.clone(), kind: self.kind }
    }
}

fn l_mul(kind: LKind, a0: &BigInt, a1: &BigInt, b0: &BigInt, b1: &BigInt) -> (BigInt, BigInt) {
    let ac = a0 * b0;
    let bd = a1 * b1;
    let cross = a0 * b1 + a1 * b0;
    match kind {
        LKind::Gaussian => (ac - bd, cross),
        LKind::Eisenstein => (ac - &bd, cross - bd),
    }
}

/// Arithmetic context for one of the four code fields.
#[derive(Debug, Clone)]
pub struct NumberFieldCtx {
    pub id: FieldId,
    pub kind: LKind,
    /// Degree [K:L].
    pub n: usize,
    /// Monic minimal polynomial of θ, low degree first (length n + 1).
    pub minpoly: Vec<i64>,
    pub tau_rule: TauRule,
    pub gamma_m: LElem,
    pub theta_embed: f64,
    /// `conjugate_embeds[k]` is the numeric value of τ^k(θ).
    pub conjugate_embeds: Vec<f64>,
    /// `tau_table[r]` holds the integer θ-coordinates of τ(θ^r).
    tau_table: Vec<Vec<BigInt>>,
}

impl NumberFieldCtx {
    pub fn new(id: FieldId) -> Self {
        let (kind, minpoly, tau_rule, gamma_m, theta_embed) = match id {
            FieldId::F4x2 => (
                LKind::Gaussian,
                vec![-1, -1, 1],
                TauRule::Golden1MinusTheta,
                LElem::from_ints(0, 1, LKind::Gaussian),
                (1.0 + 5f64.sqrt()) / 2.0,
            ),
            FieldId::F6x2 => (
                LKind::Eisenstein,
                vec![-1, -2, 1, 1],
                TauRule::ThetaSqMinus2,
                LElem::from_ints(0, 1, LKind::Eisenstein),
                2.0 * (2.0 * PI / 7.0).cos(),
            ),
            FieldId::F8x2 => (
                LKind::Gaussian,
                vec![1, 4, -4, -1, 1],
                TauRule::ThetaSqMinus2,
                LElem::from_ints(0, 1, LKind::Gaussian),
                2.0 * (2.0 * PI / 15.0).cos(),
            ),
            FieldId::F12x2 => (
                LKind::Eisenstein,
                vec![-7, 0, 14, 0, -7, 0, 1],
                TauRule::Chebyshev5,
                LElem::from_ints(0, -1, LKind::Eisenstein),
                2.0 * (PI / 14.0).cos(),
            ),
        };
        let n = minpoly.len() - 1;
        let mut conjugate_embeds = Vec::with_capacity(n);
        let mut t = theta_embed;
        for _ in 0..n {
            conjugate_embeds.push(t);
            t = tau_rule.apply_f64(t);
        }
        let mut ctx = NumberFieldCtx {
            id,
            kind,
            n,
            minpoly,
            tau_rule,
            gamma_m,
            theta_embed,
            conjugate_embeds,
            tau_table: Vec::new(),
        };
        ctx.tau_table = ctx.build_tau_table();
        ctx
    }

    fn build_tau_table(&self) -> Vec<Vec<BigInt>> {
        let poly = self.tau_rule.polynomial();
        let mut pairs = vec![(0i64, 0i64); poly.len().max(self.n)];
        for (r, &c) in poly.iter().enumerate() {
            pairs[r].0 = c;
        }
        let image = self.reduce_raw(
            pairs.iter().flat_map(|&(a, b)| [BigInt::from(a), BigInt::from(b)]).collect(),
        );
        let image = KElem { num: image, den: BigInt::one(), kind: self.kind };
        let mut table = Vec::with_capacity(self.n);
        let mut power = self.one();
        for _ in 0..self.n {
            table.push(power.num.iter().step_by(2).cloned().collect());
            power = self.mul(&power, &image);
        }
        table
    }

    pub fn zero(&self) -> KElem {
        KElem::zero(self.kind, self.n)
    }

    pub fn one(&self) -> KElem {
        KElem::one(self.kind, self.n)
    }

    pub fn theta(&self) -> KElem {
        KElem::theta(self.kind, self.n)
    }

    pub fn from_l(&self, x: &LElem) -> KElem {
        KElem::from_l(x, self.n)
    }

    /// Integer polynomial in θ with L-integer coefficients `pairs[r] = (a, b)`, reduced.
    pub fn from_poly(&self, pairs: &[(i64, i64)]) -> KElem {
        let mut raw: Vec<BigInt> =
            pairs.iter().flat_map(|&(a, b)| [BigInt::from(a), BigInt::from(b)]).collect();
        raw.resize(2 * self.n.max(pairs.len()), BigInt::zero());
        KElem { num: self.reduce_raw(raw), den: BigInt::one(), kind: self.kind }
    }

    /// Reduce a coordinate vector of any length modulo the minimal polynomial.
    fn reduce_raw(&self, mut raw: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.n;
        let len = raw.len() / 2;
        for d in (n..len).rev() {
            let (c0, c1) = (raw[2 * d].clone(), raw[2 * d + 1].clone());
            if c0.is_zero() && c1.is_zero() {
                continue;
            }
            for i in 0..n {
                let m = self.minpoly[i];
                if m != 0 {
                    raw[2 * (d - n + i)] -= &c0 * m;
                    raw[2 * (d - n + i) + 1] -= &c1 * m;
                }
            }
        }
        raw.truncate(2 * n);
        raw
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        let n = self.n;
        let mut raw = vec![BigInt::zero(); 2 * (2 * n - 1)];
        for r in 0..n {
            let (a0, a1) = (&a.num[2 * r], &a.num[2 * r + 1]);
            if a0.is_zero() && a1.is_zero() {
                continue;
            }
            for s in 0..n {
                let (b0, b1) = (&b.num[2 * s], &b.num[2 * s + 1]);
                if b0.is_zero() && b1.is_zero() {
                    continue;
                }
                let (x, y) = l_mul(self.kind, a0, a1, b0, b1);
                raw[2 * (r + s)] += x;
                raw[2 * (r + s) + 1] += y;
            }
        }
        let mut e = KElem { num: self.reduce_raw(raw), den: &a.den * &b.den, kind: self.kind };
        e.normalize();
        e
    }

    pub fn tau(&self, a: &KElem) -> KElem {
        let n = self.n;
        let mut num = vec![BigInt::zero(); 2 * n];
        for r in 0..n {
            let (a0, a1) = (&a.num[2 * r], &a.num[2 * r + 1]);
            if a0.is_zero() && a1.is_zero() {
                continue;
            }
            for (s, t) in self.tau_table[r].iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                num[2 * s] += a0 * t;
                num[2 * s + 1] += a1 * t;
            }
        }
        KElem { num, den: a.den.clone(), kind: self.kind }
    }

    /// τ^k.
    pub fn tau_pow(&self, a: &KElem, k: usize) -> KElem {
        let mut x = a.clone();
        for _ in 0..(k % self.n) {
            x = self.tau(&x);
        }
        x
    }

    pub fn sigma(&self, a: &KElem) -> KElem {
        a.sigma()
    }

    /// ∏_{k=1}^{n−1} τ^k(a), so that a · conj_product(a) = N_{K/L}(a).
    fn conj_product(&self, a: &KElem) -> KElem {
        let mut p = self.one();
        let mut t = a.clone();
        for _ in 1..self.n {
            t = self.tau(&t);
            p = self.mul(&p, &t);
        }
        p
    }

    /// N_{K/L}(a) = ∏_{k=0}^{n−1} τ^k(a).
    pub fn rel_norm(&self, a: &KElem) -> Result<LElem> {
        let full = self.mul(a, &self.conj_product(a));
        if full.in_base_field() {
            Ok(full.constant())
        } else {
            Err(Error::NonClosure)
        }
    }

    pub fn inv(&self, a: &KElem) -> Option<KElem> {
        if a.is_zero() {
            return None;
        }
        let p = self.conj_product(a);
        let norm = self.mul(a, &p);
        debug_assert!(norm.in_base_field());
        let ninv = norm.constant().inv()?;
        Some(p.scale(&ninv))
    }

    /// Complex value under the embedding θ ↦ `theta_embed`.
    pub fn embed(&self, a: &KElem) -> Complex64 {
        self.embed_at(a, self.theta_embed)
    }

    /// Complex value of τ^k(a).
    pub fn embed_conjugate(&self, a: &KElem, k: usize) -> Complex64 {
        self.embed_at(a, self.conjugate_embeds[k % self.n])
    }

    fn embed_at(&self, a: &KElem, theta: f64) -> Complex64 {
        let beta = self.kind.generator();
        let den = a.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pow = 1.0;
        for p in a.num.chunks(2) {
            let x = p[0].to_f64().unwrap_or(f64::NAN) / den;
            let y = p[1].to_f64().unwrap_or(f64::NAN) / den;
            acc += (Complex64::new(x, 0.0) + beta * y) * pow;
            pow *= theta;
        }
        acc
    }

    /// Element with integer coordinates drawn uniformly from [−bound, bound].
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> KElem {
        let num = (0..2 * self.n).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect();
        KElem { num, den: BigInt::one(), kind: self.kind }
    }

    /// Evaluate the minimal polynomial at `x`.
    pub fn minpoly_at(&self, x: f64) -> f64 {
        self.minpoly.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pairs(v: &[i64]) -> Vec<(i64, i64)> {
        v.iter().map(|&a| (a, 0)).collect()
    }

    #[test]
    fn theta_embeddings() {
        let cases = [
            (FieldId::F4x2, 1.6180339887),
            (FieldId::F6x2, 1.2469796037),
            (FieldId::F8x2, 1.8270909153),
            (FieldId::F12x2, 1.9498558244),
        ];
        for (id, v) in cases {
            let ctx = NumberFieldCtx::new(id);
            assert!((ctx.theta_embed - v).abs() < 1e-9, "{id:?}");
            assert!((ctx.embed(&ctx.theta()).re - v).abs() < 1e-9);
            for &t in &ctx.conjugate_embeds {
                assert!(ctx.minpoly_at(t).abs() < 1e-9, "{id:?} conjugate {t}");
            }
            // conjugates are distinct
            let mut c = ctx.conjugate_embeds.clone();
            c.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert!(c.windows(2).all(|w| w[1] - w[0] > 1e-3));
        }
    }

    #[test]
    fn twelve_field_minpoly_roots() {
        let ctx = NumberFieldCtx::new(FieldId::F12x2);
        let mut roots: Vec<f64> = [1, 3, 5, 9, 11, 13]
            .iter()
            .map(|&k| 2.0 * (2.0 * PI * k as f64 / 28.0).cos())
            .collect();
        for r in &roots {
            assert!(ctx.minpoly_at(*r).abs() < 1e-9);
        }
        let mut c = ctx.conjugate_embeds.clone();
        c.sort_by(|a, b| a.partial_cmp(b).unwrap());
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in c.iter().zip(&roots) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn golden_square() {
        let ctx = NumberFieldCtx::new(FieldId::F4x2);
        let t = ctx.theta();
        assert_eq!(ctx.mul(&t, &t), ctx.from_poly(&pairs(&[1, 1])));
        assert_eq!(ctx.tau(&t), ctx.from_poly(&pairs(&[1, -1])));
    }

    #[test]
    fn heptagon_cube() {
        let ctx = NumberFieldCtx::new(FieldId::F6x2);
        let t = ctx.theta();
        let t3 = ctx.mul(&ctx.mul(&t, &t), &t);
        assert_eq!(t3, ctx.from_poly(&pairs(&[1, 2, -1])));
        assert!((ctx.embed(&t3).re - ctx.theta_embed.powi(3)).abs() < 1e-12);
        assert_eq!(ctx.tau(&t), ctx.from_poly(&pairs(&[-2, 0, 1])));
    }

    #[test]
    fn sigma_examples() {
        let g = NumberFieldCtx::new(FieldId::F4x2);
        let i = g.from_l(&LElem::generator(LKind::Gaussian));
        assert_eq!(g.sigma(&i), i.neg());
        let e = NumberFieldCtx::new(FieldId::F6x2);
        let w = e.from_l(&LElem::generator(LKind::Eisenstein));
        assert_eq!(e.sigma(&w), e.from_l(&LElem::from_ints(-1, -1, LKind::Eisenstein)));
        assert_eq!(e.sigma(&e.theta()), e.theta());
    }

    #[test]
    fn norm_examples() {
        let g = NumberFieldCtx::new(FieldId::F4x2);
        // α = 1 + i(1 − θ)
        let alpha = g.from_poly(&[(1, 1), (0, -1)]);
        let n = g.rel_norm(&alpha).unwrap();
        assert_eq!(n.norm(), BigRational::from_integer(5.into()));
        let e = NumberFieldCtx::new(FieldId::F6x2);
        let t1 = e.from_poly(&[(1, 1), (1, 0)]);
        assert_eq!(e.rel_norm(&t1).unwrap().norm(), BigRational::from_integer(7.into()));
        assert_eq!(e.rel_norm(&e.one()).unwrap(), LElem::one(LKind::Eisenstein));
    }

    #[test]
    fn embed_zero_and_omega() {
        let e = NumberFieldCtx::new(FieldId::F6x2);
        assert_eq!(e.embed(&e.zero()), Complex64::new(0.0, 0.0));
        let w = e.embed(&e.from_l(&LElem::generator(LKind::Eisenstein)));
        assert!((w - Complex64::new(-0.5, 0.8660254038)).norm() < 1e-9);
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for id in FieldId::ALL {
            let ctx = NumberFieldCtx::new(id);
            for _ in 0..200 {
                let a = ctx.random(&mut rng, 4);
                let b = ctx.random(&mut rng, 4);
                let p = ctx.mul(&a, &b);
                let lhs = ctx.embed(&p);
                let rhs = ctx.embed(&a) * ctx.embed(&b);
                assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
                assert_eq!(ctx.tau_pow(&a, ctx.n), a);
                assert_eq!(ctx.sigma(&ctx.sigma(&a)), a);
                assert_eq!(ctx.sigma(&ctx.tau(&a)), ctx.tau(&ctx.sigma(&a)));
                assert_eq!(ctx.tau(&p), ctx.mul(&ctx.tau(&a), &ctx.tau(&b)));
                assert!(ctx.rel_norm(&a).is_ok());
                for k in 0..ctx.n {
                    let direct = ctx.embed(&ctx.tau_pow(&a, k));
                    assert!((direct - ctx.embed_conjugate(&a, k)).norm() < 1e-8 * (1.0 + direct.norm()));
                }
                if !a.is_zero() {
                    let inv = ctx.inv(&a).unwrap();
                    assert_eq!(ctx.mul(&a, &inv), ctx.one());
                }
            }
        }
    }
}
