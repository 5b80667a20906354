//! Elements of the base field L = Q(i) or Q(ω) with exact rational coordinates.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum LKind {
    Gaussian,
    Eisenstein,
}

impl LKind {
    /// Complex value of the generator (i or ω).
    pub fn generator(self) -> Complex64 {
        match self {
            LKind::Gaussian => Complex64::new(0.0, 1.0),
            LKind::Eisenstein => Complex64::new(-0.5, 3f64.sqrt() / 2.0),
        }
    }
}

/// `a + β·b` where β is i or ω depending on `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LElem {
    pub a: BigRational,
    pub b: BigRational,
    pub kind: LKind,
}

impl LElem {
    pub fn new(a: BigRational, b: BigRational, kind: LKind) -> Self {
        LElem { a, b, kind }
    }

    pub fn from_ints(a: i64, b: i64, kind: LKind) -> Self {
        LElem::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
            kind,
        )
    }

    pub fn zero(kind: LKind) -> Self {
        LElem::from_ints(0, 0, kind)
    }

    pub fn one(kind: LKind) -> Self {
        LElem::from_ints(1, 0, kind)
    }

    /// The generator i (Gaussian) or ω (Eisenstein).
    pub fn generator(kind: LKind) -> Self {
        LElem::from_ints(0, 1, kind)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn add(&self, o: &LElem) -> LElem {
        LElem::new(&self.a + &o.a, &self.b + &o.b, self.kind)
    }

    pub fn sub(&self, o: &LElem) -> LElem {
        LElem::new(&self.a - &o.a, &self.b - &o.b, self.kind)
    }

    pub fn neg(&self) -> LElem {
        LElem::new(-&self.a, -&self.b, self.kind)
    }

    pub fn mul(&self, o: &LElem) -> LElem {
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let cross = &self.a * &o.b + &self.b * &o.a;
        match self.kind {
            LKind::Gaussian => LElem::new(ac - bd, cross, self.kind),
            // ω² = −1 − ω
            LKind::Eisenstein => LElem::new(ac - &bd, cross - bd, self.kind),
        }
    }

    /// σ: i ↦ −i or ω ↦ ω².
    pub fn conj(&self) -> LElem {
        match self.kind {
            LKind::Gaussian => LElem::new(self.a.clone(), -&self.b, self.kind),
            LKind::Eisenstein => LElem::new(&self.a - &self.b, -&self.b, self.kind),
        }
    }

    /// Field norm to Q, i.e. |x|².
    pub fn norm(&self) -> BigRational {
        match self.kind {
            LKind::Gaussian => &self.a * &self.a + &self.b * &self.b,
            LKind::Eisenstein => &self.a * &self.a - &self.a * &self.b + &self.b * &self.b,
        }
    }

    pub fn inv(&self) -> Option<LElem> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(LElem::new(&c.a / &n, &c.b / &n, self.kind))
    }

    pub fn embed(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a, 0.0) + self.kind.generator() * b
    }

    /// Integer coordinates, if integral.
    pub fn to_integers(&self) -> Option<(BigInt, BigInt)> {
        if self.is_integral() {
            Some((self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.kind {
            LKind::Gaussian => "i",
            LKind::Eisenstein => "w",
        };
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}{}", self.b, sym)
        } else if self.b.is_negative() {
            write!(f, "{} - {}{}", self.a, -&self.b, sym)
        } else if self.b.is_one() {
            write!(f, "{} + {}", self.a, sym)
        } else {
            write!(f, "{} + {}{}", self.a, self.b, sym)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squared_is_conjugate() {
        let w = LElem::generator(LKind::Eisenstein);
        assert_eq!(w.mul(&w), w.conj());
        assert_eq!(w.mul(&w), LElem::from_ints(-1, -1, LKind::Eisenstein));
    }

    #[test]
    fn i_squared() {
        let i = LElem::generator(LKind::Gaussian);
        assert_eq!(i.mul(&i), LElem::from_ints(-1, 0, LKind::Gaussian));
        assert_eq!(i.conj(), LElem::from_ints(0, -1, LKind::Gaussian));
    }

    #[test]
    fn norm_matches_modulus() {
        for kind in [LKind::Gaussian, LKind::Eisenstein] {
            let x = LElem::from_ints(3, -2, kind);
            let z = x.embed();
            assert!((x.norm().to_f64().unwrap() - z.norm_sqr()).abs() < 1e-12);
            let prod = x.mul(&x.inv().unwrap());
            assert_eq!(prod, LElem::one(kind));
            assert!((x.conj().embed() - z.conj()).norm() < 1e-12);
        }
    }
}
