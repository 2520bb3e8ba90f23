use alloc::string::ToString;
use core::fmt;

use num_traits::{One, Zero};

use super::{is_rational_square, Field, Rational};
use crate::{Error, Result};

/// An element `u + v*sqrt(d)` of the quadratic field Q(sqrt d).
///
/// The radicand is stored with every element and is never a rational square,
/// so the field really has degree two. Callers holding a square `d` must work
/// over Q with the rational square root instead.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    d: Rational,
    u: Rational,
    v: Rational,
}

impl QuadExt {
    pub fn new(d: Rational, u: Rational, v: Rational) -> Result<Self> {
        if is_rational_square(&d).is_some() {
            return Err(Error::SquareRadicand(d.to_string()));
        }
        Ok(QuadExt { d, u, v })
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: Rational) -> Result<Self> {
        Self::new(d, Rational::zero(), Rational::one())
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn rational_part(&self) -> &Rational {
        &self.u
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.v
    }

    fn with(&self, u: Rational, v: Rational) -> Self {
        QuadExt {
            d: self.d.clone(),
            u,
            v,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(&self.u + &other.u, &self.v + &other.v))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let u = &self.u * &other.u + &self.d * &self.v * &other.v;
        let v = &self.u * &other.v + &self.v * &other.u;
        Ok(self.with(u, v))
    }

    pub fn conj(&self) -> Self {
        self.with(self.u.clone(), -&self.v)
    }

    /// `u^2 - d v^2`.
    pub fn norm(&self) -> Rational {
        &self.u * &self.u - &self.d * &self.v * &self.v
    }

    pub fn try_inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.with(&self.u / &n, -&self.v / &n))
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.u, self.v, self.d)
    }
}

// Mixing radicands inside a curve computation is a construction bug, so the
// infallible trait methods assert instead of returning errors.
impl Field for QuadExt {
    fn zero_like(&self) -> Self {
        self.with(Rational::zero(), Rational::zero())
    }
    fn one_like(&self) -> Self {
        self.with(Rational::one(), Rational::zero())
    }
    fn embed(&self, r: &Rational) -> Self {
        self.with(r.clone(), Rational::zero())
    }
    fn vanishes(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("radicand mismatch")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("radicand mismatch")
    }
    fn negate(&self) -> Self {
        self.with(-&self.u, -&self.v)
    }
    fn recip(&self) -> Option<Self> {
        self.try_inv().ok()
    }
    fn as_rational(&self) -> Option<Rational> {
        self.v.is_zero().then(|| self.u.clone())
    }
    fn compatible(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Mul,
    Inv,
    Conj,
    Norm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadValue {
    Quad(QuadExt),
    Rational(Rational),
}

/// Dispatches one field operation; unary operations ignore `y`.
pub fn quad_arith(x: &QuadExt, y: &QuadExt, op: QuadOp) -> Result<QuadValue> {
    Ok(match op {
        QuadOp::Add => QuadValue::Quad(x.try_add(y)?),
        QuadOp::Mul => QuadValue::Quad(x.try_mul(y)?),
        QuadOp::Inv => QuadValue::Quad(x.try_inv()?),
        QuadOp::Conj => QuadValue::Quad(x.conj()),
        QuadOp::Norm => QuadValue::Rational(x.norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn q(d: i64, u: i64, v: i64) -> QuadExt {
        QuadExt::new(int(d), int(u), int(v)).unwrap()
    }

    #[test]
    fn conjugate_product() {
        let x = q(-47, 1, 1);
        assert_eq!(x.try_mul(&x.conj()).unwrap(), q(-47, 48, 0));
    }

    #[test]
    fn inverse_of_sqrt() {
        let s = QuadExt::sqrt(int(5)).unwrap();
        let inv = s.try_inv().unwrap();
        assert_eq!(inv, QuadExt::new(int(5), int(0), rat(1, 5)).unwrap());
        assert_eq!(s.try_mul(&inv).unwrap(), q(5, 1, 0));
    }

    #[test]
    fn norm_value() {
        assert_eq!(q(-47, 3, 2).norm(), int(197));
    }

    #[test]
    fn errors() {
        assert_eq!(q(2, 1, 1).try_add(&q(3, 1, 1)), Err(Error::FieldMismatch));
        assert_eq!(q(2, 0, 0).try_inv(), Err(Error::DivisionByZero));
        assert!(matches!(
            QuadExt::sqrt(int(14641)),
            Err(Error::SquareRadicand(_))
        ));
        assert!(QuadExt::sqrt(int(0)).is_err());
        assert_eq!(
            quad_arith(&q(2, 1, 1), &q(2, 0, 0), QuadOp::Norm).unwrap(),
            QuadValue::Rational(int(-1))
        );
    }
}
