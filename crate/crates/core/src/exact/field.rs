use core::fmt::{Debug, Display};

use num_traits::{One, Zero};

use super::Rational;

/// The scalar operations the curve and isogeny code needs.
///
/// Implemented for [`Rational`] and for [`QuadExt`](super::QuadExt). Values
/// carry enough context (the radicand, for quadratic elements) to build
/// constants of the same field, so constructors take `&self` as a template.
pub trait Field: Clone + PartialEq + Debug + Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Embeds a rational constant into the field of `self`.
    fn embed(&self, r: &Rational) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn recip(&self) -> Option<Self>;
    /// The value as a rational number, if it is one.
    fn as_rational(&self) -> Option<Rational>;
    /// Whether two values live in the same field.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn square(&self) -> Self {
        self.times(self)
    }

    fn scale(&self, r: &Rational) -> Self {
        self.times(&self.embed(r))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn embed(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| num_rational::Ratio::recip(self))
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}
