use core::fmt;

use num_traits::Zero;

use super::{Field, Rational, UniPoly};
use crate::{Error, Result};

/// Reduced quotient of polynomials: `gcd(num, den) = 1`, `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    /// The identity function `X`.
    pub fn x() -> Self {
        Self::from_poly(UniPoly::x())
    }

    fn normalize(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading().expect("nonzero").recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        Self::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        Self::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// `p(self)` for a polynomial `p`.
    pub fn substitute_into(&self, p: &UniPoly) -> RatFunc {
        // Homogenise: p(n/d) = sum c_i n^i d^(k-i) / d^k.
        let Some(k) = p.degree() else {
            return Self::from_poly(UniPoly::zero());
        };
        let mut acc = UniPoly::zero();
        let mut npow = UniPoly::one();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let term = &npow * &self.den.pow((k - i) as u32);
                acc = &acc + &term.scale(c);
            }
            npow = &npow * &self.num;
        }
        Self::normalize(acc, self.den.pow(k as u32))
    }

    /// Composition `self(inner(X))`.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatFunc> {
        inner
            .substitute_into(&self.num)
            .div(&inner.substitute_into(&self.den))
    }

    /// Evaluation; `Err(Pole)` where the denominator vanishes.
    pub fn eval<F: Field>(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        let inv = d.recip().ok_or(Error::Pole)?;
        Ok(self.num.eval(x).times(&inv))
    }

    pub fn eval_rational(&self, x: &Rational) -> Result<Rational> {
        self.eval(x)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc(({}) / ({}))", self.num, self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn normalization() {
        // (2X^2 - 2) / (2X + 2) = (X - 1) / 1
        let f = RatFunc::new(p(&[-2, 0, 2]), p(&[2, 2])).unwrap();
        assert_eq!(f.num(), &p(&[-1, 1]));
        assert_eq!(f.den(), &UniPoly::one());
        assert!(RatFunc::new(p(&[1]), UniPoly::zero()).is_err());
        let g = RatFunc::new(p(&[1]), p(&[0, -3])).unwrap();
        assert_eq!(g.num(), &UniPoly::constant(rat(-1, 3)));
        assert!(g.den().is_monic());
    }

    #[test]
    fn composition() {
        // f = 1/X, f(f) = X
        let f = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(f.compose(&f).unwrap(), RatFunc::x());
        // (X^2 + 1) o (X + 1) = X^2 + 2X + 2
        let g = RatFunc::from_poly(p(&[1, 0, 1]));
        let h = RatFunc::from_poly(p(&[1, 1]));
        assert_eq!(g.compose(&h).unwrap(), RatFunc::from_poly(p(&[2, 2, 1])));
    }

    #[test]
    fn evaluation_and_poles() {
        let f = RatFunc::new(p(&[1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f.eval_rational(&int(3)).unwrap(), int(5));
        assert_eq!(f.eval_rational(&int(1)), Err(Error::Pole));
    }
}
