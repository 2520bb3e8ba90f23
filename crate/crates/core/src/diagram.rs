//! The commutative square relating a dual isogeny over Q to an isogeny
//! between quadratic twists:
//!
//! ```text
//!   E*  --phi*-->  E        (over Q)
//!   |f*            |f       (over Q(sqrt d))
//!   E*_a --lam*--> E_a      (over Q)
//! ```
//!
//! `phi*` is evaluated pointwise as `f^-1 o lam* o f*`.

use alloc::format;

use crate::curves::{CurvePoint, TwistMap, WeierstrassCurve};
use crate::exact::{is_rational_square, Field, QuadExt, Rational};
use crate::isogeny::IsogenyMap;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct KummerDiagram {
    pub d: Rational,
    pub e: WeierstrassCurve,
    pub e_star: WeierstrassCurve,
    pub e_a: WeierstrassCurve,
    pub e_a_star: WeierstrassCurve,
    pub lambda_star: IsogenyMap,
    pub f: TwistMap,
    pub f_star: TwistMap,
    /// `sqrt(d)` when `d` is a rational square (the cyclic case).
    pub rational_sqrt_d: Option<Rational>,
}

impl KummerDiagram {
    /// Builds the square from the bottom row and the two vertical maps; the
    /// top-row curves are the pullbacks of `E_a` and `E*_a`.
    pub fn from_bottom_row(
        d: Rational,
        lambda_star: IsogenyMap,
        f: TwistMap,
        f_star: TwistMap,
    ) -> Result<Self> {
        let e = f.pullback(&lambda_star.codomain)?;
        let e_star = f_star.pullback(&lambda_star.domain)?;
        Ok(KummerDiagram {
            rational_sqrt_d: is_rational_square(&d),
            d,
            e,
            e_star,
            e_a: lambda_star.codomain.clone(),
            e_a_star: lambda_star.domain.clone(),
            lambda_star,
            f,
            f_star,
        })
    }

    pub fn is_degenerate(&self) -> bool {
        self.rational_sqrt_d.is_some()
    }

    /// `f^-1 o lam* o f*` on a rational point of `E*`.
    pub fn phi_star(&self, p: &CurvePoint) -> Result<CurvePoint> {
        if !self.e_star.contains(p) {
            return Err(Error::PointValidation);
        }
        let image = match &self.rational_sqrt_d {
            Some(s) => self.conjugate(p, s)?,
            None => self.conjugate(p, &QuadExt::sqrt(self.d.clone())?)?,
        };
        debug_assert!(self.e.contains(&image));
        Ok(image)
    }

    fn conjugate<F: Field>(&self, p: &CurvePoint, sqrt_d: &F) -> Result<CurvePoint> {
        let on_twist = self.f_star.apply(&p.embed(sqrt_d), sqrt_d);
        let pushed = self.lambda_star.evaluate(&on_twist)?;
        let back = self.f.invert(&pushed, sqrt_d);
        back.to_rational()
            .ok_or_else(|| Error::Conjugation(format!("f^-1(lambda*(f*(P))) = {back}")))
    }

    /// `f(P)` for a rational point of `E`, over the field containing sqrt(d).
    pub fn f_x(&self, p: &CurvePoint) -> Result<Rational> {
        let x = p.x().ok_or(Error::Infinity)?;
        Ok(&self.f.x_scale * x + &self.f.x_shift)
    }
}
