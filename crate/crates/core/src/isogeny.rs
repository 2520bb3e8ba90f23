//! Separable isogenies of odd prime degree with a rational kernel, built by
//! Vélu's formulas, plus evaluation and composition of explicit maps.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::curves::{CurvePoint, WeierstrassCurve};
use crate::exact::{int, Field, RatFunc, Rational, UniPoly};
use crate::{Error, Result};

/// `y |-> (u(x) + v(x) y) / w(x)`, stored as the two rational functions
/// `u/w` and `v/w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YMap {
    constant: RatFunc,
    linear: RatFunc,
}

impl YMap {
    pub fn new(constant: RatFunc, linear: RatFunc) -> Self {
        YMap { constant, linear }
    }

    /// Builds the map from a triple `(u, v, w)`.
    pub fn from_triple(u: UniPoly, v: UniPoly, w: UniPoly) -> Result<Self> {
        Ok(YMap {
            constant: RatFunc::new(u, w.clone())?,
            linear: RatFunc::new(v, w)?,
        })
    }

    /// The reduced triple `(u, v, w)`: `w` monic and `gcd(u, v, w) = 1`.
    pub fn triple(&self) -> (UniPoly, UniPoly, UniPoly) {
        let (cd, ld) = (self.constant.den(), self.linear.den());
        let g = cd.gcd(ld);
        let w = (cd * ld).div_exact(&g).expect("gcd divides product");
        let u = self.constant.num() * &w.div_exact(cd).expect("lcm");
        let v = self.linear.num() * &w.div_exact(ld).expect("lcm");
        (u, v, w)
    }

    pub fn constant(&self) -> &RatFunc {
        &self.constant
    }

    pub fn linear(&self) -> &RatFunc {
        &self.linear
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsogenyMap {
    pub domain: WeierstrassCurve,
    pub codomain: WeierstrassCurve,
    pub x_map: RatFunc,
    pub y_map: YMap,
    pub degree: u32,
    /// Generator of the kernel when it is a rational point.
    pub kernel_generator: Option<CurvePoint>,
}

impl IsogenyMap {
    /// A map given by explicit formulas such as closed forms.
    pub fn explicit(
        domain: WeierstrassCurve,
        codomain: WeierstrassCurve,
        x_map: RatFunc,
        y_map: YMap,
        degree: u32,
    ) -> Self {
        IsogenyMap {
            domain,
            codomain,
            x_map,
            y_map,
            degree,
            kernel_generator: None,
        }
    }

    pub fn identity(curve: &WeierstrassCurve) -> Self {
        IsogenyMap {
            domain: curve.clone(),
            codomain: curve.clone(),
            x_map: RatFunc::x(),
            y_map: YMap::new(
                RatFunc::from_poly(UniPoly::zero()),
                RatFunc::from_poly(UniPoly::one()),
            ),
            degree: 1,
            kernel_generator: Some(CurvePoint::Infinity),
        }
    }

    /// Image of `p`; kernel points and the point at infinity go to infinity.
    pub fn evaluate<F: Field>(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let CurvePoint::Affine { x, y } = p else {
            return Ok(CurvePoint::Infinity);
        };
        if !self.domain.embed(x).contains(p) {
            return Err(Error::PointValidation);
        }
        let pole = |f: &RatFunc| f.den().eval(x).vanishes();
        if pole(&self.x_map) || pole(&self.y_map.constant) || pole(&self.y_map.linear) {
            return Ok(CurvePoint::Infinity);
        }
        let nx = self.x_map.eval(x)?;
        let ny = self
            .y_map
            .constant
            .eval(x)?
            .plus(&self.y_map.linear.eval(x)?.times(y));
        Ok(CurvePoint::affine(nx, ny))
    }

    pub fn evaluate_rational(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.evaluate(p)
    }

    /// `outer o self`.
    pub fn then(&self, outer: &IsogenyMap) -> Result<IsogenyMap> {
        compose(outer, self)
    }

    /// Kernel x-coordinates predicted by the declared generator.
    fn kernel_xs(&self) -> Option<Vec<Rational>> {
        let k = self.kernel_generator.as_ref()?;
        let mut xs: Vec<Rational> = Vec::new();
        let mut acc = k.clone();
        for _ in 1..self.degree {
            let x = acc.x()?.clone();
            if !xs.contains(&x) {
                xs.push(x);
            }
            acc = self.domain.add_unchecked(&acc, k);
        }
        Some(xs)
    }

    /// Whether the roots of the x-map denominator are exactly the
    /// x-coordinates of the nonzero multiples of the declared kernel
    /// generator.
    pub fn verify_kernel(&self) -> bool {
        let Some(xs) = self.kernel_xs() else {
            return false;
        };
        if !self
            .domain
            .contains(self.kernel_generator.as_ref().expect("declared"))
        {
            return false;
        }
        let expected = xs
            .iter()
            .fold(UniPoly::one(), |acc, x| &acc * &UniPoly::linear_root(x));
        self.x_map.den().radical() == expected
    }

    /// Equality up to composition with `[-1]` on the codomain.
    pub fn equivalent(&self, other: &IsogenyMap) -> bool {
        if self.domain != other.domain
            || self.codomain != other.codomain
            || self.x_map != other.x_map
        {
            return false;
        }
        self.y_map == other.y_map || self.y_map == other.negated().y_map
    }

    /// `[-1] o self`.
    pub fn negated(&self) -> IsogenyMap {
        let c = &self.codomain;
        // -Y - a1 X - a3
        let shift = self
            .x_map
            .mul(&RatFunc::from_poly(UniPoly::constant(c.a1.clone())))
            .add(&RatFunc::from_poly(UniPoly::constant(c.a3.clone())));
        let y_map = YMap::new(
            self.y_map.constant.neg().sub(&shift),
            self.y_map.linear.neg(),
        );
        IsogenyMap {
            y_map,
            ..self.clone()
        }
    }
}

/// `outer o inner`, simplified.
pub fn compose(outer: &IsogenyMap, inner: &IsogenyMap) -> Result<IsogenyMap> {
    if inner.codomain != outer.domain {
        return Err(Error::DomainMismatch);
    }
    let fx = &inner.x_map;
    let x_map = outer.x_map.compose(fx)?;
    let gu = outer.y_map.constant.compose(fx)?;
    let gv = outer.y_map.linear.compose(fx)?;
    let constant = gu.add(&gv.mul(&inner.y_map.constant));
    let linear = gv.mul(&inner.y_map.linear);
    Ok(IsogenyMap {
        domain: inner.domain.clone(),
        codomain: outer.codomain.clone(),
        x_map,
        y_map: YMap::new(constant, linear),
        degree: outer.degree * inner.degree,
        kernel_generator: None,
    })
}

fn is_odd_prime(n: u32) -> bool {
    n >= 3
        && n % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn cst(c: Rational) -> RatFunc {
    RatFunc::from_poly(UniPoly::constant(c))
}

/// Vélu's isogeny with kernel `<kernel>` of odd prime order `ell`.
///
/// The codomain keeps `a1, a2, a3` and shifts `a4, a6`:
/// `A4 = a4 - 5 v`, `A6 = a6 - b2 v - 7 w`, where `v, w` are sums over one
/// representative of each pair `{Q, -Q}` of nonzero kernel points.
pub fn velu(curve: &WeierstrassCurve, kernel: &CurvePoint, ell: u32) -> Result<IsogenyMap> {
    if !curve.contains(kernel) {
        return Err(Error::PointValidation);
    }
    let order = curve.torsion_order(kernel, ell);
    if !is_odd_prime(ell) || order != Some(ell) {
        return Err(Error::KernelOrder {
            expected: ell,
            found: order,
        });
    }
    let WeierstrassCurve { a1, a2, a3, a4, a6 } = curve;
    let b2 = curve.b2();
    let (mut v_sum, mut w_sum) = (Rational::zero(), Rational::zero());
    let mut x_map = RatFunc::x();
    let mut y_const = RatFunc::from_poly(UniPoly::zero());
    let mut y_lin = RatFunc::from_poly(UniPoly::one());
    let mut q = kernel.clone();
    for _ in 0..(ell - 1) / 2 {
        let (xq, yq) = match &q {
            CurvePoint::Affine { x, y } => (x.clone(), y.clone()),
            CurvePoint::Infinity => unreachable!("order is exactly ell"),
        };
        let gx = int(3) * &xq * &xq + int(2) * a2 * &xq + a4 - a1 * &yq;
        let gy = -(int(2) * &yq) - a1 * &xq - a3;
        let vq = int(2) * &gx - a1 * &gy;
        let uq = &gy * &gy;
        v_sum += &vq;
        w_sum += &uq + &xq * &vq;

        let t = UniPoly::linear_root(&xq);
        let inv1 = RatFunc::new(UniPoly::one(), t.clone())?;
        let inv2 = RatFunc::new(UniPoly::one(), t.pow(2))?;
        let inv3 = RatFunc::new(UniPoly::one(), t.pow(3))?;
        x_map = x_map
            .add(&inv1.mul(&cst(vq.clone())))
            .add(&inv2.mul(&cst(uq.clone())));

        // y-coefficient: 1 - sum(2 uQ / t^3 + vQ / t^2)
        y_lin = y_lin
            .sub(&inv3.mul(&cst(int(2) * &uq)))
            .sub(&inv2.mul(&cst(vq.clone())));
        // y-free part: -sum(uQ (a1 x + a3) / t^3 + vQ (a1 t - yQ) / t^2 + (a1 uQ - gx gy) / t^2)
        let a1x_a3 = RatFunc::from_poly(UniPoly::new(alloc::vec![a3.clone(), a1.clone()]));
        let a1t_yq = RatFunc::from_poly(&t.scale(a1) - &UniPoly::constant(yq.clone()));
        let term = inv3
            .mul(&a1x_a3)
            .mul(&cst(uq.clone()))
            .add(&inv2.mul(&a1t_yq).mul(&cst(vq.clone())))
            .add(&inv2.mul(&cst(a1 * &uq - &gx * &gy)));
        y_const = y_const.sub(&term);

        q = curve.add_unchecked(&q, kernel);
    }
    let codomain = WeierstrassCurve::new([
        a1.clone(),
        a2.clone(),
        a3.clone(),
        a4 - int(5) * &v_sum,
        a6 - &b2 * &v_sum - int(7) * &w_sum,
    ])?;
    Ok(IsogenyMap {
        domain: curve.clone(),
        codomain,
        x_map,
        y_map: YMap::new(y_const, y_lin),
        degree: ell,
        kernel_generator: Some(kernel.clone()),
    })
}
