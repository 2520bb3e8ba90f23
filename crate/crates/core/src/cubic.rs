//! The generic cubic `X^3 + bX + a`, its 3-isogenous curves with explicit
//! maps, and the fixed-discriminant curve `E_D: y^2 = x^3 - 432D`.

use alloc::format;
use alloc::vec;

use num_traits::{One, Zero};

use crate::curves::{CurvePoint, TwistMap, WeierstrassCurve};
use crate::diagram::KummerDiagram;
use crate::exact::{int, poly_discriminant, RatFunc, Rational, UniPoly};
use crate::isogeny::{velu, IsogenyMap, YMap};
use crate::{Error, Result};

/// `X^3 + bX + a`.
pub fn cubic_poly(a: &Rational, b: &Rational) -> UniPoly {
    UniPoly::new(vec![
        a.clone(),
        b.clone(),
        Rational::zero(),
        Rational::one(),
    ])
}

/// `d(a,b) = -(4b^3 + 27a^2)`.
pub fn cubic_d(a: &Rational, b: &Rational) -> Rational {
    -(int(4) * b * b * b + int(27) * a * a)
}

fn rf(num: UniPoly, den: UniPoly) -> RatFunc {
    RatFunc::new(num, den).expect("nonzero denominator")
}

fn cubic_term(lead: i64, c: Rational) -> UniPoly {
    UniPoly::new(vec![c, Rational::zero(), Rational::zero(), int(lead)])
}

fn monomial(coeff: i64, deg: usize) -> UniPoly {
    let mut cs = vec![Rational::zero(); deg + 1];
    cs[deg] = int(coeff);
    UniPoly::new(cs)
}

/// `y^2 = x^3 - 432c` and `y^2 = x^3 + 11664c` where `c = a^2 d^3` (or
/// `c = D` for the fixed-discriminant curve).
pub fn isogenous_pair(c: &Rational) -> Result<(WeierstrassCurve, WeierstrassCurve)> {
    let z = Rational::zero();
    Ok((
        WeierstrassCurve::short(z.clone(), z.clone(), -int(432) * c)?,
        WeierstrassCurve::short(z.clone(), z, int(11664) * c)?,
    ))
}

/// `phi(x, y) = ((x^3 - 1728c)/x^2, (x^3 + 3456c) y / x^3)`.
pub fn explicit_phi(c: &Rational) -> Result<IsogenyMap> {
    let (e, e_star) = isogenous_pair(c)?;
    let x_map = rf(cubic_term(1, -int(1728) * c), monomial(1, 2));
    let y_map = YMap::new(
        RatFunc::from_poly(UniPoly::zero()),
        rf(cubic_term(1, int(3456) * c), monomial(1, 3)),
    );
    Ok(IsogenyMap::explicit(e, e_star, x_map, y_map, 3))
}

/// `phi*(x, y) = ((x^3 + 46656c)/(9x^2), (-x^3 + 93312c) y / (27x^3))`.
pub fn explicit_phi_star(c: &Rational) -> Result<IsogenyMap> {
    let (e, e_star) = isogenous_pair(c)?;
    let x_map = rf(cubic_term(1, int(46656) * c), monomial(9, 2));
    let y_map = YMap::new(
        RatFunc::from_poly(UniPoly::zero()),
        rf(cubic_term(-1, int(93312) * c), monomial(27, 3)),
    );
    Ok(IsogenyMap::explicit(e_star, e, x_map, y_map, 3))
}

/// `E*_a: y^2 + 216a y = x^3`; `(0,0)` has order 3.
pub fn curve_e_a_star(a: &Rational) -> Result<WeierstrassCurve> {
    let z = Rational::zero();
    WeierstrassCurve::new([z.clone(), z.clone(), int(216) * a, z.clone(), z])
}

/// `f(x, y) = (9x/d, -27y/(d sqrt d) - 108a)`.
pub fn twist_f(a: &Rational, d: &Rational) -> TwistMap {
    TwistMap {
        d: d.clone(),
        x_scale: int(9) / d,
        x_shift: Rational::zero(),
        y_from_x: Rational::zero(),
        y_scale: -int(27) / d,
        y_shift: -int(108) * a,
    }
}

/// `f*(x, y) = (x/d, y/(d sqrt d) - 108a)`.
pub fn twist_f_star(a: &Rational, d: &Rational) -> TwistMap {
    TwistMap {
        d: d.clone(),
        x_scale: d.recip(),
        x_shift: Rational::zero(),
        y_from_x: Rational::zero(),
        y_scale: d.recip(),
        y_shift: -int(108) * a,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicParams {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

#[derive(Clone, Debug)]
pub struct CubicFamily {
    pub params: CubicParams,
    pub phi: IsogenyMap,
    pub phi_star: IsogenyMap,
    pub diagram: KummerDiagram,
    pub p0: CurvePoint,
}

impl CubicFamily {
    pub fn e(&self) -> &WeierstrassCurve {
        &self.phi.domain
    }

    pub fn e_star(&self) -> &WeierstrassCurve {
        &self.phi.codomain
    }

    pub fn lambda_star(&self) -> &IsogenyMap {
        &self.diagram.lambda_star
    }

    pub fn is_degenerate(&self) -> bool {
        self.diagram.is_degenerate()
    }

    /// `phi*` through the twisted square, `f^-1 o lambda* o f*`.
    pub fn phi_star_via_conjugation(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.diagram.phi_star(p)
    }

    /// `beta = x(P) / (-4d)`.
    pub fn beta(&self, p: &CurvePoint) -> Result<Rational> {
        if !self.e().contains(p) {
            return Err(Error::PointValidation);
        }
        let x = p.x().ok_or(Error::Infinity)?;
        Ok(x / (-int(4) * &self.params.d))
    }

    /// `X^3 + beta X + a` for `beta = x(P)/(-4d)`.
    pub fn polynomial(&self, p: &CurvePoint) -> Result<UniPoly> {
        Ok(cubic_poly(&self.params.a, &self.beta(p)?))
    }
}

pub fn cubic_family(a: &Rational, b: &Rational) -> Result<CubicFamily> {
    let d = cubic_d(a, b);
    if a.is_zero() || d.is_zero() {
        return Err(Error::InvalidParameters(format!(
            "(a, b) = ({a}, {b}) needs a != 0 and d != 0"
        )));
    }
    let c = a * a * &d * &d * &d;
    let phi = explicit_phi(&c)?;
    let phi_star = explicit_phi_star(&c)?;
    let e_a_star = curve_e_a_star(a)?;
    let lambda_star = velu(&e_a_star, &CurvePoint::affine(int(0), int(0)), 3)?;
    let diagram = KummerDiagram::from_bottom_row(
        d.clone(),
        lambda_star,
        twist_f(a, &d),
        twist_f_star(a, &d),
    )?;
    if diagram.e != phi.domain || diagram.e_star != phi.codomain {
        return Err(Error::Conjugation(format!(
            "twisted curves {} / {} differ from {} / {}",
            diagram.e, diagram.e_star, phi.domain, phi.codomain
        )));
    }
    let p0 = CurvePoint::affine(-int(4) * &d * b, int(4) * &d * &d);
    Ok(CubicFamily {
        params: CubicParams {
            a: a.clone(),
            b: b.clone(),
            d,
        },
        phi,
        phi_star,
        diagram,
        p0,
    })
}

/// `phi*` from its closed form.
pub fn cubic_phi_star_eval(fam: &CubicFamily, p: &CurvePoint) -> Result<CurvePoint> {
    fam.phi_star.evaluate_rational(p)
}

/// `E_D: y^2 = x^3 - 432D` with its 3-isogenous partner.
#[derive(Clone, Debug)]
pub struct FixedDiscCurve {
    pub disc: Rational,
    pub phi: IsogenyMap,
    pub phi_star: IsogenyMap,
}

impl FixedDiscCurve {
    pub fn curve(&self) -> &WeierstrassCurve {
        &self.phi.domain
    }

    pub fn e_star(&self) -> &WeierstrassCurve {
        &self.phi.codomain
    }
}

pub fn fixed_disc_curve(disc: &Rational) -> Result<FixedDiscCurve> {
    if disc.is_zero() {
        return Err(Error::InvalidParameters(format!("D = {disc}")));
    }
    Ok(FixedDiscCurve {
        disc: disc.clone(),
        phi: explicit_phi(disc)?,
        phi_star: explicit_phi_star(disc)?,
    })
}

/// `F(P;X) = X^3 - x(P)/12 X - y(P)/108`, of discriminant `D`.
pub fn cubic_from_point(fd: &FixedDiscCurve, p: &CurvePoint) -> Result<UniPoly> {
    if !fd.curve().contains(p) {
        return Err(Error::PointValidation);
    }
    let CurvePoint::Affine { x, y } = p else {
        return Err(Error::Infinity);
    };
    Ok(UniPoly::new(vec![
        -y / int(108),
        -x / int(12),
        Rational::zero(),
        Rational::one(),
    ]))
}

/// For monic `g = X^3 - pX^2 + qX - r`: `D = disc g` and
/// `P_g = (4(p^2 - 3q), 4(2p^3 - 9pq + 27r))` on `E_D`.
pub fn point_from_monic(g: &UniPoly) -> Result<(Rational, CurvePoint)> {
    if g.degree() != Some(3) || !g.is_monic() {
        return Err(Error::Shape(format!("expected a monic cubic, got {g}")));
    }
    let p = -g.coeff(2);
    let q = g.coeff(1);
    let r = -g.coeff(0);
    let disc = poly_discriminant(g)?;
    if disc.is_zero() {
        return Err(Error::InvalidParameters(format!("{g} has a repeated root")));
    }
    let x = int(4) * (&p * &p - int(3) * &q);
    let y = int(4) * (int(2) * &p * &p * &p - int(9) * &p * &q + int(27) * &r);
    Ok((disc, CurvePoint::affine(x, y)))
}

/// Translation of a point of `E_D` into cubic-family parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub params: CubicParams,
    /// `s = D^2 y(P_g) / 4`; the family curve is `y^2 = x^3 - 432 D s^6`.
    pub scale: Rational,
}

/// `a = -D^2`, `b = -D x(P_g) / 4`.
pub fn reduce_to_family(fd: &FixedDiscCurve, p: &CurvePoint) -> Result<Reduction> {
    if !fd.curve().contains(p) {
        return Err(Error::PointValidation);
    }
    let CurvePoint::Affine { x, y } = p else {
        return Err(Error::Infinity);
    };
    let dd = &fd.disc;
    let a = -(dd * dd);
    let b = -(dd * x) / int(4);
    let d = cubic_d(&a, &b);
    Ok(Reduction {
        params: CubicParams { a, b, d },
        scale: dd * dd * y / int(4),
    })
}
