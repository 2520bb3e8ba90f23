//! Brumer's dihedral quintic `b(a,b;X)` and its pair of 5-isogenous curves.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::curves::{CurvePoint, TwistMap, WeierstrassCurve};
use crate::diagram::KummerDiagram;
use crate::exact::{int, is_rational_square, Rational, UniPoly};
use crate::isogeny::{velu, IsogenyMap};
use crate::{Error, Result};

pub use crate::septic::septic_poly;

/// `X^5 + (a-3)X^4 - (a-b-3)X^3 + (a^2-a-2b-1)X^2 + bX + a`.
pub fn brumer_poly(a: &Rational, b: &Rational) -> UniPoly {
    let one = Rational::one();
    UniPoly::new(vec![
        a.clone(),
        b.clone(),
        a * a - a - int(2) * b - &one,
        -(a - b - int(3)),
        a - int(3),
        one,
    ])
}

fn c0(a: &Rational) -> Rational {
    // a(4a^4 - 4a^3 - 40a^2 + 91a - 4)
    let a2 = a * a;
    a * (int(4) * &a2 * &a2 - int(4) * &a2 * a - int(40) * &a2 + int(91) * a - int(4))
}

fn c1(a: &Rational) -> Rational {
    // a(3a + 1)(4a - 7)
    a * (int(3) * a + int(1)) * (int(4) * a - int(7))
}

fn c2(a: &Rational) -> Rational {
    a * a - int(30) * a + int(1)
}

/// `d(a,b) = -4b^3 + (a^2-30a+1)b^2 + 2a(3a+1)(4a-7)b - a(4a^4-4a^3-40a^2+91a-4)`.
pub fn quintic_d(a: &Rational, b: &Rational) -> Rational {
    let b2 = b * b;
    -int(4) * &b2 * b + c2(a) * &b2 + int(2) * c1(a) * b - c0(a)
}

/// Numerator of the closed-form Hoshi-Rikuna transform.
pub fn hr_numerator(a: &Rational, b: &Rational) -> Rational {
    let b2 = b * b;
    let a2 = a * a;
    let a3 = &a2 * a;
    let sext = &a3 * &a3 + int(5) * &a3 * &a2 - int(81) * &a2 * &a2 + int(352) * &a3
        - int(634) * &a2
        - int(65) * a
        - int(1);
    &b2 * &b2 + c1(a) * &b2 - int(2) * c0(a) * b + a * sext
}

/// Denominator of the closed-form Hoshi-Rikuna transform.
pub fn hr_denominator(a: &Rational, b: &Rational) -> Rational {
    let b2 = b * b;
    int(4) * &b2 * b - c2(a) * &b2 - int(2) * c1(a) * b + c0(a)
}

/// The closed form `p(a,b)/q(a,b)`.
///
/// Kept for comparison only: at `(1,0)` it gives `-9`, which is not in the
/// square class of `d(1,0)`. [`doubling_transform`] is the verified version.
pub fn hoshi_rikuna(a: &Rational, b: &Rational) -> Result<Rational> {
    let q = hr_denominator(a, b);
    if q.is_zero() {
        return Err(Error::Pole);
    }
    Ok(hr_numerator(a, b) / q)
}

/// `j(E*_{a,b}) = (a^4-12a^3+14a^2+12a+1)^3 / (a^5 (a^2-11a-1))`.
pub fn star_j_invariant(a: &Rational) -> Result<Rational> {
    let a2 = a * a;
    let num = &a2 * &a2 - int(12) * &a2 * a + int(14) * &a2 + int(12) * a + int(1);
    let den = &a2 * &a2 * a * (&a2 - int(11) * a - int(1));
    if den.is_zero() {
        return Err(Error::Pole);
    }
    Ok(&num * &num * &num / den)
}

/// `x^2 (x - a)^2` and the numerator of the degree-5 x-map out of `E*_a`.
pub fn lambda_star_x_map(a: &Rational) -> (UniPoly, UniPoly) {
    let a2 = a * a;
    let num = UniPoly::new(vec![
        &a2 * &a2,
        &a2 * a * (a - int(3)),
        -int(3) * &a2 * (a - int(1)),
        a * (&a2 + int(3) * a - int(1)),
        -int(2) * a,
        Rational::one(),
    ]);
    let den = (&UniPoly::x() * &UniPoly::linear_root(a)).pow(2);
    (num, den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuinticParams {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

/// Every object attached to one specialisation `(a, b)`.
#[derive(Clone, Debug)]
pub struct QuinticFamily {
    pub params: QuinticParams,
    pub diagram: KummerDiagram,
    pub p0: CurvePoint,
}

impl QuinticFamily {
    pub fn e(&self) -> &WeierstrassCurve {
        &self.diagram.e
    }

    pub fn e_star(&self) -> &WeierstrassCurve {
        &self.diagram.e_star
    }

    pub fn e_a(&self) -> &WeierstrassCurve {
        &self.diagram.e_a
    }

    pub fn e_a_star(&self) -> &WeierstrassCurve {
        &self.diagram.e_a_star
    }

    pub fn lambda_star(&self) -> &IsogenyMap {
        &self.diagram.lambda_star
    }

    pub fn f(&self) -> &TwistMap {
        &self.diagram.f
    }

    pub fn f_star(&self) -> &TwistMap {
        &self.diagram.f_star
    }

    /// `d(a,b)` is a rational square: the splitting field is cyclic.
    pub fn is_degenerate(&self) -> bool {
        self.diagram.is_degenerate()
    }
}

/// `E_{a,b}: y^2 = x^3 + d(a^2-30a+1)x^2 - 8d^2 a(3a+1)(4a-7)x - 16d^3 a(4a^4-4a^3-40a^2+91a-4)`.
pub fn curve_e(a: &Rational, d: &Rational) -> Result<WeierstrassCurve> {
    let d2 = d * d;
    WeierstrassCurve::short(d * c2(a), -int(8) * &d2 * c1(a), -int(16) * &d2 * d * c0(a))
}

/// `E*_a: y^2 - (a-1)xy - ay = x^3 - ax^2`, with `(0,0)` of order 5.
pub fn curve_e_a_star(a: &Rational) -> Result<WeierstrassCurve> {
    let z = Rational::zero();
    WeierstrassCurve::new([-(a - int(1)), -a.clone(), -a.clone(), z.clone(), z])
}

/// `f: E_{a,b} -> E_a`.
pub fn twist_f(a: &Rational, d: &Rational) -> TwistMap {
    TwistMap {
        d: d.clone(),
        x_scale: (int(4) * d).recip(),
        x_shift: -int(2) * a,
        y_from_x: (a - int(1)) / (int(8) * d),
        y_scale: (int(8) * d).recip(),
        y_shift: -(a * (int(2) * a - int(3))) / int(2),
    }
}

/// `f*: E*_{a,b} -> E*_a`.
pub fn twist_f_star(a: &Rational, d: &Rational) -> TwistMap {
    let a2 = a * a;
    TwistMap {
        d: d.clone(),
        x_scale: (int(100) * d).recip(),
        x_shift: -int(2) * (&a2 - int(5) * a + int(1)) / int(25),
        y_from_x: (a - int(1)) / (int(200) * d),
        y_scale: (int(1000) * d).recip(),
        y_shift: -(int(2) * &a2 * a - int(12) * &a2 - int(13) * a - int(2)) / int(50),
    }
}

/// Builds the family, its twists and the degree-5 isogeny `lambda*`.
///
/// `E_{a,b}` comes from its closed form; `E*_{a,b}` is the pullback of
/// `E*_a` along `f*`. Both closed forms are cross-checked against the
/// diagram (pullback of `E_a` along `f`, and the j-invariant formula).
pub fn family(a: &Rational, b: &Rational) -> Result<QuinticFamily> {
    let invalid = |why: &str| Error::InvalidParameters(format!("(a, b) = ({a}, {b}): {why}"));
    if a.is_zero() {
        return Err(invalid("a = 0"));
    }
    let d = quintic_d(a, b);
    if d.is_zero() {
        return Err(invalid("d(a, b) = 0"));
    }
    let e = curve_e(a, &d).map_err(|_| invalid("E_{a,b} is singular"))?;
    let e_a_star = curve_e_a_star(a).map_err(|_| invalid("E*_a is singular"))?;
    let lambda_star = velu(&e_a_star, &CurvePoint::affine(int(0), int(0)), 5)?;
    let diagram = KummerDiagram::from_bottom_row(
        d.clone(),
        lambda_star,
        twist_f(a, &d),
        twist_f_star(a, &d),
    )?;
    if diagram.e != e {
        return Err(Error::Conjugation(format!(
            "closed-form E_(a,b) {e} differs from the pullback {}",
            diagram.e
        )));
    }
    if diagram.e_star.j_invariant()? != star_j_invariant(a)? {
        return Err(Error::Conjugation(format!(
            "j(E*_(a,b)) mismatch at a = {a}"
        )));
    }
    let p0 = CurvePoint::affine(-int(4) * &d * b, int(4) * &d * &d);
    debug_assert!(e.contains(&p0));
    Ok(QuinticFamily {
        params: QuinticParams {
            a: a.clone(),
            b: b.clone(),
            d,
        },
        diagram,
        p0,
    })
}

/// `P0 = (-4db, 4d^2)`, the point behind `b(a,b;X)` itself.
pub fn base_point(fam: &QuinticFamily) -> CurvePoint {
    fam.p0.clone()
}

/// `phi*: E*_{a,b} -> E_{a,b}`, evaluated as `f^-1 o lambda* o f*`.
pub fn phi_star_eval(fam: &QuinticFamily, p: &CurvePoint) -> Result<CurvePoint> {
    fam.diagram.phi_star(p)
}

/// `beta = x(P) / (-4d)`.
pub fn point_to_beta(fam: &QuinticFamily, p: &CurvePoint) -> Result<Rational> {
    if !fam.e().contains(p) {
        return Err(Error::PointValidation);
    }
    let x = p.x().ok_or(Error::Infinity)?;
    Ok(x / (-int(4) * &fam.params.d))
}

/// `b(P;X) = b(a, x(P)/(-4d); X)`.
pub fn brumer_from_point(fam: &QuinticFamily, p: &CurvePoint) -> Result<UniPoly> {
    Ok(brumer_poly(&fam.params.a, &point_to_beta(fam, p)?))
}

/// `B(X) = N(X) - x(f(P)) D(X)` where `N/D` is the x-map of `lambda*`.
pub fn kummer_poly(fam: &QuinticFamily, p: &CurvePoint) -> Result<UniPoly> {
    if !fam.e().contains(p) {
        return Err(Error::PointValidation);
    }
    let xf = fam.diagram.f_x(p)?;
    let map = &fam.lambda_star().x_map;
    Ok(map.num() - &map.den().scale(&xf))
}

/// `(X^5 / a^4) B(a / X)` for a polynomial of degree at most 5.
pub fn lecacheux_transform(b: &UniPoly, a: &Rational) -> UniPoly {
    let a4 = a * a * a * a;
    let coeffs: Vec<Rational> = (0..=5)
        .rev()
        .map(|i| b.coeff(i) * pow(a, i as u32) / &a4)
        .collect();
    UniPoly::new(coeffs)
}

fn pow(a: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * a)
}

/// `beta' = x([2]P) / (-4d)`: the doubling on `E_{a,b}` read in Brumer
/// parameters. `b(a,beta';X)` has the same splitting field as `b(P;X)`.
pub fn doubling_transform(fam: &QuinticFamily, p: &CurvePoint) -> Result<Rational> {
    if p.is_infinity() {
        return Err(Error::Infinity);
    }
    let doubled = fam.e().mul(2, p)?;
    if doubled.is_infinity() {
        return Err(Error::Infinity);
    }
    point_to_beta(fam, &doubled)
}

/// The points `[2^i] P` for `i = 1..=n` with their parameters.
pub fn doubling_iterates(
    fam: &QuinticFamily,
    p: &CurvePoint,
    n: usize,
) -> Result<Vec<(CurvePoint, Rational)>> {
    let mut out = Vec::with_capacity(n);
    let mut cur = p.clone();
    for _ in 0..n {
        let beta = doubling_transform(fam, &cur)?;
        cur = fam.e().mul(2, &cur)?;
        out.push((cur.clone(), beta));
    }
    Ok(out)
}

/// The square-root witness `u` with `d(a, beta) = d u^2`, if any.
pub fn square_class_witness(a: &Rational, beta: &Rational, d: &Rational) -> Option<Rational> {
    if d.is_zero() {
        return None;
    }
    is_rational_square(&(quintic_d(a, beta) / d))
}
