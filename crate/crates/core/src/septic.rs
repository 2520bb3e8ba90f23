//! The curve `C_a` with rational 7-torsion point `(0,0)`, its degree-7
//! isogeny `psi`, and the septic family `N_a(X) - b D_a(X)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::curves::{CurvePoint, WeierstrassCurve};
use crate::exact::{int, RatFunc, Rational, UniPoly};
use crate::isogeny::{velu, IsogenyMap};
use crate::{Error, Result};

fn check_a(a: &Rational) -> Result<()> {
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidParameters(format!(
            "a = {a} (must avoid 0 and 1)"
        )));
    }
    Ok(())
}

fn pw(a: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * a)
}

/// `C_a: y^2 + (a^2+a-1)xy + a^3(a-1)y = x^3 + a(a-1)x^2`.
pub fn septic_curve(a: &Rational) -> Result<WeierstrassCurve> {
    check_a(a)?;
    let am1 = a - int(1);
    WeierstrassCurve::new([
        a * a + a - int(1),
        a * &am1,
        pw(a, 3) * &am1,
        Rational::zero(),
        Rational::zero(),
    ])
    .map_err(|_| Error::InvalidParameters(format!("C_a is singular at a = {a}")))
}

/// The degree-7 numerator `N_a(x)` of the x-map of `psi`.
pub fn septic_numerator(a: &Rational) -> UniPoly {
    let m = a - int(1);
    let p = |cs: &[i64]| UniPoly::from_ints(cs).eval_rational(a);
    UniPoly::new(vec![
        pw(a, 12) * pw(&m, 6),
        pw(a, 9) * pw(&m, 5) * p(&[-1, 3, 3]),
        pw(a, 7) * pw(&m, 4) * (a + int(1)) * p(&[-3, 5, 3]),
        pw(a, 4) * pw(&m, 3) * p(&[-1, -1, -4, 8, 7, 1]),
        pw(a, 3) * pw(&m, 2) * p(&[-6, 9, -12, 13, 1]),
        -(a * &m * p(&[1, 2, -3, 5, -7, 1])),
        int(2) * a * &m * (a + int(1)),
        Rational::one(),
    ])
}

/// `D_a(x) = x^2 (x + a^2(a-1))^2 (x + a(a-1))^2`.
pub fn septic_denominator(a: &Rational) -> UniPoly {
    let m = a - int(1);
    let roots = [Rational::zero(), -(a * a * &m), -(a * &m)];
    roots.iter().fold(UniPoly::one(), |acc, r| {
        &acc * &UniPoly::linear_root(r).pow(2)
    })
}

/// `N_a(X) - b D_a(X)`.
pub fn septic_poly(a: &Rational, b: &Rational) -> Result<UniPoly> {
    check_a(a)?;
    Ok(&septic_numerator(a) - &septic_denominator(a).scale(b))
}

/// Roots of `D_a`: `{0, -a^2(a-1), -a(a-1)}`.
pub fn septic_kernel_xcoords(a: &Rational) -> Result<Vec<Rational>> {
    check_a(a)?;
    let m = a - int(1);
    Ok(vec![Rational::zero(), -(a * a * &m), -(a * &m)])
}

#[derive(Clone, Debug)]
pub struct SepticFamily {
    pub a: Rational,
    pub curve: WeierstrassCurve,
    pub psi: IsogenyMap,
}

impl SepticFamily {
    /// The closed form `N_a / D_a`.
    pub fn closed_form_x_map(&self) -> RatFunc {
        RatFunc::new(septic_numerator(&self.a), septic_denominator(&self.a))
            .expect("D_a is nonzero")
    }

    /// Whether Vélu's x-map agrees with `N_a / D_a`.
    pub fn matches_closed_form(&self) -> bool {
        self.psi.x_map == self.closed_form_x_map()
    }
}

pub fn septic_family(a: &Rational) -> Result<SepticFamily> {
    let curve = septic_curve(a)?;
    let origin = CurvePoint::affine(Rational::zero(), Rational::zero());
    let psi = velu(&curve, &origin, 7)?;
    Ok(SepticFamily {
        a: a.clone(),
        curve,
        psi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_at_two() {
        let fam = septic_family(&int(2)).unwrap();
        let o = CurvePoint::from_ints(0, 0);
        assert_eq!(fam.curve.torsion_order(&o, 12), Some(7));
        assert_eq!(
            septic_denominator(&int(2)),
            &(&UniPoly::x().pow(2) * &UniPoly::from_ints(&[4, 1]).pow(2))
                * &UniPoly::from_ints(&[2, 1]).pow(2)
        );
        assert!(fam.matches_closed_form());
        assert_eq!(fam.psi.degree, 7);
        assert!(fam.psi.verify_kernel());
    }

    #[test]
    fn kernel_xs() {
        assert_eq!(
            septic_kernel_xcoords(&int(2)).unwrap(),
            vec![int(0), int(-4), int(-2)]
        );
        assert_eq!(
            septic_kernel_xcoords(&int(-1)).unwrap(),
            vec![int(0), int(2), int(-2)]
        );
        let c = septic_curve(&int(2)).unwrap();
        let o = CurvePoint::from_ints(0, 0);
        let mut xs: Vec<Rational> = (1..=3)
            .map(|i| c.mul(i, &o).unwrap().x().unwrap().clone())
            .collect();
        let mut expected = septic_kernel_xcoords(&int(2)).unwrap();
        xs.sort();
        expected.sort();
        assert_eq!(xs, expected);
    }

    #[test]
    fn poly_shape() {
        let p = septic_poly(&int(2), &int(1)).unwrap();
        assert_eq!(p.degree(), Some(7));
        assert!(p.is_monic());
        assert_eq!(p.coeff(0), int(4096));
        assert!(septic_poly(&int(1), &int(1)).is_err());
        assert!(septic_family(&int(0)).is_err());
    }
}
