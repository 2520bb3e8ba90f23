//! The weak Mordell-Weil quotient `E(Q) / phi*(E*(Q))` and the splitting
//! fields it classifies.
//!
//! Mordell-Weil groups enter as user-supplied bases ([`MWBasis`]). Points are
//! written in basis coordinates by bounded search ([`decompose`]), the image
//! of `phi*` becomes an integer lattice, and the quotient is read off modulo
//! `l` as a vector space over `F_l` whose lines are the isomorphism classes
//! of splitting fields.

mod lattice;
mod oracle;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

pub use lattice::{
    all_lines, hermite_normal_form, lattice_contains, lattice_index, normalize_line, QuotientSpace,
};
pub use oracle::reducibility_oracle;

use crate::cubic::{cubic_from_point, CubicFamily, FixedDiscCurve};
use crate::curves::{CurvePoint, WeierstrassCurve};
use crate::exact::{Rational, UniPoly};
use crate::quintic::{self, QuinticFamily};
use crate::{Error, Result};

/// A presentation of `E(Q)`: free generators (taken on trust) and torsion
/// generators with their orders (checked).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MWBasis {
    pub curve: WeierstrassCurve,
    pub free: Vec<CurvePoint>,
    pub torsion: Vec<(CurvePoint, u32)>,
}

impl MWBasis {
    pub fn new(
        curve: WeierstrassCurve,
        free: Vec<CurvePoint>,
        torsion: Vec<(CurvePoint, u32)>,
    ) -> Result<Self> {
        for p in free.iter().chain(torsion.iter().map(|(t, _)| t)) {
            if !curve.contains(p) {
                return Err(Error::PointValidation);
            }
        }
        for (t, m) in &torsion {
            let found = curve.torsion_order(t, (*m).max(WeierstrassCurve::MAZUR_BOUND));
            if found != Some(*m) || *m < 2 {
                return Err(Error::TorsionOrder {
                    expected: *m,
                    found,
                });
            }
        }
        Ok(MWBasis {
            curve,
            free,
            torsion,
        })
    }

    pub fn rank(&self) -> usize {
        self.free.len()
    }

    /// Number of coordinates: free generators first, then torsion.
    pub fn len(&self) -> usize {
        self.free.len() + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn generator(&self, i: usize) -> &CurvePoint {
        if i < self.free.len() {
            &self.free[i]
        } else {
            &self.torsion[i - self.free.len()].0
        }
    }

    /// `sum c_i G_i`.
    pub fn combine(&self, coeffs: &[i64]) -> Result<CurvePoint> {
        if coeffs.len() != self.len() {
            return Err(Error::Shape(alloc::format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                self.len()
            )));
        }
        Ok(coeffs
            .iter()
            .enumerate()
            .fold(CurvePoint::Infinity, |acc, (i, &c)| {
                let term = self.curve.mul_unchecked(c, self.generator(i));
                self.curve.add_unchecked(&acc, &term)
            }))
    }

    /// Relations `m e_i` coming from the torsion generators.
    fn relations(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        self.torsion
            .iter()
            .enumerate()
            .map(|(j, (_, m))| {
                let mut row = vec![0; self.len()];
                row[r + j] = *m as i64;
                row
            })
            .collect()
    }
}

type PointKey = Option<(Rational, Rational)>;

fn key(p: &CurvePoint) -> PointKey {
    match p {
        CurvePoint::Infinity => None,
        CurvePoint::Affine { x, y } => Some((x.clone(), y.clone())),
    }
}

fn coeff_weight(v: &[i64]) -> u64 {
    v.iter().map(|c| c.unsigned_abs()).sum()
}

struct Axis {
    values: Vec<i64>,
    multiples: Vec<CurvePoint>,
}

fn walk(
    curve: &WeierstrassCurve,
    axes: &[Axis],
    acc: &CurvePoint,
    prefix: &mut Vec<i64>,
    visit: &mut dyn FnMut(&CurvePoint, &[i64]),
) {
    let Some((axis, rest)) = axes.split_first() else {
        visit(acc, prefix);
        return;
    };
    for (v, m) in axis.values.iter().zip(&axis.multiples) {
        prefix.push(*v);
        walk(curve, rest, &curve.add_unchecked(acc, m), prefix, visit);
        prefix.pop();
    }
}

/// Coefficients `(n_1..n_r; t_1..t_s)` with `|n_i| <= bound`, `0 <= t_j < m_j`
/// and `sum n_i P_i + sum t_j T_j = P`. Among all solutions the one minimal
/// in `(sum |c|, c)` is returned.
pub fn decompose(p: &CurvePoint, basis: &MWBasis, bound: u32) -> Result<Vec<i64>> {
    if !basis.curve.contains(p) {
        return Err(Error::PointValidation);
    }
    let curve = &basis.curve;
    let b = bound as i64;
    let axes: Vec<Axis> = (0..basis.len())
        .map(|i| {
            let values: Vec<i64> = if i < basis.rank() {
                (-b..=b).collect()
            } else {
                (0..basis.torsion[i - basis.rank()].1 as i64).collect()
            };
            let multiples = values
                .iter()
                .map(|&v| curve.mul_unchecked(v, basis.generator(i)))
                .collect();
            Axis { values, multiples }
        })
        .collect();
    let (left, right) = axes.split_at(axes.len() / 2);

    let mut table: BTreeMap<PointKey, Vec<Vec<i64>>> = BTreeMap::new();
    walk(
        curve,
        right,
        &CurvePoint::Infinity,
        &mut Vec::new(),
        &mut |s, v| {
            table.entry(key(s)).or_default().push(v.to_vec());
        },
    );

    let mut best: Option<Vec<i64>> = None;
    let neg_p = curve.neg_unchecked(p);
    walk(
        curve,
        left,
        &CurvePoint::Infinity,
        &mut Vec::new(),
        &mut |s, v| {
            // want s + t = P, i.e. t = -(s - P) = P - s
            let target = curve.neg_unchecked(&curve.add_unchecked(s, &neg_p));
            if let Some(hits) = table.get(&key(&target)) {
                for h in hits {
                    let mut full = v.to_vec();
                    full.extend_from_slice(h);
                    let better = match &best {
                        None => true,
                        Some(cur) => (coeff_weight(&full), &full) < (coeff_weight(cur), cur),
                    };
                    if better {
                        best = Some(full);
                    }
                }
            }
        },
    );
    best.ok_or(Error::DecompositionNotFound { bound })
}

/// What the classifier needs from a family: the prime, both curves, the
/// dual isogeny and, for polynomial families, the polynomial of a point.
pub trait KummerFamily {
    fn ell(&self) -> u32;
    /// The curve `E` whose quotient is computed.
    fn curve(&self) -> &WeierstrassCurve;
    /// The source `E*` of `phi*`.
    fn dual_curve(&self) -> &WeierstrassCurve;
    fn phi_star(&self, p: &CurvePoint) -> Result<CurvePoint>;
    /// The point attached to the input polynomial itself, if any.
    fn base_point(&self) -> Option<CurvePoint>;
    fn beta(&self, p: &CurvePoint) -> Result<Option<Rational>>;
    fn polynomial(&self, p: &CurvePoint) -> Result<UniPoly>;
}

impl KummerFamily for QuinticFamily {
    fn ell(&self) -> u32 {
        5
    }

    fn curve(&self) -> &WeierstrassCurve {
        self.e()
    }

    fn dual_curve(&self) -> &WeierstrassCurve {
        self.e_star()
    }

    fn phi_star(&self, p: &CurvePoint) -> Result<CurvePoint> {
        quintic::phi_star_eval(self, p)
    }

    fn base_point(&self) -> Option<CurvePoint> {
        Some(self.p0.clone())
    }

    fn beta(&self, p: &CurvePoint) -> Result<Option<Rational>> {
        quintic::point_to_beta(self, p).map(Some)
    }

    fn polynomial(&self, p: &CurvePoint) -> Result<UniPoly> {
        quintic::brumer_from_point(self, p)
    }
}

impl KummerFamily for CubicFamily {
    fn ell(&self) -> u32 {
        3
    }

    fn curve(&self) -> &WeierstrassCurve {
        self.e()
    }

    fn dual_curve(&self) -> &WeierstrassCurve {
        self.e_star()
    }

    fn phi_star(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.phi_star.evaluate_rational(p)
    }

    fn base_point(&self) -> Option<CurvePoint> {
        Some(self.p0.clone())
    }

    fn beta(&self, p: &CurvePoint) -> Result<Option<Rational>> {
        CubicFamily::beta(self, p).map(Some)
    }

    fn polynomial(&self, p: &CurvePoint) -> Result<UniPoly> {
        CubicFamily::polynomial(self, p)
    }
}

impl KummerFamily for FixedDiscCurve {
    fn ell(&self) -> u32 {
        3
    }

    fn curve(&self) -> &WeierstrassCurve {
        FixedDiscCurve::curve(self)
    }

    fn dual_curve(&self) -> &WeierstrassCurve {
        self.e_star()
    }

    fn phi_star(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.phi_star.evaluate_rational(p)
    }

    fn base_point(&self) -> Option<CurvePoint> {
        None
    }

    fn beta(&self, _: &CurvePoint) -> Result<Option<Rational>> {
        Ok(None)
    }

    fn polynomial(&self, p: &CurvePoint) -> Result<UniPoly> {
        cubic_from_point(self, p)
    }
}

/// The image `phi*(E*(Q))` inside `E(Q)`, in coordinates of an `E`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImagePresentation {
    pub ell: u32,
    /// `phi*` of each `E*`-generator (free, then torsion).
    pub images: Vec<CurvePoint>,
    /// Coordinates of `images`.
    pub rows: Vec<Vec<i64>>,
    /// Hermite basis of the image lattice, torsion relations included.
    pub lattice: Vec<Vec<i64>>,
    /// `[E(Q) : phi*(E*(Q))]`, when finite.
    pub index: Option<u64>,
    pub quotient_rank: usize,
    /// Basis coordinates that survive modulo `l`.
    pub live: Vec<usize>,
    pub space: QuotientSpace,
}

impl ImagePresentation {
    /// Builds the presentation from coordinates of the image generators.
    pub fn from_rows(
        ell: u32,
        basis: &MWBasis,
        images: Vec<CurvePoint>,
        rows: Vec<Vec<i64>>,
    ) -> Self {
        let n = basis.len();
        let mut all = rows.clone();
        all.extend(basis.relations());
        let lattice = hermite_normal_form(&all, n);
        let index = lattice_index(&lattice, n);
        let r = basis.rank();
        let live: Vec<usize> = (0..n)
            .filter(|&i| i < r || basis.torsion[i - r].1.is_multiple_of(ell))
            .collect();
        let reduced: Vec<Vec<u32>> = rows
            .iter()
            .map(|row| {
                live.iter()
                    .map(|&i| lattice::reduce_mod(row[i], ell))
                    .collect()
            })
            .collect();
        let space = QuotientSpace::new(ell, live.len(), &reduced);
        ImagePresentation {
            ell,
            images,
            rows,
            lattice,
            index,
            quotient_rank: space.dim(),
            live,
            space,
        }
    }

    /// `l^k`, which equals `index` when the basis is saturated.
    pub fn expected_index(&self) -> u64 {
        (self.ell as u64).pow(self.quotient_rank as u32)
    }

    /// Quotient coordinates of a coefficient vector.
    pub fn project(&self, coeffs: &[i64]) -> Vec<u32> {
        let v: Vec<u32> = self
            .live
            .iter()
            .map(|&i| lattice::reduce_mod(coeffs[i], self.ell))
            .collect();
        self.space.project(&v)
    }

    /// The order-`l` subgroup containing the class of `coeffs`, by
    /// normalised generator; `None` for the trivial class.
    pub fn line_of(&self, coeffs: &[i64]) -> Option<Vec<u32>> {
        normalize_line(&self.project(coeffs), self.ell)
    }

    pub fn contains(&self, coeffs: &[i64]) -> bool {
        lattice_contains(&self.lattice, coeffs)
    }
}

pub fn image_presentation<K: KummerFamily + ?Sized>(
    fam: &K,
    e_basis: &MWBasis,
    estar_basis: &MWBasis,
    bound: u32,
) -> Result<ImagePresentation> {
    if &e_basis.curve != fam.curve() {
        return Err(Error::InvalidParameters(alloc::format!(
            "basis curve {} is not E = {}",
            e_basis.curve,
            fam.curve()
        )));
    }
    if &estar_basis.curve != fam.dual_curve() {
        return Err(Error::InvalidParameters(alloc::format!(
            "basis curve {} is not E* = {}",
            estar_basis.curve,
            fam.dual_curve()
        )));
    }
    let sources = estar_basis
        .free
        .iter()
        .chain(estar_basis.torsion.iter().map(|(t, _)| t));
    let mut images = Vec::new();
    let mut rows = Vec::new();
    for q in sources {
        let img = fam.phi_star(q)?;
        rows.push(decompose(&img, e_basis, bound)?);
        images.push(img);
    }
    Ok(ImagePresentation::from_rows(
        fam.ell(),
        e_basis,
        images,
        rows,
    ))
}

/// Whether `P` lies in `phi*(E*(Q))`.
pub fn membership(
    p: &CurvePoint,
    pres: &ImagePresentation,
    basis: &MWBasis,
    bound: u32,
) -> Result<bool> {
    if p.is_infinity() {
        return Ok(true);
    }
    Ok(pres.contains(&decompose(p, basis, bound)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    /// Normalised generator of the subgroup in quotient coordinates.
    pub subgroup: Vec<u32>,
    pub coefficients: Vec<i64>,
    pub representative: CurvePoint,
    pub beta: Option<Rational>,
    pub polynomial: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub ell: u32,
    pub quotient_rank: usize,
    pub classes: Vec<ClassEntry>,
    /// Position in `classes` of the class of the base point.
    pub base_class: Option<usize>,
}

impl Classification {
    pub fn class_of(&self, pres: &ImagePresentation, coeffs: &[i64]) -> Option<usize> {
        let line = pres.line_of(coeffs)?;
        self.classes.iter().position(|c| c.subgroup == line)
    }
}

fn lex_key(v: &[i64]) -> Vec<(u8, u64)> {
    v.iter()
        .map(|&c| match c {
            c if c > 0 => (0, c as u64),
            c if c < 0 => (1, c.unsigned_abs()),
            _ => (2, 0),
        })
        .collect()
}

/// Candidate coefficient vectors in representative order: small total
/// weight first, positive before negative coordinate by coordinate.
fn candidates(pres: &ImagePresentation, basis: &MWBasis) -> Vec<Vec<i64>> {
    let h = ((pres.ell - 1) / 2) as i64;
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for i in 0..basis.len() {
        let range: Vec<i64> = if pres.live.contains(&i) {
            (-h..=h).collect()
        } else {
            vec![0]
        };
        out = out
            .into_iter()
            .flat_map(|v| {
                range.iter().map(move |&c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.sort_by_cached_key(|v| (coeff_weight(v), lex_key(v)));
    out
}

/// One entry per order-`l` subgroup of the quotient, each with its first
/// representative in [`candidates`] order.
pub fn enumerate_classes<K: KummerFamily + ?Sized>(
    fam: &K,
    pres: &ImagePresentation,
    basis: &MWBasis,
    bound: u32,
) -> Result<Classification> {
    if pres.quotient_rank == 0 {
        return Err(Error::EmptyQuotient);
    }
    let target = all_lines(pres.ell, pres.quotient_rank).len();
    let mut classes: Vec<ClassEntry> = Vec::with_capacity(target);
    for v in candidates(pres, basis) {
        if classes.len() == target {
            break;
        }
        let Some(line) = pres.line_of(&v) else {
            continue;
        };
        if classes.iter().any(|c| c.subgroup == line) {
            continue;
        }
        let rep = basis.combine(&v)?;
        classes.push(ClassEntry {
            subgroup: line,
            beta: fam.beta(&rep)?,
            polynomial: fam.polynomial(&rep)?,
            representative: rep,
            coefficients: v,
        });
    }
    let mut out = Classification {
        ell: pres.ell,
        quotient_rank: pres.quotient_rank,
        classes,
        base_class: None,
    };
    out.base_class = match base_class(fam, pres, basis, &out, bound) {
        Ok(i) => Some(i),
        Err(Error::BaseReducible | Error::InvalidParameters(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(out)
}

/// Which class holds the base point `P0` of the family.
pub fn base_class<K: KummerFamily + ?Sized>(
    fam: &K,
    pres: &ImagePresentation,
    basis: &MWBasis,
    classes: &Classification,
    bound: u32,
) -> Result<usize> {
    let p0 = fam
        .base_point()
        .ok_or_else(|| Error::InvalidParameters("family has no base point".into()))?;
    let coeffs = decompose(&p0, basis, bound)?;
    classes.class_of(pres, &coeffs).ok_or(Error::BaseReducible)
}
