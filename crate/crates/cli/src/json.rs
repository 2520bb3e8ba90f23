//! JSON encodings. Rationals are `"p/q"` strings (plain integers are also
//! accepted as numbers), polynomials are coefficient arrays starting with
//! the constant term, points are `{"x", "y"}` or the string `"inf"`.

use kummer_core::classify::{Classification, ImagePresentation, MWBasis};
use kummer_core::curves::{CurvePoint, WeierstrassCurve};
use kummer_core::isogeny::{IsogenyMap, YMap};
use kummer_core::{RatFunc, Rational, UniPoly};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
    #[error(transparent)]
    Core(#[from] kummer_core::Error),
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
}

fn invalid(path: &str, msg: impl Into<String>) -> JsonError {
    JsonError::Invalid {
        path: path.to_string(),
        msg: msg.into(),
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn parse_rational_str(s: &str) -> Option<Rational> {
    let r: Rational = s.trim().parse().ok()?;
    Some(r)
}

pub fn rational_from(v: &Value, path: &str) -> Result<Rational, JsonError> {
    match v {
        Value::String(s) => {
            parse_rational_str(s).ok_or_else(|| invalid(path, format!("not a rational: {s:?}")))
        }
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| {
                invalid(
                    path,
                    format!("non-integral number {n}; write rationals as \"p/q\""),
                )
            }),
        _ => Err(invalid(path, "expected a rational")),
    }
}

/// Integral coefficients that fit an `i64` are written as numbers.
fn coefficient(c: &Rational) -> Value {
    match (c.is_integer(), c.numer().to_i64()) {
        (true, Some(i)) => json!(i),
        _ => rational(c),
    }
}

pub fn poly(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(coefficient).collect())
}

pub fn poly_from(v: &Value, path: &str) -> Result<UniPoly, JsonError> {
    let arr = v
        .as_array()
        .ok_or_else(|| invalid(path, "expected a coefficient array"))?;
    let coeffs = arr
        .iter()
        .enumerate()
        .map(|(i, c)| rational_from(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UniPoly::new(coeffs))
}

pub fn curve(e: &WeierstrassCurve) -> Value {
    json!({
        "a1": rational(&e.a1),
        "a2": rational(&e.a2),
        "a3": rational(&e.a3),
        "a4": rational(&e.a4),
        "a6": rational(&e.a6),
    })
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, JsonError> {
    v.get(key)
        .ok_or_else(|| invalid(path, format!("missing field {key:?}")))
}

pub fn curve_from(v: &Value, path: &str) -> Result<WeierstrassCurve, JsonError> {
    let mut a = Vec::with_capacity(5);
    for k in ["a1", "a2", "a3", "a4", "a6"] {
        a.push(match v.get(k) {
            Some(c) => rational_from(c, &format!("{path}.{k}"))?,
            None => Rational::from_integer(0.into()),
        });
    }
    let a: [Rational; 5] = a.try_into().expect("five coefficients");
    Ok(WeierstrassCurve::new(a)?)
}

pub fn point(p: &CurvePoint) -> Value {
    match p {
        CurvePoint::Infinity => json!("inf"),
        CurvePoint::Affine { x, y } => json!({ "x": rational(x), "y": rational(y) }),
    }
}

pub fn point_from(v: &Value, path: &str) -> Result<CurvePoint, JsonError> {
    if v.as_str() == Some("inf") {
        return Ok(CurvePoint::Infinity);
    }
    let x = rational_from(field(v, "x", path)?, &format!("{path}.x"))?;
    let y = rational_from(field(v, "y", path)?, &format!("{path}.y"))?;
    Ok(CurvePoint::affine(x, y))
}

pub fn mw_basis(b: &MWBasis) -> Value {
    json!({
        "curve": curve(&b.curve),
        "free": b.free.iter().map(point).collect::<Vec<_>>(),
        "torsion": b.torsion.iter().map(|(p, m)| json!({ "point": point(p), "order": m })).collect::<Vec<_>>(),
    })
}

pub fn mw_basis_from(v: &Value, path: &str) -> Result<MWBasis, JsonError> {
    let e = curve_from(field(v, "curve", path)?, &format!("{path}.curve"))?;
    let mut free = Vec::new();
    if let Some(arr) = v.get("free") {
        let arr = arr
            .as_array()
            .ok_or_else(|| invalid(path, "\"free\" must be an array"))?;
        for (i, p) in arr.iter().enumerate() {
            free.push(point_from(p, &format!("{path}.free[{i}]"))?);
        }
    }
    let mut torsion = Vec::new();
    if let Some(arr) = v.get("torsion") {
        let arr = arr
            .as_array()
            .ok_or_else(|| invalid(path, "\"torsion\" must be an array"))?;
        for (i, t) in arr.iter().enumerate() {
            let here = format!("{path}.torsion[{i}]");
            let p = point_from(field(t, "point", &here)?, &format!("{here}.point"))?;
            let order = field(t, "order", &here)?
                .as_u64()
                .and_then(|m| u32::try_from(m).ok())
                .ok_or_else(|| invalid(&here, "order must be a positive integer"))?;
            torsion.push((p, order));
        }
    }
    Ok(MWBasis::new(e, free, torsion)?)
}

pub fn ratfunc(f: &RatFunc) -> Value {
    json!({ "num": poly(f.num()), "den": poly(f.den()) })
}

pub fn ratfunc_from(v: &Value, path: &str) -> Result<RatFunc, JsonError> {
    let num = poly_from(field(v, "num", path)?, &format!("{path}.num"))?;
    let den = poly_from(field(v, "den", path)?, &format!("{path}.den"))?;
    Ok(RatFunc::new(num, den)?)
}

pub fn isogeny(m: &IsogenyMap) -> Value {
    let (u, v, w) = m.y_map.triple();
    let mut out = json!({
        "domain": curve(&m.domain),
        "codomain": curve(&m.codomain),
        "degree": m.degree,
        "x_map": ratfunc(&m.x_map),
        "y_map": { "u": poly(&u), "v": poly(&v), "w": poly(&w) },
    });
    if let Some(k) = &m.kernel_generator {
        out["kernel_generator"] = point(k);
    }
    out
}

pub fn isogeny_from(v: &Value, path: &str) -> Result<IsogenyMap, JsonError> {
    let domain = curve_from(field(v, "domain", path)?, &format!("{path}.domain"))?;
    let codomain = curve_from(field(v, "codomain", path)?, &format!("{path}.codomain"))?;
    let degree = field(v, "degree", path)?
        .as_u64()
        .and_then(|d| u32::try_from(d).ok())
        .ok_or_else(|| invalid(path, "degree must be a positive integer"))?;
    let x_map = ratfunc_from(field(v, "x_map", path)?, &format!("{path}.x_map"))?;
    let y = field(v, "y_map", path)?;
    let yp = format!("{path}.y_map");
    let y_map = YMap::from_triple(
        poly_from(field(y, "u", &yp)?, &format!("{yp}.u"))?,
        poly_from(field(y, "v", &yp)?, &format!("{yp}.v"))?,
        poly_from(field(y, "w", &yp)?, &format!("{yp}.w"))?,
    )?;
    let mut m = IsogenyMap::explicit(domain, codomain, x_map, y_map, degree);
    if let Some(k) = v.get("kernel_generator") {
        m.kernel_generator = Some(point_from(k, &format!("{path}.kernel_generator"))?);
    }
    Ok(m)
}

fn int_rows(rows: &[Vec<i64>]) -> Value {
    json!(rows)
}

pub fn image(pres: &ImagePresentation) -> Value {
    json!({
        "ell": pres.ell,
        "images": pres.images.iter().map(point).collect::<Vec<_>>(),
        "rows": int_rows(&pres.rows),
        "lattice": int_rows(&pres.lattice),
        "index": pres.index,
        "quotient_rank": pres.quotient_rank,
    })
}

pub fn classification(c: &Classification) -> Value {
    let classes: Vec<Value> = c
        .classes
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("subgroup".into(), json!(e.subgroup));
            m.insert("coefficients".into(), json!(e.coefficients));
            m.insert("representative".into(), point(&e.representative));
            m.insert("beta".into(), e.beta.as_ref().map_or(Value::Null, rational));
            m.insert("polynomial".into(), poly(&e.polynomial));
            Value::Object(m)
        })
        .collect();
    json!({
        "ell": c.ell,
        "quotient_rank": c.quotient_rank,
        "classes": classes,
        "base_class": c.base_class,
    })
}

pub fn render(v: &Value, compact: bool) -> String {
    if compact {
        serde_json::to_string(v).expect("serialisable")
    } else {
        serde_json::to_string_pretty(v).expect("serialisable")
    }
}
