use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use kummer_core::classify::{enumerate_classes, image_presentation, KummerFamily, MWBasis};
use kummer_core::cubic::{
    cubic_family, cubic_from_point, fixed_disc_curve, point_from_monic, reduce_to_family,
};
use kummer_core::curves::CurvePoint;
use kummer_core::exact::{is_rational_square, poly_discriminant};
use kummer_core::quintic::{
    brumer_from_point, doubling_iterates, family, hoshi_rikuna, kummer_poly, lecacheux_transform,
    point_to_beta, quintic_d, star_j_invariant,
};
use kummer_core::septic::{septic_family, septic_kernel_xcoords, septic_poly};
use kummer_core::{Error, Rational};
use serde_json::{json, Value};

use crate::fixtures::{self, Fixture};
use crate::json::{self as js, JsonError};
use crate::parse::{self, ParseError};

#[derive(Debug, Parser)]
#[command(
    name = "kd",
    version,
    about = "Elliptic curves, isogenies and splitting fields of dihedral polynomial families"
)]
pub struct Cli {
    /// Single-line JSON output.
    #[arg(long, global = true)]
    pub compact: bool,
    /// Coefficient bound for decompositions in a Mordell-Weil basis.
    #[arg(long, global = true, env = "KD_DECOMP_BOUND", default_value_t = 3)]
    pub bound: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Brumer's quintic family b(a,b;X).
    Quintic {
        #[command(subcommand)]
        command: QuinticCmd,
    },
    /// The cubic family X^3 + bX + a and cubics of fixed discriminant.
    Cubic {
        #[command(subcommand)]
        command: CubicCmd,
    },
    /// The septic family attached to 7-torsion.
    Septic {
        #[command(subcommand)]
        command: SepticCmd,
    },
    /// Checks against bundled data.
    Verify {
        #[command(subcommand)]
        command: VerifyCmd,
    },
}

#[derive(Debug, Args)]
pub struct Params {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::rational)]
    pub a: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse::rational)]
    pub b: Rational,
}

#[derive(Debug, Args)]
pub struct Bases {
    /// File holding a Mordell-Weil basis of E as JSON.
    #[arg(long)]
    pub mw: Option<PathBuf>,
    /// File holding a Mordell-Weil basis of E* as JSON.
    #[arg(long = "mw-star")]
    pub mw_star: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum QuinticCmd {
    /// Curves, twists, isogeny and base point.
    Family(Params),
    /// beta = x(P)/(-4d) and b(a,beta;X) for a point of E.
    Beta {
        #[command(flatten)]
        params: Params,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::point)]
        point: CurvePoint,
    },
    /// Weak Mordell-Weil quotient and one beta per isomorphism class.
    Classify {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        bases: Bases,
    },
    /// Repeated doubling of a point (P0 by default) as new parameters.
    Transform {
        #[command(flatten)]
        params: Params,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::point)]
        point: Option<CurvePoint>,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// The polynomial B(X) cut out by the isogeny and its reversal.
    KummerPoly {
        #[command(flatten)]
        params: Params,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::point)]
        point: Option<CurvePoint>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CubicCmd {
    /// Curves, isogenies and base point for X^3 + bX + a.
    Family(Params),
    /// Quotient for X^3 + bX + a, or for E_D with --D.
    Classify {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::rational)]
        a: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::rational)]
        b: Option<Rational>,
        #[arg(long = "D", allow_hyphen_values = true, value_parser = parse::rational)]
        disc: Option<Rational>,
        #[command(flatten)]
        bases: Bases,
    },
    /// E_D: y^2 = x^3 - 432D and F(P;X) for a point, or P_g for a monic cubic.
    FixedDisc {
        #[arg(long = "D", allow_hyphen_values = true, value_parser = parse::rational)]
        disc: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::point)]
        point: Option<CurvePoint>,
        /// Monic cubic as "1,-p,q,-r" or "X^3 - pX^2 + qX - r".
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Family parameters (a, b) with the same splitting field.
    Reduce {
        #[arg(long = "D", allow_hyphen_values = true, value_parser = parse::rational)]
        disc: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::point)]
        point: Option<CurvePoint>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SepticCmd {
    /// The septic polynomial for parameters a and b.
    Poly(Params),
    /// Velu's 7-isogeny against the closed form N_a/D_a.
    Verify {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::rational)]
        a: Rational,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Replay every bundled example.
    Fixtures,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    /// Carries the report to print before exiting.
    #[error("verification failed")]
    Mismatch(Value),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::DecompositionNotFound { .. })
            | CliError::Json(JsonError::Core(Error::DecompositionNotFound { .. })) => 3,
            CliError::Mismatch(_) => 4,
            _ => 2,
        }
    }
}

type Out = Result<Value, CliError>;

pub fn run(cli: &Cli) -> Out {
    let bound = cli.bound;
    match &cli.command {
        Command::Quintic { command } => quintic(command, bound),
        Command::Cubic { command } => cubic(command, bound),
        Command::Septic { command } => septic(command),
        Command::Verify {
            command: VerifyCmd::Fixtures,
        } => {
            let report = fixtures::verify(bound);
            if report.passed() {
                Ok(report.to_json())
            } else {
                Err(CliError::Mismatch(report.to_json()))
            }
        }
    }
}

fn read_basis(path: &Path) -> Result<MWBasis, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let v: Value = serde_json::from_str(&text).map_err(JsonError::from)?;
    Ok(js::mw_basis_from(&v, &path.display().to_string())?)
}

fn bases_for(bases: &Bases, fixture: Option<Fixture>) -> Result<(MWBasis, MWBasis), CliError> {
    match (&bases.mw, &bases.mw_star, fixture) {
        (Some(e), Some(es), _) => Ok((read_basis(e)?, read_basis(es)?)),
        (None, None, Some(fx)) => Ok((fx.e_basis()?, fx.estar_basis()?)),
        _ => Err(CliError::Usage(
            "Mordell-Weil bases required: pass both --mw and --mw-star".into(),
        )),
    }
}

fn classify_json(fam: &dyn KummerFamily, e: &MWBasis, es: &MWBasis, bound: u32) -> Out {
    let pres = image_presentation(fam, e, es, bound)?;
    let mut out = match enumerate_classes(fam, &pres, e, bound) {
        Ok(cls) => js::classification(&cls),
        Err(Error::EmptyQuotient) => {
            json!({ "ell": pres.ell, "quotient_rank": 0, "classes": [], "base_class": null })
        }
        Err(err) => return Err(err.into()),
    };
    out["image"] = js::image(&pres);
    Ok(out)
}

fn quintic(cmd: &QuinticCmd, bound: u32) -> Out {
    match cmd {
        QuinticCmd::Family(Params { a, b }) => {
            let fam = family(a, b)?;
            Ok(json!({
                "a": js::rational(a),
                "b": js::rational(b),
                "d": js::rational(&fam.params.d),
                "is_degenerate": fam.is_degenerate(),
                "polynomial": js::poly(&kummer_core::quintic::brumer_poly(a, b)),
                "E": js::curve(fam.e()),
                "E_star": js::curve(fam.e_star()),
                "E_a": js::curve(fam.e_a()),
                "E_a_star": js::curve(fam.e_a_star()),
                "j_star": js::rational(&star_j_invariant(a)?),
                "P0": js::point(&fam.p0),
                "lambda_star": js::isogeny(fam.lambda_star()),
            }))
        }
        QuinticCmd::Beta {
            params: Params { a, b },
            point,
        } => {
            let fam = family(a, b)?;
            Ok(json!({
                "beta": js::rational(&point_to_beta(&fam, point)?),
                "polynomial": js::poly(&brumer_from_point(&fam, point)?),
            }))
        }
        QuinticCmd::Classify {
            params: Params { a, b },
            bases,
        } => {
            let fam = family(a, b)?;
            let (e, es) = bases_for(bases, fixtures::lookup("quintic", &[("a", a), ("b", b)]))?;
            let mut out = classify_json(&fam, &e, &es, bound)?;
            out["d"] = js::rational(&fam.params.d);
            Ok(out)
        }
        QuinticCmd::Transform {
            params: Params { a, b },
            point,
            iterate,
        } => {
            let fam = family(a, b)?;
            let start = point.clone().unwrap_or_else(|| fam.p0.clone());
            let steps = doubling_iterates(&fam, &start, *iterate)?;
            let d = &fam.params.d;
            let iterates: Vec<Value> = steps
                .iter()
                .map(|(p, beta)| {
                    json!({
                        "point": js::point(p),
                        "beta": js::rational(beta),
                        "on_curve": fam.e().contains(p),
                        "square_class": is_rational_square(&(quintic_d(a, beta) / d)).is_some(),
                    })
                })
                .collect();
            let hr = match hoshi_rikuna(a, b) {
                Ok(v) => {
                    let dv = quintic_d(a, &v);
                    let ok = is_rational_square(&(dv / d)).is_some();
                    json!({ "value": js::rational(&v), "square_class": ok, "status": if ok { "ok" } else { "known-issue" } })
                }
                Err(e) => json!({ "error": e.to_string(), "status": "known-issue" }),
            };
            Ok(json!({
                "start": js::point(&start),
                "betas": steps.iter().map(|(_, beta)| js::rational(beta)).collect::<Vec<_>>(),
                "iterates": iterates,
                "hoshi_rikuna": hr,
            }))
        }
        QuinticCmd::KummerPoly {
            params: Params { a, b },
            point,
        } => {
            let fam = family(a, b)?;
            let p = point.clone().unwrap_or_else(|| fam.p0.clone());
            let big_b = kummer_poly(&fam, &p)?;
            let reversed = lecacheux_transform(&big_b, a);
            let brumer = brumer_from_point(&fam, &p)?;
            Ok(json!({
                "point": js::point(&p),
                "B": js::poly(&big_b),
                "reversed": js::poly(&reversed),
                "brumer": js::poly(&brumer),
                "identity_holds": reversed == brumer,
            }))
        }
    }
}

fn monic_input(poly: &str) -> Result<kummer_core::UniPoly, CliError> {
    Ok(parse::polynomial(poly)?)
}

fn disc_and_point(
    disc: &Option<Rational>,
    point: &Option<CurvePoint>,
    poly: &Option<String>,
) -> Result<(Rational, Option<CurvePoint>), CliError> {
    match (disc, point, poly) {
        (_, _, Some(text)) => {
            let g = monic_input(text)?;
            let (d, p) = point_from_monic(&g)?;
            if let Some(given) = disc {
                if *given != d {
                    return Err(CliError::Usage(format!(
                        "--D {given} disagrees with the discriminant {d} of {g}"
                    )));
                }
            }
            Ok((d, Some(p)))
        }
        (Some(d), p, None) => Ok((d.clone(), p.clone())),
        (None, _, None) => Err(CliError::Usage(
            "pass --D (with an optional --point) or --poly".into(),
        )),
    }
}

fn cubic(cmd: &CubicCmd, bound: u32) -> Out {
    match cmd {
        CubicCmd::Family(Params { a, b }) => {
            let fam = cubic_family(a, b)?;
            Ok(json!({
                "a": js::rational(a),
                "b": js::rational(b),
                "d": js::rational(&fam.params.d),
                "is_degenerate": fam.is_degenerate(),
                "polynomial": js::poly(&kummer_core::cubic::cubic_poly(a, b)),
                "E": js::curve(fam.e()),
                "E_star": js::curve(fam.e_star()),
                "E_a": js::curve(&fam.diagram.e_a),
                "E_a_star": js::curve(&fam.diagram.e_a_star),
                "P0": js::point(&fam.p0),
                "phi": js::isogeny(&fam.phi),
                "phi_star": js::isogeny(&fam.phi_star),
                "lambda_star": js::isogeny(fam.lambda_star()),
            }))
        }
        CubicCmd::Classify { a, b, disc, bases } => match (a, b, disc) {
            (_, _, Some(d)) => {
                let fd = fixed_disc_curve(d)?;
                let (e, es) = bases_for(bases, fixtures::lookup("fixed_disc", &[("D", d)]))?;
                classify_json(&fd, &e, &es, bound)
            }
            (Some(a), Some(b), None) => {
                let fam = cubic_family(a, b)?;
                let (e, es) = bases_for(bases, fixtures::lookup("cubic", &[("a", a), ("b", b)]))?;
                classify_json(&fam, &e, &es, bound)
            }
            _ => Err(CliError::Usage("pass --a and --b, or --D".into())),
        },
        CubicCmd::FixedDisc { disc, point, poly } => {
            let (d, p) = disc_and_point(disc, point, poly)?;
            let fd = fixed_disc_curve(&d)?;
            let mut out = json!({
                "D": js::rational(&d),
                "E_D": js::curve(fd.curve()),
                "E_star": js::curve(fd.e_star()),
            });
            if let Some(p) = p {
                let f = cubic_from_point(&fd, &p)?;
                out["point"] = js::point(&p);
                out["polynomial"] = js::poly(&f);
                out["discriminant"] = js::rational(&poly_discriminant(&f)?);
            }
            Ok(out)
        }
        CubicCmd::Reduce { disc, point, poly } => {
            let (d, p) = disc_and_point(disc, point, poly)?;
            let p =
                p.ok_or_else(|| CliError::Usage("a point (--point or --poly) is required".into()))?;
            let fd = fixed_disc_curve(&d)?;
            let r = reduce_to_family(&fd, &p)?;
            Ok(json!({
                "D": js::rational(&d),
                "P_g": js::point(&p),
                "a": js::rational(&r.params.a),
                "b": js::rational(&r.params.b),
                "d": js::rational(&r.params.d),
                "scale": js::rational(&r.scale),
                "polynomial": js::poly(&kummer_core::cubic::cubic_poly(&r.params.a, &r.params.b)),
            }))
        }
    }
}

fn septic(cmd: &SepticCmd) -> Out {
    match cmd {
        SepticCmd::Poly(Params { a, b }) => Ok(json!({
            "a": js::rational(a),
            "b": js::rational(b),
            "polynomial": js::poly(&septic_poly(a, b)?),
        })),
        SepticCmd::Verify { a } => {
            let fam = septic_family(a)?;
            let out = json!({
                "a": js::rational(a),
                "curve": js::curve(&fam.curve),
                "kernel_x": septic_kernel_xcoords(a)?.iter().map(js::rational).collect::<Vec<_>>(),
                "x_map": js::ratfunc(&fam.psi.x_map),
                "closed_form": js::ratfunc(&fam.closed_form_x_map()),
                "codomain": js::curve(&fam.psi.codomain),
                "matches": fam.matches_closed_form(),
            });
            if fam.matches_closed_form() {
                Ok(out)
            } else {
                Err(CliError::Mismatch(out))
            }
        }
    }
}
