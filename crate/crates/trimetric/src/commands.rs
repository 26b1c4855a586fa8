//! The `distance`, `geodesic`, `norm` and `unit-ball` subcommands.
//!
//! Each returns its standard-output text plus any warnings; the binary
//! decides where they go.

use std::fmt::Write as _;

use trimetric_core::polygon::{Aggregate, PolygonSpace};
use trimetric_core::quadrant::{finsler_star, unit_ball};
use trimetric_core::surface::{
    eta_t, eta_t_family_arith, eta_t_family_max, finsler_t, finsler_t_family, geodesic_t,
};
use trimetric_core::triangle_space::{
    eta, eta_family_arith, eta_family_max, finsler_family_arith, finsler_norm, geodesic,
};
use trimetric_core::{
    QuadrantPoint, ShapeTangent, SurfacePoint, SurfaceTangent, TangentVector, TriCoords, TrianglePoint,
};

use crate::error::{CliError, CliResult};
use crate::input::{
    parse_polygon, parse_surface, parse_surface_pair, parse_surface_vector, parse_triangle, parse_vector,
    parse_planar_rows, LoadedPolygon, NORMALIZATION_WARNING,
};
use crate::output::{num, svg_polygons, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Space {
    Triangle,
    Surface,
    Polygon,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Output {
    pub text: String,
    pub warnings: Vec<String>,
}

impl Output {
    fn line(&mut self, key: &str, value: f64) {
        let _ = writeln!(self.text, "{key} = {}", num(value));
    }
}

fn check_t(ts: &[f64]) -> CliResult<()> {
    match ts.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        Some(t) => Err(CliError::input(format!("family parameter {t} is outside [0, 1]"))),
        None => Ok(()),
    }
}

fn unit_triangle(c: TriCoords, raw: bool, what: &str, out: &mut Output) -> TriCoords {
    if raw {
        return c;
    }
    let (n, _) = c.normalize_unit_area();
    if (c.area() - 1.0).abs() > NORMALIZATION_WARNING {
        out.warnings.push(format!("{what}: rescaled to unit area (area was {})", c.area()));
    }
    n
}

fn unit_surface(p: SurfacePoint, raw: bool, what: &str, out: &mut Output) -> SurfacePoint {
    if raw {
        return p;
    }
    if (p.area() - 1.0).abs() > NORMALIZATION_WARNING {
        out.warnings.push(format!("{what}: rescaled to unit area (area was {})", p.area()));
    }
    p.normalize_unit_area().0
}

fn load_polygon(text: &str, what: &str, out: &mut Output) -> CliResult<LoadedPolygon> {
    let p = parse_polygon(text)?;
    if p.adjustment > NORMALIZATION_WARNING {
        out.warnings.push(format!(
            "{what}: moved to canonical pose and unit area (largest change {:.3e})",
            p.adjustment
        ));
    }
    Ok(p)
}

/// Prints both directed distances, the two symmetrizations and the
/// requested family members.
///
/// Triangle and surface inputs are rescaled to unit area unless `raw` is
/// set; polygons are always canonicalized.
pub fn distance(space: Space, x: &str, y: &str, raw: bool, ts: &[f64]) -> CliResult<Output> {
    check_t(ts)?;
    let mut out = Output::default();
    let (fwd, rev, family): (f64, f64, Vec<(f64, f64, f64)>) = match space {
        Space::Triangle => {
            let cx = unit_triangle(parse_triangle(x)?, raw, "X", &mut out);
            let cy = unit_triangle(parse_triangle(y)?, raw, "Y", &mut out);
            let (fwd, rev) = (eta(&cx, &cy), eta(&cy, &cx));
            let family = if raw {
                ts.iter()
                    .map(|&t| (t, (1.0 - t) * fwd + t * rev, ((1.0 - t) * fwd).max(t * rev)))
                    .collect()
            } else {
                let (px, py) = (TrianglePoint::new(cx)?, TrianglePoint::new(cy)?);
                ts.iter()
                    .map(|&t| Ok((t, eta_family_arith(t, &px, &py)?, eta_family_max(t, &px, &py)?)))
                    .collect::<CliResult<_>>()?
            };
            (fwd, rev, family)
        }
        Space::Surface => {
            let (px, py) = parse_surface_pair(x, y)?;
            let px = unit_surface(px, raw, "X", &mut out);
            let py = unit_surface(py, raw, "Y", &mut out);
            let family = ts
                .iter()
                .map(|&t| Ok((t, eta_t_family_arith(t, &px, &py)?, eta_t_family_max(t, &px, &py)?)))
                .collect::<CliResult<_>>()?;
            (eta_t(&px, &py)?, eta_t(&py, &px)?, family)
        }
        Space::Polygon => {
            let px = load_polygon(x, "X", &mut out)?.shape;
            let py = load_polygon(y, "Y", &mut out)?.shape;
            if px.n() != py.n() {
                return Err(CliError::input("polygons have different numbers of vertices"));
            }
            let space = PolygonSpace::new(px.n())?;
            out.line("eta_avg(X,Y)", space.eta_avg(&px, &py)?);
            out.line("eta_avg(Y,X)", space.eta_avg(&py, &px)?);
            let _ = writeln!(out.text, "charts = {}", space.triangulations().len());
            let (f, r) = (space.eta_sup(&px, &py)?, space.eta_sup(&py, &px)?);
            let family = ts
                .iter()
                .map(|&t| (t, (1.0 - t) * f + t * r, ((1.0 - t) * f).max(t * r)))
                .collect();
            (f, r, family)
        }
    };
    let label = if space == Space::Polygon { "eta_sup" } else { "eta" };
    out.line(&format!("{label}(X,Y)"), fwd);
    out.line(&format!("{label}(Y,X)"), rev);
    out.line("arith", 0.5 * (fwd + rev));
    out.line("max", fwd.max(rev));
    for (t, a, m) in family {
        out.line(&format!("family_arith[t={t}]"), a);
        out.line(&format!("family_max[t={t}]"), m);
    }
    Ok(out)
}

/// Samples the constructed geodesic on `k` equally spaced parameters.
///
/// Columns: `t`, the coordinates, `eta_from_start = eta(X, a(t))`,
/// `eta_to_end = eta(a(t), Y)`, and the additivity residuals
/// `eta(X, a) + eta(a, Y) - eta(X, Y)` and the same for the reversed path.
pub fn geodesic_table(space: Space, x: &str, y: &str, k: usize) -> CliResult<(Table, Output)> {
    if k < 2 {
        return Err(CliError::input("the grid needs at least 2 points"));
    }
    let mut out = Output::default();
    let ts: Vec<f64> = (0..k).map(|m| m as f64 / (k - 1) as f64).collect();
    match space {
        Space::Triangle => {
            let px = TrianglePoint::new(unit_triangle(parse_triangle(x)?, false, "X", &mut out))?;
            let py = TrianglePoint::new(unit_triangle(parse_triangle(y)?, false, "Y", &mut out))?;
            let g = geodesic(&px, &py);
            let (c0, c1) = (px.coords(), py.coords());
            let (d, dr) = (eta(&c0, &c1), eta(&c1, &c0));
            let mut table = Table::new(&[
                "t", "A1", "A2", "A3", "eta_from_start", "eta_to_end", "residual", "reverse_residual",
            ]);
            for &t in &ts {
                let a = g.at(t).coords();
                let (s, e) = (eta(&c0, &a), eta(&a, &c1));
                let rev = eta(&c1, &a) + eta(&a, &c0) - dr;
                let c = a.as_array();
                table.push(vec![t, c[0], c[1], c[2], s, e, s + e - d, rev]);
            }
            Ok((table, out))
        }
        Space::Surface => {
            let (px, py) = parse_surface_pair(x, y)?;
            let px = unit_surface(px, false, "X", &mut out);
            let py = unit_surface(py, false, "Y", &mut out);
            let g = geodesic_t(&px, &py)?;
            let (d, dr) = (eta_t(&px, &py)?, eta_t(&py, &px)?);
            let mut names: Vec<String> = (0..px.slots().len())
                .flat_map(|f| (0..3).map(move |s| format!("f{f}_s{s}")))
                .collect();
            names.insert(0, "t".into());
            for c in ["eta_from_start", "eta_to_end", "residual", "reverse_residual"] {
                names.push(c.into());
            }
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut table = Table::new(&refs);
            for &t in &ts {
                let a = g.at(t);
                let (s, e) = (eta_t(&px, &a)?, eta_t(&a, &py)?);
                let rev = eta_t(&py, &a)? + eta_t(&a, &px)? - dr;
                let mut row = vec![t];
                row.extend(a.flat());
                row.extend([s, e, s + e - d, rev]);
                table.push(row);
            }
            Ok((table, out))
        }
        Space::Polygon => Err(CliError::input(
            "no closed-form geodesic in polygon space; use `experiment polygon-bounds`",
        )),
    }
}

/// Evaluates the Finsler norm of a tangent vector and of its negative.
///
/// Triangle vectors may give two components, the third being solved from
/// the area constraint. Base points are rescaled to unit area and the
/// vector is carried along by the same scaling.
pub fn norm(space: Space, point: &str, vector: &str, ts: &[f64]) -> CliResult<Output> {
    check_t(ts)?;
    let mut out = Output::default();
    let (f, b) = match space {
        Space::Triangle => {
            let c = parse_triangle(point)?;
            let (n, lambda) = c.normalize_unit_area();
            let base = TrianglePoint::new(n)?;
            let v: Vec<f64> = parse_vector(vector)?.iter().map(|x| lambda * x).collect();
            let tv = match v.len() {
                2 => TangentVector::completing(base, v[0], v[1]),
                3 => TangentVector::new(base, [v[0], v[1], v[2]])?,
                _ => return Err(CliError::input("a triangle tangent has 2 or 3 components")),
            };
            for &t in ts {
                out.line(&format!("family_arith[t={t}]"), finsler_family_arith(t, &tv)?);
            }
            (finsler_norm(&tv), finsler_norm(&tv.negated()))
        }
        Space::Surface => {
            let p = parse_surface(point)?;
            let (n, lambda) = p.normalize_unit_area();
            let v = parse_surface_vector(vector, n.slots().len())?
                .into_iter()
                .map(|r| r.map(|x| lambda * x))
                .collect();
            let tv = SurfaceTangent::new(n, v)?;
            for &t in ts {
                out.line(&format!("family_arith[t={t}]"), finsler_t_family(t, &tv)?);
            }
            (finsler_t(&tv), finsler_t(&tv.negated()))
        }
        Space::Polygon => {
            let p = load_polygon(point, "point", &mut out)?;
            let v = p.transform_velocity(&parse_planar_rows(vector)?);
            let neg: Vec<[f64; 2]> = v.iter().map(|w| [-w[0], -w[1]]).collect();
            let space = PolygonSpace::new(p.shape.n())?;
            let tv = ShapeTangent::new(p.shape.clone(), v)?;
            let tn = ShapeTangent::new(p.shape, neg)?;
            out.line("F_avg(v)", space.finsler(&tv, Aggregate::Avg)?);
            out.line("F_avg(-v)", space.finsler(&tn, Aggregate::Avg)?);
            (space.finsler(&tv, Aggregate::Sup)?, space.finsler(&tn, Aggregate::Sup)?)
        }
    };
    let label = if space == Space::Polygon { "F_sup" } else { "F" };
    out.line(&format!("{label}(v)"), f);
    out.line(&format!("{label}(-v)"), b);
    Ok(out)
}

/// Reads a quadrant point `[A1, A2]`, or a triangle `[A1, A2, A3]` that is
/// first rescaled to unit area.
pub fn parse_quadrant_point(text: &str) -> CliResult<QuadrantPoint> {
    let v = parse_vector(text)?;
    match v.len() {
        2 => Ok(QuadrantPoint::new(v[0], v[1])?),
        3 => {
            let c = TriCoords::new(v[0], v[1], v[2])?;
            Ok(QuadrantPoint::from_triangle(&TrianglePoint::normalized(c)))
        }
        _ => Err(CliError::input("a quadrant point has 2 coordinates (or 3 for a triangle)")),
    }
}

/// Unit ball of the transported norm at `p`: vertices `U, V, W` and `k`
/// points along each side, with the norm at each.
pub fn unit_ball_table(p: &QuadrantPoint, k: usize) -> Table {
    let ball = unit_ball(p);
    let mut table = Table::with_labels(&["kind"], &["x", "y", "fstar"]);
    for (name, (x, y)) in ["U", "V", "W"].iter().zip(ball.vertices()) {
        table.push_labelled(vec![name.to_string()], vec![x, y, finsler_star(p, x, y)]);
    }
    let vs = ball.vertices();
    for side in 0..3 {
        let (a, b) = (vs[side], vs[(side + 1) % 3]);
        for m in 1..k.max(1) {
            let s = m as f64 / k as f64;
            let (x, y) = ((1.0 - s) * a.0 + s * b.0, (1.0 - s) * a.1 + s * b.1);
            table.push_labelled(vec!["boundary".into()], vec![x, y, finsler_star(p, x, y)]);
        }
    }
    table
}

pub fn unit_ball_svg(p: &QuadrantPoint) -> String {
    let ball = unit_ball(p);
    let vs = ball.vertices().to_vec();
    svg_polygons(std::slice::from_ref(&vs), &vs)
}
