//! JSON input formats.
//!
//! * triangle: `[A1, A2, A3]` or `{"coords": [A1, A2, A3]}`;
//! * surface: `{"edges": N, "faces": [[i, j, k], ...], "boundary": [bool, ...],
//!   "coords": {"f0": [A, B, C], ...}}`, slot `s` of face `f` opposite edge
//!   `faces[f][s]`;
//! * polygon: `{"n": n, "vertices": [[x, y], ...]}`.
//!
//! An argument is read as inline JSON when it starts with `[` or `{`, from
//! standard input when it is `-`, and as a file path otherwise.

use std::collections::BTreeMap;
use std::io::Read;
use std::sync::Arc;

use serde::Deserialize;
use trimetric_core::{PolygonShape, SurfacePoint, TriCoords, Triangulation};

use crate::error::{CliError, CliResult};

/// Pose or area changes above this are reported when a polygon is loaded.
pub const NORMALIZATION_WARNING: f64 = 1e-9;

pub fn read_source(arg: &str) -> CliResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        Ok(arg.to_string())
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::input(format!("cannot read {arg}: {e}")))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TriangleJson {
    Bare([f64; 3]),
    Tagged { coords: [f64; 3] },
}

pub fn parse_triangle(text: &str) -> CliResult<TriCoords> {
    let c = match serde_json::from_str::<TriangleJson>(text)? {
        TriangleJson::Bare(c) | TriangleJson::Tagged { coords: c } => c,
    };
    Ok(TriCoords::from_array(c)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceJson {
    edges: usize,
    faces: Vec<[usize; 3]>,
    boundary: Vec<bool>,
    coords: BTreeMap<String, [f64; 3]>,
}

pub fn parse_triangulation_and_slots(text: &str) -> CliResult<(Triangulation, Vec<[f64; 3]>)> {
    let raw: SurfaceJson = serde_json::from_str(text)?;
    let tri = Triangulation::new(raw.edges, raw.faces, raw.boundary)?;
    let slots = face_table(&raw.coords, tri.face_count())?;
    Ok((tri, slots))
}

/// Reads a `{"f0": [..], "f1": [..]}` table with exactly one row per face.
pub fn face_table<T: Copy>(map: &BTreeMap<String, T>, faces: usize) -> CliResult<Vec<T>> {
    if map.len() != faces {
        return Err(CliError::input(format!("expected {faces} face entries, found {}", map.len())));
    }
    (0..faces)
        .map(|f| {
            map.get(&format!("f{f}"))
                .copied()
                .ok_or_else(|| CliError::input(format!("missing face entry f{f}")))
        })
        .collect()
}

/// Two surface points; they must describe the same triangulation and end
/// up sharing it.
pub fn parse_surface_pair(x: &str, y: &str) -> CliResult<(SurfacePoint, SurfacePoint)> {
    let (tx, sx) = parse_triangulation_and_slots(x)?;
    let (ty, sy) = parse_triangulation_and_slots(y)?;
    if tx != ty {
        return Err(trimetric_core::Error::TriangulationMismatch.into());
    }
    let tri = Arc::new(tx);
    Ok((SurfacePoint::new(tri.clone(), sx)?, SurfacePoint::new(tri, sy)?))
}

pub fn parse_surface(text: &str) -> CliResult<SurfacePoint> {
    let (tri, slots) = parse_triangulation_and_slots(text)?;
    Ok(SurfacePoint::new(Arc::new(tri), slots)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonJson {
    n: usize,
    vertices: Vec<[f64; 2]>,
}

/// A polygon in canonical pose and unit area, with the size of the
/// adjustment that was needed (largest vertex displacement, area change).
pub struct LoadedPolygon {
    pub shape: PolygonShape,
    pub adjustment: f64,
    /// `(cos, sin)` of the rotation into canonical pose.
    rotation: (f64, f64),
    scale: f64,
}

impl LoadedPolygon {
    /// Carries a vertex velocity given in the input frame into the
    /// canonical frame.
    pub fn transform_velocity(&self, v: &[[f64; 2]]) -> Vec<[f64; 2]> {
        let (c, s) = self.rotation;
        v.iter()
            .map(|w| [self.scale * (c * w[0] + s * w[1]), self.scale * (-s * w[0] + c * w[1])])
            .collect()
    }
}

pub fn parse_polygon(text: &str) -> CliResult<LoadedPolygon> {
    let raw: PolygonJson = serde_json::from_str(text)?;
    if raw.n != raw.vertices.len() {
        return Err(CliError::input(format!(
            "n = {} but {} vertices were given",
            raw.n,
            raw.vertices.len()
        )));
    }
    let (shape, area) = PolygonShape::normalized(raw.vertices.clone())?;
    let moved = shape
        .vertices()
        .iter()
        .zip(&raw.vertices)
        .map(|(p, q)| (p[0] - q[0]).hypot(p[1] - q[1]))
        .fold((area - 1.0).abs(), f64::max);
    let (dx, dy) = (raw.vertices[1][0] - raw.vertices[0][0], raw.vertices[1][1] - raw.vertices[0][1]);
    let r = dx.hypot(dy);
    Ok(LoadedPolygon {
        shape,
        adjustment: moved,
        rotation: (dx / r, dy / r),
        scale: 1.0 / area.sqrt(),
    })
}

pub fn parse_vector(text: &str) -> CliResult<Vec<f64>> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_planar_rows(text: &str) -> CliResult<Vec<[f64; 2]>> {
    Ok(serde_json::from_str(text)?)
}

/// Surface tangent rows, either as `{"f0": [..], ...}` or as a list.
pub fn parse_surface_vector(text: &str, faces: usize) -> CliResult<Vec<[f64; 3]>> {
    if text.trim_start().starts_with('{') {
        let map: BTreeMap<String, [f64; 3]> = serde_json::from_str(text)?;
        face_table(&map, faces)
    } else {
        let rows: Vec<[f64; 3]> = serde_json::from_str(text)?;
        if rows.len() != faces {
            return Err(CliError::input("tangent needs one row per face"));
        }
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_forms() {
        assert_eq!(parse_triangle("[1, 2, 3]").unwrap().as_array(), [1.0, 2.0, 3.0]);
        assert_eq!(parse_triangle(r#"{"coords": [1, 2, 3]}"#).unwrap().as_array(), [1.0, 2.0, 3.0]);
        assert!(matches!(parse_triangle("[1, 2]"), Err(CliError::Input(_))));
        assert!(matches!(parse_triangle("[1, 2, -3]"), Err(CliError::Domain(_))));
    }

    #[test]
    fn surface_form() {
        let text = r#"{"edges": 3, "faces": [[0, 1, 2]], "boundary": [true, true, true],
                       "coords": {"f0": [3, 2, 1]}}"#;
        let p = parse_surface(text).unwrap();
        assert_eq!(p.edge_lengths(), vec![3.0, 4.0, 5.0]);
        let missing = r#"{"edges": 3, "faces": [[0, 1, 2]], "boundary": [true, true, true], "coords": {}}"#;
        assert!(matches!(parse_surface(missing), Err(CliError::Input(_))));
    }

    #[test]
    fn polygon_form_is_normalized() {
        let text = r#"{"n": 4, "vertices": [[0,0],[2,0],[2,2],[0,2]]}"#;
        let p = parse_polygon(text).unwrap();
        assert!((p.shape.area() - 1.0).abs() < 1e-15);
        assert!(p.adjustment > NORMALIZATION_WARNING);
        let bad = r#"{"n": 5, "vertices": [[0,0],[2,0],[2,2],[0,2]]}"#;
        assert!(matches!(parse_polygon(bad), Err(CliError::Input(_))));
    }
}
