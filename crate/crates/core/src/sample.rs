//! Seeded random points for experiments and tests.

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::Result;
use crate::math;
use crate::polygon::PolygonShape;
use crate::surface::{SurfacePoint, Triangulation};
use crate::triangle::TriCoords;
use crate::triangle_space::TrianglePoint;

/// Interior angles closer than this to `pi` are rejected.
pub const MIN_TURN_ANGLE: f64 = 1e-3;

/// Heron coordinates with log-uniform entries in `[e^-spread, e^spread]`.
pub fn random_coords<R: Rng + ?Sized>(rng: &mut R, spread: f64) -> TriCoords {
    let c: [f64; 3] = core::array::from_fn(|_| math::exp(rng.gen_range(-spread..=spread)));
    TriCoords::from_array(c).expect("exponentials are positive")
}

pub fn random_triangle<R: Rng + ?Sized>(rng: &mut R, spread: f64) -> TrianglePoint {
    TrianglePoint::normalized(random_coords(rng, spread))
}

/// A unit-area point on `tri`: random edge lengths around 1, redrawn until
/// every face satisfies its triangle inequalities.
pub fn random_surface_point<R: Rng + ?Sized>(rng: &mut R, tri: &Arc<Triangulation>, spread: f64) -> SurfacePoint {
    loop {
        let lengths: Vec<f64> = (0..tri.edge_count())
            .map(|_| math::exp(rng.gen_range(-spread..=spread)))
            .collect();
        if let Ok(p) = SurfacePoint::from_edge_lengths(tri.clone(), &lengths) {
            return p.normalize_unit_area().0;
        }
    }
}

/// A random strictly convex `n`-gon: sorted angles on a random ellipse,
/// rejecting draws with an interior angle within [`MIN_TURN_ANGLE`] of `pi`.
pub fn random_convex_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<PolygonShape> {
    loop {
        let ratio = rng.gen_range(0.5..=1.0);
        let tilt = rng.gen_range(0.0..core::f64::consts::PI);
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..2.0 * core::f64::consts::PI))
            .collect();
        angles.sort_by(f64::total_cmp);
        let (c, s) = (math::cos(tilt), math::sin(tilt));
        let pts: Vec<[f64; 2]> = angles
            .iter()
            .map(|&th| {
                let (x, y) = (math::cos(th), ratio * math::sin(th));
                [c * x - s * y, s * x + c * y]
            })
            .collect();
        if min_exterior_angle(&pts) < MIN_TURN_ANGLE {
            continue;
        }
        if let Ok(p) = PolygonShape::new(pts) {
            return Ok(p);
        }
    }
}

fn min_exterior_angle(v: &[[f64; 2]]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            let (ux, uy) = (b[0] - a[0], b[1] - a[1]);
            let (wx, wy) = (c[0] - b[0], c[1] - b[1]);
            math::atan2(ux * wy - uy * wx, ux * wx + uy * wy)
        })
        .fold(f64::INFINITY, f64::min)
}
