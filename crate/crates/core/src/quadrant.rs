//! The planar chart `(A1, A2) -> (A1, A2, G(A1, A2))` of unit-area triangles,
//! with the transported metric and Finsler norm, whose unit balls are right
//! triangles.

use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::math;
use crate::triangle::TriCoords;
use crate::triangle_space::{eta, verify_geodesic, TrianglePoint};
use crate::geodesic_check::GeodesicVerdict;

/// A point of the open first quadrant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadrantPoint {
    a1: f64,
    a2: f64,
}

impl QuadrantPoint {
    pub fn new(a1: f64, a2: f64) -> Result<Self> {
        if !(a1.is_finite() && a1 > 0.0 && a2.is_finite() && a2 > 0.0) {
            return Err(domain("quadrant coordinates must be finite and positive"));
        }
        Ok(Self { a1, a2 })
    }

    /// Forgets the third coordinate of a unit-area triangle.
    pub fn from_triangle(p: &TrianglePoint) -> Self {
        let [a1, a2, _] = p.as_array();
        Self { a1, a2 }
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// `(A1, A2, G(A1, A2))`.
    pub fn lift(&self) -> TriCoords {
        TriCoords::new(self.a1, self.a2, g_third_coordinate(self)).expect("G is positive")
    }
}

/// The third coordinate that gives unit area:
/// `G = (sqrt((A1 + A2)^2 + 4 / (A1 A2)) - A1 - A2) / 2`.
///
/// Evaluated in the equivalent form `2 / (A1 A2 (sqrt(..) + A1 + A2))`, which
/// avoids cancellation when `4 / (A1 A2)` is small.
pub fn g_third_coordinate(p: &QuadrantPoint) -> f64 {
    let (a1, a2) = (p.a1, p.a2);
    let s = a1 + a2;
    let root = math::sqrt(s * s + 4.0 / (a1 * a2));
    2.0 / (a1 * a2 * (root + s))
}

/// `(dG/dA1, dG/dA2)`, both negative.
pub fn g_partials(p: &QuadrantPoint) -> (f64, f64) {
    let (a1, a2) = (p.a1, p.a2);
    let s = a1 + a2;
    let inv_root = 1.0 / math::sqrt(s * s + 4.0 / (a1 * a2));
    let d1 = (inv_root * (s - 2.0 / (a1 * a1 * a2)) - 1.0) / 2.0;
    let d2 = (inv_root * (s - 2.0 / (a2 * a2 * a1)) - 1.0) / 2.0;
    (d1, d2)
}

/// `log max{q1/p1, q2/p2, G(q)/G(p)}`; identical arithmetic to `eta` on the lifts.
pub fn eta_star(p: &QuadrantPoint, q: &QuadrantPoint) -> f64 {
    eta(&p.lift(), &q.lift())
}

/// Transported norm of the tangent vector `x d/dA1 + y d/dA2` at `p`:
/// `max{x/A1, y/A2, (x dG/dA1 + y dG/dA2) / G}`.
pub fn finsler_star(p: &QuadrantPoint, x: f64, y: f64) -> f64 {
    let g = g_third_coordinate(p);
    let (d1, d2) = g_partials(p);
    (x / p.a1).max(y / p.a2).max((x * d1 + y * d2) / g)
}

/// The pushed-forward tangent vector `(x, y, x dG/dA1 + y dG/dA2)`.
pub fn push_forward(p: &QuadrantPoint, x: f64, y: f64) -> [f64; 3] {
    let (d1, d2) = g_partials(p);
    [x, y, x * d1 + y * d2]
}

/// Vertices of the unit ball of [`finsler_star`] at a point; the right angle
/// sits at `u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitBallTriangle {
    pub u: (f64, f64),
    pub v: (f64, f64),
    pub w: (f64, f64),
}

impl UnitBallTriangle {
    pub fn vertices(&self) -> [(f64, f64); 3] {
        [self.u, self.v, self.w]
    }

    /// Barycentric combination of the vertices.
    pub fn combination(&self, weights: [f64; 3]) -> (f64, f64) {
        let vs = self.vertices();
        let x = (0..3).map(|i| weights[i] * vs[i].0).sum();
        let y = (0..3).map(|i| weights[i] * vs[i].1).sum();
        (x, y)
    }
}

pub fn unit_ball(p: &QuadrantPoint) -> UnitBallTriangle {
    let g = g_third_coordinate(p);
    let (d1, d2) = g_partials(p);
    UnitBallTriangle {
        u: (p.a1, p.a2),
        v: ((g - p.a2 * d2) / d1, p.a2),
        w: (p.a1, (g - p.a1 * d1) / d2),
    }
}

/// Geodesic criterion for a sampled quadrant path, checked on the lifted
/// triangle coordinates.
pub fn verify_quadrant_geodesic(samples: &[(f64, QuadrantPoint)]) -> Result<GeodesicVerdict> {
    let lifted: Vec<(f64, TriCoords)> = samples.iter().map(|(t, p)| (*t, p.lift())).collect();
    verify_geodesic(&lifted)
}
