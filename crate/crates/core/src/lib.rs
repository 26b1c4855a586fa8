//! Asymmetric log-ratio metrics on spaces of flat structures.
//!
//! The crate covers three related spaces, all coordinatized by the half-sum
//! ("Heron") coordinates `A_i = (a_j + a_k - a_i) / 2` of Euclidean triangles:
//!
//! * [`triangle_space`]: unit-area marked triangles with the metric
//!   `eta(X, Y) = log max_i Y_i / X_i`, its geodesics and its Finsler norm,
//!   plus the planar chart in [`quadrant`];
//! * [`surface`]: flat structures on a surface with a fixed triangulation,
//!   one coordinate per (face, opposite edge) slot;
//! * [`polygon`]: unit-area convex polygons, compared through every
//!   triangulation chart at once.
//!
//! [`weak_metric`] holds the space-agnostic pieces (symmetrizations, Cauchy
//! and convergence-symmetry diagnostics) and [`paths`] integrates Finsler
//! norms along paths and searches for short discrete paths.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod geodesic_check;
pub(crate) mod math;
pub mod paths;
pub mod polygon;
pub mod quadrant;
pub mod sample;
pub mod surface;
pub mod triangle;
pub mod triangle_space;
pub mod weak_metric;

pub use error::{Error, Result};
pub use polygon::{PolygonShape, PolygonSpace, PolygonTriangulation, ShapeTangent};
pub use quadrant::{QuadrantPoint, UnitBallTriangle};
pub use surface::{SurfacePoint, SurfaceTangent, Triangulation};
pub use triangle::{BoxDims, EdgeLengths, TriCoords};
pub use triangle_space::{GeodesicPath, TangentVector, TrianglePoint};
pub use weak_metric::{SequenceDiagnostics, WeakMetric};
