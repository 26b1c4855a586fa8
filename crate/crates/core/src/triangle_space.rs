//! The space of unit-area marked triangles with the asymmetric metric
//! `eta(X, Y) = log max_i Y_i / X_i` in Heron coordinates.

use alloc::vec::Vec;

use crate::error::{domain, invalid, Result};
use crate::geodesic_check::{verify_log_dominance, GeodesicVerdict};
use crate::math;
use crate::paths::FinslerSpace;
use crate::triangle::{heron_area_gradient, TriCoords};
use crate::weak_metric::WeakMetric;

pub const UNIT_AREA_TOL: f64 = 1e-12;
/// Relative tolerance on the linearized area constraint for tangent vectors.
pub const TANGENCY_TOL: f64 = 1e-8;

/// A triangle of unit area.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrianglePoint(TriCoords);

impl TrianglePoint {
    /// Accepts coordinates whose area is already 1 within [`UNIT_AREA_TOL`].
    pub fn new(coords: TriCoords) -> Result<Self> {
        let area = coords.area();
        if (area - 1.0).abs() > UNIT_AREA_TOL {
            return Err(domain("triangle does not have unit area"));
        }
        Ok(Self(coords))
    }

    /// Rescales arbitrary coordinates onto the unit-area slice.
    pub fn normalized(coords: TriCoords) -> Self {
        Self(coords.normalize_unit_area().0)
    }

    pub fn from_coords(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        Ok(Self::normalized(TriCoords::new(a1, a2, a3)?))
    }

    pub fn equilateral() -> Self {
        let q = math::powf(3.0, -0.25);
        Self(TriCoords::new(q, q, q).expect("positive"))
    }

    pub fn coords(&self) -> TriCoords {
        self.0
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0.as_array()
    }
}

/// `log max_i Y_i / X_i` on raw positive coordinates (no area constraint).
pub fn eta(x: &TriCoords, y: &TriCoords) -> f64 {
    let (x, y) = (x.as_array(), y.as_array());
    let ratio = (y[0] / x[0]).max(y[1] / x[1]).max(y[2] / x[2]);
    math::ln(ratio)
}

pub fn eta_points(x: &TrianglePoint, y: &TrianglePoint) -> f64 {
    eta(&x.0, &y.0)
}

/// `max_i |log Y_i - log X_i|`, the metric whose restriction to unit-area
/// triangles is the max-symmetrization of `eta`.
///
/// Evaluated as `max_i max(log(Y_i / X_i), log(X_i / Y_i))` so that it agrees
/// to the last bit with `max(eta(X, Y), eta(Y, X))`.
pub fn log_sup_distance(x: &TriCoords, y: &TriCoords) -> f64 {
    x.as_array()
        .iter()
        .zip(y.as_array())
        .map(|(a, b)| math::ln(b / a).max(math::ln(a / b)))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn check_t(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(invalid("family parameter t must lie in [0, 1]"))
    }
}

/// `(1 - t) eta(X, Y) + t eta(Y, X)`.
pub fn eta_family_arith(t: f64, x: &TrianglePoint, y: &TrianglePoint) -> Result<f64> {
    check_t(t)?;
    Ok((1.0 - t) * eta_points(x, y) + t * eta_points(y, x))
}

/// `max{(1 - t) eta(X, Y), t eta(Y, X)}`.
pub fn eta_family_max(t: f64, x: &TrianglePoint, y: &TrianglePoint) -> Result<f64> {
    check_t(t)?;
    Ok(((1.0 - t) * eta_points(x, y)).max(t * eta_points(y, x)))
}

/// `eta` as a [`WeakMetric`] on unit-area triangles.
#[derive(Clone, Copy, Debug, Default)]
pub struct Eta;

impl WeakMetric<TrianglePoint> for Eta {
    fn distance(&self, x: &TrianglePoint, y: &TrianglePoint) -> Result<f64> {
        Ok(eta_points(x, y))
    }

    fn domain_tag(&self) -> &str {
        "triangles/unit-area"
    }
}

/// `eta` on raw coordinates. Not a weak metric off the unit-area slice.
impl WeakMetric<TriCoords> for Eta {
    fn distance(&self, x: &TriCoords, y: &TriCoords) -> Result<f64> {
        Ok(eta(x, y))
    }

    fn domain_tag(&self) -> &str {
        "triangles/raw"
    }
}

/// The normalized log-linear path `t -> lambda(t) (X_i^{1-t} Y_i^t)_i`,
/// a geodesic from `X` to `Y` that is also a geodesic when reversed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicPath {
    start: TrianglePoint,
    end: TrianglePoint,
    log_start: [f64; 3],
    log_end: [f64; 3],
}

impl GeodesicPath {
    pub fn start(&self) -> TrianglePoint {
        self.start
    }

    pub fn end(&self) -> TrianglePoint {
        self.end
    }

    /// The point before rescaling to unit area.
    pub fn unnormalized(&self, t: f64) -> TriCoords {
        let c = core::array::from_fn(|i| math::exp((1.0 - t) * self.log_start[i] + t * self.log_end[i]));
        TriCoords::from_array(c).expect("exponentials are positive")
    }

    pub fn at(&self, t: f64) -> TrianglePoint {
        if t == 0.0 {
            self.start
        } else if t == 1.0 {
            self.end
        } else {
            TrianglePoint::normalized(self.unnormalized(t))
        }
    }

    /// The same curve traversed from `end` to `start`.
    pub fn reversed(&self) -> GeodesicPath {
        geodesic(&self.end, &self.start)
    }

    /// Points at `k` equally spaced parameters, endpoints included.
    pub fn samples(&self, k: usize) -> Vec<(f64, TrianglePoint)> {
        let k = k.max(2);
        (0..k)
            .map(|m| {
                let t = m as f64 / (k - 1) as f64;
                (t, self.at(t))
            })
            .collect()
    }
}

pub fn geodesic(x: &TrianglePoint, y: &TrianglePoint) -> GeodesicPath {
    GeodesicPath {
        start: *x,
        end: *y,
        log_start: x.as_array().map(math::ln),
        log_end: y.as_array().map(math::ln),
    }
}

/// Checks the geodesic criterion on samples `(t, coordinates)` given before
/// unit-area normalization. The verdict records the grid size it used.
pub fn verify_geodesic(samples: &[(f64, TriCoords)]) -> Result<GeodesicVerdict> {
    let raw: Vec<(f64, [f64; 3])> = samples.iter().map(|(t, c)| (*t, c.as_array())).collect();
    verify_log_dominance(&raw)
}

/// Normalized residual `|grad Ar . v| / (|grad Ar| |v|)` of the linearized
/// area constraint; zero for `v = 0`.
pub fn tangency_residual(base: &TrianglePoint, v: &[f64; 3]) -> f64 {
    let g = heron_area_gradient(&base.0);
    let dot = g[0] * v[0] + g[1] * v[1] + g[2] * v[2];
    let gn = math::sqrt(g.iter().map(|x| x * x).sum());
    let vn = math::sqrt(v.iter().map(|x| x * x).sum());
    if vn == 0.0 {
        0.0
    } else {
        dot.abs() / (gn * vn)
    }
}

/// A tangent vector to the unit-area slice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentVector {
    base: TrianglePoint,
    v: [f64; 3],
}

impl TangentVector {
    pub fn new(base: TrianglePoint, v: [f64; 3]) -> Result<Self> {
        if v.iter().any(|x| !x.is_finite()) {
            return Err(invalid("tangent components must be finite"));
        }
        if tangency_residual(&base, &v) > TANGENCY_TOL {
            return Err(invalid("vector is not tangent to the unit-area triangles"));
        }
        Ok(Self { base, v })
    }

    /// Solves the area constraint for the third component.
    pub fn completing(base: TrianglePoint, v1: f64, v2: f64) -> Self {
        let g = heron_area_gradient(&base.0);
        let v3 = -(g[0] * v1 + g[1] * v2) / g[2];
        Self { base, v: [v1, v2, v3] }
    }

    pub fn base(&self) -> TrianglePoint {
        self.base
    }

    pub fn components(&self) -> [f64; 3] {
        self.v
    }

    pub fn negated(&self) -> Self {
        Self {
            base: self.base,
            v: self.v.map(|x| -x),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            base: self.base,
            v: self.v.map(|x| s * x),
        }
    }
}

fn max_log_rate(base: &[f64; 3], v: &[f64; 3]) -> f64 {
    (v[0] / base[0]).max(v[1] / base[1]).max(v[2] / base[2])
}

/// `max_i v_i / A_i`, the Finsler norm inducing `eta`.
pub fn finsler_norm(v: &TangentVector) -> f64 {
    max_log_rate(&v.base.as_array(), &v.v)
}

/// `(1 - t) max_i v_i / A_i + t max_i (-v_i) / A_i`.
pub fn finsler_family_arith(t: f64, v: &TangentVector) -> Result<f64> {
    check_t(t)?;
    Ok((1.0 - t) * finsler_norm(v) + t * finsler_norm(&v.negated()))
}

/// Unit-area triangles as a Finsler space for path integration, with
/// log-linear segments and log-coordinates as free parameters.
#[derive(Clone, Copy, Debug, Default)]
pub struct TriangleSpace;

impl FinslerSpace for TriangleSpace {
    type Point = TrianglePoint;

    fn coordinates(&self, p: &TrianglePoint) -> Vec<f64> {
        p.as_array().to_vec()
    }

    fn norm(&self, p: &TrianglePoint, velocity: &[f64]) -> Result<f64> {
        let v: [f64; 3] = velocity
            .try_into()
            .map_err(|_| invalid("triangle velocity needs three components"))?;
        // Finite-difference velocities carry rounding of order |A| eps / h,
        // so the band is relative to |v| + |A| rather than |v|.
        let vn = math::sqrt(v.iter().map(|x| x * x).sum());
        let an = math::sqrt(p.as_array().iter().map(|x| x * x).sum());
        if vn > 0.0 && tangency_residual(p, &v) * vn / (vn + an) > TANGENCY_TOL {
            return Err(invalid("vector is not tangent to the unit-area triangles"));
        }
        Ok(max_log_rate(&p.as_array(), &v))
    }

    fn interpolate(&self, a: &TrianglePoint, b: &TrianglePoint, s: f64) -> Result<TrianglePoint> {
        Ok(geodesic(a, b).at(s))
    }

    fn parameters(&self, p: &TrianglePoint) -> Vec<f64> {
        p.as_array().iter().map(|&x| math::ln(x)).collect()
    }

    fn from_parameters(&self, params: &[f64]) -> Result<TrianglePoint> {
        let c = TriCoords::from_slice(&params.iter().map(|&x| math::exp(x)).collect::<Vec<_>>())?;
        Ok(TrianglePoint::normalized(c))
    }
}
