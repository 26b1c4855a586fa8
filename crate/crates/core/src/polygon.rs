//! Unit-area convex polygons compared through all triangulation charts.
//!
//! A triangulation of the `n`-gon by non-crossing diagonals induces a
//! [`Triangulation`] whose edges are the `n` sides followed by the diagonals;
//! reading off side and diagonal lengths gives a chart into the surface
//! coordinates of that triangulation. The polygon metrics take the maximum
//! or the mean of the surface metric over every chart.

use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{domain, invalid, Error, Result};
use crate::math;
use crate::paths::{minimize_length, FinslerSpace, MinimizeOptions, MinimizeOutcome};
use crate::surface::{eta_t, SurfacePoint, Triangulation};

/// Smallest normalized turn (cross product at a vertex of the unit-area
/// polygon) accepted as strictly convex.
pub const CONVEXITY_TOL: f64 = 1e-12;
/// Largest polygon size for triangulation enumeration.
pub const MAX_POLYGON_SIZE: usize = 12;
/// Tolerance on the area of a developed chart point.
pub const DEVELOPMENT_AREA_TOL: f64 = 1e-10;
/// Relative tolerance on the area differential of a shape tangent.
pub const AREA_TANGENT_TOL: f64 = 1e-8;

fn shoelace(v: &[[f64; 2]]) -> f64 {
    let n = v.len();
    0.5 * (0..n)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % n]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
}

fn turn(v: &[[f64; 2]], i: usize) -> f64 {
    let n = v.len();
    let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
    (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
}

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    math::hypot(p[0] - q[0], p[1] - q[1])
}

/// A strictly convex, counterclockwise, unit-area polygon in canonical pose:
/// vertex 0 at the origin and vertex 1 on the positive x-axis.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonShape {
    vertices: Vec<[f64; 2]>,
}

impl PolygonShape {
    /// Canonicalizes and rescales to unit area. Fails with
    /// [`Error::NotConvex`] for clockwise or non-strictly-convex input.
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        Ok(Self::normalized(vertices)?.0)
    }

    /// Like [`PolygonShape::new`], also returning the area before rescaling.
    pub fn normalized(vertices: Vec<[f64; 2]>) -> Result<(Self, f64)> {
        let n = vertices.len();
        if n < 3 {
            return Err(invalid("a polygon needs at least three vertices"));
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(invalid("vertex coordinates must be finite"));
        }
        let area = shoelace(&vertices);
        if !(area > 0.0) {
            return Err(Error::NotConvex { vertex: 0, cross: area });
        }
        let o = vertices[0];
        let (dx, dy) = (vertices[1][0] - o[0], vertices[1][1] - o[1]);
        let r = math::hypot(dx, dy);
        if r == 0.0 {
            return Err(Error::NotConvex { vertex: 1, cross: 0.0 });
        }
        let (c, s) = (dx / r, dy / r);
        let lambda = 1.0 / math::sqrt(area);
        let mut canon: Vec<[f64; 2]> = vertices
            .iter()
            .map(|p| {
                let (x, y) = (p[0] - o[0], p[1] - o[1]);
                [lambda * (c * x + s * y), lambda * (-s * x + c * y)]
            })
            .collect();
        canon[0] = [0.0, 0.0];
        canon[1][1] = 0.0;
        for i in 0..n {
            let cross = turn(&canon, i);
            if !(cross > CONVEXITY_TOL) {
                return Err(Error::NotConvex { vertex: i, cross });
            }
        }
        Ok((Self { vertices: canon }, area))
    }

    /// A regular `n`-gon of unit area.
    pub fn regular(n: usize) -> Result<Self> {
        let pts = (0..n)
            .map(|k| {
                let th = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
                [math::cos(th), math::sin(th)]
            })
            .collect();
        Self::new(pts)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        dist(self.vertices[i], self.vertices[j])
    }

    /// Smallest vertex turn; positive for strictly convex shapes.
    pub fn min_turn(&self) -> f64 {
        (0..self.n()).map(|i| turn(&self.vertices, i)).fold(f64::INFINITY, f64::min)
    }
}

/// A triangulation of the convex `n`-gon by non-crossing diagonals.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonTriangulation {
    n: usize,
    diagonals: Vec<(usize, usize)>,
    faces: Vec<[usize; 3]>,
    surface: Arc<Triangulation>,
}

impl PolygonTriangulation {
    /// Builds from vertex triples; each triple is sorted, which makes it
    /// counterclockwise on a convex polygon.
    pub fn from_faces(n: usize, faces: Vec<[usize; 3]>) -> Result<Self> {
        if n < 3 {
            return Err(invalid("a polygon needs at least three vertices"));
        }
        if faces.len() != n - 2 {
            return Err(invalid("a triangulation of an n-gon has n - 2 faces"));
        }
        let faces: Vec<[usize; 3]> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        if faces.iter().any(|f| f[2] >= n || f[0] == f[1] || f[1] == f[2]) {
            return Err(invalid("face vertices must be distinct polygon vertices"));
        }
        let mut diagonals: Vec<(usize, usize)> = faces
            .iter()
            .flat_map(|&[i, j, k]| [(i, j), (j, k), (i, k)])
            .filter(|&(a, b)| !is_side(n, a, b))
            .collect();
        diagonals.sort_unstable();
        diagonals.dedup();
        if diagonals.len() != n - 3 {
            return Err(invalid("faces do not form a triangulation"));
        }
        for (x, &(a, b)) in diagonals.iter().enumerate() {
            for &(c, d) in &diagonals[x + 1..] {
                if crosses((a, b), (c, d)) {
                    return Err(invalid("diagonals cross"));
                }
            }
        }
        let edge = |a: usize, b: usize| -> usize {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            if b == a + 1 {
                a
            } else if a == 0 && b == n - 1 {
                n - 1
            } else {
                n + diagonals.binary_search(&(a, b)).expect("diagonal listed")
            }
        };
        let surface_faces = faces
            .iter()
            .map(|&[i, j, k]| [edge(j, k), edge(i, k), edge(i, j)])
            .collect();
        let boundary = (0..2 * n - 3).map(|e| e < n).collect();
        let surface = Arc::new(Triangulation::new(2 * n - 3, surface_faces, boundary)?);
        Ok(Self {
            n,
            diagonals,
            faces,
            surface,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Diagonals as sorted vertex pairs, in edge order after the sides.
    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    /// Faces as counterclockwise vertex triples.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn surface(&self) -> &Arc<Triangulation> {
        &self.surface
    }

    /// Vertex pair of surface edge `e`: side `e` joins `e` and `e + 1`.
    pub fn edge_vertices(&self, e: usize) -> (usize, usize) {
        if e < self.n {
            (e, (e + 1) % self.n)
        } else {
            self.diagonals[e - self.n]
        }
    }
}

fn is_side(n: usize, a: usize, b: usize) -> bool {
    b == a + 1 || (a == 0 && b == n - 1)
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Every triangulation of the convex `n`-gon, `3 <= n <= 12`, in a fixed
/// order. There are `Catalan(n - 2)` of them.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<PolygonTriangulation>> {
    if !(3..=MAX_POLYGON_SIZE).contains(&n) {
        return Err(invalid(alloc::format!(
            "polygon size must lie in 3..={MAX_POLYGON_SIZE}"
        )));
    }
    let mut out = Vec::new();
    for faces in face_sets(0, n - 1) {
        out.push(PolygonTriangulation::from_faces(n, faces)?);
    }
    Ok(out)
}

/// Face sets of the sub-polygon on vertices `lo..=hi`, split at the apex of
/// the face on side `(lo, hi)`.
fn face_sets(lo: usize, hi: usize) -> Vec<Vec<[usize; 3]>> {
    if hi - lo < 2 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in lo + 1..hi {
        let left = face_sets(lo, k);
        let right = face_sets(k, hi);
        for l in &left {
            for r in &right {
                let mut f = alloc::vec![[lo, k, hi]];
                f.extend_from_slice(l);
                f.extend_from_slice(r);
                out.push(f);
            }
        }
    }
    out
}

/// Side and diagonal lengths of `shape` as a point of the chart of `tri`.
pub fn chart_coords(shape: &PolygonShape, tri: &PolygonTriangulation) -> Result<SurfacePoint> {
    if shape.n() != tri.n {
        return Err(invalid("polygon and triangulation sizes differ"));
    }
    let lengths: Vec<f64> = (0..tri.surface.edge_count())
        .map(|e| {
            let (a, b) = tri.edge_vertices(e);
            shape.distance(a, b)
        })
        .collect();
    SurfacePoint::from_edge_lengths(tri.surface.clone(), &lengths)
}

/// Develops a chart point into the plane, face by face across diagonals.
///
/// Fails with [`Error::NotConvex`] when the developed polygon is not
/// strictly convex, i.e. when the point lies outside the chart image.
pub fn shape_from_chart(p: &SurfacePoint, tri: &PolygonTriangulation) -> Result<PolygonShape> {
    if p.triangulation().as_ref() != tri.surface.as_ref() {
        return Err(Error::TriangulationMismatch);
    }
    let lengths = crate::surface::edge_lengths(p)?;
    let n = tri.n;
    let len = |a: usize, b: usize| -> f64 {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let e = if b == a + 1 {
            a
        } else if a == 0 && b == n - 1 {
            n - 1
        } else {
            n + tri.diagonals.binary_search(&(a, b)).expect("diagonal listed")
        };
        lengths[e]
    };
    let mut pos: Vec<Option<[f64; 2]>> = alloc::vec![None; n];
    let [i, j, k] = tri.faces[0];
    pos[i] = Some([0.0, 0.0]);
    pos[j] = Some([len(i, j), 0.0]);
    pos[k] = Some(apex([0.0, 0.0], [len(i, j), 0.0], len(i, k), len(j, k))?);
    let mut placed = alloc::vec![false; tri.faces.len()];
    placed[0] = true;
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        for (g, face) in tri.faces.iter().enumerate() {
            if placed[g] || shared_vertices(&tri.faces[f], face) != 2 {
                continue;
            }
            // Rotate the counterclockwise triple so the new vertex is last.
            let r = (0..3).find(|&r| pos[face[(r + 2) % 3]].is_none());
            if let Some(r) = r {
                let (a, b, c) = (face[r], face[(r + 1) % 3], face[(r + 2) % 3]);
                pos[c] = Some(apex(pos[a].unwrap(), pos[b].unwrap(), len(a, c), len(b, c))?);
            }
            placed[g] = true;
            queue.push_back(g);
        }
    }
    let vertices: Vec<[f64; 2]> = pos.into_iter().map(|q| q.expect("every vertex lies in a face")).collect();
    let area = shoelace(&vertices);
    let expected = p.area();
    if (area - expected).abs() > DEVELOPMENT_AREA_TOL * expected.max(1.0) {
        return Err(Error::NumericalFailure {
            reason: "developed polygon area differs from chart area",
            estimate: area,
        });
    }
    PolygonShape::new(vertices)
}

fn shared_vertices(f: &[usize; 3], g: &[usize; 3]) -> usize {
    f.iter().filter(|v| g.contains(v)).count()
}

/// Third vertex of the triangle on `p -> q` lying to its left, at distance
/// `rp` from `p` and `rq` from `q`.
fn apex(p: [f64; 2], q: [f64; 2], rp: f64, rq: f64) -> Result<[f64; 2]> {
    let d = dist(p, q);
    let x = (d * d + (rp - rq) * (rp + rq)) / (2.0 * d);
    // Kahan's ordering keeps the area accurate for needle-shaped faces.
    let mut s = [d, rp, rq];
    s.sort_by(|a, b| b.total_cmp(a));
    let [a, b, c] = s;
    let q16 = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if !(q16 > 0.0) {
        return Err(domain("chart lengths violate a triangle inequality"));
    }
    let h = math::sqrt(q16) / (2.0 * d);
    let (ux, uy) = ((q[0] - p[0]) / d, (q[1] - p[1]) / d);
    Ok([p[0] + x * ux - h * uy, p[1] + x * uy + h * ux])
}

/// A vertex velocity of a polygon that preserves area to first order.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeTangent {
    base: PolygonShape,
    v: Vec<[f64; 2]>,
}

fn area_differential(p: &[[f64; 2]], v: &[[f64; 2]]) -> f64 {
    let n = p.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (i, (i + 1) % n);
            v[a][0] * p[b][1] + p[a][0] * v[b][1] - v[b][0] * p[a][1] - p[b][0] * v[a][1]
        })
        .sum::<f64>()
}

fn area_residual(p: &[[f64; 2]], v: &[[f64; 2]], floor: f64) -> f64 {
    let vn = math::sqrt(v.iter().flatten().map(|x| x * x).sum());
    let pn = math::sqrt(p.iter().flatten().map(|x| x * x).sum());
    let scale = vn + floor * pn;
    if scale == 0.0 {
        0.0
    } else {
        area_differential(p, v).abs() / (pn * scale)
    }
}

impl ShapeTangent {
    pub fn new(base: PolygonShape, v: Vec<[f64; 2]>) -> Result<Self> {
        if v.len() != base.n() {
            return Err(invalid("need one velocity per vertex"));
        }
        if v.iter().flatten().any(|x| !x.is_finite()) {
            return Err(invalid("velocity components must be finite"));
        }
        if area_residual(&base.vertices, &v, 0.0) > AREA_TANGENT_TOL {
            return Err(invalid("velocity changes the area to first order"));
        }
        Ok(Self { base, v })
    }

    pub fn base(&self) -> &PolygonShape {
        &self.base
    }

    pub fn velocities(&self) -> &[[f64; 2]] {
        &self.v
    }
}

/// Finsler norm of a vertex velocity in one chart: edge-length rates from
/// `dl = (p_a - p_b) . (v_a - v_b) / |p_a - p_b|`, then `max dA / A`.
fn chart_norm(shape: &PolygonShape, v: &[[f64; 2]], tri: &PolygonTriangulation) -> Result<f64> {
    let p = chart_coords(shape, tri)?;
    let dl: Vec<f64> = (0..tri.surface.edge_count())
        .map(|e| {
            let (a, b) = tri.edge_vertices(e);
            let (pa, pb) = (shape.vertices[a], shape.vertices[b]);
            let d = [pa[0] - pb[0], pa[1] - pb[1]];
            (d[0] * (v[a][0] - v[b][0]) + d[1] * (v[a][1] - v[b][1])) / math::hypot(d[0], d[1])
        })
        .collect();
    let mut best = f64::NEG_INFINITY;
    for (face, slots) in tri.surface.faces().iter().zip(p.slots()) {
        for s in 0..3 {
            let da = 0.5 * (dl[face[(s + 1) % 3]] + dl[face[(s + 2) % 3]] - dl[face[s]]);
            best = best.max(da / slots[s]);
        }
    }
    Ok(best)
}

/// How chart values are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aggregate {
    Sup,
    Avg,
}

/// Unit-area convex `n`-gons with every triangulation chart.
#[derive(Clone, Debug)]
pub struct PolygonSpace {
    n: usize,
    triangulations: Vec<PolygonTriangulation>,
}

impl PolygonSpace {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            triangulations: enumerate_triangulations(n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triangulations(&self) -> &[PolygonTriangulation] {
        &self.triangulations
    }

    fn check(&self, x: &PolygonShape) -> Result<()> {
        if x.n() == self.n {
            Ok(())
        } else {
            Err(invalid("polygon has the wrong number of vertices"))
        }
    }

    /// Surface metric of every chart, in triangulation order.
    pub fn chart_distances(&self, x: &PolygonShape, y: &PolygonShape) -> Result<Vec<f64>> {
        self.check(x)?;
        self.check(y)?;
        self.triangulations
            .iter()
            .map(|t| eta_t(&chart_coords(x, t)?, &chart_coords(y, t)?))
            .collect()
    }

    pub fn eta(&self, x: &PolygonShape, y: &PolygonShape, how: Aggregate) -> Result<f64> {
        let d = self.chart_distances(x, y)?;
        Ok(match how {
            Aggregate::Sup => d.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Aggregate::Avg => d.iter().sum::<f64>() / d.len() as f64,
        })
    }

    pub fn eta_sup(&self, x: &PolygonShape, y: &PolygonShape) -> Result<f64> {
        self.eta(x, y, Aggregate::Sup)
    }

    pub fn eta_avg(&self, x: &PolygonShape, y: &PolygonShape) -> Result<f64> {
        self.eta(x, y, Aggregate::Avg)
    }

    pub fn chart_norms(&self, v: &ShapeTangent) -> Result<Vec<f64>> {
        self.check(&v.base)?;
        self.triangulations
            .iter()
            .map(|t| chart_norm(&v.base, &v.v, t))
            .collect()
    }

    pub fn finsler(&self, v: &ShapeTangent, how: Aggregate) -> Result<f64> {
        let f = self.chart_norms(v)?;
        Ok(match how {
            Aggregate::Sup => f.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Aggregate::Avg => f.iter().sum::<f64>() / f.len() as f64,
        })
    }

    pub fn finsler_sup(&self, v: &ShapeTangent) -> Result<f64> {
        self.finsler(v, Aggregate::Sup)
    }

    pub fn finsler_avg(&self, v: &ShapeTangent) -> Result<f64> {
        self.finsler(v, Aggregate::Avg)
    }

    /// The space with a fixed choice of chart aggregation, for path search.
    pub fn with_aggregate(&self, how: Aggregate) -> AggregatedPolygonSpace<'_> {
        AggregatedPolygonSpace { space: self, how }
    }

    /// Length of the shortest discrete path found from `x` to `y`: an upper
    /// bound on the induced path distance.
    pub fn path_metric_upper(
        &self,
        x: &PolygonShape,
        y: &PolygonShape,
        how: Aggregate,
        opts: &MinimizeOptions,
    ) -> Result<MinimizeOutcome<PolygonShape>> {
        self.check(x)?;
        self.check(y)?;
        minimize_length(&self.with_aggregate(how), x, y, opts)
    }
}

/// Edge directions (unwrapped, strictly increasing) and edge lengths.
fn edge_form(shape: &PolygonShape) -> (Vec<f64>, Vec<f64>) {
    let v = &shape.vertices;
    let n = v.len();
    let edges: Vec<[f64; 2]> = (0..n)
        .map(|i| [v[(i + 1) % n][0] - v[i][0], v[(i + 1) % n][1] - v[i][1]])
        .collect();
    let mut angles = Vec::with_capacity(n);
    angles.push(math::atan2(edges[0][1], edges[0][0]));
    for i in 1..n {
        let (a, b) = (edges[i - 1], edges[i]);
        let turn = math::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
        angles.push(angles[i - 1] + turn);
    }
    let lengths = edges.iter().map(|e| math::hypot(e[0], e[1])).collect();
    (angles, lengths)
}

/// Interpolates edge directions and lengths linearly, then restores
/// closure with the smallest relative change of the lengths. Directions
/// stay strictly increasing, so the result is convex whenever the
/// corrected lengths stay positive.
fn interpolate_edges(a: &PolygonShape, b: &PolygonShape, s: f64) -> Result<PolygonShape> {
    let (ta, la) = edge_form(a);
    let (tb, lb) = edge_form(b);
    let n = ta.len();
    let th: Vec<f64> = (0..n).map(|i| (1.0 - s) * ta[i] + s * tb[i]).collect();
    let l0: Vec<f64> = (0..n).map(|i| (1.0 - s) * la[i] + s * lb[i]).collect();
    let (c, sn): (Vec<f64>, Vec<f64>) = th.iter().map(|&t| (math::cos(t), math::sin(t))).unzip();
    let (mut m11, mut m12, mut m22, mut r1, mut r2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let w = l0[i] * l0[i];
        m11 += w * c[i] * c[i];
        m12 += w * c[i] * sn[i];
        m22 += w * sn[i] * sn[i];
        r1 += l0[i] * c[i];
        r2 += l0[i] * sn[i];
    }
    let det = m11 * m22 - m12 * m12;
    let (p, q) = ((m22 * r1 - m12 * r2) / det, (m11 * r2 - m12 * r1) / det);
    let mut pts = Vec::with_capacity(n);
    let mut at = [0.0, 0.0];
    for i in 0..n {
        pts.push(at);
        let l = l0[i] - l0[i] * l0[i] * (p * c[i] + q * sn[i]);
        if !(l > 0.0) {
            return Err(Error::NotConvex { vertex: i, cross: l });
        }
        at = [at[0] + l * c[i], at[1] + l * sn[i]];
    }
    PolygonShape::new(pts)
}

/// [`PolygonSpace`] with the norm fixed to the sup or mean over charts.
///
/// Segments interpolate edge directions and edge lengths (see
/// [`interpolate_edges`]) and rescale to unit area; free parameters are the
/// canonical vertex coordinates.
#[derive(Clone, Copy, Debug)]
pub struct AggregatedPolygonSpace<'a> {
    space: &'a PolygonSpace,
    how: Aggregate,
}

/// Area-preservation band for finite-difference velocities.
const FD_AREA_TOL: f64 = 1e-7;

impl FinslerSpace for AggregatedPolygonSpace<'_> {
    type Point = PolygonShape;

    fn coordinates(&self, p: &PolygonShape) -> Vec<f64> {
        p.vertices.iter().flatten().copied().collect()
    }

    fn norm(&self, p: &PolygonShape, velocity: &[f64]) -> Result<f64> {
        if velocity.len() != 2 * p.n() {
            return Err(invalid("velocity needs two components per vertex"));
        }
        let v: Vec<[f64; 2]> = velocity.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
        if area_residual(&p.vertices, &v, 1.0) > FD_AREA_TOL {
            return Err(invalid("velocity changes the area to first order"));
        }
        let norms: Result<Vec<f64>> = self
            .space
            .triangulations
            .iter()
            .map(|t| chart_norm(p, &v, t))
            .collect();
        let norms = norms?;
        Ok(match self.how {
            Aggregate::Sup => norms.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Aggregate::Avg => norms.iter().sum::<f64>() / norms.len() as f64,
        })
    }

    fn interpolate(&self, a: &PolygonShape, b: &PolygonShape, s: f64) -> Result<PolygonShape> {
        if s == 0.0 {
            return Ok(a.clone());
        }
        if s == 1.0 {
            return Ok(b.clone());
        }
        interpolate_edges(a, b, s)
    }

    fn parameters(&self, p: &PolygonShape) -> Vec<f64> {
        self.coordinates(p)
    }

    fn from_parameters(&self, params: &[f64]) -> Result<PolygonShape> {
        if params.len() != 2 * self.space.n {
            return Err(invalid("parameter vector has the wrong length"));
        }
        PolygonShape::new(params.chunks_exact(2).map(|c| [c[0], c[1]]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_pose_and_area() {
        let sq = PolygonShape::new(alloc::vec![[1.0, 1.0], [3.0, 1.0], [3.0, 3.0], [1.0, 3.0]]).unwrap();
        assert_eq!(sq.vertices()[0], [0.0, 0.0]);
        assert_eq!(sq.vertices()[1][1], 0.0);
        assert!((sq.area() - 1.0).abs() < 1e-15);
        assert!((sq.distance(0, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn clockwise_and_reflex_rejected() {
        let cw = alloc::vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        assert!(matches!(PolygonShape::new(cw), Err(Error::NotConvex { .. })));
        let dart = alloc::vec![[0.0, 0.0], [2.0, 0.0], [1.0, 0.2], [1.0, 1.0]];
        assert!(matches!(PolygonShape::new(dart), Err(Error::NotConvex { .. })));
        let flat = alloc::vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.0, 1.0]];
        assert!(matches!(PolygonShape::new(flat), Err(Error::NotConvex { vertex: 1, .. })));
    }

    #[test]
    fn catalan_counts() {
        let expected = [1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (n, &c) in (3..=12).zip(&expected) {
            assert_eq!(enumerate_triangulations(n).unwrap().len(), c, "n = {n}");
        }
        assert!(enumerate_triangulations(13).is_err());
        assert!(enumerate_triangulations(2).is_err());
    }

    #[test]
    fn chart_round_trip() {
        let shape = PolygonShape::regular(6).unwrap();
        for tri in enumerate_triangulations(6).unwrap() {
            let p = chart_coords(&shape, &tri).unwrap();
            assert!((p.area() - 1.0).abs() < 1e-13);
            let back = shape_from_chart(&p, &tri).unwrap();
            for (a, b) in back.vertices().iter().zip(shape.vertices()) {
                assert!(dist(*a, *b) < 1e-12);
            }
        }
    }

    #[test]
    fn square_has_two_charts_with_equal_distance_to_itself() {
        let space = PolygonSpace::new(4).unwrap();
        let sq = PolygonShape::regular(4).unwrap();
        assert_eq!(space.eta_sup(&sq, &sq).unwrap(), 0.0);
        assert_eq!(space.triangulations()[0].diagonals().len(), 1);
    }

    #[test]
    fn edge_interpolation_stays_convex() {
        let a = PolygonShape::new(alloc::vec![[0.0, 0.0], [3.0, 0.0], [3.1, 0.2], [0.1, 1.0], [0.0, 0.9]]).unwrap();
        let b = PolygonShape::new(alloc::vec![[0.0, 0.0], [0.2, 0.0], [2.0, 1.5], [1.0, 3.0], [-0.5, 1.0]]).unwrap();
        for k in 1..20 {
            let p = interpolate_edges(&a, &b, k as f64 / 20.0).unwrap();
            assert!(p.min_turn() > 0.0);
        }
        let same = interpolate_edges(&a, &a, 0.4).unwrap();
        for (p, q) in same.vertices().iter().zip(a.vertices()) {
            assert!(dist(*p, *q) < 1e-14);
        }
    }

    #[test]
    fn rotation_velocity_has_zero_norm() {
        let shape = PolygonShape::regular(5).unwrap();
        let v: Vec<[f64; 2]> = shape.vertices().iter().map(|p| [-p[1], p[0]]).collect();
        let t = ShapeTangent::new(shape, v).unwrap();
        let space = PolygonSpace::new(5).unwrap();
        assert!(space.finsler_sup(&t).unwrap().abs() < 1e-14);
    }
}
