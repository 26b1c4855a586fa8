//! Flat structures on a surface with a fixed triangulation.
//!
//! A point stores one Heron coordinate per (face, opposite edge) slot:
//! for a face with edge triple `(i, j, k)` the slot opposite `e_i` holds
//! `A_ijk = (l_j + l_k - l_i) / 2`. Two slots of a face sum to the length
//! of the third edge, so an interior edge seen from both of its faces must
//! get the same length; those linear identities are the gluing constraints.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{domain, invalid, Error, Result};
use crate::geodesic_check::{verify_log_dominance, GeodesicVerdict};
use crate::math;
use crate::paths::FinslerSpace;
use crate::triangle::{heron_area_gradient, TriCoords};
use crate::weak_metric::WeakMetric;

/// Relative tolerance on gluing constraints when a point is built.
pub const CONSTRAINT_TOL: f64 = 1e-12;
/// Relative tolerance on gluing constraints along computed paths.
pub const PATH_CONSTRAINT_TOL: f64 = 1e-9;
/// Relative tolerance on the linearized constraints of tangent vectors.
pub const TANGENT_TOL: f64 = 1e-10;

/// Combinatorial triangulation: faces are ordered edge triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    edge_count: usize,
    faces: Vec<[usize; 3]>,
    boundary: Vec<bool>,
    /// `(face, slot)` positions of every edge, with multiplicity.
    occurrences: Vec<Vec<(usize, usize)>>,
}

impl Triangulation {
    /// Validates edge usage: a boundary edge sits in exactly one face slot,
    /// an interior edge in exactly two (possibly of the same face).
    pub fn new(edge_count: usize, faces: Vec<[usize; 3]>, boundary: Vec<bool>) -> Result<Self> {
        if faces.is_empty() {
            return Err(invalid("a triangulation needs at least one face"));
        }
        if boundary.len() != edge_count {
            return Err(invalid("boundary flags must match the edge count"));
        }
        let mut occurrences = alloc::vec![Vec::new(); edge_count];
        for (f, face) in faces.iter().enumerate() {
            for (s, &e) in face.iter().enumerate() {
                if e >= edge_count {
                    return Err(invalid("face refers to an unknown edge"));
                }
                occurrences[e].push((f, s));
            }
        }
        for (e, occ) in occurrences.iter().enumerate() {
            let expected = if boundary[e] { 1 } else { 2 };
            if occ.len() > 2 {
                return Err(invalid(alloc::format!("edge {e} is used more than twice")));
            }
            if occ.len() != expected {
                return Err(invalid(alloc::format!(
                    "edge {e} is used {} times but is marked {}",
                    occ.len(),
                    if boundary[e] { "boundary" } else { "interior" }
                )));
            }
        }
        Ok(Self {
            edge_count,
            faces,
            boundary,
            occurrences,
        })
    }

    /// One triangle, three boundary edges.
    pub fn single_triangle() -> Self {
        Self::new(3, alloc::vec![[0, 1, 2]], alloc::vec![true; 3]).expect("valid")
    }

    /// A quadrilateral split by the interior edge 2 into faces `[0, 1, 2]`
    /// and `[2, 3, 4]`.
    pub fn two_face_disc() -> Self {
        Self::new(
            5,
            alloc::vec![[0, 1, 2], [2, 3, 4]],
            alloc::vec![true, true, false, true, true],
        )
        .expect("valid")
    }

    /// Boundary of a tetrahedron: a sphere with four faces and six interior edges.
    pub fn tetrahedron() -> Self {
        // Vertices 0..4; edges 01, 02, 03, 12, 13, 23; each face lists the
        // edges opposite its vertices in increasing vertex order.
        Self::new(
            6,
            alloc::vec![[3, 1, 0], [4, 2, 0], [5, 2, 1], [5, 4, 3]],
            alloc::vec![false; 6],
        )
        .expect("valid")
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn is_boundary(&self, edge: usize) -> bool {
        self.boundary[edge]
    }

    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_count).filter(|&e| !self.boundary[e])
    }

    pub fn occurrences(&self, edge: usize) -> &[(usize, usize)] {
        &self.occurrences[edge]
    }

    pub fn slot_count(&self) -> usize {
        3 * self.faces.len()
    }

    /// The index set: every cyclic (even) rotation of every face triple,
    /// in slot order.
    pub fn index_set(&self) -> Vec<(usize, usize, usize)> {
        self.faces
            .iter()
            .flat_map(|&[i, j, k]| [(i, j, k), (j, k, i), (k, i, j)])
            .collect()
    }
}

fn same_triangulation(a: &Arc<Triangulation>, b: &Arc<Triangulation>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn face_area(slots: &[f64; 3]) -> f64 {
    let [a1, a2, a3] = *slots;
    math::sqrt((a1 + a2 + a3) * a1 * a2 * a3)
}

/// A flat structure in slot coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfacePoint {
    tri: Arc<Triangulation>,
    slots: Vec<[f64; 3]>,
    area: f64,
}

impl SurfacePoint {
    pub fn new(tri: Arc<Triangulation>, slots: Vec<[f64; 3]>) -> Result<Self> {
        Self::with_tolerance(tri, slots, CONSTRAINT_TOL)
    }

    pub fn with_tolerance(tri: Arc<Triangulation>, slots: Vec<[f64; 3]>, tol: f64) -> Result<Self> {
        if slots.len() != tri.face_count() {
            return Err(invalid("slot table must have one row per face"));
        }
        if slots.iter().flatten().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(domain("slot values must be finite and positive"));
        }
        let p = Self::assemble(tri, slots);
        let (edge, residual) = p.worst_constraint();
        if residual > tol {
            return Err(Error::InconsistentPoint { edge, residual });
        }
        Ok(p)
    }

    fn assemble(tri: Arc<Triangulation>, slots: Vec<[f64; 3]>) -> Self {
        let area = slots.iter().map(face_area).sum();
        Self { tri, slots, area }
    }

    /// Builds slot values from per-edge lengths, checking every face's
    /// strict triangle inequalities.
    pub fn from_edge_lengths(tri: Arc<Triangulation>, lengths: &[f64]) -> Result<Self> {
        if lengths.len() != tri.edge_count() {
            return Err(invalid("need one length per edge"));
        }
        if lengths.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
            return Err(domain("edge lengths must be finite and positive"));
        }
        let slots = slots_from_lengths(&tri, lengths)?;
        Ok(Self::assemble(tri, slots))
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn slots(&self) -> &[[f64; 3]] {
        &self.slots
    }

    /// Slot values flattened in index-set order.
    pub fn flat(&self) -> Vec<f64> {
        self.slots.iter().flatten().copied().collect()
    }

    pub fn face_coords(&self, face: usize) -> TriCoords {
        TriCoords::from_array(self.slots[face]).expect("validated")
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn is_unit_area(&self, tol: f64) -> bool {
        (self.area - 1.0).abs() <= tol
    }

    pub fn min_slot(&self) -> f64 {
        self.slots.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }

    /// Edge lengths averaged over the faces containing each edge.
    pub fn edge_lengths(&self) -> Vec<f64> {
        averaged_lengths(&self.tri, &self.slots)
    }

    /// Largest relative disagreement between the two face-side lengths of
    /// any interior edge, with the offending edge.
    pub fn worst_constraint(&self) -> (usize, f64) {
        constraint_residual(&self.tri, &self.slots)
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(domain("scale factor must be positive"));
        }
        let slots = self.slots.iter().map(|s| s.map(|x| lambda * x)).collect();
        Ok(Self::assemble(self.tri.clone(), slots))
    }

    /// Rescales to unit area; returns the new point and the factor.
    pub fn normalize_unit_area(&self) -> (SurfacePoint, f64) {
        let lambda = 1.0 / math::sqrt(self.area);
        let slots = self.slots.iter().map(|s| s.map(|x| lambda * x)).collect();
        (Self::assemble(self.tri.clone(), slots), lambda)
    }
}

fn side_length(slots: &[f64; 3], slot: usize) -> f64 {
    slots[(slot + 1) % 3] + slots[(slot + 2) % 3]
}

fn constraint_residual(tri: &Triangulation, slots: &[[f64; 3]]) -> (usize, f64) {
    let mut worst = (0, 0.0);
    for e in tri.interior_edges() {
        let occ = tri.occurrences(e);
        let (f0, s0) = occ[0];
        let (f1, s1) = occ[1];
        let l0 = side_length(&slots[f0], s0);
        let l1 = side_length(&slots[f1], s1);
        let r = (l0 - l1).abs() / l0.max(l1);
        if r > worst.1 {
            worst = (e, r);
        }
    }
    worst
}

fn averaged_lengths(tri: &Triangulation, slots: &[[f64; 3]]) -> Vec<f64> {
    (0..tri.edge_count())
        .map(|e| {
            let occ = tri.occurrences(e);
            occ.iter().map(|&(f, s)| side_length(&slots[f], s)).sum::<f64>() / occ.len() as f64
        })
        .collect()
}

fn slots_from_lengths(tri: &Triangulation, lengths: &[f64]) -> Result<Vec<[f64; 3]>> {
    tri.faces()
        .iter()
        .map(|face| {
            let slots: [f64; 3] = core::array::from_fn(|s| {
                0.5 * ((lengths[face[(s + 1) % 3]] + lengths[face[(s + 2) % 3]]) - lengths[face[s]])
            });
            if slots.iter().any(|&x| !(x > 0.0)) {
                Err(domain("edge lengths violate a face's triangle inequality"))
            } else {
                Ok(slots)
            }
        })
        .collect()
}

pub fn edge_lengths(p: &SurfacePoint) -> Result<Vec<f64>> {
    let (edge, residual) = p.worst_constraint();
    if residual > PATH_CONSTRAINT_TOL {
        return Err(Error::InconsistentPoint { edge, residual });
    }
    Ok(p.edge_lengths())
}

/// Sum of the Heron areas of the faces.
pub fn surface_area(p: &SurfacePoint) -> f64 {
    p.area()
}

pub fn normalize_unit_area(p: &SurfacePoint) -> (SurfacePoint, f64) {
    p.normalize_unit_area()
}

fn check_pair(p: &SurfacePoint, q: &SurfacePoint) -> Result<()> {
    if same_triangulation(&p.tri, &q.tri) {
        Ok(())
    } else {
        Err(Error::TriangulationMismatch)
    }
}

/// `log max_slots B / A`.
pub fn eta_t(p: &SurfacePoint, q: &SurfacePoint) -> Result<f64> {
    check_pair(p, q)?;
    let ratio = p
        .slots
        .iter()
        .zip(&q.slots)
        .map(|(a, b)| (b[0] / a[0]).max(b[1] / a[1]).max(b[2] / a[2]))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(math::ln(ratio))
}

fn check_t(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(invalid("family parameter t must lie in [0, 1]"))
    }
}

pub fn eta_t_family_arith(t: f64, p: &SurfacePoint, q: &SurfacePoint) -> Result<f64> {
    check_t(t)?;
    Ok((1.0 - t) * eta_t(p, q)? + t * eta_t(q, p)?)
}

pub fn eta_t_family_max(t: f64, p: &SurfacePoint, q: &SurfacePoint) -> Result<f64> {
    check_t(t)?;
    Ok(((1.0 - t) * eta_t(p, q)?).max(t * eta_t(q, p)?))
}

/// `max_slots |log B - log A|`; its restriction to unit-area points is the
/// max-symmetrization of [`eta_t`]. Evaluated like
/// [`crate::triangle_space::log_sup_distance`].
pub fn log_sup_distance_t(p: &SurfacePoint, q: &SurfacePoint) -> Result<f64> {
    check_pair(p, q)?;
    Ok(p.slots
        .iter()
        .flatten()
        .zip(q.slots.iter().flatten())
        .map(|(a, b)| math::ln(b / a).max(math::ln(a / b)))
        .fold(f64::NEG_INFINITY, f64::max))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EtaT;

impl WeakMetric<SurfacePoint> for EtaT {
    fn distance(&self, x: &SurfacePoint, y: &SurfacePoint) -> Result<f64> {
        eta_t(x, y)
    }

    fn domain_tag(&self) -> &str {
        "surface/unit-area"
    }
}

/// Unit-area geodesic obtained by interpolating slot values and rescaling.
///
/// With interior edges the interpolation is affine: it keeps the gluing
/// constraints exactly and the slot with the largest ratio `B/A` has the
/// largest log-derivative at every time, in both directions. Without
/// interior edges there is nothing to keep, and the slots are interpolated
/// log-linearly as in triangle space.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceGeodesic {
    start: SurfacePoint,
    end: SurfacePoint,
    log_linear: bool,
}

impl SurfaceGeodesic {
    pub fn start(&self) -> &SurfacePoint {
        &self.start
    }

    pub fn end(&self) -> &SurfacePoint {
        &self.end
    }

    pub fn unnormalized(&self, t: f64) -> SurfacePoint {
        let pairs = self.start.slots.iter().zip(&self.end.slots);
        let slots = if self.log_linear {
            pairs
                .map(|(a, b)| core::array::from_fn(|i| math::exp((1.0 - t) * math::ln(a[i]) + t * math::ln(b[i]))))
                .collect()
        } else {
            pairs
                .map(|(a, b)| core::array::from_fn(|i| (1.0 - t) * a[i] + t * b[i]))
                .collect()
        };
        SurfacePoint::assemble(self.start.tri.clone(), slots)
    }

    pub fn at(&self, t: f64) -> SurfacePoint {
        if t == 0.0 {
            self.start.clone()
        } else if t == 1.0 {
            self.end.clone()
        } else {
            self.unnormalized(t).normalize_unit_area().0
        }
    }

    pub fn samples(&self, k: usize) -> Vec<(f64, SurfacePoint)> {
        let k = k.max(2);
        (0..k)
            .map(|m| {
                let t = m as f64 / (k - 1) as f64;
                (t, self.at(t))
            })
            .collect()
    }
}

pub fn geodesic_t(p: &SurfacePoint, q: &SurfacePoint) -> Result<SurfaceGeodesic> {
    check_pair(p, q)?;
    Ok(SurfaceGeodesic {
        start: p.clone(),
        end: q.clone(),
        log_linear: p.tri.interior_edges().next().is_none(),
    })
}

/// Slot-wise log-linear interpolation `A^{1-t} B^t`, projected back onto
/// the gluing constraints.
///
/// Interpolating slot values geometrically does not keep the linear gluing
/// identities when the triangulation has interior edges. Each sample is
/// projected by averaging the two face-side lengths of every edge and
/// rebuilding the slots; the relative projection distance is returned with
/// the sample and must stay within [`PATH_CONSTRAINT_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct LogLinearPath {
    start: SurfacePoint,
    end: SurfacePoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedSample {
    pub point: SurfacePoint,
    /// Largest relative change of a slot value caused by the projection.
    pub residual: f64,
}

impl LogLinearPath {
    /// The interpolated slots before projection and rescaling.
    pub fn raw(&self, t: f64) -> Vec<[f64; 3]> {
        self.start
            .slots
            .iter()
            .zip(&self.end.slots)
            .map(|(a, b)| core::array::from_fn(|i| math::exp((1.0 - t) * math::ln(a[i]) + t * math::ln(b[i]))))
            .collect()
    }

    pub fn projected(&self, t: f64) -> Result<ProjectedSample> {
        if t == 0.0 || t == 1.0 {
            let point = if t == 0.0 { &self.start } else { &self.end };
            return Ok(ProjectedSample {
                point: point.clone(),
                residual: 0.0,
            });
        }
        let raw = self.raw(t);
        let tri = self.start.tri.clone();
        let (slots, residual) = if tri.interior_edges().next().is_none() {
            (raw, 0.0)
        } else {
            let lengths = averaged_lengths(&tri, &raw);
            let rebuilt = slots_from_lengths(&tri, &lengths)?;
            let residual = rebuilt
                .iter()
                .flatten()
                .zip(raw.iter().flatten())
                .map(|(r, a)| (r - a).abs() / a)
                .fold(0.0, f64::max);
            (rebuilt, residual)
        };
        let point = SurfacePoint::assemble(tri, slots).normalize_unit_area().0;
        Ok(ProjectedSample { point, residual })
    }

    /// Like [`LogLinearPath::projected`] but fails when the projection moved
    /// a slot by more than [`PATH_CONSTRAINT_TOL`].
    pub fn at(&self, t: f64) -> Result<ProjectedSample> {
        let sample = self.projected(t)?;
        if sample.residual > PATH_CONSTRAINT_TOL {
            let (edge, _) = constraint_residual(&self.start.tri, &self.raw(t));
            return Err(Error::InconsistentPoint {
                edge,
                residual: sample.residual,
            });
        }
        Ok(sample)
    }
}

pub fn log_linear_path_t(p: &SurfacePoint, q: &SurfacePoint) -> Result<LogLinearPath> {
    check_pair(p, q)?;
    Ok(LogLinearPath {
        start: p.clone(),
        end: q.clone(),
    })
}

/// Geodesic criterion on sampled surface points, with the dominating index
/// ranging over slots (index-set order).
pub fn verify_geodesic_t(samples: &[(f64, SurfacePoint)]) -> Result<GeodesicVerdict> {
    if let Some((_, first)) = samples.first() {
        for (_, p) in samples {
            check_pair(first, p)?;
        }
    }
    let flat: Vec<(f64, Vec<f64>)> = samples.iter().map(|(t, p)| (*t, p.flat())).collect();
    verify_log_dominance(&flat)
}

/// A tangent vector to the unit-area constraint set.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceTangent {
    base: SurfacePoint,
    v: Vec<[f64; 3]>,
}

/// Worst normalized residual of the linearized gluing and area constraints.
fn tangent_residual(base: &SurfacePoint, v: &[[f64; 3]]) -> f64 {
    let tri = &base.tri;
    let vnorm = math::sqrt(v.iter().flatten().map(|x| x * x).sum());
    if vnorm == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0_f64;
    for e in tri.interior_edges() {
        let occ = tri.occurrences(e);
        let (f0, s0) = occ[0];
        let (f1, s1) = occ[1];
        let d = side_length(&v[f0], s0) - side_length(&v[f1], s1);
        worst = worst.max(d.abs() / vnorm);
    }
    let mut dot = 0.0;
    let mut gnorm2 = 0.0;
    for (f, row) in v.iter().enumerate() {
        let g = heron_area_gradient(&base.face_coords(f));
        for i in 0..3 {
            dot += g[i] * row[i];
            gnorm2 += g[i] * g[i];
        }
    }
    worst.max(dot.abs() / (math::sqrt(gnorm2) * vnorm))
}

impl SurfaceTangent {
    pub fn new(base: SurfacePoint, v: Vec<[f64; 3]>) -> Result<Self> {
        Self::with_tolerance(base, v, TANGENT_TOL)
    }

    pub fn with_tolerance(base: SurfacePoint, v: Vec<[f64; 3]>, tol: f64) -> Result<Self> {
        if v.len() != base.slots.len() {
            return Err(invalid("tangent must have one row per face"));
        }
        if v.iter().flatten().any(|x| !x.is_finite()) {
            return Err(invalid("tangent components must be finite"));
        }
        if tangent_residual(&base, &v) > tol {
            return Err(invalid("vector violates the linearized gluing or area constraints"));
        }
        Ok(Self { base, v })
    }

    pub fn base(&self) -> &SurfacePoint {
        &self.base
    }

    pub fn components(&self) -> &[[f64; 3]] {
        &self.v
    }

    pub fn negated(&self) -> Self {
        Self {
            base: self.base.clone(),
            v: self.v.iter().map(|r| r.map(|x| -x)).collect(),
        }
    }
}

fn max_log_rate(base: &[[f64; 3]], v: &[[f64; 3]]) -> f64 {
    base.iter()
        .flatten()
        .zip(v.iter().flatten())
        .map(|(a, x)| x / a)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `max_slots v / A`.
pub fn finsler_t(v: &SurfaceTangent) -> f64 {
    max_log_rate(&v.base.slots, &v.v)
}

/// `(1 - t) max_slots v / A + t max_slots (-v) / A`.
pub fn finsler_t_family(t: f64, v: &SurfaceTangent) -> Result<f64> {
    check_t(t)?;
    Ok((1.0 - t) * finsler_t(v) + t * finsler_t(&v.negated()))
}

/// Unit-area quadrilaterals `Q_n`, `Q'_n` on [`Triangulation::two_face_disc`]:
/// an isosceles triangle with sides `(a/c, a/c, 2/c)` glued along its base to
/// an equilateral triangle of side `2/c`, where `c(n) = sqrt(sqrt 3 + 1/n)`,
/// `a(n) = sqrt(1 + 1/n^2)`; `Q'_n` uses `d(n) = sqrt(sqrt 3 + 2/n)` and
/// `b(n) = sqrt(1 + 4/n^2)`.
///
/// `eta_t(Q_n, Q'_n) -> log 4` while `eta_t(Q'_n, Q_n) -> 0`, and the thin
/// face of `Q_n` collapses as `n` grows.
pub fn example_incomplete_sequence(n: u64) -> (SurfacePoint, SurfacePoint) {
    let tri = Arc::new(Triangulation::two_face_disc());
    let quad = |k: f64| {
        let nf = n as f64;
        let c = math::sqrt(math::sqrt(3.0) + k / nf);
        let h2 = k * k / (nf * nf);
        // a - 1 with a = sqrt(1 + h2), without cancellation.
        let apex = h2 / (math::sqrt(1.0 + h2) + 1.0);
        let slots = alloc::vec![[1.0 / c, 1.0 / c, apex / c], [1.0 / c; 3]];
        SurfacePoint::new(tri.clone(), slots).expect("constraints hold by construction")
    };
    (quad(1.0), quad(2.0))
}

/// Unit-area flat structures on a fixed triangulation as a Finsler space:
/// affine slot segments, log edge lengths as free parameters.
#[derive(Clone, Debug)]
pub struct SurfaceSpace {
    tri: Arc<Triangulation>,
}

/// Tangency band for finite-difference velocities, relative to `|v| + |A|`.
const FD_TANGENT_TOL: f64 = 1e-8;

impl SurfaceSpace {
    pub fn new(tri: Arc<Triangulation>) -> Self {
        Self { tri }
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }
}

impl FinslerSpace for SurfaceSpace {
    type Point = SurfacePoint;

    fn coordinates(&self, p: &SurfacePoint) -> Vec<f64> {
        p.flat()
    }

    fn norm(&self, p: &SurfacePoint, velocity: &[f64]) -> Result<f64> {
        if velocity.len() != p.tri.slot_count() {
            return Err(invalid("velocity has the wrong number of slots"));
        }
        let rows: Vec<[f64; 3]> = velocity.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        let vnorm = math::sqrt(velocity.iter().map(|x| x * x).sum());
        let anorm = math::sqrt(p.slots.iter().flatten().map(|x| x * x).sum());
        let residual = tangent_residual(p, &rows) * vnorm / (vnorm + anorm);
        if residual > FD_TANGENT_TOL {
            return Err(invalid("velocity is not tangent to the unit-area constraint set"));
        }
        Ok(max_log_rate(&p.slots, &rows))
    }

    fn interpolate(&self, a: &SurfacePoint, b: &SurfacePoint, s: f64) -> Result<SurfacePoint> {
        Ok(geodesic_t(a, b)?.at(s))
    }

    fn parameters(&self, p: &SurfacePoint) -> Vec<f64> {
        p.edge_lengths().into_iter().map(math::ln).collect()
    }

    fn from_parameters(&self, params: &[f64]) -> Result<SurfacePoint> {
        let lengths: Vec<f64> = params.iter().map(|&x| math::exp(x)).collect();
        Ok(SurfacePoint::from_edge_lengths(self.tri.clone(), &lengths)?.normalize_unit_area().0)
    }
}
