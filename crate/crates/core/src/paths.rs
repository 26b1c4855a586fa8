//! Finsler lengths of parametrized paths and a local search for short
//! discrete paths.
//!
//! Velocities come from finite differences of the path in the space's
//! ambient coordinates, so any chart that can evaluate points can be
//! integrated. Lengths from [`minimize_length`] are lengths of actual paths
//! and therefore upper bounds on the induced path metric.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};

/// Relative finite-difference step (fraction of the smooth piece's length).
pub const FD_STEP: f64 = 1e-5;
pub const MAX_SIMPSON_DEPTH: u32 = 30;
const INITIAL_PANELS: usize = 8;
const EVALUATION_BUDGET: usize = 4_000_000;

/// A space carrying a (possibly asymmetric) Finsler norm.
pub trait FinslerSpace {
    type Point: Clone;

    /// Ambient coordinates in which velocities are expressed.
    fn coordinates(&self, p: &Self::Point) -> Vec<f64>;

    /// Norm at `p` of an ambient velocity.
    fn norm(&self, p: &Self::Point, velocity: &[f64]) -> Result<f64>;

    /// Segment rule for discrete paths, `s` in `[0, 1]`.
    fn interpolate(&self, a: &Self::Point, b: &Self::Point, s: f64) -> Result<Self::Point>;

    /// Unconstrained parameters used by the optimizer.
    fn parameters(&self, p: &Self::Point) -> Vec<f64>;

    /// Inverse of [`FinslerSpace::parameters`] up to the space's
    /// normalization; fails outside the admissible region.
    fn from_parameters(&self, params: &[f64]) -> Result<Self::Point>;
}

/// A path on `[0, 1]`, smooth between the listed breakpoints.
pub struct ParamPath<F> {
    eval: F,
    breakpoints: Vec<f64>,
}

impl<F> ParamPath<F> {
    pub fn smooth(eval: F) -> Self {
        Self {
            eval,
            breakpoints: Vec::new(),
        }
    }

    pub fn piecewise(eval: F, breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.iter().any(|&b| !(b > 0.0 && b < 1.0)) {
            return Err(invalid("breakpoints must lie strictly inside (0, 1)"));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("breakpoints must be strictly increasing"));
        }
        Ok(Self { eval, breakpoints })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn is_smooth(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn eval<P>(&self, t: f64) -> Result<P>
    where
        F: Fn(f64) -> Result<P>,
    {
        (self.eval)(t)
    }
}

struct Integrand<'a, S: FinslerSpace, F> {
    space: &'a S,
    path: &'a ParamPath<F>,
    lo: f64,
    hi: f64,
    h: f64,
    evaluations: usize,
}

impl<S, F> Integrand<'_, S, F>
where
    S: FinslerSpace,
    F: Fn(f64) -> Result<S::Point>,
{
    fn coords(&self, t: f64) -> Result<Vec<f64>> {
        Ok(self.space.coordinates(&self.path.eval(t)?))
    }

    fn value(&mut self, t: f64) -> Result<f64> {
        self.evaluations += 1;
        let h = self.h;
        let point = self.path.eval(t)?;
        let here = self.space.coordinates(&point);
        // Second-order stencils that stay inside the smooth piece.
        let velocity: Vec<f64> = if t - h < self.lo {
            let (f1, f2) = (self.coords(t + h)?, self.coords(t + 2.0 * h)?);
            (0..here.len()).map(|i| (4.0 * (f1[i] - here[i]) - (f2[i] - here[i])) / (2.0 * h)).collect()
        } else if t + h > self.hi {
            let (b1, b2) = (self.coords(t - h)?, self.coords(t - 2.0 * h)?);
            (0..here.len()).map(|i| (4.0 * (here[i] - b1[i]) - (here[i] - b2[i])) / (2.0 * h)).collect()
        } else {
            let (f1, b1) = (self.coords(t + h)?, self.coords(t - h)?);
            (0..here.len()).map(|i| (f1[i] - b1[i]) / (2.0 * h)).collect()
        };
        self.space.norm(&point, &velocity)
    }
}

struct SimpsonState {
    converged: bool,
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson<S, F>(
    g: &mut Integrand<'_, S, F>,
    state: &mut SimpsonState,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    S: FinslerSpace,
    F: Fn(f64) -> Result<S::Point>,
{
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let flm = g.value(lm)?;
    let frm = g.value(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 || g.evaluations > EVALUATION_BUDGET {
        state.converged = false;
        return Ok(left + right + delta / 15.0);
    }
    let l = adaptive_simpson(g, state, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = adaptive_simpson(g, state, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// `integral_0^1 F(c(t), c'(t)) dt` by adaptive Simpson on each smooth piece.
///
/// Fails with [`Error::NumericalFailure`] (carrying the partial estimate)
/// when the depth or evaluation budget runs out before the error estimate
/// drops below `tol`.
pub fn path_length<S, F>(space: &S, path: &ParamPath<F>, tol: f64) -> Result<f64>
where
    S: FinslerSpace,
    F: Fn(f64) -> Result<S::Point>,
{
    if !(tol > 0.0) {
        return Err(invalid("quadrature tolerance must be positive"));
    }
    let mut knots = Vec::with_capacity(path.breakpoints.len() + 2);
    knots.push(0.0);
    knots.extend_from_slice(&path.breakpoints);
    knots.push(1.0);

    let mut total = 0.0;
    let mut state = SimpsonState { converged: true };
    for piece in knots.windows(2) {
        let (lo, hi) = (piece[0], piece[1]);
        let mut g = Integrand {
            space,
            path,
            lo,
            hi,
            h: FD_STEP * (hi - lo),
            evaluations: 0,
        };
        let piece_tol = tol * (hi - lo) / INITIAL_PANELS as f64;
        let width = (hi - lo) / INITIAL_PANELS as f64;
        let mut fa = g.value(lo)?;
        for p in 0..INITIAL_PANELS {
            let a = lo + p as f64 * width;
            let b = if p + 1 == INITIAL_PANELS { hi } else { a + width };
            let fm = g.value(0.5 * (a + b))?;
            let fb = g.value(b)?;
            let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            total += adaptive_simpson(&mut g, &mut state, a, b, fa, fm, fb, whole, piece_tol, MAX_SIMPSON_DEPTH)?;
            fa = fb;
        }
    }
    if state.converged {
        Ok(total)
    } else {
        Err(Error::NumericalFailure {
            reason: "adaptive quadrature did not reach the requested tolerance",
            estimate: total,
        })
    }
}

/// Waypoints joined by the space's segment rule.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscretePath<P> {
    pub waypoints: Vec<P>,
}

impl<P: Clone> DiscretePath<P> {
    pub fn new(waypoints: Vec<P>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(invalid("a discrete path needs at least two waypoints"));
        }
        Ok(Self { waypoints })
    }

    /// Evenly spaced points along the segment rule from `x` to `y`.
    pub fn along<S: FinslerSpace<Point = P>>(space: &S, x: &P, y: &P, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(invalid("a discrete path needs at least two waypoints"));
        }
        let mut waypoints = Vec::with_capacity(k);
        waypoints.push(x.clone());
        for m in 1..k - 1 {
            waypoints.push(space.interpolate(x, y, m as f64 / (k - 1) as f64)?);
        }
        waypoints.push(y.clone());
        Ok(Self { waypoints })
    }
}

/// Finsler length of one segment of a discrete path.
pub fn segment_length<S: FinslerSpace>(space: &S, a: &S::Point, b: &S::Point, tol: f64) -> Result<f64> {
    let segment = ParamPath::smooth(|s: f64| space.interpolate(a, b, s));
    path_length(space, &segment, tol)
}

/// Total Finsler length of a discrete path; `tol` is split over segments.
pub fn discrete_path_length<S: FinslerSpace>(space: &S, path: &DiscretePath<S::Point>, tol: f64) -> Result<f64> {
    let per = tol / (path.waypoints.len() - 1) as f64;
    path.waypoints
        .windows(2)
        .map(|w| segment_length(space, &w[0], &w[1], per))
        .sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimizeOptions {
    /// Waypoint count including both endpoints.
    pub waypoints: usize,
    pub restarts: usize,
    pub seed: u64,
    pub max_sweeps: usize,
    /// Half-width of the first coordinate line search, in parameter units.
    pub initial_step: f64,
    pub golden_iterations: usize,
    /// Quadrature tolerance for the reported length.
    pub quadrature_tol: f64,
    /// Sweeps stop once the total improvement falls below this.
    pub improvement_tol: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            waypoints: 6,
            restarts: 1,
            seed: 0,
            max_sweeps: 12,
            initial_step: 0.1,
            golden_iterations: 20,
            quadrature_tol: 1e-8,
            improvement_tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeOutcome<P> {
    pub path: DiscretePath<P>,
    /// Length of `path`, an upper bound on the path metric.
    pub length: f64,
    /// Length of the segment-rule path the search started from.
    pub initial_length: f64,
    /// Restart that produced `path`.
    pub restart: usize,
    /// No feasible improving step was found; `path` is the initial path.
    pub stalled: bool,
}

const INFEASIBLE: f64 = f64::INFINITY;

struct Search<'a, S: FinslerSpace> {
    space: &'a S,
    tol: f64,
}

impl<S: FinslerSpace> Search<'_, S> {
    fn seg(&self, a: &S::Point, b: &S::Point) -> f64 {
        segment_length(self.space, a, b, self.tol).unwrap_or(INFEASIBLE)
    }

    fn local(&self, prev: &S::Point, p: &S::Point, next: &S::Point) -> f64 {
        self.seg(prev, p) + self.seg(p, next)
    }

    fn total(&self, pts: &[S::Point]) -> f64 {
        pts.windows(2).map(|w| self.seg(&w[0], &w[1])).sum()
    }

    /// Cyclic coordinate descent with golden-section line searches.
    /// Returns whether any step was accepted.
    fn descend(&self, pts: &mut [S::Point], opts: &MinimizeOptions) -> bool {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let mut step = opts.initial_step;
        let mut any = false;
        let mut current = self.total(pts);
        for _ in 0..opts.max_sweeps {
            for m in 1..pts.len() - 1 {
                for c in 0..self.space.parameters(&pts[m]).len() {
                    let base_params = self.space.parameters(&pts[m]);
                    let probe = |delta: f64| -> (f64, Option<S::Point>) {
                        let mut params = base_params.clone();
                        params[c] += delta;
                        match self.space.from_parameters(&params) {
                            Ok(p) => (self.local(&pts[m - 1], &p, &pts[m + 1]), Some(p)),
                            Err(_) => (INFEASIBLE, None),
                        }
                    };
                    let here = self.local(&pts[m - 1], &pts[m], &pts[m + 1]);
                    let (mut lo, mut hi) = (-step, step);
                    let mut x1 = hi - INV_PHI * (hi - lo);
                    let mut x2 = lo + INV_PHI * (hi - lo);
                    let (mut f1, mut p1) = probe(x1);
                    let (mut f2, mut p2) = probe(x2);
                    for _ in 0..opts.golden_iterations {
                        if f1 <= f2 {
                            hi = x2;
                            (x2, f2, p2) = (x1, f1, p1.take());
                            x1 = hi - INV_PHI * (hi - lo);
                            (f1, p1) = probe(x1);
                        } else {
                            lo = x1;
                            (x1, f1, p1) = (x2, f2, p2.take());
                            x2 = lo + INV_PHI * (hi - lo);
                            (f2, p2) = probe(x2);
                        }
                    }
                    let (best_f, best_p) = if f1 <= f2 { (f1, p1) } else { (f2, p2) };
                    if let Some(p) = best_p {
                        if best_f < here - opts.improvement_tol * 1e-3 {
                            pts[m] = p;
                            any = true;
                        }
                    }
                }
            }
            let next = self.total(pts);
            let gain = current - next;
            current = next;
            if gain < opts.improvement_tol {
                step *= 0.5;
                if step < 1e-6 {
                    break;
                }
            }
        }
        any
    }
}

/// Searches for a short discrete path from `x` to `y`.
///
/// Restart 0 starts from the segment-rule path; later restarts perturb its
/// interior waypoints with seeded noise. The shortest result wins, ties going
/// to the lower restart index, so equal inputs and seed give equal outputs.
pub fn minimize_length<S: FinslerSpace>(
    space: &S,
    x: &S::Point,
    y: &S::Point,
    opts: &MinimizeOptions,
) -> Result<MinimizeOutcome<S::Point>> {
    if opts.waypoints < 2 {
        return Err(invalid("minimize_length needs at least two waypoints"));
    }
    if space.coordinates(x) == space.coordinates(y) {
        let path = DiscretePath {
            waypoints: alloc::vec![x.clone(); opts.waypoints],
        };
        return Ok(MinimizeOutcome {
            path,
            length: 0.0,
            initial_length: 0.0,
            restart: 0,
            stalled: true,
        });
    }
    let initial = match DiscretePath::along(space, x, y, opts.waypoints) {
        Ok(p) => p,
        Err(_) => parameter_line(space, x, y, opts.waypoints)?,
    };
    let initial_length = discrete_path_length(space, &initial, opts.quadrature_tol)?;
    let search = Search {
        space,
        tol: opts.quadrature_tol / (opts.waypoints - 1) as f64,
    };

    let mut best: Option<(f64, usize, DiscretePath<S::Point>)> = None;
    let mut stalled = true;
    if initial_length > 0.0 && opts.waypoints > 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for restart in 0..opts.restarts.max(1) {
            let mut pts = initial.waypoints.clone();
            if restart > 0 && !perturb(space, &mut pts, opts.initial_step, &mut rng) {
                continue;
            }
            if search.descend(&mut pts, opts) || restart > 0 {
                stalled = false;
            }
            let path = DiscretePath { waypoints: pts };
            let len = match discrete_path_length(space, &path, opts.quadrature_tol) {
                Ok(l) => l,
                Err(_) => continue,
            };
            if best.as_ref().is_none_or(|(b, _, _)| len < *b) {
                best = Some((len, restart, path));
            }
        }
    }
    let (length, restart, path) = match best {
        Some((len, r, p)) if len <= initial_length => (len, r, p),
        _ => (initial_length, 0, initial),
    };
    Ok(MinimizeOutcome {
        path,
        length,
        initial_length,
        restart,
        stalled,
    })
}

fn parameter_line<S: FinslerSpace>(space: &S, x: &S::Point, y: &S::Point, k: usize) -> Result<DiscretePath<S::Point>> {
    let (px, py) = (space.parameters(x), space.parameters(y));
    let mut waypoints = Vec::with_capacity(k);
    waypoints.push(x.clone());
    for m in 1..k - 1 {
        let s = m as f64 / (k - 1) as f64;
        let params: Vec<f64> = px.iter().zip(&py).map(|(a, b)| (1.0 - s) * a + s * b).collect();
        waypoints.push(space.from_parameters(&params).map_err(|_| Error::NumericalFailure {
            reason: "no feasible initial path",
            estimate: f64::NAN,
        })?);
    }
    waypoints.push(y.clone());
    Ok(DiscretePath { waypoints })
}

fn perturb<S: FinslerSpace>(space: &S, pts: &mut [S::Point], scale: f64, rng: &mut ChaCha8Rng) -> bool {
    for m in 1..pts.len() - 1 {
        let base = space.parameters(&pts[m]);
        let mut placed = false;
        for _ in 0..10 {
            let params: Vec<f64> = base.iter().map(|&p| p + rng.gen_range(-scale..scale)).collect();
            if let Ok(p) = space.from_parameters(&params) {
                pts[m] = p;
                placed = true;
                break;
            }
        }
        if !placed {
            return false;
        }
    }
    true
}
