//! The named experiments behind `trimetric experiment`.
//!
//! Every experiment is a pure function of its [`Settings`]: the same seed
//! and parameters give byte-identical CSV and JSON.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use trimetric_core::paths::MinimizeOptions;
use trimetric_core::polygon::{Aggregate, PolygonSpace};
use trimetric_core::quadrant::{finsler_star, g_partials, g_third_coordinate, unit_ball};
use trimetric_core::sample::{random_convex_polygon, random_triangle};
use trimetric_core::surface::{eta_t, example_incomplete_sequence, surface_area, EtaT};
use trimetric_core::triangle_space::{eta_points, geodesic, log_sup_distance, Eta};
use trimetric_core::weak_metric::{cauchy_diagnose, convergence_symmetry_probe, ProbeThresholds};
use trimetric_core::{QuadrantPoint, SurfacePoint, TriCoords, TrianglePoint};

use crate::commands::{unit_ball_svg, unit_ball_table};
use crate::error::{CliError, CliResult};
use crate::output::{svg_polygons, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ExperimentName {
    IncompleteExample,
    ConvergenceSymmetry,
    UnitBall,
    PolygonBounds,
    CompletenessT1,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 5] = [
        ExperimentName::IncompleteExample,
        ExperimentName::ConvergenceSymmetry,
        ExperimentName::UnitBall,
        ExperimentName::PolygonBounds,
        ExperimentName::CompletenessT1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ExperimentName::IncompleteExample => "incomplete-example",
            ExperimentName::ConvergenceSymmetry => "convergence-symmetry",
            ExperimentName::UnitBall => "unit-ball",
            ExperimentName::PolygonBounds => "polygon-bounds",
            ExperimentName::CompletenessT1 => "completeness-T1",
        }
    }

    pub fn from_id(id: &str) -> CliResult<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.id() == id)
            .ok_or_else(|| CliError::input(format!("unknown experiment `{id}`")))
    }
}

/// Global flags plus per-experiment overrides; `None` means the default.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub seed: u64,
    pub tol: f64,
    pub grid: usize,
    pub ns: Option<Vec<u64>>,
    pub samples: Option<usize>,
    pub polygon_n: Option<usize>,
    pub point: Option<(f64, f64)>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            seed: 0,
            tol: 1e-8,
            grid: 20,
            ns: None,
            samples: None,
            polygon_n: None,
            point: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub relation: &'static str,
    pub tolerance: f64,
}

impl Verdict {
    fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: value <= tolerance,
            value,
            relation: "<=",
            tolerance,
        }
    }

    fn below(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            passed: value < tolerance,
            relation: "<",
            ..Self::at_most(name, value, tolerance)
        }
    }

    fn at_least(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            passed: value >= tolerance,
            relation: ">=",
            ..Self::at_most(name, value, tolerance)
        }
    }

    fn holds(name: &str, ok: bool) -> Self {
        Self {
            name: name.into(),
            passed: ok,
            value: if ok { 1.0 } else { 0.0 },
            relation: "==",
            tolerance: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub seed: u64,
    pub tol: f64,
    pub grid: usize,
    pub version: &'static str,
}

/// An extra output file (SVG figure) produced by an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: BTreeMap<String, Value>,
    pub records: Table,
    pub summary: BTreeMap<String, f64>,
    pub verdicts: Vec<Verdict>,
    pub metadata: Metadata,
    #[serde(skip)]
    pub artifacts: Vec<Artifact>,
}

impl ExperimentReport {
    fn new(name: ExperimentName, s: &Settings, records: Table) -> Self {
        Self {
            experiment: name.id().into(),
            parameters: BTreeMap::new(),
            records,
            summary: BTreeMap::new(),
            verdicts: Vec::new(),
            metadata: Metadata {
                seed: s.seed,
                tol: s.tol,
                grid: s.grid,
                version: env!("CARGO_PKG_VERSION"),
            },
            artifacts: Vec::new(),
        }
    }

    pub fn csv(&self) -> String {
        self.records.to_csv()
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    fn param(&mut self, key: &str, v: Value) {
        self.parameters.insert(key.into(), v);
    }

    fn stat(&mut self, key: &str, v: f64) {
        self.summary.insert(key.into(), v);
    }
}

pub fn run(name: ExperimentName, s: &Settings) -> CliResult<ExperimentReport> {
    if !(s.tol.is_finite() && s.tol > 0.0) {
        return Err(CliError::input("--tol must be positive"));
    }
    if s.grid < 2 {
        return Err(CliError::input("--grid must be at least 2"));
    }
    match name {
        ExperimentName::IncompleteExample => incomplete_example(s),
        ExperimentName::ConvergenceSymmetry => convergence_symmetry(s),
        ExperimentName::UnitBall => unit_ball_experiment(s),
        ExperimentName::PolygonBounds => polygon_bounds(s),
        ExperimentName::CompletenessT1 => completeness(s),
    }
}

/// Index range and step of the sub-sampled Cauchy window.
const CAUCHY_WINDOW: (u64, u64, usize) = (1_000, 10_000, 10);

fn incomplete_example(s: &Settings) -> CliResult<ExperimentReport> {
    let ns = s.ns.clone().unwrap_or_else(|| vec![100, 1_000, 10_000, 100_000, 1_000_000]);
    if ns.contains(&0) {
        return Err(CliError::input("sequence indices start at 1"));
    }
    let mut table = Table::new(&[
        "n", "area_q", "area_q_prime", "eta_q_to_q_prime", "eta_q_prime_to_q", "log4_gap", "min_slot_q",
    ]);
    let mut area_err: f64 = 0.0;
    for &n in &ns {
        let (q, qp) = example_incomplete_sequence(n);
        let (f, r) = (eta_t(&q, &qp)?, eta_t(&qp, &q)?);
        area_err = area_err.max((surface_area(&q) - 1.0).abs()).max((surface_area(&qp) - 1.0).abs());
        table.push(vec![
            n as f64,
            surface_area(&q),
            surface_area(&qp),
            f,
            r,
            (f - 4f64.ln()).abs(),
            q.min_slot(),
        ]);
    }
    let (q4, qp4) = example_incomplete_sequence(10_000);
    area_err = area_err.max((surface_area(&q4) - 1.0).abs()).max((surface_area(&qp4) - 1.0).abs());
    let (f4, r4) = (eta_t(&q4, &qp4)?, eta_t(&qp4, &q4)?);

    let (lo, hi, step) = CAUCHY_WINDOW;
    let seq: Vec<SurfacePoint> = (lo..=hi).step_by(step).map(|n| example_incomplete_sequence(n).0).collect();
    let diag = cauchy_diagnose(&EtaT, &seq, seq.len())?;
    let monotone = diag.forward_defect.windows(2).all(|w| w[1] <= w[0]);
    let tail_min_slot = seq.last().map(SurfacePoint::min_slot).unwrap_or(f64::NAN);

    let mut rep = ExperimentReport::new(ExperimentName::IncompleteExample, s, table);
    rep.param("ns", json!(ns));
    rep.param("cauchy_window", json!({"from": lo, "to": hi, "step": step}));
    rep.stat("max_area_error", area_err);
    rep.stat("eta_q_to_q_prime_at_1e4", f4);
    rep.stat("eta_q_prime_to_q_at_1e4", r4);
    rep.stat("forward_cauchy_defect", diag.forward_defect[0]);
    rep.stat("backward_cauchy_defect", diag.backward_defect[0]);
    rep.stat("min_slot_at_window_end", tail_min_slot);
    rep.verdicts = vec![
        Verdict::at_most("unit area of Q_n and Q'_n", area_err, 1e-12),
        Verdict::at_most("|eta(Q_n, Q'_n) - log 4| at n = 1e4", (f4 - 4f64.ln()).abs(), 5e-4),
        Verdict::at_most("eta(Q'_n, Q_n) at n = 1e4", r4, 5e-4),
        Verdict::below("forward Cauchy defect over the window", diag.forward_defect[0], 1e-3),
        Verdict::holds("forward Cauchy defect non-increasing", monotone),
        Verdict::below("minimum slot of Q_n at window end", tail_min_slot, 1e-7),
    ];
    Ok(rep)
}

fn convergence_symmetry(s: &Settings) -> CliResult<ExperimentReport> {
    let ns = s.ns.clone().unwrap_or_else(|| (2..=7).map(|k| 10u64.pow(k)).collect());
    if ns.contains(&0) {
        return Err(CliError::input("sequence indices start at 1"));
    }
    let thresholds = ProbeThresholds::default();
    let mut table = Table::with_labels(&["space"], &["n", "forward", "reverse"]);

    let surface_pairs: Vec<(SurfacePoint, SurfacePoint)> = ns
        .iter()
        .map(|&n| {
            let (q, qp) = example_incomplete_sequence(n);
            (qp, q)
        })
        .collect();
    let surf = convergence_symmetry_probe(&EtaT, &surface_pairs, thresholds)?;

    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let (x, y) = (random_triangle(&mut rng, 1.0), random_triangle(&mut rng, 1.0));
    let g = geodesic(&x, &y);
    let tri_pairs: Vec<(TrianglePoint, TrianglePoint)> = ns.iter().map(|&n| (g.at(1.0 / n as f64), x)).collect();
    let tri = convergence_symmetry_probe(&Eta, &tri_pairs, thresholds)?;

    for (label, rep) in [("surface", &surf), ("triangle", &tri)] {
        for (i, &n) in ns.iter().enumerate() {
            table.push_labelled(vec![label.into()], vec![n as f64, rep.forward[i], rep.reverse[i]]);
        }
    }
    let mut rep = ExperimentReport::new(ExperimentName::ConvergenceSymmetry, s, table);
    rep.param("ns", json!(ns));
    rep.param(
        "thresholds",
        json!({"forward_below": thresholds.forward_below, "reverse_above": thresholds.reverse_above}),
    );
    rep.stat("surface_last_forward", surf.last_forward());
    rep.stat("surface_last_reverse", surf.last_reverse());
    rep.stat("triangle_last_forward", tri.last_forward());
    rep.stat("triangle_last_reverse", tri.last_reverse());
    rep.verdicts = vec![
        Verdict::holds("surface pairs violate convergence symmetry", surf.violation),
        Verdict::holds("triangle pairs keep convergence symmetry", !tri.violation),
        Verdict::below("triangle reverse distance at largest n", tri.last_reverse(), thresholds.forward_below),
    ];
    Ok(rep)
}

fn log_grid(k: usize) -> Vec<f64> {
    (0..k).map(|i| 10f64.powf(-1.5 + 3.0 * i as f64 / (k - 1) as f64)).collect()
}

fn unit_ball_experiment(s: &Settings) -> CliResult<ExperimentReport> {
    let (a1, a2) = s.point.unwrap_or((1.0, 1.0));
    let p = QuadrantPoint::new(a1, a2)?;
    let samples = s.samples.unwrap_or(1000);
    let table = unit_ball_table(&p, s.grid);
    let vertex_err = table.column("fstar").unwrap()[..3]
        .iter()
        .map(|f| (f - 1.0).abs())
        .fold(0.0, f64::max);

    let ball = unit_ball(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut interior_max = f64::NEG_INFINITY;
    for _ in 0..samples {
        let w: [f64; 3] = std::array::from_fn(|_| rng.gen_range(1e-3..1.0));
        let total: f64 = w.iter().sum();
        let (x, y) = ball.combination(w.map(|v| v / total));
        interior_max = interior_max.max(finsler_star(&p, x, y));
    }

    // Analytic partials of G against central differences on a log grid.
    let mut partial_err: f64 = 0.0;
    let grid = log_grid(s.grid);
    for &u in &grid {
        for &v in &grid {
            let q = QuadrantPoint::new(u, v)?;
            let (d1, d2) = g_partials(&q);
            let g = |a: f64, b: f64| QuadrantPoint::new(a, b).map(|r| g_third_coordinate(&r));
            let (h1, h2) = (1e-6 * u, 1e-6 * v);
            let c1 = (g(u + h1, v)? - g(u - h1, v)?) / (2.0 * h1);
            let c2 = (g(u, v + h2)? - g(u, v - h2)?) / (2.0 * h2);
            partial_err = partial_err.max(((d1 - c1) / c1).abs()).max(((d2 - c2) / c2).abs());
        }
    }

    let mut rep = ExperimentReport::new(ExperimentName::UnitBall, s, table);
    rep.param("point", json!([a1, a2]));
    rep.param("interior_samples", json!(samples));
    rep.stat("max_vertex_error", vertex_err);
    rep.stat("max_interior_fstar", interior_max);
    rep.stat("max_partial_relative_error", partial_err);
    rep.verdicts = vec![
        Verdict::at_most("F* = 1 at the vertices", vertex_err, 1e-10),
        Verdict::below("F* < 1 inside the triangle", interior_max, 1.0),
        Verdict::at_most("G partials against central differences", partial_err, 1e-6),
    ];
    rep.artifacts.push(Artifact {
        file_name: "unit-ball.svg".into(),
        contents: unit_ball_svg(&p),
    });
    Ok(rep)
}

fn polygon_bounds(s: &Settings) -> CliResult<ExperimentReport> {
    let n = s.polygon_n.unwrap_or(5);
    let pairs = s.samples.unwrap_or(20);
    let space = PolygonSpace::new(n)?;
    let opts = MinimizeOptions {
        waypoints: 4,
        restarts: 1,
        seed: s.seed,
        max_sweeps: 2,
        quadrature_tol: s.tol,
        ..MinimizeOptions::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut table = Table::new(&["pair", "eta_sup", "upper_sup", "eta_avg", "upper_avg"]);
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut first = None;
    for i in 0..pairs {
        let x = random_convex_polygon(&mut rng, n)?;
        let y = random_convex_polygon(&mut rng, n)?;
        let mut row = vec![i as f64];
        for how in [Aggregate::Sup, Aggregate::Avg] {
            let lower = space.eta(&x, &y, how)?;
            let upper = space.path_metric_upper(&x, &y, how, &opts)?.length;
            worst = worst.max(lower - upper);
            row.extend([lower, upper]);
        }
        table.push(row);
        if first.is_none() {
            first = Some((x, y));
        }
    }

    // Triangles have a single chart, where the path metric is known.
    let tri_space = PolygonSpace::new(3)?;
    let tx = random_convex_polygon(&mut rng, 3)?;
    let ty = random_convex_polygon(&mut rng, 3)?;
    let tri_opts = MinimizeOptions {
        waypoints: 5,
        ..opts
    };
    let tri_upper = tri_space.path_metric_upper(&tx, &ty, Aggregate::Sup, &tri_opts)?.length;
    let tri_eta = tri_space.eta_sup(&tx, &ty)?;

    let mut rep = ExperimentReport::new(ExperimentName::PolygonBounds, s, table);
    rep.param("polygon_n", json!(n));
    rep.param("pairs", json!(pairs));
    rep.param(
        "minimizer",
        json!({"waypoints": opts.waypoints, "restarts": opts.restarts, "max_sweeps": opts.max_sweeps}),
    );
    rep.stat("max_lower_minus_upper", worst);
    rep.stat("triangle_eta", tri_eta);
    rep.stat("triangle_upper", tri_upper);
    rep.verdicts = vec![
        Verdict::at_most("chart metric minus path upper bound", worst, 1e-6),
        Verdict::at_most("triangle path bound matches eta", (tri_upper - tri_eta).abs(), 1e-4),
    ];
    if let Some((x, y)) = first {
        let to_pts = |p: &trimetric_core::PolygonShape| p.vertices().iter().map(|v| (v[0], v[1])).collect();
        rep.artifacts.push(Artifact {
            file_name: "polygon-bounds.svg".into(),
            contents: svg_polygons(&[to_pts(&x), to_pts(&y)], &[]),
        });
    }
    Ok(rep)
}

/// Terms of the forward-Cauchy sequences; the tail is compared with the limit.
const SEQUENCE_LENGTH: i32 = 40;

fn completeness(s: &Settings) -> CliResult<ExperimentReport> {
    let pairs = s.samples.unwrap_or(10_000);
    let sequences = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);

    let mut mismatches = 0usize;
    for _ in 0..pairs {
        let (x, y) = (random_triangle(&mut rng, 1.5), random_triangle(&mut rng, 1.5));
        let dmax = eta_points(&x, &y).max(eta_points(&y, &x));
        if dmax != log_sup_distance(&x.coords(), &y.coords()) {
            mismatches += 1;
        }
    }

    let mut table = Table::with_labels(&["kind"], &["sequence", "k", "forward_defect", "coord_error"]);
    let mut worst_err: f64 = 0.0;
    let mut worst_area: f64 = 0.0;
    let mut worst_defect: f64 = 0.0;
    for j in 0..sequences {
        // Points along a geodesic approaching its end: the limit is known.
        let (x, y) = (random_triangle(&mut rng, 1.0), random_triangle(&mut rng, 1.0));
        let g = geodesic(&x, &y);
        let seq: Vec<TrianglePoint> = (1..=SEQUENCE_LENGTH).map(|k| g.at(1.0 - 0.5f64.powi(k))).collect();
        // A random walk with summable steps: the limit is estimated from a
        // much later term.
        let mut walk = vec![random_triangle(&mut rng, 1.0)];
        for k in 1..=2 * SEQUENCE_LENGTH {
            let prev = walk.last().unwrap().as_array();
            let step: [f64; 3] = std::array::from_fn(|i| prev[i] * (0.5f64.powi(k) * rng.gen_range(-1.0..1.0)).exp());
            walk.push(TrianglePoint::normalized(TriCoords::from_array(step)?));
        }
        let walk_limit = *walk.last().unwrap();
        walk.truncate(SEQUENCE_LENGTH as usize);

        for (kind, seq, limit) in [("geodesic", seq, y), ("random-walk", walk, walk_limit)] {
            let diag = cauchy_diagnose(&Eta, &seq, seq.len())?;
            for (k, p) in seq.iter().enumerate() {
                let err = coord_error(p, &limit);
                table.push_labelled(
                    vec![kind.into()],
                    vec![j as f64, (k + 1) as f64, diag.forward_defect[k], err],
                );
            }
            let last = seq.last().unwrap();
            worst_err = worst_err.max(coord_error(last, &limit));
            worst_area = worst_area.max((last.coords().area() - 1.0).abs());
            worst_defect = worst_defect.max(diag.forward_defect[seq.len() - 2]);
        }
    }

    let mut rep = ExperimentReport::new(ExperimentName::CompletenessT1, s, table);
    rep.param("pairs", json!(pairs));
    rep.param("sequences", json!(sequences));
    rep.param("sequence_length", json!(SEQUENCE_LENGTH));
    rep.stat("isometry_mismatches", mismatches as f64);
    rep.stat("max_tail_coordinate_error", worst_err);
    rep.stat("max_tail_forward_defect", worst_defect);
    rep.verdicts = vec![
        Verdict::at_most("isometry identity mismatches", mismatches as f64, 0.0),
        Verdict::at_most("tail coordinate error against the limit", worst_err, 1e-8),
        Verdict::at_most("limit has unit area", worst_area, 1e-12),
        Verdict::at_least("pairs checked", pairs as f64, 1.0),
    ];
    Ok(rep)
}

fn coord_error(p: &TrianglePoint, q: &TrianglePoint) -> f64 {
    p.as_array()
        .iter()
        .zip(q.as_array())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
