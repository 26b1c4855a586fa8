use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trimetric_core::paths::MinimizeOptions;
use trimetric_core::polygon::{chart_coords, enumerate_triangulations, shape_from_chart, Aggregate};
use trimetric_core::sample::random_convex_polygon;
use trimetric_core::surface::eta_t;
use trimetric_core::triangle_space::{eta_points, finsler_norm, TangentVector};
use trimetric_core::{Error, PolygonShape, PolygonSpace, ShapeTangent, SurfacePoint, TrianglePoint};

fn crossing(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

// Counts (n - 3)-subsets of diagonals with no crossing pair.
fn brute_force_count(n: usize) -> usize {
    let diags: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 2..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !(a == 0 && b == n - 1))
        .collect();
    let mut count = 0;
    for mask in 0u32..(1 << diags.len()) {
        if mask.count_ones() as usize != n - 3 {
            continue;
        }
        let chosen: Vec<_> = (0..diags.len()).filter(|i| mask >> i & 1 == 1).map(|i| diags[i]).collect();
        if chosen.iter().enumerate().all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !crossing(a, b))) {
            count += 1;
        }
    }
    count
}

fn max_vertex_error(a: &PolygonShape, b: &PolygonShape) -> f64 {
    a.vertices()
        .iter()
        .zip(b.vertices())
        .map(|(p, q)| (p[0] - q[0]).hypot(p[1] - q[1]))
        .fold(0.0, f64::max)
}

#[test]
fn catalan_counts_match_brute_force() {
    for n in 3..=8 {
        assert_eq!(enumerate_triangulations(n).unwrap().len(), brute_force_count(n), "n = {n}");
    }
}

#[test]
fn triangulations_are_distinct_and_valid() {
    let ts = enumerate_triangulations(7).unwrap();
    for (i, a) in ts.iter().enumerate() {
        assert_eq!(a.diagonals().len(), 4);
        assert_eq!(a.faces().len(), 5);
        for b in &ts[i + 1..] {
            assert_ne!(a.diagonals(), b.diagonals());
        }
    }
}

#[test]
fn square_chart_values() {
    let sq = PolygonShape::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
    for tri in enumerate_triangulations(4).unwrap() {
        let p = chart_coords(&sq, &tri).unwrap();
        let l = p.edge_lengths();
        for e in &l[..4] {
            assert!((e - 1.0).abs() < 1e-15);
        }
        assert!((l[4] - 2f64.sqrt()).abs() < 1e-15);
        let back = shape_from_chart(&p, &tri).unwrap();
        assert!(max_vertex_error(&back, &sq) < 1e-15);
    }
}

#[test]
fn regular_pentagon_fan_diagonals_are_equal() {
    let pent = PolygonShape::regular(5).unwrap();
    let fan = enumerate_triangulations(5)
        .unwrap()
        .into_iter()
        .find(|t| t.diagonals() == [(0, 2), (0, 3)])
        .unwrap();
    let l = chart_coords(&pent, &fan).unwrap().edge_lengths();
    assert!((l[5] - l[6]).abs() < 1e-14);
    // Side s and diagonal d of a unit-area regular pentagon: d / s is the golden ratio.
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((l[5] / l[0] - phi).abs() < 1e-14);
}

#[test]
fn reflex_chart_point_is_rejected() {
    let tri = enumerate_triangulations(4)
        .unwrap()
        .into_iter()
        .find(|t| t.diagonals() == [(1, 3)])
        .unwrap();
    // Reflex vertex 3 at an end of the interior diagonal 1-3.
    let v = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [1.2, 0.5f64]];
    let d = |i: usize, j: usize| (v[i][0] - v[j][0]).hypot(v[i][1] - v[j][1]);
    let lengths = vec![d(0, 1), d(1, 2), d(2, 3), d(3, 0), d(1, 3)];
    let p = SurfacePoint::from_edge_lengths(tri.surface().clone(), &lengths).unwrap().normalize_unit_area().0;
    assert!(matches!(shape_from_chart(&p, &tri), Err(Error::NotConvex { vertex: 3, .. })));
}

#[test]
fn round_trips_and_chart_coherence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [4, 5, 6, 7] {
        let ts = enumerate_triangulations(n).unwrap();
        for _ in 0..20 {
            let x = random_convex_polygon(&mut rng, n).unwrap();
            for t in &ts {
                let back = shape_from_chart(&chart_coords(&x, t).unwrap(), t).unwrap();
                assert!(max_vertex_error(&back, &x) <= 1e-10);
            }
        }
    }
}

#[test]
fn rectangle_versus_square() {
    let space = PolygonSpace::new(4).unwrap();
    let sq = PolygonShape::regular(4).unwrap();
    let rect = PolygonShape::new(vec![[0.0, 0.0], [2.0, 0.0], [2.0, 0.5], [0.0, 0.5]]).unwrap();
    // Brute force over both diagonals, slots straight from vertex distances.
    let slot_ratio = |faces: [[usize; 3]; 2]| {
        let mut best = f64::NEG_INFINITY;
        for f in faces {
            let slots = |x: &PolygonShape| {
                let v = x.vertices();
                let d = |i: usize, j: usize| (v[i][0] - v[j][0]).hypot(v[i][1] - v[j][1]);
                let l = [d(f[1], f[2]), d(f[0], f[2]), d(f[0], f[1])];
                [(l[1] + l[2] - l[0]) / 2.0, (l[0] + l[2] - l[1]) / 2.0, (l[0] + l[1] - l[2]) / 2.0]
            };
            let (a, b) = (slots(&sq), slots(&rect));
            for i in 0..3 {
                best = best.max((b[i] / a[i]).ln());
            }
        }
        best
    };
    let oracle = [slot_ratio([[0, 1, 3], [1, 2, 3]]), slot_ratio([[0, 1, 2], [0, 2, 3]])];
    let mut d = space.chart_distances(&sq, &rect).unwrap();
    d.sort_by(f64::total_cmp);
    let mut o = oracle;
    o.sort_by(f64::total_cmp);
    assert!((d[0] - o[0]).abs() < 1e-14 && (d[1] - o[1]).abs() < 1e-14);
    assert!((space.eta_sup(&sq, &rect).unwrap() - o[1]).abs() < 1e-14);
    assert!(space.eta_avg(&sq, &rect).unwrap() <= space.eta_sup(&sq, &rect).unwrap());
}

#[test]
fn weak_metric_axioms_on_pentagons() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let space = PolygonSpace::new(5).unwrap();
    for _ in 0..50 {
        let x = random_convex_polygon(&mut rng, 5).unwrap();
        let y = random_convex_polygon(&mut rng, 5).unwrap();
        let z = random_convex_polygon(&mut rng, 5).unwrap();
        for how in [Aggregate::Sup, Aggregate::Avg] {
            let (xy, yz, xz) = (
                space.eta(&x, &y, how).unwrap(),
                space.eta(&y, &z, how).unwrap(),
                space.eta(&x, &z, how).unwrap(),
            );
            assert!(xz <= xy + yz + 1e-10);
            assert!(xy > 0.0);
            assert_eq!(space.eta(&x, &x, how).unwrap(), 0.0);
        }
    }
}

#[test]
fn finsler_norms_on_random_variations() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let space = PolygonSpace::new(6).unwrap();
    for _ in 0..50 {
        let x = random_convex_polygon(&mut rng, 6).unwrap();
        let raw: Vec<[f64; 2]> = (0..6).map(|k| [((k * 7 % 5) as f64 - 2.0) * 0.1, ((k * 3 % 4) as f64 - 1.5) * 0.1]).collect();
        // Remove the area change with a dilation about the origin.
        let p = x.vertices();
        let da: f64 = 0.5 * (0..6).map(|i| {
            let j = (i + 1) % 6;
            raw[i][0] * p[j][1] + p[i][0] * raw[j][1] - raw[j][0] * p[i][1] - p[j][0] * raw[i][1]
        }).sum::<f64>();
        let v: Vec<[f64; 2]> = raw.iter().zip(p).map(|(r, q)| [r[0] - da / 2.0 * q[0], r[1] - da / 2.0 * q[1]]).collect();
        let neg: Vec<[f64; 2]> = v.iter().map(|w| [-w[0], -w[1]]).collect();
        let t = ShapeTangent::new(x.clone(), v).unwrap();
        let tn = ShapeTangent::new(x, neg).unwrap();
        let (fm, fa) = (space.finsler_sup(&t).unwrap(), space.finsler_avg(&t).unwrap());
        assert!(fa <= fm + 1e-15);
        assert!(fm > 0.0 && space.finsler_sup(&tn).unwrap() > 0.0);
        assert!(fa > 0.0);
    }
}

#[test]
fn dilation_is_not_tangent() {
    let x = PolygonShape::regular(5).unwrap();
    let v: Vec<[f64; 2]> = x.vertices().to_vec();
    assert!(ShapeTangent::new(x, v).is_err());
}

#[test]
fn triangles_reduce_to_triangle_space() {
    let space = PolygonSpace::new(3).unwrap();
    let x = PolygonShape::new(vec![[0.0, 0.0], [1.0, 0.0], [0.3, 0.8]]).unwrap();
    let y = PolygonShape::new(vec![[0.0, 0.0], [1.0, 0.0], [0.9, 1.6]]).unwrap();
    let tri = &space.triangulations()[0];
    let (px, py) = (chart_coords(&x, tri).unwrap(), chart_coords(&y, tri).unwrap());
    let (tx, ty) = (
        TrianglePoint::new(px.face_coords(0)).unwrap(),
        TrianglePoint::new(py.face_coords(0)).unwrap(),
    );
    assert_eq!(space.eta_sup(&x, &y).unwrap(), eta_points(&tx, &ty));
    assert_eq!(space.eta_avg(&x, &y).unwrap(), eta_t(&px, &py).unwrap());

    // A rotation-free variation that keeps the area: push vertex 2 along the base.
    let t = ShapeTangent::new(x.clone(), vec![[0.0, 0.0], [0.0, 0.0], [0.1, 0.0]]).unwrap();
    let dl = |a: [f64; 2], b: [f64; 2], va: [f64; 2], vb: [f64; 2]| {
        let d = [a[0] - b[0], a[1] - b[1]];
        (d[0] * (va[0] - vb[0]) + d[1] * (va[1] - vb[1])) / d[0].hypot(d[1])
    };
    let p = x.vertices();
    let z = [0.0, 0.0];
    let w = [0.1, 0.0];
    // Face edges are opposite vertices 0, 1, 2: sides 1-2, 0-2, 0-1.
    let dls = [dl(p[1], p[2], z, w), dl(p[0], p[2], z, w), 0.0];
    let dv = [
        (dls[1] + dls[2] - dls[0]) / 2.0,
        (dls[0] + dls[2] - dls[1]) / 2.0,
        (dls[0] + dls[1] - dls[2]) / 2.0,
    ];
    let tv = TangentVector::new(tx, dv).unwrap();
    assert!((space.finsler_sup(&t).unwrap() - finsler_norm(&tv)).abs() < 1e-15);

    let opts = MinimizeOptions { waypoints: 5, ..MinimizeOptions::default() };
    let up = space.path_metric_upper(&x, &y, Aggregate::Sup, &opts).unwrap();
    assert!((up.length - eta_points(&tx, &ty)).abs() < 1e-4, "{} {}", up.length, eta_points(&tx, &ty));
}

#[test]
fn path_upper_bound_dominates_chart_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let space = PolygonSpace::new(5).unwrap();
    let opts = MinimizeOptions { waypoints: 4, max_sweeps: 3, ..MinimizeOptions::default() };
    for _ in 0..3 {
        let x = random_convex_polygon(&mut rng, 5).unwrap();
        let y = random_convex_polygon(&mut rng, 5).unwrap();
        for how in [Aggregate::Sup, Aggregate::Avg] {
            let lower = space.eta(&x, &y, how).unwrap();
            let up = space.path_metric_upper(&x, &y, how, &opts).unwrap();
            assert!(lower <= up.length + 1e-6, "{lower} {}", up.length);
        }
    }
    let x = random_convex_polygon(&mut rng, 5).unwrap();
    assert!(space.path_metric_upper(&x, &x, Aggregate::Sup, &opts).unwrap().length < 1e-10);
}
