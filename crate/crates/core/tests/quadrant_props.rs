use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trimetric_core::quadrant::{eta_star, finsler_star, g_partials, g_third_coordinate, unit_ball, verify_quadrant_geodesic};
use trimetric_core::triangle::heron_area;
use trimetric_core::triangle_space::{eta, geodesic, TrianglePoint};
use trimetric_core::QuadrantPoint;

fn grid() -> impl Iterator<Item = QuadrantPoint> {
    (0..20).flat_map(|i| {
        (0..20).map(move |j| {
            let a1 = 10f64.powf(-1.5 + 3.0 * i as f64 / 19.0);
            let a2 = 10f64.powf(-1.5 + 3.0 * j as f64 / 19.0);
            QuadrantPoint::new(a1, a2).unwrap()
        })
    })
}

#[test]
fn third_coordinate_closes_unit_area() {
    for p in grid() {
        assert!((heron_area(&p.lift()) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn partials_match_central_differences() {
    for p in grid() {
        let (d1, d2) = g_partials(&p);
        let h1 = 1e-6 * p.a1();
        let h2 = 1e-6 * p.a2();
        let g = |a: f64, b: f64| g_third_coordinate(&QuadrantPoint::new(a, b).unwrap());
        let c1 = (g(p.a1() + h1, p.a2()) - g(p.a1() - h1, p.a2())) / (2.0 * h1);
        let c2 = (g(p.a1(), p.a2() + h2) - g(p.a1(), p.a2() - h2)) / (2.0 * h2);
        assert!((d1 - c1).abs() <= 1e-6 * c1.abs(), "{d1} {c1}");
        assert!((d2 - c2).abs() <= 1e-6 * c2.abs(), "{d2} {c2}");
    }
}

#[test]
fn partials_at_one_one() {
    let (d1, d2) = g_partials(&QuadrantPoint::new(1.0, 1.0).unwrap());
    assert!((d1 + 0.5).abs() < 1e-15 && (d2 + 0.5).abs() < 1e-15);
}

#[test]
fn unit_ball_vertices_and_interior() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for p in grid().step_by(7) {
        let ball = unit_ball(&p);
        for (x, y) in ball.vertices() {
            assert!((finsler_star(&p, x, y) - 1.0).abs() <= 1e-10);
        }
        for _ in 0..20 {
            let w: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.01..1.0));
            let s: f64 = w.iter().sum();
            let (x, y) = ball.combination(w.map(|v| v / s));
            assert!(finsler_star(&p, x, y) < 1.0);
        }
    }
}

#[test]
fn chart_is_an_isometry_of_eta() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let x = TrianglePoint::from_coords(rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0)).unwrap();
        let y = TrianglePoint::from_coords(rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0)).unwrap();
        let (p, q) = (QuadrantPoint::from_triangle(&x), QuadrantPoint::from_triangle(&y));
        assert!((eta_star(&p, &q) - eta(&x.coords(), &y.coords())).abs() < 1e-12);
        let g = geodesic(&x, &y);
        let samples: Vec<(f64, QuadrantPoint)> = (0..10)
            .map(|k| {
                let t = k as f64 / 9.0;
                (t, QuadrantPoint::from_triangle(&g.at(t)))
            })
            .collect();
        assert!(verify_quadrant_geodesic(&samples).unwrap().is_geodesic);
    }
}
