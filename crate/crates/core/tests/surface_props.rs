use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trimetric_core::paths::{path_length, ParamPath};
use trimetric_core::sample::random_surface_point;
use trimetric_core::surface::{
    eta_t, eta_t_family_arith, example_incomplete_sequence, finsler_t, finsler_t_family, geodesic_t,
    log_linear_path_t, log_sup_distance_t, surface_area, verify_geodesic_t, EtaT, SurfaceSpace,
};
use trimetric_core::triangle_space::{finsler_norm, TangentVector};
use trimetric_core::weak_metric::{cauchy_diagnose, convergence_symmetry_probe, ProbeThresholds};
use trimetric_core::{SurfacePoint, SurfaceTangent, TrianglePoint, Triangulation};

fn complexes() -> Vec<Arc<Triangulation>> {
    vec![
        Arc::new(Triangulation::two_face_disc()),
        Arc::new(Triangulation::tetrahedron()),
    ]
}

// Independent recomputation of the gluing residual from edge incidences.
fn gluing_residual(p: &SurfacePoint) -> f64 {
    let tri = p.triangulation();
    let mut seen: Vec<Vec<f64>> = vec![Vec::new(); tri.edge_count()];
    for (face, slots) in tri.faces().iter().zip(p.slots()) {
        for s in 0..3 {
            seen[face[s]].push(slots[(s + 1) % 3] + slots[(s + 2) % 3]);
        }
    }
    seen.iter()
        .filter(|v| v.len() == 2)
        .map(|v| (v[0] - v[1]).abs() / v[0].max(v[1]))
        .fold(0.0, f64::max)
}

#[test]
fn geodesics_keep_gluing_and_are_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for tri in complexes() {
        for _ in 0..25 {
            let p = random_surface_point(&mut rng, &tri, 0.4);
            let q = random_surface_point(&mut rng, &tri, 0.4);
            let g = geodesic_t(&p, &q).unwrap();
            let pts: Vec<SurfacePoint> = (0..20).map(|k| g.at(k as f64 / 19.0)).collect();
            for x in &pts {
                assert!(gluing_residual(x) <= 1e-12);
                assert!((surface_area(x) - 1.0).abs() < 1e-12);
            }
            for i in 0..20 {
                for j in i..20 {
                    for k in j..20 {
                        let f = eta_t(&pts[i], &pts[j]).unwrap() + eta_t(&pts[j], &pts[k]).unwrap()
                            - eta_t(&pts[i], &pts[k]).unwrap();
                        let b = eta_t(&pts[k], &pts[j]).unwrap() + eta_t(&pts[j], &pts[i]).unwrap()
                            - eta_t(&pts[k], &pts[i]).unwrap();
                        assert!(f.abs() <= 1e-9 && b.abs() <= 1e-9);
                    }
                }
            }
            let samples: Vec<(f64, SurfacePoint)> = (0..20).map(|k| (k as f64 / 19.0, g.unnormalized(k as f64 / 19.0))).collect();
            assert!(verify_geodesic_t(&samples).unwrap().is_geodesic);
        }
    }
}

#[test]
fn log_linear_interpolation_leaves_the_gluing_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tri = Arc::new(Triangulation::two_face_disc());
    let p = random_surface_point(&mut rng, &tri, 0.4);
    let q = random_surface_point(&mut rng, &tri, 0.4);
    let path = log_linear_path_t(&p, &q).unwrap();
    let sample = path.projected(0.5).unwrap();
    assert!(sample.residual > 1e-9, "{}", sample.residual);
    assert!(path.at(0.5).is_err());
    assert!(gluing_residual(&sample.point) < 1e-14);
}

#[test]
fn weak_metric_axioms_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tri = Arc::new(Triangulation::tetrahedron());
    for _ in 0..200 {
        let p = random_surface_point(&mut rng, &tri, 0.3);
        let q = random_surface_point(&mut rng, &tri, 0.3);
        let r = random_surface_point(&mut rng, &tri, 0.3);
        let (pq, qr, pr) = (eta_t(&p, &q).unwrap(), eta_t(&q, &r).unwrap(), eta_t(&p, &r).unwrap());
        assert!(pq > 0.0 && eta_t(&q, &p).unwrap() > 0.0);
        assert!(pr <= pq + qr + 1e-12);
        assert_eq!(eta_t(&p, &p).unwrap(), 0.0);
        let dmax = pq.max(eta_t(&q, &p).unwrap());
        assert_eq!(dmax, log_sup_distance_t(&p, &q).unwrap());
        let t = 0.3;
        assert!((t * log_sup_distance_t(&p, &q).unwrap() - t * dmax).abs() == 0.0);
        assert!(eta_t_family_arith(0.5, &p, &q).unwrap() >= 0.0);
    }
}

#[test]
fn geodesic_length_matches_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for tri in complexes() {
        let space = SurfaceSpace::new(tri.clone());
        for _ in 0..5 {
            let p = random_surface_point(&mut rng, &tri, 0.3);
            let q = random_surface_point(&mut rng, &tri, 0.3);
            let g = geodesic_t(&p, &q).unwrap();
            let len = path_length(&space, &ParamPath::smooth(|t: f64| Ok(g.at(t))), 1e-9).unwrap();
            assert!((len - eta_t(&p, &q).unwrap()).abs() < 1e-6, "{len}");
        }
    }
}

#[test]
fn single_face_norm_reduces_to_triangle_norm() {
    let x = TrianglePoint::from_coords(0.7, 1.1, 0.4).unwrap();
    let v = TangentVector::completing(x, 0.2, -0.1);
    let p = SurfacePoint::new(Arc::new(Triangulation::single_triangle()), vec![x.as_array()]).unwrap();
    let w = SurfaceTangent::new(p, vec![v.components()]).unwrap();
    assert_eq!(finsler_t(&w), finsler_norm(&v));
    assert_eq!(finsler_t_family(1.0, &w).unwrap(), finsler_norm(&v.negated()));
}

#[test]
fn incomplete_example() {
    let c = |k: f64, n: f64| (3f64.sqrt() + k / n).sqrt();
    for n in [1u64, 10, 1000, 10_000, 1_000_000] {
        let (q, qp) = example_incomplete_sequence(n);
        assert!((surface_area(&q) - 1.0).abs() <= 1e-12);
        assert!((surface_area(&qp) - 1.0).abs() <= 1e-12);
        // Edge lengths of the construction, checked against the formulas.
        let l = q.edge_lengths();
        let nf = n as f64;
        let a = (1.0 + 1.0 / (nf * nf)).sqrt();
        assert!((l[0] - a / c(1.0, nf)).abs() < 1e-14);
        assert!((l[2] - 2.0 / c(1.0, nf)).abs() < 1e-14);
    }
    let (q, qp) = example_incomplete_sequence(10_000);
    assert!((eta_t(&q, &qp).unwrap() - 4f64.ln()).abs() <= 5e-4);
    assert!(eta_t(&qp, &q).unwrap() <= 5e-4);
    assert!(q.min_slot() < 1e-7);

    let seq: Vec<SurfacePoint> = (1000..=10_000).step_by(100).map(|n| example_incomplete_sequence(n).0).collect();
    let diag = cauchy_diagnose(&EtaT, &seq, seq.len()).unwrap();
    assert!(diag.forward_defect.windows(2).all(|w| w[1] <= w[0]));
    assert!(diag.numerically_forward_cauchy(1e-3));
    assert!(!diag.numerically_backward_cauchy(1e-3));
}

#[test]
fn convergence_symmetry_fails_on_the_example() {
    let pairs: Vec<(SurfacePoint, SurfacePoint)> = [100u64, 10_000, 1_000_000, 10_000_000]
        .iter()
        .map(|&n| {
            let (q, qp) = example_incomplete_sequence(n);
            (qp, q)
        })
        .collect();
    let report = convergence_symmetry_probe(&EtaT, &pairs, ProbeThresholds::default()).unwrap();
    assert!(report.forward.windows(2).all(|w| w[1] < w[0]));
    assert!(report.violation);
    assert!((report.last_reverse() - 4f64.ln()).abs() < 1e-3);
}

#[test]
fn slotwise_convergence_gives_both_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let tri = Arc::new(Triangulation::tetrahedron());
    let p = random_surface_point(&mut rng, &tri, 0.3);
    let q = random_surface_point(&mut rng, &tri, 0.3);
    let g = geodesic_t(&p, &q).unwrap();
    let mut last = f64::INFINITY;
    for k in 1..8 {
        let pn = g.at(10f64.powi(-k));
        let d = eta_t(&pn, &p).unwrap().max(eta_t(&p, &pn).unwrap());
        assert!(d < last);
        last = d;
    }
    assert!(last < 1e-6);
}
