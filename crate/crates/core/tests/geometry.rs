use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stretched_eigenbasis::problems::curves::{circle, ellipse, polar, star_radius};
use stretched_eigenbasis::{Curve, Grid, PointTag, Rect};

fn builtin_curves() -> Vec<Curve> {
    vec![
        circle([1.2, 1.2], 0.9).unwrap(),
        ellipse([1.2, 1.2], 0.9, 0.6).unwrap(),
        polar("star", [1.2, 1.2], star_radius::<f64>).unwrap(),
    ]
}

#[test]
fn winding_classification_agrees_with_the_implicit_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for curve in builtin_curves() {
        let f = curve.implicit().unwrap().clone();
        let mut checked = 0;
        while checked < 1000 {
            let p = [rng.gen_range(0.0..2.4), rng.gen_range(0.0..2.4)];
            // the dense polyline is a chord approximation; skip the sliver it misses
            if f(p).abs() < 1e-6 {
                continue;
            }
            assert_eq!(curve.contains(p), f(p) < 0.0, "{} at {p:?}", curve.name());
            checked += 1;
        }
    }
}

#[test]
fn classification_examples() {
    let rect = Rect::with_uniform_stretch(vec![2.0, 2.0], 0.5).unwrap();
    // a disk of radius 0.9 about the box centre, lattice of 41 points
    let disk = circle([1.0, 1.0], 0.9).unwrap();
    let grid = Grid::uniform(&rect, 41).unwrap().classify(&disk).unwrap();
    let tag_at = |x: f64, y: f64| {
        grid.points()
            .iter()
            .find(|p| (p.coords[0] - x).abs() < 1e-12 && (p.coords[1] - y).abs() < 1e-12)
            .unwrap()
            .tag
    };
    assert_eq!(tag_at(1.0, 1.0), PointTag::Interior);
    assert_eq!(tag_at(1.95, 1.0), PointTag::Exterior);
    // box-edge points of a curved domain lie outside Ω
    assert_eq!(tag_at(0.0, 0.5), PointTag::Exterior);

    let star = polar("star", [1.2, 1.2], star_radius::<f64>).unwrap();
    assert!(!star.contains([1.2 + 0.85, 1.2]));
}

#[test]
fn unit_circle_relocation_on_a_coarse_grid() {
    let rect = Rect::with_uniform_stretch(vec![2.4, 2.4], 1.0).unwrap();
    let c = circle([1.2, 1.2], 1.0).unwrap();
    let grid = Grid::uniform(&rect, 11).unwrap();
    let before = grid.len();
    let grid = grid.classify(&c).unwrap().relocate(&c, None).unwrap();
    assert_eq!(grid.len(), before);
    let h = grid.h();
    let moved: Vec<_> = grid.points().iter().filter(|p| p.tag == PointTag::Relocated).collect();
    assert!(!moved.is_empty());
    for p in moved {
        let r = (p.coords[0] - 1.2).hypot(p.coords[1] - 1.2);
        assert!((r - 1.0).abs() <= 1e-12, "{p:?}");
        let d = (p.coords[0] - p.origin[0]).hypot(p.coords[1] - p.origin[1]);
        assert!(d <= h / 2.0 + 1e-12);
    }
}

#[test]
fn curve_through_a_lattice_point_moves_it_nowhere() {
    // lattice spacing 0.2, so (1.2, 1.6) is a lattice point on the circle of radius 0.4
    let rect = Rect::with_uniform_stretch(vec![2.4, 2.4], 1.0).unwrap();
    let c = circle([1.2, 1.2], 0.4).unwrap();
    let grid = Grid::uniform(&rect, 13).unwrap().classify(&c).unwrap().relocate(&c, None).unwrap();
    let p = grid
        .points()
        .iter()
        .find(|p| (p.origin[0] - 1.2).abs() < 1e-12 && (p.origin[1] - 1.6).abs() < 1e-12)
        .unwrap();
    assert_eq!(p.tag, PointTag::Relocated);
    assert!((p.coords[0] - p.origin[0]).hypot(p.coords[1] - p.origin[1]) <= 1e-12);
}

#[test]
fn relocated_nodes_stay_separated() {
    let rect = Rect::with_uniform_stretch(vec![2.4, 2.4], 2.0).unwrap();
    for c in builtin_curves() {
        let grid = Grid::uniform(&rect, 35).unwrap().classify(&c).unwrap().relocate(&c, None).unwrap();
        let h = grid.h();
        let pts = grid.points();
        for (i, p) in pts.iter().enumerate() {
            if p.tag != PointTag::Relocated {
                continue;
            }
            for q in &pts[i + 1..] {
                let d = (p.coords[0] - q.coords[0]).hypot(p.coords[1] - q.coords[1]);
                assert!(d >= h / 10.0 - 1e-12, "{} nodes {:?} {:?}", c.name(), p.coords, q.coords);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relocation_invariants_for_random_circles(
        cx in 0.9f64..1.5, cy in 0.9f64..1.5, r in 0.3f64..0.8, n in 8usize..40,
    ) {
        let rect = Rect::with_uniform_stretch(vec![2.4, 2.4], 1.0).unwrap();
        let c = circle([cx, cy], r).unwrap();
        let grid = Grid::uniform(&rect, n).unwrap();
        let count = grid.len();
        let grid = grid.classify(&c).unwrap().relocate(&c, None).unwrap();
        prop_assert_eq!(grid.len(), count);
        let h = grid.h();
        for p in grid.points() {
            prop_assert!(p.tag != PointTag::Candidate);
            if p.tag == PointTag::Relocated {
                let d = (p.coords[0] - p.origin[0]).hypot(p.coords[1] - p.origin[1]);
                prop_assert!(d <= h / 2.0 + 1e-12);
                prop_assert!(c.distance(p.coords) <= 1e-8);
            } else {
                prop_assert_eq!(p.coords, p.origin);
            }
        }
    }
}
