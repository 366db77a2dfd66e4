use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stretched_eigenbasis::problems::curves::fish_implicit;
use stretched_eigenbasis::problems::{catalog, load_user_problem, lookup, ProblemParams, FAMILIES};

/// Fourth-order central differences of `-Δu - u_x - u_y`.
fn lui_operator_fd(u: impl Fn(f64, f64) -> f64, x: f64, y: f64) -> f64 {
    let h = 1e-3;
    let d1 = |f: &dyn Fn(f64) -> f64| (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
    let d2 = |f: &dyn Fn(f64) -> f64| {
        (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h)
    };
    let ux = |s: f64| u(x + s, y);
    let uy = |s: f64| u(x, y + s);
    -d2(&ux) - d2(&uy) - d1(&ux) - d1(&uy)
}

#[test]
fn star_forcing_matches_finite_differences() {
    let star = lookup::<f64>("star_cd", &ProblemParams::default()).unwrap();
    let c = star.info.offset[0];
    let exact = move |x: f64, y: f64| ((x - c).powi(2) + (y - c).powi(2)).sin();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let (x, y) = (rng.gen_range(0.3..2.1), rng.gen_range(0.3..2.1));
        let f = (star.spec.forcing)(&[x, y]);
        let fd = lui_operator_fd(exact, x, y);
        assert!((f - fd).abs() <= 1e-6, "({x}, {y}): {f} vs {fd}");
    }
}

#[test]
fn ellipse_forcing_matches_finite_differences() {
    let p = ProblemParams::default();
    let e = lookup::<f64>("ellipse_cd", &p).unwrap();
    let c = e.info.offset[0];
    let (a, b) = (p.ellipse_a, p.ellipse_b);
    let exact = move |x: f64, y: f64| {
        let g = ((x - c) / a).powi(2) + ((y - c) / b).powi(2) - 1.0;
        (std::f64::consts::FRAC_PI_2 * g).sin()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let (x, y) = (rng.gen_range(0.3..2.1), rng.gen_range(0.3..2.1));
        let f = (e.spec.forcing)(&[x, y]);
        assert!((f - lui_operator_fd(exact, x, y)).abs() <= 1e-6);
    }
}

#[test]
fn every_family_is_listed_and_consistent() {
    let entries = catalog::<f64>();
    let ids: Vec<&str> = entries.iter().map(|e| e.id()).collect();
    assert_eq!(ids, FAMILIES);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for e in entries.iter().filter(|e| e.analytic.is_some()) {
        assert!(e.info.has_exact);
        for _ in 0..1000 {
            let x = [rng.gen_range(0.0..e.info.lengths[0]), rng.gen_range(0.0..e.info.lengths[1])];
            let r = e.consistency_residual(&x).unwrap();
            assert!(r.abs() <= 1e-8, "{} at {x:?}: {r}", e.id());
        }
    }
    assert!(lookup::<f64>("nope", &ProblemParams::default()).is_err());
}

#[test]
fn curves_are_closed_and_wind_once() {
    for e in catalog::<f64>() {
        let Some(curve) = &e.curve else { continue };
        let (p0, p1) = (curve.point(0.0), curve.point(1.0));
        assert!((p0[0] - p1[0]).hypot(p0[1] - p1[1]) <= 1e-12, "{}", e.id());
        let (lo, hi) = curve.bounding_box();
        assert!(lo[0] > 0.0 && lo[1] > 0.0 && hi[0] < e.info.lengths[0] && hi[1] < e.info.lengths[1]);
        // an interior point of each domain, in box coordinates
        let inside = match e.id() {
            "fish_poisson" => [e.info.offset[0] + 0.8, e.info.offset[1]],
            "disk_poisson" => [std::f64::consts::PI; 2],
            _ => e.info.offset,
        };
        assert_eq!(curve.winding_number(inside), 1, "{}", e.id());
    }
}

#[test]
fn fish_samples_lie_on_the_quartic() {
    let fish = lookup::<f64>("fish_poisson", &ProblemParams::default()).unwrap();
    let o = fish.info.offset;
    for p in fish.curve.unwrap().sample(4096).unwrap() {
        assert!(fish_implicit(p[0] - o[0], p[1] - o[1]).abs() <= 1e-8);
    }
}

#[test]
fn plug_in_values() {
    let disk = lookup::<f64>("disk_poisson", &ProblemParams::default()).unwrap();
    let u = disk.spec.exact.clone().unwrap();
    let pi = std::f64::consts::PI;
    assert_eq!(u(&[pi, pi]), 4.0);
    for k in 0..16 {
        let t = k as f64 * std::f64::consts::TAU / 16.0;
        assert!(u(&[pi + 2.0 * t.cos(), pi + 2.0 * t.sin()]).abs() <= 1e-12);
    }

    let round = lookup::<f64>("ellipse_cd", &ProblemParams { ellipse_b: 0.9, ..ProblemParams::default() }).unwrap();
    let c = round.info.offset[0];
    let ue = round.spec.exact.clone().unwrap();
    assert!(ue(&[c + 0.9, c]).abs() <= 1e-12);

    let chiu = lookup::<f64>("rect_cd_chiu", &ProblemParams::default()).unwrap();
    let k = chiu.spec.velocity.clone().unwrap();
    let [u0, v0] = k(&[0.0, 0.0]);
    assert!((u0 + 1.0).abs() <= 1e-15 && (v0 - 1.0).abs() <= 1e-15);
}

#[test]
fn user_problem_matches_the_equivalent_builtin() {
    let json = r#"{
        "id": "x2y3", "lx": 2, "ly": 2,
        "f": "-(2*y^3 + 6*x^2*y)", "g": "x^2*y^3", "exact": "x^2*y^3"
    }"#;
    let user = load_user_problem::<f64>(json).unwrap();
    let builtin = lookup::<f64>("rect_poisson_x2y3", &ProblemParams::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let x = [rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0)];
        assert!(((user.spec.forcing)(&x) - (builtin.spec.forcing)(&x)).abs() <= 1e-12);
        assert!(((user.spec.boundary)(&x) - (builtin.spec.boundary)(&x)).abs() <= 1e-12);
    }
}
