use proptest::prelude::*;
use stretched_eigenbasis::quadrature::gauss_legendre;
use stretched_eigenbasis::{Basis, EvalMode, Evaluation, Rect};

fn basis_2d(lx: f64, ly: f64, delta: f64, n: usize) -> Basis {
    Basis::new(Rect::with_uniform_stretch(vec![lx, ly], delta).unwrap(), n).unwrap()
}

#[test]
fn modes_are_orthonormal_on_the_extended_box() {
    let basis = basis_2d(1.0, 2.0, 0.5, 5);
    let (nodes, weights) = gauss_legendre::<f64>(64);
    let rect = basis.rect();
    let map = |axis: usize, s: f64| {
        let a = -rect.stretch()[axis];
        let ell = rect.extended_length(axis);
        (a + ell * (s + 1.0) / 2.0, ell / 2.0)
    };
    // tensor quadrature tables once per point
    let mut gram = vec![vec![0.0; basis.len()]; basis.len()];
    for (sx, wx) in nodes.iter().zip(&weights) {
        let (x, jx) = map(0, *sx);
        for (sy, wy) in nodes.iter().zip(&weights) {
            let (y, jy) = map(1, *sy);
            let vals: Vec<f64> = (0..basis.len())
                .map(|i| basis.eval_basis(basis.mode(i), &[x, y]).unwrap())
                .collect();
            let w = wx * wy * jx * jy;
            for i in 0..vals.len() {
                for j in 0..vals.len() {
                    gram[i][j] += w * vals[i] * vals[j];
                }
            }
        }
    }
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((g - want).abs() <= 1e-8, "<w_{i}, w_{j}> = {g}");
        }
    }
}

#[test]
fn modes_vanish_on_the_extended_boundary() {
    let basis = basis_2d(1.3, 0.7, 0.4, 6);
    let r = basis.rect();
    let (x0, x1) = (-r.stretch()[0], r.lengths()[0] + r.stretch()[0]);
    let (y0, y1) = (-r.stretch()[1], r.lengths()[1] + r.stretch()[1]);
    for i in 0..basis.len() {
        for s in 0..=20 {
            let u = s as f64 / 20.0;
            let x = x0 + u * (x1 - x0);
            let y = y0 + u * (y1 - y0);
            for p in [[x, y0], [x, y1], [x0, y], [x1, y]] {
                assert!(basis.eval_basis(basis.mode(i), &p).unwrap().abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn eigenvalues_ascend() {
    let basis = basis_2d(1.0, 1.0, 2.0, 8);
    assert!(basis.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn evaluation_outside_the_extended_box_is_an_error() {
    let basis = basis_2d(1.0, 1.0, 0.5, 3);
    assert!(basis.eval_basis(&[1, 1], &[1.6, 0.0]).is_err());
    assert!(basis.expansion_value(&vec![0.0; 9], &[0.0, -0.6]).is_err());
}

#[test]
fn expansion_of_a_unit_vector_is_that_mode() {
    let basis = basis_2d(1.0, 2.0, 1.0, 4);
    let x = [0.3, 1.1];
    for i in 0..basis.len() {
        let mut c = vec![0.0; basis.len()];
        c[i] = 1.0;
        let v = basis.expansion_value(&c, &x).unwrap();
        assert!((v - basis.eval_basis(basis.mode(i), &x).unwrap()).abs() < 1e-15);
        let lap = basis.eval_expansion(&c, &x, EvalMode::Laplacian).unwrap();
        assert!(matches!(lap, Evaluation::Laplacian(_)));
        let lap = lap.scalar().unwrap();
        assert!((lap + basis.eigenvalue_at(i) * v).abs() < 1e-12 * basis.eigenvalue_at(i).max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn partials_match_central_differences(
        j1 in 1usize..=6, j2 in 1usize..=6, axis in 0usize..2,
        u in 0.05f64..0.95, v in 0.05f64..0.95,
    ) {
        let basis = basis_2d(1.0, 1.5, 0.5, 6);
        let r = basis.rect();
        let x = [-0.5 + u * r.extended_length(0), -0.5 + v * r.extended_length(1)];
        let h = 1e-5;
        let mut xp = x;
        let mut xm = x;
        xp[axis] += h;
        xm[axis] -= h;
        let j = [j1, j2];
        let fd = (basis.eval_basis(&j, &xp).unwrap() - basis.eval_basis(&j, &xm).unwrap()) / (2.0 * h);
        let exact = basis.eval_basis_partial(&j, &x, axis).unwrap();
        let scale = exact.abs().max(1.0);
        prop_assert!((fd - exact).abs() <= 1e-6 * scale, "fd {} vs {}", fd, exact);
    }

    #[test]
    fn laplacian_matches_second_differences(j1 in 1usize..=5, j2 in 1usize..=5, u in 0.05f64..0.95, v in 0.05f64..0.95) {
        let basis = basis_2d(1.0, 1.0, 0.25, 5);
        let ell = basis.rect().extended_length(0);
        let x = [-0.25 + u * ell, -0.25 + v * ell];
        let h = 1e-4;
        let j = [j1, j2];
        let w = |p: [f64; 2]| basis.eval_basis(&j, &p).unwrap();
        let fd = (w([x[0] + h, x[1]]) + w([x[0] - h, x[1]]) + w([x[0], x[1] + h]) + w([x[0], x[1] - h])
            - 4.0 * w(x)) / (h * h);
        let exact = basis.eval_basis_laplacian(&j, &x).unwrap();
        prop_assert!((fd - exact).abs() <= 1e-4 * basis.eigenvalue(&j).unwrap());
        // the two code paths for Δw agree exactly
        prop_assert_eq!(exact, -basis.eigenvalue(&j).unwrap() * w(x));
    }
}
