//! Curve pipeline checks: endpoint interpolation, symmetry, strategy
//! agreement against the de Casteljau baseline, and affine conditioning.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pascal_bezier::curve::{
    affine_forward, affine_inverse, casteljau_point, horner_binomial_eval, ControlPolygon,
    MultiplyMode, TransformedCoefficients,
};
use pascal_bezier::strategy::{
    default_strategy, evaluate_curve, power_of_two_grid, EvalStrategy,
};

fn seeded_polygon(seed: u64, n: usize) -> ControlPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.random::<f64>(), rng.random::<f64>()])
        .collect();
    ControlPolygon::normalize(&pts).unwrap()
}

fn deviation(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(p, q)| [(p[0] - q[0]).abs(), (p[1] - q[1]).abs()])
        .fold(0.0f64, f64::max)
}

#[test]
fn horner_frozen_term_sum_value() {
    // Direct term-by-term oracle: sum C(3,j) u^j c_j for c = (1,2,3,4),
    // u = -1/2 is 1 - 3 + 9/4 - 1/2 = -1/4.
    let direct: f64 = [1.0, 2.0, 3.0, 4.0]
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let binom = [1.0, 3.0, 3.0, 1.0][j];
            binom * (-0.5f64).powi(j as i32) * c
        })
        .sum();
    assert_eq!(direct, -0.25);
    let got = horner_binomial_eval(&[1.0, 2.0, 3.0, 4.0], -0.5);
    assert!((got - direct).abs() <= 1e-15);
}

#[test]
fn transformed_coefficients_modes_agree() {
    for n in 2..=16usize {
        let p = seeded_polygon(n as u64, n);
        let exact = TransformedCoefficients::build(&p, MultiplyMode::ExactBidiagonal).unwrap();
        let fast = TransformedCoefficients::build(&p, MultiplyMode::FastBalanced).unwrap();
        let scale = exact.z().iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        for (a, b) in exact.z().iter().zip(fast.z()) {
            assert!((a - b).abs() <= 1e-9 * scale.max(1.0), "n = {n}");
        }
    }
}

#[test]
fn every_strategy_interpolates_endpoints() {
    let grid = [0.0, 1.0];
    for n in [2usize, 4, 16, 32, 48, 64] {
        let p = seeded_polygon(100 + n as u64, n);
        let z0 = p.original_point(0);
        let zn = p.original_point(n - 1);
        let strategies = [
            EvalStrategy::casteljau(),
            EvalStrategy::pascal_single(),
            EvalStrategy::reverse_split(),
            EvalStrategy::piecewise_affine(vec![32767, 32767]).unwrap(),
        ];
        for strat in &strategies {
            let run = evaluate_curve(&p, strat, &grid, MultiplyMode::ExactBidiagonal).unwrap();
            let pts = &run.samples.points;
            for axis in 0..2 {
                assert!(
                    (pts[0][axis] - z0[axis]).abs() <= 1e-12,
                    "{} n = {n} at s=0",
                    strat.name()
                );
                assert!(
                    (pts[1][axis] - zn[axis]).abs() <= 1e-12,
                    "{} n = {n} at s=1",
                    strat.name()
                );
            }
        }
    }
}

#[test]
fn casteljau_stays_in_bounding_box() {
    let grid = power_of_two_grid(7);
    for n in [3usize, 8, 24, 64] {
        let p = seeded_polygon(500 + n as u64, n);
        let run = evaluate_curve(
            &p,
            &EvalStrategy::casteljau(),
            &grid,
            MultiplyMode::ExactBidiagonal,
        )
        .unwrap();
        let (mut min, mut max) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for i in 0..n {
            let q = p.original_point(i);
            for axis in 0..2 {
                min[axis] = min[axis].min(q[axis]);
                max[axis] = max[axis].max(q[axis]);
            }
        }
        for pt in &run.samples.points {
            for axis in 0..2 {
                assert!(
                    pt[axis] >= min[axis] - 1e-12 && pt[axis] <= max[axis] + 1e-12,
                    "n = {n}"
                );
            }
        }
    }
}

#[test]
fn strategy_deviation_from_baseline_by_degree() {
    // Per-degree agreement bands on the 129-point grid.
    let grid = power_of_two_grid(7);
    let cases: &[(usize, f64)] = &[(4, 1e-12), (8, 1e-11), (16, 1e-8), (32, 1e-5), (48, 1e-4)];
    for &(n, tol) in cases {
        let p = seeded_polygon(900 + n as u64, n);
        let strat = default_strategy(n).unwrap();
        let run = evaluate_curve(&p, &strat, &grid, MultiplyMode::ExactBidiagonal).unwrap();
        let base = evaluate_curve(
            &p,
            &EvalStrategy::casteljau(),
            &grid,
            MultiplyMode::ExactBidiagonal,
        )
        .unwrap();
        let dev = deviation(&run.samples.points, &base.samples.points);
        assert!(dev <= tol, "n = {n}: deviation {dev:e} > {tol:e}");
    }
}

#[test]
fn reverse_symmetry_on_the_grid() {
    // B(s) = B_r(1-s): evaluating the reversed polygon on the mirrored grid
    // reproduces the curve within the strategy's band.
    let grid = power_of_two_grid(7);
    let mirrored: Vec<f64> = grid.iter().rev().map(|s| 1.0 - s).collect();
    for (n, tol) in [(8usize, 1e-11), (16, 1e-8), (32, 1e-5)] {
        let p = seeded_polygon(1300 + n as u64, n);
        let strat = default_strategy(n).unwrap();
        let run = evaluate_curve(&p, &strat, &grid, MultiplyMode::ExactBidiagonal).unwrap();
        let rev = evaluate_curve(&p.reverse(), &strat, &mirrored, MultiplyMode::ExactBidiagonal)
            .unwrap();
        let mut rev_points = rev.samples.points.clone();
        rev_points.reverse();
        let dev = deviation(&run.samples.points, &rev_points);
        assert!(dev <= tol, "n = {n}: {dev:e}");
    }
}

#[test]
fn affine_conditioning_agrees_with_single_at_small_orders() {
    let grid = power_of_two_grid(7);
    for n in 4..=12usize {
        let p = seeded_polygon(1700 + n as u64, n);
        let single = evaluate_curve(
            &p,
            &EvalStrategy::pascal_single(),
            &grid,
            MultiplyMode::ExactBidiagonal,
        )
        .unwrap();
        let affine = evaluate_curve(
            &p,
            &EvalStrategy::piecewise_affine(vec![32767, 32767]).unwrap(),
            &grid,
            MultiplyMode::ExactBidiagonal,
        )
        .unwrap();
        let dev = deviation(&single.samples.points, &affine.samples.points);
        assert!(dev <= 1e-9, "n = {n}: {dev:e}");
    }
}

#[test]
fn degenerate_polygon_is_constant() {
    let p = ControlPolygon::normalize(&[[2.5, -1.0]; 6]).unwrap();
    let grid = power_of_two_grid(4);
    for strat in [
        EvalStrategy::casteljau(),
        EvalStrategy::pascal_single(),
        EvalStrategy::reverse_split(),
        EvalStrategy::piecewise_affine(vec![3]).unwrap(),
    ] {
        let run = evaluate_curve(&p, &strat, &grid, MultiplyMode::ExactBidiagonal).unwrap();
        for pt in &run.samples.points {
            assert!((pt[0] - 2.5).abs() <= 1e-12 && (pt[1] + 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn pascal_point_cost_is_linear_after_build() {
    use pascal_bezier::ops::OpCount;
    for n in [8usize, 32, 64] {
        let p = seeded_polygon(2100 + n as u64, n);
        let tc = TransformedCoefficients::build(&p, MultiplyMode::ExactBidiagonal).unwrap();
        let mut ops = OpCount::default();
        let _ = pascal_bezier::curve::pascal_point_counted(&tc, 0.5, &mut ops).unwrap();
        // Two coordinates: n-1 adds and 2(n-1) muls each, ratios cached.
        assert_eq!(ops.adds, 2 * (n as u64 - 1));
        assert_eq!(ops.muls, 4 * (n as u64 - 1));
        assert_eq!(ops.divs, 0);
    }
}

proptest! {
    #[test]
    fn normalize_round_trips_original_coordinates(
        pts in proptest::collection::vec(
            (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(x, y)| [x, y]),
            2..=20,
        ),
    ) {
        let p = ControlPolygon::normalize(&pts).unwrap();
        for (i, q) in pts.iter().enumerate() {
            let back = p.original_point(i);
            let scale = p.frame().scale;
            for axis in 0..2 {
                prop_assert!(p.xs().iter().chain(p.ys()).all(|&c| (0.0..=1.0).contains(&c)));
                prop_assert!(
                    (back[axis] - q[axis]).abs() <= 2.0 * f64::EPSILON * scale.max(q[axis].abs()),
                );
            }
        }
    }

    #[test]
    fn affine_round_trip_within_scaled_ulp(
        v in proptest::collection::vec(0.0f64..=1.0, 1..=16),
        m in 1u64..=32767,
    ) {
        let fwd = affine_forward(&v, m).unwrap();
        for (x, f) in v.iter().zip(&fwd) {
            let back = affine_inverse(*f, m);
            prop_assert!((back - x).abs() <= (m + 1) as f64 * f64::EPSILON);
        }
    }

    #[test]
    fn casteljau_linear_blend(s in 0.0f64..=1.0) {
        let p = ControlPolygon::normalize(&[[0.0, 1.0], [3.0, 5.0]]).unwrap();
        let pt = casteljau_point(&p, s).unwrap();
        prop_assert!((pt[0] - 3.0 * s).abs() <= 1e-14 * 3.0);
        prop_assert!((pt[1] - (1.0 + 4.0 * s)).abs() <= 1e-14 * 5.0);
    }
}
