use std::f64::consts::FRAC_PI_2;

use super::*;

fn v(xs: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(xs)
}

fn ball(center: &[f64], indices: &[usize], r: f64) -> SeminormBall {
    SeminormBall::new(v(center), indices.to_vec(), r).unwrap()
}

/// Brute force: does `eps` work as a Lebesgue number on the grid, using the
/// sup-distance over all coordinates?
fn works(grid: &GridCompact, cover: &[SeminormBall], family: &SeminormFamily, eps: f64) -> bool {
    grid.points().iter().all(|x| {
        cover.iter().any(|u| {
            grid.points()
                .iter()
                .filter(|z| (*z - x).amax() < eps)
                .all(|z| u.contains(family, z))
        })
    })
}

fn quadrant_cover() -> Vec<SeminormBall> {
    let mut out = Vec::new();
    for cx in [0.25, 0.75] {
        for cy in [0.25, 0.75] {
            out.push(ball(&[cx, cy], &[0, 1], 0.35));
        }
    }
    out
}

#[test]
fn lebesgue_one_dimensional() {
    let family = SeminormFamily::coordinates(1);
    let grid = BoxDomain::cube(1, 0.0, 1.0).grid(0.01).unwrap();
    let cover = vec![ball(&[0.25], &[0], 0.35), ball(&[0.75], &[0], 0.35)];
    let data = lebesgue_data(&family, &cover, &grid).unwrap().proved().unwrap().clone();
    assert_eq!(data.indices, vec![0]);
    assert!((data.epsilon - 0.1).abs() < 1e-6, "{}", data.epsilon);
    assert!(works(&grid, &cover, &family, data.epsilon));
    assert!(!works(&grid, &cover, &family, data.epsilon + grid.h()));
    assert!(verify_lebesgue(&family, &cover, &grid, &data, 1));
}

#[test]
fn lebesgue_whole_box() {
    let family = SeminormFamily::coordinates(2);
    let grid = BoxDomain::cube(2, 0.0, 1.0).grid(0.1).unwrap();
    let cover = vec![ball(&[0.5, 0.5], &[0, 1], 1.0)];
    let data = lebesgue_data(&family, &cover, &grid).unwrap().proved().unwrap().clone();
    assert!(data.unbounded);
    assert!((data.epsilon - 1.0).abs() < 1e-9);
}

#[test]
fn lebesgue_quadrants() {
    let family = SeminormFamily::coordinates(2);
    let grid = BoxDomain::cube(2, 0.0, 1.0).grid(0.05).unwrap();
    let cover = quadrant_cover();
    let data = lebesgue_data(&family, &cover, &grid).unwrap().proved().unwrap().clone();
    assert!((data.epsilon - 0.1).abs() < 1e-6, "{}", data.epsilon);
    assert!(works(&grid, &cover, &family, data.epsilon));
    assert!(!works(&grid, &cover, &family, data.epsilon + grid.h()));
}

#[test]
fn lebesgue_errors() {
    let family = SeminormFamily::coordinates(1);
    let grid = BoxDomain::cube(1, 0.0, 1.0).grid(0.1).unwrap();
    assert_eq!(lebesgue_data(&family, &[], &grid), Err(NumericError::EmptyCover));
    let gap = vec![ball(&[0.1], &[0], 0.2)];
    assert!(matches!(
        lebesgue_data(&family, &gap, &grid),
        Err(NumericError::NotCovering(_))
    ));
    assert!(SeminormBall::new(v(&[0.0]), vec![], 1.0).is_err());
    assert!(SeminormBall::new(v(&[0.0]), vec![0], 0.0).is_err());
}

#[test]
fn phi_iteration() {
    let family = SeminormFamily::coordinates(2);
    let domain = BoxDomain::cube(2, -1.0, 1.0);
    let half = NumericMap::scale(2, 0.5);
    let f = |x: &DVector<f64>| half.apply(x);
    let samples = vec![(v(&[1.0, -1.0]), v(&[0.3, 0.2])), (v(&[-0.5, 0.5]), v(&[1.0, 1.0]))];
    let settings = PhiSettings {
        gauge: PhiGauge::Linear(0.5),
        tol: 1e-9,
        maxiter: 60,
    };
    let r = phi_iterate(&f, &family, &domain, &v(&[1.0, 1.0]), &samples, settings).unwrap();
    assert!(r.residual < 1e-9);
    assert!(r.iterations <= 60);
    assert!(r.fixed_point.iter().all(|c| c.abs() < 1e-8));

    let shifted = NumericMap::new(DMatrix::identity(2, 2) * 0.5, v(&[1.0, 0.0])).unwrap();
    assert_eq!(shifted.solve_fixed_point().unwrap(), v(&[2.0, 0.0]));
    let g = |x: &DVector<f64>| shifted.apply(x);
    let r = phi_iterate(
        &g,
        &family,
        &BoxDomain::cube(2, -3.0, 3.0),
        &v(&[0.0, 0.0]),
        &[],
        PhiSettings {
            maxiter: 200,
            ..settings
        },
    )
    .unwrap();
    assert!((r.fixed_point[0] - 2.0).abs() < 1e-8 && r.fixed_point[1].abs() < 1e-8);
    assert!(r.residual < 10.0 * 1e-9);

    let steep = NumericMap::scale(2, 0.9);
    let h = |x: &DVector<f64>| steep.apply(x);
    assert!(matches!(
        phi_iterate(&h, &family, &domain, &v(&[1.0, 1.0]), &samples, settings),
        Err(NumericError::GaugeViolated { .. })
    ));
    assert!(matches!(
        phi_iterate(&h, &family, &domain, &v(&[1.0, 1.0]), &[], settings),
        Err(NumericError::GaugeViolated { .. })
    ));
    let r = phi_iterate(
        &h,
        &family,
        &domain,
        &v(&[1.0, 1.0]),
        &[],
        PhiSettings {
            gauge: PhiGauge::Linear(0.95),
            tol: 1e-9,
            maxiter: 20,
        },
    );
    assert!(matches!(r, Err(NumericError::NotConverged { maxiter: 20, .. })));
}

#[test]
fn gauges() {
    assert!(PhiGauge::Linear(0.5).validate(2.0, 1e-9, 60));
    assert!(!PhiGauge::Linear(1.0).validate(2.0, 1e-9, 60));
    assert!(PhiGauge::Root.validate(1.0, 1e-3, 10_000));
    // t/(1+√t) ≥ t/2 exactly when t ≤ 1
    assert!(PhiGauge::Root.apply(0.81) >= 0.405);
    assert!(PhiGauge::Root.apply(4.0) < 2.0);
    assert!((PhiGauge::Linear(0.5).iterate(1.0, 10) - 2f64.powi(-10)).abs() < 1e-15);
}

#[test]
fn pairwise_convergence() {
    let family = SeminormFamily::coordinates(2);
    let half = NumericMap::scale(2, 0.5);
    let f = |x: &DVector<f64>| half.apply(x);
    let pairs = vec![(v(&[1.0, 1.0]), v(&[-1.0, 0.0]))];
    let r = verify_pairwise_convergence(&f, &pairs, &family, 40, 1e-9, Some((PhiGauge::Linear(0.5), 1e-10)));
    let c = r.proved().expect("halving converges");
    assert!(c.final_gap <= 2.0 * 2f64.powi(-40) + 1e-15);
    assert!(verify_pairwise_convergence(&f, &pairs, &family, 10, 1e-9, None).is_unknown());
    let id = NumericMap::scale(2, 1.0);
    let g = |x: &DVector<f64>| id.apply(x);
    assert!(verify_pairwise_convergence(&g, &pairs, &family, 40, 1e-9, None).is_refuted());
    let rot = NumericMap::rotate_scale(FRAC_PI_2, 0.5);
    let h = |x: &DVector<f64>| rot.apply(x);
    let euclid = SeminormFamily::new(vec![v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])]).unwrap();
    assert!(verify_pairwise_convergence(&h, &pairs, &euclid, 40, 1e-9, None).is_proved());
    // the root gauge on [0, 1]: halving stays under φⁿ
    let small = vec![(v(&[0.5, 0.5]), v(&[0.0, 0.0]))];
    assert!(
        verify_pairwise_convergence(&f, &small, &family, 40, 1e-9, Some((PhiGauge::Root, 1e-10)))
            .is_proved()
    );
}

#[test]
fn polars() {
    let square = polar_ball(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])], 0.1, 2.0).unwrap();
    assert!(square.bounded);
    assert!(square.grid.points().iter().all(|y| y.amax() <= 1.0 + TOL));
    assert_eq!(square.grid.points().len(), 21 * 21);
    let strip = polar_ball(&[v(&[1.0, 1.0])], 0.1, 2.0).unwrap();
    assert!(!strip.bounded);
    let para = polar_ball(&[v(&[1.0, 0.0]), v(&[1.0, 1.0])], 0.1, 3.0).unwrap();
    assert!(para.bounded);
    for y in para.grid.points() {
        assert!(y[0].abs() <= 1.0 + TOL && (y[0] + y[1]).abs() <= 1.0 + TOL);
    }
    assert!(para.grid.points().iter().any(|y| (y[1] - 2.0).abs() < 1e-9));
}

#[test]
fn seminorm_families() {
    assert!(SeminormFamily::coordinates(3).separates_points());
    assert!(!SeminormFamily::new(vec![v(&[1.0, 1.0]), v(&[2.0, 2.0])]).unwrap().separates_points());
    assert!(SeminormFamily::new(vec![v(&[1.0]), v(&[1.0, 0.0])]).is_err());
    assert!(BoxDomain::new(vec![1.0], vec![0.0]).is_err());
}

#[test]
fn monoids() {
    let z4 = FiniteMonoid::cyclic_additive(4);
    let double: Vec<usize> = (0..4).map(|x| 2 * x % 4).collect();
    assert_eq!(monoid_fixed_point(&z4, &double).unwrap(), Verdict::Proved(0));
    assert_eq!(
        monoid_fixed_point(&FiniteMonoid::trivial(), &[0]).unwrap(),
        Verdict::Proved(0)
    );
    let bool_mul = FiniteMonoid::multiplicative(2);
    assert_eq!(
        monoid_fixed_point(&bool_mul, &[0, 1]).unwrap(),
        Verdict::Refuted((0, 1))
    );
    assert!(FiniteMonoid::new(vec![vec![0, 1], vec![1, 1]], 1).is_err());
    assert!(FiniteMonoid::new(vec![vec![0, 0], vec![1, 0]], 0).is_err());
    assert!(FiniteMonoid::new(FiniteMonoid::multiplicative(6).table().to_vec(), 1).is_ok());
    assert_eq!(
        monoid_lebesgue(&z4, &[vec![0, 1], vec![2, 3]]).unwrap(),
        vec![0]
    );
    assert_eq!(
        monoid_lebesgue(&z4, &[vec![0, 1, 2, 3], vec![1]]).unwrap(),
        vec![0, 1, 2, 3]
    );
    assert!(monoid_lebesgue(&z4, &[vec![0]]).is_err());
    assert!(monoid_lebesgue(&z4, &[]).is_err());
}

fn halving_grid() -> (MetricGrid, Vec<usize>) {
    let mut values: Vec<f64> = (0..=20).map(|k| 2f64.powi(-k)).collect();
    values.push(0.0);
    let f: Vec<usize> = (0..values.len()).map(|i| (i + 1).min(values.len() - 1)).collect();
    (MetricGrid::from_reals(&values).unwrap(), f)
}

#[test]
fn beer() {
    let (g, f) = halving_grid();
    assert_eq!(
        beer_check(&g, &f, 0, 100).unwrap(),
        BeerResult::Found { point: 21, steps: 21 }
    );
    let two = MetricGrid::from_reals(&[0.0, 0.5]).unwrap();
    match beer_check(&two, &[1, 0], 0, 50).unwrap() {
        BeerResult::NotFound { bound, liminf } => {
            assert_eq!(bound, 50);
            assert!((liminf - 0.5).abs() < 1e-12);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        beer_check(&two, &[0, 1], 1, 10).unwrap(),
        BeerResult::Found { point: 1, steps: 0 }
    );
    assert!(MetricGrid::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]]
    )
    .is_err());
    assert!(MetricGrid::from_reals(&[1.0, 1.0]).is_err());
}

#[test]
fn configs() {
    let text = r#"{
        "dimension": 2,
        "vectors": [[1, 0], [0, 1]],
        "box": {"lo": [-1, -1], "hi": [1, 1]},
        "map": "halve",
        "gauge": {"linear": 0.5},
        "h": 0.1,
        "cover": [{"center": [0, 0], "indices": [0, 1], "radius": 2}]
    }"#;
    let cfg = NumericConfig::from_json(text).unwrap();
    assert_eq!(cfg.tol, TOL);
    assert_eq!(cfg.map().unwrap(), NumericMap::scale(2, 0.5));
    assert_eq!(PhiGauge::from(cfg.gauge), PhiGauge::Linear(0.5));
    assert_eq!(cfg.cover().unwrap().len(), 1);
    let affine = text.replace(
        "\"halve\"",
        r#"{"affine": {"matrix": [[0.5, 0], [0, 0.5]], "offset": [1, 0]}}"#,
    );
    let cfg = NumericConfig::from_json(&affine).unwrap();
    assert_eq!(cfg.map().unwrap().solve_fixed_point().unwrap(), v(&[2.0, 0.0]));
    assert!(NumericConfig::from_json(&text.replace("[0, 1]]", "[0, 1, 2]]")).is_err());
    assert!(NumericConfig::from_json("{}").is_err());
}
