use super::*;
use crate::generators::cech_sequence_cofinite;
use crate::maps::CatalogMap;
use crate::topology::{cofinite_nat, discrete, thm8_space, Cover};

fn n(v: i64) -> Point {
    Point::int("n", v)
}

#[test]
fn nested_image_examples() {
    let c = CatalogMap::ClampDec.map();
    assert_eq!(nested_image_fixed_point(&c, 50).unwrap(), Verdict::Proved(n(1)));
    let t = CatalogMap::Thm8F.map();
    assert_eq!(
        nested_image_fixed_point(&t, 50).unwrap(),
        Verdict::Proved(Point::atom("a"))
    );
    let id = SpaceMap::identity(&cofinite_nat());
    assert!(nested_image_fixed_point(&id, 50).unwrap().is_refuted());
    let bare = c.without_symbolic_rules();
    assert!(nested_image_fixed_point(&bare, 5).is_err());
}

#[test]
fn cech_runner_clampdec() {
    let sp = cofinite_nat();
    let f = CatalogMap::ClampDec.map();
    let run = cech_runner(&sp, &cech_sequence_cofinite(), &f, 10, 50).unwrap();
    let run = run.proved().expect("proved").clone();
    assert_eq!(run.fixed_point, n(1));
    assert_eq!(run.audit.len(), 10);
    for a in &run.audit {
        assert_eq!(a.n_i, 5);
        assert!(a.verified);
    }
}

#[test]
fn cech_runner_thm8_and_identity() {
    let sp = thm8_space();
    let f = CatalogMap::Thm8F.map();
    let pts = sp.sample_points(6);
    let covers = point_separating_covers(&sp, &pts);
    let seq = CoverSequence::new("separating", move |i| covers[(i - 1) % covers.len()].clone());
    let run = cech_runner(&sp, &seq, &f, 12, 50).unwrap();
    assert_eq!(run.proved().unwrap().fixed_point, Point::atom("a"));
    let d = discrete(2);
    let whole = Cover::new(vec![d.whole().clone()]);
    let seq = CoverSequence::new("trivial", move |_| whole.clone());
    let id = SpaceMap::identity(&d);
    match cech_runner(&d, &seq, &id, 3, 10).unwrap() {
        Verdict::Refuted(CechFailure::Stable(_, audit)) => {
            assert!(audit.iter().all(|a| a.n_i == 0 && a.verified));
        }
        other => panic!("{other:?}"),
    }
    assert!(cech_runner(&d, &seq, &f, 1, 5).is_err());
}

#[test]
fn orbit_search() {
    let t = CatalogMap::Tower1Collapse.map();
    assert_eq!(
        orbit_fixed_point(&t, &Point::atom("q"), 10).unwrap(),
        OrbitSearch::Found {
            point: Point::atom("p"),
            steps: 1
        }
    );
    assert_eq!(
        orbit_fixed_point(&t, &Point::int("y", 1), 100).unwrap(),
        OrbitSearch::NotFound { bound: 100 }
    );
    let s = CatalogMap::Example3Shift.map();
    assert_eq!(
        orbit_fixed_point(&s, &Point::int("z", 0), 50).unwrap(),
        OrbitSearch::NotFound { bound: 50 }
    );
    let c = cofinite_nat();
    let k = SpaceMap::constant(&c, n(4)).unwrap();
    assert_eq!(
        orbit_fixed_point(&k, &n(17), 5).unwrap(),
        OrbitSearch::Found {
            point: n(4),
            steps: 1
        }
    );
}

#[test]
fn uniqueness_examples() {
    let d = discrete(2);
    let id = SpaceMap::identity(&d);
    let v = uniqueness_by_cover(&id, &Point::atom("p"), &Point::atom("q"), 10).unwrap();
    assert!(v.is_proved());
    let c = CatalogMap::ClampDec.map();
    assert!(matches!(
        uniqueness_by_cover(&c, &n(1), &n(2), 10),
        Err(VerifyError::Precondition(_))
    ));
}

#[test]
fn window_scans() {
    for (m, expected) in [
        (CatalogMap::Example3Shift, vec![]),
        (CatalogMap::Example1Perm, vec![]),
        (CatalogMap::Thm8F, vec![Point::atom("a")]),
        (CatalogMap::Thm8G, vec![Point::atom("b")]),
        (CatalogMap::ClampDec, vec![n(1)]),
        (CatalogMap::Tower1Collapse, vec![Point::atom("p")]),
        (CatalogMap::Doubling, vec![]),
    ] {
        let scan = find_fixed_points(&m.map(), (-100, 100), true).unwrap();
        assert_eq!(scan.points, expected, "{}", m.id());
        assert!(scan.is_complete(), "{}: {:?}", m.id(), scan.uncovered);
    }
    let id = SpaceMap::identity(&cofinite_nat());
    let scan = find_fixed_points(&id, (1, 10), true).unwrap();
    assert_eq!(scan.points.len(), 10);
    assert!(!scan.is_complete());
    let scan = find_fixed_points(&CatalogMap::ClampDec.map(), (1, 10), false).unwrap();
    assert!(!scan.is_complete());
}

#[test]
fn engines_agree() {
    let c = cofinite_nat();
    for f in [
        CatalogMap::ClampDec.map(),
        CatalogMap::Thm8F.map(),
        CatalogMap::Tower1Collapse.map(),
        SpaceMap::constant(&c, n(3)).unwrap(),
    ] {
        let scan = find_fixed_points(&f, (-50, 50), true).unwrap();
        assert_eq!(scan.points.len(), 1, "{}", f.id());
        let p = scan.points[0].clone();
        assert_eq!(f.eval(&p).unwrap(), p);
        if let Verdict::Proved(q) = nested_image_fixed_point(&f, 50).unwrap() {
            assert_eq!(q, p, "{}", f.id());
        }
        let start = f.space().representatives()[0].clone();
        match orbit_fixed_point(&f, &start, 100).unwrap() {
            OrbitSearch::Found { point, .. } => assert_eq!(point, p),
            OrbitSearch::NotFound { .. } => {}
        }
    }
}
