//! The ten acceptance criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines always print; exits nonzero on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::DVector;
use rand::Rng;

use topofix::contraction::{
    check_star, check_topological_contraction, check_weak_contraction, check_weak_plus,
    ContractionProof,
};
use topofix::fixedpoint::{cech_runner, find_fixed_points, orbit_fixed_point, OrbitSearch};
use topofix::generators::{
    cech_sequence_cofinite, point_separating_covers, random_closed_set, random_cofinite_covers,
    random_pairs, random_set_expr, random_thm8_open_with_a, random_tower_covers, rng,
};
use topofix::hyperspace::{
    attractor, check_ifs_contractive, fixed_sets_among, has_preimage, hutchinson,
    limit_point_witness, vietoris_member, HyperPoint, Ifs, NoPreimage, VietorisBasic,
};
use topofix::maps::{CatalogMap, Closedness, OrbitDescriptor, SpaceMap};
use topofix::numeric::{
    beer_check, lebesgue_data, monoid_fixed_point, phi_iterate, verify_pairwise_convergence,
    BeerResult, FiniteMonoid, MetricGrid, NumericConfig, PhiGauge, PhiSettings,
};
use topofix::cases::data;
use topofix::setalg::{Point, SymSet};
use topofix::topology::{
    cofinite_nat, discrete, example3_int, hausdorff_rank, parse_covers, parse_pairs, thm8_space,
    tower, tower_point, Cover, Product, RankValue, Space,
};
use topofix::verdict::Verdict;

use common::{expr_window, holds, oracle_grounds, window_points};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn n(v: i64) -> Point {
    Point::int("n", v)
}

fn closed_samples(space: &Space, seed: u64, count: usize) -> Vec<SymSet> {
    let mut r = rng(seed);
    (0..count).map(|_| random_closed_set(&mut r, space)).collect()
}

/// Replays each weak obligation with `step`, an independent definition of
/// the map: both orbit points sit in the named element at step `n`, and with
/// `hold` also for the next `hold` steps.
fn replay_weak(
    step: impl Fn(&Point) -> Point,
    covers: &[Cover],
    proof: &ContractionProof,
    hold: usize,
) -> Result<(), String> {
    for o in &proof.obligations {
        let (x, y) = o.pair.clone().ok_or("obligation without a pair")?;
        let e = &covers[o.cover_index].elements[o.element_index];
        let (mut a, mut b) = (x.clone(), y.clone());
        for _ in 0..o.n {
            a = step(&a);
            b = step(&b);
        }
        for _ in 0..=hold {
            ensure(
                e.contains(&a) && e.contains(&b),
                format!("obligation for ({x}, {y}) on cover {} fails at replay", o.cover_index),
            )?;
            a = step(&a);
            b = step(&b);
        }
    }
    Ok(())
}

fn example1_step(p: &Point) -> Point {
    let v = p.as_int().expect("channel point").1;
    n(match v {
        1 => 2,
        v if v % 2 == 0 => v + 2,
        v => v - 2,
    })
}

fn c1_setalg() -> Outcome {
    let grounds = oracle_grounds();
    let mut r = rng(1);
    let mut points = 0usize;
    for t in 0..1000 {
        let g = &grounds[t % grounds.len()];
        let e = random_set_expr(&mut r, g, 6, 12);
        ensure(e.depth() <= 6, "generator exceeded depth 6")?;
        let s = e.eval(g).map_err(err)?;
        let w = expr_window(&e).max(s.oracle_bound());
        for p in window_points(g, w) {
            points += 1;
            ensure(
                s.contains(&p) == holds(&e, g, &p),
                format!("mismatch at {p} for {e}"),
            )?;
        }
    }
    Ok(format!("1000 trees, {points} point checks, 0 mismatches"))
}

fn c2_example1() -> Outcome {
    let f = CatalogMap::Example1Perm.map();
    let space = f.space().clone();
    let closed = f.is_closed_map(closed_samples(&space, 21, 200)).map_err(err)?;
    ensure(closed.is_certified(), format!("closedness: {closed:?}"))?;
    let mut r = rng(2);
    let covers = random_cofinite_covers(&mut r, 50);
    let pairs = random_pairs(&mut r, &space, 20, 60);
    ensure(covers.len() == 50 && pairs.len() == 20, "input sizes")?;
    for x in space.whole().enumerate_window(1, 500) {
        ensure(f.eval(&x).map_err(err)? == example1_step(&x), format!("map differs at {x}"))?;
    }
    let weak = check_weak_contraction(&f, &covers, &pairs, 200).map_err(err)?;
    let Verdict::Proved(wp) = &weak else {
        return Err(format!("weak contraction: {weak:?}"));
    };
    replay_weak(example1_step, &covers, wp, 0)?;
    let plus = check_weak_plus(&f, &covers, &pairs).map_err(err)?;
    let Verdict::Proved(pp) = &plus else {
        return Err(format!("weak+: {plus:?}"));
    };
    replay_weak(example1_step, &covers, pp, 200)?;
    let scan = find_fixed_points(&f, (1, 2000), true).map_err(err)?;
    ensure(scan.points.is_empty(), format!("fixed points {:?}", scan.points))?;
    ensure(scan.is_complete() && !scan.tails.is_empty(), "no structural tail certificate")?;
    ensure(
        (1..=2000).all(|v| example1_step(&n(v)) != n(v)),
        "oracle finds a fixed point",
    )?;
    Ok(format!(
        "closed, weak depth {}, weak+ {} obligations, no fixed point",
        wp.depth,
        pp.obligations.len()
    ))
}

fn c3_example3() -> Outcome {
    let f = CatalogMap::Example3Shift.map();
    let space = example3_int();
    let closed = f.is_closed_map(closed_samples(&space, 33, 500)).map_err(err)?;
    ensure(closed.is_certified(), format!("closedness: {closed:?}"))?;
    let covers = parse_covers(data::EXAMPLE3_COVERS, &space).map_err(err)?;
    let pairs = parse_pairs(data::EXAMPLE3_PAIRS, &space).map_err(err)?;
    let step = |p: &Point| p.offset(1).expect("channel point");
    let weak = check_weak_contraction(&f, &covers, &pairs, 200).map_err(err)?;
    let Verdict::Proved(wp) = &weak else {
        return Err(format!("weak contraction: {weak:?}"));
    };
    replay_weak(step, &covers, wp, 0)?;
    let scan = find_fixed_points(&f, (-1000, 1000), true).map_err(err)?;
    ensure(scan.points.is_empty(), format!("fixed points {:?}", scan.points))?;
    ensure(scan.is_complete(), format!("uncovered tails {:?}", scan.uncovered))?;
    ensure(
        space.is_locally_hausdorff() && !space.is_hausdorff(),
        "space should be locally Hausdorff but not Hausdorff",
    )?;
    Ok(format!(
        "closed (500 samples), weak on {} covers × {} pairs, no fixed point",
        covers.len(),
        pairs.len()
    ))
}

fn clamp(v: i64) -> i64 {
    match v {
        1 => 1,
        2..=6 => v - 1,
        _ => 5,
    }
}

fn c4_cech() -> Outcome {
    let f = CatalogMap::ClampDec.map();
    let space = cofinite_nat();
    let seq = cech_sequence_cofinite();
    let v = cech_runner(&space, &seq, &f, 12, 50).map_err(err)?;
    let Verdict::Proved(run) = &v else {
        return Err(format!("runner: {v:?}"));
    };
    ensure(run.fixed_point == n(1), format!("fixed point {}", run.fixed_point))?;
    ensure(run.audit.len() == 12, "audit length")?;
    // Values 1..=7 represent every orbit class of clamp.
    let image = |k: usize| -> Vec<i64> {
        let mut out: Vec<i64> = (1..=7)
            .map(|v| (0..k).fold(v, |x, _| clamp(x)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    for a in &run.audit {
        ensure(a.verified && a.n_i == 5, format!("audit entry {a:?}"))?;
        let cover = seq.cover(a.cover_index);
        let fits = |vals: &[i64]| {
            cover
                .elements
                .iter()
                .any(|e| vals.iter().all(|&v| e.contains(&n(v))))
        };
        let e = &cover.elements[a.element_index];
        ensure(image(5).iter().all(|&v| e.contains(&n(v))), "f^5[X] not in the audited element")?;
        ensure(!fits(&image(4)), "f^4[X] already fits")?;
    }
    Ok("fixed point 1, n_i = 5 for 12 covers, audit re-verified".into())
}

fn thm8_step(which: char, p: &Point) -> Point {
    match p {
        Point::Atom(_) => Point::atom(if which == 'f' { "a" } else { "b" }),
        Point::Int { value, .. } if value % 2 == 0 => {
            Point::atom(if which == 'f' { "b" } else { "a" })
        }
        Point::Int { value, .. } => n(value + 1),
    }
}

fn c5_thm8() -> Outcome {
    let space = thm8_space();
    let g = space.ground().clone();
    let (f, gm) = (CatalogMap::Thm8F.map(), CatalogMap::Thm8G.map());
    for (m, c) in [(&f, 'f'), (&gm, 'g')] {
        let closed = m.is_closed_map(closed_samples(&space, 8, 200)).map_err(err)?;
        ensure(closed.is_certified(), format!("{} closedness: {closed:?}", m.id()))?;
        for p in space.whole().enumerate_window(1, 200) {
            ensure(m.eval(&p).map_err(err)? == thm8_step(c, &p), format!("{} differs at {p}", m.id()))?;
        }
    }
    let ifs = Ifs::new(vec![f, gm]).map_err(err)?;
    let covers = point_separating_covers(&space, &space.sample_points(6));
    let v = check_ifs_contractive(&ifs, &covers, 16).map_err(err)?;
    let depth = v.proved().map(|p| p.depth);
    ensure(depth == Some(3), format!("IFS contractivity: {v:?}"))?;

    // Word images by pointwise evaluation: X is represented by a, b, 1, 2
    // (every odd behaves like 1 and every even like 2 up to the target).
    let reps = [Point::atom("a"), Point::atom("b"), n(1), n(2)];
    let mut layer: Vec<Vec<Point>> = vec![reps.to_vec()];
    for _ in 0..3 {
        layer = layer
            .iter()
            .flat_map(|w| {
                ['f', 'g'].map(|c| {
                    let mut img: Vec<Point> = w.iter().map(|p| thm8_step(c, p)).collect();
                    img.sort();
                    img.dedup();
                    img
                })
            })
            .collect();
    }
    ensure(layer.iter().all(|w| w.len() == 1), "depth-3 word images are not singletons")?;

    let ab = SymSet::atoms(&g, &["a", "b"]).map_err(err)?;
    let a = attractor(&ifs, 16).map_err(err)?;
    ensure(a.proved().map(|x| &x.carrier) == Some(&ab), format!("attractor {a:?}"))?;
    let just_a = HyperPoint::new(&space, SymSet::atoms(&g, &["a"]).map_err(err)?).map_err(err)?;
    let pre = has_preimage(&ifs, &just_a).map_err(err)?;
    ensure(
        matches!(pre, Verdict::Refuted(NoPreimage::EmptyStar)),
        format!("has_preimage({{a}}): {pre:?}"),
    )?;
    // No point maps into {a} under both maps.
    ensure(
        window_points(&g, 50)
            .iter()
            .all(|p| thm8_step('f', p) != Point::atom("a") || thm8_step('g', p) != Point::atom("a")),
        "oracle finds a point of E*",
    )?;

    let mut r = rng(0x7b);
    for _ in 0..100 {
        let v0 = random_thm8_open_with_a(&mut r, &space);
        let k = r.gen_range(0..=3);
        let vs = (0..k).map(|_| random_thm8_open_with_a(&mut r, &space)).collect();
        let b = VietorisBasic::new(&space, v0, vs).map_err(err)?;
        ensure(vietoris_member(&just_a, &b), "sampled basic misses {a}")?;
        let w = limit_point_witness(&ifs, &just_a, &b).map_err(err)?;
        let Verdict::Proved(w) = w else {
            return Err(format!("limit witness: {w:?}"));
        };
        let image = hutchinson(&ifs, &w.preimage).map_err(err)?;
        ensure(
            space.is_closed(&w.preimage) && image == *w.witness.carrier() && vietoris_member(&w.witness, &b),
            "limit witness fails its re-check",
        )?;
    }

    let mut r = rng(0x500);
    let mut candidates: Vec<SymSet> = (0..500).map(|_| random_closed_set(&mut r, &space)).collect();
    candidates.push(ab.clone());
    let fixed = fixed_sets_among(&ifs, &candidates).map_err(err)?;
    ensure(fixed == [ab.clone()], format!("fixed closed sets {fixed:?}"))?;
    Ok("closed maps, depth 3, attractor {a,b}, empty E*, 100 Vietoris witnesses, unique among 500".into())
}

fn c6_ranks() -> Outcome {
    for k in 0..=3 {
        let r = hausdorff_rank(&tower(k), 8);
        ensure(r == RankValue::Finite(k), format!("rank tower({k}) = {r:?}"))?;
    }
    for j in 0..=2 {
        for k in 0..=2 {
            let r = hausdorff_rank(&Product::new(tower(j), tower(k)), 8);
            ensure(
                r == RankValue::Finite(j.max(k)),
                format!("rank tower({j}) × tower({k}) = {r:?}"),
            )?;
        }
    }
    let t1 = tower(1);
    let g = t1.ground().clone();
    for x in ["p", "q"] {
        let b = t1.bracket(&Point::atom(x)).map_err(err)?;
        let expected = SymSet::atoms(&g, &["p", "q", "y0"]).map_err(err)?;
        ensure(b == expected, format!("[{x}] = {b}"))?;
    }
    for i in 1..=20 {
        let y = tower_point(1, i);
        ensure(t1.bracket(&y).map_err(err)? == SymSet::singleton(&g, &y).map_err(err)?, format!("[{y}]"))?;
    }
    Ok("tower ranks 0..3, 9 products, brackets exact".into())
}

fn c7_tower_fixed() -> Outcome {
    let f = CatalogMap::Tower1Collapse.map();
    let space = f.space().clone();
    let mut r = rng(0x70);
    let covers = random_tower_covers(&mut r, &space, 20);
    let pts = space.sample_points(5);
    let pairs: Vec<(Point, Point)> = pts
        .iter()
        .enumerate()
        .flat_map(|(i, x)| pts[i + 1..].iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let step = |x: &Point| match x {
        Point::Atom(_) => Point::atom("p"),
        y => y.offset(1).expect("channel point"),
    };
    let plus = check_weak_plus(&f, &covers, &pairs).map_err(err)?;
    let Verdict::Proved(pp) = &plus else {
        return Err(format!("weak+: {plus:?}"));
    };
    replay_weak(step, &covers, pp, 200)?;
    let p = Point::atom("p");
    let mut atoms = 0;
    for x in space.representatives() {
        match x {
            Point::Atom(_) => {
                let s = orbit_fixed_point(&f, &x, 200).map_err(err)?;
                ensure(
                    matches!(&s, OrbitSearch::Found { point, .. } if *point == p),
                    format!("orbit from {x}: {s:?}"),
                )?;
                atoms += 1;
            }
            Point::Int { .. } => {
                // y_i ↦ y_(i+1) never reaches p pointwise; its tail is certified instead.
                let d = f.orbit_descriptor(&x, 200);
                ensure(
                    matches!(d, Ok(OrbitDescriptor::ArithmeticTail { step: 1, .. })),
                    format!("orbit from {x}: {d:?}"),
                )?;
            }
        }
    }
    let scan = find_fixed_points(&f, (1, 500), true).map_err(err)?;
    ensure(scan.points == [p.clone()] && scan.is_complete(), format!("fixed points {scan:?}"))?;
    Ok(format!(
        "weak+ on {} covers × {} pairs, {atoms} atom starts reach p, unique fixed point p",
        covers.len(),
        pairs.len()
    ))
}

fn c8_duality() -> Outcome {
    let spaces = vec![
        discrete(3),
        cofinite_nat(),
        example3_int(),
        thm8_space(),
        tower(0),
        tower(1),
        tower(2),
        tower(3),
    ];
    let mut r = rng(8);
    for s in &spaces {
        let pairs = random_pairs(&mut r, s, 2000, 30);
        ensure(pairs.len() == 2000, "pair count")?;
        for (p, q) in &pairs {
            let b = s.bracket(p).map_err(err)?;
            ensure(
                b.contains(q) == !s.can_separate(p, q),
                format!("{}: duality fails at ({p}, {q})", s.id()),
            )?;
        }
    }
    Ok(format!("{} spaces × 2000 pairs, 0 mismatches", spaces.len()))
}

/// Brute-force Lebesgue check on an axis-aligned grid of `[0,1]^d` with
/// coordinate seminorms and square balls: the cube of grid points within
/// `eps` of each point is inside one ball. Balls are convex, so the cube's
/// corners suffice.
fn lebesgue_oracle(cfg: &NumericConfig, eps: f64) -> bool {
    let d = cfg.dimension;
    let steps = (1.0 / cfg.h).round() as i64;
    let k = (0..=steps).take_while(|&k| (k as f64) * cfg.h < eps).last().unwrap_or(0);
    let total = (steps + 1).pow(d as u32);
    (0..total).all(|idx| {
        let coords: Vec<i64> = (0..d).map(|i| (idx / (steps + 1).pow(i as u32)) % (steps + 1)).collect();
        let ranges: Vec<(i64, i64)> = coords.iter().map(|&c| ((c - k).max(0), (c + k).min(steps))).collect();
        cfg.cover.iter().any(|b| {
            (0..1usize << d).all(|mask| {
                let corner: Vec<f64> = (0..d)
                    .map(|i| {
                        let g = if mask >> i & 1 == 1 { ranges[i].1 } else { ranges[i].0 };
                        g as f64 * cfg.h
                    })
                    .collect();
                corner.iter().zip(&b.center).all(|(xi, ci)| (xi - ci).abs() < b.radius)
            })
        })
    })
}

fn c9_numeric() -> Outcome {
    let mut eps_found = Vec::new();
    for text in [data::LEBESGUE_1D, data::LEBESGUE_2D] {
        let cfg = NumericConfig::from_json(text).map_err(err)?;
        ensure((cfg.h - 0.01).abs() < 1e-15, "grid h is not 0.01")?;
        let grid = cfg.domain.grid(cfg.h).map_err(err)?;
        let v = lebesgue_data(&cfg.family().map_err(err)?, &cfg.cover().map_err(err)?, &grid).map_err(err)?;
        let Verdict::Proved(ld) = v else {
            return Err(format!("lebesgue: {v:?}"));
        };
        ensure(ld.epsilon >= 0.09, format!("ε = {}", ld.epsilon))?;
        ensure(lebesgue_oracle(&cfg, 0.09), "oracle rejects ε = 0.09")?;
        ensure(lebesgue_oracle(&cfg, ld.epsilon), format!("oracle rejects ε = {}", ld.epsilon))?;
        eps_found.push(ld.epsilon);
    }

    let cfg = NumericConfig::from_json(data::LIP_HALVE).map_err(err)?;
    let family = cfg.family().map_err(err)?;
    let half = |x: &DVector<f64>| x / 2.0;
    let mut r = rng(9);
    let mut point = || DVector::from_fn(2, |_, _| r.gen_range(-1.0..=1.0));
    let pairs: Vec<_> = (0..100).map(|_| (point(), point())).collect();
    let settings = PhiSettings {
        gauge: PhiGauge::Linear(0.5),
        tol: 1e-9,
        maxiter: 60,
    };
    let res = phi_iterate(&half, &family, &cfg.domain, &cfg.x0(), &pairs, settings).map_err(err)?;
    ensure(res.residual < 1e-9 && res.iterations <= 60, format!("phi: {res:?}"))?;
    let fx = DVector::from_column_slice(&res.fixed_point);
    ensure(fx.amax() < 1e-8, "fixed point is not 0")?;
    let v = verify_pairwise_convergence(&half, &pairs, &family, 60, 1e-9, Some((PhiGauge::Linear(0.5), 1e-10)));
    ensure(v.is_proved(), format!("envelope: {v:?}"))?;
    for (x, y) in &pairs {
        let (mut a, mut b) = (x.clone(), y.clone());
        for k in 0..=60 {
            let bound = 0.5f64.powi(k) * (x - y).amax() + 1e-10;
            ensure((&a - &b).amax() <= bound, "oracle envelope fails")?;
            a = half(&a);
            b = half(&b);
        }
    }

    let z4 = FiniteMonoid::cyclic_additive(4);
    let double: Vec<usize> = (0..4).map(|x| 2 * x % 4).collect();
    let v = monoid_fixed_point(&z4, &double).map_err(err)?;
    ensure(v == Verdict::Proved(0), format!("monoid: {v:?}"))?;
    ensure((0..4).filter(|&x| double[x] == x).eq([0]), "0 is not the unique fixed point")?;

    let mut values: Vec<f64> = (0..=20).map(|k| 2f64.powi(-k)).collect();
    values.push(0.0);
    let last = values.len() - 1;
    let g = MetricGrid::from_reals(&values).map_err(err)?;
    let halve: Vec<usize> = (0..values.len()).map(|i| (i + 1).min(last)).collect();
    let b = beer_check(&g, &halve, 0, 100).map_err(err)?;
    ensure(matches!(b, BeerResult::Found { point, .. } if point == last), format!("beer halving: {b:?}"))?;
    let two = MetricGrid::from_reals(&[0.0, 0.5]).map_err(err)?;
    let b = beer_check(&two, &[1, 0], 0, 100).map_err(err)?;
    ensure(
        matches!(b, BeerResult::NotFound { liminf, .. } if liminf > 0.0),
        format!("beer 2-cycle: {b:?}"),
    )?;
    Ok(format!(
        "ε = {:.3} (1-D), {:.3} (2-D); phi in {} steps; envelope on 100 pairs; ℤ₄ → 0; beer",
        eps_found[0], eps_found[1], res.iterations
    ))
}

fn c10_negative() -> Outcome {
    let mut refuted = 0;
    let c = cofinite_nat();
    let d = discrete(3);
    let pts: Vec<Point> = (1..=4).map(n).collect();
    for (space, sample) in [(&c, pts), (&d, d.sample_points(1))] {
        let id = SpaceMap::identity(space);
        let covers = point_separating_covers(space, &sample);
        let pairs: Vec<(Point, Point)> = sample
            .iter()
            .enumerate()
            .flat_map(|(i, x)| sample[i + 1..].iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let verdicts = [
            ("topological", check_topological_contraction(&id, &covers, 50).map_err(err)?.is_refuted()),
            ("star", check_star(&id, &pairs, 50).map_err(err)?.is_refuted()),
            ("weak", check_weak_contraction(&id, &covers, &pairs, 50).map_err(err)?.is_refuted()),
            ("weak+", check_weak_plus(&id, &covers, &pairs).map_err(err)?.is_refuted()),
            (
                "ifs",
                check_ifs_contractive(&Ifs::new(vec![id.clone()]).map_err(err)?, &covers, 50)
                    .map_err(err)?
                    .is_refuted(),
            ),
        ];
        for (name, ok) in verdicts {
            ensure(ok, format!("identity on {} not refuted by {name}", space.id()))?;
            refuted += 1;
        }
    }
    let dbl = CatalogMap::Doubling.map();
    let whole = c.whole().clone();
    let mut samples = vec![whole.clone()];
    samples.extend(closed_samples(&c, 10, 50));
    match dbl.is_closed_map(samples).map_err(err)? {
        Closedness::Refuted { set, image } => {
            ensure(set == whole, format!("witness E = {set}"))?;
            ensure(!c.is_closed(&image), "image of ℕ is closed")?;
            ensure(
                (1..=100).all(|v| image.contains(&n(v)) == (v % 2 == 0)),
                "image of ℕ is not the evens",
            )?;
        }
        other => return Err(format!("doubling: {other:?}")),
    }
    Ok(format!("identity refuted by {refuted} checker runs; doubling refuted with E = ℕ"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("setalg oracle equivalence", c1_setalg),
        ("example 1 replay", c2_example1),
        ("example 3 replay", c3_example3),
        ("cover-sequence fixed point", c4_cech),
        ("thm8 IFS suite", c5_thm8),
        ("rank suite", c6_ranks),
        ("tower fixed point", c7_tower_fixed),
        ("bracket/separation duality", c8_duality),
        ("numeric suite", c9_numeric),
        ("negative controls", c10_negative),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
