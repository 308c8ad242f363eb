//! Scripted end-to-end cases, each producing a [`Report`].

use std::time::Instant;

use nalgebra::DVector;
use rand::Rng;
use serde::Serialize;

use crate::contraction::{check_weak_contraction, check_weak_plus, reverify_weak};
use crate::error::{CaseError, VerifyError};
use crate::fixedpoint::{cech_runner, find_fixed_points, orbit_fixed_point, FixedPointScan, OrbitSearch};
use crate::generators::{
    cech_sequence_cofinite, point_separating_covers, random_closed_set, random_cofinite_covers,
    random_pairs, random_thm8_open_with_a, random_tower_covers, rng,
};
use crate::hyperspace::{
    attractor, check_ifs_contractive, fixed_sets_among, has_preimage, hutchinson,
    limit_point_witness, vietoris_member, HyperPoint, Ifs, VietorisBasic,
};
use crate::maps::{CatalogMap, Closedness, OrbitDescriptor, SpaceMap};
use crate::numeric::{
    beer_check, lebesgue_data, monoid_fixed_point, monoid_lebesgue, phi_iterate,
    verify_lebesgue, verify_pairwise_convergence, BeerResult, FiniteMonoid, MetricGrid,
    NumericConfig, PhiGauge, PhiSettings,
};
use crate::report::{Check, Report};
use crate::setalg::{Point, SymSet};
use crate::topology::{
    cofinite_nat, hausdorff_rank, parse_covers, parse_pairs, tower, tower_point, Product,
    RankValue, Space, Topology,
};
use crate::verdict::{Outcome, Verdict};

/// Definition files shipped with the crate.
pub mod data {
    pub const EXAMPLE3_COVERS: &str = include_str!("../data/example3.covers");
    pub const EXAMPLE3_PAIRS: &str = include_str!("../data/example3.pairs");
    pub const LEBESGUE_1D: &str = include_str!("../data/lebesgue-1d.json");
    pub const LEBESGUE_2D: &str = include_str!("../data/lebesgue-2d.json");
    pub const LIP_HALVE: &str = include_str!("../data/lip-halve.json");
    pub const LIP_AFFINE: &str = include_str!("../data/lip-affine.json");
    pub const LIP_ROOT: &str = include_str!("../data/lip-root.json");
}

/// Registered cases with a one-line description.
pub const CASES: &[(&str, &str)] = &[
    ("example1", "zigzag permutation of the cofinite naturals: closed, weakly contractive, no fixed point"),
    ("example3", "shift on the integer example space: closed, weakly contractive, no fixed point"),
    ("hutchinson", "thm8 IFS: contractive at depth 3, attractor {a,b}, {a} a limit of images but not an image"),
    ("cech", "cover-sequence runner on the cofinite naturals with clampdec"),
    ("tower-rank", "Hausdorff ranks of tower(0..3) and their brackets"),
    ("product-rank", "Hausdorff ranks of products of towers"),
    ("tower-fixed", "tower1-collapse: weak+ contraction and its unique fixed point p"),
    ("numeric-lip", "gauge contractions on boxes of the plane"),
    ("numeric-lebesgue", "Lebesgue numbers of the shipped seminorm-ball covers"),
    ("monoid", "fixed points from meeting orbits in finite monoids"),
    ("beer", "consecutive-distance criterion on finite metric spaces"),
];

/// Bounds shared by the cases. `nmax` replaces every case's default
/// iteration bound when set, and `tol` every numeric convergence tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CaseOptions {
    pub nmax: Option<usize>,
    pub seed: u64,
    pub tol: Option<f64>,
}

impl CaseOptions {
    /// Reads `TOPOFIX_NMAX` from the environment.
    pub fn from_env() -> Result<Self, CaseError> {
        let nmax = parse_nmax(std::env::var("TOPOFIX_NMAX").ok().as_deref())?;
        Ok(CaseOptions {
            nmax,
            ..CaseOptions::default()
        })
    }

    fn nmax(&self, default: usize) -> usize {
        self.nmax.unwrap_or(default)
    }
}

/// Parses an iteration bound override; absent means no override.
pub fn parse_nmax(value: Option<&str>) -> Result<Option<usize>, CaseError> {
    value
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| CaseError::BadNmax(v.to_string()))
        })
        .transpose()
}

pub fn run_case(id: &str, opts: &CaseOptions) -> Result<Report, CaseError> {
    let start = Instant::now();
    let mut report = Report::new(id);
    report.bound("seed", opts.seed);
    match id {
        "example1" => example1(&mut report, opts)?,
        "example3" => example3(&mut report, opts)?,
        "hutchinson" => hutchinson_case(&mut report, opts)?,
        "cech" => cech(&mut report, opts)?,
        "tower-rank" => tower_rank(&mut report)?,
        "product-rank" => product_rank(&mut report)?,
        "tower-fixed" => tower_fixed(&mut report, opts)?,
        "numeric-lip" => numeric_lip(&mut report, opts)?,
        "numeric-lebesgue" => numeric_lebesgue(&mut report)?,
        "monoid" => monoid(&mut report)?,
        "beer" => beer(&mut report, opts)?,
        other => return Err(CaseError::UnknownCase(other.to_string())),
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

/// Every registered case in order.
pub fn run_all(opts: &CaseOptions) -> Result<Vec<Report>, CaseError> {
    CASES.iter().map(|(id, _)| run_case(id, opts)).collect()
}

fn closed_samples(space: &Space, seed: u64, count: usize) -> Vec<SymSet> {
    let mut r = rng(seed);
    (0..count).map(|_| random_closed_set(&mut r, space)).collect()
}

/// Closed-map check: catalog certificate plus sampling. The certificate is
/// re-checked on a second, independent batch of closed sets.
pub fn closed_map_check(f: &SpaceMap, seed: u64, samples: usize) -> Result<Check, CaseError> {
    let c = f.is_closed_map(closed_samples(f.space(), seed, samples))?;
    let outcome = match &c {
        Closedness::CertifiedByCatalog { .. } => Outcome::Proved,
        Closedness::PassedSampling(_) => Outcome::Unknown,
        Closedness::Refuted { .. } => Outcome::Refuted,
    };
    let fresh = f.is_closed_map(closed_samples(f.space(), seed ^ 0x5eed, samples))?;
    Ok(Check::new(format!("{} closed", f.id()), Outcome::Proved, outcome)
        .witness(&c)
        .detail(format!("{samples} sampled closed sets"))
        .reverified(!fresh.is_refuted()))
}

/// Pushes weak and weak+ contraction checks over `covers × pairs`, each
/// proof replayed by [`reverify_weak`].
pub fn weak_checks(
    report: &mut Report,
    f: &SpaceMap,
    covers: &[crate::topology::Cover],
    pairs: &[(Point, Point)],
    nmax: usize,
) -> Result<(), CaseError> {
    let weak = check_weak_contraction(f, covers, pairs, nmax)?;
    let mut c = Check::from_verdict("weak contraction", Outcome::Proved, &weak);
    if let Verdict::Proved(p) = &weak {
        c = c
            .detail(format!("{} obligations, depth {}", p.obligations.len(), p.depth))
            .reverified(reverify_weak(f, covers, p)?);
    }
    report.push(c);
    let plus = check_weak_plus(f, covers, pairs)?;
    let mut c = Check::from_verdict("weak+ contraction", Outcome::Proved, &plus);
    if let Verdict::Proved(p) = &plus {
        c = c
            .detail(format!("{} obligations, n0 up to {}", p.obligations.len(), p.depth))
            .reverified(reverify_weak(f, covers, p)?);
    }
    report.push(c);
    Ok(())
}

/// Window scan plus tail certificates; proved when the map has exactly
/// `expected` as fixed points and the tails are accounted for. The window is
/// re-scanned by direct evaluation.
fn fixed_point_check(
    f: &SpaceMap,
    window: (i64, i64),
    expected: &[Point],
) -> Result<Check, CaseError> {
    let scan: FixedPointScan = find_fixed_points(f, window, true)?;
    let outcome = if scan.points != expected {
        Outcome::Refuted
    } else if scan.is_complete() {
        Outcome::Proved
    } else {
        Outcome::Unknown
    };
    let mut rescan = Vec::new();
    for p in f.space().whole().enumerate_window(window.0, window.1) {
        if f.eval(&p)? == p {
            rescan.push(p);
        }
    }
    let tails_ok = scan.tails.iter().all(|t| t.rule.is_fixed_point_free() && t.spot_checks > 0);
    let names: Vec<String> = expected.iter().map(Point::to_string).collect();
    Ok(Check::new(
        format!("fixed points = {{{}}}", names.join(", ")),
        Outcome::Proved,
        outcome,
    )
    .detail(format!(
        "window [{}, {}], {} tail certificates, uncovered tails: {:?}",
        window.0,
        window.1,
        scan.tails.len(),
        scan.uncovered
    ))
    .witness(&scan)
    .reverified(rescan == expected && tails_ok))
}

fn example1(report: &mut Report, opts: &CaseOptions) -> Result<(), CaseError> {
    let f = CatalogMap::Example1Perm.map();
    let nmax = opts.nmax(200);
    let mut r = rng(opts.seed ^ 1);
    let covers = random_cofinite_covers(&mut r, 50);
    let pairs = random_pairs(&mut r, f.space(), 20, 60);
    let window = (1, 2000);
    report
        .input("space", f.space().id())
        .input("map", f.id())
        .input("covers", covers.len())
        .input("pairs", &pairs)
        .bound("nmax", nmax)
        .bound("closed_samples", 200)
        .bound("window", window);
    report.push(closed_map_check(&f, opts.seed ^ 11, 200)?);
    weak_checks(report, &f, &covers, &pairs, nmax)?;
    report.push(fixed_point_check(&f, window, &[])?);
    Ok(())
}

fn example3(report: &mut Report, opts: &CaseOptions) -> Result<(), CaseError> {
    let f = CatalogMap::Example3Shift.map();
    let space = f.space().clone();
    let nmax = opts.nmax(200);
    let covers = parse_covers(data::EXAMPLE3_COVERS, &space)?;
    let pairs = parse_pairs(data::EXAMPLE3_PAIRS, &space)?;
    let window = (-1000, 1000);
    report
        .input("space", space.id())
        .input("map", f.id())
        .input("covers", &covers)
        .input("pairs", &pairs)
        .bound("nmax", nmax)
        .bound("closed_samples", 500)
        .bound("window", window);
    report.push(closed_map_check(&f, opts.seed ^ 33, 500)?);
    let weak = check_weak_contraction(&f, &covers, &pairs, nmax)?;
    let mut c = Check::from_verdict("weak contraction", Outcome::Proved, &weak);
    if let Verdict::Proved(p) = &weak {
        c = c
            .detail(format!("{} obligations, depth {}", p.obligations.len(), p.depth))
            .reverified(reverify_weak(&f, &covers, p)?);
    }
    report.push(c);
    report.push(fixed_point_check(&f, window, &[])?);
    let search = orbit_fixed_point(&f, &Point::int("z", 0), nmax)?;
    report.push(
        Check::fact(
            "orbit of 0 reaches no fixed point",
            matches!(search, OrbitSearch::NotFound { .. }),
            &search,
        )
        .reverified(f.iterate(&Point::int("z", 0), nmax)? == Point::int("z", nmax as i64)),
    );
    Ok(())
}

fn set_exprs(sets: &[SymSet]) -> Vec<String> {
    sets.iter().map(SymSet::to_expr).collect()
}

/// A basic Vietoris set `⟨V₀; V₁, ..., V_k⟩` of the thm8 space holding `{a}`.
fn thm8_basic(r: &mut impl Rng, space: &Space) -> Result<VietorisBasic, VerifyError> {
    let v0 = random_thm8_open_with_a(r, space);
    let k = r.gen_range(0..=3);
    let vs = (0..k).map(|_| random_thm8_open_with_a(r, space)).collect();
    VietorisBasic::new(space, v0, vs)
}

fn hutchinson_case(report: &mut Report, opts: &CaseOptions) -> Result<(), CaseError> {
    let nmax = opts.nmax(16);
    let ifs = Ifs::from_ids("thm8-f,thm8-g", None)?;
    let space = ifs.space().clone();
    let g = space.ground().clone();
    report
        .input("ifs", ifs.id())
        .input("space", space.id())
        .bound("nmax", nmax)
        .bound("vietoris_samples", 100)
        .bound("closed_candidates", 500);

    for f in ifs.maps() {
        report.push(closed_map_check(f, opts.seed ^ 8, 200)?);
    }

    let covers = point_separating_covers(&space, &space.sample_points(6));
    let v = check_ifs_contractive(&ifs, &covers, nmax)?;
    let mut c = Check::from_verdict("IFS contractive", Outcome::Proved, &v);
    if let Verdict::Proved(p) = &v {
        let fits = covers.iter().all(|cv| {
            p.word_images
                .iter()
                .all(|w| cv.elements.iter().any(|e| w.is_subset(e)))
        });
        c = c
            .detail(format!("depth {} over {} covers", p.depth, covers.len()))
            .reverified(fits);
    }
    report.push(c);
    let depth = v.proved().map(|p| p.depth);
    report.push(
        Check::fact("contractivity depth is 3", depth == Some(3), depth)
            .reverified(word_depth_is_three(&ifs, &covers)?),
    );

    let ab = SymSet::atoms(&g, &["a", "b"]).expect("thm8 atoms");
    let a = attractor(&ifs, nmax)?;
    let carrier = a.proved().map(|x| x.carrier.clone());
    report.push(
        Check::fact("attractor is {a,b}", carrier.as_ref() == Some(&ab), &a)
            .reverified(hutchinson(&ifs, &ab)? == ab),
    );

    let just_a = HyperPoint::new(&space, SymSet::atoms(&g, &["a"]).expect("thm8 atom"))?;
    let pre = has_preimage(&ifs, &just_a)?;
    report.push(
        Check::from_verdict("{a} has a preimage under F", Outcome::Refuted, &pre)
            .detail("the largest set mapped into {a} is empty"),
    );

    let mut r = rng(opts.seed ^ 0x7b);
    let mut witnesses = Vec::new();
    let mut all_ok = true;
    let mut recheck = true;
    for _ in 0..100 {
        let b = thm8_basic(&mut r, &space)?;
        match limit_point_witness(&ifs, &just_a, &b)? {
            Verdict::Proved(w) => {
                recheck &= vietoris_member(&w.witness, &b)
                    && hutchinson(&ifs, &w.preimage)? == *w.witness.carrier()
                    && space.is_closed(&w.preimage);
                witnesses.push(w.witness.carrier().to_expr());
            }
            _ => all_ok = false,
        }
    }
    report.push(
        Check::fact("{a} is a limit of images F(E)", all_ok, &witnesses)
            .detail("100 sampled basic Vietoris sets containing {a}")
            .reverified(recheck),
    );

    let mut r = rng(opts.seed ^ 0x500);
    let mut candidates: Vec<SymSet> = (0..500).map(|_| random_closed_set(&mut r, &space)).collect();
    candidates.push(ab.clone());
    let fixed = fixed_sets_among(&ifs, &candidates)?;
    let recheck = candidates
        .iter()
        .filter(|k| !k.is_empty() && hutchinson(&ifs, k).map(|fk| fk == **k).unwrap_or(false))
        .all(|k| *k == ab);
    report.push(
        Check::fact("unique fixed closed set among candidates", fixed == [ab], set_exprs(&fixed))
            .reverified(recheck),
    );
    Ok(())
}

/// Independent depth check: every composition of three maps lands inside
/// an element of each cover, and some composition of two does not.
fn word_depth_is_three(ifs: &Ifs, covers: &[crate::topology::Cover]) -> Result<bool, CaseError> {
    let whole = ifs.space().whole().clone();
    let mut layers = vec![vec![whole]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for s in layers.last().expect("nonempty") {
            for f in ifs.maps() {
                next.push(f.image(s)?);
            }
        }
        layers.push(next);
    }
    let fits = |layer: &[SymSet]| {
        covers
            .iter()
            .all(|c| layer.iter().all(|w| c.elements.iter().any(|e| w.is_subset(e))))
    };
    Ok(fits(&layers[3]) && !fits(&layers[2]))
}

fn cech(report: &mut Report, opts: &CaseOptions) -> Result<(), CaseError> {
    let nmax = opts.nmax(50);
    let covers = 12;
    let f = CatalogMap::ClampDec.map();
    let space = cofinite_nat();
    let seq = cech_sequence_cofinite();
    report
        .input("space", space.id())
        .input("map", f.id())
        .input("sequence", "punctured-blocks")
        .bound("covers", covers)
        .bound("nmax", nmax);
    let v = cech_runner(&space, &seq, &f, covers, nmax)?;
    let mut c = Check::from_verdict("cover-sequence fixed point", Outcome::Proved, &v);
    if let Verdict::Proved(run) = &v {
        let one = Point::int("n", 1);
        report.audit = run.audit.clone();
        let mut ok = f.eval(&run.fixed_point)? == run.fixed_point;
        for a in &run.audit {
            let element = &seq.cover(a.cover_index).elements[a.element_index];
            ok &= f.image_of_space(a.n_i)?.is_subset(element);
        }
        c = c
            .detail(format!("fixed point {}", run.fixed_point))
            .reverified(ok && run.fixed_point == one);
        report.push(c);
        let all_five = run.audit.iter().all(|a| a.n_i == 5);
        let four = f.image_of_space(4)?;
        let five = f.image_of_space(5)?;
        let minimal = run.audit.iter().all(|a| {
            let cover = seq.cover(a.cover_index);
            !cover.elements.iter().any(|e| four.is_subset(e))
                && cover.elements.iter().any(|e| five.is_subset(e))
        });
        report.push(
            Check::fact(
                "every n_i is 5",
                all_five,
                run.audit.iter().map(|a| a.n_i).collect::<Vec<_>>(),
            )
            .reverified(minimal),
        );
    } else {
        report.push(c);
    }
    Ok(())
}

fn rank_check<T: Topology>(name: String, space: &T, expected: usize) -> Check {
    let rank = hausdorff_rank(space, 8);
    let again = hausdorff_rank(space, 16);
    Check::fact(name, rank == RankValue::Finite(expected), &rank).reverified(again == rank)
}

/// `member(bracket(p), q) ⟺ ¬can_separate(p, q)` on the sample points.
fn bracket_duality(space: &Space, p: &Point) -> bool {
    let b = space.bracket(p).expect("point of the space");
    space
        .sample_points(6)
        .iter()
        .all(|q| b.contains(q) == !space.can_separate(p, q))
}

fn tower_rank(report: &mut Report) -> Result<(), CaseError> {
    report.bound("depth_bound", 8);
    for k in 0..=3 {
        report.push(rank_check(format!("rank tower({k}) = {k}"), &tower(k), k));
    }
    let t1 = tower(1);
    let g = t1.ground().clone();
    let x = Point::atom("p");
    let expected = SymSet::atoms(&g, &["p", "q", "y0"]).expect("tower atoms");
    let got = t1.bracket(&x)?;
    report.push(
        Check::fact("[p] = X ∪ {y0} in tower(1)", got == expected, &got)
            .reverified(bracket_duality(&t1, &x)),
    );
    let mut ok = true;
    let mut dual = true;
    for i in 1..=8 {
        let y = tower_point(1, i);
        ok &= t1.bracket(&y)? == SymSet::singleton(&g, &y)?;
        dual &= bracket_duality(&t1, &y);
    }
    report.push(
        Check::fact("[y_i] = {y_i} in tower(1) for i = 1..8", ok, "singletons").reverified(dual),
    );
    Ok(())
}

fn product_rank(report: &mut Report) -> Result<(), CaseError> {
    report.bound("depth_bound", 8);
    for j in 0..=2 {
        for k in 0..=2 {
            let p = Product::new(tower(j), tower(k));
            report.push(rank_check(
                format!("rank tower({j}) × tower({k}) = {}", j.max(k)),
                &p,
                j.max(k),
            ));
        }
    }
    Ok(())
}

fn tower_fixed(report: &mut Report, opts: &CaseOptions) -> Result<(), CaseError> {
    let f = CatalogMap::Tower1Collapse.map();
    let space = f.space().clone();
    let nmax = opts.nmax(200);
    let mut r = rng(opts.seed ^ 0x70);
    let covers = random_tower_covers(&mut r, &space, 20);
    let pts = space.sample_points(5);
    let pairs: Vec<(Point, Point)> = pts
        .iter()
        .enumerate()
        .flat_map(|(i, x)| pts[i + 1..].iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    report
        .input("space", space.id())
        .input("map", f.id())
        .input("covers", covers.len())
        .input("pairs", pairs.len())
        .bound("nmax", nmax)
        .bound("window", (1, 500));
    let plus = check_weak_plus(&f, &covers, &pairs)?;
    let mut c = Check::from_verdict("weak+ contraction", Outcome::Proved, &plus);
    if let Verdict::Proved(p) = &plus {
        c = c
            .detail(format!("{} obligations", p.obligations.len()))
            .reverified(reverify_weak(&f, &covers, p)?);
    }
    report.push(c);

    let p = Point::atom("p");
    let mut atoms_ok = true;
    let mut channel_tails = true;
    let mut found = Vec::new();
    for x in space.representatives() {
        match &x {
            Point::Atom(_) => {
                let s = orbit_fixed_point(&f, &x, nmax)?;
                atoms_ok &= matches!(&s, OrbitSearch::Found { point, .. } if *point == p);
                found.push((x.to_string(), s));
            }
            Point::Int { .. } => {
                channel_tails &= matches!(
                    f.orbit_descriptor(&x, nmax),
                    Ok(OrbitDescriptor::ArithmeticTail { step: 1, .. })
                );
            }
        }
    }
    report.push(
        Check::fact("orbits from atom representatives reach p", atoms_ok, &found)
            .reverified(f.eval(&p)? == p),
    );
    report.push(
        Check::fact("orbits from channel representatives run off along y", channel_tails, "y_i ↦ y_(i+1)")
            .reverified(f.eval(&tower_point(1, 3))? == tower_point(1, 4)),
    );
    report.push(fixed_point_check(&f, (1, 500), &[p])?);
    Ok(())
}

fn vec_of(x: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(x)
}

fn box_pairs(cfg: &NumericConfig, seed: u64, count: usize) -> Vec<(DVector<f64>, DVector<f64>)> {
    let mut r = rng(seed);
    let point = |r: &mut rand_chacha::ChaCha8Rng| {
        let v: Vec<f64> = cfg
            .domain
            .lo
            .iter()
            .zip(&cfg.domain.hi)
            .map(|(a, b)| if a < b { r.gen_range(*a..=*b) } else { *a })
            .collect();
        vec_of(&v)
    };
    (0..count).map(|_| (point(&mut r), point(&mut r))).collect()
}

#[derive(Serialize)]
struct LipSummary {
    config: &'static str,
    fixed_point: Vec<f64>,
    iterations: usize,
    residual: f64,
}

fn numeric_lip(report: &mut Report, opts: &CaseOptions) -> Result<(), CaseError> {
    let envelope_slack = 1e-10;
    report.bound("envelope_slack", envelope_slack).bound("sampled_pairs", 100);
    for (name, text) in [
        ("lip-halve", data::LIP_HALVE),
        ("lip-affine", data::LIP_AFFINE),
        ("lip-root", data::LIP_ROOT),
    ] {
        let cfg = NumericConfig::from_json(text)?;
        report.input(name, &cfg);
        let family = cfg.family()?;
        let map = cfg.map()?;
        let gauge = PhiGauge::from(cfg.gauge);
        let f = |x: &DVector<f64>| map.apply(x);
        let samples = box_pairs(&cfg, opts.seed ^ 0x11f, 100);
        let maxiter = opts.nmax(cfg.maxiter);
        let tol = opts.tol.unwrap_or(cfg.tol);
        report.bound(&format!("{name}.tol"), tol);
        let settings = PhiSettings { gauge, tol, maxiter };
        let res = phi_iterate(&f, &family, &cfg.domain, &cfg.x0(), &samples, settings);
        match res {
            Ok(r) => {
                let p = vec_of(&r.fixed_point);
                let step = family.max_all(&(f(&p) - &p));
                let exact = map
                    .solve_fixed_point()
                    .map(|q| (q - &p).amax() < 1e-6)
                    .unwrap_or(false);
                report.push(
                    Check::fact(
                        format!("{name}: iteration converges within {maxiter} steps"),
                        r.residual < tol,
                        LipSummary {
                            config: name,
                            fixed_point: r.fixed_point.clone(),
                            iterations: r.iterations,
                            residual: r.residual,
                        },
                    )
                    .detail(format!("{} iterations, residual {:e}", r.iterations, r.residual))
                    .reverified(step < 10.0 * tol && exact),
                );
            }
            Err(e) => {
                report.push(
                    Check::new(
                        format!("{name}: iteration converges within {maxiter} steps"),
                        Outcome::Proved,
                        Outcome::Refuted,
                    )
                    .detail(e.to_string()),
                );
            }
        }
        let n = opts.nmax(60);
        let v = verify_pairwise_convergence(&f, &samples, &family, n, tol.max(1e-9) * 10.0, Some((gauge, envelope_slack)));
        let mut c = Check::from_verdict(format!("{name}: φⁿ envelope on sampled pairs"), Outcome::Proved, &v);
        if v.is_proved() {
            let holds = samples.iter().all(|(x, y)| {
                let (mut a, mut b) = (x.clone(), y.clone());
                (0..=n).all(|k| {
                    if k > 0 {
                        a = f(&a);
                        b = f(&b);
                    }
                    (0..family.len()).all(|i| {
                        family.eval(i, &(&a - &b))
                            <= gauge.iterate(family.eval(i, &(x - y)), k) + envelope_slack
                    })
                })
            });
            c = c.reverified(holds);
        }
        report.push(c);
    }
    Ok(())
}

fn numeric_lebesgue(report: &mut Report) -> Result<(), CaseError> {
    for (name, text, stride) in [("lebesgue-1d", data::LEBESGUE_1D, 1), ("lebesgue-2d", data::LEBESGUE_2D, 101)] {
        let cfg = NumericConfig::from_json(text)?;
        report.input(name, &cfg).bound(&format!("{name}.h"), cfg.h);
        let family = cfg.family()?;
        let cover = cfg.cover()?;
        let grid = cfg.domain.grid(cfg.h)?;
        let v = lebesgue_data(&family, &cover, &grid)?;
        let witness = match &v {
            Verdict::Proved(d) => serde_json::to_value(d).ok(),
            Verdict::Refuted(x) => Some(serde_json::json!({ "point": x.as_slice() })),
            Verdict::Unknown(e) => serde_json::to_value(e).ok(),
        };
        let eps = v.proved().map(|d| d.epsilon);
        let mut c = Check::fact(
            format!("{name}: Lebesgue number ≥ 0.09 at h = {}", cfg.h),
            eps.is_some_and(|e| e >= 0.09),
            witness,
        );
        if let Verdict::Proved(d) = &v {
            c = c
                .detail(format!("ε = {:.4}", d.epsilon))
                .reverified(verify_lebesgue(&family, &cover, &grid, d, stride));
        }
        report.push(c);
    }
    Ok(())
}

fn monoid(report: &mut Report) -> Result<(), CaseError> {
    let z4 = FiniteMonoid::cyclic_additive(4);
    let double: Vec<usize> = (0..4).map(|x| 2 * x % 4).collect();
    let exhaustive_unique = |f: &[usize], z: usize| (0..f.len()).filter(|&x| f[x] == x).eq([z]);
    let v = monoid_fixed_point(&z4, &double)?;
    let c = Check::from_verdict("(ℤ₄,+), x ↦ 2x has fixed point 0", Outcome::Proved, &v);
    report.push(match v {
        Verdict::Proved(z) => c.reverified(z == 0 && exhaustive_unique(&double, z)),
        _ => c,
    });
    let v = monoid_fixed_point(&FiniteMonoid::trivial(), &[0])?;
    let c = Check::from_verdict("trivial monoid, identity", Outcome::Proved, &v);
    report.push(match v {
        Verdict::Proved(z) => c.reverified(z == 0),
        _ => c,
    });
    let bool_mul = FiniteMonoid::multiplicative(2);
    let v = monoid_fixed_point(&bool_mul, &[0, 1])?;
    report.push(
        Check::from_verdict("({0,1},·), identity", Outcome::Refuted, &v)
            .detail("the orbits of 0 and 1 never meet"),
    );
    let cover = vec![vec![0, 1], vec![2, 3]];
    let v = monoid_lebesgue(&z4, &cover)?;
    let ok = (0..4).all(|z| cover.iter().any(|u| z4.translate(z, &v).iter().all(|x| u.contains(x))));
    report.push(Check::fact("ℤ₄ cover {{0,1},{2,3}}: V = {0}", v == [0], &v).reverified(ok));
    Ok(())
}

fn beer(report: &mut Report, opts: &CaseOptions) -> Result<(), CaseError> {
    let bound = opts.nmax(100);
    report.bound("bound", bound);
    let mut values: Vec<f64> = (0..=20).map(|k| 2f64.powi(-k)).collect();
    values.push(0.0);
    let g = MetricGrid::from_reals(&values)?;
    let last = values.len() - 1;
    let halve: Vec<usize> = (0..values.len()).map(|i| (i + 1).min(last)).collect();
    let r = beer_check(&g, &halve, 0, bound)?;
    let ok = matches!(r, BeerResult::Found { point, .. } if point == last);
    report.push(
        Check::fact("halving grid reaches 0", ok, &r).reverified(halve[last] == last && g.label(last) == "0"),
    );
    let two = MetricGrid::from_reals(&[0.0, 0.5])?;
    let r = beer_check(&two, &[1, 0], 0, bound)?;
    let outcome = match r {
        BeerResult::NotFound { liminf, .. } if liminf > 0.0 => Outcome::Refuted,
        BeerResult::NotFound { .. } => Outcome::Unknown,
        BeerResult::Found { .. } => Outcome::Proved,
    };
    report.push(
        Check::new("2-cycle has a fixed point", Outcome::Refuted, outcome)
            .witness(&r)
            .detail("consecutive distances stay at the cycle gap"),
    );
    let r = beer_check(&two, &[0, 1], 1, bound)?;
    report.push(
        Check::fact(
            "identity stops at the start",
            r == BeerResult::Found { point: 1, steps: 0 },
            &r,
        )
        .reverified(two.d(1, 1) == 0.0),
    );
    Ok(())
}
