//! Deterministic and seeded random inputs: set expressions, closed sets,
//! open covers and cover sequences.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::setalg::{ChannelKind, GroundSpec, Point, SetExpr, SymSet};
use crate::topology::{cofinite_nat, Cover, CoverSequence, Space};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick_channel(rng: &mut impl Rng, g: &GroundSpec) -> Option<(Option<String>, ChannelKind)> {
    let chans = g.channels();
    if chans.is_empty() {
        return None;
    }
    let c = &chans[rng.gen_range(0..chans.len())];
    let name = (chans.len() > 1).then(|| c.name.clone());
    Some((name, c.kind))
}

fn values(rng: &mut impl Rng, kind: ChannelKind, range: i64) -> Vec<i64> {
    let lo = if kind == ChannelKind::Nat { 1 } else { -range };
    let n = rng.gen_range(0..5);
    (0..n).map(|_| rng.gen_range(lo..=range)).collect()
}

fn leaf(rng: &mut impl Rng, g: &GroundSpec, range: i64) -> SetExpr {
    let atoms = g.atoms();
    let Some((channel, kind)) = pick_channel(rng, g) else {
        return match rng.gen_range(0..3) {
            0 => SetExpr::Empty,
            1 => SetExpr::All,
            _ => SetExpr::Atoms(
                atoms
                    .choose_multiple(rng, atoms.len().min(1))
                    .cloned()
                    .collect(),
            ),
        };
    };
    match rng.gen_range(0..11) {
        0 => SetExpr::Empty,
        1 => SetExpr::All,
        2 => SetExpr::Finite {
            values: values(rng, kind, range),
            channel,
        },
        3 => SetExpr::Cofinite {
            values: values(rng, kind, range),
            channel,
        },
        4 => SetExpr::Odd { channel },
        5 => SetExpr::Even { channel },
        6 if kind == ChannelKind::Int => SetExpr::NegNat0 { channel },
        6 | 7 => SetExpr::Ge {
            t: rng.gen_range(-range..=range),
            channel,
        },
        8 => SetExpr::Le {
            t: rng.gen_range(-range..=range),
            channel,
        },
        9 => {
            let m = rng.gen_range(1..=6);
            let residues = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..m)).collect();
            SetExpr::Mod {
                m,
                residues,
                channel,
            }
        }
        _ if !atoms.is_empty() => {
            let k = rng.gen_range(1..=atoms.len());
            SetExpr::Atoms(atoms.choose_multiple(rng, k).cloned().collect())
        }
        _ => SetExpr::Odd { channel },
    }
}

/// A random expression tree of depth at most `depth` over `ground`, with
/// thresholds and listed values in `[-range, range]`.
pub fn random_set_expr(rng: &mut impl Rng, ground: &GroundSpec, depth: usize, range: i64) -> SetExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, ground, range);
    }
    let sub = |rng: &mut _| Box::new(random_set_expr(rng, ground, depth - 1, range));
    match rng.gen_range(0..4) {
        0 => SetExpr::Union(sub(rng), sub(rng)),
        1 => SetExpr::Inter(sub(rng), sub(rng)),
        2 => SetExpr::Compl(sub(rng)),
        _ => {
            let channel = pick_channel(rng, ground).and_then(|(c, _)| c);
            SetExpr::Shift {
                expr: sub(rng),
                k: rng.gen_range(-4..=4),
                channel,
            }
        }
    }
}

/// A random subset of the space's carrier.
pub fn random_subset(rng: &mut impl Rng, space: &Space, depth: usize) -> SymSet {
    let g = space.ground();
    random_set_expr(rng, g, depth, 12)
        .eval(g)
        .expect("generated expressions are well formed")
        .inter(space.whole())
}

/// A random closed set: the closure of a random subset.
pub fn random_closed_set(rng: &mut impl Rng, space: &Space) -> SymSet {
    space.closure(&random_subset(rng, space, 3))
}

/// `{X ∖ B} ∪ {(X ∖ B) ∪ {b} : b ∈ B}` for a finite block `B`. Open in any
/// T1 space.
pub fn punctured_cover(space: &Space, block: &[Point]) -> Cover {
    let g = space.ground();
    let b = SymSet::from_points(g, block).expect("block points lie in the ground");
    let main = space.whole().diff(&b);
    let mut elements = vec![main.clone()];
    for p in block {
        elements.push(main.union(&SymSet::singleton(g, p).expect("checked")));
    }
    Cover::new(elements)
}

/// `{X ∖ {x}, X ∖ {y}}` for every pair of distinct sample points.
pub fn point_separating_covers(space: &Space, points: &[Point]) -> Vec<Cover> {
    let g = space.ground();
    let mut out = Vec::new();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            if x == y {
                continue;
            }
            let minus = |p: &Point| space.whole().diff(&SymSet::singleton(g, p).expect("checked"));
            out.push(Cover::new(vec![minus(x), minus(y)]));
        }
    }
    out
}

/// Covers of the cofinite naturals: `ℕ ∖ F` plus, for each `x ∈ F`, a
/// cofinite patch `{x} ∪ (ℕ ∖ G_x)` with `G_x` random.
pub fn random_cofinite_covers(rng: &mut impl Rng, count: usize) -> Vec<Cover> {
    let sp = cofinite_nat();
    let g = sp.ground().clone();
    (0..count)
        .map(|_| {
            let f = distinct(rng, 1, 30, 1..=8);
            let mut elements = vec![SymSet::cofinite(&g, None, &f).expect("nat values")];
            for &x in &f {
                let mut gx = distinct(rng, 1, 40, 0..6);
                gx.retain(|&v| v != x);
                elements.push(SymSet::cofinite(&g, None, &gx).expect("nat values"));
            }
            Cover::new(elements)
        })
        .collect()
}

/// Between `count.start` and `count.end` distinct values from `lo..=hi`.
fn distinct(
    rng: &mut impl Rng,
    lo: i64,
    hi: i64,
    count: impl rand::distributions::uniform::SampleRange<usize>,
) -> Vec<i64> {
    let n = rng.gen_range(count);
    let mut pool: Vec<i64> = (lo..=hi).collect();
    pool.shuffle(rng);
    pool.truncate(n);
    pool.sort_unstable();
    pool
}

/// Covers of the integer example space. One element holds all of `-ℕ₀`
/// except a few points `J` together with a cofinite part of `ℕ`; each
/// `j ∈ J` gets its own element `{j} ∪ (ℕ ∖ G_j)`; the remaining positive
/// points are covered by singletons.
pub fn random_example3_covers(rng: &mut impl Rng, space: &Space, count: usize) -> Vec<Cover> {
    let g = space.ground().clone();
    let pos = |vals: &[i64]| {
        SymSet::ge(&g, None, 1)
            .expect("int channel")
            .diff(&SymSet::finite(&g, None, vals).expect("int channel"))
    };
    (0..count)
        .map(|_| {
            let f = distinct(rng, 1, 20, 0..6);
            let j = distinct(rng, -10, 0, 0..3);
            let neg = SymSet::negnat0(&g, None)
                .expect("int channel")
                .diff(&SymSet::finite(&g, None, &j).expect("int channel"));
            let mut elements = vec![neg.union(&pos(&f))];
            let mut missing = f.clone();
            for &x in &j {
                let gx = distinct(rng, 1, 20, 0..6);
                missing.extend(&gx);
                elements.push(SymSet::finite(&g, None, &[x]).expect("int channel").union(&pos(&gx)));
            }
            missing.sort_unstable();
            missing.dedup();
            for &x in &missing {
                elements.push(SymSet::finite(&g, None, &[x]).expect("int channel"));
            }
            Cover::new(elements)
        })
        .collect()
}

/// Covers of `tower(k)` built from atom-bearing elements: each atom sits
/// in an element with a cofinite trace on every channel, and channel
/// points left out are covered by singletons or by their own channel.
pub fn random_tower_covers(rng: &mut impl Rng, space: &Space, count: usize) -> Vec<Cover> {
    let g = space.ground().clone();
    let chans: Vec<String> = g.channels().iter().map(|c| c.name.clone()).collect();
    (0..count)
        .map(|_| {
            let mut elements = Vec::new();
            let mut missing: Vec<Point> = Vec::new();
            for atom in g.atoms() {
                let mut e = SymSet::atoms(&g, &[atom]).expect("atom of the ground");
                for ch in &chans {
                    let f = distinct(rng, 1, 12, 0..4);
                    missing.extend(f.iter().map(|&v| Point::int(ch, v)));
                    e = e.union(&SymSet::cofinite(&g, Some(ch), &f).expect("nat values"));
                }
                elements.push(e.inter(space.whole()));
            }
            missing.sort();
            missing.dedup();
            for p in missing {
                elements.push(SymSet::singleton(&g, &p).expect("ground point"));
            }
            Cover::new(elements)
        })
        .collect()
}

/// The default tower cover: every atom together with all channel points
/// outside `{1..=block}`, plus singletons for the block.
pub fn tower_cover(space: &Space, block: i64) -> Cover {
    let g = space.ground();
    let mut main = SymSet::atoms(g, g.atoms()).expect("ground atoms");
    let mut elements = Vec::new();
    for c in g.channels() {
        let f: Vec<i64> = (1..=block).collect();
        main = main.union(&SymSet::cofinite(g, Some(&c.name), &f).expect("nat values"));
        for v in f {
            elements.push(SymSet::finite(g, Some(&c.name), &[v]).expect("nat values"));
        }
    }
    elements.insert(0, main.inter(space.whole()));
    Cover::new(elements)
}

/// A random cover for a catalog space, chosen by the space's shape.
/// Spaces without a dedicated family get a punctured cover with a random
/// block mixed with random open sets.
pub fn random_covers(rng: &mut impl Rng, space: &Space, count: usize) -> Vec<Cover> {
    match space.id() {
        "cofinite-nat" => random_cofinite_covers(rng, count),
        "example3-int" => random_example3_covers(rng, space, count),
        id if id.starts_with("tower:") => random_tower_covers(rng, space, count),
        _ => {
            let pts = space.sample_points(8);
            (0..count)
                .map(|_| {
                    let k = rng.gen_range(1..=pts.len().clamp(1, 5));
                    let block: Vec<Point> = pts
                        .choose_multiple(rng, k)
                        .cloned()
                        .collect();
                    let mut cover = punctured_cover(space, &block);
                    for _ in 0..rng.gen_range(0..3) {
                        let s = random_subset(rng, space, 3);
                        let open = space.interior(&s);
                        if !open.is_empty() {
                            cover.elements.push(open);
                        }
                    }
                    cover
                })
                .collect()
        }
    }
}

/// Distinct pairs drawn from the atoms and the channel values in
/// `[-radius, radius]` of the space.
pub fn random_pairs(rng: &mut impl Rng, space: &Space, count: usize, radius: i64) -> Vec<(Point, Point)> {
    let pool = space.whole().enumerate_window(-radius, radius);
    assert!(pool.len() >= 2, "space {} has fewer than two points in the window", space.id());
    (0..count)
        .map(|_| {
            let pair: Vec<&Point> = pool.choose_multiple(rng, 2).collect();
            (pair[0].clone(), pair[1].clone())
        })
        .collect()
}

/// An open set of the thm8 space containing `a`: `{a} ∪ (ℕ ∖ F)`, sometimes
/// with `b` and a few odd points added.
pub fn random_thm8_open_with_a(rng: &mut impl Rng, space: &Space) -> SymSet {
    let g = space.ground();
    let f = distinct(rng, 1, 30, 0..6);
    let mut s = SymSet::atoms(g, &["a"])
        .expect("thm8 atom")
        .union(&SymSet::cofinite(g, Some("n"), &f).expect("nat values"));
    if rng.gen_bool(0.3) {
        s = s.union(&SymSet::atoms(g, &["b"]).expect("thm8 atom"));
    }
    let odd: Vec<i64> = distinct(rng, 0, 10, 0..3).iter().map(|k| 2 * k + 1).collect();
    s.union(&SymSet::finite(g, Some("n"), &odd).expect("nat values"))
}

/// `𝒰_i = punctured_cover({1, ..., i + 1})` on the cofinite naturals.
pub fn cech_sequence_cofinite() -> CoverSequence {
    let sp = cofinite_nat();
    CoverSequence::new("punctured-blocks", move |i| {
        let block: Vec<Point> = (1..=i as i64 + 1).map(|v| Point::int("n", v)).collect();
        punctured_cover(&sp, &block)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{example3_int, thm8_space, tower};

    #[test]
    fn generated_covers_are_open_covers() {
        let mut r = rng(7);
        for c in random_cofinite_covers(&mut r, 20) {
            assert!(c.is_cover(&cofinite_nat()));
        }
        let e3 = example3_int();
        for c in random_example3_covers(&mut r, &e3, 20) {
            assert!(c.is_cover(&e3));
        }
        let t = tower(1);
        for c in random_tower_covers(&mut r, &t, 20) {
            assert!(c.is_cover(&t));
        }
        assert!(tower_cover(&t, 4).is_cover(&t));
        let t8 = thm8_space();
        for c in random_covers(&mut r, &t8, 20) {
            assert!(c.is_cover(&t8));
        }
        for c in point_separating_covers(&t8, &t8.sample_points(4)) {
            assert!(c.is_cover(&t8));
        }
        let seq = cech_sequence_cofinite();
        for i in 1..6 {
            assert!(seq.cover(i).is_cover(&cofinite_nat()));
        }
    }

    #[test]
    fn random_exprs_evaluate() {
        let mut r = rng(1);
        for sp in [cofinite_nat(), example3_int(), thm8_space(), tower(2)] {
            for _ in 0..50 {
                let e = random_set_expr(&mut r, sp.ground(), 4, 10);
                assert!(e.eval(sp.ground()).is_ok(), "{e}");
                assert!(sp.is_closed(&random_closed_set(&mut r, &sp)));
            }
        }
    }
}
