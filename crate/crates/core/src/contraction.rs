//! Verifiers for topological contractions, condition (⋆), weak and weak+
//! contractions, and the single-orbit co-location hypothesis.
//!
//! Each verifier splits its work into obligations (one per cover, pair, or
//! cover × pair), evaluates them in parallel, and merges the results in
//! input order: any refutation refutes, otherwise any unknown leaves the
//! verdict unknown, otherwise the obligations' witnesses form the proof.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MapError, VerifyError};
use crate::maps::{OrbitDescriptor, SpaceMap};
use crate::setalg::{lcm, Point, SymSet};
use crate::topology::Cover;
use crate::verdict::{Exhausted, Verdict};

/// One discharged obligation: at step `n` the relevant set lies in element
/// `element_index` of cover `cover_index` (for weak+: from step `n` on).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obligation {
    pub cover_index: usize,
    pub pair: Option<(Point, Point)>,
    pub n: usize,
    pub element_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionProof {
    /// Largest `n` over all obligations.
    pub depth: usize,
    pub obligations: Vec<Obligation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub cover_index: Option<usize>,
    pub pair: Option<(Point, Point)>,
    pub reason: String,
}

pub type ContractionVerdict = Verdict<ContractionProof, Refutation>;

type ObligationResult = Verdict<Obligation, Refutation>;

/// Descriptor validation reaches this many steps at least.
const ORBIT_BOUND: usize = 1000;

fn merge(results: Vec<ObligationResult>) -> ContractionVerdict {
    let mut obligations = Vec::with_capacity(results.len());
    let mut unknown: Option<Exhausted> = None;
    for r in results {
        match r {
            Verdict::Proved(o) => obligations.push(o),
            Verdict::Refuted(w) => return Verdict::Refuted(w),
            Verdict::Unknown(e) => {
                unknown.get_or_insert(e);
            }
        }
    }
    if let Some(e) = unknown {
        return Verdict::Unknown(e);
    }
    let depth = obligations.iter().map(|o| o.n).max().unwrap_or(0);
    Verdict::Proved(ContractionProof { depth, obligations })
}

fn validate_covers(f: &SpaceMap, covers: &[Cover]) -> Result<(), VerifyError> {
    for (i, c) in covers.iter().enumerate() {
        if !c.is_cover(f.space()) {
            return Err(VerifyError::Precondition(format!(
                "cover {i} is not an open cover of {}",
                f.space().id()
            )));
        }
    }
    Ok(())
}

fn require_symbolic(f: &SpaceMap) -> Result<(), VerifyError> {
    if f.has_symbolic_image() {
        Ok(())
    } else {
        Err(MapError::Unsupported(f.id().to_string()).into())
    }
}

fn fits(cover: &Cover, points: &[&Point]) -> Option<usize> {
    cover
        .elements
        .iter()
        .position(|e| points.iter().all(|p| e.contains(p)))
}

/// `fⁿ[X] ⊆ U_α` for some `n ≤ nmax` and `α`, for every cover.
pub fn check_topological_contraction(
    f: &SpaceMap,
    covers: &[Cover],
    nmax: usize,
) -> Result<ContractionVerdict, VerifyError> {
    require_symbolic(f)?;
    validate_covers(f, covers)?;
    let chain = f.image_chain(nmax)?;
    let results = covers
        .par_iter()
        .enumerate()
        .map(|(ci, cover)| {
            for (n, s) in chain.sets.iter().enumerate() {
                if let Some(e) = cover.element_containing(s) {
                    return Verdict::Proved(Obligation {
                        cover_index: ci,
                        pair: None,
                        n,
                        element_index: e,
                    });
                }
            }
            if chain.stabilized {
                Verdict::Refuted(Refutation {
                    cover_index: Some(ci),
                    pair: None,
                    reason: format!(
                        "image chain stabilizes at {} which lies in no element",
                        chain.sets.last().expect("nonempty")
                    ),
                })
            } else {
                Verdict::unknown(nmax, format!("cover {ci}: no fitting image up to n = {nmax}"))
            }
        })
        .collect();
    Ok(merge(results))
}

/// Condition (⋆): for each pair `x ≠ y` some `fⁿ[X]` omits `x` or `y`.
pub fn check_star(
    f: &SpaceMap,
    pairs: &[(Point, Point)],
    nmax: usize,
) -> Result<ContractionVerdict, VerifyError> {
    require_symbolic(f)?;
    let chain = f.image_chain(nmax)?;
    let results = pairs
        .par_iter()
        .map(|(x, y)| {
            let pair = Some((x.clone(), y.clone()));
            if x == y {
                return Verdict::Refuted(Refutation {
                    cover_index: None,
                    pair,
                    reason: "pair points coincide".into(),
                });
            }
            for (n, s) in chain.sets.iter().enumerate() {
                if !s.contains(x) || !s.contains(y) {
                    // element 0: omits x; element 1: omits y
                    let element_index = usize::from(s.contains(x));
                    return Verdict::Proved(Obligation {
                        cover_index: 0,
                        pair,
                        n,
                        element_index,
                    });
                }
            }
            if chain.stabilized {
                Verdict::Refuted(Refutation {
                    cover_index: None,
                    pair,
                    reason: "every image in the stabilized chain contains both points".into(),
                })
            } else {
                Verdict::unknown(nmax, format!("pair ({x}, {y}) undecided"))
            }
        })
        .collect();
    Ok(merge(results))
}

/// The two orbits of a pair, stored up to `nmax`, plus their descriptors
/// when available.
struct PairOrbits {
    xs: Vec<Point>,
    ys: Vec<Point>,
    dx: Option<OrbitDescriptor>,
    dy: Option<OrbitDescriptor>,
}

impl PairOrbits {
    fn new(f: &SpaceMap, x: &Point, y: &Point, nmax: usize) -> Result<Self, MapError> {
        let bound = ORBIT_BOUND.max(nmax);
        Ok(PairOrbits {
            xs: f.orbit(x, nmax)?,
            ys: f.orbit(y, nmax)?,
            dx: f.orbit_descriptor(x, bound).ok(),
            dy: f.orbit_descriptor(y, bound).ok(),
        })
    }

    /// When both orbits are eventually cyclic, the pair sequence is periodic
    /// from this index on with period `lcm` of the cycle lengths; returns
    /// the index plus one full period.
    fn cyclic_horizon(&self) -> Option<usize> {
        match (&self.dx, &self.dy) {
            (
                Some(OrbitDescriptor::EventuallyCyclic {
                    prefix: px,
                    cycle: cx,
                }),
                Some(OrbitDescriptor::EventuallyCyclic {
                    prefix: py,
                    cycle: cy,
                }),
            ) => Some(px.len().max(py.len()) + lcm(cx.len(), cy.len())),
            _ => None,
        }
    }
}

/// First `n` in `0..limit` with `fⁿ(x)` and `fⁿ(y)` in one element.
fn first_colocated(
    cover: &Cover,
    limit: usize,
    at: impl Fn(usize) -> (Point, Point),
) -> Option<(usize, usize)> {
    (0..limit).find_map(|n| {
        let (a, b) = at(n);
        fits(cover, &[&a, &b]).map(|e| (n, e))
    })
}

/// For each cover and pair, some `n ≤ nmax` puts `fⁿ(x), fⁿ(y)` in one
/// element. Pairs whose orbits are both eventually cyclic are decided
/// exactly.
pub fn check_weak_contraction(
    f: &SpaceMap,
    covers: &[Cover],
    pairs: &[(Point, Point)],
    nmax: usize,
) -> Result<ContractionVerdict, VerifyError> {
    validate_covers(f, covers)?;
    let orbits: Vec<PairOrbits> = pairs
        .par_iter()
        .map(|(x, y)| PairOrbits::new(f, x, y, nmax))
        .collect::<Result<_, _>>()?;
    let jobs: Vec<(usize, usize)> = (0..covers.len())
        .flat_map(|c| (0..pairs.len()).map(move |p| (c, p)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(ci, pi)| {
            let cover = &covers[ci];
            let o = &orbits[pi];
            let pair = Some(pairs[pi].clone());
            let hit = first_colocated(cover, nmax + 1, |n| (o.xs[n].clone(), o.ys[n].clone()))
                .or_else(|| {
                    let (dx, dy) = (o.dx.as_ref()?, o.dy.as_ref()?);
                    let h = o.cyclic_horizon()?;
                    first_colocated(cover, h, |n| (dx.point_at(n), dy.point_at(n)))
                });
            match (hit, o.cyclic_horizon()) {
                (Some((n, e)), _) => Verdict::Proved(Obligation {
                    cover_index: ci,
                    pair,
                    n,
                    element_index: e,
                }),
                (None, Some(h)) => Verdict::Refuted(Refutation {
                    cover_index: Some(ci),
                    pair,
                    reason: format!(
                        "both orbits are eventually cyclic and no step below the period horizon {h} co-locates them"
                    ),
                }),
                (None, None) => Verdict::unknown(
                    nmax,
                    format!("cover {ci}, pair {pi}: not co-located up to n = {nmax}"),
                ),
            }
        })
        .collect();
    Ok(merge(results))
}

/// Whether every orbit point from some step on lies in `u`, and from which
/// step. Exact: a cycle must lie in `u`; an arithmetic tail must eventually
/// stay in the periodic tail of `u`'s channel trace.
fn eventually_inside(u: &SymSet, d: &OrbitDescriptor) -> Option<usize> {
    let horizon = match d {
        OrbitDescriptor::EventuallyCyclic { prefix, cycle } => {
            if !cycle.iter().all(|p| u.contains(p)) {
                return None;
            }
            prefix.len() + cycle.len()
        }
        OrbitDescriptor::ArithmeticTail {
            prefix,
            channel,
            start,
            step,
        } => {
            let ci = u.ground().channel_index(channel)?;
            let (lo, hi, m) = u.channel_shape(ci);
            // Steps until the progression is past the thresholds for good.
            let t0 = if *step > 0 {
                ((hi - start).max(0) + step - 1) / step
            } else {
                ((start - lo).max(0) + (-step) - 1) / (-step)
            } as usize;
            // One full period of the progression modulo m.
            let horizon = prefix.len() + t0 + m;
            let tail_ok = (prefix.len() + t0..horizon).all(|n| u.contains(&d.point_at(n)));
            if !tail_ok {
                return None;
            }
            horizon
        }
    };
    let last_miss = (0..horizon).rev().find(|&n| !u.contains(&d.point_at(n)));
    Some(last_miss.map_or(0, |n| n + 1))
}

/// For each cover and pair there are `n₀` and one element containing
/// `fⁿ(x), fⁿ(y)` for all `n ≥ n₀`. Decided exactly from orbit descriptors;
/// unknown when a descriptor cannot be found.
pub fn check_weak_plus(
    f: &SpaceMap,
    covers: &[Cover],
    pairs: &[(Point, Point)],
) -> Result<ContractionVerdict, VerifyError> {
    validate_covers(f, covers)?;
    let descs: Vec<_> = pairs
        .par_iter()
        .map(|(x, y)| {
            (
                f.orbit_descriptor(x, ORBIT_BOUND),
                f.orbit_descriptor(y, ORBIT_BOUND),
            )
        })
        .collect();
    let jobs: Vec<(usize, usize)> = (0..covers.len())
        .flat_map(|c| (0..pairs.len()).map(move |p| (c, p)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(ci, pi)| {
            let pair = Some(pairs[pi].clone());
            let (dx, dy) = match &descs[pi] {
                (Ok(dx), Ok(dy)) => (dx, dy),
                (Err(e), _) | (_, Err(e)) => return Verdict::Unknown(e.clone()),
            };
            let best = covers[ci]
                .elements
                .iter()
                .enumerate()
                .filter_map(|(e, u)| {
                    let nx = eventually_inside(u, dx)?;
                    let ny = eventually_inside(u, dy)?;
                    Some((nx.max(ny), e))
                })
                .min();
            match best {
                Some((n, e)) => Verdict::Proved(Obligation {
                    cover_index: ci,
                    pair,
                    n,
                    element_index: e,
                }),
                None => Verdict::Refuted(Refutation {
                    cover_index: Some(ci),
                    pair,
                    reason: "no element eventually contains both orbits".into(),
                }),
            }
        })
        .collect();
    Ok(merge(results))
}

/// For each cover, some `n ≤ nmax` puts `fⁿ(x₀), fⁿ⁺¹(x₀)` in one element.
pub fn check_single_orbit_hypothesis(
    f: &SpaceMap,
    x0: &Point,
    covers: &[Cover],
    nmax: usize,
) -> Result<ContractionVerdict, VerifyError> {
    validate_covers(f, covers)?;
    let xs = f.orbit(x0, nmax + 1)?;
    let desc = f.orbit_descriptor(x0, ORBIT_BOUND.max(nmax)).ok();
    let results = covers
        .par_iter()
        .enumerate()
        .map(|(ci, cover)| {
            let mut hit = first_colocated(cover, nmax + 1, |n| (xs[n].clone(), xs[n + 1].clone()));
            let mut horizon = None;
            if let Some(OrbitDescriptor::EventuallyCyclic { prefix, cycle }) = &desc {
                let h = prefix.len() + cycle.len();
                horizon = Some(h);
                let d = desc.as_ref().expect("matched");
                hit = hit.or_else(|| first_colocated(cover, h, |n| (d.point_at(n), d.point_at(n + 1))));
            }
            match (hit, horizon) {
                (Some((n, e)), _) => Verdict::Proved(Obligation {
                    cover_index: ci,
                    pair: Some((xs[n].clone(), xs[n + 1].clone())),
                    n,
                    element_index: e,
                }),
                (None, Some(h)) => Verdict::Refuted(Refutation {
                    cover_index: Some(ci),
                    pair: None,
                    reason: format!("orbit is eventually cyclic; no step below {h} co-locates consecutive points"),
                }),
                (None, None) => Verdict::unknown(nmax, format!("cover {ci}: undecided up to n = {nmax}")),
            }
        })
        .collect();
    Ok(merge(results))
}

/// Re-checks a contraction proof by direct containment tests.
pub fn reverify_topological(
    f: &SpaceMap,
    covers: &[Cover],
    proof: &ContractionProof,
) -> Result<bool, MapError> {
    for o in &proof.obligations {
        let img = f.image_of_space(o.n)?;
        let Some(e) = covers.get(o.cover_index).and_then(|c| c.elements.get(o.element_index)) else {
            return Ok(false);
        };
        if !img.is_subset(e) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-checks a weak-contraction proof pointwise.
pub fn reverify_weak(
    f: &SpaceMap,
    covers: &[Cover],
    proof: &ContractionProof,
) -> Result<bool, MapError> {
    for o in &proof.obligations {
        let Some((x, y)) = &o.pair else {
            return Ok(false);
        };
        let Some(e) = covers.get(o.cover_index).and_then(|c| c.elements.get(o.element_index)) else {
            return Ok(false);
        };
        if !e.contains(&f.iterate(x, o.n)?) || !e.contains(&f.iterate(y, o.n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
