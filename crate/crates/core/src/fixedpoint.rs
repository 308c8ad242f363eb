//! Fixed-point engines: the nested-image chain, the Čech cover-sequence
//! runner, orbit search, the two-fixed-points incompatibility certificate
//! and window scans with structural tail certificates.

use serde::{Deserialize, Serialize};

use crate::contraction::{check_topological_contraction, check_weak_contraction, Refutation};
use crate::error::{MapError, VerifyError};
use crate::maps::{SpaceMap, TailRule};
use crate::setalg::{Point, SymSet};
use crate::topology::{CoverSequence, Space};
use crate::generators::point_separating_covers;
use crate::verdict::Verdict;

/// `fⁿ[X]` stabilized at a set that is not a single point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableSet(pub SymSet);

/// Iterates `X ⊇ f[X] ⊇ ...` until the chain stabilizes. A singleton
/// `{x}` yields `x` (checked to be fixed); any other stable set refutes.
pub fn nested_image_fixed_point(
    f: &SpaceMap,
    nmax: usize,
) -> Result<Verdict<Point, StableSet>, MapError> {
    let chain = f.image_chain(nmax)?;
    let last = chain.sets.last().expect("nonempty").clone();
    if !chain.stabilized {
        return Ok(Verdict::unknown(nmax, "image chain did not stabilize"));
    }
    if let Some([x]) = last.points_if_finite().as_deref() {
        if f.eval(x)? == *x {
            return Ok(Verdict::Proved(x.clone()));
        }
    }
    Ok(Verdict::Refuted(StableSet(last)))
}

/// One step of the Čech runner: `f^{n_i}[X]` lies in element
/// `element_index` of cover `cover_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub cover_index: usize,
    pub n_i: usize,
    pub element_index: usize,
    /// Re-checked by a fresh containment test.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CechRun {
    pub fixed_point: Point,
    pub audit: Vec<AuditEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CechFailure {
    /// Cover `i` is never absorbed by an image.
    Cover(Refutation),
    /// Every cover is absorbed but the image chain does not shrink to a
    /// point.
    Stable(StableSet, Vec<AuditEntry>),
}

/// For covers `𝒰_1, ..., 𝒰_covers` of the sequence finds `n_i` with
/// `f^{n_i}[X]` inside a member of `𝒰_i`, then returns the nested-image
/// fixed point with the audit trail.
pub fn cech_runner(
    space: &Space,
    sequence: &CoverSequence,
    f: &SpaceMap,
    covers: usize,
    nmax: usize,
) -> Result<Verdict<CechRun, CechFailure>, VerifyError> {
    if f.space().id() != space.id() {
        return Err(MapError::WrongSpace {
            map: f.id().to_string(),
            expected: f.space().id().to_string(),
            got: space.id().to_string(),
        }
        .into());
    }
    let mut audit = Vec::with_capacity(covers);
    for i in 1..=covers {
        let cover = sequence.cover(i);
        match check_topological_contraction(f, std::slice::from_ref(&cover), nmax)? {
            Verdict::Proved(proof) => {
                let o = &proof.obligations[0];
                let element = &cover.elements[o.element_index];
                let verified = f.image_of_space(o.n)?.is_subset(element);
                audit.push(AuditEntry {
                    cover_index: i,
                    n_i: o.n,
                    element_index: o.element_index,
                    verified,
                });
            }
            Verdict::Refuted(mut r) => {
                r.cover_index = Some(i);
                return Ok(Verdict::Refuted(CechFailure::Cover(r)));
            }
            Verdict::Unknown(e) => return Ok(Verdict::Unknown(e)),
        }
    }
    Ok(match nested_image_fixed_point(f, nmax)? {
        Verdict::Proved(fixed_point) => Verdict::Proved(CechRun { fixed_point, audit }),
        Verdict::Refuted(s) => Verdict::Refuted(CechFailure::Stable(s, audit)),
        Verdict::Unknown(e) => Verdict::Unknown(e),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitSearch {
    Found { point: Point, steps: usize },
    NotFound { bound: usize },
}

/// Follows the orbit of `x0` for at most `bound` steps looking for a point
/// with `f(p) = p`.
pub fn orbit_fixed_point(f: &SpaceMap, x0: &Point, bound: usize) -> Result<OrbitSearch, MapError> {
    let mut x = x0.clone();
    for steps in 0..bound.max(1) {
        let next = f.eval(&x)?;
        if next == x {
            return Ok(OrbitSearch::Found { point: x, steps });
        }
        x = next;
    }
    Ok(OrbitSearch::NotFound { bound: bound.max(1) })
}

/// Two fixed points `p ≠ q` defeat weak contraction for the cover
/// `{X ∖ {p}, X ∖ {q}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Incompatibility {
    pub p: Point,
    pub q: Point,
    pub weak_refutation: Refutation,
}

/// Certifies that two distinct fixed points are incompatible with weak
/// contraction. Refuted only if the weak check unexpectedly succeeds.
pub fn uniqueness_by_cover(
    f: &SpaceMap,
    p: &Point,
    q: &Point,
    nmax: usize,
) -> Result<Verdict<Incompatibility, String>, VerifyError> {
    if p == q {
        return Err(VerifyError::Precondition("the two points coincide".into()));
    }
    for x in [p, q] {
        if f.eval(x)? != *x {
            return Err(VerifyError::Precondition(format!("{x} is not a fixed point")));
        }
    }
    let covers = point_separating_covers(f.space(), &[p.clone(), q.clone()]);
    let pair = [(p.clone(), q.clone())];
    Ok(match check_weak_contraction(f, &covers, &pair, nmax)? {
        Verdict::Refuted(weak_refutation) => Verdict::Proved(Incompatibility {
            p: p.clone(),
            q: q.clone(),
            weak_refutation,
        }),
        Verdict::Proved(_) => Verdict::Refuted("the separating cover was absorbed".into()),
        Verdict::Unknown(e) => Verdict::Unknown(e),
    })
}

/// A tail of one channel shown to hold no fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailCertificate {
    pub rule: TailRule,
    /// Every checked tail point moved, starting at the rule's threshold.
    pub spot_checks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointScan {
    pub points: Vec<Point>,
    pub window: (i64, i64),
    pub tails: Vec<TailCertificate>,
    /// Channel tails beyond the window that no certificate covers.
    pub uncovered: Vec<String>,
}

impl FixedPointScan {
    /// The scan plus certificates account for every point of the space.
    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

const SPOT_CHECKS: i64 = 64;

/// All fixed points with channel values in `[lo, hi]` (and all atoms).
/// With `structural`, tail rules of the map are used to rule out fixed
/// points beyond the window; each certificate is spot-checked by direct
/// evaluation.
pub fn find_fixed_points(
    f: &SpaceMap,
    window: (i64, i64),
    structural: bool,
) -> Result<FixedPointScan, MapError> {
    let (lo, hi) = window;
    let space = f.space();
    let mut points = Vec::new();
    for p in space.whole().enumerate_window(lo, hi) {
        if f.eval(&p)? == p {
            points.push(p);
        }
    }
    let mut tails = Vec::new();
    let mut uncovered = Vec::new();
    for c in space.ground().channels() {
        let part = space.whole().channel_part(
            space.ground().channel_index(&c.name).expect("own channel"),
        );
        for upward in [true, false] {
            let edge = if upward { hi + 1 } else { lo - 1 };
            let beyond = if upward {
                SymSet::ge(space.ground(), Some(&c.name), edge)
            } else {
                SymSet::le(space.ground(), Some(&c.name), edge)
            }
            .expect("own channel");
            if part.inter(&beyond).is_empty() {
                continue;
            }
            let rule = structural
                .then(|| {
                    f.tail_rules().into_iter().find(|r| {
                        r.channel == c.name
                            && r.upward == upward
                            && r.covers(&Point::int(&c.name, edge))
                            && r.is_fixed_point_free()
                    })
                })
                .flatten();
            match rule {
                Some(rule) => {
                    let dir = if upward { 1 } else { -1 };
                    let mut checked = 0;
                    for t in 0..SPOT_CHECKS {
                        let p = Point::int(&c.name, edge + dir * t);
                        if space.contains_point(&p) {
                            let fp = f.eval(&p)?;
                            if fp != rule.apply(edge + dir * t) || fp == p {
                                return Err(MapError::TailRuleMismatch(format!(
                                    "{} at {p}",
                                    f.id()
                                )));
                            }
                            checked += 1;
                        }
                    }
                    tails.push(TailCertificate {
                        rule,
                        spot_checks: checked,
                    });
                }
                None => uncovered.push(format!(
                    "{}{}{edge}",
                    c.name,
                    if upward { " ≥ " } else { " ≤ " }
                )),
            }
        }
    }
    Ok(FixedPointScan {
        points,
        window,
        tails,
        uncovered,
    })
}

#[cfg(test)]
mod tests;
