//! Spaces, covers, separation, brackets and finite Hausdorff rank.

pub mod catalog;
mod product;
mod space;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use catalog::{
    catalog_entries, cofinite_nat, discrete, example3_int, lookup, parse_covers, parse_pairs,
    space_by_id, thm8_space, tower, tower_point, CatalogSpace,
};
pub use product::{Product, RectSet};
pub use space::{OpenRule, PointClass, Space, SpaceFlags};

use crate::error::VerifyError;
use crate::setalg::{Point, SymSet};
use crate::verdict::Verdict;

/// The Boolean operations shared by every set representation.
pub trait SetAlgebra: Clone + PartialEq + fmt::Debug {
    fn union(&self, other: &Self) -> Self;
    fn inter(&self, other: &Self) -> Self;
    fn diff(&self, other: &Self) -> Self;
    fn is_empty(&self) -> bool;

    fn is_subset(&self, other: &Self) -> bool {
        self.diff(other).is_empty()
    }
}

impl SetAlgebra for SymSet {
    fn union(&self, other: &Self) -> Self {
        SymSet::union(self, other)
    }

    fn inter(&self, other: &Self) -> Self {
        SymSet::inter(self, other)
    }

    fn diff(&self, other: &Self) -> Self {
        SymSet::diff(self, other)
    }

    fn is_empty(&self) -> bool {
        SymSet::is_empty(self)
    }
}

/// Operations available on single spaces and on products alike.
pub trait Topology: Clone {
    type Set: SetAlgebra;
    type Pt: Clone + PartialEq + fmt::Debug;

    fn whole(&self) -> Self::Set;
    fn set_contains(&self, s: &Self::Set, p: &Self::Pt) -> bool;
    fn singleton(&self, p: &Self::Pt) -> Self::Set;
    fn closure(&self, s: &Self::Set) -> Self::Set;
    fn is_open(&self, s: &Self::Set) -> bool;
    fn can_separate(&self, p: &Self::Pt, q: &Self::Pt) -> bool;
    fn bracket(&self, p: &Self::Pt) -> Self::Set;
    /// The subspace carried by `bracket(p)`.
    fn bracket_subspace(&self, p: &Self::Pt) -> Self;
    /// One point per registered symmetry class.
    fn representatives(&self) -> Vec<Self::Pt>;
    fn is_hausdorff(&self) -> bool;
    fn sample_points(&self, radius: i64) -> Vec<Self::Pt>;
    fn point_label(&self, p: &Self::Pt) -> String;

    fn interior(&self, s: &Self::Set) -> Self::Set {
        let whole = self.whole();
        whole.diff(&self.closure(&whole.diff(s)))
    }

    fn is_closed(&self, s: &Self::Set) -> bool {
        self.closure(s) == *s
    }
}

impl Topology for Space {
    type Set = SymSet;
    type Pt = Point;

    fn whole(&self) -> SymSet {
        Space::whole(self).clone()
    }

    fn set_contains(&self, s: &SymSet, p: &Point) -> bool {
        s.contains(p)
    }

    fn singleton(&self, p: &Point) -> SymSet {
        SymSet::singleton(self.ground(), p).expect("point of the space")
    }

    fn closure(&self, s: &SymSet) -> SymSet {
        Space::closure(self, s)
    }

    fn is_open(&self, s: &SymSet) -> bool {
        Space::is_open(self, s)
    }

    fn can_separate(&self, p: &Point, q: &Point) -> bool {
        Space::can_separate(self, p, q)
    }

    fn bracket(&self, p: &Point) -> SymSet {
        Space::bracket(self, p).expect("point of the space")
    }

    fn bracket_subspace(&self, p: &Point) -> Self {
        self.subspace(&Topology::bracket(self, p))
    }

    fn representatives(&self) -> Vec<Point> {
        Space::representatives(self)
    }

    fn is_hausdorff(&self) -> bool {
        Space::is_hausdorff(self)
    }

    fn sample_points(&self, radius: i64) -> Vec<Point> {
        Space::sample_points(self, radius)
    }

    fn point_label(&self, p: &Point) -> String {
        p.to_string()
    }

    fn interior(&self, s: &SymSet) -> SymSet {
        Space::interior(self, s)
    }

    fn is_closed(&self, s: &SymSet) -> bool {
        Space::is_closed(self, s)
    }
}

/// A finite Hausdorff rank, or the reason none was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankValue {
    Finite(usize),
    Undefined { witness: String, reason: String },
}

/// `0` for Hausdorff spaces, otherwise one more than the largest rank of a
/// representative's bracket subspace. A bracket equal to the whole space, or
/// recursion deeper than `depth_bound`, yields `Undefined`.
pub fn hausdorff_rank<T: Topology>(space: &T, depth_bound: usize) -> RankValue {
    if space.is_hausdorff() {
        return RankValue::Finite(0);
    }
    let whole = space.whole();
    let mut best = 0;
    for x in space.representatives() {
        let b = space.bracket(&x);
        if b == space.singleton(&x) {
            continue;
        }
        if b == whole {
            return RankValue::Undefined {
                witness: space.point_label(&x),
                reason: "bracket is the whole space".into(),
            };
        }
        if depth_bound <= 1 {
            return RankValue::Undefined {
                witness: space.point_label(&x),
                reason: "depth bound exhausted".into(),
            };
        }
        match hausdorff_rank(&space.bracket_subspace(&x), depth_bound - 1) {
            RankValue::Finite(r) => best = best.max(r),
            undefined => return undefined,
        }
    }
    RankValue::Finite(best + 1)
}

/// A finite family of open sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub elements: Vec<SymSet>,
}

impl Cover {
    pub fn new(elements: Vec<SymSet>) -> Self {
        Cover { elements }
    }

    /// Every element open and the union the whole space.
    pub fn is_cover(&self, space: &Space) -> bool {
        let union = self
            .elements
            .iter()
            .fold(space.empty_set(), |acc, e| acc.union(e));
        self.elements.iter().all(|e| space.is_open(e)) && space.whole().is_subset(&union)
    }

    /// Index of the first element containing `s`.
    pub fn element_containing(&self, s: &SymSet) -> Option<usize> {
        self.elements.iter().position(|e| s.is_subset(e))
    }
}

type CoverFn = dyn Fn(usize) -> Cover + Send + Sync;

/// An indexed sequence of covers `i ↦ 𝒰_i`, `i ≥ 1`.
#[derive(Clone)]
pub struct CoverSequence {
    pub name: String,
    generator: Arc<CoverFn>,
}

impl fmt::Debug for CoverSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoverSequence({})", self.name)
    }
}

impl CoverSequence {
    pub fn new(
        name: impl Into<String>,
        generator: impl Fn(usize) -> Cover + Send + Sync + 'static,
    ) -> Self {
        CoverSequence {
            name: name.into(),
            generator: Arc::new(generator),
        }
    }

    pub fn cover(&self, i: usize) -> Cover {
        (self.generator)(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketCoverReport {
    pub pairs_checked: usize,
    pub hypothesis_held: usize,
}

/// For each sampled pair `u ≠ v` of `carrier` with `carrier ⊆ [u] ∪ [v]`,
/// checks that `u` and `v` separate inside the subspace on `carrier`.
pub fn check_bracket_cover_hausdorff(
    space: &Space,
    carrier: &SymSet,
    sample_pairs: &[(Point, Point)],
) -> Result<Verdict<BracketCoverReport, (Point, Point)>, VerifyError> {
    if !space.is_locally_hausdorff() {
        return Err(VerifyError::Precondition(format!(
            "space {} is not locally Hausdorff",
            space.id()
        )));
    }
    let sub = space.subspace(carrier);
    let mut report = BracketCoverReport {
        pairs_checked: 0,
        hypothesis_held: 0,
    };
    for (u, v) in sample_pairs {
        if u == v || !carrier.contains(u) || !carrier.contains(v) {
            continue;
        }
        report.pairs_checked += 1;
        let cover = space.bracket(u)?.union(&space.bracket(v)?);
        if !carrier.is_subset(&cover) {
            continue;
        }
        report.hypothesis_held += 1;
        if !sub.can_separate(u, v) {
            return Ok(Verdict::Refuted((u.clone(), v.clone())));
        }
    }
    if report.pairs_checked == 0 {
        return Ok(Verdict::unknown(
            sample_pairs.len(),
            "no sampled pair of distinct carrier points",
        ));
    }
    Ok(Verdict::Proved(report))
}
