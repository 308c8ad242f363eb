use std::sync::Arc;

use serde::Serialize;

use crate::error::SetError;
use crate::setalg::{GroundSpec, Point, SymSet};

/// A block of points sharing one neighbourhood shape.
///
/// Every point `p` of `members` has the basic neighbourhoods
/// `{p} ∪ (tail ∖ F)` for finite `F`. All catalog spaces are described this
/// way, so separation, closure and openness reduce to finiteness questions
/// about tails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointClass {
    pub members: SymSet,
    pub tail: SymSet,
}

/// Closed-form open-set rules for catalog spaces. `Schema` derives openness
/// from the point classes alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpenRule {
    Discrete,
    CofiniteNat,
    Example3,
    Thm8,
    Schema,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceFlags {
    pub first_countable: bool,
    pub compact: bool,
}

/// A countable T1 space given by point classes over a carrier set.
#[derive(Debug, Clone)]
pub struct Space {
    id: String,
    carrier: SymSet,
    classes: Vec<PointClass>,
    rule: OpenRule,
    flags: SpaceFlags,
}

impl Space {
    /// Classes are intersected with `carrier`; empty classes are dropped.
    pub(crate) fn from_classes(
        id: impl Into<String>,
        carrier: SymSet,
        classes: Vec<PointClass>,
        rule: OpenRule,
        flags: SpaceFlags,
    ) -> Self {
        let classes = classes
            .into_iter()
            .map(|c| PointClass {
                members: c.members.inter(&carrier),
                tail: c.tail.inter(&carrier),
            })
            .filter(|c| !c.members.is_empty())
            .collect();
        Space {
            id: id.into(),
            carrier,
            classes,
            rule,
            flags,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn ground(&self) -> &Arc<GroundSpec> {
        self.carrier.ground()
    }

    /// The set of all points of the space.
    pub fn whole(&self) -> &SymSet {
        &self.carrier
    }

    pub fn classes(&self) -> &[PointClass] {
        &self.classes
    }

    pub fn rule(&self) -> OpenRule {
        self.rule
    }

    pub fn flags(&self) -> SpaceFlags {
        self.flags
    }

    pub fn empty_set(&self) -> SymSet {
        SymSet::empty(self.ground())
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.carrier.contains(p)
    }

    pub fn check_point(&self, p: &Point) -> Result<(), SetError> {
        self.ground().check_point(p)?;
        if self.contains_point(p) {
            Ok(())
        } else {
            Err(SetError::NotInCarrier(p.to_string()))
        }
    }

    pub fn class_of(&self, p: &Point) -> Option<&PointClass> {
        self.classes.iter().find(|c| c.members.contains(p))
    }

    fn tail_of(&self, p: &Point) -> SymSet {
        self.class_of(p)
            .map(|c| c.tail.clone())
            .unwrap_or_else(|| self.empty_set())
    }

    /// The smallest basic neighbourhood of `p` after removing `exclude`.
    pub fn basic_nbhd(&self, p: &Point, exclude: &SymSet) -> Result<SymSet, SetError> {
        let single = SymSet::singleton(self.ground(), p)?;
        Ok(single.union(&self.tail_of(p).diff(exclude)))
    }

    /// Openness decided from the point classes: `S` is open iff every class
    /// meeting `S` has its tail inside `S` up to finitely many points.
    pub fn schema_is_open(&self, s: &SymSet) -> bool {
        let s = s.inter(&self.carrier);
        self.classes
            .iter()
            .filter(|c| !c.members.inter(&s).is_empty())
            .all(|c| c.tail.diff(&s).is_finite())
    }

    /// Openness by the catalog's closed-form rule.
    pub fn is_open(&self, s: &SymSet) -> bool {
        if !s.is_subset(&self.carrier) {
            return false;
        }
        let g = self.ground();
        match self.rule {
            OpenRule::Discrete => true,
            OpenRule::CofiniteNat => s.is_empty() || self.carrier.diff(s).is_finite(),
            OpenRule::Example3 => {
                let neg = SymSet::negnat0(g, None).expect("example3 has a channel");
                let nat = SymSet::ge(g, None, 1).expect("example3 has a channel");
                s.inter(&neg).is_empty() || nat.diff(s).is_finite()
            }
            OpenRule::Thm8 => {
                let odd = SymSet::odd(g, None).expect("thm8 has a channel");
                let nat = SymSet::whole_channel(g, 0);
                let ab = SymSet::atoms(g, &["a", "b"]).expect("thm8 has atoms a, b");
                s.is_subset(&odd)
                    || (s.is_subset(&nat) && odd.diff(s).is_finite())
                    || (!s.inter(&ab).is_empty() && self.carrier.diff(s).is_finite())
            }
            OpenRule::Schema => self.schema_is_open(s),
        }
    }

    /// `cl(S) = S ∪ ⋃ {members of classes whose tail meets S infinitely}`.
    pub fn closure(&self, s: &SymSet) -> SymSet {
        let s = s.inter(&self.carrier);
        self.classes
            .iter()
            .filter(|c| !c.tail.inter(&s).is_finite())
            .fold(s.clone(), |acc, c| acc.union(&c.members))
    }

    pub fn interior(&self, s: &SymSet) -> SymSet {
        self.carrier.diff(&self.closure(&self.carrier.diff(s)))
    }

    pub fn is_closed(&self, s: &SymSet) -> bool {
        s.is_subset(&self.carrier) && self.closure(s) == *s
    }

    /// Two points separate iff their neighbourhood tails meet finitely.
    pub fn can_separate(&self, p: &Point, q: &Point) -> bool {
        p != q && self.tail_of(p).inter(&self.tail_of(q)).is_finite()
    }

    /// `[p]`: the points that cannot be separated from `p`, together with `p`.
    pub fn bracket(&self, p: &Point) -> Result<SymSet, SetError> {
        let tp = self.tail_of(p);
        let single = SymSet::singleton(self.ground(), p)?;
        Ok(self
            .classes
            .iter()
            .filter(|c| !c.tail.inter(&tp).is_finite())
            .fold(single, |acc, c| acc.union(&c.members)))
    }

    pub fn subspace(&self, carrier: &SymSet) -> Space {
        let carrier = carrier.inter(&self.carrier);
        Space::from_classes(
            format!("subspace:{}:{}", self.id, carrier.to_expr()),
            carrier,
            self.classes.clone(),
            OpenRule::Schema,
            SpaceFlags {
                compact: false,
                ..self.flags
            },
        )
    }

    /// Disjoint sum; names get `l.` and `r.` prefixes.
    pub fn sum(left: &Space, right: &Space) -> Space {
        let ground = GroundSpec::sum(left.ground(), right.ground());
        let embed = |s: &SymSet, side: &str| {
            s.transport(&ground, |n| Some(format!("{side}.{n}")))
                .expect("sum ground contains every summand name")
        };
        let carrier = embed(&left.carrier, "l").union(&embed(&right.carrier, "r"));
        let classes = left
            .classes
            .iter()
            .map(|c| (c, "l"))
            .chain(right.classes.iter().map(|c| (c, "r")))
            .map(|(c, side)| PointClass {
                members: embed(&c.members, side),
                tail: embed(&c.tail, side),
            })
            .collect();
        Space::from_classes(
            format!("sum:{},{}", left.id, right.id),
            carrier,
            classes,
            OpenRule::Schema,
            SpaceFlags {
                first_countable: left.flags.first_countable && right.flags.first_countable,
                compact: left.flags.compact && right.flags.compact,
            },
        )
    }

    /// One point from each class.
    pub fn representatives(&self) -> Vec<Point> {
        self.classes
            .iter()
            .filter_map(|c| c.members.any_element())
            .collect()
    }

    /// Points of every class near the origin plus a far tail point of each.
    pub fn sample_points(&self, radius: i64) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .classes
            .iter()
            .flat_map(|c| c.members.sample_points(radius))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_hausdorff(&self) -> bool {
        self.inseparable_class_pair(|_| true).is_none()
    }

    /// Classes `(i, j)` containing two distinct points whose tails meet
    /// infinitely, restricted to classes accepted by `keep`.
    fn inseparable_class_pair(&self, keep: impl Fn(&PointClass) -> bool) -> Option<(usize, usize)> {
        for (i, ci) in self.classes.iter().enumerate() {
            if !keep(ci) {
                continue;
            }
            for (j, cj) in self.classes.iter().enumerate().skip(i) {
                if !keep(cj) {
                    continue;
                }
                if i == j && ci.members.cardinality_if_finite() == Some(1) {
                    continue;
                }
                if !ci.tail.inter(&cj.tail).is_finite() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Whether some neighbourhood of `p` is Hausdorff as a subspace.
    ///
    /// Shrinking `{p} ∪ tail` by a finite set can only discard finite
    /// classes, so it is enough to drop every finite class other than `p`'s
    /// own point and test what remains.
    pub fn is_locally_hausdorff_at(&self, p: &Point) -> Result<bool, SetError> {
        let nbhd = self.basic_nbhd(p, &self.empty_set())?;
        let sub = self.subspace(&nbhd);
        let single = SymSet::singleton(self.ground(), p)?;
        let mut keep = sub.empty_set();
        for c in &sub.classes {
            if c.members.is_finite() {
                keep = keep.union(&c.members.inter(&single));
            } else {
                keep = keep.union(&c.members);
            }
        }
        Ok(sub.subspace(&keep).is_hausdorff())
    }

    /// Locally Hausdorff at every representative.
    pub fn is_locally_hausdorff(&self) -> bool {
        self.representatives()
            .iter()
            .all(|p| self.is_locally_hausdorff_at(p).unwrap_or(false))
    }

    /// Every representative singleton is closed.
    pub fn is_t1(&self) -> bool {
        self.representatives().iter().all(|p| {
            SymSet::singleton(self.ground(), p)
                .map(|s| self.is_closed(&s))
                .unwrap_or(false)
        })
    }

    /// Checks the consistency condition that makes the classes a
    /// neighbourhood system: if a class `i` meets the tail of class `j`,
    /// then `tail_i ∖ tail_j` is finite.
    pub fn is_coherent(&self) -> bool {
        self.classes.iter().all(|ci| {
            self.classes.iter().all(|cj| {
                ci.members.inter(&cj.tail).is_empty() || ci.tail.diff(&cj.tail).is_finite()
            })
        })
    }
}
