//! Exact symbolic subsets of countable ground sets.
//!
//! A [`SymSet`] records explicit atom membership plus, for each integer
//! channel, an eventually periodic trace (periodic tails around a finite
//! window). The class is closed under the Boolean operations and shifts, and
//! the normal form makes semantic equality a structural comparison.

mod expr;
mod ground;
mod trace;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use expr::SetExpr;
pub use ground::{Channel, ChannelKind, GroundSpec, Point};
pub(crate) use trace::lcm;
use trace::Trace;

use crate::error::SetError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymSet {
    ground: Arc<GroundSpec>,
    atoms: BTreeSet<usize>,
    traces: Vec<Trace>,
}

impl fmt::Debug for SymSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymSet({})", self.to_expr())
    }
}

impl fmt::Display for SymSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

/// Serialized as its set expression, which re-parses over the same ground.
impl serde::Serialize for SymSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_expr())
    }
}

impl SymSet {
    pub fn empty(ground: &Arc<GroundSpec>) -> Self {
        SymSet {
            ground: ground.clone(),
            atoms: BTreeSet::new(),
            traces: vec![Trace::empty(); ground.channels().len()],
        }
    }

    pub fn all(ground: &Arc<GroundSpec>) -> Self {
        SymSet {
            ground: ground.clone(),
            atoms: (0..ground.atoms().len()).collect(),
            traces: ground.channels().iter().map(|c| Trace::full(c.kind)).collect(),
        }
    }

    pub fn atoms<S: AsRef<str>>(ground: &Arc<GroundSpec>, names: &[S]) -> Result<Self, SetError> {
        let mut s = Self::empty(ground);
        for n in names {
            let n = n.as_ref();
            let i = ground
                .atom_index(n)
                .ok_or_else(|| SetError::UnknownAtom(n.to_string()))?;
            s.atoms.insert(i);
        }
        Ok(s)
    }

    /// The finite set `values` on one channel (`None` selects the first).
    pub fn finite(
        ground: &Arc<GroundSpec>,
        channel: Option<&str>,
        values: &[i64],
    ) -> Result<Self, SetError> {
        let ci = ground.resolve_channel(channel)?;
        let kind = ground.channels()[ci].kind;
        let set: BTreeSet<i64> = values.iter().copied().collect();
        if let Some(&v) = set.iter().find(|&&v| !kind.contains(v)) {
            return Err(SetError::OutOfDomain {
                channel: ground.channels()[ci].name.clone(),
                value: v,
            });
        }
        let lo = set.first().copied().unwrap_or(0) - 1;
        let hi = set.last().copied().unwrap_or(0) + 1;
        Ok(Self::channel_from_predicate(ground, ci, 1, lo, hi, |x| set.contains(&x)))
    }

    /// The channel domain minus `values`; atoms and other channels excluded.
    pub fn cofinite(
        ground: &Arc<GroundSpec>,
        channel: Option<&str>,
        values: &[i64],
    ) -> Result<Self, SetError> {
        let ci = ground.resolve_channel(channel)?;
        let f = Self::finite(ground, channel, values)?;
        Ok(Self::whole_channel(ground, ci).diff(&f))
    }

    /// Every point of one channel.
    pub fn whole_channel(ground: &Arc<GroundSpec>, ci: usize) -> Self {
        let mut s = Self::empty(ground);
        s.traces[ci] = Trace::full(ground.channels()[ci].kind);
        s
    }

    /// Channel members congruent to one of `residues` modulo `m`.
    pub fn residues(
        ground: &Arc<GroundSpec>,
        channel: Option<&str>,
        m: i64,
        residues: &[i64],
    ) -> Result<Self, SetError> {
        if m < 1 {
            return Err(SetError::BadModulus(m));
        }
        let ci = ground.resolve_channel(channel)?;
        let rs: BTreeSet<i64> = residues.iter().map(|r| r.rem_euclid(m)).collect();
        Ok(Self::channel_from_predicate(ground, ci, m as usize, 0, 1, |x| {
            rs.contains(&x.rem_euclid(m))
        }))
    }

    pub fn odd(ground: &Arc<GroundSpec>, channel: Option<&str>) -> Result<Self, SetError> {
        Self::residues(ground, channel, 2, &[1])
    }

    pub fn even(ground: &Arc<GroundSpec>, channel: Option<&str>) -> Result<Self, SetError> {
        Self::residues(ground, channel, 2, &[0])
    }

    /// `{..., -2, -1, 0}` on an INT channel (empty on a NAT channel).
    pub fn negnat0(ground: &Arc<GroundSpec>, channel: Option<&str>) -> Result<Self, SetError> {
        Self::le(ground, channel, 0)
    }

    /// Channel members `>= t`.
    pub fn ge(ground: &Arc<GroundSpec>, channel: Option<&str>, t: i64) -> Result<Self, SetError> {
        let ci = ground.resolve_channel(channel)?;
        Ok(Self::channel_from_predicate(ground, ci, 1, t - 1, t, |x| x >= t))
    }

    /// Channel members `<= t`.
    pub fn le(ground: &Arc<GroundSpec>, channel: Option<&str>, t: i64) -> Result<Self, SetError> {
        let ci = ground.resolve_channel(channel)?;
        Ok(Self::channel_from_predicate(ground, ci, 1, t, t + 1, |x| x <= t))
    }

    pub fn singleton(ground: &Arc<GroundSpec>, p: &Point) -> Result<Self, SetError> {
        Self::from_points(ground, std::slice::from_ref(p))
    }

    pub fn from_points(ground: &Arc<GroundSpec>, points: &[Point]) -> Result<Self, SetError> {
        let mut s = Self::empty(ground);
        let mut per_channel: Vec<Vec<i64>> = vec![Vec::new(); ground.channels().len()];
        for p in points {
            ground.check_point(p)?;
            match p {
                Point::Atom(a) => {
                    s.atoms.insert(ground.atom_index(a).expect("checked"));
                }
                Point::Int { channel, value } => {
                    per_channel[ground.channel_index(channel).expect("checked")].push(*value);
                }
            }
        }
        for (ci, vals) in per_channel.into_iter().enumerate() {
            if !vals.is_empty() {
                let name = ground.channels()[ci].name.clone();
                s = s.union(&Self::finite(ground, Some(&name), &vals)?);
            }
        }
        Ok(s)
    }

    /// Builds a set living on channel `ci` from a predicate that is
    /// `m`-periodic above `hi` and below `lo`.
    pub(crate) fn channel_from_predicate(
        ground: &Arc<GroundSpec>,
        ci: usize,
        m: usize,
        lo: i64,
        hi: i64,
        pred: impl Fn(i64) -> bool,
    ) -> Self {
        let mut s = Self::empty(ground);
        s.traces[ci] = Trace::from_predicate(ground.channels()[ci].kind, m, lo, hi, pred);
        s
    }

    pub fn ground(&self) -> &Arc<GroundSpec> {
        &self.ground
    }

    pub fn same_ground(&self, other: &SymSet) -> bool {
        Arc::ptr_eq(&self.ground, &other.ground) || *self.ground == *other.ground
    }

    /// Membership; points outside the ground are not members.
    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Atom(a) => self
                .ground
                .atom_index(a)
                .is_some_and(|i| self.atoms.contains(&i)),
            Point::Int { channel, value } => self.ground.channel_index(channel).is_some_and(|ci| {
                self.traces[ci].member(self.ground.channels()[ci].kind, *value)
            }),
        }
    }

    /// Membership with ground checking.
    pub fn member(&self, p: &Point) -> Result<bool, SetError> {
        self.ground.check_point(p)?;
        Ok(self.contains(p))
    }

    pub(crate) fn contains_int(&self, ci: usize, x: i64) -> bool {
        self.traces[ci].member(self.ground.channels()[ci].kind, x)
    }


    fn combine(&self, other: &SymSet, op: impl Fn(bool, bool) -> bool + Copy) -> SymSet {
        assert!(
            self.same_ground(other),
            "set operation on different ground sets"
        );
        let n_atoms = self.ground.atoms().len();
        let atoms = (0..n_atoms)
            .filter(|i| op(self.atoms.contains(i), other.atoms.contains(i)))
            .collect();
        let traces = self
            .ground
            .channels()
            .iter()
            .enumerate()
            .map(|(ci, c)| Trace::combine(c.kind, &self.traces[ci], &other.traces[ci], op))
            .collect();
        SymSet {
            ground: self.ground.clone(),
            atoms,
            traces,
        }
    }

    fn checked(&self, other: &SymSet) -> Result<(), SetError> {
        if self.same_ground(other) {
            Ok(())
        } else {
            Err(SetError::GroundMismatch)
        }
    }

    /// Union. Panics if the grounds differ; see [`SymSet::checked_union`].
    pub fn union(&self, other: &SymSet) -> SymSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn inter(&self, other: &SymSet) -> SymSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn diff(&self, other: &SymSet) -> SymSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn sym_diff(&self, other: &SymSet) -> SymSet {
        self.combine(other, |a, b| a != b)
    }

    pub fn checked_union(&self, other: &SymSet) -> Result<SymSet, SetError> {
        self.checked(other).map(|_| self.union(other))
    }

    pub fn checked_inter(&self, other: &SymSet) -> Result<SymSet, SetError> {
        self.checked(other).map(|_| self.inter(other))
    }

    pub fn checked_diff(&self, other: &SymSet) -> Result<SymSet, SetError> {
        self.checked(other).map(|_| self.diff(other))
    }

    pub fn checked_is_subset(&self, other: &SymSet) -> Result<bool, SetError> {
        self.checked(other).map(|_| self.is_subset(other))
    }

    pub fn complement(&self) -> SymSet {
        let atoms = (0..self.ground.atoms().len())
            .filter(|i| !self.atoms.contains(i))
            .collect();
        let traces = self
            .ground
            .channels()
            .iter()
            .zip(&self.traces)
            .map(|(c, t)| t.complement(c.kind))
            .collect();
        SymSet {
            ground: self.ground.clone(),
            atoms,
            traces,
        }
    }

    /// Translates one channel by `k`; atoms and other channels unchanged.
    /// On NAT channels points pushed below 1 are dropped.
    pub fn shift(&self, k: i64, channel: Option<&str>) -> Result<SymSet, SetError> {
        let ci = self.ground.resolve_channel(channel)?;
        let mut s = self.clone();
        s.traces[ci] = self.traces[ci].shift(self.ground.channels()[ci].kind, k);
        Ok(s)
    }

    /// Translates every channel by `k`.
    pub fn shift_all(&self, k: i64) -> SymSet {
        let mut s = self.clone();
        for (ci, c) in self.ground.channels().iter().enumerate() {
            s.traces[ci] = self.traces[ci].shift(c.kind, k);
        }
        s
    }

    /// `(lo, hi, period)` of the trace on channel `ci`: membership is
    /// periodic above `hi` and below `lo`.
    pub(crate) fn channel_shape(&self, ci: usize) -> (i64, i64, usize) {
        let t = &self.traces[ci];
        (t.lo, t.hi, t.period)
    }

    /// The part of `self` on channel `ci`.
    pub fn channel_part(&self, ci: usize) -> SymSet {
        let mut s = Self::empty(&self.ground);
        s.traces[ci] = self.traces[ci].clone();
        s
    }

    /// The atoms of `self` only.
    pub fn atom_part(&self) -> SymSet {
        let mut s = Self::empty(&self.ground);
        s.atoms = self.atoms.clone();
        s
    }

    pub fn atom_names(&self) -> Vec<&str> {
        self.atoms
            .iter()
            .map(|&i| self.ground.atoms()[i].as_str())
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.traces.iter().all(Trace::is_empty)
    }

    pub fn is_finite(&self) -> bool {
        self.traces.iter().all(Trace::is_finite)
    }

    pub fn is_subset(&self, other: &SymSet) -> bool {
        self.diff(other).is_empty()
    }

    /// True when the trace on channel `ci` is finite.
    pub fn channel_is_finite(&self, ci: usize) -> bool {
        self.traces[ci].is_finite()
    }

    pub fn cardinality_if_finite(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        Some(self.atoms.len() + self.traces.iter().map(|t| t.window.len()).sum::<usize>())
    }

    /// The members, if finitely many.
    pub fn points_if_finite(&self) -> Option<Vec<Point>> {
        if !self.is_finite() {
            return None;
        }
        let mut out: Vec<Point> = self
            .atoms
            .iter()
            .map(|&i| Point::atom(&self.ground.atoms()[i]))
            .collect();
        for (c, t) in self.ground.channels().iter().zip(&self.traces) {
            out.extend(t.window.iter().map(|&v| Point::int(&c.name, v)));
        }
        Some(out)
    }

    /// Least member of a channel; `None` when the channel part is empty or
    /// unbounded below.
    pub fn min_int_element(&self, channel: Option<&str>) -> Result<Option<i64>, SetError> {
        let ci = self.ground.resolve_channel(channel)?;
        Ok(self.traces[ci].min_element(self.ground.channels()[ci].kind))
    }

    /// All atoms of `self`, then every channel member with value in
    /// `[lo, hi]`, by direct membership tests.
    pub fn enumerate_window(&self, lo: i64, hi: i64) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .atoms
            .iter()
            .map(|&i| Point::atom(&self.ground.atoms()[i]))
            .collect();
        for (ci, c) in self.ground.channels().iter().enumerate() {
            out.extend(
                (lo..=hi)
                    .filter(|&x| self.contains_int(ci, x))
                    .map(|x| Point::int(&c.name, x)),
            );
        }
        out
    }

    /// A half-width `T` such that membership outside `[-T, T]` is fully
    /// determined by the periodic tails: the largest threshold magnitude plus
    /// twice the lcm of the periods.
    pub fn oracle_bound(&self) -> i64 {
        let ext = self.traces.iter().map(Trace::extent).max().unwrap_or(0);
        let m = self.traces.iter().fold(1, |acc, t| lcm(acc, t.period)) as i64;
        ext + 2 * m
    }

    /// Some member, preferring atoms and then small channel values.
    pub fn any_element(&self) -> Option<Point> {
        if let Some(&i) = self.atoms.iter().next() {
            return Some(Point::atom(&self.ground.atoms()[i]));
        }
        for (ci, c) in self.ground.channels().iter().enumerate() {
            let t = &self.traces[ci];
            if let Some(&w) = t.window.iter().next() {
                return Some(Point::int(&c.name, w));
            }
            let m = t.period as i64;
            if let Some(x) = (t.hi..t.hi + m).find(|&x| t.member(c.kind, x)) {
                return Some(Point::int(&c.name, x));
            }
            if let Some(x) = ((t.lo - m + 1)..=t.lo).rev().find(|&x| t.member(c.kind, x)) {
                return Some(Point::int(&c.name, x));
            }
        }
        None
    }

    /// Members near the origin: all atoms and channel members in
    /// `[-radius, radius]`, plus one member from each nonempty tail beyond
    /// the thresholds.
    pub fn sample_points(&self, radius: i64) -> Vec<Point> {
        let mut out = self.enumerate_window(-radius, radius);
        for (ci, c) in self.ground.channels().iter().enumerate() {
            let t = &self.traces[ci];
            let m = t.period as i64;
            let far_hi = t.hi.max(radius + 1);
            if let Some(x) = (far_hi..far_hi + m).find(|&x| t.member(c.kind, x)) {
                out.push(Point::int(&c.name, x));
            }
            if c.kind == ChannelKind::Int {
                let far_lo = t.lo.min(-radius - 1);
                if let Some(x) = ((far_lo - m + 1)..=far_lo).rev().find(|&x| t.member(c.kind, x)) {
                    out.push(Point::int(&c.name, x));
                }
            }
        }
        out
    }

    /// Re-expresses `self` over another ground. `rename` maps each atom or
    /// channel name to its name in `target`, or `None` to drop it.
    pub fn transport(
        &self,
        target: &Arc<GroundSpec>,
        rename: impl Fn(&str) -> Option<String>,
    ) -> Result<SymSet, SetError> {
        let mut s = Self::empty(target);
        for &i in &self.atoms {
            if let Some(n) = rename(&self.ground.atoms()[i]) {
                let j = target.atom_index(&n).ok_or(SetError::UnknownAtom(n))?;
                s.atoms.insert(j);
            }
        }
        for (ci, c) in self.ground.channels().iter().enumerate() {
            if let Some(n) = rename(&c.name) {
                let j = target
                    .channel_index(&n)
                    .ok_or_else(|| SetError::UnknownChannel(n.clone()))?;
                if target.channels()[j].kind != c.kind {
                    return Err(SetError::GroundMismatch);
                }
                s.traces[j] = self.traces[ci].clone();
            }
        }
        Ok(s)
    }

    /// Canonical set expression; parsing it back yields an equal set.
    pub fn to_expr(&self) -> String {
        if self.is_empty() {
            return "empty".into();
        }
        if *self == Self::all(&self.ground) {
            return "all".into();
        }
        let multi = self.ground.channels().len() > 1;
        let mut parts: Vec<String> = Vec::new();
        if !self.atoms.is_empty() {
            parts.push(format!("atoms{{{}}}", self.atom_names().join(",")));
        }
        for (c, t) in self.ground.channels().iter().zip(&self.traces) {
            let suffix = if multi {
                format!("@{}", c.name)
            } else {
                String::new()
            };
            parts.extend(trace_exprs(c.kind, t, &suffix));
        }
        let mut it = parts.into_iter().rev();
        let last = it.next().expect("nonempty set has a part");
        it.fold(last, |acc, p| format!("union({p},{acc})"))
    }
}

fn residue_leaf(m: usize, res: &[bool], suffix: &str) -> Option<String> {
    let rs: Vec<String> = (0..m).filter(|&r| res[r]).map(|r| r.to_string()).collect();
    match (m, rs.len()) {
        (_, 0) => None,
        (2, 1) if res[1] => Some(format!("odd{suffix}")),
        (2, 1) => Some(format!("even{suffix}")),
        _ => Some(format!("mod{{{m}|{}}}{suffix}", rs.join(","))),
    }
}

fn trace_exprs(kind: ChannelKind, t: &Trace, suffix: &str) -> Vec<String> {
    let mut out = Vec::new();
    if t.is_purely_periodic(kind) {
        out.extend(residue_leaf(t.period, &t.hi_res, suffix));
        return out;
    }
    if !t.window.is_empty() {
        let vs: Vec<String> = t.window.iter().map(|v| v.to_string()).collect();
        out.push(format!("finite{{{}}}{suffix}", vs.join(",")));
    }
    if let Some(leaf) = residue_leaf(t.period, &t.hi_res, suffix) {
        let ge = format!("ge{{{}}}{suffix}", t.hi);
        out.push(if t.hi_res.iter().all(|&b| b) {
            ge
        } else {
            format!("inter({ge},{leaf})")
        });
    }
    if kind == ChannelKind::Int {
        if let Some(leaf) = residue_leaf(t.period, &t.lo_res, suffix) {
            let le = format!("le{{{}}}{suffix}", t.lo);
            out.push(if t.lo_res.iter().all(|&b| b) {
                le
            } else {
                format!("inter({le},{leaf})")
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> Arc<GroundSpec> {
        GroundSpec::new(vec!["a".into(), "b".into()], vec![Channel::nat("n")]).unwrap()
    }

    fn int() -> Arc<GroundSpec> {
        GroundSpec::new(vec![], vec![Channel::int("z")]).unwrap()
    }

    #[test]
    fn basic_membership() {
        let g = nat();
        let even = SymSet::even(&g, None).unwrap();
        assert!(even.contains(&Point::int("n", 4)));
        let cof = SymSet::cofinite(&g, None, &[2, 5]).unwrap();
        assert!(!cof.contains(&Point::int("n", 5)));
        let u = SymSet::odd(&g, None)
            .unwrap()
            .union(&SymSet::atoms(&g, &["a"]).unwrap());
        assert!(u.contains(&Point::atom("a")));
        assert!(u.member(&Point::atom("zz")).is_err());
    }

    #[test]
    fn boolean_examples() {
        let g = nat();
        let odd = SymSet::odd(&g, None).unwrap();
        let even = SymSet::even(&g, None).unwrap();
        let chan = SymSet::whole_channel(&g, 0);
        assert_eq!(chan.diff(&odd), even);
        assert_eq!(even.union(&odd), chan);
        let c1 = SymSet::cofinite(&g, None, &[1]).unwrap();
        let f12 = SymSet::finite(&g, None, &[1, 2]).unwrap();
        assert_eq!(c1.inter(&f12), SymSet::finite(&g, None, &[2]).unwrap());
        assert!(!SymSet::cofinite(&g, None, &[3]).unwrap().is_finite());
        let a = SymSet::finite(&g, None, &[1, 2, 3]).unwrap();
        let b = SymSet::finite(&g, None, &[3]).unwrap();
        assert_eq!(a.sym_diff(&b).cardinality_if_finite(), Some(2));
    }

    #[test]
    fn shift_examples() {
        let g = nat();
        let odd = SymSet::odd(&g, None).unwrap();
        let even = SymSet::even(&g, None).unwrap();
        assert_eq!(odd.shift(1, None).unwrap(), even);
        let expected = odd.diff(&SymSet::finite(&g, None, &[1]).unwrap());
        assert_eq!(even.shift(1, None).unwrap(), expected);
        let gi = int();
        let s = SymSet::finite(&gi, None, &[-1, 0]).unwrap();
        assert_eq!(s.shift(1, None).unwrap(), SymSet::finite(&gi, None, &[0, 1]).unwrap());
    }

    #[test]
    fn min_and_window() {
        let g = nat();
        let s = SymSet::cofinite(&g, None, &[2, 4])
            .unwrap()
            .inter(&SymSet::even(&g, None).unwrap());
        assert_eq!(s.min_int_element(None).unwrap(), Some(6));
        assert_eq!(SymSet::empty(&g).min_int_element(None).unwrap(), None);
        let odd = SymSet::odd(&g, None).unwrap();
        let w: Vec<i64> = odd
            .enumerate_window(1, 6)
            .iter()
            .filter_map(|p| p.as_int().map(|(_, v)| v))
            .collect();
        assert_eq!(w, vec![1, 3, 5]);
    }

    #[test]
    fn ground_mismatch_is_reported() {
        let a = SymSet::all(&nat());
        let b = SymSet::all(&int());
        assert_eq!(a.checked_union(&b), Err(SetError::GroundMismatch));
    }

    #[test]
    fn printing() {
        let g = nat();
        assert_eq!(SymSet::empty(&g).to_expr(), "empty");
        assert_eq!(SymSet::all(&g).to_expr(), "all");
        assert_eq!(SymSet::odd(&g, None).unwrap().to_expr(), "odd");
        let s = SymSet::even(&g, None)
            .unwrap()
            .union(&SymSet::atoms(&g, &["a", "b"]).unwrap());
        assert_eq!(s.to_expr(), "union(atoms{a,b},even)");
        let gi = int();
        assert_eq!(SymSet::negnat0(&gi, None).unwrap().to_expr(), "le{0}");
    }
}
