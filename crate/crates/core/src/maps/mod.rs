//! Self-maps of catalog spaces.

mod catalog;
mod table;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use catalog::{default_space_for, map_by_id, map_entries, CatalogMap};
pub use table::{parse_table_map, TableDefault, TableMap};

use crate::error::MapError;
use crate::setalg::{Point, SymSet};
use crate::topology::Space;
use crate::verdict::{Exhausted, Verdict};

/// The rule a map follows.
#[derive(Debug, Clone)]
pub enum MapKind {
    Catalog(CatalogMap),
    Const(Point),
    Identity,
    Table(TableMap),
}

/// A self-map of a space with pointwise evaluation and exact images and
/// preimages of symbolic sets.
#[derive(Debug, Clone)]
pub struct SpaceMap {
    id: String,
    space: Space,
    kind: MapKind,
    symbolic: bool,
}

/// Shape of an orbit `p, f(p), f²(p), ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitDescriptor {
    /// `prefix` followed by `cycle` repeated forever.
    EventuallyCyclic { prefix: Vec<Point>, cycle: Vec<Point> },
    /// `prefix` followed by `start, start + step, start + 2·step, ...` on
    /// `channel`.
    ArithmeticTail {
        prefix: Vec<Point>,
        channel: String,
        start: i64,
        step: i64,
    },
}

impl OrbitDescriptor {
    /// The `n`-th orbit point.
    pub fn point_at(&self, n: usize) -> Point {
        match self {
            OrbitDescriptor::EventuallyCyclic { prefix, cycle } => {
                if n < prefix.len() {
                    prefix[n].clone()
                } else {
                    cycle[(n - prefix.len()) % cycle.len()].clone()
                }
            }
            OrbitDescriptor::ArithmeticTail {
                prefix,
                channel,
                start,
                step,
            } => {
                if n < prefix.len() {
                    prefix[n].clone()
                } else {
                    Point::int(channel, start + step * (n - prefix.len()) as i64)
                }
            }
        }
    }

    pub fn prefix_len(&self) -> usize {
        match self {
            OrbitDescriptor::EventuallyCyclic { prefix, .. }
            | OrbitDescriptor::ArithmeticTail { prefix, .. } => prefix.len(),
        }
    }
}

/// What a map does to one channel point in a tail region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailAction {
    Shift(i64),
    Const(Point),
    Scale(i64),
}

/// A structural description of a map on the tail `{x ≥ from}` (or
/// `{x ≤ from}` when not `upward`) of one channel: the point `x` follows
/// `actions[x mod actions.len()]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailRule {
    pub channel: String,
    pub from: i64,
    pub upward: bool,
    pub actions: Vec<TailAction>,
}

impl TailRule {
    pub fn covers(&self, p: &Point) -> bool {
        match p.as_int() {
            Some((ch, v)) if ch == self.channel => {
                if self.upward {
                    v >= self.from
                } else {
                    v <= self.from
                }
            }
            _ => false,
        }
    }

    /// The image of a covered point.
    pub fn apply(&self, value: i64) -> Point {
        let k = self.actions.len() as i64;
        match &self.actions[value.rem_euclid(k) as usize] {
            TailAction::Shift(s) => Point::int(&self.channel, value + s),
            TailAction::Const(c) => c.clone(),
            TailAction::Scale(m) => Point::int(&self.channel, value * m),
        }
    }

    /// No point of the tail is fixed.
    pub fn is_fixed_point_free(&self) -> bool {
        let k = self.actions.len() as i64;
        self.actions.iter().enumerate().all(|(r, a)| match a {
            TailAction::Shift(s) => *s != 0,
            TailAction::Const(c) => {
                // the constant is fixed only if it lies in the tail on its residue
                !(self.covers(c) && c.as_int().is_some_and(|(_, v)| v.rem_euclid(k) == r as i64))
            }
            TailAction::Scale(m) => *m != 1 && !self.covers(&Point::int(&self.channel, 0)),
        })
    }
}

/// The chain `X ⊇ f[X] ⊇ f²[X] ⊇ ...` up to stabilization or a bound.
#[derive(Debug, Clone)]
pub struct ImageChain {
    /// `sets[n]` is `fⁿ[X]`.
    pub sets: Vec<SymSet>,
    /// The last set is a fixed point of `S ↦ f[S]`.
    pub stabilized: bool,
}

/// Three-tier answer to "does f map closed sets to closed sets".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Closedness {
    /// A registered structural argument, with every sampled closed set
    /// confirming it.
    CertifiedByCatalog { certificate: String, samples: usize },
    PassedSampling(usize),
    /// A closed set whose image is not closed.
    Refuted { set: SymSet, image: SymSet },
}

impl Closedness {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Closedness::Refuted { .. })
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Closedness::CertifiedByCatalog { .. })
    }
}

impl SpaceMap {
    pub(crate) fn new(id: impl Into<String>, space: Space, kind: MapKind) -> Self {
        SpaceMap {
            id: id.into(),
            space,
            kind,
            symbolic: true,
        }
    }

    pub fn identity(space: &Space) -> Self {
        Self::new("identity", space.clone(), MapKind::Identity)
    }

    pub fn constant(space: &Space, c: Point) -> Result<Self, MapError> {
        space.check_point(&c)?;
        Ok(Self::new(format!("const:{c}"), space.clone(), MapKind::Const(c)))
    }

    /// The same map with its symbolic rules switched off; image-based
    /// verifiers then report `Unsupported`.
    pub fn without_symbolic_rules(mut self) -> Self {
        self.symbolic = false;
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn has_symbolic_image(&self) -> bool {
        self.symbolic
    }

    pub fn eval(&self, p: &Point) -> Result<Point, MapError> {
        if !self.space.contains_point(p) {
            return Err(MapError::PointOutsideSpace(p.to_string()));
        }
        let q = match &self.kind {
            MapKind::Catalog(c) => c.eval(p),
            MapKind::Const(c) => c.clone(),
            MapKind::Identity => p.clone(),
            MapKind::Table(t) => t.eval(p),
        };
        debug_assert!(self.space.contains_point(&q), "{} maps {p} outside", self.id);
        Ok(q)
    }

    /// `fⁿ(p)`.
    pub fn iterate(&self, p: &Point, n: usize) -> Result<Point, MapError> {
        let mut x = p.clone();
        for _ in 0..n {
            x = self.eval(&x)?;
        }
        Ok(x)
    }

    /// `p, f(p), ..., fⁿ(p)`.
    pub fn orbit(&self, p: &Point, n: usize) -> Result<Vec<Point>, MapError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(p.clone());
        for _ in 0..n {
            let next = self.eval(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }

    fn require_symbolic(&self) -> Result<(), MapError> {
        if self.symbolic {
            Ok(())
        } else {
            Err(MapError::Unsupported(self.id.clone()))
        }
    }

    /// `f[S]`, exact.
    pub fn image(&self, s: &SymSet) -> Result<SymSet, MapError> {
        self.require_symbolic()?;
        let s = s.checked_inter(self.space.whole())?;
        if s.is_empty() {
            return Ok(s);
        }
        Ok(match &self.kind {
            MapKind::Catalog(c) => c.image(&s),
            MapKind::Const(c) => SymSet::singleton(s.ground(), c)?,
            MapKind::Identity => s,
            MapKind::Table(t) => t.image(&s),
        })
    }

    /// `f⁻¹[S]`, exact.
    pub fn preimage(&self, s: &SymSet) -> Result<SymSet, MapError> {
        self.require_symbolic()?;
        let s = s.checked_inter(self.space.whole())?;
        let whole = self.space.whole();
        Ok(match &self.kind {
            MapKind::Catalog(c) => c.preimage(&s),
            MapKind::Const(c) => {
                if s.contains(c) {
                    whole.clone()
                } else {
                    self.space.empty_set()
                }
            }
            MapKind::Identity => s,
            MapKind::Table(t) => t.preimage(&s),
        }
        .inter(whole))
    }

    /// `fⁿ[X]`.
    pub fn image_of_space(&self, n: usize) -> Result<SymSet, MapError> {
        let mut s = self.space.whole().clone();
        for _ in 0..n {
            s = self.image(&s)?;
        }
        Ok(s)
    }

    /// `X, f[X], f²[X], ...` until two consecutive sets agree or `nmax`
    /// images have been taken.
    pub fn image_chain(&self, nmax: usize) -> Result<ImageChain, MapError> {
        let mut sets = vec![self.space.whole().clone()];
        for _ in 0..nmax {
            let next = self.image(sets.last().expect("nonempty"))?;
            if next == *sets.last().expect("nonempty") {
                return Ok(ImageChain {
                    sets,
                    stabilized: true,
                });
            }
            sets.push(next);
        }
        // One more image decides whether the last set is already stable.
        let last = sets.last().expect("nonempty");
        let stabilized = self.image(last)? == *last;
        Ok(ImageChain { sets, stabilized })
    }

    /// A structural fact: from `p` on the orbit is `p, p+step, p+2·step, ...`
    /// forever.
    fn arithmetic_from(&self, p: &Point) -> Option<i64> {
        match &self.kind {
            MapKind::Catalog(c) => c.arithmetic_from(p),
            MapKind::Table(t) => t.arithmetic_from(p),
            MapKind::Const(_) | MapKind::Identity => None,
        }
    }

    /// Exact orbit shape, found by following the orbit until it repeats a
    /// point or enters a registered arithmetic tail. The descriptor is then
    /// validated against direct iteration up to `bound` steps.
    pub fn orbit_descriptor(&self, p: &Point, bound: usize) -> Result<OrbitDescriptor, Exhausted> {
        let mut seen: HashMap<Point, usize> = HashMap::new();
        let mut prefix: Vec<Point> = Vec::new();
        let mut x = p.clone();
        let desc = loop {
            if let Some(step) = self.arithmetic_from(&x) {
                let (channel, start) = x.as_int().expect("arithmetic tails live on channels");
                break OrbitDescriptor::ArithmeticTail {
                    prefix,
                    channel: channel.to_string(),
                    start,
                    step,
                };
            }
            if let Some(&i) = seen.get(&x) {
                let cycle = prefix.split_off(i);
                break OrbitDescriptor::EventuallyCyclic { prefix, cycle };
            }
            if prefix.len() >= bound {
                return Err(Exhausted::new(bound, format!("orbit of {p} not classified")));
            }
            seen.insert(x.clone(), prefix.len());
            prefix.push(x.clone());
            x = self
                .eval(&x)
                .map_err(|e| Exhausted::new(prefix.len(), e.to_string()))?;
        };
        let orbit = self
            .orbit(p, bound)
            .map_err(|e| Exhausted::new(bound, e.to_string()))?;
        if orbit.iter().enumerate().any(|(n, q)| desc.point_at(n) != *q) {
            return Err(Exhausted::new(bound, "descriptor failed validation"));
        }
        Ok(desc)
    }

    /// Registered tail behaviour, used to rule out fixed points beyond a
    /// scanned window.
    pub fn tail_rules(&self) -> Vec<TailRule> {
        match &self.kind {
            MapKind::Catalog(c) => c.tail_rules(),
            MapKind::Table(t) => t.tail_rules(),
            MapKind::Identity => self
                .space
                .ground()
                .channels()
                .iter()
                .map(|c| TailRule {
                    channel: c.name.clone(),
                    from: 1,
                    upward: true,
                    actions: vec![TailAction::Shift(0)],
                })
                .collect(),
            MapKind::Const(p) => self
                .space
                .ground()
                .channels()
                .iter()
                .flat_map(|c| {
                    [true, false].map(|upward| TailRule {
                        channel: c.name.clone(),
                        from: if upward { 1 } else { 0 },
                        upward,
                        actions: vec![TailAction::Const(p.clone())],
                    })
                })
                .collect(),
        }
    }

    pub fn closedness_certificate(&self) -> Option<String> {
        match &self.kind {
            MapKind::Catalog(c) => c.closedness_certificate().map(str::to_string),
            MapKind::Identity => Some("the identity maps every set to itself".into()),
            MapKind::Const(_) => {
                Some("images are empty or a singleton, which is closed in a T1 space".into())
            }
            MapKind::Table(_) => None,
        }
    }

    /// Checks closedness of `f[E]` on every closed `E` from `samples`.
    /// Non-closed samples are skipped.
    pub fn is_closed_map(
        &self,
        samples: impl IntoIterator<Item = SymSet>,
    ) -> Result<Closedness, MapError> {
        let mut checked = 0;
        for e in samples {
            if !self.space.is_closed(&e) {
                continue;
            }
            let image = self.image(&e)?;
            if !self.space.is_closed(&image) {
                return Ok(Closedness::Refuted { set: e, image });
            }
            checked += 1;
        }
        Ok(match self.closedness_certificate() {
            Some(certificate) => Closedness::CertifiedByCatalog {
                certificate,
                samples: checked,
            },
            None => Closedness::PassedSampling(checked),
        })
    }

    /// Checks that preimages of the basic neighbourhoods of `f(p)` are open,
    /// for every sampled `p`, removing each finite set in `excludes`.
    pub fn check_continuity(
        &self,
        points: &[Point],
        excludes: &[SymSet],
    ) -> Result<Verdict<usize, (Point, SymSet)>, MapError> {
        let mut checked = 0;
        for p in points {
            let fp = self.eval(p)?;
            for ex in excludes {
                let nbhd = self.space.basic_nbhd(&fp, ex)?;
                if !self.space.is_open(&self.preimage(&nbhd)?) {
                    return Ok(Verdict::Refuted((p.clone(), nbhd)));
                }
                checked += 1;
            }
        }
        Ok(Verdict::Proved(checked))
    }
}
