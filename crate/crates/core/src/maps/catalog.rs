use std::sync::Arc;

use crate::error::{CatalogError, MapError};
use crate::parse::parse_point;
use crate::setalg::{GroundSpec, Point, SymSet};
use crate::topology::{cofinite_nat, example3_int, thm8_space, tower, Space};

use super::{MapKind, SpaceMap, TailAction, TailRule};

/// Maps with hand-written rules, each tied to one catalog space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogMap {
    /// Successor on ℤ transported to ℕ by the zigzag enumeration
    /// `0 ↦ 1, k ↦ 2k, -k ↦ 2k+1`: `1 ↦ 2`, even `n ↦ n+2`, odd `n ≥ 3 ↦ n-2`.
    Example1Perm,
    /// `m ↦ m + 1` on the integers.
    Example3Shift,
    /// `a, b ↦ a`; `2n ↦ b`; `2n-1 ↦ 2n`.
    Thm8F,
    /// `a, b ↦ b`; `2n ↦ a`; `2n-1 ↦ 2n`.
    Thm8G,
    /// `1 ↦ 1`, `n ↦ n-1` for `2 ≤ n ≤ 6`, `n ↦ 5` for `n ≥ 7`.
    ClampDec,
    /// `p, q, y0 ↦ p`; `y_i ↦ y_{i+1}`.
    Tower1Collapse,
    /// `n ↦ 2n` on the cofinite integers; continuous but not closed.
    Doubling,
}

fn ground_of(s: &SymSet) -> &Arc<GroundSpec> {
    s.ground()
}

fn int_set(g: &Arc<GroundSpec>, ch: &str, vals: &[i64]) -> SymSet {
    SymSet::finite(g, Some(ch), vals).expect("catalog channel")
}

fn atom_set(g: &Arc<GroundSpec>, names: &[&str]) -> SymSet {
    SymSet::atoms(g, names).expect("catalog atoms")
}

fn shifted(s: &SymSet, k: i64, ch: &str) -> SymSet {
    s.shift(k, Some(ch)).expect("catalog channel")
}

const CLAMP_TOP: i64 = 6;
const CLAMP_TARGET: i64 = 5;

fn clamp(n: i64) -> i64 {
    match n {
        1 => 1,
        2..=CLAMP_TOP => n - 1,
        _ => CLAMP_TARGET,
    }
}

impl CatalogMap {
    pub fn id(self) -> &'static str {
        match self {
            CatalogMap::Example1Perm => "example1-perm",
            CatalogMap::Example3Shift => "example3-shift",
            CatalogMap::Thm8F => "thm8-f",
            CatalogMap::Thm8G => "thm8-g",
            CatalogMap::ClampDec => "clampdec",
            CatalogMap::Tower1Collapse => "tower1-collapse",
            CatalogMap::Doubling => "doubling",
        }
    }

    pub fn space(self) -> Space {
        match self {
            CatalogMap::Example1Perm | CatalogMap::ClampDec | CatalogMap::Doubling => {
                cofinite_nat()
            }
            CatalogMap::Example3Shift => example3_int(),
            CatalogMap::Thm8F | CatalogMap::Thm8G => thm8_space(),
            CatalogMap::Tower1Collapse => tower(1),
        }
    }

    pub fn all() -> [CatalogMap; 7] {
        [
            CatalogMap::Example1Perm,
            CatalogMap::Example3Shift,
            CatalogMap::Thm8F,
            CatalogMap::Thm8G,
            CatalogMap::ClampDec,
            CatalogMap::Tower1Collapse,
            CatalogMap::Doubling,
        ]
    }

    pub fn map(self) -> SpaceMap {
        SpaceMap::new(self.id(), self.space(), MapKind::Catalog(self))
    }

    pub(super) fn eval(self, p: &Point) -> Point {
        match (self, p) {
            (CatalogMap::Example1Perm, Point::Int { channel, value }) => {
                let v = match *value {
                    1 => 2,
                    n if n % 2 == 0 => n + 2,
                    n => n - 2,
                };
                Point::int(channel, v)
            }
            (CatalogMap::Example3Shift, _) => p.offset(1).expect("integer point"),
            (CatalogMap::Thm8F | CatalogMap::Thm8G, Point::Atom(_)) => {
                Point::atom(if self == CatalogMap::Thm8F { "a" } else { "b" })
            }
            (CatalogMap::Thm8F | CatalogMap::Thm8G, Point::Int { channel, value }) => {
                if value % 2 == 0 {
                    Point::atom(if self == CatalogMap::Thm8F { "b" } else { "a" })
                } else {
                    Point::int(channel, value + 1)
                }
            }
            (CatalogMap::ClampDec, Point::Int { channel, value }) => {
                Point::int(channel, clamp(*value))
            }
            (CatalogMap::Tower1Collapse, Point::Atom(_)) => Point::atom("p"),
            (CatalogMap::Tower1Collapse, Point::Int { .. }) => p.offset(1).expect("channel"),
            (CatalogMap::Doubling, Point::Int { channel, value }) => {
                Point::int(channel, 2 * value)
            }
            (_, Point::Atom(_)) => unreachable!("space has no atoms"),
        }
    }

    pub(super) fn image(self, s: &SymSet) -> SymSet {
        let g = ground_of(s);
        match self {
            CatalogMap::Example1Perm => {
                let even = SymSet::even(g, None).expect("channel");
                let odd3 = SymSet::odd(g, None)
                    .expect("channel")
                    .diff(&int_set(g, "n", &[1]));
                let mut out = shifted(&s.inter(&even), 2, "n")
                    .union(&shifted(&s.inter(&odd3), -2, "n"));
                if s.contains(&Point::int("n", 1)) {
                    out = out.union(&int_set(g, "n", &[2]));
                }
                out
            }
            CatalogMap::Example3Shift => s.shift_all(1),
            CatalogMap::Thm8F | CatalogMap::Thm8G => {
                let (from_atoms, from_even) = if self == CatalogMap::Thm8F {
                    ("a", "b")
                } else {
                    ("b", "a")
                };
                let even = SymSet::even(g, None).expect("channel");
                let odd = SymSet::odd(g, None).expect("channel");
                let mut out = shifted(&s.inter(&odd), 1, "n");
                if !s.atom_part().is_empty() {
                    out = out.union(&atom_set(g, &[from_atoms]));
                }
                if !s.inter(&even).is_empty() {
                    out = out.union(&atom_set(g, &[from_even]));
                }
                out
            }
            CatalogMap::ClampDec => {
                let low: Vec<i64> = (1..=CLAMP_TOP)
                    .filter(|&n| s.contains(&Point::int("n", n)))
                    .map(clamp)
                    .collect();
                let mut out = int_set(g, "n", &low);
                let high = SymSet::ge(g, None, CLAMP_TOP + 1).expect("channel");
                if !s.inter(&high).is_empty() {
                    out = out.union(&int_set(g, "n", &[CLAMP_TARGET]));
                }
                out
            }
            CatalogMap::Tower1Collapse => {
                let chan = SymSet::whole_channel(g, 0);
                let mut out = shifted(&s.inter(&chan), 1, "y");
                if !s.atom_part().is_empty() {
                    out = out.union(&atom_set(g, &["p"]));
                }
                out
            }
            CatalogMap::Doubling => {
                let (lo, hi, m) = s.channel_shape(0);
                SymSet::channel_from_predicate(g, 0, 2 * m, 2 * lo, 2 * hi, |x| {
                    x % 2 == 0 && s.contains(&Point::int("n", x / 2))
                })
            }
        }
    }

    pub(super) fn preimage(self, s: &SymSet) -> SymSet {
        let g = ground_of(s);
        match self {
            CatalogMap::Example1Perm => {
                let even4 = SymSet::even(g, None)
                    .expect("channel")
                    .diff(&int_set(g, "n", &[2]));
                let odd = SymSet::odd(g, None).expect("channel");
                let mut out = shifted(&s.inter(&even4), -2, "n")
                    .union(&shifted(&s.inter(&odd), 2, "n"));
                if s.contains(&Point::int("n", 2)) {
                    out = out.union(&int_set(g, "n", &[1]));
                }
                out
            }
            CatalogMap::Example3Shift => s.shift_all(-1),
            CatalogMap::Thm8F | CatalogMap::Thm8G => {
                let (from_atoms, from_even) = if self == CatalogMap::Thm8F {
                    ("a", "b")
                } else {
                    ("b", "a")
                };
                let even = SymSet::even(g, None).expect("channel");
                let mut out = shifted(&s.inter(&even), -1, "n");
                if s.contains(&Point::atom(from_atoms)) {
                    out = out.union(&atom_set(g, &["a", "b"]));
                }
                if s.contains(&Point::atom(from_even)) {
                    out = out.union(&even);
                }
                out
            }
            CatalogMap::ClampDec => {
                let low: Vec<i64> = (1..=CLAMP_TOP)
                    .filter(|&n| s.contains(&Point::int("n", clamp(n))))
                    .collect();
                let mut out = int_set(g, "n", &low);
                if s.contains(&Point::int("n", CLAMP_TARGET)) {
                    out = out.union(&SymSet::ge(g, None, CLAMP_TOP + 1).expect("channel"));
                }
                out
            }
            CatalogMap::Tower1Collapse => {
                let chan = SymSet::whole_channel(g, 0);
                let mut out = shifted(&s.inter(&chan), -1, "y");
                if s.contains(&Point::atom("p")) {
                    out = out.union(&atom_set(g, &["p", "q", "y0"]));
                }
                out
            }
            CatalogMap::Doubling => {
                let (lo, hi, m) = s.channel_shape(0);
                SymSet::channel_from_predicate(g, 0, m, lo.div_euclid(2), hi.div_euclid(2) + 1, |x| {
                    s.contains(&Point::int("n", 2 * x))
                })
            }
        }
    }

    /// Points from which the orbit is a pure arithmetic progression.
    pub(super) fn arithmetic_from(self, p: &Point) -> Option<i64> {
        let (_, v) = p.as_int()?;
        match self {
            CatalogMap::Example1Perm if v % 2 == 0 => Some(2),
            CatalogMap::Example3Shift | CatalogMap::Tower1Collapse => Some(1),
            _ => None,
        }
    }

    pub(super) fn tail_rules(self) -> Vec<TailRule> {
        let up = |channel: &str, from: i64, actions: Vec<TailAction>| TailRule {
            channel: channel.into(),
            from,
            upward: true,
            actions,
        };
        match self {
            CatalogMap::Example1Perm => {
                vec![up("n", 2, vec![TailAction::Shift(2), TailAction::Shift(-2)])]
            }
            CatalogMap::Example3Shift => vec![
                up("z", 1, vec![TailAction::Shift(1)]),
                TailRule {
                    channel: "z".into(),
                    from: 0,
                    upward: false,
                    actions: vec![TailAction::Shift(1)],
                },
            ],
            CatalogMap::Thm8F | CatalogMap::Thm8G => {
                let even = if self == CatalogMap::Thm8F { "b" } else { "a" };
                vec![up(
                    "n",
                    1,
                    vec![TailAction::Const(Point::atom(even)), TailAction::Shift(1)],
                )]
            }
            CatalogMap::ClampDec => vec![up(
                "n",
                CLAMP_TOP + 1,
                vec![TailAction::Const(Point::int("n", CLAMP_TARGET))],
            )],
            CatalogMap::Tower1Collapse => vec![up("y", 1, vec![TailAction::Shift(1)])],
            CatalogMap::Doubling => vec![up("n", 1, vec![TailAction::Scale(2)])],
        }
    }

    pub(super) fn closedness_certificate(self) -> Option<&'static str> {
        match self {
            CatalogMap::Example1Perm => Some(
                "a bijection of the cofinite integers maps finite sets to finite sets and the whole space onto itself",
            ),
            CatalogMap::Example3Shift => Some(
                "closed sets either contain all of -N0 or are a finite subset of N plus part of -N0; both shapes are preserved by m -> m+1",
            ),
            CatalogMap::Thm8F | CatalogMap::Thm8G => Some(
                "finite closed sets have finite images; infinite closed sets contain a, b and an even number, so the image lies between {a,b} and EVEN ∪ {a,b}, and every such set is closed",
            ),
            CatalogMap::ClampDec => Some(
                "every image is a finite subset of {1..6}, and finite sets are closed",
            ),
            CatalogMap::Tower1Collapse | CatalogMap::Doubling => None,
        }
    }
}

/// Identifiers accepted by [`map_by_id`], with a short description each.
pub fn map_entries() -> Vec<(&'static str, &'static str)> {
    vec![
        ("example1-perm", "fixed-point-free permutation of cofinite-nat without finite cycles"),
        ("example3-shift", "m -> m+1 on example3-int"),
        ("thm8-f", "first map of the thm8 IFS"),
        ("thm8-g", "second map of the thm8 IFS"),
        ("clampdec", "decreasing clamp on cofinite-nat with fixed point 1"),
        ("tower1-collapse", "p, q, y0 -> p and y_i -> y_{i+1} on tower:1"),
        ("doubling", "n -> 2n on cofinite-nat (not a closed map)"),
        ("const:<point>", "constant map on the given space"),
        ("identity", "identity on the given space"),
    ]
}

/// The catalog space a map id lives on, when the id fixes one.
pub fn default_space_for(id: &str) -> Option<Space> {
    CatalogMap::all()
        .into_iter()
        .find(|m| m.id() == id.trim())
        .map(CatalogMap::space)
}

/// Resolves a map id on `space`. Catalog maps require their own space.
pub fn map_by_id(id: &str, space: &Space) -> Result<SpaceMap, CatalogError> {
    let id = id.trim();
    if id == "identity" {
        return Ok(SpaceMap::identity(space));
    }
    if let Some(arg) = id.strip_prefix("const:") {
        let c = parse_point(arg, space.ground())?;
        return Ok(SpaceMap::constant(space, c)?);
    }
    let m = CatalogMap::all()
        .into_iter()
        .find(|m| m.id() == id)
        .ok_or_else(|| MapError::UnknownMap(id.to_string()))?;
    let map = m.map();
    if map.space().id() != space.id() {
        return Err(MapError::WrongSpace {
            map: id.to_string(),
            expected: map.space().id().to_string(),
            got: space.id().to_string(),
        }
        .into());
    }
    Ok(map)
}
