use std::collections::BTreeMap;

use crate::error::{CatalogError, MapError};
use crate::parse::parse_point;
use crate::setalg::{ChannelKind, Point, SymSet};
use crate::topology::Space;

use super::{MapKind, SpaceMap, TailAction, TailRule};

/// Rule for points not listed in a table map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableDefault {
    /// Translate channel points by `k`; atoms stay put.
    Shift(i64),
    Const(Point),
}

/// A finite table of exceptions over a default rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMap {
    entries: BTreeMap<Point, Point>,
    default: TableDefault,
    keys: SymSet,
}

impl TableMap {
    /// Builds the table after checking that every image lies in `space` and
    /// that the default never leaves a NAT channel.
    pub fn new(
        space: &Space,
        entries: BTreeMap<Point, Point>,
        default: TableDefault,
    ) -> Result<Self, MapError> {
        let g = space.ground();
        for (k, v) in &entries {
            space.check_point(k)?;
            space.check_point(v)?;
        }
        let keys = SymSet::from_points(g, &entries.keys().cloned().collect::<Vec<_>>())?;
        match &default {
            TableDefault::Const(c) => space.check_point(c)?,
            TableDefault::Shift(k) => {
                if *k != 0 && *space.whole() != SymSet::all(g) {
                    return Err(MapError::NotTotal(
                        "a shift default needs a space covering its whole ground".into(),
                    ));
                }
                for c in g.channels() {
                    if c.kind == ChannelKind::Nat && *k < 0 {
                        if let Some(x) = (1..=-k).find(|&x| !keys.contains(&Point::int(&c.name, x))) {
                            return Err(MapError::NotTotal(format!(
                                "{x}@{} would leave the channel under shift {k}",
                                c.name
                            )));
                        }
                    }
                }
            }
        }
        Ok(TableMap {
            entries,
            default,
            keys,
        })
    }

    pub fn default_rule(&self) -> &TableDefault {
        &self.default
    }

    pub(super) fn eval(&self, p: &Point) -> Point {
        if let Some(v) = self.entries.get(p) {
            return v.clone();
        }
        match &self.default {
            TableDefault::Shift(k) => p.offset(*k).unwrap_or_else(|| p.clone()),
            TableDefault::Const(c) => c.clone(),
        }
    }

    pub(super) fn image(&self, s: &SymSet) -> SymSet {
        let g = s.ground();
        let listed: Vec<Point> = self
            .entries
            .iter()
            .filter(|(k, _)| s.contains(k))
            .map(|(_, v)| v.clone())
            .collect();
        let listed = SymSet::from_points(g, &listed).expect("checked at construction");
        let rest = s.diff(&self.keys);
        let rest_image = match &self.default {
            TableDefault::Shift(k) => rest.shift_all(*k),
            TableDefault::Const(c) if !rest.is_empty() => {
                SymSet::singleton(g, c).expect("checked at construction")
            }
            TableDefault::Const(_) => SymSet::empty(g),
        };
        listed.union(&rest_image)
    }

    pub(super) fn preimage(&self, s: &SymSet) -> SymSet {
        let g = s.ground();
        let listed: Vec<Point> = self
            .entries
            .iter()
            .filter(|(_, v)| s.contains(v))
            .map(|(k, _)| k.clone())
            .collect();
        let listed = SymSet::from_points(g, &listed).expect("checked at construction");
        let rest = match &self.default {
            TableDefault::Shift(k) => s.shift_all(-k),
            TableDefault::Const(c) if s.contains(c) => SymSet::all(g),
            TableDefault::Const(_) => SymSet::empty(g),
        };
        listed.union(&rest.diff(&self.keys))
    }

    pub(super) fn arithmetic_from(&self, p: &Point) -> Option<i64> {
        let TableDefault::Shift(k) = self.default else {
            return None;
        };
        let (ch, v) = p.as_int()?;
        if k == 0 || self.keys.contains(p) {
            return None;
        }
        let ci = self.keys.ground().channel_index(ch)?;
        let kind = self.keys.ground().channels()[ci].kind;
        let key_values = self
            .entries
            .keys()
            .filter_map(|q| q.as_int())
            .filter(|(c, _)| *c == ch)
            .map(|(_, x)| x);
        let clear = if k > 0 {
            key_values.into_iter().all(|x| x < v)
        } else {
            kind == ChannelKind::Int && key_values.into_iter().all(|x| x > v)
        };
        clear.then_some(k)
    }

    pub(super) fn tail_rules(&self) -> Vec<TailRule> {
        let action = match &self.default {
            TableDefault::Shift(k) => TailAction::Shift(*k),
            TableDefault::Const(c) => TailAction::Const(c.clone()),
        };
        let g = self.keys.ground();
        let mut out = Vec::new();
        for c in g.channels() {
            let keys: Vec<i64> = self
                .entries
                .keys()
                .filter_map(|q| q.as_int())
                .filter(|(ch, _)| *ch == c.name)
                .map(|(_, x)| x)
                .collect();
            let top = keys.iter().max().copied();
            let floor = if c.kind == ChannelKind::Nat { 1 } else { 0 };
            out.push(TailRule {
                channel: c.name.clone(),
                from: top.map_or(floor, |t| (t + 1).max(floor)),
                upward: true,
                actions: vec![action.clone()],
            });
            if c.kind == ChannelKind::Int {
                out.push(TailRule {
                    channel: c.name.clone(),
                    from: keys.iter().min().map_or(-1, |b| b - 1),
                    upward: false,
                    actions: vec![action.clone()],
                });
            }
        }
        out
    }
}

/// Parses a table map: lines `point -> point` and exactly one line
/// `default: shift:<k>` or `default: const:<point>`; `#` starts a comment.
pub fn parse_table_map(text: &str, space: &Space, id: &str) -> Result<SpaceMap, CatalogError> {
    let g = space.ground();
    let mut entries = BTreeMap::new();
    let mut default = None;
    for (i, line) in text.lines().enumerate() {
        let err = |message: String| CatalogError::File {
            line: i + 1,
            message,
        };
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rule) = line.strip_prefix("default:") {
            if default.is_some() {
                return Err(err("second default rule".into()));
            }
            let rule = rule.trim();
            default = Some(if let Some(k) = rule.strip_prefix("shift:") {
                TableDefault::Shift(
                    k.trim()
                        .parse()
                        .map_err(|_| err(format!("bad shift amount `{k}`")))?,
                )
            } else if let Some(c) = rule.strip_prefix("const:") {
                TableDefault::Const(parse_point(c, g).map_err(|e| err(e.to_string()))?)
            } else {
                return Err(err(format!(
                    "expected `shift:<k>` or `const:<point>`, found `{rule}`"
                )));
            });
            continue;
        }
        let Some((from, to)) = line.split_once("->") else {
            return Err(err(format!("expected `point -> point`, found `{line}`")));
        };
        let from = parse_point(from, g).map_err(|e| err(e.to_string()))?;
        let to = parse_point(to, g).map_err(|e| err(e.to_string()))?;
        if entries.insert(from.clone(), to).is_some() {
            return Err(err(format!("{from} listed twice")));
        }
    }
    let default = default.ok_or(CatalogError::File {
        line: text.lines().count(),
        message: "missing `default:` rule".into(),
    })?;
    let table = TableMap::new(space, entries, default)?;
    Ok(SpaceMap::new(id, space.clone(), MapKind::Table(table)))
}
