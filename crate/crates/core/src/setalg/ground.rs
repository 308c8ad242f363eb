use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::SetError;

/// Domain of an integer channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChannelKind {
    /// Positive integers `{1, 2, 3, ...}`.
    Nat,
    /// All integers.
    Int,
}

impl ChannelKind {
    /// Least value of the domain, if bounded below.
    pub fn min_value(self) -> Option<i64> {
        match self {
            ChannelKind::Nat => Some(1),
            ChannelKind::Int => None,
        }
    }

    pub fn contains(self, value: i64) -> bool {
        match self {
            ChannelKind::Nat => value >= 1,
            ChannelKind::Int => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Channel {
    pub name: String,
    pub kind: ChannelKind,
}

impl Channel {
    pub fn nat(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: ChannelKind::Nat,
        }
    }

    pub fn int(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: ChannelKind::Int,
        }
    }
}

/// A countable ground set: finitely many named atoms plus finitely many
/// integer channels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSpec {
    atoms: Vec<String>,
    channels: Vec<Channel>,
}

impl GroundSpec {
    pub fn new(atoms: Vec<String>, channels: Vec<Channel>) -> Result<Arc<Self>, SetError> {
        let mut seen = HashSet::new();
        for a in &atoms {
            if !seen.insert(a.as_str()) {
                return Err(SetError::DuplicateName(a.clone()));
            }
        }
        let mut seen = HashSet::new();
        for c in &channels {
            if !seen.insert(c.name.as_str()) {
                return Err(SetError::DuplicateName(c.name.clone()));
            }
        }
        Ok(Arc::new(Self { atoms, channels }))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn channel_index(&self, name: &str) -> Option<usize> {
        self.channels.iter().position(|c| c.name == name)
    }

    /// Resolves an optional channel name; `None` selects the first channel.
    pub fn resolve_channel(&self, name: Option<&str>) -> Result<usize, SetError> {
        match name {
            Some(n) => self
                .channel_index(n)
                .ok_or_else(|| SetError::UnknownChannel(n.to_string())),
            None if self.channels.is_empty() => Err(SetError::NoChannel),
            None => Ok(0),
        }
    }

    /// Checks that `p` names a point of this ground set.
    pub fn check_point(&self, p: &Point) -> Result<(), SetError> {
        match p {
            Point::Atom(a) => self
                .atom_index(a)
                .map(|_| ())
                .ok_or_else(|| SetError::UnknownAtom(a.clone())),
            Point::Int { channel, value } => {
                let idx = self
                    .channel_index(channel)
                    .ok_or_else(|| SetError::UnknownChannel(channel.clone()))?;
                if self.channels[idx].kind.contains(*value) {
                    Ok(())
                } else {
                    Err(SetError::OutOfDomain {
                        channel: channel.clone(),
                        value: *value,
                    })
                }
            }
        }
    }

    /// Ground of the disjoint sum; names are prefixed with `l.` and `r.`.
    pub fn sum(left: &GroundSpec, right: &GroundSpec) -> Arc<Self> {
        let prefix = |p: &str, s: &str| format!("{p}.{s}");
        let atoms = left
            .atoms
            .iter()
            .map(|a| prefix("l", a))
            .chain(right.atoms.iter().map(|a| prefix("r", a)))
            .collect();
        let channels = left
            .channels
            .iter()
            .map(|c| Channel {
                name: prefix("l", &c.name),
                kind: c.kind,
            })
            .chain(right.channels.iter().map(|c| Channel {
                name: prefix("r", &c.name),
                kind: c.kind,
            }))
            .collect();
        Arc::new(Self { atoms, channels })
    }

    /// This ground with extra atoms and channels appended.
    pub fn extend(&self, atoms: &[&str], channels: Vec<Channel>) -> Result<Arc<Self>, SetError> {
        let mut a = self.atoms.clone();
        a.extend(atoms.iter().map(|s| s.to_string()));
        let mut c = self.channels.clone();
        c.extend(channels);
        Self::new(a, c)
    }
}

/// A point of a ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    Atom(String),
    Int { channel: String, value: i64 },
}

impl Point {
    pub fn atom(name: impl Into<String>) -> Self {
        Point::Atom(name.into())
    }

    pub fn int(channel: impl Into<String>, value: i64) -> Self {
        Point::Int {
            channel: channel.into(),
            value,
        }
    }

    pub fn as_int(&self) -> Option<(&str, i64)> {
        match self {
            Point::Int { channel, value } => Some((channel, *value)),
            Point::Atom(_) => None,
        }
    }

    /// Same channel, value moved by `k`.
    pub fn offset(&self, k: i64) -> Option<Point> {
        self.as_int().map(|(c, v)| Point::int(c, v + k))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Atom(a) => f.write_str(a),
            Point::Int { channel, value } => write!(f, "{value}@{channel}"),
        }
    }
}
