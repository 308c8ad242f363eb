use std::fmt;
use std::sync::Arc;

use super::{GroundSpec, SymSet};
use crate::error::SetError;

/// Syntax tree of a set expression.
///
/// Channel leaves carry an optional channel name; `None` selects the first
/// channel of the ground. `Shift` without a channel translates every channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Empty,
    All,
    Finite { values: Vec<i64>, channel: Option<String> },
    Cofinite { values: Vec<i64>, channel: Option<String> },
    Odd { channel: Option<String> },
    Even { channel: Option<String> },
    NegNat0 { channel: Option<String> },
    Ge { t: i64, channel: Option<String> },
    Le { t: i64, channel: Option<String> },
    Mod { m: i64, residues: Vec<i64>, channel: Option<String> },
    Atoms(Vec<String>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Inter(Box<SetExpr>, Box<SetExpr>),
    Compl(Box<SetExpr>),
    Shift { expr: Box<SetExpr>, k: i64, channel: Option<String> },
}

impl SetExpr {
    pub fn eval(&self, ground: &Arc<GroundSpec>) -> Result<SymSet, SetError> {
        use SetExpr::*;
        Ok(match self {
            Empty => SymSet::empty(ground),
            All => SymSet::all(ground),
            Finite { values, channel } => SymSet::finite(ground, channel.as_deref(), values)?,
            Cofinite { values, channel } => SymSet::cofinite(ground, channel.as_deref(), values)?,
            Odd { channel } => SymSet::odd(ground, channel.as_deref())?,
            Even { channel } => SymSet::even(ground, channel.as_deref())?,
            NegNat0 { channel } => SymSet::negnat0(ground, channel.as_deref())?,
            Ge { t, channel } => SymSet::ge(ground, channel.as_deref(), *t)?,
            Le { t, channel } => SymSet::le(ground, channel.as_deref(), *t)?,
            Mod {
                m,
                residues,
                channel,
            } => SymSet::residues(ground, channel.as_deref(), *m, residues)?,
            Atoms(names) => SymSet::atoms(ground, names)?,
            Union(a, b) => a.eval(ground)?.union(&b.eval(ground)?),
            Inter(a, b) => a.eval(ground)?.inter(&b.eval(ground)?),
            Compl(a) => a.eval(ground)?.complement(),
            Shift { expr, k, channel } => {
                let s = expr.eval(ground)?;
                match channel {
                    Some(c) => s.shift(*k, Some(c))?,
                    None => s.shift_all(*k),
                }
            }
        })
    }

    /// Nesting depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        use SetExpr::*;
        match self {
            Union(a, b) | Inter(a, b) => 1 + a.depth().max(b.depth()),
            Compl(a) => 1 + a.depth(),
            Shift { expr, .. } => 1 + expr.depth(),
            _ => 0,
        }
    }
}

fn ints(vs: &[i64]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SetExpr::*;
        let ch = |c: &Option<String>| c.as_ref().map(|c| format!("@{c}")).unwrap_or_default();
        match self {
            Empty => write!(f, "empty"),
            All => write!(f, "all"),
            Finite { values, channel } => write!(f, "finite{{{}}}{}", ints(values), ch(channel)),
            Cofinite { values, channel } => {
                write!(f, "cofinite{{{}}}{}", ints(values), ch(channel))
            }
            Odd { channel } => write!(f, "odd{}", ch(channel)),
            Even { channel } => write!(f, "even{}", ch(channel)),
            NegNat0 { channel } => write!(f, "negnat0{}", ch(channel)),
            Ge { t, channel } => write!(f, "ge{{{t}}}{}", ch(channel)),
            Le { t, channel } => write!(f, "le{{{t}}}{}", ch(channel)),
            Mod {
                m,
                residues,
                channel,
            } => write!(f, "mod{{{m}|{}}}{}", ints(residues), ch(channel)),
            Atoms(names) => write!(f, "atoms{{{}}}", names.join(",")),
            Union(a, b) => write!(f, "union({a},{b})"),
            Inter(a, b) => write!(f, "inter({a},{b})"),
            Compl(a) => write!(f, "compl({a})"),
            Shift { expr, k, channel } => write!(f, "shift({expr},{k}){}", ch(channel)),
        }
    }
}
